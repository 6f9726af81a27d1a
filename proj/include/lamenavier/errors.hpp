#pragma once

#include <stdexcept>
#include <string>

namespace lame {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterDomainError : Error { using Error::Error; };
struct MissingDerivativeError : Error { using Error::Error; };
struct NotHolomorphicError : Error { using Error::Error; };
struct BadDiscretizationError : Error { using Error::Error; };
struct DepthTooLargeError : Error { using Error::Error; };
struct StencilOutOfDomainError : Error { using Error::Error; };
struct TooCloseToBoundaryError : Error { using Error::Error; };
struct SingularDensityError : Error { using Error::Error; };
struct JetInvalidError : Error { using Error::Error; };
struct NonConvergentError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace lame
