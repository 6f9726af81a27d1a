#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lamenavier/complex_ops.hpp"

namespace lame {

// Elastic constants and every derived coefficient of the complex-form
// operator. alpha = (mu+lambda)/2, beta = (3mu+lambda)/2,
// alpha* = alpha/(alpha^2-beta^2), beta* = beta/(alpha^2-beta^2),
// sigma = lambda/(2(lambda+mu)).
struct LameParams {
    double lambda = 0;
    double mu = 0;
    double alpha = 0;
    double beta = 0;
    double alpha_star = 0;
    double beta_star = 0;
    double sigma = 0;
};

// Requires mu > 0 and lambda > -2mu/3; throws ParameterDomainError otherwise.
LameParams make_params(double lambda, double mu);

// g = -(X + iY)/2
inline cplx body_force_to_complex(double X, double Y) { return -0.5 * cplx(X, Y); }
std::function<cplx(cplx)> body_force_to_complex(std::function<double(cplx)> X,
                                                std::function<double(cplx)> Y);

using FieldFn = std::function<cplx(cplx)>;

// A complex-valued field with user-supplied exact Wirtinger derivatives.
// Only `value` is required; absent derivatives are empty std::functions.
// dz_dzbar is the single mixed derivative (the operators commute).
struct ClosedFormField {
    FieldFn value;
    FieldFn dz;
    FieldFn dzbar;
    FieldFn dz_dz;
    FieldFn dz_dzbar;
    FieldFn dzbar_dzbar;
};

// L[f] = alpha * conj(dz_dz f) + beta * dz_dzbar f.
// Uses the exact derivative fields; throws MissingDerivativeError when
// dz_dz or dz_dzbar is absent.
cplx apply_lame_operator(const LameParams& p, const ClosedFormField& f, cplx z);

// Second-order central-difference evaluation of L[f] on a 3x3 stencil of
// half-width h. `evaluable`, when given, guards the stencil; leaving the
// evaluable region throws StencilOutOfDomainError.
cplx apply_lame_operator_fd(const LameParams& p, const FieldFn& f, cplx z, double h,
                            const std::function<bool(cplx)>& evaluable = {});

// Default FD step: 1e-4 times the local length scale.
inline double default_fd_step(cplx z) { return 1e-4 * std::max(1.0, std::abs(z)); }

// f(z) = A z + conj(phi(z)) with exact derivative fields; in the kernel of
// L for every admissible parameter set. phi must be holomorphic (checked at
// sample points when phi.dzbar is supplied; NotHolomorphicError otherwise).
ClosedFormField universal_displacement(cplx A, const ClosedFormField& phi);

// Analytic test fields with exact Wirtinger derivatives.
namespace fields {
ClosedFormField constant(cplx c);
ClosedFormField z();
ClosedFormField z_squared();      // holomorphic, not in ker L
ClosedFormField zbar_squared();   // anti-holomorphic kernel element
ClosedFormField abs_squared();    // |z|^2, L = beta
ClosedFormField z2_zbar();        // z^2 conj(z), L = 2(alpha+beta) z
ClosedFormField exp_z();
ClosedFormField sin_z();
ClosedFormField cubic();          // z^3 - 2z
}  // namespace fields

// Five universal displacements used across the verification suites.
std::vector<std::pair<std::string, ClosedFormField>> universal_test_fields();

}  // namespace lame
