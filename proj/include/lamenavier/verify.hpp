#pragma once

#include <map>
#include <string>

#include "lamenavier/operators.hpp"

namespace lame {

// One verification check: `property` states the identity being certified,
// `measured` is compared against `tol` with the given comparison direction.
struct Check {
    std::string name;
    std::string property;
    double measured = 0;
    double tol = 0;
    bool higher_is_better = false;  // pass = measured >= tol instead of <=
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    bool all_pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    uint64_t seed = 42;
    std::map<std::string, double> tol;  // per-check overrides by check name
};

SuiteResult verify_identities(const VerifyOptions& opt = {});
SuiteResult verify_inverse(const VerifyOptions& opt = {});
SuiteResult verify_borel_pompeiu(const VerifyOptions& opt = {});
SuiteResult verify_cauchy(const VerifyOptions& opt = {});
SuiteResult verify_jumps(const VerifyOptions& opt = {});
SuiteResult verify_growth(const VerifyOptions& opt = {});
SuiteResult verify_fractal(const VerifyOptions& opt = {});

const std::vector<std::string>& verify_suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt = {});

// Seeded rejection sampling of interior points with dist(z, gamma) >= min_dist.
std::vector<cplx> seeded_interior_probes(const Curve& curve, int count, double min_dist,
                                         uint64_t seed);
// Seeded distinct edge indices.
std::vector<int> seeded_edges(const Curve& curve, int count, uint64_t seed);

}  // namespace lame
