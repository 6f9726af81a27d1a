#include "lamenavier/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lamenavier/errors.hpp"

namespace lame {

namespace {

struct Checker {
    SuiteResult res;
    const VerifyOptions& opt;
    explicit Checker(std::string suite, const VerifyOptions& o) : opt(o) {
        res.suite = std::move(suite);
    }
    double tol_for(const std::string& name, double dflt) const {
        auto it = opt.tol.find(name);
        return it == opt.tol.end() ? dflt : it->second;
    }
    void le(const std::string& name, const std::string& property, double measured, double tol) {
        const double t = tol_for(name, tol);
        res.checks.push_back({name, property, measured, t, false, measured <= t});
    }
    void ge(const std::string& name, const std::string& property, double measured, double tol) {
        const double t = tol_for(name, tol);
        res.checks.push_back({name, property, measured, t, true, measured >= t});
    }
};

std::vector<LameParams> param_grid(int n_mu, int n_lambda) {
    std::vector<LameParams> grid;
    for (int i = 0; i < n_mu; ++i) {
        const double mu = 0.2 * std::pow(40.0, double(i) / std::max(1, n_mu - 1));  // 0.2 .. 8
        for (int j = 0; j < n_lambda; ++j) {
            const double lo = -2.0 * mu / 3.0;
            const double lambda = lo + (4.0 * mu - lo) * double(j + 1) / n_lambda;
            grid.push_back(make_params(lambda, mu));
        }
    }
    return grid;
}

const std::vector<LameParams>& three_params() {
    static const std::vector<LameParams> p = {make_params(1, 1), make_params(2, 3),
                                              make_params(0.5, 1.7)};
    return p;
}

WhitneyJet named_jet(const std::shared_ptr<const Curve>& curve, const std::string& which,
                     double nu) {
    if (which == "const") return jet_from_field(curve, fields::constant(1.0), nu);
    if (which == "z") return jet_from_field(curve, fields::z(), nu);
    if (which == "z2") return jet_from_field(curve, fields::z_squared(), nu);
    throw Error("named_jet: unknown jet " + which);
}

double stddev(const std::vector<cplx>& v) {
    cplx mean = 0;
    for (const cplx& x : v) mean += x;
    mean /= double(v.size());
    double s = 0;
    for (const cplx& x : v) s += std::norm(x - mean);
    return std::sqrt(s / double(v.size()));
}

}  // namespace

std::vector<cplx> seeded_interior_probes(const Curve& curve, int count, double min_dist,
                                         uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<cplx> probes;
    const BBox& bb = curve.bbox();
    int guard = 0;
    while (int(probes.size()) < count && ++guard < 100000) {
        const cplx z(bb.xmin + rng.uniform() * bb.width(), bb.ymin + rng.uniform() * bb.height());
        if (curve.contains(z) == Region::inside && curve.distance(z) >= min_dist)
            probes.push_back(z);
    }
    if (int(probes.size()) < count)
        throw Error("seeded_interior_probes: could not place the requested probes");
    return probes;
}

std::vector<int> seeded_edges(const Curve& curve, int count, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<int> edges;
    while (int(edges.size()) < count) {
        const int e = int(rng.below(uint64_t(curve.n())));
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    return edges;
}

SuiteResult verify_identities(const VerifyOptions& opt) {
    Checker ck("identities", opt);
    double worst_unit = 0, worst_swap = 0, worst_poisson = 0;
    for (const LameParams& p : param_grid(10, 10)) {
        worst_unit = std::max(worst_unit,
                              std::abs(p.alpha * p.alpha_star - p.beta * p.beta_star - 1.0));
        worst_swap = std::max(worst_swap,
                              std::abs(p.beta * p.alpha_star - p.alpha * p.beta_star));
        worst_poisson = std::max(worst_poisson,
                                 std::abs(p.beta / p.alpha - (3.0 - 4.0 * p.sigma)));
    }
    ck.le("identity-unit", "alpha alpha* - beta beta* = 1 over the parameter grid", worst_unit,
          1e-12);
    ck.le("identity-swap", "beta alpha* - alpha beta* = 0 over the parameter grid", worst_swap,
          1e-12);
    ck.le("identity-poisson", "beta/alpha = 3 - 4 sigma", worst_poisson, 1e-12);

    const cplx probes[3] = {cplx(0.5, 0), cplx(-0.3, 0.8), cplx(1.2, -0.7)};
    double worst_exact = 0, worst_fd = 0;
    for (const auto& [name, f] : universal_test_fields()) {
        for (const LameParams& p : three_params()) {
            for (const cplx& z : probes) {
                worst_exact = std::max(worst_exact, std::abs(apply_lame_operator(p, f, z)));
                worst_fd = std::max(
                    worst_fd, std::abs(apply_lame_operator_fd(p, f.value, z, 1e-3)));
            }
        }
    }
    ck.le("kernel-exact", "L[A z + conj(phi)] = 0 with exact derivatives", worst_exact, 0.0);
    ck.le("kernel-fd", "finite-difference L of universal displacements vanishes", worst_fd, 1e-6);
    return ck.res;
}

SuiteResult verify_inverse(const VerifyOptions& opt) {
    Checker ck("inverse", opt);
    auto curve = std::make_shared<const Curve>(make_circle(0, 1, 512));
    const DomainDecomposition d8 = whitney_decompose(curve, 8);
    const DomainDecomposition d10 = whitney_decompose(curve, 10);
    const std::vector<cplx> interior = {cplx(0.2, 0.1), cplx(-0.35, 0.3), cplx(0.1, -0.45)};
    const std::vector<cplx> exterior = {cplx(4, 0), cplx(-2.5, 2)};
    struct Density {
        const char* name;
        AreaDensity g;
    };
    std::vector<Density> gs;
    gs.push_back({"1", make_constant_density(1.0)});
    gs.push_back({"xi", make_area_density([](cplx w) { return w; })});
    const LameParams p = make_params(1, 1);

    double max_in_10 = 0, max_ex_10 = 0, mean8 = 0, mean10 = 0;
    int n_in = 0;
    for (auto& [name, g] : gs) {
        const AreaDensity g8 = sample_area_density(d8, g.fn);
        const AreaDensity g10 = sample_area_density(d10, g.fn);
        for (const cplx& z : interior) {
            const double r8 = verify_right_inverse(p, d8, g8, z);
            const double r10 = verify_right_inverse(p, d10, g10, z);
            mean8 += r8;
            mean10 += r10;
            ++n_in;
            max_in_10 = std::max(max_in_10, r10);
        }
        for (const cplx& z : exterior)
            max_ex_10 = std::max(max_ex_10, verify_right_inverse(p, d10, g10, z));
    }
    mean8 /= n_in;
    mean10 /= n_in;
    ck.le("inverse-interior", "|L_fd[T g] - g| at interior probes, depth 10", max_in_10, 5e-2);
    ck.le("inverse-exterior", "|L_fd[T g]| at exterior probes, depth 10", max_ex_10, 5e-2);
    ck.ge("inverse-improves", "mean interior residual shrinks from depth 8 to 10",
          mean8 / std::max(mean10, 1e-300), 2.0);
    return ck.res;
}

SuiteResult verify_borel_pompeiu(const VerifyOptions& opt) {
    Checker ck("borel_pompeiu", opt);
    auto curve = std::make_shared<const Curve>(make_circle(0, 1, 1 << 12));
    const DomainDecomposition decomp = whitney_decompose(curve, 11);
    const LameParams p = make_params(1, 1);
    const std::vector<cplx> probes = seeded_interior_probes(*curve, 20, 0.2, opt.seed);
    const std::pair<const char*, ClosedFormField> fields_[4] = {
        {"z", fields::z()},
        {"zbar^2", fields::zbar_squared()},
        {"|z|^2", fields::abs_squared()},
        {"z^2 zbar", fields::z2_zbar()},
    };
    for (const auto& [name, f] : fields_) {
        double worst = 0;
        for (const cplx& z : probes)
            worst = std::max(worst, std::abs(borel_pompeiu_rhs(p, *curve, f, decomp, z) - f.value(z)));
        ck.le(std::string("bp-") + name, "boundary terms + T[L f] reproduce f at interior probes",
              worst, 1e-2);
    }
    return ck.res;
}

SuiteResult verify_cauchy(const VerifyOptions& opt) {
    Checker ck("cauchy", opt);
    auto curve = std::make_shared<const Curve>(make_circle(0, 1, 1 << 12));
    const LameParams p = make_params(1, 1);
    const std::vector<cplx> probes = seeded_interior_probes(*curve, 10, 0.2, opt.seed + 1);
    for (const auto& [name, f] : universal_test_fields()) {
        double worst = 0;
        for (const cplx& z : probes)
            worst = std::max(worst, std::abs(cauchy_repr(p, *curve, f, z) - f.value(z)));
        ck.le("cauchy-" + name, "contour terms reproduce the homogeneous solution", worst, 1e-3);
    }
    return ck.res;
}

SuiteResult verify_jumps(const VerifyOptions& opt) {
    Checker ck("jumps", opt);
    auto curve = std::make_shared<const Curve>(make_circle(0, 1, 1 << 12));
    const LameParams p = make_params(1, 1);
    const double nu = 0.9;
    const std::vector<int> edges = seeded_edges(*curve, 8, opt.seed + 2);

    const std::pair<const char*, ClosedFormField> jets_[3] = {
        {"const", fields::constant(1.0)}, {"z", fields::z()}, {"z2", fields::z_squared()}};
    for (const auto& [name, f] : jets_) {
        const WhitneyJet jet = jet_from_field(curve, f, nu);
        auto field = [&](cplx w) { return lame_cauchy_transform(p, jet, w); };
        double worst0 = 0, worst1 = 0;
        for (int e : edges) {
            const cplx t = curve->midpoint(e);
            const cplx jump = boundary_limit(field, *curve, e, Side::plus) -
                              boundary_limit(field, *curve, e, Side::minus);
            worst0 = std::max(worst0, std::abs(jump - f.value(t)));
            worst1 = std::max(worst1, std::abs(derivative_jump(p, jet, e) - f.dz(t)));
        }
        ck.le(std::string("jump-f0-") + name, "F+ - F- = f0 at edge midpoints", worst0, 1e-2);
        ck.le(std::string("jump-f1-") + name, "(dz F)+ - (dz F)- = f1 at edge midpoints", worst1,
              5e-2);
    }

    // closed form: transform of the constant jet is 1 inside, 0 outside
    const WhitneyJet cjet = named_jet(curve, "const", nu);
    double worst_in = 0, worst_out = 0;
    for (const cplx z : {cplx(0, 0), cplx(0.3, 0.2), cplx(0, -0.4), cplx(-0.35, 0.15)})
        worst_in = std::max(worst_in, std::abs(lame_cauchy_transform(p, cjet, z) - 1.0));
    for (const cplx z : {cplx(3, 0), cplx(-2, 2), cplx(1.5, -2.5)})
        worst_out = std::max(worst_out, std::abs(lame_cauchy_transform(p, cjet, z)));
    ck.le("ct-const-inside", "C[{1,0,0}] = alpha alpha* - beta beta* = 1 inside", worst_in, 1e-4);
    ck.le("ct-const-outside", "C[{1,0,0}] = 0 outside", worst_out, 1e-4);

    // uniqueness as method agreement: the two solutions differ by a constant
    SolveOptions so;
    so.teo_depth = 11;
    so.ext_depth = 13;
    const std::vector<cplx> probes = seeded_interior_probes(*curve, 20, 0.25, opt.seed + 3);
    for (const char* name : {"const", "z2"}) {
        const WhitneyJet jet = named_jet(curve, name, nu);
        const JumpProblemSolution a = solve_jump_problem(p, jet, JumpMethod::cauchy_transform, so);
        const JumpProblemSolution b = solve_jump_problem(p, jet, JumpMethod::whitney_teodorescu, so);
        std::vector<cplx> diff;
        for (const cplx& z : probes) diff.push_back(a.field(z) - b.field(z));
        ck.le(std::string("method-agreement-") + name,
              "std dev of (C[jet] - (chi f~ - T[L f~])) over interior probes", stddev(diff), 1e-2);
    }
    return ck.res;
}

SuiteResult verify_growth(const VerifyOptions& opt) {
    Checker ck("growth", opt);
    auto curve = std::make_shared<const Curve>(make_circle(0, 1, 1 << 11));
    const LameParams p = make_params(1, 1);
    const std::vector<double> radii = {10, 100, 1000};
    double worst_excess = 0, worst_dz = 0;
    for (const char* name : {"const", "z", "z2"}) {
        const WhitneyJet jet = named_jet(curve, name, 0.9);
        auto F = [&](cplx w) { return lame_cauchy_transform(p, jet, w); };
        auto dF = [&](cplx w) { return lame_cauchy_dz(p, jet, w); };
        const GrowthReport rep = asymptotic_growth_check(F, dF, radii);
        const double bound = std::max(2.0 * rep.ratio.front(), 1e-8);
        for (double r : rep.ratio) worst_excess = std::max(worst_excess, r / bound);
        worst_dz = std::max(worst_dz, rep.dz_axis[1]);  // R = 100
    }
    ck.le("growth-log-bound", "max|F| / ln R stays bounded along R = 10, 100, 1000", worst_excess,
          1.0);
    ck.le("growth-dz-vanishes", "|dz F| at z = 100 vanishes at infinity", worst_dz, 1e-2);
    return ck.res;
}

SuiteResult verify_fractal(const VerifyOptions& opt) {
    Checker ck("fractal", opt);
    const double dim_koch = std::log(4.0) / std::log(3.0);

    {  // box-counting dimension of the generation-6 snowflake
        const Curve koch6 = make_koch_snowflake(6);
        const double slope = box_dimension_slope(koch6, std::pow(3.0, -5), 1.0 / 3.0, 5);
        ck.le("box-dim-slope", "log N vs log(1/tau) regression slope = log4/log3 +- 0.05",
              std::abs(slope - dim_koch), 0.05);

        // circle sanity: the d-summability tail settles
        auto circle = std::make_shared<const Curve>(make_circle(0, 1, 512));
        const double v2 = d_summability_integral(*circle, 1.5, 1e-2);
        const double v3 = d_summability_integral(*circle, 1.5, 1e-3);
        const double v4 = d_summability_integral(*circle, 1.5, 1e-4);
        ck.le("dsummability-tail", "tail differences of int N(tau) tau^(d-1) shrink >= 2x/decade",
              std::abs(v4 - v3) / std::max(std::abs(v3 - v2), 1e-300), 0.5);
    }

    {  // d-sum dichotomy across the box dimension (Whitney increments)
        auto koch6 = std::make_shared<const Curve>(make_koch_snowflake(6));
        const DomainDecomposition dec = whitney_decompose(koch6, 12);
        for (const double d : {1.5, 1.1}) {
            const std::vector<double> by_depth = d_sum_by_depth(dec, d);
            auto cum = [&](int k) {
                double s = 0;
                for (int j = 0; j <= k; ++j) s += by_depth[size_t(j)];
                return s;
            };
            const double inc1 = cum(10) - cum(8), inc2 = cum(12) - cum(10);
            const double ratio = inc2 / std::max(inc1, 1e-300);
            if (d > dim_koch)
                ck.le("dsum-decay-d1.5", "d-sum increments decay geometrically for d > dim",
                      ratio, 0.85);
            else
                ck.ge("dsum-no-decay-d1.1", "d-sum increments do not decay for d < dim", ratio,
                      0.95);
        }
    }

    {  // p = (2-d)/(1-nu) > 2  iff  nu > d/2
        int mismatches = 0;
        for (int i = 1; i <= 19; ++i)
            for (int j = 1; j <= 19; ++j) {
                const double nu = 0.05 * i, d = 1.0 + 0.05 * j;
                if (d >= 2.0 || nu >= 1.0) continue;
                if ((lp_exponent(d, nu) > 2.0) != (nu > 0.5 * d)) ++mismatches;
            }
        ck.le("lp-exponent-iff", "p > 2 iff nu > d/2 on the parameter grid", mismatches, 0.0);
    }

    {  // L^p estimate of the z^2 jet extension stabilizes under refinement
        auto koch5 = std::make_shared<const Curve>(make_koch_snowflake(5));
        const double nu = 0.8, d = 1.3;
        const double pexp = lp_exponent(d, nu);
        ExtendOptions eo;
        eo.max_depth = 12;
        const Extension ext = extend(jet_from_field(koch5, fields::z_squared(), nu), eo);
        const DomainDecomposition dec = whitney_decompose(koch5, 10);
        const LpEstimate est = lp_norm_estimate(ext, dec, pexp);
        double v8 = 0, v10 = 0;
        for (int k = 0; k <= 10; ++k) {
            if (k <= 8) v8 += est.per_depth[size_t(k)];
            v10 += est.per_depth[size_t(k)];
        }
        ck.le("lp-estimate-stabilizes", "sum_Q (sup|d2 f~|)^p |Q|^2 changes < 10% from depth 8 to 10",
              std::abs(v10 - v8) / std::max(v10, 1e-300), 0.10);
    }

    {  // jump problem on the fractal boundary (constant jet, Whitney-Teodorescu route)
        auto koch5 = std::make_shared<const Curve>(make_koch_snowflake(5));
        const LameParams p = make_params(1, 1);
        const WhitneyJet jet = jet_from_field(koch5, fields::constant(1.0), 0.9);
        SolveOptions so;
        so.teo_depth = 11;
        so.ext_depth = 13;
        so.d_exponent = 1.3;
        const JumpProblemSolution sol =
            solve_jump_problem(p, jet, JumpMethod::whitney_teodorescu, so);
        ck.ge("fractal-certificate", "nu > d/2 certifies the L^p property", sol.certificate ? 1 : 0,
              1.0);
        double worst_jump = 0;
        for (int e : seeded_edges(*koch5, 8, opt.seed + 4)) {
            const cplx jump = boundary_limit(sol.field, *koch5, e, Side::plus) -
                              boundary_limit(sol.field, *koch5, e, Side::minus);
            worst_jump = std::max(worst_jump, std::abs(jump - 1.0));
        }
        ck.le("fractal-jump-f0", "F+ - F- = 1 at admissible probes on the snowflake", worst_jump,
              5e-2);
        double worst_L = 0;
        for (const cplx z : {cplx(0, 0), cplx(0.3, 0.2)})
            worst_L = std::max(worst_L, std::abs(apply_lame_operator_fd(p, sol.field, z, 0.02)));
        ck.le("fractal-L-interior", "L F = 0 at interior probes (finite differences)", worst_L,
              5e-2);
        double worst_Lx = 0;
        for (const cplx z : {cplx(2.5, 0), cplx(-2, 1.5)})
            worst_Lx = std::max(worst_Lx, std::abs(apply_lame_operator_fd(p, sol.field, z, 0.02)));
        ck.le("fractal-L-exterior", "L F = 0 at exterior probes (finite differences)", worst_Lx,
              5e-2);
    }
    return ck.res;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"identities", "inverse", "borel_pompeiu",
                                                   "cauchy", "jumps", "growth", "fractal"};
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
    if (name == "identities") return verify_identities(opt);
    if (name == "inverse") return verify_inverse(opt);
    if (name == "borel_pompeiu") return verify_borel_pompeiu(opt);
    if (name == "cauchy") return verify_cauchy(opt);
    if (name == "jumps") return verify_jumps(opt);
    if (name == "growth") return verify_growth(opt);
    if (name == "fractal") return verify_fractal(opt);
    throw Error("run_suite: unknown suite " + name);
}

}  // namespace lame
