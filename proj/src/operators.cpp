#include "lamenavier/operators.hpp"

#include <cmath>

#include "lamenavier/errors.hpp"

namespace lame {

namespace {

const cplx kI2pi = 1.0 / (cplx(0, 2.0 * M_PI));  // 1/(2 pi i)

AreaDensity conj_density(const AreaDensity& g) {
    AreaDensity c;
    if (g.fn) c.fn = [fn = g.fn](cplx z) { return std::conj(fn(z)); };
    // dz conj(g) = conj(dzbar g), dzbar conj(g) = conj(dz g)
    if (g.wirtinger)
        c.wirtinger = [w = g.wirtinger](cplx z) {
            const auto [gw, gwb] = w(z);
            return std::pair<cplx, cplx>{std::conj(gwb), std::conj(gw)};
        };
    c.at_nodes.resize(g.at_nodes.size());
    c.gw_nodes.resize(g.gw_nodes.size());
    c.gwb_nodes.resize(g.gwb_nodes.size());
    for (size_t i = 0; i < g.at_nodes.size(); ++i) c.at_nodes[i] = std::conj(g.at_nodes[i]);
    for (size_t i = 0; i < g.gw_nodes.size(); ++i) {
        c.gw_nodes[i] = std::conj(g.gwb_nodes[i]);
        c.gwb_nodes[i] = std::conj(g.gw_nodes[i]);
    }
    return c;
}

// The four contour terms shared by the Cauchy representation, the
// Borel-Pompeiu right-hand side and the Lame-Cauchy transform; densities are
// segment-midpoint samples of f, dz f, dzbar f on the curve.
cplx contour_terms(const LameParams& p, const Curve& curve, const std::vector<cplx>& f0m,
                   const std::vector<cplx>& f1m, const std::vector<cplx>& f2m, cplx z, Exec exec) {
    const size_t n = f0m.size();
    std::vector<cplx> conj_f1(n), t3dens(n);
    for (size_t i = 0; i < n; ++i) {
        conj_f1[i] = std::conj(f1m[i]);
        t3dens[i] = p.alpha * f1m[i] + p.beta * conj_f1[i];
    }
    const cplx t1 = contour_integral(curve, {Kernel::conj_cauchy, f0m, Measure::dxi_bar}, z,
                                     -p.alpha * p.alpha_star * kI2pi, {}, exec);
    const cplx t2 = contour_integral(curve, {Kernel::cauchy, f0m, Measure::dxi}, z,
                                     -p.beta * p.beta_star * kI2pi, {}, exec);
    const cplx t3 = contour_integral(curve, {Kernel::ratio, t3dens, Measure::dxi_bar}, z,
                                     p.alpha_star * kI2pi, {}, exec);
    const cplx t4a = contour_integral(curve, {Kernel::log_modulus, conj_f1, Measure::dxi}, z,
                                      p.alpha * p.beta_star * kI2pi, {}, exec);
    const cplx t4b = contour_integral(curve, {Kernel::log_modulus, f2m, Measure::dxi_bar}, z,
                                      -p.beta * p.beta_star * kI2pi, {}, exec);
    return t1 + t2 + t3 + t4a + t4b;
}

std::vector<cplx> sample_midpoints(const Curve& curve, const FieldFn& f) {
    std::vector<cplx> v(size_t(curve.n()));
    for (int i = 0; i < curve.n(); ++i) v[size_t(i)] = f(curve.midpoint(i));
    return v;
}

}  // namespace

cplx teodorescu(const LameParams& p, const DomainDecomposition& decomp, const AreaDensity& g,
                cplx z, const AreaOptions& opt, Exec exec) {
    const cplx ratio_term = area_integral(decomp, Kernel::ratio, conj_density(g), z, opt, exec);
    const cplx log_term = area_integral(decomp, Kernel::log_modulus, g, z, opt, exec);
    return (p.alpha_star * ratio_term - p.beta_star * log_term) / M_PI;
}

double verify_right_inverse(const LameParams& p, const DomainDecomposition& decomp,
                            const AreaDensity& g, cplx z, double h, const AreaOptions& opt) {
    if (h <= 0) h = 6.0 * decomp.finest_side();
    const Curve& curve = *decomp.curve;
    const Region region = curve.contains(z);
    if (region == Region::boundary)
        throw TooCloseToBoundaryError("verify_right_inverse: probe on the boundary");
    if (curve.distance(z) <= 3.0 * h)
        throw StencilOutOfDomainError("verify_right_inverse: stencil too close to the curve");
    AreaOptions shared = opt;
    shared.refine_center = z;  // one quadrature mesh for the whole FD stencil
    const cplx L = apply_lame_operator_fd(
        p, [&](cplx w) { return teodorescu(p, decomp, g, w, shared); }, z, h);
    const cplx expected = region == Region::inside ? g.fn(z) : cplx(0);
    return std::abs(L - expected);
}

cplx borel_pompeiu_rhs(const LameParams& p, const Curve& curve, const ClosedFormField& f,
                       const DomainDecomposition& area_domain, cplx z, const AreaOptions& opt,
                       Exec exec) {
    if (!f.value || !f.dz || !f.dzbar)
        throw MissingDerivativeError("borel_pompeiu_rhs: f needs value, dz and dzbar");
    const cplx boundary = contour_terms(p, curve, sample_midpoints(curve, f.value),
                                        sample_midpoints(curve, f.dz),
                                        sample_midpoints(curve, f.dzbar), z, exec);
    AreaDensity lf = make_area_density([&p, &f](cplx w) { return apply_lame_operator(p, f, w); });
    const cplx area = teodorescu(p, area_domain, lf, z, opt, exec);
    return boundary + area;
}

cplx cauchy_repr(const LameParams& p, const Curve& curve, const ClosedFormField& f, cplx z,
                 Exec exec) {
    if (!f.value || !f.dz || !f.dzbar)
        throw MissingDerivativeError("cauchy_repr: f needs value, dz and dzbar");
    return contour_terms(p, curve, sample_midpoints(curve, f.value), sample_midpoints(curve, f.dz),
                         sample_midpoints(curve, f.dzbar), z, exec);
}

cplx lame_cauchy_transform(const LameParams& p, const WhitneyJet& jet, cplx z, Exec exec) {
    return contour_terms(p, *jet.curve, vertex_to_midpoint_density(jet.f0),
                         vertex_to_midpoint_density(jet.f1), vertex_to_midpoint_density(jet.f2), z,
                         exec);
}

cplx lame_cauchy_dz(const LameParams& p, const WhitneyJet& jet, cplx z, Exec exec) {
    const Curve& curve = *jet.curve;
    const std::vector<cplx> f1m = vertex_to_midpoint_density(jet.f1);
    std::vector<cplx> conj_f1(f1m.size());
    for (size_t i = 0; i < f1m.size(); ++i) conj_f1[i] = std::conj(f1m[i]);
    const cplx t1 = contour_integral(curve, {Kernel::conj_cauchy, f1m, Measure::dxi_bar}, z,
                                     -p.alpha * p.alpha_star * kI2pi, {}, exec);
    const cplx t2 = contour_integral(curve, {Kernel::cauchy, f1m, Measure::dxi}, z,
                                     -p.beta * p.beta_star * kI2pi, {}, exec);
    const cplx J = contour_integral(curve, {Kernel::cauchy, f1m, Measure::dxi}, z, kI2pi, {}, exec);
    const cplx Jc = contour_integral(curve, {Kernel::cauchy, conj_f1, Measure::dxi}, z, kI2pi, {},
                                     exec);
    return t1 + t2 + p.alpha_star * p.beta * (std::conj(J) - Jc);
}

cplx boundary_limit(const std::function<cplx(cplx)>& field, const Curve& curve, int edge,
                    Side side, const BoundaryLimitOptions& opt) {
    const cplx t = curve.midpoint(edge);
    const cplx tangent = curve.delta(edge) / curve.seg_len(edge);
    // positively oriented curve: interior on the left of the tangent
    const cplx normal = (side == Side::plus ? cplx(0, 1) : cplx(0, -1)) * tangent;
    const double d0 = opt.delta_factor * curve.seg_len(edge);
    const cplx v1 = field(t + d0 * normal);
    const cplx v2 = field(t + 0.5 * d0 * normal);
    const cplx v3 = field(t + 0.25 * d0 * normal);
    const cplx w1 = 2.0 * v2 - v1;
    const cplx w2 = 2.0 * v3 - v2;
    if (std::abs(w2 - w1) > 10.0 * opt.tol)
        throw NonConvergentError("boundary_limit: extrapolants do not settle (singular approach?)");
    return (4.0 * w2 - w1) / 3.0;
}

cplx derivative_jump(const LameParams& p, const WhitneyJet& jet, int edge,
                     const BoundaryLimitOptions& opt) {
    auto dz = [&](cplx w) { return lame_cauchy_dz(p, jet, w, opt.exec); };
    return boundary_limit(dz, *jet.curve, edge, Side::plus, opt) -
           boundary_limit(dz, *jet.curve, edge, Side::minus, opt);
}

JumpProblemSolution solve_jump_problem(const LameParams& p, const WhitneyJet& jet,
                                       JumpMethod method, const SolveOptions& opt) {
    const JetCheckReport rep = check_jet(jet);
    if (!rep.valid)
        throw JetInvalidError("solve_jump_problem: jet fails the Lip(1+nu) check");
    JumpProblemSolution sol;
    sol.method = method;
    sol.params = p;
    sol.jet = std::make_shared<WhitneyJet>(jet);
    sol.certificate_known = opt.d_exponent > 0;
    sol.certificate = sol.certificate_known && jet.nu > 0.5 * opt.d_exponent;
    if (method == JumpMethod::cauchy_transform) {
        auto pj = sol.jet;
        const Exec exec = opt.exec;
        sol.field = [p, pj, exec](cplx z) { return lame_cauchy_transform(p, *pj, z, exec); };
        sol.dz_field = [p, pj, exec](cplx z) { return lame_cauchy_dz(p, *pj, z, exec); };
        return sol;
    }
    // whitney_teodorescu: F = chi_Omega f~ - T[L f~]
    ExtendOptions eo;
    eo.max_depth = opt.ext_depth;
    auto ext = std::make_shared<Extension>(extend(jet, eo));
    auto decomp = std::make_shared<DomainDecomposition>(
        subdivide_cells(whitney_decompose(jet.curve, opt.teo_depth), opt.quad_subdivide));
    auto density = std::make_shared<AreaDensity>(sample_area_density(
        *decomp, [ext, p](cplx w) { return ext->lame_applied(p, w); }, opt.exec));
    const AreaOptions area = opt.area;
    const Exec exec = opt.exec;
    sol.field = [p, ext, decomp, density, area, exec](cplx z) {
        const Region r = decomp->curve->contains(z);
        if (r == Region::boundary)
            throw TooCloseToBoundaryError("jump solution: field undefined on the curve");
        const cplx chi = r == Region::inside ? ext->value(z) : cplx(0);
        return chi - teodorescu(p, *decomp, *density, z, area, exec);
    };
    sol.dz_field = [p, ext, decomp, density, area, exec](cplx z) {
        const Region r = decomp->curve->contains(z);
        if (r == Region::boundary)
            throw TooCloseToBoundaryError("jump solution: field undefined on the curve");
        const cplx chi = r == Region::inside ? ext->wirtinger1(z).dz : cplx(0);
        const cplx C = area_integral(*decomp, Kernel::cauchy, *density, z, area, exec) / M_PI;
        return chi + p.alpha_star * std::conj(C) - p.beta_star * C;
    };
    return sol;
}

GrowthReport asymptotic_growth_check(const std::function<cplx(cplx)>& field,
                                     const std::function<cplx(cplx)>& dz_field,
                                     const std::vector<double>& radii, int n_angles) {
    GrowthReport rep;
    rep.radii = radii;
    for (double R : radii) {
        double m = 0;
        for (int k = 0; k < n_angles; ++k) {
            const double th = 2.0 * M_PI * k / n_angles;
            m = std::max(m, std::abs(field(R * cplx(std::cos(th), std::sin(th)))));
        }
        rep.max_abs.push_back(m);
        rep.ratio.push_back(m / std::log(R));
        rep.dz_axis.push_back(dz_field ? std::abs(dz_field(cplx(R, 0))) : 0.0);
    }
    rep.ratio_bounded = true;
    const double floor = 1e-8;
    for (double r : rep.ratio)
        if (r > std::max(2.0 * rep.ratio.front(), floor)) rep.ratio_bounded = false;
    return rep;
}

FieldOnGrid evaluate_on_grid(const std::function<cplx(cplx)>& field, const Curve& curve, int nx,
                             int ny, const BBox& box, FieldOnGrid::Provenance prov, Exec exec) {
    FieldOnGrid out;
    out.provenance = prov;
    std::vector<cplx> pts;
    std::vector<Region> regs;
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const cplx z(box.xmin + (ix + 0.5) * box.width() / nx,
                         box.ymin + (iy + 0.5) * box.height() / ny);
            const Region r = curve.contains(z);
            if (r == Region::boundary) continue;  // boundary values only via boundary_limit
            pts.push_back(z);
            regs.push_back(r);
        }
    out.points = std::move(pts);
    out.regions = std::move(regs);
    out.values.resize(out.points.size());
    const long n = long(out.points.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < n; ++i) out.values[size_t(i)] = field(out.points[size_t(i)]);
    } else {
        for (long i = 0; i < n; ++i) out.values[size_t(i)] = field(out.points[size_t(i)]);
    }
    return out;
}

}  // namespace lame
