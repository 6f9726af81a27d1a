#include "lamenavier/quadrature.hpp"

#include <cmath>

#include "lamenavier/errors.hpp"

namespace lame {

cplx kernel_eval(Kernel k, cplx w) {
    switch (k) {
        case Kernel::cauchy: return 1.0 / w;
        case Kernel::conj_cauchy: return 1.0 / std::conj(w);
        case Kernel::ratio: return w / std::conj(w);
        case Kernel::log_modulus: return cplx(2.0 * std::log(std::abs(w)), 0.0);
    }
    return {};
}

std::vector<cplx> vertex_to_midpoint_density(const std::vector<cplx>& v) {
    const size_t n = v.size();
    std::vector<cplx> m(n);
    for (size_t i = 0; i < n; ++i) m[i] = 0.5 * (v[i] + v[(i + 1) % n]);
    return m;
}

cplx contour_integral(const Curve& curve, const ContourIntegrand& integrand, cplx z,
                      cplx prefactor, const ContourOptions& opt, Exec exec) {
    const int n = curve.n();
    if (int(integrand.density.size()) != n)
        throw BadDiscretizationError("contour_integral: density length must equal segment count");
    if (curve.distance(z) < opt.guard_factor * curve.max_seg_len())
        throw TooCloseToBoundaryError(
            "contour_integral: evaluation point too close to the curve; refine the curve or use "
            "boundary_limit");
    std::vector<cplx> terms(static_cast<size_t>(n));
    const bool conj_measure = integrand.measure == Measure::dxi_bar;
    const Kernel k = integrand.kernel;
    auto term = [&](int i) {
        const cplx dm = conj_measure ? std::conj(curve.delta(i)) : curve.delta(i);
        terms[size_t(i)] = kernel_eval(k, curve.midpoint(i) - z) * integrand.density[size_t(i)] * dm;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) term(i);
    } else {
        for (int i = 0; i < n; ++i) term(i);
    }
    return prefactor * pairwise_sum(terms);
}

AreaDensity make_area_density(std::function<cplx(cplx)> fn) {
    AreaDensity d;
    d.fn = std::move(fn);
    return d;
}

AreaDensity make_area_density(std::function<cplx(cplx)> fn,
                              std::function<std::pair<cplx, cplx>(cplx)> wirtinger) {
    AreaDensity d;
    d.fn = std::move(fn);
    d.wirtinger = std::move(wirtinger);
    return d;
}

AreaDensity make_constant_density(cplx value) {
    AreaDensity d;
    d.fn = [value](cplx) { return cplx(value); };
    d.wirtinger = [](cplx) { return std::pair<cplx, cplx>{cplx(0), cplx(0)}; };
    return d;
}

namespace {

cplx density_at(const AreaDensity& g, cplx p) {
    if (!g.fn) throw SingularDensityError("area_integral: density callable required here");
    const cplx v = g.fn(p);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw SingularDensityError("area_integral: density is not finite at a quadrature node");
    return v;
}

std::pair<cplx, cplx> density_gradient(const AreaDensity& g, cplx c, double scale) {
    if (g.wirtinger) return g.wirtinger(c);
    const double d = scale / 8.0;
    const cplx fx = (g.fn(c + d) - g.fn(c - d)) / (2.0 * d);
    const cplx fy = (g.fn(c + cplx(0, d)) - g.fn(c - cplx(0, d))) / (2.0 * d);
    return {wirtinger_z(fx, fy), wirtinger_zbar(fx, fy)};
}

// Antiderivative bundle for int t^k ln((t+p)^2 + q^2) dt, k = 0, 1, 2.
struct LogInts {
    double j0 = 0, j1 = 0, j2 = 0;
};

LogInts log_ints(double p, double q, double L) {
    auto A0 = [&](double u) {
        const double m = u * u + q * q;
        double r = (m > 0 ? u * std::log(m) : 0.0) - 2.0 * u;
        if (q != 0) r += 2.0 * q * std::atan(u / q);
        return r;
    };
    auto A1 = [&](double u) {
        const double m = u * u + q * q;
        return 0.5 * (m > 0 ? m * (std::log(m) - 1.0) : 0.0);
    };
    auto A2 = [&](double u) {
        const double m = u * u + q * q;
        double r = (m > 0 ? (u * u * u / 3.0) * std::log(m) : 0.0) - (2.0 / 9.0) * u * u * u +
                   (2.0 / 3.0) * q * q * u;
        if (q != 0) r -= (2.0 / 3.0) * q * q * q * std::atan(u / q);
        return r;
    };
    const double u1 = L + p, u0 = p;
    LogInts li;
    li.j0 = A0(u1) - A0(u0);
    const double a1 = A1(u1) - A1(u0);
    const double a2 = A2(u1) - A2(u0);
    li.j1 = a1 - p * li.j0;
    li.j2 = a2 - 2.0 * p * a1 + p * p * li.j0;
    return li;
}

// Exact edge integrals  int_edge F(xi - z) dxi  of the Green potentials F
// with  d/dwbar F = K, K w, K wbar  for each kernel family. Each bundle is
// assembled from the elementary log/atan antiderivatives above; the only
// complex logarithm (cauchy kernel) runs along a line of constant imaginary
// part, so principal values never wrap.
struct EdgeMoments {
    cplx m0, mw, mwb;
};

EdgeMoments edge_moments(Kernel k, cplx A, cplx B, cplx z) {
    const double L = std::abs(B - A);
    const cplx e = (B - A) / L;
    const cplx u0 = (A - z) * std::conj(e);  // w(t) = e (t + u0)
    const double p = u0.real(), q = u0.imag();
    const LogInts li = log_ints(p, q, L);
    const cplx uc = std::conj(u0);
    const double L2 = L * L, L3 = L * L * L;
    EdgeMoments em;
    switch (k) {
        case Kernel::cauchy: {
            // F0 = wbar/w, Fw = wbar, Fwb = wbar^2/(2w)
            cplx dln = 0;
            if (q != 0) dln = std::log(u0 + L) - std::log(u0);
            em.m0 = std::conj(e) * (cplx(L) + (uc - u0) * dln);
            em.mw = std::conj(e) * (cplx(0.5 * L2) + uc * L) * e;  // int conj(w) dxi
            // int (t+uc)^2/(t+u0) dt = L^2/2 + (2uc - u0) L + (uc-u0)^2 dln
            em.mwb = std::conj(e) * std::conj(e) * e * 0.5 *
                     (cplx(0.5 * L2) + (2.0 * uc - u0) * L + (uc - u0) * (uc - u0) * dln);
            break;
        }
        case Kernel::conj_cauchy:
            // handled upstream through the conjugate symmetry with `cauchy`
            break;
        case Kernel::ratio: {
            // F0 = w ln|w|^2, Fw = w^2 ln|w|^2, Fwb = w wbar
            em.m0 = e * e * (cplx(li.j1) + u0 * cplx(li.j0));
            em.mw = e * e * e * (cplx(li.j2) + 2.0 * u0 * cplx(li.j1) + u0 * u0 * cplx(li.j0));
            em.mwb = e * (cplx(L3 / 3.0) + (u0 + uc) * cplx(0.5 * L2) + u0 * uc * cplx(L));
            break;
        }
        case Kernel::log_modulus: {
            // F0 = wbar (ln|w|^2 - 1), Fw = w wbar (ln|w|^2 - 1),
            // Fwb = (wbar^2/2)(ln|w|^2 - 1/2)
            em.m0 = (cplx(li.j1) + uc * cplx(li.j0)) - (cplx(0.5 * L2) + uc * cplx(L));
            em.mw = e * ((cplx(li.j2) + 2.0 * p * cplx(li.j1) + u0 * uc * cplx(li.j0)) -
                         (cplx(L3 / 3.0) + p * cplx(L2) + u0 * uc * cplx(L)));
            em.mwb = std::conj(e) * 0.5 *
                     ((cplx(li.j2) + 2.0 * uc * cplx(li.j1) + uc * uc * cplx(li.j0)) -
                      0.5 * (cplx(L3 / 3.0) + uc * cplx(L2) + uc * uc * cplx(L)));
            break;
        }
    }
    return em;
}

}  // namespace

CellMoments kernel_cell_moments(Kernel k, cplx z, cplx center, double side) {
    const double h = 0.5 * side;
    const cplx corners[5] = {center + cplx(-h, -h), center + cplx(h, -h), center + cplx(h, h),
                             center + cplx(-h, h), center + cplx(-h, -h)};
    CellMoments cm;
    if (k == Kernel::conj_cauchy) {
        // conjugate symmetry: moments are conjugates of the cauchy ones with
        // the roles of w and wbar swapped
        const CellMoments cc = kernel_cell_moments(Kernel::cauchy, z, center, side);
        cm.m0 = std::conj(cc.m0);
        cm.mw = std::conj(cc.mwb);
        cm.mwb = std::conj(cc.mw);
        return cm;
    }
    cplx l0 = 0, lw = 0, lwb = 0;
    for (int i = 0; i < 4; ++i) {
        const EdgeMoments em = edge_moments(k, corners[i], corners[i + 1], z);
        l0 += em.m0;
        lw += em.mw;
        lwb += em.mwb;
    }
    const cplx half_i = cplx(0, 2);
    cm.m0 = l0 / half_i;
    cm.mw = lw / half_i;
    cm.mwb = lwb / half_i;
    return cm;
}

cplx kernel_cell_moment(Kernel k, cplx z, cplx center, double side) {
    return kernel_cell_moments(k, z, center, side).m0;
}

AreaDensity sample_area_density(const DomainDecomposition& decomp, std::function<cplx(cplx)> fn,
                                Exec exec) {
    AreaDensity d;
    d.fn = std::move(fn);
    const size_t ns = decomp.squares.size(), nc = decomp.collar_cells.size();
    d.at_nodes.resize(ns + nc);
    d.gw_nodes.resize(ns + nc);
    d.gwb_nodes.resize(ns + nc);
    auto fill = [&](size_t i) {
        const WhitneySquare& q = i < ns ? decomp.squares[i] : decomp.collar_cells[i - ns];
        d.at_nodes[i] = d.fn(q.center);
        const auto [gw, gwb] = density_gradient(d, q.center, q.side);
        d.gw_nodes[i] = gw;
        d.gwb_nodes[i] = gwb;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < long(ns + nc); ++i) fill(size_t(i));
    } else {
        for (size_t i = 0; i < ns + nc; ++i) fill(i);
    }
    return d;
}

namespace {

struct CellJob {
    cplx center;
    double side;
    long node = -1;  // index into the density caches, or -1
};

// Linear density model with exact kernel moments:
//   int_Q K (g(c) + gw (xi-c) + gwb conj(xi-c)) dA
// The moments are taken about z, so the (xi-c) factors shift by (c-z).
cplx cell_term(Kernel k, const AreaDensity& g, cplx z, const CellJob& job) {
    cplx gv, gw, gwb;
    if (job.node >= 0 && !g.at_nodes.empty()) {
        gv = g.at_nodes[size_t(job.node)];
        gw = g.gw_nodes[size_t(job.node)];
        gwb = g.gwb_nodes[size_t(job.node)];
    } else {
        gv = density_at(g, job.center);
        const auto [a, b] = density_gradient(g, job.center, job.side);
        gw = a;
        gwb = b;
    }
    const CellMoments cm = kernel_cell_moments(k, z, job.center, job.side);
    const cplx wc = job.center - z;
    const cplx m1 = cm.mw - wc * cm.m0;          // int K (xi - c) dA
    const cplx m1b = cm.mwb - std::conj(wc) * cm.m0;  // int K conj(xi - c) dA
    return gv * cm.m0 + gw * m1 + gwb * m1b;
}

cplx integrate_cell(Kernel k, const AreaDensity& g, cplx z, cplx zeta, const CellJob& job,
                    double s_floor, const AreaOptions& opt) {
    const double half = 0.5 * job.side;
    const bool zeta_inside = std::abs(zeta.real() - job.center.real()) <= half &&
                             std::abs(zeta.imag() - job.center.imag()) <= half;
    const double dist_to_zeta = std::abs(zeta - job.center);
    if (job.side > s_floor && (zeta_inside || job.side > opt.split_ratio * dist_to_zeta)) {
        const double q = 0.25 * job.side;
        cplx sum = 0;
        for (const cplx off : {cplx(-q, -q), cplx(q, -q), cplx(-q, q), cplx(q, q)})
            sum += integrate_cell(k, g, z, zeta, {job.center + off, half, -1}, s_floor, opt);
        return sum;
    }
    return cell_term(k, g, z, job);
}

}  // namespace

cplx area_integral(const DomainDecomposition& decomp, Kernel kernel, const AreaDensity& density,
                   cplx z, const AreaOptions& opt, Exec exec) {
    const size_t ns = decomp.squares.size();
    const size_t nc = opt.use_collar_cells ? decomp.collar_cells.size() : 0;
    const double s_floor = opt.min_side_factor * decomp.finest_side();
    const cplx zeta = opt.refine_center.value_or(z);
    std::vector<cplx> terms(ns + nc);
    auto run = [&](long i) {
        const WhitneySquare& q =
            size_t(i) < ns ? decomp.squares[size_t(i)] : decomp.collar_cells[size_t(i) - ns];
        terms[size_t(i)] =
            integrate_cell(kernel, density, z, zeta, {q.center, q.side, i}, s_floor, opt);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < long(ns + nc); ++i) run(i);
    } else {
        for (long i = 0; i < long(ns + nc); ++i) run(i);
    }
    return pairwise_sum(terms);
}

cplx wirtinger_of_area_potential(const DomainDecomposition& decomp, const AreaDensity& density,
                                 cplx z, double h, const AreaOptions& opt) {
    if (!(h > 0)) throw StencilOutOfDomainError("wirtinger_of_area_potential: h must be positive");
    if (decomp.curve->distance(z) <= 3.0 * h)
        throw StencilOutOfDomainError("wirtinger_of_area_potential: stencil too close to the curve");
    AreaOptions shared = opt;
    shared.refine_center = z;  // one mesh for the whole stencil
    auto potential = [&](cplx w) {
        return -area_integral(decomp, Kernel::cauchy, density, w, shared) / M_PI;
    };
    const cplx fx = (potential(z + h) - potential(z - h)) / (2.0 * h);
    const cplx fy = (potential(z + cplx(0, h)) - potential(z - cplx(0, h))) / (2.0 * h);
    return wirtinger_zbar(fx, fy);
}

}  // namespace lame
