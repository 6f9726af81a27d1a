#include "lamenavier/whitney.hpp"

#include <algorithm>
#include <cmath>

#include "lamenavier/errors.hpp"

namespace lame {

namespace {

// --- smooth 1D cutoff: 1 on |u|<=1, 0 on |u|>=1+overlap, C^inf between ---

struct Smooth {
    double v = 0, d1 = 0, d2 = 0;
};

// psi(t) = B(t)/(B(t)+B(1-t)), B(t) = exp(-1/t): 0 at t<=0, 1 at t>=1
Smooth psi(double t) {
    if (t <= 1e-9) return {0, 0, 0};
    if (t >= 1 - 1e-9) return {1, 0, 0};
    const double A = std::exp(-1.0 / t);
    const double C = std::exp(-1.0 / (1.0 - t));
    const double Ap = A / (t * t);
    const double Cp = -C / ((1 - t) * (1 - t));
    const double App = A / std::pow(t, 4) - 2.0 * A / std::pow(t, 3);
    const double Cpp = C / std::pow(1 - t, 4) - 2.0 * C / std::pow(1 - t, 3);
    const double D = A + C;
    const double num = Ap * C - A * Cp;
    Smooth s;
    s.v = A / D;
    s.d1 = num / (D * D);
    s.d2 = ((App * C - A * Cpp) * D - 2.0 * num * (Ap + Cp)) / (D * D * D);
    return s;
}

// eta(u): plateau then smooth decay; derivatives with respect to u
Smooth eta(double u, double overlap) {
    const double au = std::abs(u);
    if (au <= 1.0) return {1, 0, 0};
    if (au >= 1.0 + overlap) return {0, 0, 0};
    const double t = (1.0 + overlap - au) / overlap;
    const Smooth p = psi(t);
    const double dtdu = -(u > 0 ? 1.0 : -1.0) / overlap;
    return {p.v, p.d1 * dtdu, p.d2 * dtdu * dtdu};
}

using D2 = Extension::Deriv2;

D2 mul(const D2& a, const D2& b) {
    D2 r;
    r.v = a.v * b.v;
    r.x = a.x * b.v + a.v * b.x;
    r.y = a.y * b.v + a.v * b.y;
    r.xx = a.xx * b.v + 2.0 * a.x * b.x + a.v * b.xx;
    r.yy = a.yy * b.v + 2.0 * a.y * b.y + a.v * b.yy;
    r.xy = a.xy * b.v + a.x * b.y + a.y * b.x + a.v * b.xy;
    return r;
}

D2 quotient(const D2& n, const D2& s) {
    D2 g;
    g.v = n.v / s.v;
    g.x = (n.x - g.v * s.x) / s.v;
    g.y = (n.y - g.v * s.y) / s.v;
    g.xx = (n.xx - 2.0 * g.x * s.x - g.v * s.xx) / s.v;
    g.yy = (n.yy - 2.0 * g.y * s.y - g.v * s.yy) / s.v;
    g.xy = (n.xy - g.x * s.y - g.y * s.x - g.v * s.xy) / s.v;
    return g;
}

// --- jet compatibility measurements ---

struct PairRatios {
    double c_f0 = 0, c_f1 = 0, c_f2 = 0;      // all sampled pairs
    double c_all = 0, c_mid = 0, c_far = 0;   // distance-floored variants
    size_t pairs = 0;
};

PairRatios measure_pairs(const WhitneyJet& jet, uint64_t seed) {
    const auto& V = jet.curve->vertices();
    const int n = int(V.size());
    const double nu = jet.nu;
    // distance floors for the divergence diagnostic
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        dmin = std::min(dmin, std::abs(V[(i + 1) % n] - V[i]));
    const double floor_mid = 4.0 * dmin, floor_far = 16.0 * dmin;

    PairRatios r;
    auto visit = [&](int i, int j) {
        if (i == j) return;
        const cplx dt = V[i] - V[j];
        const double d = std::abs(dt);
        if (d == 0) return;
        const double r0 = std::abs(jet.f0[i] - jet.f0[j] - dt * jet.f1[j] - std::conj(dt) * jet.f2[j]) /
                          std::pow(d, 1.0 + nu);
        const double r1 = std::abs(jet.f1[i] - jet.f1[j]) / std::pow(d, nu);
        const double r2 = std::abs(jet.f2[i] - jet.f2[j]) / std::pow(d, nu);
        r.c_f0 = std::max(r.c_f0, r0);
        r.c_f1 = std::max(r.c_f1, r1);
        r.c_f2 = std::max(r.c_f2, r2);
        const double m = std::max(r0, std::max(r1, r2));
        r.c_all = std::max(r.c_all, m);
        if (d >= floor_mid) r.c_mid = std::max(r.c_mid, m);
        if (d >= floor_far) r.c_far = std::max(r.c_far, m);
        ++r.pairs;
    };
    if (n <= 2000) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) visit(i, j);
    } else {
        SplitMix64 rng(seed);
        for (long k = 0; k < 2'000'000; ++k)
            visit(int(rng.below(uint64_t(n))), int(rng.below(uint64_t(n))));
    }
    return r;
}

}  // namespace

WhitneyJet jet_from_field(const std::shared_ptr<const Curve>& curve, const ClosedFormField& f,
                          double nu, uint64_t seed) {
    if (!f.value || !f.dz || !f.dzbar)
        throw MissingDerivativeError("jet_from_field: value, dz and dzbar are required");
    WhitneyJet jet;
    jet.curve = curve;
    jet.nu = nu;
    const int n = curve->n();
    jet.f0.resize(n);
    jet.f1.resize(n);
    jet.f2.resize(n);
    for (int i = 0; i < n; ++i) {
        const cplx t = curve->vertex(i);
        jet.f0[i] = f.value(t);
        jet.f1[i] = f.dz(t);
        jet.f2[i] = f.dzbar(t);
    }
    const PairRatios r = measure_pairs(jet, seed);
    jet.lip_constant = std::max(1.25 * r.c_all, 1e-12);
    return jet;
}

JetCheckReport check_jet(const WhitneyJet& jet, uint64_t seed) {
    const int n = jet.curve->n();
    if (int(jet.f0.size()) != n || int(jet.f1.size()) != n || int(jet.f2.size()) != n)
        throw BadDiscretizationError("check_jet: jet arrays must match the curve vertex count");
    if (!(jet.nu > 0 && jet.nu < 1))
        throw BadDiscretizationError("check_jet: nu must lie in (0, 1)");
    const PairRatios r = measure_pairs(jet, seed);
    JetCheckReport rep;
    rep.smallest_c = r.c_all;
    rep.c_f0 = r.c_f0;
    rep.c_f1 = r.c_f1;
    rep.c_f2 = r.c_f2;
    rep.pairs_checked = r.pairs;
    const double tiny = 1e-300;
    rep.divergence_ratio = std::max(r.c_all / std::max(r.c_mid, tiny),
                                    r.c_mid / std::max(r.c_far, tiny));
    if (r.c_all == 0) rep.divergence_ratio = 1.0;
    if (jet.lip_constant > 0) {
        rep.valid = rep.smallest_c <= jet.lip_constant * (1.0 + 1e-12);
    } else {
        // no declared constant: invalid when the needed c keeps growing as
        // ever-closer pairs are admitted (the discrete trace of "no finite c")
        rep.valid = rep.divergence_ratio <= 1.25;
    }
    return rep;
}

double lp_exponent(double d, double nu) {
    if (!(d > 1 && d < 2)) throw ParameterDomainError("lp_exponent: need 1 < d < 2");
    if (!(nu > 0 && nu < 1)) throw ParameterDomainError("lp_exponent: need 0 < nu < 1");
    return (2.0 - d) / (1.0 - nu);
}

void Extension::build_index() {
    origin_ = squares_.root_center - cplx(0.5 * squares_.root_side, 0.5 * squares_.root_side);
    levels_.clear();
    std::map<int, size_t> depth_level;
    for (size_t i = 0; i < squares_.squares.size(); ++i) {
        const WhitneySquare& q = squares_.squares[i];
        auto it = depth_level.find(q.depth);
        if (it == depth_level.end()) {
            it = depth_level.emplace(q.depth, levels_.size()).first;
            levels_.push_back({q.depth, q.side, {}});
        }
        Level& L = levels_[it->second];
        const int64_t ix = int64_t(std::floor((q.center.real() - origin_.real()) / L.side));
        const int64_t iy = int64_t(std::floor((q.center.imag() - origin_.imag()) / L.side));
        const uint64_t key = (uint64_t(uint32_t(ix + (1 << 30))) << 32) | uint32_t(iy + (1 << 30));
        L.cells[key].push_back(int(i));
    }
    for (auto& L : levels_)
        for (auto& [k, v] : L.cells) std::sort(v.begin(), v.end());
}

void Extension::gather(cplx z, std::vector<int>& out) const {
    out.clear();
    for (const Level& L : levels_) {
        const double reach = (1.0 + overlap_) * 0.5 * L.side;
        const int64_t ix = int64_t(std::floor((z.real() - origin_.real()) / L.side));
        const int64_t iy = int64_t(std::floor((z.imag() - origin_.imag()) / L.side));
        for (int64_t dy = -1; dy <= 1; ++dy)
            for (int64_t dx = -1; dx <= 1; ++dx) {
                const uint64_t key =
                    (uint64_t(uint32_t(ix + dx + (1 << 30))) << 32) | uint32_t(iy + dy + (1 << 30));
                auto it = L.cells.find(key);
                if (it == L.cells.end()) continue;
                for (int i : it->second) {
                    const WhitneySquare& q = squares_.squares[size_t(i)];
                    if (std::abs(z.real() - q.center.real()) < reach &&
                        std::abs(z.imag() - q.center.imag()) < reach)
                        out.push_back(i);
                }
            }
    }
    std::sort(out.begin(), out.end());
}

Extension::Deriv2 Extension::eval(cplx z) const {
    // radial cutoff (real-valued)
    const cplx rel = z - cut_center_;
    const double w = std::abs(rel);
    D2 cut;
    if (w >= (1.0 + overlap_) * cut_r0_) return {};
    if (w <= cut_r0_) {
        cut.v = 1;
    } else {
        const Smooth e = eta(w / cut_r0_, overlap_);
        const double wx = rel.real() / w, wy = rel.imag() / w;
        const double wxx = 1.0 / w - rel.real() * rel.real() / (w * w * w);
        const double wyy = 1.0 / w - rel.imag() * rel.imag() / (w * w * w);
        const double wxy = -rel.real() * rel.imag() / (w * w * w);
        cut.v = e.v;
        cut.x = e.d1 * wx / cut_r0_;
        cut.y = e.d1 * wy / cut_r0_;
        cut.xx = e.d2 * wx * wx / (cut_r0_ * cut_r0_) + e.d1 * wxx / cut_r0_;
        cut.yy = e.d2 * wy * wy / (cut_r0_ * cut_r0_) + e.d1 * wyy / cut_r0_;
        cut.xy = e.d2 * wx * wy / (cut_r0_ * cut_r0_) + e.d1 * wxy / cut_r0_;
    }

    auto jet_poly = [&](int anchor) {
        D2 p;
        const cplx va = jet_.curve->vertex(anchor);
        const cplx f1 = jet_.f1[size_t(anchor)], f2 = jet_.f2[size_t(anchor)];
        p.v = jet_.f0[size_t(anchor)] + (z - va) * f1 + std::conj(z - va) * f2;
        p.x = f1 + f2;
        p.y = cplx(0, 1) * (f1 - f2);
        return p;
    };

    thread_local std::vector<int> hits;
    gather(z, hits);

    D2 g;
    if (hits.empty()) {
        // unresolved collar next to the curve: nearest-anchor jet polynomial
        g = jet_poly(jet_.curve->nearest_vertex(z));
    } else {
        D2 N, S;
        for (int i : hits) {
            const WhitneySquare& q = squares_.squares[size_t(i)];
            const double hw = 0.5 * q.side;
            const double u = (z.real() - q.center.real()) / hw;
            const double v = (z.imag() - q.center.imag()) / hw;
            const Smooth eu = eta(u, overlap_), ev = eta(v, overlap_);
            D2 b;
            b.v = eu.v * ev.v;
            b.x = eu.d1 * ev.v / hw;
            b.y = eu.v * ev.d1 / hw;
            b.xx = eu.d2 * ev.v / (hw * hw);
            b.yy = eu.v * ev.d2 / (hw * hw);
            b.xy = eu.d1 * ev.d1 / (hw * hw);
            if (b.v == 0.0 && b.x == 0.0 && b.y == 0.0 && b.xx == 0.0 && b.yy == 0.0 && b.xy == 0.0)
                continue;
            const D2 p = jet_poly(anchor_[size_t(i)]);
            N.v += b.v * p.v;
            N.x += b.x * p.v + b.v * p.x;
            N.y += b.y * p.v + b.v * p.y;
            N.xx += b.xx * p.v + 2.0 * b.x * p.x;
            N.yy += b.yy * p.v + 2.0 * b.y * p.y;
            N.xy += b.xy * p.v + b.x * p.y + b.y * p.x;
            S.v += b.v;
            S.x += b.x;
            S.y += b.y;
            S.xx += b.xx;
            S.yy += b.yy;
            S.xy += b.xy;
        }
        if (std::abs(S.v) < 1e-12) {
            g = jet_poly(jet_.curve->nearest_vertex(z));
        } else {
            g = quotient(N, S);
        }
    }
    return mul(g, cut);
}

cplx Extension::value(cplx z) const { return eval(z).v; }

Extension::W1 Extension::wirtinger1(cplx z) const {
    const D2 d = eval(z);
    return {wirtinger_z(d.x, d.y), wirtinger_zbar(d.x, d.y)};
}

Extension::W2 Extension::wirtinger2(cplx z) const {
    const D2 d = eval(z);
    W2 w;
    w.dz_dz = 0.25 * (d.xx - d.yy - cplx(0, 2) * d.xy);
    w.dz_dzbar = 0.25 * (d.xx + d.yy);
    w.dzbar_dzbar = 0.25 * (d.xx - d.yy + cplx(0, 2) * d.xy);
    return w;
}

cplx Extension::lame_applied(const LameParams& p, cplx z) const {
    const W2 w = wirtinger2(z);
    return p.alpha * std::conj(w.dz_dz) + p.beta * w.dz_dzbar;
}

Extension extend(const WhitneyJet& jet, const ExtendOptions& opt) {
    const JetCheckReport rep = check_jet(jet, opt.seed);
    if (!rep.valid)
        throw JetInvalidError("extend: jet fails the Lip(1+nu) compatibility check");

    Extension ext;
    ext.jet_ = jet;
    ext.overlap_ = opt.overlap;
    ext.cut_center_ = jet.curve->vertex_centroid();
    double rmax = 0;
    for (const cplx& v : jet.curve->vertices())
        rmax = std::max(rmax, std::abs(v - ext.cut_center_));
    ext.cut_r0_ = 2.0 * rmax;
    ext.support_radius_ = (1.0 + opt.overlap) * ext.cut_r0_ + std::abs(ext.cut_center_);
    const double root_radius = (1.0 + opt.overlap) * ext.cut_r0_ * 1.05;
    ext.squares_ =
        whitney_decompose_two_sided(jet.curve, opt.max_depth, ext.cut_center_, root_radius);
    ext.anchor_.resize(ext.squares_.squares.size());
    const long ns = long(ext.squares_.squares.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < ns; ++i)
        ext.anchor_[size_t(i)] = jet.curve->nearest_vertex(ext.squares_.squares[size_t(i)].center);
    ext.build_index();
    return ext;
}

LpEstimate lp_norm_estimate(const Extension& ext, const DomainDecomposition& decomp, double p,
                            Exec exec) {
    const size_t n = decomp.squares.size();
    std::vector<double> terms(n);
    auto run = [&](long i) {
        const WhitneySquare& q = decomp.squares[size_t(i)];
        const double o = 0.25 * q.side;
        const cplx samples[5] = {q.center, q.center + cplx(o, o), q.center + cplx(-o, o),
                                 q.center + cplx(o, -o), q.center + cplx(-o, -o)};
        double m = 0;
        for (const cplx& s : samples) {
            const Extension::W2 w = ext.wirtinger2(s);
            m = std::max({m, std::abs(w.dz_dz), std::abs(w.dz_dzbar), std::abs(w.dzbar_dzbar)});
        }
        terms[size_t(i)] = std::pow(m, p) * q.area();
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < long(n); ++i) run(i);
    } else {
        for (long i = 0; i < long(n); ++i) run(i);
    }
    LpEstimate est;
    est.total = pairwise_sum(terms);
    est.per_depth.assign(size_t(decomp.max_depth) + 1, 0.0);
    for (size_t i = 0; i < n; ++i) est.per_depth[size_t(decomp.squares[i].depth)] += terms[i];
    return est;
}

}  // namespace lame
