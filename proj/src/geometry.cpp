#include "lamenavier/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "lamenavier/errors.hpp"

namespace lame {

namespace {

double pt_seg_dist(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * ab - p);
}

double orient(cplx a, cplx b, cplx c) {
    return (b.real() - a.real()) * (c.imag() - a.imag()) -
           (b.imag() - a.imag()) * (c.real() - a.real());
}

bool on_segment(cplx a, cplx b, cplx p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    const double d1 = orient(c, d, a), d2 = orient(c, d, b);
    const double d3 = orient(a, b, c), d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(c, d, a)) return true;
    if (d2 == 0 && on_segment(c, d, b)) return true;
    if (d3 == 0 && on_segment(a, b, c)) return true;
    if (d4 == 0 && on_segment(a, b, d)) return true;
    return false;
}

double seg_seg_dist(cplx a, cplx b, cplx c, cplx d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min(std::min(pt_seg_dist(a, c, d), pt_seg_dist(b, c, d)),
                    std::min(pt_seg_dist(c, a, b), pt_seg_dist(d, a, b)));
}

}  // namespace

Curve Curve::from_vertices(std::vector<cplx> vertices, const Options& opt) {
    if (vertices.size() < 3)
        throw BadDiscretizationError("Curve: need at least 3 vertices");
    // drop an explicitly repeated closing vertex
    if (std::abs(vertices.front() - vertices.back()) == 0.0) vertices.pop_back();
    if (vertices.size() < 3)
        throw BadDiscretizationError("Curve: need at least 3 distinct vertices");

    Curve c;
    c.verts_ = std::move(vertices);
    const int n = c.n();
    c.mids_.resize(n);
    c.deltas_.resize(n);
    c.seglen_.resize(n);
    c.all_segments_.resize(n);
    double area2 = 0;
    cplx csum = 0;
    c.bbox_ = {c.verts_[0].real(), c.verts_[0].real(), c.verts_[0].imag(), c.verts_[0].imag()};
    c.min_seg_len_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const cplx a = c.verts_[i], b = c.verts_[(i + 1) % n];
        c.mids_[i] = 0.5 * (a + b);
        c.deltas_[i] = b - a;
        c.seglen_[i] = std::abs(c.deltas_[i]);
        if (c.seglen_[i] == 0)
            throw BadDiscretizationError("Curve: zero-length segment");
        c.all_segments_[i] = i;
        c.max_seg_len_ = std::max(c.max_seg_len_, c.seglen_[i]);
        c.min_seg_len_ = std::min(c.min_seg_len_, c.seglen_[i]);
        c.perimeter_ += c.seglen_[i];
        area2 += a.real() * b.imag() - b.real() * a.imag();
        csum += a;
        c.bbox_.xmin = std::min(c.bbox_.xmin, a.real());
        c.bbox_.xmax = std::max(c.bbox_.xmax, a.real());
        c.bbox_.ymin = std::min(c.bbox_.ymin, a.imag());
        c.bbox_.ymax = std::max(c.bbox_.ymax, a.imag());
    }
    c.signed_area_ = 0.5 * area2;
    if (!(c.signed_area_ > 0))
        throw BadDiscretizationError("Curve: polyline must be positively oriented (signed area > 0)");
    c.vertex_centroid_ = csum / double(n);
    c.nominal_diameter_ = std::hypot(c.bbox_.width(), c.bbox_.height());
    c.boundary_tol_ = opt.boundary_tol_factor * c.nominal_diameter_;
    c.koch_generation_ = opt.koch_generation;
    if (opt.check_simple && !is_simple_polyline(c.verts_))
        throw BadDiscretizationError("Curve: polyline is self-intersecting");
    c.build_indexes();
    return c;
}

void Curve::build_indexes() {
    const int n = this->n();
    // y bins for ray-crossing parity
    const int nb = std::clamp(n / 2, 16, 8192);
    ybins_.assign(nb, {});
    const double y0 = bbox_.ymin, y1 = bbox_.ymax;
    ybin_h_ = (y1 - y0) / nb;
    if (ybin_h_ <= 0) ybin_h_ = 1;
    for (int i = 0; i < n; ++i) {
        const double ya = verts_[i].imag(), yb = verts_[(i + 1) % n].imag();
        int b0 = int(std::floor((std::min(ya, yb) - y0) / ybin_h_));
        int b1 = int(std::floor((std::max(ya, yb) - y0) / ybin_h_));
        b0 = std::clamp(b0, 0, nb - 1);
        b1 = std::clamp(b1, 0, nb - 1);
        for (int b = b0; b <= b1; ++b) ybins_[b].push_back(i);
    }
    // uniform grids for distance / nearest-vertex queries
    auto make_grid = [&](bool segs) {
        Grid g;
        const double diag = nominal_diameter_;
        g.cell = std::max(max_seg_len_, diag / 256.0);
        g.x0 = bbox_.xmin - g.cell;
        g.y0 = bbox_.ymin - g.cell;
        g.nx = int(std::floor((bbox_.xmax - g.x0) / g.cell)) + 2;
        g.ny = int(std::floor((bbox_.ymax - g.y0) / g.cell)) + 2;
        g.buckets.assign(size_t(g.nx) * g.ny, {});
        for (int i = 0; i < n; ++i) {
            if (segs) {
                const cplx a = verts_[i], b = verts_[(i + 1) % n];
                const int ix0 = int(std::floor((std::min(a.real(), b.real()) - g.x0) / g.cell));
                const int ix1 = int(std::floor((std::max(a.real(), b.real()) - g.x0) / g.cell));
                const int iy0 = int(std::floor((std::min(a.imag(), b.imag()) - g.y0) / g.cell));
                const int iy1 = int(std::floor((std::max(a.imag(), b.imag()) - g.y0) / g.cell));
                for (int iy = iy0; iy <= iy1; ++iy)
                    for (int ix = ix0; ix <= ix1; ++ix)
                        g.buckets[size_t(iy) * g.nx + ix].push_back(i);
            } else {
                const int ix = int(std::floor((verts_[i].real() - g.x0) / g.cell));
                const int iy = int(std::floor((verts_[i].imag() - g.y0) / g.cell));
                g.buckets[size_t(iy) * g.nx + ix].push_back(i);
            }
        }
        return g;
    };
    seg_grid_ = make_grid(true);
    vert_grid_ = make_grid(false);
}

bool Curve::crossings_parity(cplx z) const {
    const double y = z.imag(), x = z.real();
    if (y < bbox_.ymin || y > bbox_.ymax) return false;
    int b = int(std::floor((y - bbox_.ymin) / ybin_h_));
    b = std::clamp(b, 0, int(ybins_.size()) - 1);
    const int n = this->n();
    int crossings = 0;
    for (int i : ybins_[b]) {
        const cplx a = verts_[i], bb = verts_[(i + 1) % n];
        const double ya = a.imag(), yb = bb.imag();
        if ((ya <= y) == (yb <= y)) continue;
        const double xint = a.real() + (y - ya) * (bb.real() - a.real()) / (yb - ya);
        if (xint > x) ++crossings;
    }
    return (crossings & 1) != 0;
}

Region Curve::contains(cplx z) const {
    if (distance(z) < boundary_tol_) return Region::boundary;
    return crossings_parity(z) ? Region::inside : Region::outside;
}

double Curve::distance(cplx z) const {
    const Grid& g = seg_grid_;
    const int ix = int(std::floor((z.real() - g.x0) / g.cell));
    const int iy = int(std::floor((z.imag() - g.y0) / g.cell));
    // first nonempty Chebyshev ring around (ix, iy) that intersects the grid
    int r0 = 0;
    r0 = std::max(r0, -ix);
    r0 = std::max(r0, ix - (g.nx - 1));
    r0 = std::max(r0, -iy);
    r0 = std::max(r0, iy - (g.ny - 1));
    double best = std::numeric_limits<double>::infinity();
    const int rmax = g.nx + g.ny + r0 + 2;
    const int n = this->n();
    for (int r = r0; r <= rmax; ++r) {
        if (best <= double(std::max(0, r - 1)) * g.cell) break;
        for (int dy = -r; dy <= r; ++dy) {
            const int cy = iy + dy;
            if (cy < 0 || cy >= g.ny) continue;
            const bool edge_row = std::abs(dy) == r;
            const int step = edge_row ? 1 : 2 * r;
            for (int dx = -r; dx <= r; dx += (step == 0 ? 1 : step)) {
                const int cx = ix + dx;
                if (cx < 0 || cx >= g.nx) continue;
                for (int s : g.buckets[size_t(cy) * g.nx + cx]) {
                    const double d = pt_seg_dist(z, verts_[s], verts_[(s + 1) % n]);
                    best = std::min(best, d);
                }
                if (r == 0) break;
            }
        }
    }
    if (!std::isfinite(best)) {  // fallback, unreachable for valid curves
        for (int s = 0; s < n; ++s)
            best = std::min(best, pt_seg_dist(z, verts_[s], verts_[(s + 1) % n]));
    }
    return best;
}

int Curve::nearest_vertex(cplx z) const {
    const Grid& g = vert_grid_;
    const int ix = int(std::floor((z.real() - g.x0) / g.cell));
    const int iy = int(std::floor((z.imag() - g.y0) / g.cell));
    int r0 = 0;
    r0 = std::max(r0, -ix);
    r0 = std::max(r0, ix - (g.nx - 1));
    r0 = std::max(r0, -iy);
    r0 = std::max(r0, iy - (g.ny - 1));
    double best = std::numeric_limits<double>::infinity();
    int best_idx = -1;
    const int rmax = g.nx + g.ny + r0 + 2;
    for (int r = r0; r <= rmax; ++r) {
        if (best_idx >= 0 && best <= double(std::max(0, r - 1)) * g.cell) break;
        for (int dy = -r; dy <= r; ++dy) {
            const int cy = iy + dy;
            if (cy < 0 || cy >= g.ny) continue;
            const bool edge_row = std::abs(dy) == r;
            const int step = edge_row ? 1 : 2 * r;
            for (int dx = -r; dx <= r; dx += (step == 0 ? 1 : step)) {
                const int cx = ix + dx;
                if (cx < 0 || cx >= g.nx) continue;
                for (int v : g.buckets[size_t(cy) * g.nx + cx]) {
                    const double d = std::abs(z - verts_[v]);
                    if (d < best || (d == best && v < best_idx)) {
                        best = d;
                        best_idx = v;
                    }
                }
                if (r == 0) break;
            }
        }
    }
    return best_idx;
}

double Curve::segment_square_dist(int seg, cplx center, double half) const {
    const cplx a = seg_a(seg), b = seg_b(seg);
    const double x0 = center.real() - half, x1 = center.real() + half;
    const double y0 = center.imag() - half, y1 = center.imag() + half;
    auto in_square = [&](cplx p) {
        return p.real() >= x0 && p.real() <= x1 && p.imag() >= y0 && p.imag() <= y1;
    };
    if (in_square(a) || in_square(b)) return 0.0;
    const cplx c00(x0, y0), c10(x1, y0), c11(x1, y1), c01(x0, y1);
    double d = seg_seg_dist(a, b, c00, c10);
    if (d == 0) return 0.0;
    d = std::min(d, seg_seg_dist(a, b, c10, c11));
    if (d == 0) return 0.0;
    d = std::min(d, seg_seg_dist(a, b, c11, c01));
    if (d == 0) return 0.0;
    d = std::min(d, seg_seg_dist(a, b, c01, c00));
    return d;
}

double Curve::dist_to_square(cplx center, double half, const std::vector<int>& candidates) const {
    double best = std::numeric_limits<double>::infinity();
    for (int s : candidates) {
        best = std::min(best, segment_square_dist(s, center, half));
        if (best == 0) return 0.0;
    }
    return best;
}

Curve make_circle(cplx center, double radius, int n_segments) {
    if (n_segments < 8)
        throw BadDiscretizationError("make_circle: need at least 8 segments");
    if (!(radius > 0))
        throw BadDiscretizationError("make_circle: radius must be positive");
    std::vector<cplx> v(n_segments);
    for (int k = 0; k < n_segments; ++k) {
        const double th = 2.0 * M_PI * k / n_segments;
        v[k] = center + radius * cplx(std::cos(th), std::sin(th));
    }
    return Curve::from_vertices(std::move(v));
}

Curve make_koch_snowflake(int generation, double scale) {
    if (generation < 0 || generation > 8)
        throw DepthTooLargeError("make_koch_snowflake: generation must be in [0, 8]");
    if (!(scale > 0))
        throw BadDiscretizationError("make_koch_snowflake: scale must be positive");
    std::vector<cplx> v;
    for (int k = 0; k < 3; ++k) {
        const double th = M_PI / 2.0 + 2.0 * M_PI * k / 3.0;
        v.push_back(scale * cplx(std::cos(th), std::sin(th)));
    }
    const cplx rot = std::exp(cplx(0, -M_PI / 3.0));  // outward bump for a CCW curve
    for (int g = 0; g < generation; ++g) {
        std::vector<cplx> w;
        w.reserve(4 * v.size());
        const int n = int(v.size());
        for (int i = 0; i < n; ++i) {
            const cplx a = v[i], b = v[(i + 1) % n];
            const cplx p1 = a + (b - a) / 3.0;
            const cplx p2 = a + 2.0 * (b - a) / 3.0;
            const cplx apex = p1 + rot * (p2 - p1);
            w.push_back(a);
            w.push_back(p1);
            w.push_back(apex);
            w.push_back(p2);
        }
        v = std::move(w);
    }
    Curve::Options opt;
    opt.koch_generation = generation;
    return Curve::from_vertices(std::move(v), opt);
}

long box_count(const Curve& curve, double tau) {
    if (!(tau > 0))
        throw BadDiscretizationError("box_count: tau must be positive");
    const double cell = tau * std::sqrt(2.0);
    const double x0 = curve.bbox().xmin - 0.5 * cell, y0 = curve.bbox().ymin - 0.5 * cell;
    std::unordered_set<uint64_t> cells;
    auto key = [](int64_t ix, int64_t iy) {
        return (uint64_t(uint32_t(ix + (1 << 30))) << 32) | uint32_t(iy + (1 << 30));
    };
    const int n = curve.n();
    for (int i = 0; i < n; ++i) {
        // Amanatides-Woo traversal of the cells crossed by segment i
        const cplx a = curve.seg_a(i), b = curve.seg_b(i);
        int64_t ix = int64_t(std::floor((a.real() - x0) / cell));
        int64_t iy = int64_t(std::floor((a.imag() - y0) / cell));
        const int64_t jx = int64_t(std::floor((b.real() - x0) / cell));
        const int64_t jy = int64_t(std::floor((b.imag() - y0) / cell));
        cells.insert(key(ix, iy));
        const double dx = b.real() - a.real(), dy = b.imag() - a.imag();
        const int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
        double tmaxx = dx == 0 ? std::numeric_limits<double>::infinity()
                               : ((x0 + (ix + (sx > 0 ? 1 : 0)) * cell) - a.real()) / dx;
        double tmaxy = dy == 0 ? std::numeric_limits<double>::infinity()
                               : ((y0 + (iy + (sy > 0 ? 1 : 0)) * cell) - a.imag()) / dy;
        const double tdx = dx == 0 ? std::numeric_limits<double>::infinity() : std::abs(cell / dx);
        const double tdy = dy == 0 ? std::numeric_limits<double>::infinity() : std::abs(cell / dy);
        int guard = 0;
        while ((ix != jx || iy != jy) && ++guard < 1 << 22) {
            if (tmaxx < tmaxy) {
                ix += sx;
                tmaxx += tdx;
            } else if (tmaxy < tmaxx) {
                iy += sy;
                tmaxy += tdy;
            } else {  // exact corner crossing: include both side cells
                cells.insert(key(ix + sx, iy));
                cells.insert(key(ix, iy + sy));
                ix += sx;
                iy += sy;
                tmaxx += tdx;
                tmaxy += tdy;
            }
            cells.insert(key(ix, iy));
        }
    }
    return long(cells.size());
}

double box_dimension_slope(const Curve& curve, double tau_lo, double tau_hi, int n_tau) {
    if (!(tau_lo < tau_hi) || n_tau < 2)
        throw BadDiscretizationError("box_dimension_slope: bad tau range");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < n_tau; ++j) {
        const double t = tau_hi * std::pow(tau_lo / tau_hi, double(j) / (n_tau - 1));
        const double x = std::log(1.0 / t);
        const double y = std::log(double(box_count(curve, t)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = n_tau;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double d_summability_integral(const Curve& curve, double d, double tau_min, int per_decade) {
    if (!(tau_min > 0 && tau_min < 1))
        throw BadDiscretizationError("d_summability_integral: need 0 < tau_min < 1");
    const int m = std::max(2, int(std::ceil(per_decade * std::log10(1.0 / tau_min))));
    const double llo = std::log(tau_min);
    double sum = 0;
    for (int j = 0; j < m; ++j) {
        const double e0 = std::exp(llo * (1.0 - double(j) / m));
        const double e1 = std::exp(llo * (1.0 - double(j + 1) / m));
        const double mid = std::sqrt(e0 * e1);
        sum += double(box_count(curve, mid)) * std::pow(mid, d - 1.0) * (e1 - e0);
    }
    return sum;
}

bool is_simple_polyline(const std::vector<cplx>& vertices) {
    const int n = int(vertices.size());
    if (n < 3) return false;
    double maxlen = 0;
    BBox bb{vertices[0].real(), vertices[0].real(), vertices[0].imag(), vertices[0].imag()};
    for (int i = 0; i < n; ++i) {
        maxlen = std::max(maxlen, std::abs(vertices[(i + 1) % n] - vertices[i]));
        bb.xmin = std::min(bb.xmin, vertices[i].real());
        bb.xmax = std::max(bb.xmax, vertices[i].real());
        bb.ymin = std::min(bb.ymin, vertices[i].imag());
        bb.ymax = std::max(bb.ymax, vertices[i].imag());
    }
    const double cell = std::max(maxlen, 1e-300);
    std::unordered_map<uint64_t, std::vector<int>> hash;
    auto key = [](int64_t ix, int64_t iy) {
        return (uint64_t(uint32_t(ix + (1 << 30))) << 32) | uint32_t(iy + (1 << 30));
    };
    auto cells_of = [&](int i, auto&& fn) {
        const cplx a = vertices[i], b = vertices[(i + 1) % n];
        const int64_t ix0 = int64_t(std::floor((std::min(a.real(), b.real()) - bb.xmin) / cell));
        const int64_t ix1 = int64_t(std::floor((std::max(a.real(), b.real()) - bb.xmin) / cell));
        const int64_t iy0 = int64_t(std::floor((std::min(a.imag(), b.imag()) - bb.ymin) / cell));
        const int64_t iy1 = int64_t(std::floor((std::max(a.imag(), b.imag()) - bb.ymin) / cell));
        for (int64_t iy = iy0; iy <= iy1; ++iy)
            for (int64_t ix = ix0; ix <= ix1; ++ix) fn(key(ix, iy));
    };
    for (int i = 0; i < n; ++i) {
        std::unordered_set<int> seen;
        cells_of(i, [&](uint64_t k) {
            for (int j : hash[k]) seen.insert(j);
        });
        for (int j : seen) {
            const bool adjacent = (i - j + n) % n == 1 || (j - i + n) % n == 1;
            const cplx a = vertices[i], b = vertices[(i + 1) % n];
            const cplx c = vertices[j], d = vertices[(j + 1) % n];
            if (adjacent) {
                // consecutive segments may only meet at the shared vertex;
                // collinear antiparallel directions mean a fold-back overlap
                const cplx u = b - a, v = d - c;
                const double cross = u.real() * v.imag() - u.imag() * v.real();
                const double dot = (u * std::conj(v)).real();
                if (cross == 0 && dot < 0) return false;
                continue;
            }
            if (segments_intersect(a, b, c, d)) return false;
        }
        cells_of(i, [&](uint64_t k) { hash[k].push_back(i); });
    }
    return true;
}

}  // namespace lame
