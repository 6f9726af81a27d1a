#include "lamenavier/decomposition.hpp"

#include <cmath>
#include <numbers>

#include "lamenavier/errors.hpp"

namespace lame {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2_v<double>;

struct Builder {
    const Curve& curve;
    int max_depth;
    bool two_sided;
    std::vector<WhitneySquare> out;
    std::vector<WhitneySquare> collar;

    // Candidates are pruned down the tree: a child only needs segments within
    // its own acceptance cap, and those are a subset of the parent's.
    void refine(cplx center, double side, int depth, const std::vector<int>& candidates) {
        const double half = 0.5 * side;
        const double diam = side * kSqrt2;
        // keep segments that can influence the accept test at this node
        std::vector<int> near;
        near.reserve(candidates.size());
        double dist = std::numeric_limits<double>::infinity();
        for (int s : candidates) {
            const double d = curve.segment_square_dist(s, center, half);
            dist = std::min(dist, d);
            if (d < diam * 2.0 + side) near.push_back(s);
        }
        if (dist >= diam) {
            // the square is clear of the boundary; keep it if on a kept side.
            // dist <= 4 diam holds automatically: the parent was not accepted.
            if (two_sided || curve.contains(center) == Region::inside)
                out.push_back({center, side, depth});
            return;
        }
        if (depth >= max_depth) {
            if (dist > 0 && (two_sided || curve.contains(center) == Region::inside))
                collar.push_back({center, side, depth});
            return;
        }
        const double q = 0.25 * side;
        refine(center + cplx(-q, -q), half, depth + 1, near);
        refine(center + cplx(q, -q), half, depth + 1, near);
        refine(center + cplx(-q, q), half, depth + 1, near);
        refine(center + cplx(q, q), half, depth + 1, near);
    }
};

DomainDecomposition run_builder(const std::shared_ptr<const Curve>& curve, int max_depth,
                                bool two_sided, cplx root_center, double root_side) {
    if (max_depth > 14)
        throw DepthTooLargeError("whitney_decompose: max_depth must be <= 14");
    if (max_depth < 1)
        throw DepthTooLargeError("whitney_decompose: max_depth must be >= 1");
    Builder b{*curve, max_depth, two_sided, {}, {}};
    b.refine(root_center, root_side, 0, curve->all_segments());
    DomainDecomposition d;
    d.curve = curve;
    d.squares = std::move(b.out);
    d.collar_cells = std::move(b.collar);
    d.max_depth = max_depth;
    d.root_center = root_center;
    d.root_side = root_side;
    return d;
}

}  // namespace

double DomainDecomposition::covered_area() const {
    std::vector<double> a(squares.size());
    for (size_t i = 0; i < squares.size(); ++i) a[i] = squares[i].area();
    return pairwise_sum(a);
}

double DomainDecomposition::finest_side() const {
    double s = root_side;
    for (const auto& q : squares) s = std::min(s, q.side);
    return s;
}

DomainDecomposition whitney_decompose(const std::shared_ptr<const Curve>& curve, int max_depth) {
    const BBox& bb = curve->bbox();
    const double side = std::max(bb.width(), bb.height()) * (1.0 + 1.0 / 64.0);
    return run_builder(curve, max_depth, false, bb.center(), side);
}

DomainDecomposition whitney_decompose_two_sided(const std::shared_ptr<const Curve>& curve,
                                                int max_depth, cplx center, double radius) {
    return run_builder(curve, max_depth, true, center, 2.0 * radius * (1.0 + 1.0 / 64.0));
}

DomainDecomposition uniform_grid_decomposition(const std::shared_ptr<const Curve>& curve, int nx) {
    if (nx < 4) throw BadDiscretizationError("uniform_grid_decomposition: nx must be >= 4");
    const BBox& bb = curve->bbox();
    const double side = std::max(bb.width(), bb.height()) / nx;
    const cplx origin = bb.center() - cplx(0.5 * nx * side, 0.5 * nx * side);
    DomainDecomposition d;
    d.curve = curve;
    d.kind = DomainDecomposition::Kind::uniform;
    d.max_depth = 0;
    d.root_center = bb.center();
    d.root_side = nx * side;
    const double half_diag = side * kSqrt2 / 2.0;
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const cplx c = origin + cplx((ix + 0.5) * side, (iy + 0.5) * side);
            if (curve->distance(c) > half_diag && curve->contains(c) == Region::inside)
                d.squares.push_back({c, side, 0});
        }
    return d;
}

DomainDecomposition subdivide_cells(const DomainDecomposition& decomp, int levels) {
    if (levels <= 0) return decomp;
    DomainDecomposition out = decomp;
    auto split = [](std::vector<WhitneySquare>& cells) {
        std::vector<WhitneySquare> next;
        next.reserve(cells.size() * 4);
        for (const WhitneySquare& q : cells) {
            const double h = 0.5 * q.side, o = 0.25 * q.side;
            for (const cplx off : {cplx(-o, -o), cplx(o, -o), cplx(-o, o), cplx(o, o)})
                next.push_back({q.center + off, h, q.depth + 1});
        }
        cells = std::move(next);
    };
    for (int l = 0; l < levels; ++l) {
        split(out.squares);
        split(out.collar_cells);
        ++out.max_depth;
    }
    return out;
}

double d_sum(const DomainDecomposition& decomp, double d) {
    std::vector<double> terms(decomp.squares.size());
    for (size_t i = 0; i < decomp.squares.size(); ++i)
        terms[i] = std::pow(decomp.squares[i].diam(), d);
    return pairwise_sum(terms);
}

std::vector<double> d_sum_by_depth(const DomainDecomposition& decomp, double d) {
    std::vector<double> by_depth(size_t(decomp.max_depth) + 1, 0.0);
    for (const auto& q : decomp.squares)
        by_depth[size_t(q.depth)] += std::pow(q.diam(), d);
    return by_depth;
}

}  // namespace lame
