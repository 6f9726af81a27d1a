#pragma once

#include <map>
#include <memory>
#include <vector>

#include "lamenavier/geometry.hpp"

namespace lame {

struct WhitneySquare {
    cplx center;
    double side = 0;
    int depth = 0;
    double diam() const { return side * std::numbers::sqrt2_v<double>; }
    double area() const { return side * side; }
};

// Dyadic quadtree decomposition of the domain interior. Accepted squares
// satisfy the Whitney condition diam(Q) <= dist(Q, gamma) <= 4 diam(Q) and
// lie inside the curve. `collar_cells` are max-depth cells whose centers are
// inside but that failed the Whitney test; they are a quadrature aid for the
// uncovered boundary collar and take no part in d-sums or invariants.
struct DomainDecomposition {
    enum class Kind { whitney, uniform };
    std::shared_ptr<const Curve> curve;
    std::vector<WhitneySquare> squares;
    std::vector<WhitneySquare> collar_cells;
    int max_depth = 0;
    Kind kind = Kind::whitney;
    cplx root_center;
    double root_side = 0;

    double covered_area() const;
    double finest_side() const;
};

// max_depth <= 14 (DepthTooLargeError above; desk-scale guard).
DomainDecomposition whitney_decompose(const std::shared_ptr<const Curve>& curve, int max_depth);

// Whitney decomposition of both sides of the curve inside a root box that
// covers `radius` around `center`; used by the extension machinery.
DomainDecomposition whitney_decompose_two_sided(const std::shared_ptr<const Curve>& curve,
                                                int max_depth, cplx center, double radius);

// Tensor-grid fallback: nx*nx cells over the bounding box, keeping the cells
// that lie fully inside. Kind::uniform.
DomainDecomposition uniform_grid_decomposition(const std::shared_ptr<const Curve>& curve, int nx);

// Quadrature-mesh refinement: every square (and collar cell) split `levels`
// times into equal children. Whitney bookkeeping (d-sums, invariants) is not
// meaningful on the result; it exists to resolve rough integrands.
DomainDecomposition subdivide_cells(const DomainDecomposition& decomp, int levels);

// d-sum  sum_Q |Q|^d  over accepted squares (|Q| = diameter), 1 < d <= 2.
double d_sum(const DomainDecomposition& decomp, double d);

// Per-depth contributions to the d-sum; index = depth.
std::vector<double> d_sum_by_depth(const DomainDecomposition& decomp, double d);

}  // namespace lame
