#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lamenavier/complex_ops.hpp"

namespace lame {

enum class Region { inside, outside, boundary };

struct BBox {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    cplx center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
};

struct CurveOptions {
    bool check_simple = false;  // broad-phase exact self-intersection test
    std::optional<int> koch_generation;
    double boundary_tol_factor = 1e-12;  // boundary band = factor * nominal_diameter
};

// Oriented closed Jordan polyline. Vertices are stored without repeating the
// first one; segment i runs from vertex(i) to vertex(i+1 mod n). Curves are
// immutable after construction and freely shareable across threads.
class Curve {
public:
    using Options = CurveOptions;

    // Validates closure (>= 3 vertices), positive orientation, and optionally
    // simplicity. Throws BadDiscretizationError on violations.
    static Curve from_vertices(std::vector<cplx> vertices, const CurveOptions& opt = {});

    int n() const { return int(verts_.size()); }
    cplx vertex(int i) const { return verts_[wrap(i)]; }
    cplx seg_a(int i) const { return verts_[wrap(i)]; }
    cplx seg_b(int i) const { return verts_[wrap(i + 1)]; }
    cplx midpoint(int i) const { return mids_[wrap(i)]; }
    cplx delta(int i) const { return deltas_[wrap(i)]; }
    double seg_len(int i) const { return seglen_[wrap(i)]; }
    double max_seg_len() const { return max_seg_len_; }
    double min_seg_len() const { return min_seg_len_; }
    double perimeter() const { return perimeter_; }
    double signed_area() const { return signed_area_; }
    cplx vertex_centroid() const { return vertex_centroid_; }
    const BBox& bbox() const { return bbox_; }
    double nominal_diameter() const { return nominal_diameter_; }
    double boundary_tolerance() const { return boundary_tol_; }
    std::optional<int> koch_generation() const { return koch_generation_; }
    const std::vector<cplx>& vertices() const { return verts_; }

    // Winding-number classification with a boundary tolerance band.
    Region contains(cplx z) const;
    // Exact distance to the polyline.
    double distance(cplx z) const;
    // Index of the nearest vertex (ties broken by lowest index).
    int nearest_vertex(cplx z) const;
    // Exact distance from the axis-aligned square [c +- half]^2 to the
    // polyline (0 when they intersect). `candidates` restricts the segment
    // set; pass all_segments() for an unrestricted query.
    double dist_to_square(cplx center, double half, const std::vector<int>& candidates) const;
    const std::vector<int>& all_segments() const { return all_segments_; }

    // Exact min distance from square to one segment.
    double segment_square_dist(int seg, cplx center, double half) const;

private:
    Curve() = default;
    int wrap(int i) const {
        const int n = int(verts_.size());
        i %= n;
        return i < 0 ? i + n : i;
    }
    void build_indexes();
    bool crossings_parity(cplx z) const;

    std::vector<cplx> verts_, mids_, deltas_;
    std::vector<double> seglen_;
    std::vector<int> all_segments_;
    double max_seg_len_ = 0, min_seg_len_ = 0, perimeter_ = 0, signed_area_ = 0;
    cplx vertex_centroid_;
    BBox bbox_;
    double nominal_diameter_ = 0, boundary_tol_ = 0;
    std::optional<int> koch_generation_;

    // y-binned segment lists for ray-crossing queries
    std::vector<std::vector<int>> ybins_;
    double ybin_h_ = 1;
    // uniform grid over the bbox for distance / nearest-vertex queries
    struct Grid {
        double x0 = 0, y0 = 0, cell = 1;
        int nx = 1, ny = 1;
        std::vector<std::vector<int>> buckets;
    };
    Grid seg_grid_, vert_grid_;
};

// Regular n-gon approximation of a circle, positively oriented, first vertex
// at angle 0. Requires n_segments >= 8 (BadDiscretizationError).
Curve make_circle(cplx center, double radius, int n_segments);

// Koch snowflake polyline with 3*4^generation segments, positively oriented.
// `scale` is the circumradius of the base triangle. generation <= 8
// (DepthTooLargeError above).
Curve make_koch_snowflake(int generation, double scale = 1.0);

// Upper estimate of the tau-ball covering number: number of grid cells of
// side tau*sqrt(2) touched by the polyline (each such cell fits in a ball of
// radius tau).
long box_count(const Curve& curve, double tau);

// Least-squares slope of log N vs log(1/tau) over a geometric tau ladder.
double box_dimension_slope(const Curve& curve, double tau_lo, double tau_hi, int n_tau);

// Numerical value of the improper integral  int_{tau_min}^1 N(tau) tau^(d-1) dtau
// on a geometric tau grid with `per_decade` midpoint nodes per decade.
double d_summability_integral(const Curve& curve, double d, double tau_min, int per_decade = 8);

// Broad-phase exact self-intersection test (spatial hash + exact segment
// pair tests of non-adjacent segments).
bool is_simple_polyline(const std::vector<cplx>& vertices);

}  // namespace lame
