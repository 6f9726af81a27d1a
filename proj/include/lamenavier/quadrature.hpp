#pragma once

#include <functional>
#include <optional>

#include "lamenavier/decomposition.hpp"
#include "lamenavier/geometry.hpp"

namespace lame {

// The four kernel families evaluated on contours and domains:
//   cauchy       1/(xi - z)
//   conj_cauchy  1/conj(xi - z)
//   ratio        (xi - z)/conj(xi - z)
//   log_modulus  ln|xi - z|^2   (real; computed as 2 ln|xi - z|, branch-free)
enum class Kernel { cauchy, conj_cauchy, ratio, log_modulus };
enum class Measure { dxi, dxi_bar };

cplx kernel_eval(Kernel k, cplx w);  // w = xi - z

// Densities are one complex value per segment, understood as the value at
// the segment midpoint. vertex_to_midpoint_density averages endpoint values.
struct ContourIntegrand {
    Kernel kernel = Kernel::cauchy;
    std::vector<cplx> density;
    Measure measure = Measure::dxi;
};

std::vector<cplx> vertex_to_midpoint_density(const std::vector<cplx>& vertex_values);

struct ContourOptions {
    // evaluation closer to the curve than guard_factor * max segment length
    // throws TooCloseToBoundaryError; one-sided limits go through
    // boundary_limit in the operators layer.
    double guard_factor = 2.4;
};

// Composite midpoint rule over the polyline segments; the caller supplies
// the normalization (1/(2 pi i), 1/(pi i), ...) through `prefactor`.
// Deterministic pairwise reduction; serial and parallel modes agree bitwise.
cplx contour_integral(const Curve& curve, const ContourIntegrand& integrand, cplx z,
                      cplx prefactor, const ContourOptions& opt = {}, Exec exec = Exec::parallel);

// Black-box density with values and Wirtinger gradients cached at the
// decomposition's cell centers (index-aligned with decomp.squares followed by
// decomp.collar_cells). The gradient feeds the per-cell linear density model;
// when no analytic `wirtinger` is supplied it is estimated by central
// differences at the cell scale.
struct AreaDensity {
    std::function<cplx(cplx)> fn;
    std::function<std::pair<cplx, cplx>(cplx)> wirtinger;  // optional (dz g, dzbar g)
    std::vector<cplx> at_nodes;
    std::vector<cplx> gw_nodes, gwb_nodes;
};

AreaDensity make_area_density(std::function<cplx(cplx)> fn);
AreaDensity make_area_density(std::function<cplx(cplx)> fn,
                              std::function<std::pair<cplx, cplx>(cplx)> wirtinger);
AreaDensity make_constant_density(cplx value);
// Precompute density values and gradients at all square/collar centers.
AreaDensity sample_area_density(const DomainDecomposition& decomp, std::function<cplx(cplx)> fn,
                                Exec exec = Exec::parallel);

struct AreaOptions {
    double split_ratio = 0.5;      // split cells with side > split_ratio * dist(center, zeta)
    double min_side_factor = 0.5;  // floor = factor * finest accepted side
    bool use_collar_cells = true;
    // Local refinement is driven by this point instead of z when set. A
    // finite-difference stencil passes its center here so that every stencil
    // evaluation shares one mesh and quadrature errors cancel smoothly.
    std::optional<cplx> refine_center;
};

// Exact integrals of K, K*(xi-z) and K*conj(xi-z) over an axis-aligned square
// (Green's theorem reduction to elementary edge antiderivatives); valid for z
// inside or outside the square.
struct CellMoments {
    cplx m0, mw, mwb;
};
CellMoments kernel_cell_moments(Kernel k, cplx z, cplx center, double side);
cplx kernel_cell_moment(Kernel k, cplx z, cplx center, double side);  // m0 alone

// Cellwise linear-density quadrature with exact kernel moments per cell and
// local refinement toward z; exact for affine densities. The caller applies
// the 1/pi prefactor.
cplx area_integral(const DomainDecomposition& decomp, Kernel kernel, const AreaDensity& density,
                   cplx z, const AreaOptions& opt = {}, Exec exec = Exec::parallel);

// Finite-difference dzbar of the Cauchy area potential
//   C(z) = -(1/pi) int_Omega g(xi)/(xi - z) dA;
// converges to g(z) at interior points (dist(z, gamma) > 3h required).
cplx wirtinger_of_area_potential(const DomainDecomposition& decomp, const AreaDensity& density,
                                 cplx z, double h, const AreaOptions& opt = {});

}  // namespace lame
