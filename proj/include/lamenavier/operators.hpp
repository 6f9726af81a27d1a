#pragma once

#include "lamenavier/lame.hpp"
#include "lamenavier/quadrature.hpp"
#include "lamenavier/whitney.hpp"

namespace lame {

// Teodorescu-type operator, a right inverse of the Lame-Navier operator:
//   T[g](z) = (1/pi) int_Omega [ alpha* (xi-z)/conj(xi-z) conj(g)
//                                - beta* ln|xi-z|^2 g ] dA
cplx teodorescu(const LameParams& p, const DomainDecomposition& decomp, const AreaDensity& g,
                cplx z, const AreaOptions& opt = {}, Exec exec = Exec::parallel);

// |L_fd[T g](z) - g(z)| at interior points, |L_fd[T g](z)| at exterior ones.
// h = 0 picks 6x the finest decomposition cell.
double verify_right_inverse(const LameParams& p, const DomainDecomposition& decomp,
                            const AreaDensity& g, cplx z, double h = 0,
                            const AreaOptions& opt = {});

// The full integral representation: four contour terms (boundary data taken
// from the exact derivative fields of f) plus the Teodorescu transform of
// L[f]. Reproduces f(z) at interior points.
cplx borel_pompeiu_rhs(const LameParams& p, const Curve& curve, const ClosedFormField& f,
                       const DomainDecomposition& area_domain, cplx z,
                       const AreaOptions& opt = {}, Exec exec = Exec::parallel);

// The four contour terms alone; reproduces f at interior points when f is a
// solution of the homogeneous system.
cplx cauchy_repr(const LameParams& p, const Curve& curve, const ClosedFormField& f, cplx z,
                 Exec exec = Exec::parallel);

// Cauchy transform of a Whitney jet, defined off the curve; solves the jump
// problem with data (f0, f1).
cplx lame_cauchy_transform(const LameParams& p, const WhitneyJet& jet, cplx z,
                           Exec exec = Exec::parallel);

// Closed-form dz of the transform (a contour integral in f1 alone; the same
// expression is valid on both sides of the curve).
cplx lame_cauchy_dz(const LameParams& p, const WhitneyJet& jet, cplx z,
                    Exec exec = Exec::parallel);

enum class Side { plus, minus };  // plus = interior approach

struct BoundaryLimitOptions {
    double delta_factor = 10.0;  // first probe offset, in local segment lengths
    double tol = 1e-3;
    Exec exec = Exec::parallel;
};

// One-sided limit of a field at the midpoint of a boundary edge: Richardson
// extrapolation of field(t + delta n) over delta, delta/2, delta/4 along the
// segment normal. Throws NonConvergentError when the extrapolants disagree by
// more than 10x tol.
cplx boundary_limit(const std::function<cplx(cplx)>& field, const Curve& curve, int edge,
                    Side side, const BoundaryLimitOptions& opt = {});

// Jump of dz of the Cauchy transform across edge midpoint; equals f1 there.
cplx derivative_jump(const LameParams& p, const WhitneyJet& jet, int edge,
                     const BoundaryLimitOptions& opt = {});

enum class JumpMethod { cauchy_transform, whitney_teodorescu };

struct SolveOptions {
    int teo_depth = 11;      // interior Whitney depth for the Teodorescu mesh
    int ext_depth = 13;      // two-sided depth of the Whitney extension blend
    int quad_subdivide = 2;  // static mesh refinement resolving the blend's L density
    double d_exponent = 0;   // declared d-summability exponent of the curve; 0 = undeclared
    AreaOptions area;
    Exec exec = Exec::parallel;
};

// Solution of the jump boundary-value problem: L F = 0 off the curve,
// F+ - F- = f0 and (dz F)+ - (dz F)- = f1 on it.
struct JumpProblemSolution {
    std::function<cplx(cplx)> field;     // defined on Omega+ and Omega-
    std::function<cplx(cplx)> dz_field;
    JumpMethod method = JumpMethod::cauchy_transform;
    LameParams params;
    std::shared_ptr<const WhitneyJet> jet;
    bool certificate_known = false;  // d_exponent was declared
    bool certificate = false;        // nu > d/2: the L^p property is certified
};

// cauchy_transform: F = C[jet]. whitney_teodorescu: F = chi_Omega f~ - T[L f~]
// with f~ the Whitney extension; runs for any nu but flags the certificate.
JumpProblemSolution solve_jump_problem(const LameParams& p, const WhitneyJet& jet,
                                       JumpMethod method, const SolveOptions& opt = {});

struct GrowthReport {
    std::vector<double> radii;
    std::vector<double> max_abs;   // max |F| over the sample ring
    std::vector<double> ratio;     // max |F| / ln R
    std::vector<double> dz_axis;   // |dz F| at z = R on the positive real axis
    bool ratio_bounded = false;    // each ratio <= max(2 x first ratio, floor)
};

// Checks F = O(ln|z|) and dz F -> 0 along growing radii.
GrowthReport asymptotic_growth_check(const std::function<cplx(cplx)>& field,
                                     const std::function<cplx(cplx)>& dz_field,
                                     const std::vector<double>& radii, int n_angles = 8);

struct FieldOnGrid {
    enum class Provenance { teodorescu, borel_pompeiu, cauchy_repr, lame_cauchy, jump_solution };
    std::vector<cplx> points;
    std::vector<Region> regions;  // inside / outside only; boundary points are skipped
    std::vector<cplx> values;
    Provenance provenance = Provenance::lame_cauchy;
};

FieldOnGrid evaluate_on_grid(const std::function<cplx(cplx)>& field, const Curve& curve, int nx,
                             int ny, const BBox& box, FieldOnGrid::Provenance prov,
                             Exec exec = Exec::parallel);

}  // namespace lame
