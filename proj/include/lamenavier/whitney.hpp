#pragma once

#include <memory>

#include "lamenavier/decomposition.hpp"
#include "lamenavier/lame.hpp"

namespace lame {

// Boundary data triple (f0, f1, f2) sampled on the curve vertices; the
// discrete Lip(1+nu) object. lip_constant = 0 means "not declared": validity
// is then judged by the scale-refinement divergence diagnostic.
struct WhitneyJet {
    std::shared_ptr<const Curve> curve;
    std::vector<cplx> f0, f1, f2;
    double nu = 0.5;
    double lip_constant = 0;
};

// Samples f, dz f, dzbar f at the curve vertices (both first derivatives
// required) and declares lip_constant = 1.25 x measured smallest c.
WhitneyJet jet_from_field(const std::shared_ptr<const Curve>& curve, const ClosedFormField& f,
                          double nu, uint64_t seed = 42);

struct JetCheckReport {
    bool valid = false;
    double smallest_c = 0;          // smallest admissible c over sampled pairs
    double c_f0 = 0, c_f1 = 0, c_f2 = 0;
    double divergence_ratio = 0;    // growth of c as close pairs are admitted
    size_t pairs_checked = 0;
};

// Verifies the two defining inequalities over all vertex pairs (all pairs up
// to 2000 vertices, 2e6 seeded random pairs above).
JetCheckReport check_jet(const WhitneyJet& jet, uint64_t seed = 42);

struct ExtendOptions {
    int max_depth = 10;    // two-sided Whitney depth of the blend
    double overlap = 1.0;  // bump support half-extent = (1+overlap)*side/2
    uint64_t seed = 42;    // seed for the validity check
};

// Compactly supported C^{1,nu} Whitney extension of a jet: per-square jet
// polynomials anchored at the nearest curve vertex, blended by a smooth
// partition of unity over a two-sided Whitney decomposition, multiplied by a
// smooth radial cutoff. Derivatives are analytic (quotient/product rules of
// the blend), so the operator density L[f~] is directly evaluable.
class Extension {
public:
    struct W1 { cplx dz, dzbar; };
    struct W2 { cplx dz_dz, dz_dzbar, dzbar_dzbar; };

    cplx value(cplx z) const;
    W1 wirtinger1(cplx z) const;
    W2 wirtinger2(cplx z) const;
    // L[f~](z) = alpha conj(dz_dz f~) + beta dz_dzbar f~
    cplx lame_applied(const LameParams& p, cplx z) const;

    cplx support_center() const { return cut_center_; }
    double support_radius() const { return support_radius_; }
    const WhitneyJet& jet() const { return jet_; }
    const DomainDecomposition& blend_squares() const { return squares_; }
    // 1 on |z - c| <= plateau_radius; the curve and its collar live inside.
    double plateau_radius() const { return cut_r0_; }

    struct Deriv2 { cplx v{}, x{}, y{}, xx{}, xy{}, yy{}; };
    Deriv2 eval(cplx z) const;

private:
    friend Extension extend(const WhitneyJet&, const ExtendOptions&);
    WhitneyJet jet_;
    DomainDecomposition squares_;   // two-sided
    std::vector<int> anchor_;       // nearest vertex per square
    double overlap_ = 0.25;
    cplx cut_center_;
    double cut_r0_ = 0, support_radius_ = 0;
    // per-depth hash of square indices for point queries
    struct Level {
        int depth;
        double side;
        std::unordered_map<uint64_t, std::vector<int>> cells;
    };
    std::vector<Level> levels_;
    cplx origin_;
    void build_index();
    void gather(cplx z, std::vector<int>& out) const;
};

// Throws JetInvalidError when check_jet fails.
Extension extend(const WhitneyJet& jet, const ExtendOptions& opt = {});

// p = (2 - d)/(1 - nu), the Lebesgue exponent of the second derivatives of
// the extension over a domain with d-summable boundary.
double lp_exponent(double d, double nu);

struct LpEstimate {
    double total = 0;
    std::vector<double> per_depth;  // contribution by square depth
};

// Whitney-square-wise estimate  sum_Q (sup_Q |d^2 f~|)^p area(Q), the
// discrete analogue of the L^p norm of the second derivatives over Omega.
LpEstimate lp_norm_estimate(const Extension& ext, const DomainDecomposition& decomp, double p,
                            Exec exec = Exec::parallel);

}  // namespace lame
