#include "lamenavier/lame.hpp"

#include <cmath>

#include "lamenavier/errors.hpp"

namespace lame {

LameParams make_params(double lambda, double mu) {
    if (!(mu > 0))
        throw ParameterDomainError("make_params: shear modulus mu must be positive");
    if (!(lambda > -2.0 * mu / 3.0))
        throw ParameterDomainError("make_params: lambda must exceed -2*mu/3");
    LameParams p;
    p.lambda = lambda;
    p.mu = mu;
    p.alpha = 0.5 * (mu + lambda);
    p.beta = 0.5 * (3.0 * mu + lambda);
    const double denom = p.alpha * p.alpha - p.beta * p.beta;  // = -mu*(2*mu+lambda) < 0
    p.alpha_star = p.alpha / denom;
    p.beta_star = p.beta / denom;
    p.sigma = lambda / (2.0 * (lambda + mu));
    return p;
}

std::function<cplx(cplx)> body_force_to_complex(std::function<double(cplx)> X,
                                                std::function<double(cplx)> Y) {
    return [X = std::move(X), Y = std::move(Y)](cplx z) {
        return body_force_to_complex(X(z), Y(z));
    };
}

cplx apply_lame_operator(const LameParams& p, const ClosedFormField& f, cplx z) {
    if (!f.dz_dz || !f.dz_dzbar)
        throw MissingDerivativeError(
            "apply_lame_operator: exact dz_dz and dz_dzbar are required "
            "(use apply_lame_operator_fd for sampled fields)");
    // dzbar dzbar conj(f) = conj(dz dz f)
    return p.alpha * std::conj(f.dz_dz(z)) + p.beta * f.dz_dzbar(z);
}

cplx apply_lame_operator_fd(const LameParams& p, const FieldFn& f, cplx z, double h,
                            const std::function<bool(cplx)>& evaluable) {
    if (!(h > 0)) throw StencilOutOfDomainError("apply_lame_operator_fd: step h must be positive");
    const cplx ex(h, 0), ey(0, h);
    const cplx pts[9] = {z,          z + ex,      z - ex,      z + ey,      z - ey,
                         z + ex + ey, z + ex - ey, z - ex + ey, z - ex - ey};
    if (evaluable)
        for (const cplx& q : pts)
            if (!evaluable(q))
                throw StencilOutOfDomainError("apply_lame_operator_fd: stencil leaves the domain");
    const cplx f0 = f(pts[0]);
    const cplx fxx = (f(pts[1]) - 2.0 * f0 + f(pts[2])) / (h * h);
    const cplx fyy = (f(pts[3]) - 2.0 * f0 + f(pts[4])) / (h * h);
    const cplx fxy = (f(pts[5]) - f(pts[6]) - f(pts[7]) + f(pts[8])) / (4.0 * h * h);
    const cplx dz_dz = 0.25 * (fxx - fyy - cplx(0, 2) * fxy);
    const cplx dz_dzbar = 0.25 * (fxx + fyy);
    return p.alpha * std::conj(dz_dz) + p.beta * dz_dzbar;
}

namespace fields {

ClosedFormField constant(cplx c) {
    ClosedFormField f;
    f.value = [c](cplx) { return c; };
    f.dz = f.dzbar = f.dz_dz = f.dz_dzbar = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField z() {
    ClosedFormField f;
    f.value = [](cplx w) { return w; };
    f.dz = [](cplx) { return cplx(1); };
    f.dzbar = f.dz_dz = f.dz_dzbar = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField z_squared() {
    ClosedFormField f;
    f.value = [](cplx w) { return w * w; };
    f.dz = [](cplx w) { return 2.0 * w; };
    f.dz_dz = [](cplx) { return cplx(2); };
    f.dzbar = f.dz_dzbar = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField zbar_squared() {
    ClosedFormField f;
    f.value = [](cplx w) { return std::conj(w) * std::conj(w); };
    f.dzbar = [](cplx w) { return 2.0 * std::conj(w); };
    f.dzbar_dzbar = [](cplx) { return cplx(2); };
    f.dz = f.dz_dz = f.dz_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField abs_squared() {
    ClosedFormField f;
    f.value = [](cplx w) { return cplx(std::norm(w), 0); };
    f.dz = [](cplx w) { return std::conj(w); };
    f.dzbar = [](cplx w) { return w; };
    f.dz_dzbar = [](cplx) { return cplx(1); };
    f.dz_dz = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField z2_zbar() {
    ClosedFormField f;
    f.value = [](cplx w) { return w * w * std::conj(w); };
    f.dz = [](cplx w) { return 2.0 * w * std::conj(w); };
    f.dzbar = [](cplx w) { return w * w; };
    f.dz_dz = [](cplx w) { return 2.0 * std::conj(w); };
    f.dz_dzbar = [](cplx w) { return 2.0 * w; };
    f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField exp_z() {
    ClosedFormField f;
    f.value = f.dz = f.dz_dz = [](cplx w) { return std::exp(w); };
    f.dzbar = f.dz_dzbar = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField sin_z() {
    ClosedFormField f;
    f.value = [](cplx w) { return std::sin(w); };
    f.dz = [](cplx w) { return std::cos(w); };
    f.dz_dz = [](cplx w) { return -std::sin(w); };
    f.dzbar = f.dz_dzbar = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

ClosedFormField cubic() {
    ClosedFormField f;
    f.value = [](cplx w) { return w * w * w - 2.0 * w; };
    f.dz = [](cplx w) { return 3.0 * w * w - 2.0; };
    f.dz_dz = [](cplx w) { return 6.0 * w; };
    f.dzbar = f.dz_dzbar = f.dzbar_dzbar = [](cplx) { return cplx(0); };
    return f;
}

}  // namespace fields

std::vector<std::pair<std::string, ClosedFormField>> universal_test_fields() {
    std::vector<std::pair<std::string, ClosedFormField>> out;
    out.emplace_back("z + zbar^2", universal_displacement(1.0, fields::z_squared()));
    out.emplace_back("i z + conj(exp z)", universal_displacement(cplx(0, 1), fields::exp_z()));
    out.emplace_back("conj(z^3 - 2z)", universal_displacement(0.0, fields::cubic()));
    out.emplace_back("(2-i) z + conj(sin z)", universal_displacement(cplx(2, -1), fields::sin_z()));
    out.emplace_back("(1+i) z + conj(3-2i)",
                     universal_displacement(cplx(1, 1), fields::constant(cplx(3, -2))));
    return out;
}

ClosedFormField universal_displacement(cplx A, const ClosedFormField& phi) {
    if (!phi.value)
        throw MissingDerivativeError("universal_displacement: phi.value is required");
    if (phi.dzbar) {
        // spot-check holomorphy on a small ring of sample points
        const cplx samples[9] = {0.0,        0.8,         -0.8,        cplx(0, 0.8),
                                 cplx(0, -0.8), cplx(0.57, 0.57), cplx(-0.57, 0.57),
                                 cplx(0.57, -0.57), cplx(-0.57, -0.57)};
        for (const cplx& s : samples) {
            const double scale = 1.0 + std::abs(phi.value(s));
            if (std::abs(phi.dzbar(s)) > 1e-12 * scale)
                throw NotHolomorphicError("universal_displacement: phi has nonzero dzbar");
        }
    }
    ClosedFormField f;
    f.value = [A, v = phi.value](cplx z) { return A * z + std::conj(v(z)); };
    f.dz = [A](cplx) { return A; };
    if (phi.dz) f.dzbar = [d = phi.dz](cplx z) { return std::conj(d(z)); };
    f.dz_dz = [](cplx) { return cplx(0); };
    f.dz_dzbar = [](cplx) { return cplx(0); };
    if (phi.dz_dz) f.dzbar_dzbar = [d2 = phi.dz_dz](cplx z) { return std::conj(d2(z)); };
    return f;
}

}  // namespace lame
