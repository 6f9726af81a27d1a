// Benchmark comparing the serial reference kernels against the OpenMP-parallel
// ones. Both share a fixed pairwise reduction tree, so the results must agree
// bitwise; the benchmark verifies that while timing the kernels.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "lamenavier/operators.hpp"
#include "lamenavier/verify.hpp"

using namespace lame;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

struct Row {
    const char* name;
    double serial_ms, parallel_ms;
    double max_diff;
};

void print_row(const Row& r) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   max|serial-parallel| = %.3g\n", r.name,
                r.serial_ms, r.parallel_ms, r.serial_ms / r.parallel_ms, r.max_diff);
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const int segs = quick ? 1 << 12 : 1 << 15;
    const int n_eval = quick ? 64 : 512;
    const int depth = quick ? 8 : 10;

    auto curve = std::make_shared<const Curve>(make_circle(0, 1, segs));
    const LameParams p = make_params(1, 1);
    const std::vector<cplx> probes = seeded_interior_probes(*curve, n_eval, 0.2, 7);

    std::printf("segments=%d  evaluations=%d  whitney depth=%d\n\n", segs, n_eval, depth);

    {  // contour quadrature
        std::vector<cplx> dens(size_t(segs), cplx(1, 0.5));
        const ContourIntegrand ci{Kernel::cauchy, dens, Measure::dxi};
        auto run = [&](Exec e) {
            cplx acc = 0;
            for (const cplx& z : probes) acc += contour_integral(*curve, ci, z, 1.0, {}, e);
            return acc;
        };
        auto t0 = clk::now();
        const cplx a = run(Exec::serial);
        const double ts = ms_since(t0);
        t0 = clk::now();
        const cplx b = run(Exec::parallel);
        const double tp = ms_since(t0);
        print_row({"contour_integral", ts, tp, std::abs(a - b)});
    }

    {  // area quadrature (Teodorescu transform)
        const DomainDecomposition dec = whitney_decompose(curve, depth);
        const AreaDensity g = sample_area_density(dec, [](cplx w) { return w; });
        auto run = [&](Exec e) {
            cplx acc = 0;
            for (const cplx& z : probes) acc += teodorescu(p, dec, g, z, {}, e);
            return acc;
        };
        auto t0 = clk::now();
        const cplx a = run(Exec::serial);
        const double ts = ms_since(t0);
        t0 = clk::now();
        const cplx b = run(Exec::parallel);
        const double tp = ms_since(t0);
        print_row({"teodorescu (area)", ts, tp, std::abs(a - b)});
    }

    {  // grid evaluation of the Cauchy transform
        const WhitneyJet jet = jet_from_field(curve, fields::z_squared(), 0.9);
        const int nx = quick ? 24 : 48;
        auto run = [&](Exec e) {
            auto f = [&](cplx z) { return lame_cauchy_transform(p, jet, z, Exec::serial); };
            return evaluate_on_grid(f, *curve, nx, nx, {-2, 2, -2, 2},
                                    FieldOnGrid::Provenance::lame_cauchy, e);
        };
        auto t0 = clk::now();
        const FieldOnGrid a = run(Exec::serial);
        const double ts = ms_since(t0);
        t0 = clk::now();
        const FieldOnGrid b = run(Exec::parallel);
        const double tp = ms_since(t0);
        double diff = 0;
        for (size_t i = 0; i < a.values.size(); ++i)
            diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
        print_row({"transform on grid", ts, tp, diff});
    }
    return 0;
}
