#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace lame {

using cplx = std::complex<double>;

// Wirtinger derivatives from real partials:
//   d/dz = (d/dx - i d/dy)/2,  d/dzbar = (d/dx + i d/dy)/2
inline cplx wirtinger_z(cplx fx, cplx fy) { return 0.5 * (fx - cplx(0, 1) * fy); }
inline cplx wirtinger_zbar(cplx fx, cplx fy) { return 0.5 * (fx + cplx(0, 1) * fy); }

// Execution mode for the data-parallel kernels. `parallel` uses OpenMP to
// fill per-element term buffers; the reduction is always the same fixed
// pairwise tree, so both modes produce bit-identical results.
enum class Exec { serial, parallel };

namespace detail {
template <class T>
T pairwise_sum_impl(std::span<const T> v) {
    if (v.size() <= 8) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const size_t h = v.size() / 2;
    return pairwise_sum_impl(v.subspan(0, h)) + pairwise_sum_impl(v.subspan(h));
}
}  // namespace detail

inline cplx pairwise_sum(std::span<const cplx> v) { return detail::pairwise_sum_impl(v); }
inline double pairwise_sum(std::span<const double> v) { return detail::pairwise_sum_impl(v); }
inline cplx pairwise_sum(const std::vector<cplx>& v) { return pairwise_sum(std::span<const cplx>(v)); }
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(std::span<const double>(v)); }

// splitmix64: counter-based seeded generator used for probe/pair sampling.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace lame
