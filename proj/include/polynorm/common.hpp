#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace polynorm {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Base class for all toolkit errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_descriptor_error : error {
    using error::error;
};
struct insufficient_samples_error : error {
    using error::error;
};
struct empty_selection_error : error {
    using error::error;
};
struct enumeration_cap_error : error {
    using error::error;
};
struct not_a_factor_error : error {
    using error::error;
};
struct unsupported_descriptor_error : error {
    using error::error;
};
struct evaluation_error : error {
    using error::error;
};

/// Golden-section maximization of f over [lo, hi]. Returns {argmax, max}.
/// Converges on the bracket's interior maximum (or an endpoint); iterations
/// cap the bracket width near machine resolution.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iters = 90) {
    constexpr double invphi = 0.6180339887498949;
    double best_t = lo, best_v = f(lo);
    const double v_hi = f(hi);
    if (v_hi > best_v) {
        best_t = hi;
        best_v = v_hi;
    }
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters && hi - lo > 8 * std::numeric_limits<double>::epsilon() *
                                                (std::abs(lo) + std::abs(hi) + 1e-12);
         ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        }
        const double t = f1 >= f2 ? x1 : x2;
        const double v = f1 >= f2 ? f1 : f2;
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    return {best_t, best_v};
}

/// Deterministic splittable RNG. Output does not depend on the standard
/// library's distribution implementations, so identical seeds give identical
/// streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // xorshift* variant; period 2^64-1
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    /// Derive an independent stream, e.g. one per work item of a sweep.
    Rng split(std::uint64_t salt) const {
        std::uint64_t s = state_ ^ (salt + 0x9e3779b97f4a7c15ull + (state_ << 6) + (state_ >> 2));
        return Rng(s ? s : 1);
    }

private:
    std::uint64_t state_;
};

}  // namespace polynorm
