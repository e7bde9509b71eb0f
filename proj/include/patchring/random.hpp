#pragma once

#include <cstdint>
#include <random>

#include "patchring/analytic.hpp"

namespace patchring {

/// Seeded generator. Draws use plain modular reduction so that sequences are
/// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [lo, hi].
    long uniform(long lo, long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(gen_() % span);
    }

    bool chance(unsigned percent) { return gen_() % 100 < percent; }

    Scalar scalar(long lo = -9, long hi = 9) { return Scalar(uniform(lo, hi)); }

    Scalar nonzero_scalar(long lo = -9, long hi = 9)
    {
        for (;;) {
            const long v = uniform(lo, hi);
            if (v != 0)
                return Scalar(v);
        }
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

struct ElementShape {
    int max_zdegree = 4;
    int min_torder = 0;   ///< coefficients of t^n with n < min_torder are zero
    int max_tdegree = -1; ///< last t-exponent drawn; -1 means N-1
    IndexSet support;     ///< centers allowed in the z-part; empty means all
    unsigned density = 60; ///< percentage of drawn coefficients that are nonzero
    bool constant_term = true;
};

/// A random element of D_J mod t^N in chart `chart`, coefficients in {-9..9}.
inline AnalyticElement random_element(Rng& rng, const ConfigPtr& cfg, int chart, const ElementShape& shape = {})
{
    const int n = cfg->precision();
    const int top = shape.max_tdegree < 0 ? n - 1 : std::min(shape.max_tdegree, n - 1);
    auto draw_series = [&]() {
        TruncSeries s(n, cfg->field());
        for (int e = shape.min_torder; e <= top; ++e)
            if (rng.chance(shape.density))
                s.set(e, rng.scalar());
        return s;
    };
    AnalyticElement f(cfg, chart);
    if (shape.constant_term)
        f.set_coefficient(chart, 0, draw_series());
    const IndexSet support = shape.support.empty() ? cfg->all_indices() : shape.support;
    for (int k : support) {
        const int d = static_cast<int>(rng.uniform(0, shape.max_zdegree));
        for (int m = 1; m <= d; ++m)
            f.set_coefficient(k, m, draw_series());
    }
    return f;
}

} // namespace patchring
