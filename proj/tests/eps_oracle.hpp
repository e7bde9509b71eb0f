#pragma once

// Brute-force prime valuation: substitute z_j = lambda + eps and
// z_k = (lambda + eps) / (1 + (c_j - c_k)(lambda + eps)) and read off the
// eps-adic order. Shares no code with the delta expansion in prime.hpp.

#include <vector>

#include "patchring/analytic.hpp"

namespace oracle_test {

using patchring::AnalyticElement;
using patchring::Scalar;
using patchring::TruncSeries;

using EpsPoly = std::vector<TruncSeries>; // coefficient of eps^i

inline EpsPoly eps_mul(const EpsPoly& a, const EpsPoly& b, int depth)
{
    const int n = a[0].precision();
    EpsPoly r(static_cast<std::size_t>(depth), TruncSeries(n, a[0].field()));
    for (int i = 0; i < depth; ++i)
        for (int k = 0; i + k < depth; ++k)
            r[static_cast<std::size_t>(i + k)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k)];
    return r;
}

/// eps-adic order of f at z_j = lambda, or -1 if zero through eps^{depth-1}.
inline int eps_order(const AnalyticElement& f_any, int chart, const TruncSeries& lambda, int depth)
{
    const AnalyticElement f = f_any.rebased(chart);
    const auto& cfg = f.cfg();
    const int n = f.precision();
    const TruncSeries one = TruncSeries::constant(n, Scalar(cfg.field(), 1));
    EpsPoly total(static_cast<std::size_t>(depth), TruncSeries(n, cfg.field()));
    total[0] += f.f0();
    for (int k : f.support()) {
        // value of z_k as an eps-series
        EpsPoly zk(static_cast<std::size_t>(depth), TruncSeries(n, cfg.field()));
        const Scalar d = cfg.center(chart) - cfg.center(k);
        const TruncSeries a_inv = (one + lambda * d).invert_unit();
        // (lambda + eps) * a^{-1} * sum_i (-d a^{-1} eps)^i
        EpsPoly geo(static_cast<std::size_t>(depth), TruncSeries(n, cfg.field()));
        TruncSeries c = a_inv;
        for (int i = 0; i < depth; ++i) {
            geo[static_cast<std::size_t>(i)] = c;
            c = c * a_inv * (-d);
        }
        EpsPoly lin(static_cast<std::size_t>(depth), TruncSeries(n, cfg.field()));
        lin[0] = lambda;
        if (depth > 1)
            lin[1] = one;
        zk = eps_mul(lin, geo, depth);
        EpsPoly power = zk;
        for (int m = 1; m <= f.zdegree(k); ++m) {
            if (m > 1)
                power = eps_mul(power, zk, depth);
            const TruncSeries coeff = f.zcoeff(k, m);
            for (int i = 0; i < depth; ++i)
                total[static_cast<std::size_t>(i)] += coeff * power[static_cast<std::size_t>(i)];
        }
    }
    for (int i = 0; i < depth; ++i)
        if (!total[static_cast<std::size_t>(i)].is_zero())
            return i;
    return -1;
}

} // namespace oracle_test
