#pragma once

/**
 * @file prime.hpp
 * @brief Height-one primes z_j - lambda of D_J[t^{-1}] and their valuations.
 *
 * With s = X/Y the prime z_j - lambda cuts out the point s0 = c_j + 1/lambda,
 * where lambda is a unit of K[[t]]. Near s0 every z_k is a power series in
 * delta = s - s0 over K[[t]],
 *
 *     z_k = 1/(D_k + delta) = sum_i binom(-1, i) D_k^{-1-i} delta^i,
 *     D_k^{-1} = lambda / (1 + (c_j - c_k) lambda),
 *
 * provided 1 + (c_j - c_k) lambda is a unit. Since z_j - lambda = -lambda z_j delta
 * and lambda z_j is a unit at s0, the multiplicity of the prime in f is the
 * delta-adic order of this expansion. Powers of t are units there.
 */

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "patchring/analytic.hpp"
#include "patchring/error.hpp"
#include "patchring/series.hpp"

namespace patchring {

class PrimePoint {
public:
    PrimePoint() = default;

    /**
     * The prime z_j - lambda of D_J[t^{-1}], J = ring_support (which must
     * contain the chart). Rejects configurations where some substitution
     * denominator 1 + (c_j - c_k) lambda, k in J, is not a unit.
     */
    PrimePoint(ConfigPtr cfg, int chart, TruncSeries lambda, std::string label, IndexSet ring_support)
        : cfg_(std::move(cfg)), chart_(chart), lambda_(std::move(lambda)), label_(std::move(label)),
          support_(std::move(ring_support))
    {
        cfg_->check_index(chart_);
        if (!support_.count(chart_))
            throw precondition_error("prime point: ring support must contain the chart");
        if (lambda_.coefficient(0).is_zero())
            throw precondition_error("prime point: lambda must be a unit of K[[t]]");
        inverse_offsets_.resize(static_cast<std::size_t>(cfg_->size()));
        const TruncSeries one = TruncSeries::constant(lambda_.precision(), Scalar(cfg_->field(), 1));
        for (int k : support_) {
            cfg_->check_index(k);
            const TruncSeries den = one + lambda_ * (cfg_->center(chart_) - cfg_->center(k));
            if (den.coefficient(0).is_zero())
                throw precondition_error("prime point '" + label_ + "': substitution denominator 1 + (c_" +
                                         std::to_string(chart_) + " - c_" + std::to_string(k) +
                                         ") lambda is not a unit");
            inverse_offsets_[static_cast<std::size_t>(k)] = lambda_ * den.invert_unit();
        }
    }

    const ConfigPtr& config() const { return cfg_; }
    int chart() const { return chart_; }
    const TruncSeries& lambda() const { return lambda_; }
    const std::string& label() const { return label_; }
    const IndexSet& ring_support() const { return support_; }

    /// (s0 - c_k)^{-1}, the value of z_k at the point.
    const TruncSeries& inverse_offset(int k) const
    {
        if (!support_.count(k))
            throw precondition_error("prime point '" + label_ + "': index outside the ring support");
        return inverse_offsets_[static_cast<std::size_t>(k)];
    }

private:
    ConfigPtr cfg_;
    int chart_ = 0;
    TruncSeries lambda_;
    std::string label_;
    IndexSet support_;
    std::vector<TruncSeries> inverse_offsets_;
};

/**
 * Coefficients of f in delta = s - s0, for delta^0 .. delta^{count-1}.
 * f must be in the point's chart with support inside the ring support.
 */
inline std::vector<TruncSeries> delta_expansion(const AnalyticElement& f, const PrimePoint& pt, int count)
{
    const int n = std::min(f.precision(), pt.lambda().precision());
    std::vector<TruncSeries> out(static_cast<std::size_t>(count), TruncSeries(n, f.cfg().field()));
    if (count == 0)
        return out;
    out[0] += f.f0().truncated(n);
    for (int k : f.support()) {
        const TruncSeries dinv = pt.inverse_offset(k).truncated(n);
        TruncSeries dinv_pow = dinv; // D^{-m}
        for (int m = 1; m <= f.zdegree(k); ++m) {
            const TruncSeries coeff = f.zcoeff(k, m).truncated(n);
            if (!coeff.is_zero()) {
                // z^m = sum_i binom(-m, i) D^{-m-i} delta^i
                TruncSeries term = coeff * dinv_pow;
                for (int i = 0; i < count; ++i) {
                    out[static_cast<std::size_t>(i)] += term;
                    term = term * dinv * Scalar(-(m + i), i + 1);
                }
            }
            dinv_pow = dinv_pow * dinv;
        }
    }
    return out;
}

/// Multiplicity of the prime of `pt` in f; t-shifts contribute nothing.
inline int prime_valuation(const AnalyticElement& f, const PrimePoint& pt)
{
    const AnalyticElement g = f.rebased(pt.chart());
    for (int k : g.support())
        if (!pt.ring_support().count(k))
            throw precondition_error("prime valuation at '" + pt.label() + "': element has a pole at z_" +
                                     std::to_string(k) + " outside the point's ring");
    if (g.is_zero())
        throw precision_exhausted("prime valuation: element is indistinguishable from 0 at this precision");
    const int budget = g.precision();
    // Coefficients are produced in batches; the order is usually tiny.
    for (int count = 4;; count *= 2) {
        const int c = std::min(count, budget);
        const auto coeffs = delta_expansion(g, pt, c);
        for (int i = 0; i < c; ++i)
            if (!coeffs[static_cast<std::size_t>(i)].is_zero())
                return i;
        if (c == budget)
            throw precision_exhausted("prime valuation at '" + pt.label() + "' exceeds the budget of " +
                                      std::to_string(budget));
    }
}

inline int prime_valuation(const LocalizedElement& f, const PrimePoint& pt) { return prime_valuation(f.body(), pt); }

/// A quotient num/den of elements of D_J[t^{-1}].
struct Fraction {
    LocalizedElement num;
    LocalizedElement den;
};

inline int prime_valuation(const Fraction& f, const PrimePoint& pt)
{
    return prime_valuation(f.num, pt) - prime_valuation(f.den, pt);
}

struct Preparation {
    PrimePoint point;
    LocalizedElement unit; // p = (z_j - lambda) * unit
};

/**
 * p = (z_j - lambda) u for p = sum_l p_l z_j^l in K[[t]][z_j] with p_1 a unit,
 * v(p_l) > 0 for l > 1 and p_0(0) != 0 (the case q_0 = 0 is not handled).
 * lambda is the Newton root of p lifting -p_0(0)/p_1(0); u is obtained by
 * synthetic division and is congruent to p_1(0) mod t.
 */
inline Preparation weierstrass_prepare_linear(const AnalyticElement& p_in, int chart, IndexSet ring_support = {},
                                              std::string label = "custom")
{
    const AnalyticElement p = p_in.rebased(chart);
    for (int k : p.support())
        if (k != chart)
            throw precondition_error("weierstrass_prepare_linear: support must be contained in {j}");
    const int d = p.zdegree(chart);
    if (d < 1 || p.zcoeff(chart, 1).order() != 0)
        throw precondition_error("weierstrass_prepare_linear: linear coefficient must be a unit");
    for (int l = 2; l <= d; ++l)
        if (p.zcoeff(chart, l).order() == 0)
            throw precondition_error("weierstrass_prepare_linear: coefficient of z_j^" + std::to_string(l) +
                                     " must lie in tK[[t]]");
    if (p.f0().coefficient(0).is_zero())
        throw precondition_error("weierstrass_prepare_linear: constant term vanishes mod t (q_0 = 0 case)");

    SeriesPoly poly;
    poly.push_back(p.f0());
    for (int l = 1; l <= d; ++l)
        poly.push_back(p.zcoeff(chart, l));
    const Scalar z0 = -(p.f0().coefficient(0) / p.zcoeff(chart, 1).coefficient(0));
    const TruncSeries lambda = poly_simple_root(poly, z0);

    // p / (z - lambda): u_{d-1} = p_d, u_{l-1} = p_l + lambda u_l
    std::vector<TruncSeries> u(static_cast<std::size_t>(d), TruncSeries(p.precision(), p.cfg().field()));
    u[static_cast<std::size_t>(d - 1)] = poly[static_cast<std::size_t>(d)];
    for (int l = d - 1; l >= 1; --l)
        u[static_cast<std::size_t>(l - 1)] = poly[static_cast<std::size_t>(l)] + lambda * u[static_cast<std::size_t>(l)];
    if (!(poly[0] + lambda * u[0]).is_zero())
        throw internal_error("weierstrass_prepare_linear: nonzero remainder after division");

    AnalyticElement unit(p.config(), chart, p.precision());
    unit.set_coefficient(chart, 0, u[0]);
    for (int l = 1; l < d; ++l)
        unit.set_coefficient(chart, l, u[static_cast<std::size_t>(l)]);

    if (ring_support.empty())
        ring_support = {chart};
    return {PrimePoint(p.config(), chart, lambda, std::move(label), std::move(ring_support)), LocalizedElement(unit)};
}

} // namespace patchring
