#pragma once

/**
 * @file cartan.hpp
 * @brief Factorization a = a1 a2 with a1 over D_{I \ {i}} and a2 over D_{i}.
 *
 * For a = 1 + m with v(m) >= 1 each round splits m entrywise as m1 + m2 and
 * replaces a by (1 + m1)^{-1} a (1 + m2)^{-1}. Since
 *
 *     (1 + m1)^{-1} (1 + m1 + m2) (1 + m2)^{-1} - 1 = -(1 + m1)^{-1} m1 m2 (1 + m2)^{-1},
 *
 * the distance to 1 at least doubles per round.
 */

#include <optional>
#include <string>

#include "patchring/analytic.hpp"
#include "patchring/error.hpp"
#include "patchring/matrix.hpp"

namespace patchring {

struct FactorizationResult {
    PatchMatrix b1;
    PatchMatrix b2;
    int residual_precision = 0; ///< b == b1 b2 modulo t^residual_precision
    bool b1_membership = false; ///< entries of b1 (up to the t-power) lie in D_{I \ {i}}
    bool b2_membership = false; ///< entries of b2 (times the A_0 correction) lie in D_{i}
    int rounds = 0;
    int det_valuation = 0; ///< e in det = t^e u (gl_factor only)
};

namespace detail {

inline bool entries_in(const AnalyticMatrix& m, const IndexSet& j)
{
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            if (!membership(m(r, c), j))
                return false;
    return true;
}

inline IndexSet complement(const Configuration& cfg, int i)
{
    IndexSet s = cfg.all_indices();
    s.erase(i);
    return s;
}

/// t^{-e} m for m divisible by t^e; precision drops by e.
inline AnalyticMatrix shifted_down(const AnalyticMatrix& m, int e)
{
    AnalyticMatrix r(m);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = m(i, j).divided_by_t_power(e);
    return r;
}

/// t^e m; precision grows by e.
inline AnalyticMatrix shifted_up(const AnalyticMatrix& m, int e)
{
    AnalyticMatrix r(m);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = m(i, j).padded(m(i, j).precision() + e).times_t_power(e);
    return r;
}

/// Precision of the certified agreement of two matrices: the valuation of their difference.
inline int agreement(const AnalyticMatrix& a, const AnalyticMatrix& b)
{
    return static_cast<int>((a - b).valuation().value());
}

} // namespace detail

struct CartanFactors {
    AnalyticMatrix a1; ///< chart min(I \ {i}), entries in D_{I \ {i}}
    AnalyticMatrix a2; ///< chart i, entries in D_{i}
    int rounds = 0;
};

/// a = a1 a2 modulo t^N for a over D_I with v(a - 1) >= 1.
inline CartanFactors cartan_iterate(const AnalyticMatrix& a, int i)
{
    const auto& cfg = a.config();
    cfg->check_index(i);
    const IndexSet left = detail::complement(*cfg, i);
    const IndexSet right{i};
    const int n = a.dim();
    const int j1 = left.empty() ? i : *left.begin();
    const int precision = a(0, 0).precision();

    AnalyticMatrix e = a.rebased(j1);
    const AnalyticMatrix id1 = AnalyticMatrix::identity(cfg, j1, n);
    const AnalyticMatrix id2 = AnalyticMatrix::identity(cfg, i, n);
    if ((e - id1).valuation().value() < 1)
        throw precondition_error("cartan_factor: requires v(a - 1) >= 1");

    CartanFactors out{id1, id2, 0};
    for (int round = 0; round <= precision; ++round) {
        const AnalyticMatrix m = e - id1;
        if (!m.valuation().is_exact()) {
            out.rounds = round;
            return out;
        }
        AnalyticMatrix m1(cfg, j1, n), m2(cfg, i, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                auto parts = split(m(r, c), left, right);
                m1(r, c) = parts.first.rebased(j1);
                m2(r, c) = parts.second.rebased(i);
            }
        const AnalyticMatrix p1 = id1 + m1;
        const AnalyticMatrix p2 = id2 + m2;
        out.a1 = out.a1 * p1;
        out.a2 = p2 * out.a2;
        // m1 m2 = t^{2v} q, so the inverses are only needed modulo t^{N - 2v}
        const int v = static_cast<int>(m.valuation().value());
        const int low = precision - 2 * v;
        if (low <= 0) {
            out.rounds = round + 1;
            return out;
        }
        const AnalyticMatrix q = detail::shifted_down(m1 * m2, 2 * v);
        const AnalyticMatrix p1_inv = invert_near_identity(truncated(p1, low));
        const AnalyticMatrix p2_inv = invert_near_identity(truncated(p2, low));
        e = id1 - detail::shifted_up(p1_inv * q * p2_inv, 2 * v);
    }
    throw internal_error("cartan_factor: no convergence within " + std::to_string(precision) + " rounds");
}

/// Cartan factorization of a over D_I (zero t-shifts) with v(a - 1) >= 1.
inline FactorizationResult cartan_factor(const PatchMatrix& a_in, int i)
{
    const AnalyticMatrix a = to_analytic(a_in);
    const CartanFactors f = cartan_iterate(a, i);
    FactorizationResult res;
    res.b1 = to_localized(f.a1);
    res.b2 = to_localized(f.a2);
    res.rounds = f.rounds;
    res.residual_precision = detail::agreement(f.a1 * f.a2, a);
    res.b1_membership = detail::entries_in(f.a1, detail::complement(*a.config(), i));
    res.b2_membership = detail::entries_in(f.a2, {i});
    return res;
}

/**
 * b = b1 b2 with b1 over Q_i and b2 over Q'_i, for b over D_I[t^{-1}] whose
 * determinant is t^e times a recognized unit.
 *
 * Write b = t^m B with B over D_I. With d = det B = t^e u, b' = u^{-1} adj(B)
 * satisfies B b' = t^e. The approximation a0 = b' mod t^{e+1} has entries in
 * K[t][z_k], so a = t^{-e} a0 has entries in E; B a has v(B a - 1) >= 1 and is
 * factored by the Cartan iteration as a1 a2. Then b1 = t^m a1 and
 * b2 = a1^{-1} B = a2 a^{-1}. Results hold modulo t^{N-e}.
 */
inline FactorizationResult gl_factor(const PatchMatrix& b, int i)
{
    const auto& cfg = b.config();
    cfg->check_index(i);
    const int n = b.dim();
    std::optional<int> lowest;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!b(r, c).body().is_zero())
                lowest = std::min(lowest.value_or(b(r, c).shift()), b(r, c).shift());
    if (!lowest)
        throw precondition_error("gl_factor: matrix vanishes at this precision");
    const int m = *lowest;
    AnalyticMatrix big_b(cfg, b.chart(), n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!b(r, c).body().is_zero())
                big_b(r, c) = b(r, c).body().times_t_power(b(r, c).shift() - m);

    const AnalyticElement d = det(big_b);
    const Valuation vd = d.valuation();
    if (!vd.is_exact())
        throw precondition_error("gl_factor: determinant vanishes at this precision");
    const int e = static_cast<int>(vd.value());
    const int precision = d.precision();
    if (2 * e + 1 > precision)
        throw precision_exhausted("gl_factor: determinant valuation too large for the precision");
    AnalyticElement u_inv;
    try {
        u_inv = unit_invert(d.divided_by_t_power(e));
    } catch (const unit_not_recognized&) {
        throw unit_not_recognized(
            "gl_factor: restricted pipeline; the unit part of det(b) is not a recognized unit, and general "
            "Weierstrass clearing is not implemented");
    }

    const AnalyticMatrix adj = adjugate(big_b);
    AnalyticMatrix a0(cfg, b.chart(), n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a0(r, c) = (u_inv * adj(r, c).truncated(precision - e)).truncated(e + 1).padded(precision);

    // B a = t^{-e} B a0, known modulo t^{N-e}
    const AnalyticMatrix ba0 = big_b * a0;
    AnalyticMatrix ba(cfg, b.chart(), n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            ba(r, c) = ba0(r, c).divided_by_t_power(e);

    const CartanFactors f = cartan_iterate(ba, i);
    const AnalyticMatrix b2 = invert_near_identity(f.a1) * truncated(big_b, precision - e);

    FactorizationResult res;
    res.b1 = to_localized(f.a1, m);
    res.b2 = to_localized(b2);
    res.rounds = f.rounds;
    res.det_valuation = e;
    res.residual_precision = detail::agreement(f.a1 * b2, truncated(big_b, precision - e));
    res.b1_membership = detail::entries_in(f.a1, detail::complement(*cfg, i));
    // b2 a = a2 must lie over D_{i}
    const AnalyticMatrix b2a0 = b2 * a0;
    AnalyticMatrix b2a(cfg, b.chart(), n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            b2a(r, c) = b2a0(r, c).divided_by_t_power(e);
    res.b2_membership = detail::entries_in(b2a, {i}) && detail::agreement(b2a, f.a2) >= precision - 2 * e;
    return res;
}

} // namespace patchring
