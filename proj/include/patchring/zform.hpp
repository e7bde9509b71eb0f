#pragma once

/**
 * @file zform.hpp
 * @brief The algebra K[z_l : l in I] over a coefficient ring R.
 *
 * With s = X/Y we have z_l = 1/(s - c_l), so K[z_l : l in I] is the ring of
 * rational functions in s whose poles lie among the centers and which are
 * regular at infinity. Every element is uniquely
 *
 *     constant + sum_l sum_{n >= 1} a_{l,n} z_l^n,
 *
 * i.e. its value at infinity plus its principal parts. Products are computed
 * center by center: the principal part of f g at c_l only needs f's and g's
 * own principal parts at c_l and Taylor expansions of the remaining parts in
 * u = s - c_l, where z_m^n = (u + c_l - c_m)^{-n}. Pairwise this reproduces
 * z_l z_m = z_l/(c_l - c_m) + z_m/(c_m - c_l).
 *
 * The coefficient ring R is either Scalar (for K[z]) or TruncSeries (for
 * D_J mod t^N); everything here is R-linear.
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "patchring/scalar.hpp"
#include "patchring/series.hpp"

namespace patchring {

inline void accumulate_product(Scalar& acc, const Scalar& a, const Scalar& b)
{
    if (!a.is_zero() && !b.is_zero())
        acc += a * b;
}
inline void accumulate_product(TruncSeries& acc, const TruncSeries& a, const TruncSeries& b)
{
    acc.add_product(a, b);
}
inline void accumulate_scaled(Scalar& acc, const Scalar& a, const Scalar& s)
{
    if (!a.is_zero() && !s.is_zero())
        acc += a * s;
}
inline void accumulate_scaled(TruncSeries& acc, const TruncSeries& a, const Scalar& s)
{
    acc.add_scaled(a, s);
}

inline Scalar one_like(const Scalar& s) { return Scalar(s.field(), 1); }
inline TruncSeries one_like(const TruncSeries& s) { return TruncSeries::constant(s.precision(), Scalar(s.field(), 1)); }

template <class R>
struct ZForm {
    R constant;
    /// poles[l][n - 1] is the coefficient of z_l^n.
    std::vector<std::vector<R>> poles;

    ZForm() = default;
    ZForm(R c, std::size_t centers) : constant(std::move(c)), poles(centers) {}

    std::size_t centers() const { return poles.size(); }
    int degree(int l) const { return static_cast<int>(poles[static_cast<std::size_t>(l)].size()); }

    /// Coefficient of z_l^n, or zero.
    R coefficient(int l, int n) const
    {
        const auto& p = poles[static_cast<std::size_t>(l)];
        return (n >= 1 && static_cast<std::size_t>(n) <= p.size()) ? p[static_cast<std::size_t>(n - 1)]
                                                                    : zero_like(constant);
    }

    /// Mutable access to the coefficient of z_l^n, growing storage as needed.
    R& at(int l, int n)
    {
        auto& p = poles[static_cast<std::size_t>(l)];
        while (p.size() < static_cast<std::size_t>(n))
            p.push_back(zero_like(constant));
        return p[static_cast<std::size_t>(n - 1)];
    }

    /// Drops trailing zero coefficients.
    void trim()
    {
        for (auto& p : poles)
            while (!p.empty() && is_zero(p.back()))
                p.pop_back();
    }

    bool is_zero_form() const
    {
        if (!is_zero(constant))
            return false;
        for (const auto& p : poles)
            for (const auto& c : p)
                if (!is_zero(c))
                    return false;
        return true;
    }

    ZForm& operator+=(const ZForm& o)
    {
        constant += o.constant;
        for (std::size_t l = 0; l < o.poles.size(); ++l)
            for (std::size_t n = 0; n < o.poles[l].size(); ++n)
                at(static_cast<int>(l), static_cast<int>(n + 1)) += o.poles[l][n];
        trim();
        return *this;
    }
    ZForm& operator-=(const ZForm& o)
    {
        constant -= o.constant;
        for (std::size_t l = 0; l < o.poles.size(); ++l)
            for (std::size_t n = 0; n < o.poles[l].size(); ++n)
                at(static_cast<int>(l), static_cast<int>(n + 1)) -= o.poles[l][n];
        trim();
        return *this;
    }
    ZForm operator-() const
    {
        ZForm r(*this);
        r.constant = -r.constant;
        for (auto& p : r.poles)
            for (auto& c : p)
                c = -c;
        return r;
    }
    ZForm& operator*=(const Scalar& s)
    {
        constant = constant * s;
        for (auto& p : poles)
            for (auto& c : p)
                c = c * s;
        trim();
        return *this;
    }
};

namespace detail {

/**
 * Taylor coefficients T_0, ..., T_{order-1} in u = s - c_l of the part of f
 * that is regular at c_l, namely f.constant + sum_{m != l} f_m(z_m), using
 * z_m^n = sum_i binom(-n, i) d^{-n-i} u^i with d = c_l - c_m.
 */
template <class R>
std::vector<R> regular_taylor(const std::vector<Scalar>& centers, const ZForm<R>& f, int l, int order)
{
    std::vector<R> taylor(static_cast<std::size_t>(order), zero_like(f.constant));
    if (order <= 0)
        return taylor;
    taylor[0] += f.constant;
    for (int m = 0; m < static_cast<int>(f.poles.size()); ++m) {
        if (m == l || f.poles[static_cast<std::size_t>(m)].empty())
            continue;
        const Scalar d = centers[static_cast<std::size_t>(l)] - centers[static_cast<std::size_t>(m)];
        const Scalar d_inv = d.inverse();
        Scalar d_inv_pow_n = d_inv; // d^{-n}
        const auto& fm = f.poles[static_cast<std::size_t>(m)];
        for (int n = 1; n <= static_cast<int>(fm.size()); ++n) {
            const R& coeff = fm[static_cast<std::size_t>(n - 1)];
            if (!is_zero(coeff)) {
                Scalar c = d_inv_pow_n; // binom(-n, 0) d^{-n}
                for (int i = 0; i < order; ++i) {
                    accumulate_scaled(taylor[static_cast<std::size_t>(i)], coeff, c);
                    // binom(-n, i+1) d^{-n-i-1} = binom(-n, i) d^{-n-i} * (-(n+i)) / ((i+1) d)
                    c = c * Scalar(-(n + i), i + 1) * d_inv;
                }
            }
            d_inv_pow_n = d_inv_pow_n * d_inv;
        }
    }
    return taylor;
}

} // namespace detail

/// Product in K[z_l] (exact over R; no truncation in the z-degree).
template <class R>
ZForm<R> multiply(const std::vector<Scalar>& centers, const ZForm<R>& f, const ZForm<R>& g)
{
    const std::size_t nc = std::max(f.poles.size(), g.poles.size());
    ZForm<R> r(f.constant * g.constant, nc);
    for (int l = 0; l < static_cast<int>(nc); ++l) {
        const std::vector<R> empty;
        const auto& fl = static_cast<std::size_t>(l) < f.poles.size() ? f.poles[static_cast<std::size_t>(l)] : empty;
        const auto& gl = static_cast<std::size_t>(l) < g.poles.size() ? g.poles[static_cast<std::size_t>(l)] : empty;
        const int df = static_cast<int>(fl.size());
        const int dg = static_cast<int>(gl.size());
        if (df == 0 && dg == 0)
            continue;
        auto& out = r.poles[static_cast<std::size_t>(l)];
        out.assign(static_cast<std::size_t>(df + dg), zero_like(r.constant));
        // principal x principal: z_l^a z_l^b = z_l^{a+b}
        for (int a = 1; a <= df; ++a) {
            if (is_zero(fl[static_cast<std::size_t>(a - 1)]))
                continue;
            for (int b = 1; b <= dg; ++b)
                accumulate_product(out[static_cast<std::size_t>(a + b - 1)], fl[static_cast<std::size_t>(a - 1)],
                                   gl[static_cast<std::size_t>(b - 1)]);
        }
        // principal part of f at c_l times the regular part of g, and vice versa
        if (df > 0) {
            const auto tg = detail::regular_taylor(centers, g, l, df);
            for (int a = 1; a <= df; ++a)
                for (int i = 0; i < a; ++i)
                    accumulate_product(out[static_cast<std::size_t>(a - i - 1)], fl[static_cast<std::size_t>(a - 1)],
                                       tg[static_cast<std::size_t>(i)]);
        }
        if (dg > 0) {
            const auto tf = detail::regular_taylor(centers, f, l, dg);
            for (int b = 1; b <= dg; ++b)
                for (int i = 0; i < b; ++i)
                    accumulate_product(out[static_cast<std::size_t>(b - i - 1)], gl[static_cast<std::size_t>(b - 1)],
                                       tf[static_cast<std::size_t>(i)]);
        }
    }
    r.trim();
    return r;
}

template <class R>
ZForm<R> power(const std::vector<Scalar>& centers, const ZForm<R>& f, unsigned e)
{
    ZForm<R> result(zero_like(f.constant), f.poles.size());
    result.constant += one_like(f.constant);
    ZForm<R> base = f;
    while (e > 0) {
        if (e & 1u)
            result = multiply(centers, result, base);
        e >>= 1u;
        if (e > 0)
            base = multiply(centers, base, base);
    }
    return result;
}

using ZPoly = ZForm<Scalar>;

} // namespace patchring
