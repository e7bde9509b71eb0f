#pragma once

/**
 * @file bivariate.hpp
 * @brief Truncated series in K[[t, Y]] and division by t-regular elements.
 *
 * Elements of K[[X, Y]] are rewritten in the coordinates (t, Y) with
 * t = X - cY. Precision is a total-degree bound: a BivarSeries of precision N
 * is known modulo the monomials of total degree >= N.
 */

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "patchring/error.hpp"
#include "patchring/scalar.hpp"
#include "patchring/series.hpp"
#include "patchring/xypoly.hpp"

namespace patchring {

class BivarSeries {
public:
    /// (exponent of t, exponent of Y)
    using Key = std::pair<int, int>;

    BivarSeries() = default;
    explicit BivarSeries(int precision) : precision_(precision) {}

    static BivarSeries monomial(int precision, const Scalar& c, int et, int ey)
    {
        BivarSeries s(precision);
        s.add_term(et, ey, c);
        return s;
    }

    /// p(X, Y) rewritten with X = t + cY.
    static BivarSeries from_xy(const XYPoly& p, const Scalar& c, int precision)
    {
        BivarSeries s(precision);
        for (const auto& [k, coeff] : p.terms()) {
            const int dx = k.first;
            const int dy = k.second;
            // X^dx = sum_a binom(dx, a) t^a (cY)^(dx - a)
            Scalar binom(1);
            for (int a = 0; a <= dx; ++a) {
                s.add_term(a, dy + dx - a, coeff * binom * c.pow(dx - a));
                binom = binom * Scalar(dx - a) / Scalar(a + 1);
            }
        }
        return s;
    }

    int precision() const { return precision_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }

    Scalar coefficient(int et, int ey) const
    {
        auto it = terms_.find({et, ey});
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(int et, int ey, const Scalar& c)
    {
        if (c.is_zero() || et + ey >= precision_)
            return;
        auto [it, inserted] = terms_.emplace(Key{et, ey}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }

    /// Lowest total degree of a stored term (precision if none).
    int order() const
    {
        int o = precision_;
        for (const auto& [k, c] : terms_)
            o = std::min(o, k.first + k.second);
        return o;
    }

    BivarSeries truncated(int precision) const
    {
        BivarSeries r(std::min(precision, precision_));
        for (const auto& [k, c] : terms_)
            r.add_term(k.first, k.second, c);
        return r;
    }

    /// Restriction to t^0 as a series in Y.
    TruncSeries y_part() const
    {
        TruncSeries r(precision_);
        for (const auto& [k, c] : terms_)
            if (k.first == 0)
                r.set(k.second, c);
        return r;
    }

    BivarSeries operator-() const
    {
        BivarSeries r(precision_);
        for (const auto& [k, c] : terms_)
            r.terms_.emplace(k, -c);
        return r;
    }
    BivarSeries& operator+=(const BivarSeries& o)
    {
        if (o.precision_ < precision_)
            *this = truncated(o.precision_);
        for (const auto& [k, c] : o.terms_)
            add_term(k.first, k.second, c);
        return *this;
    }
    BivarSeries& operator-=(const BivarSeries& o) { return *this += -o; }
    friend BivarSeries operator+(BivarSeries a, const BivarSeries& b) { return a += b; }
    friend BivarSeries operator-(BivarSeries a, const BivarSeries& b) { return a -= b; }

    friend BivarSeries operator*(const BivarSeries& a, const BivarSeries& b)
    {
        // a known mod deg >= Na and b has order >= ob, so the product is known
        // mod deg >= Na + ob; symmetric in a and b.
        const int n = std::min(a.precision_ + b.order(), b.precision_ + a.order());
        BivarSeries r(n);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend BivarSeries operator*(const Scalar& s, const BivarSeries& a)
    {
        BivarSeries r(a.precision_);
        for (const auto& [k, c] : a.terms_)
            r.add_term(k.first, k.second, s * c);
        return r;
    }

    /// Exact division by t of a series without t-free terms; precision drops by one.
    BivarSeries divided_by_t() const
    {
        BivarSeries r(precision_ - 1);
        for (const auto& [k, c] : terms_) {
            if (k.first == 0)
                throw precondition_error("divided_by_t: series has t-free terms");
            r.add_term(k.first - 1, k.second, c);
        }
        return r;
    }

    /// Inverse of a unit (nonzero constant term).
    BivarSeries invert_unit() const
    {
        const Scalar c0 = coefficient(0, 0);
        if (c0.is_zero())
            throw precondition_error("bivariate series is not a unit");
        // 1/(c0 (1 + w)) = c0^{-1} sum (-w)^k, w in the maximal ideal
        const Scalar inv0 = c0.inverse();
        BivarSeries w = inv0 * *this;
        w.add_term(0, 0, Scalar(-1));
        BivarSeries neg_w = -w;
        BivarSeries sum = monomial(precision_, Scalar(1), 0, 0);
        BivarSeries power = sum;
        for (int k = 1; k < precision_; ++k) {
            power = (power * neg_w).truncated(precision_);
            if (power.is_zero())
                break;
            sum += power;
        }
        return inv0 * sum;
    }

    friend bool operator==(const BivarSeries& a, const BivarSeries& b)
    {
        const int n = std::min(a.precision_, b.precision_);
        return a.truncated(n).terms_ == b.truncated(n).terms_;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c << ")";
            if (k.first > 0)
                os << "*t^" << k.first;
            if (k.second > 0)
                os << "*Y^" << k.second;
        }
        if (first)
            os << "0";
        os << " + O(deg " << precision_ << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const BivarSeries& s) { return os << s.to_string(); }

private:
    int precision_ = 0;
    std::map<Key, Scalar> terms_;
};

struct WeierstrassDivision {
    BivarSeries quotient;
    TruncSeries remainder; // a series in Y alone
};

/**
 * Division g = q f + r(Y) by an f that is t-regular of degree 1, i.e.
 * f = u t + h(Y) with u a unit and h(0) = 0.
 *
 * Each round moves the t-carrying part of the running dividend into the
 * quotient, which raises its minimal Y-degree by at least ord(h) >= 1; the
 * loop therefore ends within N rounds. The quotient is known to precision
 * N - 1 and q f + r reassembles g to precision N.
 */
inline WeierstrassDivision weierstrass_divide(const BivarSeries& g, const BivarSeries& f)
{
    const int n = std::min(g.precision(), f.precision());
    BivarSeries h(n), ut(n);
    const BivarSeries fn = f.truncated(n);
    for (const auto& [k, c] : fn.terms())
        (k.first == 0 ? h : ut).add_term(k.first, k.second, c);
    if (!h.coefficient(0, 0).is_zero() || ut.is_zero() || ut.coefficient(1, 0).is_zero())
        throw precondition_error("divisor is not t-regular of degree 1 at this precision");
    const BivarSeries u_inv = ut.divided_by_t().invert_unit();

    BivarSeries quotient(n - 1);
    TruncSeries remainder(n);
    BivarSeries cur = g.truncated(n);
    for (int round = 0; round <= n + 1; ++round) {
        BivarSeries t_part(cur.precision());
        for (const auto& [k, c] : cur.terms()) {
            if (k.first == 0)
                remainder.add_at(k.second, c);
            else
                t_part.add_term(k.first, k.second, c);
        }
        if (t_part.is_zero())
            return {quotient, remainder};
        const BivarSeries w = (t_part.divided_by_t() * u_inv).truncated(n - 1);
        quotient += w;
        cur = (-(w * h)).truncated(n);
    }
    throw internal_error("Weierstrass division did not terminate within the precision bound");
}

/**
 * The multiplicity of the prime f in g: the largest e with f^e | g, found by
 * repeated division with zero remainder. Each division costs one degree of
 * precision.
 */
inline int prime_valuation(const BivarSeries& g, const BivarSeries& f)
{
    if (g.is_zero())
        throw precision_exhausted("element is indistinguishable from 0 at this precision");
    BivarSeries cur = g;
    for (int e = 0;; ++e) {
        if (cur.is_zero())
            throw precision_exhausted("prime valuation exceeds the precision budget");
        WeierstrassDivision d = weierstrass_divide(cur, f);
        if (!d.remainder.is_zero())
            return e;
        cur = d.quotient;
    }
}

} // namespace patchring
