#pragma once

/**
 * @file series.hpp
 * @brief Truncated power series K[[t]] / t^N with exact coefficients.
 *
 * A TruncSeries stores exactly `precision()` coefficients. Nothing is ever
 * claimed about the coefficients at t^N and beyond, which is why a series
 * whose stored coefficients all vanish has valuation ">= N" rather than
 * infinity.
 */

#include <algorithm>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "patchring/error.hpp"
#include "patchring/scalar.hpp"

namespace patchring {

/// A valuation that is either exact or only known to be at least `value`
/// (the latter encodes "vanishes to the working precision").
class Valuation {
public:
    static Valuation exact(long v) { return Valuation(v, true); }
    static Valuation at_least(long v) { return Valuation(v, false); }

    bool is_exact() const { return exact_; }
    long value() const { return value_; }

    /// min(v(a), v(b)) as a valuation of a sum-type bound.
    friend Valuation min(const Valuation& a, const Valuation& b)
    {
        if (a.value_ != b.value_)
            return a.value_ < b.value_ ? a : b;
        return Valuation(a.value_, a.exact_ || b.exact_);
    }

    friend bool operator==(const Valuation& a, const Valuation& b)
    {
        return a.value_ == b.value_ && a.exact_ == b.exact_;
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }

    std::string to_string() const { return exact_ ? std::to_string(value_) : ">=" + std::to_string(value_); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

private:
    Valuation(long v, bool e) : value_(v), exact_(e) {}
    long value_;
    bool exact_;
};

class TruncSeries {
public:
    TruncSeries() = default;

    /// The zero series mod t^precision over `field`.
    explicit TruncSeries(int precision, const FieldDescriptor& field = FieldDescriptor())
        : coeffs_(static_cast<std::size_t>(std::max(precision, 0)), Scalar(field, 0)), field_(field)
    {
    }

    /// Coefficients listed from t^0 upwards; missing ones are zero.
    TruncSeries(int precision, const std::vector<Scalar>& coeffs, const FieldDescriptor& field = FieldDescriptor())
        : TruncSeries(precision, field)
    {
        for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i)
            coeffs_[i] = coeffs[i].embedded_in(field_);
    }

    static TruncSeries constant(int precision, const Scalar& c)
    {
        TruncSeries s(precision, c.field());
        if (precision > 0)
            s.coeffs_[0] = c;
        return s;
    }

    /// c * t^e (zero if e >= precision).
    static TruncSeries monomial(int precision, const Scalar& c, int e)
    {
        TruncSeries s(precision, c.field());
        if (e >= 0 && e < precision)
            s.coeffs_[static_cast<std::size_t>(e)] = c;
        return s;
    }

    int precision() const { return static_cast<int>(coeffs_.size()); }
    const FieldDescriptor& field() const { return field_; }

    const Scalar& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    Scalar coefficient(int i) const
    {
        return (i >= 0 && i < precision()) ? coeffs_[static_cast<std::size_t>(i)] : Scalar(field_, 0);
    }
    void set(int i, const Scalar& c)
    {
        if (i < 0 || i >= precision())
            return;
        coeffs_[static_cast<std::size_t>(i)] = c;
        adopt(c);
    }
    void add_at(int i, const Scalar& c)
    {
        if (i < 0 || i >= precision())
            return;
        coeffs_[static_cast<std::size_t>(i)] += c;
        adopt(c);
    }

    bool is_zero() const
    {
        for (const auto& c : coeffs_)
            if (!c.is_zero())
                return false;
        return true;
    }

    /// t-adic valuation: index of the first nonzero coefficient, or ">= N".
    Valuation valuation() const
    {
        for (int i = 0; i < precision(); ++i)
            if (!coeffs_[static_cast<std::size_t>(i)].is_zero())
                return Valuation::exact(i);
        return Valuation::at_least(precision());
    }

    /// Index of the first nonzero coefficient, or precision() if none.
    int order() const
    {
        for (int i = 0; i < precision(); ++i)
            if (!coeffs_[static_cast<std::size_t>(i)].is_zero())
                return i;
        return precision();
    }

    TruncSeries truncated(int precision) const
    {
        TruncSeries r(std::min(precision, this->precision()), field_);
        for (int i = 0; i < r.precision(); ++i)
            r.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
        return r;
    }

    /// The same coefficients at a larger precision, missing ones set to zero.
    /// Valid when the series is an exact polynomial in t.
    TruncSeries padded(int precision) const
    {
        if (precision <= this->precision())
            return *this;
        TruncSeries r(precision, field_);
        for (int i = 0; i < this->precision(); ++i)
            r.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
        return r;
    }

    /// Multiplication by t^e; coefficients pushed past the precision are dropped.
    TruncSeries shifted_up(int e) const
    {
        TruncSeries r(precision(), field_);
        for (int i = 0; i + e < precision(); ++i)
            r.coeffs_[static_cast<std::size_t>(i + e)] = coeffs_[static_cast<std::size_t>(i)];
        return r;
    }

    /// Exact division by t^e. The result is known only mod t^{N-e}.
    TruncSeries shifted_down(int e) const
    {
        if (e > order())
            throw precondition_error("series is not divisible by t^" + std::to_string(e));
        TruncSeries r(precision() - e, field_);
        for (int i = 0; i < r.precision(); ++i)
            r.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i + e)];
        return r;
    }

    TruncSeries operator-() const
    {
        TruncSeries r(*this);
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o)
    {
        if (o.precision() < precision())
            coeffs_.resize(o.coeffs_.size());
        adopt_field(o.field_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!o.coeffs_[i].is_zero())
                coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o)
    {
        if (o.precision() < precision())
            coeffs_.resize(o.coeffs_.size());
        adopt_field(o.field_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!o.coeffs_[i].is_zero())
                coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    /// *this += a * c without a temporary series.
    void add_scaled(const TruncSeries& a, const Scalar& c)
    {
        if (c.is_zero())
            return;
        if (a.precision() < precision())
            coeffs_.resize(a.coeffs_.size());
        adopt_field(a.field_);
        adopt(c);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!a.coeffs_[i].is_zero())
                coeffs_[i] += a.coeffs_[i] * c;
    }

    TruncSeries& operator*=(const Scalar& c)
    {
        adopt(c);
        for (auto& x : coeffs_)
            if (!x.is_zero())
                x *= c;
        return *this;
    }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const Scalar& c) { return a *= c; }
    friend TruncSeries operator*(const Scalar& c, TruncSeries a) { return a *= c; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        const int n = std::min(a.precision(), b.precision());
        TruncSeries r(n, a.field_);
        r.adopt_field(b.field_);
        const int oa = a.order();
        const int ob = b.order();
        for (int i = oa; i < n - ob; ++i) {
            const Scalar& x = a.coeffs_[static_cast<std::size_t>(i)];
            if (x.is_zero())
                continue;
            for (int j = ob; i + j < n; ++j) {
                const Scalar& y = b.coeffs_[static_cast<std::size_t>(j)];
                if (!y.is_zero())
                    r.coeffs_[static_cast<std::size_t>(i + j)] += x * y;
            }
        }
        return r;
    }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    /// Accumulates a*b into *this (precision of *this is kept).
    void add_product(const TruncSeries& a, const TruncSeries& b)
    {
        const int n = std::min({precision(), a.precision(), b.precision()});
        const int oa = a.order();
        if (oa >= n)
            return;
        const int ob = b.order();
        adopt_field(a.field_);
        adopt_field(b.field_);
        for (int i = oa; i < n - ob; ++i) {
            const Scalar& x = a.coeffs_[static_cast<std::size_t>(i)];
            if (x.is_zero())
                continue;
            for (int j = ob; i + j < n; ++j) {
                const Scalar& y = b.coeffs_[static_cast<std::size_t>(j)];
                if (!y.is_zero())
                    coeffs_[static_cast<std::size_t>(i + j)] += x * y;
            }
        }
        if (n < precision())
            coeffs_.resize(static_cast<std::size_t>(n));
    }

    TruncSeries pow(unsigned e) const
    {
        TruncSeries result = constant(precision(), Scalar(field_, 1));
        TruncSeries base(*this);
        while (e > 0) {
            if (e & 1u)
                result *= base;
            e >>= 1u;
            if (e > 0)
                base *= base;
        }
        return result;
    }

    /// Inverse of a unit (nonzero constant term) by Newton iteration.
    TruncSeries invert_unit() const
    {
        if (precision() == 0)
            return *this;
        if (coeffs_[0].is_zero())
            throw precondition_error("series is not a unit: constant coefficient is zero");
        TruncSeries y = constant(precision(), coeffs_[0].inverse());
        const TruncSeries two = constant(precision(), Scalar(field_, 2));
        for (int known = 1; known < precision(); known *= 2)
            y = y * (two - *this * y);
        return y;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        const int n = std::min(a.precision(), b.precision());
        for (int i = 0; i < n; ++i)
            if (a.coeffs_[static_cast<std::size_t>(i)] != b.coeffs_[static_cast<std::size_t>(i)])
                return false;
        return true;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < precision(); ++i) {
            const Scalar& c = coeffs_[static_cast<std::size_t>(i)];
            if (c.is_zero())
                continue;
            if (!first)
                os << " + ";
            std::string cs = c.to_string();
            bool compound = cs.find_first_of("+ ") != std::string::npos;
            if (i == 0)
                os << cs;
            else {
                if (cs != "1")
                    os << (compound ? "(" + cs + ")" : cs) << "*";
                os << "t";
                if (i > 1)
                    os << "^" << i;
            }
            first = false;
        }
        if (first)
            os << "0";
        os << " + O(t^" << precision() << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const TruncSeries& s) { return os << s.to_string(); }

private:
    void adopt(const Scalar& c)
    {
        if (c.degree() > field_.degree())
            adopt_field(c.field());
    }
    void adopt_field(const FieldDescriptor& f)
    {
        if (f == field_ || f.is_rationals())
            return;
        if (!field_.is_rationals())
            throw field_mismatch("series over " + field_.name() + " and " + f.name());
        field_ = f;
        for (auto& c : coeffs_)
            c = c.embedded_in(f);
    }

    std::vector<Scalar> coeffs_;
    FieldDescriptor field_;
};

inline TruncSeries zero_like(const TruncSeries& s) { return TruncSeries(s.precision(), s.field()); }
inline bool is_zero(const TruncSeries& s) { return s.is_zero(); }

/// A polynomial in one indeterminate z with TruncSeries coefficients (low to high).
using SeriesPoly = std::vector<TruncSeries>;

inline TruncSeries evaluate(const SeriesPoly& p, const TruncSeries& z)
{
    if (p.empty())
        return zero_like(z);
    TruncSeries acc = p.back();
    for (std::size_t l = p.size() - 1; l-- > 0;)
        acc = acc * z + p[l];
    return acc;
}

inline SeriesPoly derivative(const SeriesPoly& p)
{
    SeriesPoly d;
    for (std::size_t l = 1; l < p.size(); ++l)
        d.push_back(p[l] * Scalar(static_cast<long>(l)));
    return d;
}

/**
 * Newton lift of a simple root: returns lambda with p(lambda) = 0 mod t^N and
 * lambda = z0 mod t. Precision of the result is the minimum coefficient
 * precision of p.
 */
inline TruncSeries poly_simple_root(const SeriesPoly& p, const Scalar& z0)
{
    if (p.empty())
        throw precondition_error("poly_simple_root: zero polynomial");
    int n = p.front().precision();
    FieldDescriptor field = p.front().field();
    for (const auto& c : p) {
        n = std::min(n, c.precision());
        if (c.field().degree() > field.degree())
            field = c.field();
    }
    const SeriesPoly dp = derivative(p);
    // residue checks at t = 0
    Scalar value(field, 0), slope(field, 0);
    for (std::size_t l = p.size(); l-- > 0;)
        value = value * z0 + p[l].coefficient(0);
    for (std::size_t l = dp.size(); l-- > 0;)
        slope = slope * z0 + dp[l].coefficient(0);
    if (!value.is_zero())
        throw precondition_error("poly_simple_root: z0 is not a root mod t");
    if (slope.is_zero())
        throw precondition_error("poly_simple_root: root is not simple mod t");

    TruncSeries lambda = TruncSeries::constant(n, z0.embedded_in(field));
    if (n == 0)
        return lambda;
    for (int known = 1;; known *= 2) {
        TruncSeries residual = evaluate(p, lambda).truncated(n);
        if (residual.is_zero())
            return lambda;
        if (known > 2 * n)
            throw internal_error("Newton iteration failed to converge");
        lambda = lambda - residual * evaluate(dp, lambda).truncated(n).invert_unit();
    }
}

} // namespace patchring
