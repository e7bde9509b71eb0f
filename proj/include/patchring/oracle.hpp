#pragma once

/**
 * @file oracle.hpp
 * @brief Direct expansion of rational expressions in X, Y as series in (z_j, t_j).
 *
 * This is an independent check on the canonical-form arithmetic. It never
 * touches ZForm: an expression is expanded in K[[z]]((t)) truncated at z^M and
 * t^N by the substitutions
 *
 *     X = (1 + c_j z) t,  Y = z t,  t_k = (1 + (c_j - c_k) z) t,
 *     z_k = z / (1 + (c_j - c_k) z) = sum_m (c_k - c_j)^m z^{m+1},
 *
 * with z = z_j and t = t_j. Denominators must be t^v times a series with a
 * unit constant term.
 */

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "patchring/analytic.hpp"
#include "patchring/config.hpp"
#include "patchring/error.hpp"
#include "patchring/scalar.hpp"
#include "patchring/series.hpp"

namespace patchring {

/// A truncated series sum c_{a,b} z^a t^b, a < zdepth, shift <= b < tprec.
class OracleSeries {
public:
    OracleSeries() = default;
    OracleSeries(int zdepth, int shift, int tprec, const FieldDescriptor& field)
        : zdepth_(zdepth), shift_(shift), tprec_(std::max(tprec, shift)), field_(field),
          coeffs_(static_cast<std::size_t>(zdepth_) * static_cast<std::size_t>(tprec_ - shift_), Scalar(field, 0))
    {
    }

    int zdepth() const { return zdepth_; }
    int shift() const { return shift_; }
    int tprec() const { return tprec_; }
    const FieldDescriptor& field() const { return field_; }

    Scalar coefficient(int a, int b) const
    {
        if (a < 0 || a >= zdepth_ || b < shift_ || b >= tprec_)
            return Scalar(field_, 0);
        return coeffs_[index(a, b)];
    }

    void add(int a, int b, const Scalar& c)
    {
        if (a < 0 || a >= zdepth_ || b >= tprec_ || c.is_zero())
            return;
        if (b < shift_)
            throw internal_error("oracle: term below the stored t-range");
        coeffs_[index(a, b)] += c;
    }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
    }

    /// Lowest t-exponent with a nonzero coefficient, or tprec.
    int t_order() const
    {
        for (int b = shift_; b < tprec_; ++b)
            for (int a = 0; a < zdepth_; ++a)
                if (!coeffs_[index(a, b)].is_zero())
                    return b;
        return tprec_;
    }

    OracleSeries operator-() const
    {
        OracleSeries r(*this);
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    friend OracleSeries operator+(const OracleSeries& x, const OracleSeries& y)
    {
        OracleSeries r(std::min(x.zdepth_, y.zdepth_), std::min(x.shift_, y.shift_), std::min(x.tprec_, y.tprec_),
                       x.field_);
        for (const OracleSeries* s : {&x, &y})
            for (int b = s->shift_; b < r.tprec_; ++b)
                for (int a = 0; a < r.zdepth_; ++a)
                    r.add(a, b, s->coeffs_[s->index(a, b)]);
        return r;
    }
    friend OracleSeries operator-(const OracleSeries& x, const OracleSeries& y) { return x + (-y); }

    friend OracleSeries operator*(const OracleSeries& x, const OracleSeries& y)
    {
        const int m = std::min(x.zdepth_, y.zdepth_);
        const int tp = std::min(x.tprec_ + y.shift_, y.tprec_ + x.shift_);
        OracleSeries r(m, x.shift_ + y.shift_, tp, x.field_);
        const auto nx = x.nonzero_terms(m);
        const auto ny = y.nonzero_terms(m);
        for (const auto& [ax, bx, cx] : nx)
            for (const auto& [ay, by, cy] : ny) {
                if (ax + ay >= m || bx + by >= tp)
                    continue;
                r.coeffs_[r.index(ax + ay, bx + by)] += *cx * *cy;
            }
        return r;
    }

    friend OracleSeries operator*(const Scalar& s, const OracleSeries& x)
    {
        OracleSeries r(x);
        for (auto& c : r.coeffs_)
            c = c * s;
        return r;
    }

    OracleSeries pow(unsigned e) const
    {
        OracleSeries r = one(zdepth_, tprec_ - shift_, field_);
        for (unsigned i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

    /// Inverse of t^v u with u(z, 0) a unit of K[[z]].
    OracleSeries inverse() const
    {
        const int v = t_order();
        if (v >= tprec_)
            throw precondition_error("oracle: denominator not expandable (vanishes at this precision)");
        if (coeffs_[index(0, v)].is_zero())
            throw precondition_error("oracle: denominator not expandable (non-unit constant term)");
        const int rel = tprec_ - v;
        // u_n(z) is the coefficient of t^{v+n}; y_n solves sum_{m<=n} u_m y_{n-m} = [n == 0]
        auto u = [&](int n) { return row(v + n); };
        const std::vector<Scalar> u0_inv = invert_row(u(0));
        std::vector<std::vector<Scalar>> y;
        y.push_back(u0_inv);
        for (int n = 1; n < rel; ++n) {
            std::vector<Scalar> acc(static_cast<std::size_t>(zdepth_), Scalar(field_, 0));
            for (int m = 1; m <= n; ++m)
                accumulate_row(acc, u(m), y[static_cast<std::size_t>(n - m)]);
            std::vector<Scalar> yn(static_cast<std::size_t>(zdepth_), Scalar(field_, 0));
            accumulate_row(yn, acc, u0_inv);
            for (auto& c : yn)
                c = -c;
            y.push_back(std::move(yn));
        }
        OracleSeries r(zdepth_, -v, -v + rel, field_);
        for (int n = 0; n < rel; ++n)
            for (int a = 0; a < zdepth_; ++a)
                r.add(a, n - v, y[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)]);
        return r;
    }

    static OracleSeries one(int zdepth, int tprec, const FieldDescriptor& field)
    {
        OracleSeries r(zdepth, 0, tprec, field);
        r.add(0, 0, Scalar(field, 1));
        return r;
    }

    /// Equality on the common known range.
    friend bool operator==(const OracleSeries& x, const OracleSeries& y)
    {
        const int m = std::min(x.zdepth_, y.zdepth_);
        const int lo = std::min(x.shift_, y.shift_);
        const int hi = std::min(x.tprec_, y.tprec_);
        for (int b = lo; b < hi; ++b)
            for (int a = 0; a < m; ++a)
                if (x.coefficient(a, b) != y.coefficient(a, b))
                    return false;
        return true;
    }
    friend bool operator!=(const OracleSeries& x, const OracleSeries& y) { return !(x == y); }

    std::string to_string() const
    {
        std::string out;
        for (int b = shift_; b < tprec_; ++b)
            for (int a = 0; a < zdepth_; ++a) {
                const Scalar& c = coeffs_[index(a, b)];
                if (c.is_zero())
                    continue;
                if (!out.empty())
                    out += " + ";
                out += "(" + c.to_string() + ")*z^" + std::to_string(a) + "*t^" + std::to_string(b);
            }
        return (out.empty() ? "0" : out) + " + O(z^" + std::to_string(zdepth_) + ", t^" + std::to_string(tprec_) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const OracleSeries& s) { return os << s.to_string(); }

private:
    std::size_t index(int a, int b) const
    {
        return static_cast<std::size_t>(b - shift_) * static_cast<std::size_t>(zdepth_) + static_cast<std::size_t>(a);
    }

    struct Term {
        int a, b;
        const Scalar* c;
    };
    std::vector<Term> nonzero_terms(int m) const
    {
        std::vector<Term> out;
        for (int b = shift_; b < tprec_; ++b)
            for (int a = 0; a < m; ++a) {
                const Scalar& c = coeffs_[index(a, b)];
                if (!c.is_zero())
                    out.push_back({a, b, &c});
            }
        return out;
    }

    std::vector<Scalar> row(int b) const
    {
        std::vector<Scalar> r(static_cast<std::size_t>(zdepth_), Scalar(field_, 0));
        for (int a = 0; a < zdepth_; ++a)
            r[static_cast<std::size_t>(a)] = coefficient(a, b);
        return r;
    }

    /// acc += x * y in K[[z]] / z^zdepth.
    void accumulate_row(std::vector<Scalar>& acc, const std::vector<Scalar>& x, const std::vector<Scalar>& y) const
    {
        for (int a = 0; a < zdepth_; ++a) {
            if (x[static_cast<std::size_t>(a)].is_zero())
                continue;
            for (int c = 0; a + c < zdepth_; ++c)
                if (!y[static_cast<std::size_t>(c)].is_zero())
                    acc[static_cast<std::size_t>(a + c)] += x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(c)];
        }
    }

    std::vector<Scalar> invert_row(const std::vector<Scalar>& x) const
    {
        std::vector<Scalar> y(static_cast<std::size_t>(zdepth_), Scalar(field_, 0));
        const Scalar inv0 = x[0].inverse();
        for (int n = 0; n < zdepth_; ++n) {
            Scalar acc = n == 0 ? Scalar(field_, 1) : Scalar(field_, 0);
            for (int m = 1; m <= n; ++m)
                acc -= x[static_cast<std::size_t>(m)] * y[static_cast<std::size_t>(n - m)];
            y[static_cast<std::size_t>(n)] = acc * inv0;
        }
        return y;
    }

    int zdepth_ = 0;
    int shift_ = 0;
    int tprec_ = 0;
    FieldDescriptor field_;
    std::vector<Scalar> coeffs_;
};

/// A symbolic rational expression in X, Y, z_k, t_k.
class Expr {
public:
    enum class Kind { Const, X, Y, Z, T, SeriesT, Add, Sub, Mul, Neg, Pow, Inv };

    static Expr constant(const Scalar& c) { return make(Kind::Const, c); }
    static Expr x() { return make(Kind::X); }
    static Expr y() { return make(Kind::Y); }
    static Expr z(int k) { return make(Kind::Z, Scalar(0), k); }
    static Expr t(int k) { return make(Kind::T, Scalar(0), k); }
    /// sum_m s_m t_chart^m
    static Expr series_t(int chart, const TruncSeries& s)
    {
        Expr e = make(Kind::SeriesT, Scalar(0), chart);
        e.node_->series = s;
        return e;
    }

    friend Expr operator+(const Expr& a, const Expr& b) { return make(Kind::Add, Scalar(0), 0, {a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b) { return make(Kind::Sub, Scalar(0), 0, {a, b}); }
    friend Expr operator*(const Expr& a, const Expr& b) { return make(Kind::Mul, Scalar(0), 0, {a, b}); }
    friend Expr operator-(const Expr& a) { return make(Kind::Neg, Scalar(0), 0, {a}); }
    friend Expr pow(const Expr& a, int e) { return make(Kind::Pow, Scalar(0), e, {a}); }
    friend Expr inv(const Expr& a) { return make(Kind::Inv, Scalar(0), 0, {a}); }

    Kind kind() const { return node_->kind; }
    const Scalar& value() const { return node_->value; }
    int index() const { return node_->index; }
    const TruncSeries& series() const { return node_->series; }
    const std::vector<Expr>& args() const { return node_->args; }

private:
    struct Node {
        Kind kind;
        Scalar value;
        int index = 0;
        TruncSeries series;
        std::vector<Expr> args;
    };

    static Expr make(Kind k, Scalar v = Scalar(0), int index = 0, std::vector<Expr> args = {})
    {
        Expr e;
        e.node_ = std::make_shared<Node>(Node{k, std::move(v), index, TruncSeries(), std::move(args)});
        return e;
    }

    std::shared_ptr<Node> node_;
};

namespace detail {

inline OracleSeries oracle_linear_in_z(const Scalar& c0, const Scalar& c1, int zdepth, int tprec, int texp,
                                       const FieldDescriptor& field)
{
    OracleSeries r(zdepth, 0, tprec, field);
    r.add(0, texp, c0);
    r.add(1, texp, c1);
    return r;
}

} // namespace detail

/// The expansion of e in chart `chart`, truncated at z^zdepth and t^N.
inline OracleSeries oracle_expand(const Expr& e, int chart, int zdepth, const Configuration& cfg)
{
    const FieldDescriptor& field = cfg.field();
    const int n = cfg.precision();
    const Scalar cj = cfg.center(chart);
    switch (e.kind()) {
    case Expr::Kind::Const: {
        OracleSeries r(zdepth, 0, n, field);
        r.add(0, 0, e.value().embedded_in(field));
        return r;
    }
    case Expr::Kind::X:
        return detail::oracle_linear_in_z(Scalar(field, 1), cj, zdepth, n, 1, field);
    case Expr::Kind::Y:
        return detail::oracle_linear_in_z(Scalar(field, 0), Scalar(field, 1), zdepth, n, 1, field);
    case Expr::Kind::T:
        return detail::oracle_linear_in_z(Scalar(field, 1), cj - cfg.center(e.index()), zdepth, n, 1, field);
    case Expr::Kind::Z: {
        // z / (1 + (c_j - c_k) z), geometric
        OracleSeries r(zdepth, 0, n, field);
        const Scalar ratio = cfg.center(e.index()) - cj;
        Scalar c(field, 1);
        for (int a = 1; a < zdepth; ++a) {
            r.add(a, 0, c);
            c = c * ratio;
        }
        return r;
    }
    case Expr::Kind::SeriesT: {
        const OracleSeries tk =
            detail::oracle_linear_in_z(Scalar(field, 1), cj - cfg.center(e.index()), zdepth, n, 1, field);
        OracleSeries r(zdepth, 0, std::min(n, e.series().precision()), field);
        OracleSeries power = OracleSeries::one(zdepth, n, field);
        for (int m = 0; m < e.series().precision(); ++m) {
            if (m > 0)
                power = power * tk;
            const Scalar c = e.series().coefficient(m);
            if (!c.is_zero())
                r = r + c * power;
        }
        return r;
    }
    case Expr::Kind::Add:
        return oracle_expand(e.args()[0], chart, zdepth, cfg) + oracle_expand(e.args()[1], chart, zdepth, cfg);
    case Expr::Kind::Sub:
        return oracle_expand(e.args()[0], chart, zdepth, cfg) - oracle_expand(e.args()[1], chart, zdepth, cfg);
    case Expr::Kind::Mul:
        return oracle_expand(e.args()[0], chart, zdepth, cfg) * oracle_expand(e.args()[1], chart, zdepth, cfg);
    case Expr::Kind::Neg:
        return -oracle_expand(e.args()[0], chart, zdepth, cfg);
    case Expr::Kind::Pow: {
        const OracleSeries base = oracle_expand(e.args()[0], chart, zdepth, cfg);
        if (e.index() >= 0)
            return base.pow(static_cast<unsigned>(e.index()));
        return base.inverse().pow(static_cast<unsigned>(-e.index()));
    }
    case Expr::Kind::Inv:
        return oracle_expand(e.args()[0], chart, zdepth, cfg).inverse();
    }
    throw internal_error("oracle: unknown expression kind");
}

/// The defining expression f_0(t_j) + sum f_{k,n}(t_j) z_k^n of a canonical form.
inline Expr to_expr(const AnalyticElement& f)
{
    Expr e = Expr::series_t(f.chart(), f.f0());
    for (int k : f.support())
        for (int m = 1; m <= f.zdegree(k); ++m) {
            const TruncSeries c = f.zcoeff(k, m);
            if (!c.is_zero())
                e = e + Expr::series_t(f.chart(), c) * pow(Expr::z(k), m);
        }
    return e;
}

inline Expr to_expr(const LocalizedElement& f) { return pow(Expr::t(f.chart()), f.shift()) * to_expr(f.body()); }

/**
 * Whether a_0 + sum a_{k,n} z_k^n vanishes. The canonical-form answer (all
 * coefficients zero) is cross-checked against the oracle with z-depth above
 * the total pole order, where expansion is injective; a disagreement raises.
 */
inline bool lin_indep_check(const ZPoly& coeffs, const ConfigPtr& cfg)
{
    const bool canonical_zero = coeffs.is_zero_form();
    int total = 0;
    Expr e = Expr::constant(coeffs.constant);
    for (int k = 0; k < static_cast<int>(coeffs.poles.size()); ++k)
        for (int m = 1; m <= coeffs.degree(k); ++m) {
            total += 1;
            const Scalar c = coeffs.coefficient(k, m);
            if (!c.is_zero())
                e = e + Expr::constant(c) * pow(Expr::z(k), m);
        }
    const Configuration shallow(cfg->field(), cfg->centers(), 1);
    const OracleSeries s = oracle_expand(e, 0, total + 2, shallow);
    if (s.is_zero() != canonical_zero)
        throw internal_error("lin_indep_check: canonical form and oracle disagree");
    return canonical_zero;
}

} // namespace patchring
