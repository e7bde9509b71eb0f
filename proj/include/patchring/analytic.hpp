#pragma once

/**
 * @file analytic.hpp
 * @brief Elements of the analytic rings D_J modulo t^N.
 *
 * Fix a chart j, i.e. the uniformizer t = t_j = X - c_j Y. An element of
 * D_I mod t^N is stored in its unique canonical form
 *
 *     f = f_0(t) + sum_k sum_{n >= 1} f_{k,n}(t) z_k^n,    z_k = Y / (X - c_k Y),
 *
 * with f_0, f_{k,n} in K[[t]] / t^N. The z-part is chart independent; only the
 * meaning of t changes, via t_j = (1 + (c_{j'} - c_j) z_{j'}) t_{j'}.
 *
 * The element lies in D_J (J non-empty, chart in J) exactly when its z-support
 * is contained in J.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "patchring/config.hpp"
#include "patchring/error.hpp"
#include "patchring/scalar.hpp"
#include "patchring/series.hpp"
#include "patchring/xypoly.hpp"
#include "patchring/zform.hpp"

namespace patchring {

class AnalyticElement {
public:
    using Form = ZForm<TruncSeries>;

    AnalyticElement() = default;

    /// The zero element in chart `chart` at the configuration's precision.
    AnalyticElement(ConfigPtr cfg, int chart) : AnalyticElement(cfg, chart, cfg ? cfg->precision() : 0) {}

    AnalyticElement(ConfigPtr cfg, int chart, int precision)
        : cfg_(std::move(cfg)), chart_(chart), precision_(precision)
    {
        if (!cfg_)
            throw precondition_error("analytic element requires a configuration");
        cfg_->check_index(chart_);
        form_ = Form(TruncSeries(precision_, cfg_->field()), static_cast<std::size_t>(cfg_->size()));
    }

    static AnalyticElement zero(ConfigPtr cfg, int chart) { return AnalyticElement(std::move(cfg), chart); }

    static AnalyticElement constant(ConfigPtr cfg, int chart, const Scalar& c)
    {
        AnalyticElement e(std::move(cfg), chart);
        e.form_.constant = TruncSeries::constant(e.precision_, c.embedded_in(e.cfg_->field()));
        return e;
    }

    static AnalyticElement one(ConfigPtr cfg, int chart) { return constant(std::move(cfg), chart, Scalar(1)); }

    /// The uniformizer t of the chart, times c.
    static AnalyticElement uniformizer(ConfigPtr cfg, int chart, const Scalar& c = Scalar(1))
    {
        AnalyticElement e(std::move(cfg), chart);
        e.form_.constant = TruncSeries::monomial(e.precision_, c.embedded_in(e.cfg_->field()), 1);
        return e;
    }

    /// sum_n a_n t^n with no z-part.
    static AnalyticElement from_series(ConfigPtr cfg, int chart, const TruncSeries& f0)
    {
        AnalyticElement e(std::move(cfg), chart, f0.precision());
        e.form_.constant = f0;
        e.canonicalize();
        return e;
    }

    static AnalyticElement from_form(ConfigPtr cfg, int chart, Form form, int precision)
    {
        AnalyticElement e(std::move(cfg), chart, precision);
        form.poles.resize(static_cast<std::size_t>(e.cfg_->size()));
        e.form_ = std::move(form);
        e.canonicalize();
        return e;
    }

    const ConfigPtr& config() const { return cfg_; }
    const Configuration& cfg() const { return *cfg_; }
    int chart() const { return chart_; }
    int precision() const { return precision_; }
    const Form& form() const { return form_; }

    const TruncSeries& f0() const { return form_.constant; }
    TruncSeries zcoeff(int k, int n) const { return form_.coefficient(k, n); }
    int zdegree(int k) const { return form_.degree(k); }

    /// Sets the coefficient of z_k^n (n >= 1) or, for n == 0, f_0.
    void set_coefficient(int k, int n, const TruncSeries& s)
    {
        TruncSeries v = s.truncated(precision_);
        if (v.precision() < precision_)
            throw precondition_error("coefficient has lower precision than the element");
        if (n == 0)
            form_.constant = v;
        else
            form_.at(k, n) = v;
        form_.trim();
    }

    /// Indices k with a nonzero z_k-part.
    IndexSet support() const
    {
        IndexSet s;
        for (int k = 0; k < cfg_->size(); ++k)
            if (form_.degree(k) > 0)
                s.insert(k);
        return s;
    }

    bool is_zero() const { return form_.is_zero_form(); }

    /// v(f) = min over the t-adic valuations of all coefficients.
    Valuation valuation() const
    {
        Valuation v = form_.constant.valuation();
        for (const auto& p : form_.poles)
            for (const auto& c : p)
                v = min(v, c.valuation());
        if (!v.is_exact())
            return Valuation::at_least(precision_);
        return v;
    }

    /// Coefficient of t^n as an element of K[z].
    ZPoly t_coefficient(int n) const
    {
        ZPoly a(form_.constant.coefficient(n), form_.poles.size());
        for (std::size_t l = 0; l < form_.poles.size(); ++l)
            for (std::size_t m = 0; m < form_.poles[l].size(); ++m)
                a.at(static_cast<int>(l), static_cast<int>(m + 1)) = form_.poles[l][m].coefficient(n);
        a.trim();
        return a;
    }

    /// Adds a * t^n.
    void add_t_coefficient(int n, const ZPoly& a)
    {
        if (n < 0 || n >= precision_)
            return;
        if (!a.constant.is_zero())
            form_.constant.add_at(n, a.constant);
        for (std::size_t l = 0; l < a.poles.size(); ++l)
            for (std::size_t m = 0; m < a.poles[l].size(); ++m)
                if (!a.poles[l][m].is_zero())
                    form_.at(static_cast<int>(l), static_cast<int>(m + 1)).add_at(n, a.poles[l][m]);
        form_.trim();
    }

    AnalyticElement truncated(int precision) const
    {
        if (precision >= precision_)
            return *this;
        AnalyticElement r(cfg_, chart_, precision);
        r.form_.constant = form_.constant.truncated(precision);
        for (std::size_t l = 0; l < form_.poles.size(); ++l)
            for (const auto& c : form_.poles[l])
                r.form_.poles[l].push_back(c.truncated(precision));
        r.canonicalize();
        return r;
    }

    /// Reinterprets a polynomial in t as known to a larger precision.
    AnalyticElement padded(int precision) const
    {
        if (precision <= precision_)
            return *this;
        AnalyticElement r(cfg_, chart_, precision);
        r.form_.constant = form_.constant.padded(precision);
        for (std::size_t l = 0; l < form_.poles.size(); ++l)
            for (const auto& c : form_.poles[l])
                r.form_.poles[l].push_back(c.padded(precision));
        r.canonicalize();
        return r;
    }

    /// Multiplication by t^e (e >= 0) at unchanged precision.
    AnalyticElement times_t_power(int e) const
    {
        if (e < 0)
            throw precondition_error("times_t_power needs a non-negative exponent");
        AnalyticElement r(*this);
        r.form_.constant = form_.constant.shifted_up(e);
        for (auto& p : r.form_.poles)
            for (auto& c : p)
                c = c.shifted_up(e);
        r.canonicalize();
        return r;
    }

    /// Exact division by t^e; the result is known mod t^{N-e}.
    AnalyticElement divided_by_t_power(int e) const
    {
        if (e == 0)
            return *this;
        AnalyticElement r(cfg_, chart_, precision_ - e);
        r.form_.constant = form_.constant.shifted_down(e);
        for (std::size_t l = 0; l < form_.poles.size(); ++l)
            for (const auto& c : form_.poles[l])
                r.form_.poles[l].push_back(c.shifted_down(e));
        r.canonicalize();
        return r;
    }

    /// The same ring element expressed in chart j.
    AnalyticElement rebased(int j) const
    {
        cfg_->check_index(j);
        if (j == chart_)
            return *this;
        // t_chart = w * t_j with w = 1 + (c_j - c_chart) z_j
        const auto& centers = cfg_->centers();
        ZPoly w(Scalar(cfg_->field(), 1), centers.size());
        w.at(j, 1) = cfg_->center(j) - cfg_->center(chart_);
        AnalyticElement r(cfg_, j, precision_);
        ZPoly w_pow(Scalar(cfg_->field(), 1), centers.size());
        for (int n = 0; n < precision_; ++n) {
            if (n > 0)
                w_pow = multiply(centers, w_pow, w);
            ZPoly a = t_coefficient(n);
            if (a.is_zero_form())
                continue;
            r.add_t_coefficient(n, multiply(centers, a, w_pow));
        }
        r.canonicalize();
        return r;
    }

    AnalyticElement pow(unsigned e) const
    {
        AnalyticElement result = one(cfg_, chart_).truncated(precision_);
        AnalyticElement base = *this;
        while (e > 0) {
            if (e & 1u)
                result = result * base;
            e >>= 1u;
            if (e > 0)
                base = base * base;
        }
        return result;
    }

    AnalyticElement operator-() const
    {
        AnalyticElement r(*this);
        r.form_ = -form_;
        return r;
    }

    AnalyticElement& operator+=(const AnalyticElement& o)
    {
        AnalyticElement b = aligned(o);
        form_ += b.form_;
        canonicalize();
        return *this;
    }
    AnalyticElement& operator-=(const AnalyticElement& o)
    {
        AnalyticElement b = aligned(o);
        form_ -= b.form_;
        canonicalize();
        return *this;
    }
    AnalyticElement& operator*=(const Scalar& s)
    {
        form_ *= s.embedded_in(cfg_->field());
        return *this;
    }

    friend AnalyticElement operator+(AnalyticElement a, const AnalyticElement& b) { return a += b; }
    friend AnalyticElement operator-(AnalyticElement a, const AnalyticElement& b) { return a -= b; }
    friend AnalyticElement operator*(AnalyticElement a, const Scalar& s) { return a *= s; }
    friend AnalyticElement operator*(const Scalar& s, AnalyticElement a) { return a *= s; }

    /// Product; the right operand is first rebased to the left operand's chart.
    friend AnalyticElement operator*(const AnalyticElement& a, const AnalyticElement& b)
    {
        if (b.chart_ == a.chart_ && b.precision_ == a.precision_ && a.cfg_ == b.cfg_)
            return a.multiplied(b);
        AnalyticElement bb = a.aligned(b);
        return a.truncated(bb.precision_).multiplied(bb);
    }
    AnalyticElement& operator*=(const AnalyticElement& o) { return *this = *this * o; }

    /// Equality of canonical forms at the common precision, after chart alignment.
    friend bool operator==(const AnalyticElement& a, const AnalyticElement& b)
    {
        if (!same_configuration(*a.cfg_, *b.cfg_))
            return false;
        AnalyticElement bb = a.aligned(b);
        AnalyticElement aa = a.truncated(bb.precision_);
        return (aa - bb).is_zero();
    }
    friend bool operator!=(const AnalyticElement& a, const AnalyticElement& b) { return !(a == b); }

    std::string to_string() const
    {
        std::ostringstream os;
        os << "[chart " << chart_ << "] ";
        bool first = true;
        auto series_text = [](const TruncSeries& s) {
            std::string text = s.to_string();
            return text.substr(0, text.rfind(" + O(t^"));
        };
        if (!form_.constant.is_zero()) {
            os << "(" << series_text(form_.constant) << ")";
            first = false;
        }
        for (std::size_t l = 0; l < form_.poles.size(); ++l)
            for (std::size_t n = 0; n < form_.poles[l].size(); ++n) {
                if (form_.poles[l][n].is_zero())
                    continue;
                os << (first ? "" : " + ") << "(" << series_text(form_.poles[l][n]) << ")*z" << l;
                if (n > 0)
                    os << "^" << n + 1;
                first = false;
            }
        if (first)
            os << "0";
        os << " + O(t^" << precision_ << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const AnalyticElement& f) { return os << f.to_string(); }

private:
    void canonicalize()
    {
        form_.poles.resize(static_cast<std::size_t>(cfg_->size()));
        form_.trim();
    }

    /// Product of two elements in the same chart and precision.
    AnalyticElement multiplied(const AnalyticElement& b) const
    {
        AnalyticElement r(cfg_, chart_, precision_);
        r.form_ = multiply(cfg_->centers(), form_, b.form_);
        r.canonicalize();
        return r;
    }

    /// o rebased to this chart and both brought to a common precision.
    AnalyticElement aligned(const AnalyticElement& o) const
    {
        if (!o.cfg_ || !cfg_)
            throw precondition_error("operation on an unconfigured element");
        if (!same_configuration(*cfg_, *o.cfg_))
            throw precondition_error("elements belong to different configurations");
        AnalyticElement b = o.rebased(chart_);
        return b.truncated(precision_);
    }

    ConfigPtr cfg_;
    int chart_ = 0;
    Form form_;
    int precision_ = 0;
};

/// Product that refuses implicit chart changes.
inline AnalyticElement ae_mul(const AnalyticElement& f, const AnalyticElement& g)
{
    if (f.chart() != g.chart())
        throw precondition_error("ae_mul: chart mismatch");
    return f * g;
}
inline AnalyticElement ae_add(const AnalyticElement& f, const AnalyticElement& g)
{
    if (f.chart() != g.chart())
        throw precondition_error("ae_add: chart mismatch");
    return f + g;
}
inline AnalyticElement ae_neg(const AnalyticElement& f) { return -f; }

inline AnalyticElement rebase(const AnalyticElement& f, int chart) { return f.rebased(chart); }
inline Valuation valuation_v(const AnalyticElement& f) { return f.valuation(); }

/// z_k expressed in chart j.
inline AnalyticElement z_generator(int k, int chart, const ConfigPtr& cfg)
{
    cfg->check_index(k);
    AnalyticElement e(cfg, chart);
    e.set_coefficient(k, 1, TruncSeries::constant(cfg->precision(), Scalar(cfg->field(), 1)));
    return e;
}

/// The canonical form of p(X, Y) in chart j, via Y = z_j t and X = (1 + c_j z_j) t.
inline AnalyticElement embed_xy(const XYPoly& p, int chart, const ConfigPtr& cfg)
{
    AnalyticElement e(cfg, chart);
    const Scalar cj = cfg->center(chart);
    const int n = cfg->precision();
    for (const auto& [key, coeff] : p.terms()) {
        const int dx = key.first;
        const int dy = key.second;
        if (dx + dy >= n)
            continue;
        // (1 + c_j z)^dx z^dy t^{dx+dy} = sum_k binom(dx, k) c_j^k z^{k+dy} t^{dx+dy}
        ZPoly term(Scalar(cfg->field(), 0), static_cast<std::size_t>(cfg->size()));
        Scalar binom(1);
        for (int k = 0; k <= dx; ++k) {
            Scalar c = coeff * binom * cj.pow(k);
            if (k + dy == 0)
                term.constant += c;
            else
                term.at(chart, k + dy) += c;
            binom = binom * Scalar(dx - k, k + 1);
        }
        term.trim();
        e.add_t_coefficient(dx + dy, term);
    }
    return e;
}

/**
 * An element t^shift * body of the localization D_J[t^{-1}]; the shift may be
 * negative.
 */
class LocalizedElement {
public:
    LocalizedElement() = default;
    LocalizedElement(AnalyticElement body, int shift = 0) : body_(std::move(body)), shift_(shift) {} // NOLINT

    const AnalyticElement& body() const { return body_; }
    int shift() const { return shift_; }
    int chart() const { return body_.chart(); }
    const ConfigPtr& config() const { return body_.config(); }
    int precision() const { return body_.precision(); }

    bool is_zero() const { return body_.is_zero(); }

    Valuation valuation() const
    {
        Valuation v = body_.valuation();
        return v.is_exact() ? Valuation::exact(v.value() + shift_) : Valuation::at_least(v.value() + shift_);
    }

    LocalizedElement rebased(int j) const { return {body_.rebased(j), shift_}; }

    /// The element as a member of D_I; requires a non-negative total shift.
    AnalyticElement to_analytic() const
    {
        if (shift_ >= 0)
            return body_.times_t_power(shift_);
        const Valuation v = body_.valuation();
        if (v.value() + shift_ < 0)
            throw precondition_error("element has a pole in t");
        return body_.divided_by_t_power(-shift_);
    }

    LocalizedElement operator-() const { return {-body_, shift_}; }

    friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b)
    {
        const int e = std::min(a.shift_, b.shift_);
        return {a.body_.times_t_power(a.shift_ - e) + b.body_.times_t_power(b.shift_ - e), e};
    }
    friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) { return a + (-b); }
    friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b)
    {
        return {a.body_ * b.body_, a.shift_ + b.shift_};
    }
    friend LocalizedElement operator*(const Scalar& s, const LocalizedElement& a) { return {s * a.body_, a.shift_}; }
    LocalizedElement& operator+=(const LocalizedElement& o) { return *this = *this + o; }
    LocalizedElement& operator-=(const LocalizedElement& o) { return *this = *this - o; }
    LocalizedElement& operator*=(const LocalizedElement& o) { return *this = *this * o; }

    LocalizedElement pow(unsigned e) const { return {body_.pow(e), shift_ * static_cast<int>(e)}; }

    friend bool operator==(const LocalizedElement& a, const LocalizedElement& b)
    {
        const int e = std::min(a.shift_, b.shift_);
        return a.body_.times_t_power(a.shift_ - e) == b.body_.times_t_power(b.shift_ - e);
    }
    friend bool operator!=(const LocalizedElement& a, const LocalizedElement& b) { return !(a == b); }

    std::string to_string() const
    {
        return shift_ == 0 ? body_.to_string() : "t^" + std::to_string(shift_) + " * " + body_.to_string();
    }
    friend std::ostream& operator<<(std::ostream& os, const LocalizedElement& f) { return os << f.to_string(); }

private:
    AnalyticElement body_;
    int shift_ = 0;
};

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

namespace detail {

using SPoly = std::vector<Scalar>; // polynomial in s, low to high

inline SPoly times_linear(const SPoly& p, const Scalar& c) // p * (s - c)
{
    SPoly r(p.size() + 1, zero_like(p.empty() ? c : p.front()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + 1] += p[i];
        r[i] -= p[i] * c;
    }
    return r;
}

/// Synthetic division by (s - c); returns (quotient, remainder).
inline std::pair<SPoly, Scalar> divide_linear(const SPoly& p, const Scalar& c)
{
    if (p.empty())
        return {{}, Scalar(0)};
    SPoly q(p.size() - 1, zero_like(c));
    Scalar acc = zero_like(c);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * c + p[i];
        if (i > 0)
            q[i - 1] = acc;
    }
    return {q, acc};
}

inline void trim(SPoly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

} // namespace detail

/**
 * Inverse in K[z_l : l in I] if `a` is a unit there.
 *
 * Units of K[z_l] are exactly kappa * prod_l (s - c_l)^{n_l} with sum n_l = 0.
 * The numerator of `a` over prod_l (s - c_l)^{deg_l a} is factored over the
 * centers; the inverse is rebuilt from the chart-ratio units
 * (s - c_l)/(s - c_r) = 1 + (c_r - c_l) z_r.
 */
inline std::optional<ZPoly> invert_zunit(const ZPoly& a, const std::vector<Scalar>& centers)
{
    using detail::SPoly;
    const Scalar zero = zero_like(a.constant);
    const Scalar one = one_like(a.constant);
    const std::size_t nc = centers.size();
    std::vector<int> deg(nc, 0);
    for (std::size_t l = 0; l < nc && l < a.poles.size(); ++l)
        deg[l] = static_cast<int>(a.poles[l].size());

    auto product_except = [&](std::size_t skip, int skip_exponent) {
        SPoly p{one};
        for (std::size_t m = 0; m < nc; ++m) {
            int e = (m == skip) ? skip_exponent : deg[m];
            for (int i = 0; i < e; ++i)
                p = detail::times_linear(p, centers[m]);
        }
        return p;
    };
    auto add_scaled = [](SPoly& acc, const SPoly& p, const Scalar& s) {
        if (acc.size() < p.size())
            acc.resize(p.size(), zero_like(s));
        for (std::size_t i = 0; i < p.size(); ++i)
            acc[i] += p[i] * s;
    };

    SPoly numerator;
    add_scaled(numerator, product_except(nc, 0), a.constant);
    for (std::size_t l = 0; l < nc && l < a.poles.size(); ++l)
        for (int n = 1; n <= deg[l]; ++n)
            add_scaled(numerator, product_except(l, deg[l] - n), a.poles[l][static_cast<std::size_t>(n - 1)]);
    detail::trim(numerator);
    if (numerator.empty())
        return std::nullopt;

    std::vector<int> zeros(nc, 0);
    for (std::size_t l = 0; l < nc; ++l) {
        while (numerator.size() > 1) {
            auto [q, rem] = detail::divide_linear(numerator, centers[l]);
            if (!rem.is_zero())
                break;
            numerator = std::move(q);
            ++zeros[l];
        }
    }
    if (numerator.size() != 1)
        return std::nullopt; // a zero away from the centers
    int total = 0;
    for (std::size_t l = 0; l < nc; ++l)
        total += zeros[l] - deg[l];
    if (total != 0)
        return std::nullopt; // vanishes at infinity
    const Scalar kappa_inv = numerator[0].inverse();

    // a^{-1} = kappa^{-1} prod_l (s - c_l)^{m_l}, m_l = deg_l - zeros_l, sum m_l = 0.
    const std::size_t ref = 0;
    ZPoly result(kappa_inv, nc);
    for (std::size_t l = 0; l < nc; ++l) {
        if (l == ref)
            continue;
        const int m = deg[l] - zeros[l];
        if (m == 0)
            continue;
        ZPoly factor(one, nc);
        if (m > 0) // (s - c_l)/(s - c_ref) = 1 + (c_ref - c_l) z_ref
            factor.at(static_cast<int>(ref), 1) = centers[ref] - centers[l];
        else // (s - c_ref)/(s - c_l) = 1 + (c_l - c_ref) z_l
            factor.at(static_cast<int>(l), 1) = centers[l] - centers[ref];
        result = multiply(centers, result, power(centers, factor, static_cast<unsigned>(std::abs(m))));
    }
    result.trim();
    return result;
}

/// Inverse of a unit of D_I (its t^0 coefficient must be a unit of K[z]).
inline AnalyticElement unit_invert(const AnalyticElement& f)
{
    const Valuation v = f.valuation();
    if (!v.is_exact() || v.value() != 0)
        throw unit_not_recognized("unit class not recognized: element has positive t-adic valuation");
    const auto& centers = f.cfg().centers();
    auto inv0 = invert_zunit(f.t_coefficient(0), centers);
    if (!inv0)
        throw unit_not_recognized("unit class not recognized: t^0 coefficient is not a unit of K[z]");
    AnalyticElement y(f.config(), f.chart(), f.precision());
    y.add_t_coefficient(0, *inv0);
    const AnalyticElement two = AnalyticElement::constant(f.config(), f.chart(), Scalar(2)).truncated(f.precision());
    // Newton: y <- y (2 - f y) doubles the number of correct t-digits.
    for (int known = 1; known < f.precision(); known *= 2)
        y = y * (two - f * y);
    return y;
}

/// Inverse in D_I[t^{-1}]: t^e * t^v * u with u a unit of D_I.
inline LocalizedElement unit_invert(const LocalizedElement& f)
{
    const Valuation v = f.body().valuation();
    if (!v.is_exact())
        throw unit_not_recognized("unit class not recognized: element vanishes at this precision");
    const AnalyticElement u = f.body().divided_by_t_power(static_cast<int>(v.value()));
    return {unit_invert(u), -f.shift() - static_cast<int>(v.value())};
}

// ---------------------------------------------------------------------------
// Membership and splitting
// ---------------------------------------------------------------------------

/**
 * Whether f lies in D_{J'} + t^N D_I.
 *
 * For J' non-empty: rebase to a chart in J' and compare the z-support.
 * For J' empty (K[[X,Y]]): single-chart support with deg_z(coeff of t^n) <= n,
 * since z_j^m t^n = Y^m (X - c_j Y)^{n-m} for m <= n.
 */
inline bool membership(const AnalyticElement& f, const IndexSet& target)
{
    for (int k : target)
        f.cfg().check_index(k);
    if (!target.empty()) {
        const AnalyticElement g = f.rebased(*target.begin());
        for (int k : g.support())
            if (!target.count(k))
                return false;
        return true;
    }
    const int j = f.chart();
    for (int k : f.support())
        if (k != j)
            return false;
    for (int m = 1; m <= f.zdegree(j); ++m)
        if (f.zcoeff(j, m).order() < m)
            return false;
    return true;
}

struct SplitResult {
    AnalyticElement first;  // in D_J, chart in J
    AnalyticElement second; // in D_J', chart in J'
};

/**
 * f = f1 + f2 with f1 in D_J and f2 in D_J', v(f1), v(f2) >= v(f).
 *
 * f is read in a chart j in J; the t^n-coefficients are split along the
 * partial fraction decomposition, with the z-free part going to f1. f2 is then
 * rebased to a chart in J'.
 */
inline SplitResult split(const AnalyticElement& f, const IndexSet& J, const IndexSet& Jp)
{
    const auto& cfg = f.config();
    for (int k : J)
        cfg->check_index(k);
    for (int k : Jp)
        cfg->check_index(k);
    auto require_support = [](const AnalyticElement& g, const IndexSet& allowed) {
        for (int k : g.support())
            if (!allowed.count(k))
                throw precondition_error("split: support not contained in J u J'");
    };
    if (J.empty() && Jp.empty()) {
        if (!membership(f, {}))
            throw precondition_error("split: element is not in D_{} = K[[X,Y]]");
        return {f, AnalyticElement(cfg, f.chart(), f.precision())};
    }
    if (J.empty()) {
        AnalyticElement g = f.rebased(*Jp.begin());
        require_support(g, Jp);
        return {AnalyticElement(cfg, g.chart(), g.precision()), g};
    }
    const int j = *J.begin();
    const AnalyticElement g = f.rebased(j);
    IndexSet both = J;
    both.insert(Jp.begin(), Jp.end());
    require_support(g, both);
    if (Jp.empty())
        return {g, AnalyticElement(cfg, j, g.precision())};

    AnalyticElement::Form first(g.f0(), static_cast<std::size_t>(cfg->size()));
    AnalyticElement::Form second(zero_like(g.f0()), static_cast<std::size_t>(cfg->size()));
    for (int k = 0; k < cfg->size(); ++k)
        (J.count(k) ? first : second).poles[static_cast<std::size_t>(k)] = g.form().poles[static_cast<std::size_t>(k)];
    AnalyticElement f1 = AnalyticElement::from_form(cfg, j, std::move(first), g.precision());
    AnalyticElement f2 = AnalyticElement::from_form(cfg, j, std::move(second), g.precision());
    return {f1, f2.rebased(*Jp.begin())};
}

} // namespace patchring
