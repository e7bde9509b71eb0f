#pragma once

/**
 * @file kummer.hpp
 * @brief q-th roots in D_J and arithmetic in Kummer extensions L = F(alpha), alpha^q = a.
 *
 * Elements of L are coordinate vectors (b_0, ..., b_{q-1}) over D_J[t^{-1}] in
 * the basis 1, alpha, ..., alpha^{q-1}. A generator sigma of Gal(L/F) acts by
 * alpha -> zeta alpha for a fixed primitive q-th root of unity zeta in K.
 */

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patchring/analytic.hpp"
#include "patchring/error.hpp"
#include "patchring/prime.hpp"
#include "patchring/scalar.hpp"

namespace patchring {

/**
 * The q-th root s of a with s = 1 mod t, for a = 1 mod t. Newton iteration
 * s <- s - (s^q - a) / (q s^{q-1}); the derivative is 1 mod t up to the factor q.
 */
inline AnalyticElement hensel_root(const AnalyticElement& a, unsigned q)
{
    if (q == 0)
        throw precondition_error("hensel_root: q must be positive");
    const auto& cfg = a.config();
    const AnalyticElement one = AnalyticElement::one(cfg, a.chart()).truncated(a.precision());
    if (!(a.truncated(1) == one.truncated(1)))
        throw precondition_error("hensel_root: radicand must be 1 modulo t");
    const Scalar q_inv = Scalar(1, static_cast<long>(q)).embedded_in(cfg->field());
    const int n = a.precision();
    AnalyticElement s = one;
    for (int known = 1; known < n; known *= 2) {
        const int target = std::min(2 * known, n);
        const AnalyticElement s_low = s.truncated(target).padded(target);
        const AnalyticElement s_pow = s_low.pow(q - 1);
        const AnalyticElement residual = s_pow * s_low - a.truncated(target);
        s = s_low - q_inv * (residual * unit_invert(s_pow));
    }
    return s;
}

/// L = F(alpha) with alpha^q = radicand; F is the fraction field of D_J.
class KummerExtension {
public:
    KummerExtension(LocalizedElement radicand, unsigned degree)
        : radicand_(std::move(radicand)), degree_(degree)
    {
        if (degree_ < 1)
            throw precondition_error("Kummer extension: degree must be positive");
        if (radicand_.is_zero())
            throw precondition_error("Kummer extension: radicand must be nonzero");
        zeta_ = root_of_unity(degree_, radicand_.config()->field());
    }

    unsigned degree() const { return degree_; }
    const LocalizedElement& radicand() const { return radicand_; }
    const Scalar& zeta() const { return zeta_; }
    const ConfigPtr& config() const { return radicand_.config(); }
    int chart() const { return radicand_.chart(); }

private:
    LocalizedElement radicand_;
    unsigned degree_;
    Scalar zeta_;
};

using KummerPtr = std::shared_ptr<const KummerExtension>;

inline KummerPtr make_kummer(LocalizedElement radicand, unsigned degree)
{
    return std::make_shared<const KummerExtension>(std::move(radicand), degree);
}

class KummerElement {
public:
    KummerElement() = default;

    /// Missing coordinates are zero; all coordinates are moved to the radicand's chart.
    KummerElement(KummerPtr ext, std::vector<LocalizedElement> coords) : ext_(std::move(ext))
    {
        if (coords.size() > ext_->degree())
            throw precondition_error("Kummer element: more coordinates than the extension degree");
        coords_.reserve(ext_->degree());
        for (auto& c : coords)
            coords_.push_back(c.rebased(ext_->chart()));
        while (coords_.size() < ext_->degree())
            coords_.push_back(zero_coordinate());
    }

    static KummerElement base(const KummerPtr& ext, const LocalizedElement& b0) { return KummerElement(ext, {b0}); }

    /// alpha itself.
    static KummerElement generator(const KummerPtr& ext)
    {
        KummerElement x(ext, {});
        const LocalizedElement one(AnalyticElement::one(ext->config(), ext->chart()));
        if (ext->degree() == 1)
            x.coords_[0] = ext->radicand();
        else
            x.coords_[1] = one;
        return x;
    }

    const KummerPtr& extension() const { return ext_; }
    unsigned degree() const { return ext_->degree(); }
    const LocalizedElement& coordinate(unsigned n) const { return coords_.at(n); }
    const std::vector<LocalizedElement>& coordinates() const { return coords_; }

    bool is_zero() const
    {
        for (const auto& c : coords_)
            if (!c.is_zero())
                return false;
        return true;
    }

    friend KummerElement operator+(const KummerElement& x, const KummerElement& y)
    {
        check_same(x, y);
        KummerElement r(x);
        for (std::size_t n = 0; n < r.coords_.size(); ++n)
            r.coords_[n] = r.coords_[n] + y.coords_[n];
        return r;
    }
    friend KummerElement operator-(const KummerElement& x, const KummerElement& y)
    {
        check_same(x, y);
        KummerElement r(x);
        for (std::size_t n = 0; n < r.coords_.size(); ++n)
            r.coords_[n] = r.coords_[n] - y.coords_[n];
        return r;
    }

    friend KummerElement operator*(const KummerElement& x, const KummerElement& y);

    friend bool operator==(const KummerElement& x, const KummerElement& y)
    {
        if (x.ext_ != y.ext_)
            return false;
        for (std::size_t n = 0; n < x.coords_.size(); ++n)
            if (x.coords_[n] != y.coords_[n])
                return false;
        return true;
    }
    friend bool operator!=(const KummerElement& x, const KummerElement& y) { return !(x == y); }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t n = 0; n < coords_.size(); ++n)
            s += (n ? " | alpha^" + std::to_string(n) + ": " : "1: ") + coords_[n].to_string();
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const KummerElement& x) { return os << x.to_string(); }

private:
    friend KummerElement galois_act(long l, const KummerElement& x);

    LocalizedElement zero_coordinate() const
    {
        return LocalizedElement(AnalyticElement::zero(ext_->config(), ext_->chart()));
    }

    static void check_same(const KummerElement& x, const KummerElement& y)
    {
        if (!x.ext_ || x.ext_ != y.ext_)
            throw precondition_error("Kummer elements belong to different extensions");
    }

    KummerPtr ext_;
    std::vector<LocalizedElement> coords_;
};

/// Coordinate convolution with alpha^q -> a.
inline KummerElement operator*(const KummerElement& x, const KummerElement& y)
{
    KummerElement::check_same(x, y);
    const unsigned q = x.degree();
    std::vector<std::optional<LocalizedElement>> low(q), high(q);
    for (unsigned m = 0; m < q; ++m) {
        if (x.coords_[m].is_zero())
            continue;
        for (unsigned n = 0; n < q; ++n) {
            if (y.coords_[n].is_zero())
                continue;
            const LocalizedElement p = x.coords_[m] * y.coords_[n];
            auto& slot = m + n < q ? low[m + n] : high[m + n - q];
            slot = slot ? *slot + p : p;
        }
    }
    KummerElement r(x.ext_, {});
    for (unsigned n = 0; n < q; ++n) {
        if (high[n])
            low[n] = low[n] ? *low[n] + x.ext_->radicand() * *high[n] : x.ext_->radicand() * *high[n];
        if (low[n])
            r.coords_[n] = *low[n];
    }
    return r;
}

inline KummerElement kummer_mul(const KummerElement& x, const KummerElement& y) { return x * y; }

/// sigma^l x: b_n -> zeta^{l n} b_n.
inline KummerElement galois_act(long l, const KummerElement& x)
{
    const long q = static_cast<long>(x.degree());
    const long e = ((l % q) + q) % q;
    KummerElement r(x);
    for (long n = 1; n < q; ++n)
        r.coords_[static_cast<std::size_t>(n)] =
            x.ext_->zeta().pow((e * n) % q) * x.coords_[static_cast<std::size_t>(n)];
    return r;
}

/**
 * N(x) = prod_l sigma^l x, which lies in the base. The product is taken along a
 * chain of subgroups <sigma^{Q/d}>, one prime factor of Q at a time; the
 * partial products have coordinates only at multiples of Q/d.
 */
inline LocalizedElement norm(const KummerElement& x)
{
    const long q = static_cast<long>(x.degree());
    KummerElement acc = x;
    long covered = 1;
    for (long rest = q; rest > 1;) {
        long p = 2;
        while (rest % p != 0)
            ++p;
        rest /= p;
        const long step = q / (covered * p);
        const KummerElement y = acc;
        for (long u = 1; u < p; ++u)
            acc = acc * galois_act(u * step, y);
        covered *= p;
    }
    for (unsigned n = 1; n < acc.degree(); ++n)
        if (!acc.coordinate(n).is_zero())
            throw internal_error("norm: coordinate of alpha^" + std::to_string(n) + " does not vanish");
    return acc.coordinate(0);
}

/**
 * min_n v(b_n): the extension of the prime valuation when the coordinates
 * b_n alpha^n have pairwise distinct residues, as in the unramified case.
 */
inline int ext_valuation(const KummerElement& x, const PrimePoint& pt)
{
    std::optional<int> best;
    for (const auto& c : x.coordinates())
        if (!c.is_zero()) {
            const int v = prime_valuation(c, pt);
            best = best ? std::min(*best, v) : v;
        }
    if (!best)
        throw precision_exhausted("ext_valuation: element is indistinguishable from 0 at this precision");
    return *best;
}

} // namespace patchring
