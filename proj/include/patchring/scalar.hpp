#pragma once

/**
 * @file scalar.hpp
 * @brief Exact arithmetic in the base field K.
 *
 * K is either the rationals or a cyclotomic field Q(w) with w a primitive
 * m-th root of unity. Elements of Q(w) are stored as rational coordinates in
 * the power basis 1, w, ..., w^{phi(m)-1}, fully reduced modulo the m-th
 * cyclotomic polynomial, so equality is coordinate-wise.
 *
 * Q(w_m) = Q(w_{2m}) for odd m; descriptors are normalized to an even m so
 * that rationals are cyclotomic(2) and cyclotomic(3) is cyclotomic(6).
 */

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "patchring/error.hpp"

namespace patchring {

namespace detail {

/// Immutable per-field data, interned for the lifetime of the process.
struct field_data {
    unsigned m = 2;                      // normalized (even) conductor
    std::size_t degree = 1;              // phi(m)
    std::vector<mpz_class> modulus;      // monic cyclotomic polynomial, low to high
};

inline std::vector<mpz_class> cyclotomic_polynomial(unsigned m)
{
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<mpz_class> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        auto den = cyclotomic_polynomial(d);
        // exact division by a monic polynomial
        std::size_t dn = den.size() - 1;
        std::vector<mpz_class> quo(num.size() - dn, 0);
        for (std::size_t k = num.size(); k-- > dn;) {
            mpz_class c = num[k];
            quo[k - dn] = c;
            if (c != 0)
                for (std::size_t i = 0; i <= dn; ++i)
                    num[k - dn + i] -= c * den[i];
        }
        num = std::move(quo);
    }
    return num;
}

inline const field_data* intern_field(unsigned m)
{
    if (m == 0)
        throw config_error("cyclotomic conductor must be positive");
    if (m % 2 == 1)
        m *= 2;
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<field_data>> table;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = table[m];
    if (!slot) {
        auto fd = std::make_unique<field_data>();
        fd->m = m;
        fd->modulus = cyclotomic_polynomial(m);
        fd->degree = fd->modulus.size() - 1;
        slot = std::move(fd);
    }
    return slot.get();
}

inline const field_data* rationals_field()
{
    static const field_data* const q = intern_field(2);
    return q;
}

} // namespace detail

class Scalar;

/// Which base field K the computation runs over.
class FieldDescriptor {
public:
    FieldDescriptor() : data_(detail::rationals_field()) {}

    static FieldDescriptor rationals() { return FieldDescriptor(); }
    static FieldDescriptor cyclotomic(unsigned m) { return FieldDescriptor(detail::intern_field(m)); }

    /// Parses "rationals" or "cyclotomic(m)".
    static FieldDescriptor parse(const std::string& text)
    {
        if (text == "rationals" || text == "Q")
            return rationals();
        const std::string prefix = "cyclotomic(";
        if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
            std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
            try {
                std::size_t used = 0;
                long m = std::stol(digits, &used);
                if (used == digits.size() && m > 0 && m <= 64)
                    return cyclotomic(static_cast<unsigned>(m));
            } catch (const std::exception&) {
            }
        }
        throw config_error("unknown field descriptor '" + text + "'");
    }

    bool is_rationals() const { return data_->degree == 1; }
    unsigned conductor() const { return data_->m; }
    std::size_t degree() const { return data_->degree; }
    const std::vector<mpz_class>& modulus() const { return data_->modulus; }

    /// True when K contains a primitive q-th root of unity.
    bool has_root_of_unity(unsigned q) const { return q > 0 && data_->m % q == 0; }

    std::string name() const
    {
        return is_rationals() ? std::string("rationals") : "cyclotomic(" + std::to_string(data_->m) + ")";
    }

    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) { return a.data_ == b.data_; }
    friend bool operator!=(const FieldDescriptor& a, const FieldDescriptor& b) { return a.data_ != b.data_; }

    const detail::field_data* data() const { return data_; }

private:
    friend class Scalar;
    explicit FieldDescriptor(const detail::field_data* d) : data_(d) {}
    const detail::field_data* data_;
};

/// Smallest field containing both a and b (both are cyclotomic).
inline FieldDescriptor field_join(const FieldDescriptor& a, const FieldDescriptor& b)
{
    return FieldDescriptor::cyclotomic(std::lcm(a.conductor(), b.conductor()));
}

/**
 * An exact element of K.
 *
 * Coordinate 0 is held inline so that rational arithmetic never touches the
 * heap beyond GMP itself; higher coordinates live in `rest_` and are present
 * exactly when the field has degree > 1.
 */
class Scalar {
public:
    Scalar() : field_(detail::rationals_field()) {}
    Scalar(long v) : field_(detail::rationals_field()), c0_(v) {} // NOLINT(google-explicit-constructor)
    Scalar(const mpq_class& v) : field_(detail::rationals_field()), c0_(v) { c0_.canonicalize(); } // NOLINT
    Scalar(long num, long den) : field_(detail::rationals_field()), c0_(num, den)
    {
        if (den == 0)
            throw division_by_zero("rational with zero denominator");
        c0_.canonicalize();
    }

    /// The element `v` of the prime field, embedded in `field`.
    Scalar(const FieldDescriptor& field, const mpq_class& v) : field_(field.data()), c0_(v)
    {
        c0_.canonicalize();
        if (field_->degree > 1)
            rest_.assign(field_->degree - 1, mpq_class(0));
    }

    /// From power-basis coordinates; reduces modulo the cyclotomic polynomial.
    static Scalar from_coordinates(const FieldDescriptor& field, std::vector<mpq_class> coords)
    {
        Scalar s(field, 0);
        reduce(field.data(), coords);
        for (auto& c : coords)
            c.canonicalize();
        s.c0_ = coords.empty() ? mpq_class(0) : coords[0];
        for (std::size_t i = 1; i < field.degree(); ++i)
            s.rest_[i - 1] = i < coords.size() ? coords[i] : mpq_class(0);
        return s;
    }

    /// The cyclotomic generator w (x mod Phi_m). For the rationals this is -1.
    static Scalar generator(const FieldDescriptor& field)
    {
        std::vector<mpq_class> c(2, 0);
        c[1] = 1;
        return from_coordinates(field, std::move(c));
    }

    /// Parses "p", "p/q" or "-p/q".
    static Scalar parse(const std::string& text)
    {
        mpq_class q;
        if (text.empty() || q.set_str(text, 10) != 0)
            throw config_error("cannot parse rational '" + text + "'");
        if (q.get_den() == 0)
            throw config_error("rational '" + text + "' has zero denominator");
        q.canonicalize();
        return Scalar(q);
    }

    FieldDescriptor field() const { return descriptor_of(field_); }
    std::size_t degree() const { return field_->degree; }

    mpq_class coordinate(std::size_t i) const
    {
        if (i == 0)
            return c0_;
        return i - 1 < rest_.size() ? rest_[i - 1] : mpq_class(0);
    }
    std::vector<mpq_class> coordinates() const
    {
        std::vector<mpq_class> out;
        out.reserve(field_->degree);
        out.push_back(c0_);
        out.insert(out.end(), rest_.begin(), rest_.end());
        return out;
    }

    bool is_zero() const
    {
        if (sgn(c0_) != 0)
            return false;
        for (const auto& c : rest_)
            if (sgn(c) != 0)
                return false;
        return true;
    }
    bool is_one() const
    {
        if (c0_ != 1)
            return false;
        for (const auto& c : rest_)
            if (sgn(c) != 0)
                return false;
        return true;
    }
    bool is_rational() const
    {
        for (const auto& c : rest_)
            if (sgn(c) != 0)
                return false;
        return true;
    }

    Scalar operator-() const
    {
        Scalar r(*this);
        r.c0_ = -r.c0_;
        for (auto& c : r.rest_)
            c = -c;
        return r;
    }

    Scalar& operator+=(const Scalar& o)
    {
        align(o);
        c0_ += o.c0_;
        for (std::size_t i = 0; i < o.rest_.size(); ++i)
            rest_[i] += o.rest_[i];
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        align(o);
        c0_ -= o.c0_;
        for (std::size_t i = 0; i < o.rest_.size(); ++i)
            rest_[i] -= o.rest_[i];
        return *this;
    }
    Scalar& operator*=(const Scalar& o)
    {
        if (o.rest_.empty()) {
            c0_ *= o.c0_;
            for (auto& c : rest_)
                c *= o.c0_;
            return *this;
        }
        if (rest_.empty()) {
            Scalar r(o);
            r *= *this;
            *this = std::move(r);
            return *this;
        }
        if (field_ != o.field_)
            throw field_mismatch("scalars from " + field().name() + " and " + o.field().name());
        if (o.is_rational()) {
            c0_ *= o.c0_;
            for (auto& c : rest_)
                if (sgn(c) != 0)
                    c *= o.c0_;
            return *this;
        }
        if (is_rational()) {
            const mpq_class a = c0_;
            c0_ = a * o.c0_;
            for (std::size_t i = 0; i < rest_.size(); ++i)
                rest_[i] = a * o.rest_[i];
            return *this;
        }
        const std::size_t n = field_->degree;
        std::vector<mpq_class> prod(2 * n - 1, mpq_class(0));
        auto coord = [](const Scalar& x, std::size_t i) -> const mpq_class& { return i == 0 ? x.c0_ : x.rest_[i - 1]; };
        for (std::size_t i = 0; i < n; ++i) {
            const mpq_class& a = coord(*this, i);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(coord(o, j)) != 0)
                    prod[i + j] += a * coord(o, j);
        }
        *this = from_coordinates(field(), std::move(prod));
        return *this;
    }
    Scalar& operator/=(const Scalar& o)
    {
        *this *= o.inverse();
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const
    {
        if (is_zero())
            throw division_by_zero("inverse of zero scalar");
        if (rest_.empty() || is_rational()) {
            Scalar r(*this);
            r.c0_ = 1 / c0_;
            return r;
        }
        // Solve M y = e_0 where M is multiplication by *this in the power basis.
        const std::size_t n = field_->degree;
        std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1, mpq_class(0)));
        for (std::size_t col = 0; col < n; ++col) {
            std::vector<mpq_class> e(n, mpq_class(0));
            e[col] = 1;
            Scalar basis = from_coordinates(field(), e);
            Scalar img = *this * basis;
            for (std::size_t row = 0; row < n; ++row)
                m[row][col] = img.coordinate(row);
        }
        m[0][n] = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && sgn(m[piv][col]) == 0)
                ++piv;
            if (piv == n)
                throw internal_error("singular multiplication matrix in cyclotomic inverse");
            std::swap(m[piv], m[col]);
            mpq_class p = m[col][col];
            for (auto& v : m[col])
                v /= p;
            for (std::size_t row = 0; row < n; ++row) {
                if (row == col || sgn(m[row][col]) == 0)
                    continue;
                mpq_class f = m[row][col];
                for (std::size_t k = col; k <= n; ++k)
                    m[row][k] -= f * m[col][k];
            }
        }
        std::vector<mpq_class> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = m[i][n];
        return from_coordinates(field(), std::move(y));
    }

    Scalar pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        Scalar result(field(), 1);
        Scalar base(*this);
        while (e > 0) {
            if (e & 1)
                result *= base;
            e >>= 1;
            if (e > 0)
                base *= base;
        }
        return result;
    }

    /// Same value, expressed in a field that contains this one.
    Scalar embedded_in(const FieldDescriptor& target) const
    {
        if (target.data() == field_)
            return *this;
        if (!is_rational())
            throw field_mismatch("cannot embed " + field().name() + " element into " + target.name());
        return Scalar(target, c0_);
    }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (a.c0_ != b.c0_)
            return false;
        const std::size_t n = std::max(a.rest_.size(), b.rest_.size());
        for (std::size_t i = 0; i < n; ++i) {
            mpq_class x = i < a.rest_.size() ? a.rest_[i] : mpq_class(0);
            mpq_class y = i < b.rest_.size() ? b.rest_[i] : mpq_class(0);
            if (x != y)
                return false;
        }
        if (!a.rest_.empty() && !b.rest_.empty() && a.field_ != b.field_)
            return false;
        return true;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const
    {
        if (rest_.empty() || is_rational())
            return c0_.get_str();
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < field_->degree; ++i) {
            mpq_class c = coordinate(i);
            if (sgn(c) == 0)
                continue;
            if (!first)
                os << (sgn(c) > 0 ? " + " : " - ");
            else if (sgn(c) < 0)
                os << "-";
            mpq_class ac = abs(c);
            if (i == 0)
                os << ac.get_str();
            else {
                if (ac != 1)
                    os << ac.get_str() << "*";
                os << "w";
                if (i > 1)
                    os << "^" << i;
            }
            first = false;
        }
        return first ? "0" : os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    static FieldDescriptor descriptor_of(const detail::field_data* fd) { return FieldDescriptor(fd); }

    static void reduce(const detail::field_data* fd, std::vector<mpq_class>& coords)
    {
        const std::size_t n = fd->degree;
        for (std::size_t k = coords.size(); k-- > n;) {
            mpq_class c = coords[k];
            if (sgn(c) == 0)
                continue;
            for (std::size_t i = 0; i <= n; ++i)
                coords[k - n + i] -= c * fd->modulus[i];
        }
        coords.resize(n, mpq_class(0));
    }

    // Promotes *this so that `o` can be added in place.
    void align(const Scalar& o)
    {
        if (o.rest_.empty() || o.field_ == field_)
            return;
        if (rest_.empty()) {
            field_ = o.field_;
            rest_.assign(field_->degree - 1, mpq_class(0));
            return;
        }
        throw field_mismatch("scalars from " + field().name() + " and " + o.field().name());
    }

    const detail::field_data* field_;
    mpq_class c0_{0};
    std::vector<mpq_class> rest_;
};

inline Scalar zero_like(const Scalar& s) { return Scalar(s.field(), 0); }
inline bool is_zero(const Scalar& s) { return s.is_zero(); }

/// A primitive q-th root of unity in K.
inline Scalar root_of_unity(unsigned q, const FieldDescriptor& field)
{
    if (!field.has_root_of_unity(q))
        throw config_error(field.name() + " does not contain a primitive " + std::to_string(q) +
                           "-th root of unity");
    return Scalar::generator(field).pow(static_cast<long>(field.conductor() / q));
}

} // namespace patchring
