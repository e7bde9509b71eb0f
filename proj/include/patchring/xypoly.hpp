#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "patchring/scalar.hpp"

namespace patchring {

/// A polynomial in X, Y over K, keyed by (deg_X, deg_Y).
class XYPoly {
public:
    using Key = std::pair<int, int>;

    XYPoly() = default;

    static XYPoly constant(const Scalar& c) { return monomial(c, 0, 0); }
    static XYPoly X() { return monomial(Scalar(1), 1, 0); }
    static XYPoly Y() { return monomial(Scalar(1), 0, 1); }
    static XYPoly monomial(const Scalar& c, int dx, int dy)
    {
        XYPoly p;
        p.add_term(dx, dy, c);
        return p;
    }

    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int dx, int dy, const Scalar& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.emplace(Key{dx, dy}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    int total_degree() const
    {
        int d = -1;
        for (const auto& [k, c] : terms_)
            d = std::max(d, k.first + k.second);
        return d;
    }

    XYPoly& operator+=(const XYPoly& o)
    {
        for (const auto& [k, c] : o.terms_)
            add_term(k.first, k.second, c);
        return *this;
    }
    XYPoly& operator-=(const XYPoly& o)
    {
        for (const auto& [k, c] : o.terms_)
            add_term(k.first, k.second, -c);
        return *this;
    }
    friend XYPoly operator+(XYPoly a, const XYPoly& b) { return a += b; }
    friend XYPoly operator-(XYPoly a, const XYPoly& b) { return a -= b; }
    friend XYPoly operator*(const XYPoly& a, const XYPoly& b)
    {
        XYPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend XYPoly operator*(const Scalar& s, const XYPoly& a)
    {
        XYPoly r;
        for (const auto& [k, c] : a.terms_)
            r.add_term(k.first, k.second, s * c);
        return r;
    }
    XYPoly pow(unsigned e) const
    {
        XYPoly r = constant(Scalar(1));
        for (unsigned i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

    friend bool operator==(const XYPoly& a, const XYPoly& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c << ")";
            if (k.first > 0)
                os << "*X^" << k.first;
            if (k.second > 0)
                os << "*Y^" << k.second;
        }
        return os.str();
    }

private:
    std::map<Key, Scalar> terms_;
};

} // namespace patchring
