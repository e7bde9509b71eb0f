#pragma once

#include <array>
#include <string>
#include <utility>

#include "patchring/error.hpp"

namespace patchring {

/// x0 + x1 i + x2 j + x3 ij over a commutative ring R.
template <class R>
struct Quaternion {
    std::array<R, 4> c;
};

/// The symbol algebra (a, b)_2: i^2 = a, j^2 = b, ji = -ij.
template <class R>
class QuaternionAlgebra {
public:
    QuaternionAlgebra(R a, R b, unsigned q = 2, unsigned q_prime = 2) : a_(std::move(a)), b_(std::move(b))
    {
        if (q != 2 || q_prime != 2)
            throw precondition_error("quaternion arithmetic supports only (a, b)_2, got q = " + std::to_string(q) +
                                     ", q' = " + std::to_string(q_prime));
    }

    const R& a() const { return a_; }
    const R& b() const { return b_; }

    Quaternion<R> mul(const Quaternion<R>& x, const Quaternion<R>& y) const
    {
        const auto& [x0, x1, x2, x3] = x.c;
        const auto& [y0, y1, y2, y3] = y.c;
        const R ab = a_ * b_;
        return {{x0 * y0 + a_ * (x1 * y1) + b_ * (x2 * y2) - ab * (x3 * y3),
                 x0 * y1 + x1 * y0 - b_ * (x2 * y3) + b_ * (x3 * y2),
                 x0 * y2 + x2 * y0 + a_ * (x1 * y3) - a_ * (x3 * y1),
                 x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1}};
    }

    /// x0^2 - a x1^2 - b x2^2 + ab x3^2; multiplicative.
    R reduced_norm(const Quaternion<R>& x) const
    {
        const auto& [x0, x1, x2, x3] = x.c;
        return x0 * x0 - a_ * (x1 * x1) - b_ * (x2 * x2) + (a_ * b_) * (x3 * x3);
    }

private:
    R a_;
    R b_;
};

template <class R>
Quaternion<R> quaternion_mul(const Quaternion<R>& x, const Quaternion<R>& y, const R& a, const R& b)
{
    return QuaternionAlgebra<R>(a, b).mul(x, y);
}

} // namespace patchring
