#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "patchring/analytic.hpp"
#include "patchring/error.hpp"

namespace patchring {

namespace detail {

inline AnalyticElement make_zero(const ConfigPtr& cfg, int chart, const AnalyticElement*)
{
    return AnalyticElement::zero(cfg, chart);
}
inline LocalizedElement make_zero(const ConfigPtr& cfg, int chart, const LocalizedElement*)
{
    return LocalizedElement(AnalyticElement::zero(cfg, chart));
}
inline AnalyticElement make_one(const ConfigPtr& cfg, int chart, const AnalyticElement*)
{
    return AnalyticElement::one(cfg, chart);
}
inline LocalizedElement make_one(const ConfigPtr& cfg, int chart, const LocalizedElement*)
{
    return LocalizedElement(AnalyticElement::one(cfg, chart));
}

} // namespace detail

/// An n x n matrix over D_I (E = AnalyticElement) or D_I[t^{-1}] (E = LocalizedElement).
template <class E>
class Matrix {
public:
    Matrix() = default;

    Matrix(ConfigPtr cfg, int chart, int n) : cfg_(std::move(cfg)), chart_(chart), n_(n)
    {
        if (n_ < 1)
            throw precondition_error("matrix dimension must be positive");
        entries_.assign(static_cast<std::size_t>(n_ * n_), detail::make_zero(cfg_, chart_, static_cast<E*>(nullptr)));
    }

    static Matrix identity(const ConfigPtr& cfg, int chart, int n)
    {
        Matrix m(cfg, chart, n);
        for (int r = 0; r < n; ++r)
            m(r, r) = detail::make_one(cfg, chart, static_cast<E*>(nullptr));
        return m;
    }

    int dim() const { return n_; }
    int chart() const { return chart_; }
    const ConfigPtr& config() const { return cfg_; }

    E& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r * n_ + c)]; }
    const E& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * n_ + c)]; }

    /// Stores e in the matrix chart.
    void set(int r, int c, const E& e) { (*this)(r, c) = e.rebased(chart_); }

    Matrix rebased(int j) const
    {
        Matrix m(cfg_, j, n_);
        for (std::size_t k = 0; k < entries_.size(); ++k)
            m.entries_[k] = entries_[k].rebased(j);
        return m;
    }

    /// Minimum valuation over the entries (the max-norm in additive form).
    Valuation valuation() const
    {
        Valuation v = entries_.front().valuation();
        for (const auto& e : entries_)
            v = min(v, e.valuation());
        return v;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        a.check_dims(b);
        Matrix r(a);
        for (std::size_t k = 0; k < r.entries_.size(); ++k)
            r.entries_[k] = r.entries_[k] + b.entries_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        a.check_dims(b);
        Matrix r(a);
        for (std::size_t k = 0; k < r.entries_.size(); ++k)
            r.entries_[k] = r.entries_[k] - b.entries_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a)
    {
        Matrix r(a);
        for (auto& e : r.entries_)
            e = -e;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b_in)
    {
        a.check_dims(b_in);
        const Matrix b = b_in.chart_ == a.chart_ ? b_in : b_in.rebased(a.chart_);
        Matrix r(a.cfg_, a.chart_, a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                bool first = true;
                for (int k = 0; k < a.n_; ++k) {
                    if (a(i, k).is_zero() || b(k, j).is_zero())
                        continue;
                    E p = a(i, k) * b(k, j);
                    r(i, j) = first ? p : r(i, j) + p;
                    first = false;
                }
            }
        return r;
    }
    friend Matrix operator*(const E& s, const Matrix& a)
    {
        Matrix r(a);
        for (auto& e : r.entries_)
            e = s * e;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        if (a.n_ != b.n_)
            return false;
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            if (!(a.entries_[k] == b.entries_[k]))
                return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string to_string() const
    {
        std::ostringstream os;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                os << "[" << r << "," << c << "] " << (*this)(r, c).to_string() << "\n";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << "\n" << m.to_string(); }

private:
    void check_dims(const Matrix& o) const
    {
        if (n_ != o.n_)
            throw precondition_error("matrix dimension mismatch");
        if (!same_configuration(*cfg_, *o.cfg_))
            throw precondition_error("matrices belong to different configurations");
    }

    ConfigPtr cfg_;
    int chart_ = 0;
    int n_ = 0;
    std::vector<E> entries_;
};

using AnalyticMatrix = Matrix<AnalyticElement>;
using PatchMatrix = Matrix<LocalizedElement>;

inline AnalyticMatrix to_analytic(const PatchMatrix& m)
{
    AnalyticMatrix r(m.config(), m.chart(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = m(i, j).to_analytic();
    return r;
}

inline PatchMatrix to_localized(const AnalyticMatrix& m, int shift = 0)
{
    PatchMatrix r(m.config(), m.chart(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = LocalizedElement(m(i, j), shift);
    return r;
}

/// Matrix with every entry truncated to the given precision.
inline AnalyticMatrix truncated(const AnalyticMatrix& m, int precision)
{
    AnalyticMatrix r(m);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = m(i, j).truncated(precision);
    return r;
}

namespace detail {

template <class E>
E minor_det(const Matrix<E>& m, std::vector<int>& rows, std::vector<int>& cols)
{
    if (rows.size() == 1)
        return m(rows[0], cols[0]);
    const int r = rows.front();
    rows.erase(rows.begin());
    E acc = detail::make_zero(m.config(), m.chart(), static_cast<E*>(nullptr));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const E& entry = m(r, cols[k]);
        if (entry.is_zero())
            continue;
        const int c = cols[k];
        cols.erase(cols.begin() + static_cast<long>(k));
        const E sub = minor_det(m, rows, cols);
        cols.insert(cols.begin() + static_cast<long>(k), c);
        acc = (k % 2 == 0) ? acc + entry * sub : acc - entry * sub;
    }
    rows.insert(rows.begin(), r);
    return acc;
}

} // namespace detail

/// Determinant by Laplace expansion along the first row.
template <class E>
E det(const Matrix<E>& m)
{
    std::vector<int> rows, cols;
    for (int k = 0; k < m.dim(); ++k) {
        rows.push_back(k);
        cols.push_back(k);
    }
    return detail::minor_det(m, rows, cols);
}

/// Adjugate: adj(m) m = m adj(m) = det(m) 1.
template <class E>
Matrix<E> adjugate(const Matrix<E>& m)
{
    const int n = m.dim();
    Matrix<E> adj(m.config(), m.chart(), n);
    if (n == 1) {
        adj(0, 0) = detail::make_one(m.config(), m.chart(), static_cast<E*>(nullptr));
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < n; ++k) {
                if (k != j)
                    rows.push_back(k);
                if (k != i)
                    cols.push_back(k);
            }
            const E minor = detail::minor_det(m, rows, cols);
            adj(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    return adj;
}

/// Inverse of a matrix with v(a - 1) >= 1, by Newton iteration y <- y(2 - a y).
inline AnalyticMatrix invert_near_identity(const AnalyticMatrix& a)
{
    const int n = a.dim();
    const AnalyticMatrix id = AnalyticMatrix::identity(a.config(), a.chart(), n);
    const AnalyticMatrix m = a - id;
    const Valuation v = m.valuation();
    if (v.value() < 1)
        throw precondition_error("invert_near_identity: requires v(a - 1) >= 1");
    const int precision = a(0, 0).precision();
    AnalyticMatrix y = id - m;
    const AnalyticMatrix two = id + id;
    // each step doubles the number of correct t-coefficients, so it only needs that many
    for (long known = 2 * v.value(); known < precision; known *= 2) {
        const int target = static_cast<int>(std::min<long>(2 * known, precision));
        AnalyticMatrix y_low(y);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                y_low(r, c) = y(r, c).truncated(target).padded(target);
        y = y_low * (truncated(two, target) - truncated(a, target) * y_low);
    }
    return truncated(y, precision);
}

} // namespace patchring
