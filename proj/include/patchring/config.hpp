#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "patchring/error.hpp"
#include "patchring/scalar.hpp"

namespace patchring {

/// A subset J of the index set I = {0, ..., |I|-1}.
using IndexSet = std::set<int>;

/**
 * The data fixed once per computation: the base field, the pairwise distinct
 * centers c_i (one per index i in I) and the working precision N in powers of
 * the uniformizer.
 */
class Configuration {
public:
    Configuration(FieldDescriptor field, const std::vector<Scalar>& centers, int precision)
        : field_(field), precision_(precision)
    {
        if (centers.empty())
            throw config_error("at least one center is required");
        if (precision < 1)
            throw config_error("precision must be positive");
        for (const auto& c : centers)
            centers_.push_back(c.embedded_in(field_));
        for (std::size_t a = 0; a < centers_.size(); ++a)
            for (std::size_t b = a + 1; b < centers_.size(); ++b)
                if (centers_[a] == centers_[b])
                    throw config_error("centers must be distinct");
    }

    static std::shared_ptr<const Configuration> make(FieldDescriptor field, const std::vector<Scalar>& centers,
                                                     int precision)
    {
        return std::make_shared<const Configuration>(field, centers, precision);
    }

    /// Rationals, centers 0, 1, ..., count-1.
    static std::shared_ptr<const Configuration> standard(int count, int precision,
                                                         FieldDescriptor field = FieldDescriptor())
    {
        std::vector<Scalar> c;
        for (int i = 0; i < count; ++i)
            c.emplace_back(i);
        return make(field, c, precision);
    }

    const FieldDescriptor& field() const { return field_; }
    const std::vector<Scalar>& centers() const { return centers_; }
    const Scalar& center(int k) const { return centers_.at(static_cast<std::size_t>(k)); }
    int size() const { return static_cast<int>(centers_.size()); }
    int precision() const { return precision_; }

    IndexSet all_indices() const
    {
        IndexSet s;
        for (int k = 0; k < size(); ++k)
            s.insert(k);
        return s;
    }

    bool valid_index(int k) const { return k >= 0 && k < size(); }
    void check_index(int k) const
    {
        if (!valid_index(k))
            throw precondition_error("index " + std::to_string(k) + " is not in I");
    }

    /// Same centers, different field or precision.
    std::shared_ptr<const Configuration> with_field(FieldDescriptor f) const { return make(f, centers_, precision_); }
    std::shared_ptr<const Configuration> with_precision(int n) const { return make(field_, centers_, n); }

private:
    FieldDescriptor field_;
    std::vector<Scalar> centers_;
    int precision_;
};

using ConfigPtr = std::shared_ptr<const Configuration>;

inline bool same_configuration(const Configuration& a, const Configuration& b)
{
    return &a == &b ||
           (a.field() == b.field() && a.centers() == b.centers() && a.precision() == b.precision());
}

} // namespace patchring
