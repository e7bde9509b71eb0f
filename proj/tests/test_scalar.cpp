#include <random>

#include <gtest/gtest.h>

#include "patchring/scalar.hpp"

using patchring::FieldDescriptor;
using patchring::Scalar;

namespace {

Scalar random_scalar(std::mt19937& rng, const FieldDescriptor& field)
{
    std::vector<mpq_class> c;
    for (std::size_t i = 0; i < field.degree(); ++i)
        c.emplace_back(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 5) + 1);
    return Scalar::from_coordinates(field, c);
}

} // namespace

TEST(Scalar, RationalDivision)
{
    EXPECT_EQ(Scalar(1) / Scalar(3, 5), Scalar(5, 3));
    EXPECT_THROW(Scalar(1) / Scalar(0), patchring::division_by_zero);
}

TEST(Scalar, CyclotomicGeneratorSquaresToMinusOne)
{
    const auto k = FieldDescriptor::cyclotomic(4);
    const Scalar w = Scalar::generator(k);
    EXPECT_EQ(w * w, Scalar(k, -1));
    EXPECT_EQ(w * w, Scalar(-1)); // rational scalars embed
}

TEST(Scalar, AdditiveInverse)
{
    const Scalar x(7, 3);
    EXPECT_TRUE((x + (-x)).is_zero());
}

TEST(Scalar, OddConductorIsNormalized)
{
    EXPECT_EQ(FieldDescriptor::cyclotomic(3), FieldDescriptor::cyclotomic(6));
    EXPECT_EQ(FieldDescriptor::cyclotomic(1), FieldDescriptor::rationals());
    EXPECT_TRUE(FieldDescriptor::cyclotomic(2).is_rationals());
}

TEST(Scalar, ParseDescriptors)
{
    EXPECT_EQ(FieldDescriptor::parse("rationals"), FieldDescriptor::rationals());
    EXPECT_EQ(FieldDescriptor::parse("cyclotomic(4)"), FieldDescriptor::cyclotomic(4));
    EXPECT_THROW(FieldDescriptor::parse("reals"), patchring::config_error);
    EXPECT_EQ(Scalar::parse("-3/6"), Scalar(-1, 2));
    EXPECT_THROW(Scalar::parse("1/0"), patchring::config_error);
    EXPECT_THROW(Scalar::parse("x"), patchring::config_error);
}

TEST(Scalar, MismatchedFieldsThrow)
{
    const Scalar a = Scalar::generator(FieldDescriptor::cyclotomic(4));
    const Scalar b = Scalar::generator(FieldDescriptor::cyclotomic(6));
    EXPECT_THROW(a + b, patchring::field_mismatch);
    EXPECT_THROW(a * b, patchring::field_mismatch);
}

TEST(RootOfUnity, Examples)
{
    EXPECT_EQ(patchring::root_of_unity(2, FieldDescriptor::rationals()), Scalar(-1));
    const auto k4 = FieldDescriptor::cyclotomic(4);
    EXPECT_EQ(patchring::root_of_unity(4, k4), Scalar::generator(k4));
    EXPECT_THROW(patchring::root_of_unity(4, FieldDescriptor::rationals()), patchring::config_error);
}

TEST(RootOfUnity, PrimitiveForEverySupportedOrder)
{
    for (unsigned m : {2u, 4u, 6u, 8u, 10u, 12u}) {
        const auto k = FieldDescriptor::cyclotomic(m);
        for (unsigned q = 1; q <= m; ++q) {
            if (m % q != 0) {
                EXPECT_THROW(patchring::root_of_unity(q, k), patchring::config_error);
                continue;
            }
            const Scalar z = patchring::root_of_unity(q, k);
            EXPECT_TRUE(z.pow(q).is_one()) << "m=" << m << " q=" << q;
            for (unsigned e = 1; e < q; ++e)
                EXPECT_FALSE(z.pow(e).is_one()) << "m=" << m << " q=" << q << " e=" << e;
        }
    }
}

TEST(ScalarProperty, FieldAxioms)
{
    std::mt19937 rng(7);
    for (const auto& k : {FieldDescriptor::rationals(), FieldDescriptor::cyclotomic(4), FieldDescriptor::cyclotomic(12)}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Scalar a = random_scalar(rng, k), b = random_scalar(rng, k), c = random_scalar(rng, k);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a * b, b * a);
            if (!a.is_zero())
                EXPECT_TRUE((a * a.inverse()).is_one());
            EXPECT_EQ(a - a, Scalar(k, 0));
        }
    }
}
