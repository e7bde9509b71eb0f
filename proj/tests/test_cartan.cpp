#include <chrono>

#include <gtest/gtest.h>

#include "patchring/cartan.hpp"
#include "patchring/random.hpp"

using namespace patchring;

namespace {

AnalyticMatrix e12(const ConfigPtr& cfg, int chart, int n, const AnalyticElement& x)
{
    AnalyticMatrix m = AnalyticMatrix::identity(cfg, chart, n);
    m(0, 1) = x;
    return m;
}

AnalyticMatrix random_near_identity(Rng& rng, const ConfigPtr& cfg, int n, int chart)
{
    AnalyticMatrix m = AnalyticMatrix::identity(cfg, chart, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m(r, c) = m(r, c) + random_element(rng, cfg, chart,
                                               {.max_zdegree = 2, .min_torder = 1, .max_tdegree = 3, .density = 50});
    return m;
}

} // namespace

TEST(Matrix, Basics)
{
    const auto cfg = Configuration::standard(3, 8);
    Rng rng(1);
    const AnalyticMatrix id = AnalyticMatrix::identity(cfg, 0, 2);
    const AnalyticMatrix a = random_near_identity(rng, cfg, 2, 0);
    EXPECT_EQ(a * id, a);
    const AnalyticElement t = AnalyticElement::uniformizer(cfg, 0);
    const AnalyticMatrix n = e12(cfg, 0, 2, t);
    EXPECT_EQ(n * n, e12(cfg, 0, 2, t + t));
}

TEST(Matrix, Associativity)
{
    const auto cfg = Configuration::standard(3, 8);
    Rng rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const AnalyticMatrix a = random_near_identity(rng, cfg, 2, 0);
        const AnalyticMatrix b = random_near_identity(rng, cfg, 2, 1);
        const AnalyticMatrix c = random_near_identity(rng, cfg, 2, 2);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Matrix, InvertNearIdentity)
{
    const auto cfg = Configuration::standard(3, 8);
    const AnalyticMatrix id = AnalyticMatrix::identity(cfg, 0, 2);
    EXPECT_EQ(invert_near_identity(id), id);
    const AnalyticElement t = AnalyticElement::uniformizer(cfg, 0);
    EXPECT_EQ(invert_near_identity(e12(cfg, 0, 2, t)), e12(cfg, 0, 2, -t));
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const AnalyticMatrix a = random_near_identity(rng, cfg, 3, 1);
        EXPECT_EQ(a * invert_near_identity(a), AnalyticMatrix::identity(cfg, 1, 3));
    }
    AnalyticMatrix bad = id;
    bad(0, 1) = AnalyticElement::one(cfg, 0);
    EXPECT_THROW(invert_near_identity(bad), precondition_error);
}

TEST(Matrix, DeterminantAndAdjugate)
{
    const auto cfg = Configuration::standard(3, 8);
    Rng rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        AnalyticMatrix a(cfg, 0, 3), b(cfg, 0, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                a(r, c) = random_element(rng, cfg, 0, {.max_zdegree = 1, .max_tdegree = 2});
                b(r, c) = random_element(rng, cfg, 0, {.max_zdegree = 1, .max_tdegree = 2});
            }
        EXPECT_EQ(det(a * b), det(a) * det(b));
        const AnalyticElement d = det(a);
        AnalyticMatrix scalar(cfg, 0, 3);
        for (int r = 0; r < 3; ++r)
            scalar(r, r) = d;
        EXPECT_EQ(a * adjugate(a), scalar);
    }
}

TEST(Cartan, Identity)
{
    const auto cfg = Configuration::standard(3, 8);
    const PatchMatrix id = PatchMatrix::identity(cfg, 0, 2);
    const auto res = cartan_factor(id, 2);
    EXPECT_EQ(res.b1, id);
    EXPECT_EQ(res.b2, id);
    EXPECT_EQ(res.rounds, 0);
}

TEST(Cartan, OneSided)
{
    const auto cfg = Configuration::standard(3, 8);
    const AnalyticElement t = AnalyticElement::uniformizer(cfg, 0);
    const AnalyticElement z0 = z_generator(0, 0, cfg);
    const AnalyticMatrix a = e12(cfg, 0, 2, t * z0);
    const auto res = cartan_factor(to_localized(a), 1);
    EXPECT_EQ(to_analytic(res.b1), a);
    EXPECT_EQ(to_analytic(res.b2), AnalyticMatrix::identity(cfg, 0, 2));
    EXPECT_TRUE(res.b1_membership);
    EXPECT_TRUE(res.b2_membership);
}

TEST(Cartan, NilpotentSplitIsExact)
{
    const auto cfg = Configuration::standard(3, 8);
    const AnalyticElement t = AnalyticElement::uniformizer(cfg, 0);
    const AnalyticElement z0 = z_generator(0, 0, cfg), z1 = z_generator(1, 0, cfg);
    const auto res = cartan_factor(to_localized(e12(cfg, 0, 2, t * (z0 + z1))), 1);
    EXPECT_EQ(to_analytic(res.b1), e12(cfg, 0, 2, t * z0));
    EXPECT_EQ(to_analytic(res.b2), e12(cfg, 0, 2, t * z1));
}

TEST(Cartan, RejectsFarFromIdentity)
{
    const auto cfg = Configuration::standard(3, 8);
    AnalyticMatrix a = AnalyticMatrix::identity(cfg, 0, 2);
    a(1, 0) = z_generator(1, 0, cfg);
    EXPECT_THROW(cartan_factor(to_localized(a), 1), precondition_error);
}

TEST(CartanProperty, RandomFactorizations)
{
    const auto cfg = Configuration::standard(3, 12);
    Rng rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + trial % 2;
        const int i = static_cast<int>(rng.uniform(0, 2));
        const AnalyticMatrix a = random_near_identity(rng, cfg, n, static_cast<int>(rng.uniform(0, 2)));
        const auto start = std::chrono::steady_clock::now();
        const auto res = cartan_factor(to_localized(a), i);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const AnalyticMatrix a1 = to_analytic(res.b1), a2 = to_analytic(res.b2);
        EXPECT_EQ(a1 * a2, a) << "n=" << n << " i=" << i;
        EXPECT_GE(res.residual_precision, 12);
        EXPECT_TRUE(res.b1_membership);
        EXPECT_TRUE(res.b2_membership);
        const long va = (a - AnalyticMatrix::identity(cfg, a.chart(), n)).valuation().value();
        EXPECT_GE((a1 - AnalyticMatrix::identity(cfg, a1.chart(), n)).valuation().value(), va);
        EXPECT_GE((a2 - AnalyticMatrix::identity(cfg, a2.chart(), n)).valuation().value(), va);
        RecordProperty("ms" + std::to_string(trial), std::to_string(ms));
        std::printf("n=%d rounds=%d %.1f ms\n", n, res.rounds, ms);
    }
}

TEST(GlFactor, ScalarT)
{
    const auto cfg = Configuration::standard(3, 8);
    PatchMatrix b(cfg, 0, 2);
    for (int r = 0; r < 2; ++r)
        b(r, r) = LocalizedElement(AnalyticElement::one(cfg, 0), 1);
    for (int i = 0; i < 3; ++i) {
        const auto res = gl_factor(b, i);
        EXPECT_EQ(res.b1, b);
        EXPECT_EQ(res.b2, PatchMatrix::identity(cfg, 0, 2));
        EXPECT_TRUE(res.b1_membership);
        EXPECT_TRUE(res.b2_membership);
    }
}

TEST(GlFactor, ProductOfKnownFactors)
{
    const auto cfg = Configuration::standard(3, 10);
    const AnalyticElement t = AnalyticElement::uniformizer(cfg, 0);
    AnalyticMatrix f1 = AnalyticMatrix::identity(cfg, 0, 2), f2 = f1;
    f1(0, 0) = f1(0, 0) + t * z_generator(0, 0, cfg);
    f2(1, 1) = f2(1, 1) + t * z_generator(1, 0, cfg);
    const AnalyticMatrix b = f1 * f2;
    const auto res = gl_factor(to_localized(b), 1);
    EXPECT_EQ(to_analytic(res.b1) * to_analytic(res.b2), b);
    EXPECT_EQ(to_analytic(res.b1), f1);
    EXPECT_TRUE(res.b1_membership);
    EXPECT_TRUE(res.b2_membership);
}

TEST(GlFactor, NonTrivialDeterminantValuation)
{
    const auto cfg = Configuration::standard(3, 12);
    Rng rng(6);
    for (int trial = 0; trial < 4; ++trial) {
        AnalyticMatrix b = random_near_identity(rng, cfg, 2, 0);
        // multiply a row by t and mix in z-terms
        b(0, 0) = b(0, 0) * AnalyticElement::uniformizer(cfg, 0);
        b(0, 1) = b(0, 1) * AnalyticElement::uniformizer(cfg, 0);
        b(1, 0) = b(1, 0) + z_generator(2, 0, cfg) * AnalyticElement::uniformizer(cfg, 0);
        const auto res = gl_factor(to_localized(b, -1), 2);
        EXPECT_EQ(res.det_valuation, 1);
        EXPECT_TRUE(res.b1_membership);
        EXPECT_TRUE(res.b2_membership);
        EXPECT_GE(res.residual_precision, 11);
    }
}

TEST(GlFactor, RestrictedPipeline)
{
    const auto cfg = Configuration::standard(3, 8);
    AnalyticMatrix b = AnalyticMatrix::identity(cfg, 0, 2);
    b(0, 0) = b(0, 0) + z_generator(0, 0, cfg);
    EXPECT_THROW(gl_factor(to_localized(b), 1), unit_not_recognized);
}
