#include <gtest/gtest.h>

#include "patchring/kummer.hpp"
#include "patchring/quaternion.hpp"
#include "patchring/random.hpp"

using namespace patchring;

namespace {

AnalyticElement one(const ConfigPtr& cfg, int chart) { return AnalyticElement::one(cfg, chart); }
AnalyticElement z(const ConfigPtr& cfg, int k) { return z_generator(k, k, cfg); }
AnalyticElement t(const ConfigPtr& cfg, int chart) { return AnalyticElement::uniformizer(cfg, chart); }

/// 1 + t^{k-1} z_i^k in chart i.
AnalyticElement radicand_a(const ConfigPtr& cfg, int i, int k) { return one(cfg, i) + t(cfg, i).pow(k - 1) * z(cfg, i).pow(k); }

/// sum_{n < N} binom(1/q, n) (a - 1)^n: the q-th root by the binomial series.
AnalyticElement binomial_root(const AnalyticElement& a, unsigned q)
{
    const AnalyticElement d = a - one(a.config(), a.chart());
    AnalyticElement acc = one(a.config(), a.chart());
    AnalyticElement d_pow = acc;
    Scalar coeff(1);
    for (int n = 1; n < a.precision(); ++n) {
        coeff = coeff * (Scalar(1, static_cast<long>(q)) - Scalar(n - 1)) / Scalar(n);
        d_pow = d_pow * d;
        acc = acc + coeff * d_pow;
    }
    return acc;
}

const ElementShape small_shape{.max_zdegree = 2, .min_torder = 0, .max_tdegree = 3, .support = {}, .density = 60};

KummerElement random_kummer(Rng& rng, const KummerPtr& ext)
{
    std::vector<LocalizedElement> c;
    for (unsigned n = 0; n < ext->degree(); ++n)
        c.emplace_back(random_element(rng, ext->config(), ext->chart(), small_shape));
    return KummerElement(ext, c);
}

/// prod_l sigma^l x, multiplied out term by term.
LocalizedElement naive_norm(const KummerElement& x)
{
    KummerElement acc = x;
    for (long l = 1; l < static_cast<long>(x.degree()); ++l)
        acc = acc * galois_act(l, x);
    return acc.coordinate(0);
}

} // namespace

TEST(Hensel, RootOfOne)
{
    const auto cfg = Configuration::standard(3, 10);
    EXPECT_EQ(hensel_root(one(cfg, 2), 2), one(cfg, 2));
    EXPECT_EQ(hensel_root(one(cfg, 0), 3), one(cfg, 0));
}

TEST(Hensel, FirstNewtonStep)
{
    const auto cfg = Configuration::standard(3, 10);
    const int i = 2;
    const AnalyticElement a = one(cfg, i) + t(cfg, i) * z(cfg, i).pow(2);
    const AnalyticElement s = hensel_root(a, 2);
    const AnalyticElement expected = one(cfg, i) + Scalar(1, 2) * t(cfg, i) * z(cfg, i).pow(2);
    EXPECT_EQ(s.truncated(2), expected.truncated(2));
    EXPECT_EQ(s * s, a);
}

TEST(Hensel, SquareRootsOfA)
{
    const auto cfg = Configuration::standard(3, 16);
    for (int k : {2, 3, 4}) {
        const AnalyticElement a = radicand_a(cfg, 2, k);
        const AnalyticElement s = hensel_root(a, 2);
        EXPECT_EQ(s.pow(2), a) << "k=" << k;
        EXPECT_EQ(s.truncated(1), one(cfg, 2).truncated(1));
        EXPECT_TRUE(membership(s, {2}));
        EXPECT_EQ(s, binomial_root(a, 2)) << "k=" << k;
    }
}

TEST(Hensel, CyclotomicFourthRoots)
{
    const auto cfg = Configuration::standard(3, 16, FieldDescriptor::cyclotomic(4));
    for (int k : {2, 3, 4})
        for (unsigned q : {2u, 4u}) {
            const AnalyticElement a = radicand_a(cfg, 2, k);
            const AnalyticElement s = hensel_root(a, q);
            EXPECT_EQ(s.pow(q), a) << "k=" << k << " q=" << q;
            EXPECT_EQ(s, binomial_root(a, q));
        }
}

TEST(Hensel, RandomRadicands)
{
    const auto cfg = Configuration::standard(3, 12);
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const AnalyticElement a =
            one(cfg, 1) + random_element(rng, cfg, 1, {.max_zdegree = 2, .min_torder = 1, .max_tdegree = 4});
        const unsigned q = 2 + static_cast<unsigned>(trial % 2);
        EXPECT_EQ(hensel_root(a, q).pow(q), a);
    }
}

TEST(Hensel, Preconditions)
{
    const auto cfg = Configuration::standard(3, 8);
    EXPECT_THROW(hensel_root(one(cfg, 0) + z(cfg, 0), 2), precondition_error);
    EXPECT_THROW(hensel_root(Scalar(4) * one(cfg, 0), 2), precondition_error);
    EXPECT_THROW(hensel_root(one(cfg, 0), 0), precondition_error);
}

TEST(Kummer, DefiningRelation)
{
    const auto cfg = Configuration::standard(3, 10, FieldDescriptor::cyclotomic(4));
    const AnalyticElement a = radicand_a(cfg, 2, 3).rebased(1);
    for (unsigned q : {2u, 4u}) {
        const auto ext = make_kummer(LocalizedElement(a), q);
        const KummerElement alpha = KummerElement::generator(ext);
        KummerElement top = KummerElement::base(ext, LocalizedElement(one(cfg, 1)));
        for (unsigned n = 0; n + 1 < q; ++n)
            top = top * alpha;
        const KummerElement product = alpha * top;
        EXPECT_EQ(product, KummerElement::base(ext, LocalizedElement(a)));
        EXPECT_EQ(product.coordinate(0), LocalizedElement(a));
    }
}

TEST(Kummer, IdentityAndDifferenceOfSquares)
{
    const auto cfg = Configuration::standard(3, 10);
    const AnalyticElement a = radicand_a(cfg, 2, 3).rebased(0);
    const auto ext = make_kummer(LocalizedElement(a), 2);
    Rng rng(3);
    const KummerElement x = random_kummer(rng, ext);
    const KummerElement unit = KummerElement::base(ext, LocalizedElement(one(cfg, 0)));
    EXPECT_EQ(x * unit, x);
    const KummerElement alpha = KummerElement::generator(ext);
    EXPECT_EQ((unit + alpha) * (unit - alpha), KummerElement::base(ext, LocalizedElement(one(cfg, 0) - a)));
}

TEST(Kummer, RingAxiomsOnRandomElements)
{
    const auto cfg = Configuration::standard(3, 8, FieldDescriptor::cyclotomic(4));
    const auto ext = make_kummer(LocalizedElement(radicand_a(cfg, 2, 2).rebased(0)), 4);
    Rng rng(5);
    for (int trial = 0; trial < 3; ++trial) {
        const KummerElement x = random_kummer(rng, ext), y = random_kummer(rng, ext), w = random_kummer(rng, ext);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x * y) * w, x * (y * w));
        EXPECT_EQ(x * (y + w), x * y + x * w);
    }
}

TEST(Kummer, ExtensionMismatch)
{
    const auto cfg = Configuration::standard(3, 8);
    const auto e1 = make_kummer(LocalizedElement(radicand_a(cfg, 2, 3)), 2);
    const auto e2 = make_kummer(LocalizedElement(radicand_a(cfg, 2, 3)), 2);
    EXPECT_THROW(KummerElement::generator(e1) * KummerElement::generator(e2), precondition_error);
    EXPECT_THROW(make_kummer(LocalizedElement(radicand_a(cfg, 2, 3)), 4), config_error);
}

TEST(Galois, QuadraticConjugation)
{
    const auto cfg = Configuration::standard(3, 8);
    const auto ext = make_kummer(LocalizedElement(radicand_a(cfg, 2, 3)), 2);
    const KummerElement alpha = KummerElement::generator(ext);
    EXPECT_EQ(galois_act(1, alpha), KummerElement::base(ext, LocalizedElement(-one(cfg, 2))) * alpha);
}

TEST(Galois, OrderAndMultiplicativity)
{
    const auto cfg = Configuration::standard(3, 8, FieldDescriptor::cyclotomic(4));
    const auto ext = make_kummer(LocalizedElement(radicand_a(cfg, 2, 3).rebased(1)), 4);
    Rng rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const KummerElement x = random_kummer(rng, ext), y = random_kummer(rng, ext);
        EXPECT_EQ(galois_act(4, x), x);
        EXPECT_EQ(galois_act(1, galois_act(3, x)), x);
        EXPECT_NE(galois_act(1, x), x);
        EXPECT_EQ(galois_act(1, x * y), galois_act(1, x) * galois_act(1, y));
        EXPECT_EQ(galois_act(3, x * y), galois_act(3, x) * galois_act(3, y));
    }
}

TEST(Norm, QuadraticForm)
{
    const auto cfg = Configuration::standard(3, 10);
    const AnalyticElement a = radicand_a(cfg, 2, 3).rebased(1);
    const auto ext = make_kummer(LocalizedElement(a), 2);
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const LocalizedElement b0(random_element(rng, cfg, 1, small_shape));
        const LocalizedElement b1(random_element(rng, cfg, 1, small_shape));
        EXPECT_EQ(norm(KummerElement(ext, {b0, b1})), b0 * b0 - LocalizedElement(a) * b1 * b1);
    }
}

TEST(Norm, MultiplicativeAndInvariant)
{
    const auto cfg = Configuration::standard(3, 8, FieldDescriptor::cyclotomic(4));
    const auto ext = make_kummer(LocalizedElement(radicand_a(cfg, 2, 2).rebased(0)), 4);
    Rng rng(17);
    for (int trial = 0; trial < 3; ++trial) {
        const KummerElement x = random_kummer(rng, ext), y = random_kummer(rng, ext);
        const LocalizedElement nx = norm(x);
        EXPECT_EQ(nx, naive_norm(x));
        EXPECT_EQ(norm(x * y), nx * norm(y));
        EXPECT_EQ(norm(galois_act(1, x)), nx);
    }
}

TEST(Norm, BaseElementIsPower)
{
    const auto cfg = Configuration::standard(3, 8);
    const auto ext = make_kummer(LocalizedElement(radicand_a(cfg, 2, 3)), 2);
    Rng rng(19);
    const LocalizedElement b(random_element(rng, cfg, 2, small_shape));
    EXPECT_EQ(norm(KummerElement::base(ext, b)), b * b);
}

TEST(ExtValuation, BaseAndConjugates)
{
    const auto cfg = Configuration::standard(3, 12);
    const int i = 2, j = 1, k = 3;
    const AnalyticElement zj = z(cfg, j), tj = t(cfg, j);
    const AnalyticElement r = one(cfg, j) + Scalar(3) * zj - tj.pow(k - 1) * zj.pow(k);
    const AnalyticElement w = one(cfg, j) - zj;
    const AnalyticElement rp = one(cfg, j) - zj + tj.pow(k - 1) * zj.pow(k);
    const PrimePoint pt = weierstrass_prepare_linear(r, j, {0, 1}, "r").point;
    const auto ext = make_kummer(LocalizedElement(rp * w), 2);
    Rng rng(23);
    const ElementShape shape{.max_zdegree = 2, .max_tdegree = 3, .support = {0, 1}};
    for (int trial = 0; trial < 6; ++trial) {
        const unsigned e = static_cast<unsigned>(trial % 3);
        const LocalizedElement b0(r.pow(e) * random_element(rng, cfg, j, shape));
        const LocalizedElement b1(r.pow(e) * random_element(rng, cfg, j, shape));
        EXPECT_EQ(ext_valuation(KummerElement::base(ext, b0), pt), prime_valuation(b0, pt));
        const KummerElement x(ext, {b0, b1});
        EXPECT_EQ(ext_valuation(x, pt), static_cast<int>(e));
        EXPECT_EQ(ext_valuation(galois_act(1, x), pt), ext_valuation(x, pt));
        EXPECT_EQ(prime_valuation(norm(x), pt), 2 * ext_valuation(x, pt));
    }
}

TEST(Quaternion, Relations)
{
    const Scalar a(3), b(-5);
    const QuaternionAlgebra<Scalar> alg(a, b);
    const Quaternion<Scalar> one{{1, 0, 0, 0}}, qi{{0, 1, 0, 0}}, qj{{0, 0, 1, 0}};
    const Quaternion<Scalar> ij = alg.mul(qi, qj), ji = alg.mul(qj, qi);
    for (int n = 0; n < 4; ++n)
        EXPECT_EQ(ij.c[n], -ji.c[n]);
    const auto ii = alg.mul(qi, qi);
    const auto jj = alg.mul(qj, qj);
    for (int n = 0; n < 4; ++n) {
        EXPECT_EQ(ii.c[n], a * one.c[n]);
        EXPECT_EQ(jj.c[n], b * one.c[n]);
    }
    EXPECT_THROW(QuaternionAlgebra<Scalar>(a, b, 4, 2), precondition_error);
}

TEST(Quaternion, AssociativeAndNormMultiplicative)
{
    Rng rng(29);
    const QuaternionAlgebra<Scalar> alg(Scalar(2), Scalar(-7));
    auto draw = [&] { return Quaternion<Scalar>{{rng.scalar(), rng.scalar(), rng.scalar(), rng.scalar()}}; };
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = draw(), y = draw(), w = draw();
        const auto l = alg.mul(alg.mul(x, y), w), r = alg.mul(x, alg.mul(y, w));
        for (int n = 0; n < 4; ++n)
            EXPECT_EQ(l.c[n], r.c[n]);
        EXPECT_EQ(alg.reduced_norm(alg.mul(x, y)), alg.reduced_norm(x) * alg.reduced_norm(y));
    }
}

TEST(Quaternion, NormMatchesKummerNorm)
{
    const auto cfg = Configuration::standard(3, 8);
    const AnalyticElement a = radicand_a(cfg, 2, 3);
    const LocalizedElement la(a), lb(one(cfg, 2) + Scalar(4) * z(cfg, 2));
    const QuaternionAlgebra<LocalizedElement> alg(la, lb);
    const auto ext = make_kummer(la, 2);
    Rng rng(31);
    const LocalizedElement zero(AnalyticElement::zero(cfg, 2));
    for (int trial = 0; trial < 4; ++trial) {
        const LocalizedElement x0(random_element(rng, cfg, 2, small_shape));
        const LocalizedElement x1(random_element(rng, cfg, 2, small_shape));
        EXPECT_EQ(alg.reduced_norm({{x0, x1, zero, zero}}), norm(KummerElement(ext, {x0, x1})));
    }
}
