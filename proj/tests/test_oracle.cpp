#include <gtest/gtest.h>

#include "patchring/oracle.hpp"
#include "patchring/random.hpp"

using namespace patchring;

namespace {

int total_zdegree(const AnalyticElement& f)
{
    int d = 0;
    for (int k = 0; k < f.cfg().size(); ++k)
        d += f.zdegree(k);
    return d;
}

} // namespace

TEST(Oracle, ZkIsGeometric)
{
    const auto cfg = Configuration::standard(2, 4);
    const OracleSeries s = oracle_expand(Expr::z(1), 0, 6, *cfg);
    for (int a = 0; a < 6; ++a)
        EXPECT_EQ(s.coefficient(a, 0), Scalar(a == 0 ? 0 : 1));
}

TEST(Oracle, ProductOfXAndY)
{
    const auto cfg = Configuration::standard(3, 6);
    for (int j = 0; j < 3; ++j) {
        const AnalyticElement prod = embed_xy(XYPoly::X(), j, cfg) * embed_xy(XYPoly::Y(), j, cfg);
        EXPECT_EQ(oracle_expand(to_expr(prod), j, 8, *cfg), oracle_expand(Expr::x() * Expr::y(), j, 8, *cfg));
        EXPECT_EQ(prod, embed_xy(XYPoly::X() * XYPoly::Y(), j, cfg));
    }
}

TEST(Oracle, ChartRatioIdentity)
{
    const auto cfg = Configuration::standard(2, 6);
    const Expr e = (Expr::constant(Scalar(1)) + Expr::z(1)) * (Expr::constant(Scalar(1)) - Expr::z(0));
    for (int j = 0; j < 2; ++j)
        EXPECT_EQ(oracle_expand(e, j, 10, *cfg), OracleSeries::one(10, 6, cfg->field()));
}

TEST(Oracle, InverseAndShift)
{
    const auto cfg = Configuration::standard(3, 8);
    // Y / t_1 = z_1
    const Expr e = Expr::y() * inv(Expr::t(1));
    for (int j = 0; j < 3; ++j)
        EXPECT_EQ(oracle_expand(e, j, 10, *cfg), oracle_expand(Expr::z(1), j, 10, *cfg));
    EXPECT_THROW(oracle_expand(inv(Expr::z(1)), 0, 6, *cfg), precondition_error);
}

TEST(Oracle, LinIndep)
{
    const auto cfg = Configuration::standard(3, 4);
    ZPoly zero(Scalar(0), 3);
    EXPECT_TRUE(lin_indep_check(zero, cfg));
    ZPoly one(Scalar(1), 3);
    EXPECT_FALSE(lin_indep_check(one, cfg));
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        ZPoly p(rng.scalar(), 3);
        for (int k = 0; k < 3; ++k)
            for (int n = 1; n <= rng.uniform(0, 4); ++n)
                p.at(k, n) = rng.scalar();
        p.trim();
        EXPECT_EQ(lin_indep_check(p, cfg), p.is_zero_form());
    }
}

TEST(OracleProperty, OperationsCommuteWithExpansion)
{
    const auto cfg = Configuration::standard(3, 10);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int chart = static_cast<int>(rng.uniform(0, 2));
        const AnalyticElement f = random_element(rng, cfg, chart, {.max_zdegree = 3});
        const AnalyticElement g = random_element(rng, cfg, chart, {.max_zdegree = 3});
        const int depth = total_zdegree(f) + total_zdegree(g) + 2;
        const int oc = static_cast<int>(rng.uniform(0, 2));
        auto ex = [&](const Expr& e) { return oracle_expand(e, oc, depth, *cfg); };
        EXPECT_EQ(ex(to_expr(f * g)), ex(to_expr(f) * to_expr(g)));
        EXPECT_EQ(ex(to_expr(f + g)), ex(to_expr(f) + to_expr(g)));
        const int target = static_cast<int>(rng.uniform(0, 2));
        EXPECT_EQ(ex(to_expr(f.rebased(target))), ex(to_expr(f)));
    }
}
