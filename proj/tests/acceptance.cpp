// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "patchring/cartan.hpp"
#include "patchring/kummer.hpp"
#include "patchring/oracle.hpp"
#include "patchring/random.hpp"
#include "patchring/scenario.hpp"

using namespace patchring;

namespace {

struct Tally {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            if (failures == 0)
                first_failure = what;
            ++failures;
        }
    }
};

struct Criterion {
    std::string name;
    std::string description;
    double budget_s; ///< 0 means no runtime target
    std::function<void(Tally&)> body;
};

IndexSet random_subset(Rng& rng, int size)
{
    IndexSet s;
    for (int k = 0; k < size; ++k)
        if (rng.chance(50))
            s.insert(k);
    return s;
}

int total_zdegree(const AnalyticElement& f)
{
    int d = 0;
    for (int k = 0; k < f.cfg().size(); ++k)
        d += f.zdegree(k);
    return d;
}

AnalyticElement one_plus_power(const ConfigPtr& cfg, int i, int k)
{
    return AnalyticElement::one(cfg, i) + AnalyticElement::uniformizer(cfg, i).pow(static_cast<unsigned>(k - 1)) *
                                              z_generator(i, i, cfg).pow(static_cast<unsigned>(k));
}

int computed(const DivisionAlgebraCertificate& cert, const std::string& name)
{
    for (const auto& e : cert.valuations)
        if (e.name == name)
            return e.computed.value_or(-1000);
    return -2000;
}

void ac1(Tally& t)
{
    const auto cfg = Configuration::standard(3, 16);
    Rng rng(1001);
    // 100 elements drawn as 50 pairs (f, g)
    for (int c = 0; c < 50; ++c) {
        const int chart = static_cast<int>(rng.uniform(0, 2));
        const int target = static_cast<int>(rng.uniform(0, 2));
        const int oracle_chart = static_cast<int>(rng.uniform(0, 2));
        const AnalyticElement f = random_element(rng, cfg, chart, {.max_zdegree = 4});
        const AnalyticElement g = random_element(rng, cfg, chart, {.max_zdegree = 4});
        const int depth = total_zdegree(f) + total_zdegree(g) + 2;
        auto ex = [&](const Expr& e) { return oracle_expand(e, oracle_chart, depth, *cfg); };
        const std::string id = "pair " + std::to_string(c) + ": ";
        t.cases += 4;
        t.check(ex(to_expr(ae_mul(f, g))) == ex(to_expr(f) * to_expr(g)), id + "ae_mul");
        t.check(ex(to_expr(ae_add(f, g))) == ex(to_expr(f) + to_expr(g)), id + "ae_add");
        t.check(ex(to_expr(rebase(f, target))) == ex(to_expr(f)), id + "rebase f");
        t.check(ex(to_expr(rebase(g, target))) == ex(to_expr(g)), id + "rebase g");
    }
}

void ac2(Tally& t)
{
    const auto cfg = Configuration::standard(3, 16);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b)
                continue;
            for (int chart = 0; chart < 3; ++chart) {
                const AnalyticElement za = z_generator(a, chart, cfg), zb = z_generator(b, chart, cfg);
                const Scalar ca = cfg->center(a), cb = cfg->center(b);
                const AnalyticElement lhs = za * zb - (ca - cb).inverse() * za - (cb - ca).inverse() * zb;
                ++t.cases;
                t.check(lhs.is_zero(), "pair (" + std::to_string(a) + "," + std::to_string(b) + ") in chart " +
                                           std::to_string(chart));
            }
        }
}

void ac3(Tally& t)
{
    const auto cfg = Configuration::standard(3, 16);
    Rng rng(1003);
    for (int c = 0; c < 200; ++c) {
        const IndexSet j1 = random_subset(rng, 3), j2 = random_subset(rng, 3);
        IndexSet both = j1;
        both.insert(j2.begin(), j2.end());
        const int chart = both.empty() ? 0 : *std::next(both.begin(), rng.uniform(0, static_cast<long>(both.size()) - 1));
        const int vmin = static_cast<int>(rng.uniform(0, 3));
        AnalyticElement f = random_element(rng, cfg, chart,
                                           {.max_zdegree = 3, .min_torder = vmin, .support = both.empty() ? IndexSet{chart} : both});
        if (both.empty())
            f = AnalyticElement::from_series(cfg, chart, f.f0());
        const std::string id = "case " + std::to_string(c) + ": ";
        ++t.cases;
        const SplitResult s = split(f, j1, j2);
        const long v = f.valuation().value();
        t.check(s.first + s.second == f, id + "f1 + f2 != f");
        t.check(membership(s.first, j1), id + "f1 not in D_J");
        t.check(membership(s.second, j2), id + "f2 not in D_J'");
        t.check(s.first.valuation().value() >= v && s.second.valuation().value() >= v, id + "valuation drop");
    }
}

void ac4(Tally& t)
{
    const auto cfg = Configuration::standard(3, 16);
    Rng rng(1004);
    auto law = [&](const AnalyticElement& f, const std::string& id) {
        const IndexSet j1 = random_subset(rng, 3), j2 = random_subset(rng, 3);
        IndexSet meet;
        for (int k : j1)
            if (j2.count(k))
                meet.insert(k);
        t.check((membership(f, j1) && membership(f, j2)) == membership(f, meet), id + "intersection law");
    };
    for (int c = 0; c < 200; ++c) {
        const IndexSet support = random_subset(rng, 3);
        const int chart = static_cast<int>(rng.uniform(0, 2));
        const AnalyticElement f =
            random_element(rng, cfg, chart, {.max_zdegree = 3, .support = support.empty() ? IndexSet{chart} : support});
        ++t.cases;
        law(f, "random " + std::to_string(c) + ": ");
    }
    // targeted: 17 polynomials in X, Y and the three generators z_k
    for (int c = 0; c < 17; ++c) {
        XYPoly p;
        for (int dx = 0; dx < 4; ++dx)
            for (int dy = 0; dx + dy < 5; ++dy)
                if (rng.chance(40))
                    p = p + XYPoly::monomial(rng.scalar(), dx, dy);
        const AnalyticElement e = embed_xy(p, static_cast<int>(rng.uniform(0, 2)), cfg);
        const std::string id = "polynomial " + p.to_string() + ": ";
        ++t.cases;
        for (int j = 0; j < 3; ++j) {
            IndexSet rest = cfg->all_indices();
            rest.erase(j);
            t.check(membership(e, rest), id + "not in D_{I \\ {" + std::to_string(j) + "}}");
        }
        law(e, id);
    }
    for (int k = 0; k < 3; ++k) {
        ++t.cases;
        const AnalyticElement z = z_generator(k, k, cfg);
        t.check(!membership(z, {}), "z_" + std::to_string(k) + " in D_empty");
        law(z, "z_" + std::to_string(k) + ": ");
    }
}

AnalyticMatrix near_identity(Rng& rng, const ConfigPtr& cfg, int n, int chart, int min_torder)
{
    AnalyticMatrix a = AnalyticMatrix::identity(cfg, chart, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a(r, c) = a(r, c) + random_element(rng, cfg, chart,
                                               {.max_zdegree = 2, .min_torder = min_torder,
                                                .max_tdegree = min_torder + 2, .density = 50});
    return a;
}

void ac5(Tally& t)
{
    const auto cfg = Configuration::standard(3, 12);
    Rng rng(1005);
    for (int c = 0; c < 50; ++c) {
        const int n = 2 + c % 2;
        const int i = static_cast<int>(rng.uniform(0, 2));
        const int chart = static_cast<int>(rng.uniform(0, 2));
        const AnalyticMatrix a = near_identity(rng, cfg, n, chart, 1 + static_cast<int>(rng.uniform(0, 1)));
        const std::string id = "case " + std::to_string(c) + ": ";
        ++t.cases;
        const FactorizationResult res = cartan_factor(to_localized(a), i);
        const AnalyticMatrix a1 = to_analytic(res.b1), a2 = to_analytic(res.b2);
        const long va = (a - AnalyticMatrix::identity(cfg, a.chart(), n)).valuation().value();
        t.check(res.residual_precision >= 12 && a1 * a2 == a, id + "a != a1 a2 mod t^12");
        t.check(res.b1_membership, id + "a1 not over D_{I \\ {i}}");
        t.check(res.b2_membership, id + "a2 not over D_{i}");
        t.check((a1 - AnalyticMatrix::identity(cfg, a1.chart(), n)).valuation().value() >= va, id + "v(a1 - 1)");
        t.check((a2 - AnalyticMatrix::identity(cfg, a2.chart(), n)).valuation().value() >= va, id + "v(a2 - 1)");
    }
}

void ac6(Tally& t)
{
    const auto rat = Configuration::standard(3, 16);
    for (int k : {2, 3, 4}) {
        const AnalyticElement a = one_plus_power(rat, 2, k);
        ++t.cases;
        t.check(hensel_root(a, 2).pow(2) == a, "s^2 != a for k = " + std::to_string(k));
    }
    const auto cyc = Configuration::standard(3, 16, FieldDescriptor::cyclotomic(4));
    const AnalyticElement a = one_plus_power(cyc, 2, 3);
    ++t.cases;
    t.check(hensel_root(a, 4).pow(4) == a, "s^4 != a over cyclotomic(4)");
}

DivisionAlgebraCertificate default_certificate(bool tamper, int samples)
{
    const Scenario sc = build_scenario(Configuration::standard(3, 16), 2, 1, 3, 2, 2);
    return certify_division_algebra(sc, {.samples = samples, .seed = 42, .tamper = tamper});
}

void ac7(Tally& t)
{
    const auto cert = default_certificate(false, 1);
    const std::vector<std::pair<std::string, int>> table{{"v_f(a)", 1}, {"v_f(b)", 0}, {"v_g(a)", 0},
                                                         {"v_g(b)", 1}, {"v_r(a)", 0}, {"v_r(b)", 1},
                                                         {"v_r'(a)", 1}, {"v_r'(b)", 0}};
    for (const auto& [name, expected] : table) {
        ++t.cases;
        const int got = computed(cert, name);
        t.check(got == expected, name + " = " + std::to_string(got) + ", expected " + std::to_string(expected));
    }
}

void ac8(Tally& t)
{
    const auto cert = default_certificate(false, 50);
    t.cases += cert.norm_law_samples;
    t.check(cert.norm_law_samples == 50, "expected 50 norm-law samples");
    t.check(cert.norm_law_verified,
            "norm law: " + (cert.norm_law_notes.empty() ? std::string("?") : cert.norm_law_notes.front()));
    t.check(cert.verdict == "certified", "default scenario " + cert.verdict + ": " + cert.offending);
    const auto tampered = default_certificate(true, 6);
    ++t.cases;
    t.check(tampered.verdict == "refuted", "tampered control " + tampered.verdict);
}

void ac9(Tally& t)
{
    const auto cfg = Configuration::standard(3, 12);
    Rng rng(42);
    for (int draw = 0; draw < 20; ++draw) {
        const Scalar a = rng.nonzero_scalar();
        Scalar b = rng.nonzero_scalar();
        while ((a + b).is_zero())
            b = rng.nonzero_scalar();
        const Scalar c = rng.nonzero_scalar();
        const int m = static_cast<int>(rng.uniform(2, 5));
        const int j = static_cast<int>(rng.uniform(0, 2));
        const auto res = non_association(cfg, j, a, b, c, m);
        const std::string id = "draw " + std::to_string(draw) + " (a=" + a.to_string() + ", b=" + b.to_string() +
                               ", c=" + c.to_string() + ", m=" + std::to_string(m) + "): ";
        ++t.cases;
        t.check(res.distinct, id + "roots coincide");
        // the roots are -1/a, -1/b, -1/c modulo t
        t.check(res.distinct_mod_t == (a != b && a != c && b != c), id + "residues inconsistent with coefficients");
    }
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "canonical form agrees with the Laurent oracle (100 elements, N=16)", 10, ac1},
        {"AC2", "z_i z_j identity for all center pairs", 0, ac2},
        {"AC3", "splitting f = f1 + f2 (200 cases)", 0, ac3},
        {"AC4", "intersection law (200 random + 20 targeted)", 0, ac4},
        {"AC5", "Cartan factorization (50 cases, N=12)", 30, ac5},
        {"AC6", "Hensel roots s^2 = a (k=2,3,4) and s^4 = a over cyclotomic(4)", 0, ac6},
        {"AC7", "valuation table of a and b", 0, ac7},
        {"AC8", "norm-valuation law (50 samples), certified / refuted control", 0, ac8},
        {"AC9", "prepared roots non-associate (20 draws)", 0, ac9},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Tally tally;
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.body(tally);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_s == 0 || secs < c.budget_s;
        const bool pass = error.empty() && tally.failures == 0 && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %s  %s  [%d cases, %d failures, %.2f s%s]", c.name.c_str(), pass ? "PASS" : "FAIL",
                    c.description.c_str(), tally.cases, tally.failures, secs,
                    c.budget_s > 0 ? (" of " + std::to_string(static_cast<int>(c.budget_s)) + " s").c_str() : "");
        if (!error.empty())
            std::printf("  error: %s", error.c_str());
        else if (tally.failures > 0)
            std::printf("  first failure: %s", tally.first_failure.c_str());
        else if (!in_time)
            std::printf("  runtime target exceeded");
        std::printf("\n");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
