#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "patchring/analytic.hpp"
#include "patchring/cartan.hpp"
#include "patchring/kummer.hpp"
#include "patchring/oracle.hpp"
#include "patchring/random.hpp"
#include "patchring/scenario.hpp"
#include "run_config.hpp"

namespace patchring::cli {

using nlohmann::json;

struct CaseRecord {
    std::string suite;
    std::string id;
    std::string status; ///< "pass", "fail" or "skip"
    json details = json::object();
    double elapsed_ms = 0;
};

struct SuiteContext {
    RunConfig rc;
    ConfigPtr cfg;
    bool verbose = false;
};

/// Outcome of one case: pass/fail (or skip with a reason) plus details.
struct Outcome {
    bool pass = true;
    json details = json::object();
    bool skipped = false;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            details["failed_checks"].push_back(what);
        }
    }
};

class SuiteRunner {
public:
    SuiteRunner(const SuiteContext& ctx, std::string suite, std::vector<CaseRecord>& out)
        : ctx_(ctx), suite_(std::move(suite)), out_(out)
    {
    }

    void run(const std::string& id, const std::function<void(Outcome&)>& body)
    {
        CaseRecord rec{suite_, id, "pass", json::object(), 0};
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            body(o);
            rec.status = o.skipped ? "skip" : (o.pass ? "pass" : "fail");
            rec.details = std::move(o.details);
        } catch (const std::exception& e) {
            rec.status = "fail";
            rec.details = std::move(o.details);
            rec.details["error"] = e.what();
        }
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (ctx_.verbose)
            std::cerr << "[" << suite_ << "] " << id << ": " << rec.status << " (" << static_cast<long>(rec.elapsed_ms)
                      << " ms)\n";
        out_.push_back(std::move(rec));
    }

private:
    const SuiteContext& ctx_;
    std::string suite_;
    std::vector<CaseRecord>& out_;
};

/// Seed for one suite, independent of which other suites run.
inline std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite)
{
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : suite) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return seed ^ h;
}

inline int total_zdegree(const AnalyticElement& f)
{
    int d = 0;
    for (int k = 0; k < f.cfg().size(); ++k)
        d += f.zdegree(k);
    return d;
}

inline IndexSet random_subset(Rng& rng, int size)
{
    IndexSet s;
    for (int k = 0; k < size; ++k)
        if (rng.chance(50))
            s.insert(k);
    return s;
}

inline std::string set_text(const IndexSet& s)
{
    std::string out = "{";
    for (int k : s)
        out += (out.size() > 1 ? "," : "") + std::to_string(k);
    return out + "}";
}

inline std::string valuation_text(const Valuation& v)
{
    return v.is_exact() ? std::to_string(v.value()) : ">=" + std::to_string(v.value());
}

// ---------------------------------------------------------------------------

inline void suite_rings(const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    SuiteRunner run(ctx, "rings", out);
    const auto& cfg = ctx.cfg;
    const int m = cfg->size();
    Rng rng(suite_seed(ctx.rc.seed, "rings"));

    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            run.run("pair-identity-" + std::to_string(a) + "-" + std::to_string(b), [&](Outcome& o) {
                for (int chart = 0; chart < m; ++chart) {
                    const AnalyticElement za = z_generator(a, chart, cfg), zb = z_generator(b, chart, cfg);
                    const Scalar d = cfg->center(a) - cfg->center(b);
                    const AnalyticElement lhs = za * zb - d.inverse() * za + d.inverse() * zb;
                    o.check(lhs.is_zero(), "chart " + std::to_string(chart));
                }
            });

    const int cases = ctx.rc.cases.at("rings");
    for (int c = 0; c < cases; ++c) {
        const int chart = static_cast<int>(rng.uniform(0, m - 1));
        const int target = static_cast<int>(rng.uniform(0, m - 1));
        const int oracle_chart = static_cast<int>(rng.uniform(0, m - 1));
        const AnalyticElement f = random_element(rng, cfg, chart, {.max_zdegree = 4});
        const AnalyticElement g = random_element(rng, cfg, chart, {.max_zdegree = 4});
        run.run("oracle-" + std::to_string(c), [&](Outcome& o) {
            const int depth = total_zdegree(f) + total_zdegree(g) + 2;
            auto ex = [&](const Expr& e) { return oracle_expand(e, oracle_chart, depth, *cfg); };
            o.details["chart"] = chart;
            o.details["oracle_chart"] = oracle_chart;
            o.details["zdepth"] = depth;
            o.check(ex(to_expr(ae_mul(f, g))) == ex(to_expr(f) * to_expr(g)), "ae_mul");
            o.check(ex(to_expr(ae_add(f, g))) == ex(to_expr(f) + to_expr(g)), "ae_add");
            o.check(ex(to_expr(rebase(f, target))) == ex(to_expr(f)), "rebase to chart " + std::to_string(target));
        });
    }

    run.run("linear-independence", [&](Outcome& o) {
        for (int c = 0; c < 10; ++c) {
            ZPoly p(rng.scalar(), static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k)
                for (int e = 1; e <= 3; ++e)
                    if (rng.chance(50))
                        p.at(k, e) = rng.scalar();
            p.trim();
            o.check(lin_indep_check(p, cfg) == p.is_zero_form(), "combination " + std::to_string(c));
        }
    });
}

inline void suite_split(const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    SuiteRunner run(ctx, "split", out);
    const auto& cfg = ctx.cfg;
    const int m = cfg->size();
    Rng rng(suite_seed(ctx.rc.seed, "split"));
    const int cases = ctx.rc.cases.at("split");
    for (int c = 0; c < cases; ++c) {
        IndexSet j1 = random_subset(rng, m), j2 = random_subset(rng, m);
        IndexSet both = j1;
        both.insert(j2.begin(), j2.end());
        const int chart = both.empty() ? 0 : *std::next(both.begin(), rng.uniform(0, static_cast<long>(both.size()) - 1));
        const int vmin = static_cast<int>(rng.uniform(0, 3));
        const AnalyticElement f =
            random_element(rng, cfg, chart, {.max_zdegree = 3, .min_torder = vmin, .support = both.empty() ? IndexSet{chart} : both})
                .truncated(cfg->precision());
        // with J u J' empty only constants qualify
        const AnalyticElement input = both.empty() ? AnalyticElement::from_series(cfg, chart, f.f0()) : f;
        run.run("split-" + std::to_string(c), [&](Outcome& o) {
            o.details["J"] = set_text(j1);
            o.details["J'"] = set_text(j2);
            const SplitResult s = split(input, j1, j2);
            const Valuation v = input.valuation();
            o.details["v(f)"] = valuation_text(v);
            o.details["v(f1)"] = valuation_text(s.first.valuation());
            o.details["v(f2)"] = valuation_text(s.second.valuation());
            o.check(s.first + s.second == input, "f1 + f2 = f");
            o.check(membership(s.first, j1), "f1 in D_J");
            o.check(membership(s.second, j2), "f2 in D_J'");
            o.check(s.first.valuation().value() >= v.value(), "v(f1) >= v(f)");
            o.check(s.second.valuation().value() >= v.value(), "v(f2) >= v(f)");
        });
    }
}

inline void suite_intersect(const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    SuiteRunner run(ctx, "intersect", out);
    const auto& cfg = ctx.cfg;
    const int m = cfg->size();
    const int n = cfg->precision();
    Rng rng(suite_seed(ctx.rc.seed, "intersect"));
    const int cases = ctx.rc.cases.at("intersect");

    auto intersection_law = [&](Outcome& o, const AnalyticElement& f, const IndexSet& j1, const IndexSet& j2) {
        IndexSet meet;
        for (int k : j1)
            if (j2.count(k))
                meet.insert(k);
        const bool lhs = membership(f, j1) && membership(f, j2);
        const bool rhs = membership(f, meet);
        o.details["J"] = set_text(j1);
        o.details["J'"] = set_text(j2);
        o.details["in_both"] = lhs;
        o.details["in_intersection"] = rhs;
        o.check(lhs == rhs, "membership in D_J and D_J' iff in D_{J n J'}");
    };

    for (int c = 0; c < cases; ++c) {
        const IndexSet support = random_subset(rng, m);
        const int chart = static_cast<int>(rng.uniform(0, m - 1));
        const AnalyticElement f =
            random_element(rng, cfg, chart, {.max_zdegree = 3, .support = support.empty() ? IndexSet{chart} : support});
        const IndexSet j1 = random_subset(rng, m), j2 = random_subset(rng, m);
        run.run("random-" + std::to_string(c), [&](Outcome& o) { intersection_law(o, f, j1, j2); });
    }

    // targeted: elements of the smaller rings, and polynomials in X, Y
    for (int c = 0; c < std::max(1, cases / 10); ++c) {
        XYPoly p;
        for (int dx = 0; dx < 4; ++dx)
            for (int dy = 0; dy + dx < 5; ++dy)
                if (rng.chance(40))
                    p = p + XYPoly::monomial(rng.scalar(), dx, dy);
        const int chart = static_cast<int>(rng.uniform(0, m - 1));
        const AnalyticElement e = embed_xy(p, chart, cfg);
        run.run("polynomial-" + std::to_string(c), [&](Outcome& o) {
            o.details["poly"] = p.to_string();
            for (int j = 0; j < m; ++j) {
                IndexSet rest = cfg->all_indices();
                rest.erase(j);
                o.check(membership(e, rest), "in D_{I \\ {" + std::to_string(j) + "}}");
            }
            o.check(membership(e, {}), "in D_empty");
            intersection_law(o, e, random_subset(rng, m), random_subset(rng, m));
        });
    }
    for (int k = 0; k < m; ++k)
        run.run("generator-not-in-empty-" + std::to_string(k), [&](Outcome& o) {
            o.check(!membership(z_generator(k, k, cfg), {}), "z_k not in D_empty");
            o.check(membership(z_generator(k, k, cfg) * AnalyticElement::uniformizer(cfg, k), {}), "z_k t_k in D_empty");
        });
    (void)n;
}

inline AnalyticMatrix random_near_identity(Rng& rng, const ConfigPtr& cfg, int n, int chart, int min_torder)
{
    AnalyticMatrix a = AnalyticMatrix::identity(cfg, chart, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a(r, c) = a(r, c) + random_element(rng, cfg, chart,
                                               {.max_zdegree = 2, .min_torder = min_torder, .max_tdegree = min_torder + 2,
                                                .density = 50});
    return a;
}

inline void suite_cartan(const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    SuiteRunner run(ctx, "cartan", out);
    const auto& cfg = ctx.cfg;
    const int m = cfg->size();
    Rng rng(suite_seed(ctx.rc.seed, "cartan"));
    const int cases = ctx.rc.cases.at("cartan");
    for (int c = 0; c < cases; ++c) {
        const int n = 2 + c % 2;
        const int i = static_cast<int>(rng.uniform(0, m - 1));
        const int chart = static_cast<int>(rng.uniform(0, m - 1));
        const AnalyticMatrix a = random_near_identity(rng, cfg, n, chart, 1 + static_cast<int>(rng.uniform(0, 1)));
        run.run("cartan-" + std::to_string(c), [&](Outcome& o) {
            const FactorizationResult res = cartan_factor(to_localized(a), i);
            const AnalyticMatrix a1 = to_analytic(res.b1), a2 = to_analytic(res.b2);
            const long va = (a - AnalyticMatrix::identity(cfg, a.chart(), n)).valuation().value();
            o.details["n"] = n;
            o.details["i"] = i;
            o.details["rounds"] = res.rounds;
            o.details["residual_precision"] = res.residual_precision;
            o.check(a1 * a2 == a, "a = a1 a2");
            o.check(res.b1_membership, "a1 over D_{I \\ {i}}");
            o.check(res.b2_membership, "a2 over D_{i}");
            o.check((a1 - AnalyticMatrix::identity(cfg, a1.chart(), n)).valuation().value() >= va, "v(a1 - 1) >= v(a - 1)");
            o.check((a2 - AnalyticMatrix::identity(cfg, a2.chart(), n)).valuation().value() >= va, "v(a2 - 1) >= v(a - 1)");
        });
    }

    // b = t^{-1} (1 + M) t^s diag(t, 1): determinant t^{s+1} times a unit
    run.run("gl-factor-shifted", [&](Outcome& o) {
        const int i = static_cast<int>(rng.uniform(0, m - 1));
        const AnalyticMatrix a = random_near_identity(rng, cfg, 2, 0, 1);
        AnalyticMatrix d = AnalyticMatrix::identity(cfg, 0, 2);
        d(0, 0) = AnalyticElement::uniformizer(cfg, 0);
        const PatchMatrix b = to_localized(a * d, -1);
        const FactorizationResult res = gl_factor(b, i);
        o.details["i"] = i;
        o.details["det_valuation"] = res.det_valuation;
        o.details["residual_precision"] = res.residual_precision;
        o.check(res.b1_membership, "b1 over Q_i");
        o.check(res.b2_membership, "b2 over Q'_i");
        o.check(res.residual_precision >= cfg->precision() - res.det_valuation, "b = b1 b2");
    });
}

inline void suite_kummer(const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    SuiteRunner run(ctx, "kummer", out);
    const auto& cfg = ctx.cfg;
    const int m = cfg->size();
    const int i = ctx.rc.i;
    Rng rng(suite_seed(ctx.rc.seed, "kummer"));

    auto radicand = [&](int k) {
        return AnalyticElement::one(cfg, i) +
               AnalyticElement::uniformizer(cfg, i).pow(static_cast<unsigned>(k - 1)) *
                   z_generator(i, i, cfg).pow(static_cast<unsigned>(k));
    };
    std::vector<unsigned> degrees{2};
    if (cfg->field().has_root_of_unity(4))
        degrees.push_back(4);

    for (int k : {2, 3, 4})
        for (unsigned q : degrees)
            run.run("hensel-k" + std::to_string(k) + "-q" + std::to_string(q), [&](Outcome& o) {
                if (k >= cfg->precision()) {
                    o.skipped = true;
                    o.details["reason"] = "k exceeds the precision";
                    return;
                }
                const AnalyticElement a = radicand(k);
                const AnalyticElement s = hensel_root(a, q);
                o.check(s.pow(q) == a, "s^q = a");
                o.check(s.truncated(1) == AnalyticElement::one(cfg, i).truncated(1), "s = 1 mod t");
                o.check(membership(s, {i}), "s in D_{i}");
            });

    const ElementShape shape{.max_zdegree = 2, .max_tdegree = 3, .density = 60};
    const int cases = ctx.rc.cases.at("kummer");
    for (int c = 0; c < cases; ++c) {
        const unsigned q = degrees[static_cast<std::size_t>(c) % degrees.size()];
        const int chart = static_cast<int>(rng.uniform(0, m - 1));
        const auto ext = make_kummer(LocalizedElement(radicand(ctx.rc.k).rebased(chart)), q);
        auto draw = [&] {
            std::vector<LocalizedElement> coords;
            for (unsigned e = 0; e < q; ++e)
                coords.emplace_back(random_element(rng, cfg, chart, shape));
            return KummerElement(ext, coords);
        };
        const KummerElement x = draw(), y = draw();
        run.run("galois-norm-" + std::to_string(c), [&](Outcome& o) {
            o.details["q"] = q;
            o.check(galois_act(static_cast<long>(q), x) == x, "sigma^q = id");
            o.check(galois_act(1, x * y) == galois_act(1, x) * galois_act(1, y), "sigma multiplicative");
            const LocalizedElement nx = norm(x);
            o.check(norm(galois_act(1, x)) == nx, "N(sigma x) = N(x)");
            o.check(norm(x * y) == nx * norm(y), "N(xy) = N(x) N(y)");
        });
    }
}

inline json to_json(const DivisionAlgebraCertificate& cert)
{
    json table = json::array();
    for (const auto& e : cert.valuations) {
        json row{{"name", e.name}, {"expected", e.expected}, {"pass", e.pass()}};
        row["computed"] = e.computed ? json(*e.computed) : json(nullptr);
        if (!e.error.empty())
            row["error"] = e.error;
        table.push_back(row);
    }
    return {{"scenario", cert.scenario_id},
            {"field", cert.field},
            {"tampered", cert.tampered},
            {"valuations", table},
            {"hensel_root_verified", cert.hensel_root_verified},
            {"norm_law", {{"samples", cert.norm_law_samples},
                          {"failures", cert.norm_law_failures},
                          {"verified", cert.norm_law_verified},
                          {"notes", cert.norm_law_notes}}},
            {"excluded_powers", cert.excluded_powers},
            {"unexcluded_powers", cert.unexcluded_powers},
            {"s_prime_norm", cert.s_prime_norm},
            {"assumptions", cert.assumptions},
            {"verdict", cert.verdict},
            {"offending", cert.offending}};
}

inline void suite_certificate(const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    SuiteRunner run(ctx, "certificate", out);
    run.run(ctx.rc.tamper_certificate ? "division-algebra-tampered" : "division-algebra", [&](Outcome& o) {
        const Scenario sc = build_scenario(ctx.cfg, ctx.rc.i, ctx.rc.j, ctx.rc.k, ctx.rc.q, ctx.rc.q_prime);
        CertifyOptions opt;
        opt.samples = ctx.rc.cases.at("certificate");
        opt.seed = suite_seed(ctx.rc.seed, "certificate");
        opt.tamper = ctx.rc.tamper_certificate;
        const DivisionAlgebraCertificate cert = certify_division_algebra(sc, opt);
        o.details["certificate"] = to_json(cert);
        o.check(cert.certified(), "certificate verdict: " + cert.verdict);
    });
}

inline void run_suite(const std::string& name, const SuiteContext& ctx, std::vector<CaseRecord>& out)
{
    if (name == "rings")
        suite_rings(ctx, out);
    else if (name == "split")
        suite_split(ctx, out);
    else if (name == "intersect")
        suite_intersect(ctx, out);
    else if (name == "cartan")
        suite_cartan(ctx, out);
    else if (name == "kummer")
        suite_kummer(ctx, out);
    else if (name == "certificate")
        suite_certificate(ctx, out);
    else
        throw config_error("unknown suite '" + name + "'");
}

} // namespace patchring::cli
