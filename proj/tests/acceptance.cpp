// Acceptance runner: one PASS/FAIL line per criterion.
//
//   pdwg_acceptance [--expect-fail N]...
//
// Exits non-zero when a criterion fails that is not listed with
// --expect-fail, or when a listed one unexpectedly passes.

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "properties.hpp"
#include "pdwg/errors.hpp"
#include "pdwg/norms.hpp"
#include "pdwg/pdwg_solver.hpp"
#include "pdwg/study.hpp"

using namespace pdwg;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Run {
    std::optional<StudyResult> result;
    std::string error;
};

/// Largest post-solve |b(v, lambda_h)| over all runs, checked in criterion 9.
double g_constraint_residual = 0.0;

Run run(const std::string& problem, int k, int s_offset, double p)
{
    StudyConfig c;
    c.problem = problem;
    c.k = k;
    c.s_offset = s_offset;
    c.p = p;
    c.n0 = 4;
    c.levels = 5;
    c.deterministic = true;
    std::fprintf(stderr, "running %s k=%d s=%d p=%g ...\n", problem.c_str(), k, k - s_offset, p);
    Run r;
    try {
        r.result = run_study(c, [](const LevelInfo& l) {
            std::fprintf(stderr, "  n=%-3d iterations=%-3d %.1fs\n", l.n, l.report.iterations, l.seconds);
        });
        for (const LevelInfo& l : r.result->levels)
            g_constraint_residual = std::max(g_constraint_residual, l.report.constraint_residual);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

/// Rates of `column` at the last `count` levels, formatted, and whether they
/// all lie in [lo, hi].
bool rates_in(const StudyResult& r, const std::string& column, int count, double lo, double hi,
              std::string& detail)
{
    const auto& rates = r.table.column(column).rates;
    bool ok = true;
    detail += column + " rates";
    for (std::size_t i = rates.size() - static_cast<std::size_t>(count); i < rates.size(); ++i) {
        ok = ok && in(rates[i], lo, hi);
        detail += " " + fmt("%.2f", rates[i]);
    }
    detail += " in [" + fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]; ";
    return ok;
}

bool within_factor(double value, double target, double factor, std::string& detail)
{
    detail += "err(n=8) " + fmt("%.3e", value) + " vs " + fmt("%.2e", target) + "; ";
    return value >= target / factor && value <= target * factor;
}

Outcome failed_run(const Run& r) { return {false, "run failed: " + r.error}; }

Outcome criterion9()
{
    std::string d;
    bool ok = true;
    const Mesh m4 = build_uniform(4);

    double comm = 0.0, ibp = 0.0, anti = 0.0;
    unsigned seed = 1;
    for (int k : {1, 2})
        for (int s = 0; s <= k - 1; ++s) {
            comm = std::max(comm, props::commutativity_deviation(m4, k, s, k, seed++));
            ibp = std::max(ibp, props::ibp_deviation(m4, k, s, seed++));
        }
    for (int k : {1, 2})
        anti = std::max(anti, props::antisymmetry_deviation(m4, k, seed++));
    ok = ok && comm <= 1e-12 && ibp <= 1e-12 && anti == 0.0;
    d += "commutativity " + fmt("%.1e", comm) + ", ibp " + fmt("%.1e", ibp) + ", antisymmetry " +
         fmt("%.1e", anti) + "; ";

    // Globally affine solutions with constant beta.
    double poly_err = 0.0, poly_s = 0.0;
    struct Case {
        int k;
        double c;
        Vec2 grad;
    };
    for (const Case& cs : {Case{1, 3.0, Vec2(0.0, 0.0)}, Case{2, 0.0, Vec2(1.0, 2.0)}})
        for (double p : {2.0, 3.0}) {
            ProblemSpec prob;
            prob.id = "affine";
            const Vec2 beta(1.0, 0.5), grad = cs.grad;
            const double c = cs.c;
            prob.beta = [beta](const Vec2&) { return beta; };
            prob.convective = true;
            prob.constant_beta = true;
            prob.u_exact = [c, grad](const Vec2& x) { return c + grad.dot(x); };
            prob.grad_u_exact = [grad](const Vec2&) { return grad; };
            prob.f = [beta, grad](const Vec2&) { return beta.dot(grad); };
            prob.g = prob.u_exact;
            SolverConfig cfg;
            cfg.p = p;
            const DofLayout L = layout_dofs(m4, cs.k, cs.k - 1, true);
            const Solution sol = solve(m4, L, prob, cfg);
            poly_err = std::max(poly_err, lq_error(prob.u_exact, sol.u, m4, cfg.q()));
            poly_s = std::max(poly_s, sol.report.stabilizer);
            g_constraint_residual = std::max(g_constraint_residual, sol.report.constraint_residual);
        }
    ok = ok && poly_err <= 1e-9 && poly_s <= 1e-18;
    d += "polynomial err " + fmt("%.1e", poly_err) + ", s " + fmt("%.1e", poly_s) + "; ";

    // n = 1 system against a dense solve.
    const ProblemSpec ex1 = get_problem("ex1");
    const Mesh m1 = build_uniform(1);
    const DofLayout L1 = layout_dofs(m1, 2, 1);
    SolverConfig cfg;
    PdwgSystem system(m1, L1, ex1, cfg);
    const WeakFunction zero{Eigen::VectorXd::Zero(L1.num_lambda)};
    const Eigen::VectorXd ref = system.matrix(zero).to_dense().fullPivLu().solve(system.rhs());
    const Solution sol = system.step(zero);
    Eigen::VectorXd x(L1.total());
    x << sol.lambda.coeffs, sol.u.coeffs;
    const double dense = (x - ref).cwiseAbs().maxCoeff();
    ok = ok && L1.total() == 31 && dense <= 1e-10;
    d += "n=1 dense " + fmt("%.1e", dense) + "; ";
    return {ok, d};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"PDWG acceptance criteria"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail, "Criterion known to fail");
    CLI11_PARSE(app, argc, argv);
    const std::set<int> expected(expect_fail.begin(), expect_fail.end());

    std::vector<std::pair<int, std::function<Outcome()>>> criteria;

    const Run p2 = run("ex1", 2, 1, 2.0);
    criteria.emplace_back(1, [&] {
        if (!p2.result)
            return failed_run(p2);
        std::string d;
        bool ok = rates_in(*p2.result, "err_u_0q", 2, 1.90, 2.10, d);
        ok = within_factor(p2.result->table.column("err_u_0q").values[1], 9.96e-4, 2.0, d) && ok;
        return Outcome{ok, d};
    });
    criteria.emplace_back(2, [&] {
        if (!p2.result)
            return failed_run(p2);
        std::string d;
        bool ok = rates_in(*p2.result, "lam_0p", 1, 3.8, 4.2, d);
        ok = rates_in(*p2.result, "lam_1p", 1, 2.9, 3.4, d) && ok;
        ok = rates_in(*p2.result, "lam_2p", 1, 1.85, 2.15, d) && ok;
        return Outcome{ok, d};
    });

    const Run k1 = run("ex1", 1, 1, 2.0);
    criteria.emplace_back(3, [&] {
        if (!k1.result)
            return failed_run(k1);
        std::string d;
        bool ok = rates_in(*k1.result, "err_u_0q", 1, 0.9, 1.15, d);
        ok = rates_in(*k1.result, "lam_1p", 1, 1.8, 2.1, d) && ok;
        return Outcome{ok, d};
    });

    const Run p3 = run("ex1", 2, 1, 3.0);
    criteria.emplace_back(4, [&] {
        if (!p3.result)
            return failed_run(p3);
        std::string d;
        bool ok = rates_in(*p3.result, "err_u_0q", 3, 1.95, 2.30, d);
        int most = 0;
        for (const LevelInfo& l : p3.result->levels)
            most = std::max(most, l.report.iterations);
        ok = ok && most <= 100;
        d += "max iterations " + std::to_string(most) + "; ";
        return Outcome{ok, d};
    });

    const Run p1 = run("ex1", 2, 1, 1.0);
    criteria.emplace_back(5, [&] {
        if (!p1.result)
            return failed_run(p1);
        std::string d;
        return Outcome{rates_in(*p1.result, "err_u_0q", 2, 1.85, 2.1, d), d};
    });

    const Run ex2 = run("ex2", 2, 1, 2.0);
    criteria.emplace_back(6, [&] {
        if (!ex2.result)
            return failed_run(ex2);
        std::string d;
        bool ok = rates_in(*ex2.result, "err_u_0q", 1, 1.9, 2.1, d);
        ok = within_factor(ex2.result->table.column("err_u_0q").values[1], 1.41e-3, 2.0, d) && ok;
        return Outcome{ok, d};
    });

    const Run ex3 = run("ex3", 2, 1, 2.0);
    criteria.emplace_back(7, [&] {
        if (!ex3.result)
            return failed_run(ex3);
        std::string d;
        bool ok = rates_in(*ex3.result, "err_u_0q", 1, 1.9, 2.1, d);
        ok = rates_in(*ex3.result, "lam_0p", 1, 3.8, 4.2, d) && ok;
        return Outcome{ok, d};
    });

    criteria.emplace_back(8, [&] {
        if (!p2.result)
            return failed_run(p2);
        // Levels n = 8..64 give three rates.
        std::string d;
        return Outcome{rates_in(*p2.result, "s_value", 3, 3.5, 4.5, d), d};
    });

    criteria.emplace_back(9, [&] {
        Outcome o = criterion9();
        const bool residual_ok = g_constraint_residual <= 1e-8;
        o.detail += "max |b(v, lambda_h)| " + fmt("%.1e", g_constraint_residual) + "; ";
        o.pass = o.pass && residual_ok;
        return o;
    });

    int unexpected = 0;
    for (const auto& [id, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const bool known = expected.count(id) > 0;
        if (o.pass == known)
            ++unexpected;
        std::printf("%s criterion %d: %s%s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(),
                    known ? (o.pass ? "(expected to fail)" : "(known failure)") : "");
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}
