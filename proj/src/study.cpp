#include "pdwg/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pdwg/errors.hpp"
#include "pdwg/parallel.hpp"
#include "pdwg/problems.hpp"

namespace pdwg {

namespace {

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string fixed2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* const kColumns[] = {"err_u_0q", "lam_0p", "lam_1p", "lam_2p"};

} // namespace

void StudyConfig::validate() const
{
    if (levels < 2)
        throw ConfigError("levels must be >= 2 to compute rates, got " + std::to_string(levels));
    if (n0 < 1)
        throw ConfigError("n0 must be >= 1, got " + std::to_string(n0));
    if (s_offset != 1 && s_offset != 2)
        throw ConfigError("s-offset must be 1 or 2, got " + std::to_string(s_offset));
    if (k < 1)
        throw ConfigError("k must be >= 1, got " + std::to_string(k));
    if (s_offset == 2 && k < 2)
        throw ConfigError("s-offset 2 needs k >= 2");
    if (!(p >= 1.0))
        throw ConfigError("p must be >= 1");
    if (lattice_order < 1)
        throw ConfigError("lattice order must be >= 1");
    if (quad.triangle_degree > kMaxTriangleDegree)
        throw ConfigError("triangle quadrature degree must be <= " + std::to_string(kMaxTriangleDegree));
    if (quad.edge_points > kMaxEdgePoints)
        throw ConfigError("edge quadrature points must be <= " + std::to_string(kMaxEdgePoints));
    const ProblemSpec problem = get_problem(this->problem);
    if (problem.convective && s_offset != 1)
        throw ConfigError(problem.id + " has convection and requires s-offset 1");
    if (n0 % problem.n_divisor != 0)
        throw ConfigError(problem.id + " requires n0 divisible by " + std::to_string(problem.n_divisor));
}

StudyResult run_study(const StudyConfig& config, const LevelCallback& on_level)
{
    config.validate();
    const ProblemSpec problem = get_problem(config.problem);
    const ConsistencyReport consistency = check_consistency(problem);
    if (!consistency.ok)
        throw Error("problem " + problem.id + " failed its consistency check (PDE residual " +
                    std::to_string(consistency.pde_residual) + ", interface residual " +
                    std::to_string(consistency.interface_residual) + ")");

    const int saved_threads = num_threads();
    if (config.deterministic)
        set_num_threads(1);
    struct Restore {
        int n;
        bool active;
        ~Restore()
        {
            if (active)
                set_num_threads(n);
        }
    } restore{saved_threads, config.deterministic};

    SolverConfig solver;
    solver.p = config.p;
    solver.eps = config.eps;
    solver.rel_tol = config.tol;
    solver.max_iters = config.max_iters;
    solver.quad = config.quad;
    solver.validate();
    const double q = solver.q();
    const int tri_degree = config.quad.triangle(config.k);

    StudyResult result;
    result.config = config;
    std::vector<double> hs, err_u, lam0, lam1, lam2, sval;
    std::vector<int> iterations;

    Mesh mesh = problem.build_mesh(config.n0);
    int n = config.n0;
    for (int level = 0; level < config.levels; ++level) {
        if (level > 0) {
            mesh = refine(mesh);
            n *= 2;
        }
        const auto start = std::chrono::steady_clock::now();
        const DofLayout layout = layout_dofs(mesh, config.k, config.s(), problem.convective);
        const Solution sol = solve(mesh, layout, problem, solver);
        const PrimalFunction lambda0 = interior_part(layout, sol.lambda);

        hs.push_back(mesh.h());
        err_u.push_back(lq_error(problem.u_exact, sol.u, mesh, q, tri_degree, config.lattice_order));
        lam0.push_back(broken_sobolev_norm(lambda0, mesh, 0, config.p, tri_degree));
        lam1.push_back(broken_sobolev_norm(lambda0, mesh, 1, config.p, tri_degree));
        lam2.push_back(broken_sobolev_norm(lambda0, mesh, 2, config.p, tri_degree));
        sval.push_back(sol.report.stabilizer);
        iterations.push_back(sol.report.iterations);

        LevelInfo info;
        info.n = n;
        info.h = mesh.h();
        info.num_lambda = layout.num_lambda;
        info.num_u = layout.num_u;
        info.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        info.report = sol.report;
        if (on_level)
            on_level(info);
        result.levels.push_back(std::move(info));
    }

    result.table = rates_table(hs,
                               {{"err_u_0q", err_u},
                                {"lam_0p", lam0},
                                {"lam_1p", lam1},
                                {"lam_2p", lam2},
                                {"s_value", sval}},
                               iterations);
    return result;
}

std::string format_csv(const ConvergenceTable& table)
{
    std::ostringstream os;
    os << "h";
    for (const char* name : kColumns)
        os << ',' << name << ",rate";
    os << ",s_value,iterations\n";
    for (std::size_t i = 0; i < table.levels(); ++i) {
        os << sci(table.h[i]);
        for (const char* name : kColumns) {
            const ConvergenceColumn& c = table.column(name);
            os << ',' << sci(c.values[i]) << ',' << (i == 0 ? std::string() : sci(c.rates[i]));
        }
        os << ',' << sci(table.column("s_value").values[i]) << ','
           << (i < table.iterations.size() ? table.iterations[i] : 0) << '\n';
    }
    return os.str();
}

std::string format_markdown(const ConvergenceTable& table)
{
    std::vector<std::string> header{"h"};
    for (const char* name : kColumns) {
        header.emplace_back(name);
        header.emplace_back("rate");
    }
    header.emplace_back("s_value");
    header.emplace_back("iterations");

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < table.levels(); ++i) {
        std::vector<std::string> row{sci(table.h[i])};
        for (const char* name : kColumns) {
            const ConvergenceColumn& c = table.column(name);
            row.push_back(sci(c.values[i]));
            row.push_back(i == 0 ? "" : fixed2(c.rates[i]));
        }
        row.push_back(sci(table.column("s_value").values[i]));
        row.push_back(std::to_string(i < table.iterations.size() ? table.iterations[i] : 0));
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) {
        width[j] = header[j].size();
        for (const auto& r : rows)
            width[j] = std::max(width[j], r[j].size());
    }
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& cells) {
        os << '|';
        for (std::size_t j = 0; j < cells.size(); ++j)
            os << ' ' << std::string(width[j] - cells[j].size(), ' ') << cells[j] << " |";
        os << '\n';
    };
    emit(header);
    os << '|';
    for (std::size_t j = 0; j < header.size(); ++j)
        os << std::string(width[j] + 1, '-') << ":|";
    os << '\n';
    for (const auto& r : rows)
        emit(r);
    return os.str();
}

std::string format_table(const ConvergenceTable& table, OutputFormat format)
{
    return format == OutputFormat::kCsv ? format_csv(table) : format_markdown(table);
}

} // namespace pdwg
