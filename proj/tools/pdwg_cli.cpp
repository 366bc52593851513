// Command-line driver for PDWG convergence studies. Uses only the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pdwg/pdwg.h"

namespace {

constexpr int kExitConfig = 2;

int report(pdwg_status status)
{
    std::cerr << "error: " << pdwg_last_error() << '\n';
    return static_cast<int>(status);
}

bool write_output(const std::string& path, const char* text)
{
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
        return true;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return false;
    }
    out << text;
    return static_cast<bool>(out);
}

void print_level(void* user, const pdwg_row* row)
{
    if (*static_cast<bool*>(user))
        return;
    std::fprintf(stderr, "n=%-4d h=%.3e unknowns=%ld+%ld iterations=%d time=%.2fs\n", row->n,
                 row->h, row->num_lambda, row->num_u, row->iterations, row->seconds);
}

struct StudyOptions {
    std::string problem = "ex1";
    int k = 2;
    int s_offset = 1;
    double p = 2.0;
    int n0 = 4;
    int levels = 5;
    double eps = 1e-3;
    double tol = 1e-10;
    int max_iters = 100;
    int triangle_degree = 0;
    int edge_points = 0;
    int lattice_order = 10;
    std::string format = "csv";
    std::string output;
    bool deterministic = false;
    bool quiet = false;
};

int run_study(const StudyOptions& o)
{
    pdwg_study* study = nullptr;
    if (pdwg_status st = pdwg_study_create(&study); st != PDWG_OK)
        return report(st);
    struct Guard {
        pdwg_study* s;
        ~Guard() { pdwg_study_destroy(s); }
    } guard{study};

    bool quiet = o.quiet;
    pdwg_status st = pdwg_study_set_problem(study, o.problem.c_str());
    if (st == PDWG_OK) st = pdwg_study_set_degree(study, o.k, o.s_offset);
    if (st == PDWG_OK) st = pdwg_study_set_p(study, o.p);
    if (st == PDWG_OK) st = pdwg_study_set_levels(study, o.n0, o.levels);
    if (st == PDWG_OK) st = pdwg_study_set_solver(study, o.eps, o.tol, o.max_iters);
    if (st == PDWG_OK) st = pdwg_study_set_quadrature(study, o.triangle_degree, o.edge_points);
    if (st == PDWG_OK) st = pdwg_study_set_lattice_order(study, o.lattice_order);
    if (st == PDWG_OK) st = pdwg_study_set_deterministic(study, o.deterministic ? 1 : 0);
    if (st == PDWG_OK) st = pdwg_study_set_callback(study, print_level, &quiet);
    if (st == PDWG_OK) st = pdwg_study_run(study);
    if (st != PDWG_OK)
        return report(st);

    char* text = nullptr;
    const pdwg_format fmt = o.format == "markdown" ? PDWG_FORMAT_MARKDOWN : PDWG_FORMAT_CSV;
    if (st = pdwg_study_format(study, fmt, &text); st != PDWG_OK)
        return report(st);
    const bool ok = write_output(o.output, text);
    pdwg_string_free(text);
    return ok ? 0 : 1;
}

int run_mesh(const std::string& problem, int n, const std::string& output)
{
    char* text = nullptr;
    if (pdwg_status st = pdwg_mesh_dump(problem.c_str(), n, &text); st != PDWG_OK)
        return report(st);
    const bool ok = write_output(output, text);
    pdwg_string_free(text);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Primal-dual weak Galerkin convergence studies for convection-diffusion problems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pdwg_version()));

    StudyOptions o;
    int threads = 0;
    CLI::App* study = app.add_subcommand("study", "Run a convergence study and print the error table");
    study->add_option("--problem", o.problem, "Problem id")
        ->check(CLI::IsMember({"ex1", "ex2", "ex3"}))
        ->capture_default_str();
    study->add_option("--k", o.k, "Polynomial degree of the weak functions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    study->add_option("--s-offset", o.s_offset, "Degree of u is k - s_offset")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    study->add_option("--p", o.p, "Exponent p >= 1 of the stabilizer")
        ->check(CLI::Range(1.0, 1e6))
        ->capture_default_str();
    study->add_option("--n0", o.n0, "Squares per side on the coarsest mesh")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    study->add_option("--levels", o.levels, "Number of refinement levels")->capture_default_str();
    study->add_option("--eps", o.eps, "Regularization of the reweighted stabilizer")
        ->capture_default_str();
    study->add_option("--tol", o.tol, "Relative change stopping the Picard iteration")
        ->capture_default_str();
    study->add_option("--max-iters", o.max_iters, "Maximum Picard iterations")->capture_default_str();
    study->add_option("--triangle-degree", o.triangle_degree,
                      "Exactness of the triangle quadrature (default 2k+4)");
    study->add_option("--edge-points", o.edge_points, "Gauss points per edge (default k+3)");
    study->add_option("--lattice-order", o.lattice_order, "Sampling lattice for the max norm")
        ->capture_default_str();
    study->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    study->add_option("--output,-o", o.output, "Output file (default stdout)");
    study->add_flag("--deterministic", o.deterministic, "Single-threaded reference mode");
    study->add_flag("--quiet,-q", o.quiet, "Do not print per-level progress");
    study->add_option("--threads", threads, "Worker threads (overrides PDWG_NUM_THREADS)");

    std::string mesh_problem = "ex1";
    int mesh_n = 4;
    std::string mesh_output;
    CLI::App* mesh = app.add_subcommand("mesh", "Dump the mesh of a problem as plain text");
    mesh->add_option("--problem", mesh_problem, "Problem id")
        ->check(CLI::IsMember({"ex1", "ex2", "ex3"}))
        ->capture_default_str();
    mesh->add_option("--n", mesh_n, "Squares per side")->check(CLI::PositiveNumber)->capture_default_str();
    mesh->add_option("--output,-o", mesh_output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (threads > 0)
        pdwg_set_num_threads(threads);
    if (*study)
        return run_study(o);
    return run_mesh(mesh_problem, mesh_n, mesh_output);
}
