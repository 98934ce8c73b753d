// Command-line front end: probe / solve / grid / compare-poly.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "dsing/benchmarks.hpp"
#include "dsing/linalg.hpp"
#include "dsing/problem_io.hpp"

namespace {

using namespace dsing;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitSingular = 3;

struct CommonFlags {
  std::optional<Real> tol1, tol2, tol3, beta, eps0, eps_low, eps_up;
  std::optional<int> kmax;
  bool scaled = false;
  std::optional<unsigned> seed;
  int threads = 1;

  void attach(CLI::App* app) {
    auto opt = [&](const char* name, auto& slot, const char* desc) {
      app->add_option(name, slot, desc);
    };
    opt("--tol1", tol1, "functional zero threshold");
    opt("--tol2", tol2, "bracket width target");
    opt("--tol3", tol3, "Taylor probe tolerance");
    opt("--beta", beta, "node recount trigger on the coefficient ratio");
    opt("--eps0", eps0, "initial epsilon");
    opt("--eps-low", eps_low, "initial lower bracket");
    opt("--eps-up", eps_up, "initial upper bracket");
    opt("--kmax", kmax, "outer iteration cap");
    app->add_flag("--scaled", scaled, "use the scaled functional");
    opt("--seed", seed, "random seed");
    opt("--threads", threads, "worker threads for grid evaluation");
  }

  void apply(OuterOptions& o) const {
    if (tol1) o.tol1 = *tol1;
    if (tol2) o.tol2 = *tol2;
    if (tol3) o.tol3 = *tol3;
    if (beta) o.beta = *beta;
    if (eps0) o.eps0 = *eps0;
    if (eps_low) o.eps_low = *eps_low;
    if (eps_up) o.eps_up = *eps_up;
    if (kmax) o.k_max = *kmax;
    if (scaled) o.scaled_functional = true;
    if (seed) o.seed = *seed;
  }
};

GridSpec default_grid(const MatrixValuedFunction& f, std::optional<Real> step) {
  GridSpec grid =
      f.is_polynomial() ? GridSpec::polynomial_default() : GridSpec::function_default();
  if (step) grid.step = *step;
  return grid;
}

void attach_grid_summary(DistanceReport& report, const MatrixValuedFunction& fn_norm,
                         const GridSpec& grid, int threads) {
  const GridSummary s =
      grid_sigma_min(fn_norm, report.delta_star, report.eps_star, grid, false, threads);
  report.has_grid = true;
  report.grid_max_sigma = s.max_sigma_min;
  report.grid_min_sigma = s.min_sigma_min;
  report.grid_count = s.count;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_probe(const Problem& problem) {
  auto [fn, record] = normalize(problem.function, problem.options.norm_points);
  ProbeOptions opts{problem.options.m_min, problem.options.m_max, problem.options.tol3};
  const ProbeResult result = choose_num_points(perturbed_det_fn(fn, {}, 0.0), opts);

  std::cout << "normalization alpha = " << record.alpha << " (" << record.points
            << " nodes, max |det| before = " << record.max_abs_det_before << ")\n";
  std::cout << "    m   max |a_j|, j in [m, 2m]\n";
  for (const auto& [m, worst] : result.decay)
    std::cout << "  " << m << "   " << worst << "\n";
  if (!result.converged) {
    std::cout << "no m in [" << opts.m_min << ", " << opts.m_max
              << "] meets tol = " << opts.tol << "; using m = " << result.m << "\n";
    return kExitNumerical;
  }
  std::cout << "chosen m = " << result.m << " (tol = " << opts.tol << ")\n";
  return kExitOk;
}

int cmd_solve(const Problem& problem, const std::string& out_path,
              std::optional<Real> grid_step, int threads, bool skip_grid) {
  const auto start = std::chrono::steady_clock::now();
  DistanceReport report =
      distance_to_singularity(problem.function, problem.structure, problem.options);
  if (!skip_grid) {
    auto [fn, rec] = normalize(problem.function, problem.options.norm_points);
    attach_grid_summary(report, fn, default_grid(problem.function, grid_step), threads);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  ReportFile rf{std::move(report), kToolVersion, elapsed.count()};
  const std::string text = serialize_report(rf);
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);

  const DistanceReport& r = rf.report;
  std::cerr << "eps_star = " << r.eps_star << " (original scale "
            << r.eps_star_original << "), m = " << r.final_m << ", "
            << r.iterations.size() << " iterations, converged = "
            << (r.converged ? "yes" : "no") << "\n";
  return r.converged ? kExitOk : kExitNumerical;
}

int cmd_grid(const Problem& problem, const std::string& report_path,
             const std::string& out_path, std::optional<Real> grid_step, int threads) {
  const ReportFile rf = load_report(report_path);
  const auto& delta = rf.report.delta_star;
  if (static_cast<int>(delta.size()) != problem.function.num_terms() ||
      (!delta.empty() && delta.front().rows() != problem.function.size()))
    throw ParseError("report perturbation does not match the problem dimensions");

  auto [fn, record] = normalize(problem.function, problem.options.norm_points);
  const GridSpec grid = default_grid(problem.function, grid_step);
  const GridSummary summary =
      grid_sigma_min(fn, delta, rf.report.eps_star, grid, true, threads);

  if (out_path.empty()) {
    write_grid_csv(std::cout, summary);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_grid_csv(out, summary);
  }
  std::cerr << summary.count << " nodes, sigma_min in [" << summary.min_sigma_min
            << ", " << summary.max_sigma_min << "]\n";
  return kExitOk;
}

int cmd_compare_poly(const Problem& problem, const std::string& out_prefix,
                     std::optional<int> fta_points, std::optional<Real> grid_step,
                     int threads) {
  const int fta_m = fta_points ? *fta_points : fta_point_count(problem.function);

  auto run = [&](std::optional<int> fixed_m) {
    OuterOptions opts = problem.options;
    opts.scaled_functional = true;
    opts.fixed_m = fixed_m;
    const auto start = std::chrono::steady_clock::now();
    DistanceReport report =
        distance_to_singularity(problem.function, problem.structure, opts);
    auto [fn, rec] = normalize(problem.function, opts.norm_points);
    attach_grid_summary(report, fn, default_grid(problem.function, grid_step), threads);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    return ReportFile{std::move(report), kToolVersion, elapsed.count()};
  };

  const ReportFile adaptive = run(std::nullopt);
  const ReportFile fta = run(fta_m);

  if (!out_prefix.empty()) {
    write_text(out_prefix + "_adaptive.json", serialize_report(adaptive));
    write_text(out_prefix + "_fta.json", serialize_report(fta));
  }

  auto row = [](const char* label, auto a, auto b) {
    std::cout << "  " << label << a << "   " << b << "\n";
  };
  std::cout << "                  adaptive        fta\n";
  row("distance       ", adaptive.report.eps_star_original, fta.report.eps_star_original);
  row("num points     ", adaptive.report.final_m, fta.report.final_m);
  row("time [s]       ", adaptive.wall_seconds, fta.wall_seconds);
  row("iterations     ", adaptive.report.iterations.size(), fta.report.iterations.size());
  row("max sigma_min  ", adaptive.report.grid_max_sigma, fta.report.grid_max_sigma);
  row("min sigma_min  ", adaptive.report.grid_min_sigma, fta.report.grid_min_sigma);
  row("svd count      ", adaptive.report.svd_count, fta.report.svd_count);

  const bool ok = adaptive.report.converged && fta.report.converged;
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance to singularity of entire matrix-valued functions"};
  app.require_subcommand(1);

  std::string problem_path, report_path, out_path, out_prefix;
  std::optional<Real> grid_step;
  std::optional<int> fta_points;
  bool skip_grid = false;
  CommonFlags flags;

  CLI::App* probe = app.add_subcommand("probe", "choose the number of circle nodes");
  probe->add_option("problem", problem_path, "problem file")->required();
  flags.attach(probe);

  CLI::App* solve = app.add_subcommand("solve", "approximate the distance to singularity");
  solve->add_option("problem", problem_path, "problem file")->required();
  solve->add_option("--out", out_path, "report output path");
  solve->add_option("--grid-step", grid_step, "verification grid step");
  solve->add_flag("--no-grid", skip_grid, "skip the verification grid");
  flags.attach(solve);

  CLI::App* grid = app.add_subcommand("grid", "evaluate sigma_min on a grid");
  grid->add_option("problem", problem_path, "problem file")->required();
  grid->add_option("report", report_path, "report file with the perturbation")->required();
  grid->add_option("--out", out_path, "CSV output path");
  grid->add_option("--grid-step", grid_step, "grid step");
  flags.attach(grid);

  CLI::App* compare = app.add_subcommand(
      "compare-poly", "adaptive vs fundamental-theorem-of-algebra node counts");
  compare->add_option("problem", problem_path, "problem file")->required();
  compare->add_option("--out", out_prefix, "output path prefix for the two reports");
  compare->add_option("--fta-points", fta_points,
                      "override the (d-1)n+1 node count (e.g. from a known degree)");
  compare->add_option("--grid-step", grid_step, "verification grid step");
  flags.attach(compare);

  CLI11_PARSE(app, argc, argv);

  try {
    Problem problem = load_problem(problem_path);
    flags.apply(problem.options);

    if (probe->parsed()) return cmd_probe(problem);
    if (solve->parsed())
      return cmd_solve(problem, out_path, grid_step, flags.threads, skip_grid);
    if (grid->parsed())
      return cmd_grid(problem, report_path, out_path, grid_step, flags.threads);
    if (compare->parsed())
      return cmd_compare_poly(problem, out_prefix, fta_points, grid_step, flags.threads);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PossiblySingularError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
