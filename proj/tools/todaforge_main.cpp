// Batch front end: condition checks, local-mass analysis, and the
// fixed-point solver over JSON problem files.
//
// Exit codes: 0 success, 1 condition false / contract failed, 2 input error,
// 3 analysis incomplete, 4 solver did not converge.

#include <CLI11.hpp>

#include "todaforge/pohozaev.hpp"
#include "todaforge/problem_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace todaforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConditionFalse = 1;
constexpr int kExitInputError = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitSolverFailure = 4;

std::string term(const Rat& coeff, const std::string& symbol, bool& first) {
  if (coeff == 0) return "";
  std::string out;
  const Rat mag = abs(coeff);
  if (first) {
    if (coeff < 0) out += "-";
    first = false;
  } else {
    out += coeff < 0 ? " - " : " + ";
  }
  if (mag != 1) out += rat_str(mag) + " ";
  out += symbol;
  return out;
}

std::string identity_text(const PohozaevForm& form) {
  std::ostringstream os;
  bool first = true;
  std::string lhs;
  for (int i = 0; i < form.n(); ++i)
    lhs += term(form.q.at(i, i), "s" + std::to_string(i + 1) + "^2", first);
  for (int i = 0; i < form.n(); ++i)
    for (int j = i + 1; j < form.n(); ++j)
      lhs += term(form.q.at(i, j) * 2, "s" + std::to_string(i + 1) + " s" + std::to_string(j + 1), first);
  first = true;
  std::string rhs;
  for (int i = 0; i < form.n(); ++i)
    rhs += term(form.weight[i], "mu" + std::to_string(i + 1) + " s" + std::to_string(i + 1), first);
  os << lhs << " = " << rhs;
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

struct SolverOverrides {
  std::optional<double> tol, theta, resolution, radius;
  std::optional<int> max_iters;
};

int cmd_check(const std::string& path, const std::string& out_dir) {
  const ProblemFile problem = load_problem_file(path);
  const ExistenceReport existence = check_existence_condition(problem.data, problem.algebra);
  const LtReport lt = check_lt_condition(problem.data);

  std::optional<TroyanovReport> troyanov;
  if (problem.algebra.rank == 1 && problem.data.m() >= 1) {
    bool positive = true;
    for (const Rat& g : problem.data.beta[0]) positive = positive && g > 0;
    if (positive) troyanov = check_troyanov(problem.data.beta[0]);
  }

  std::optional<AssumptionDCheck> d_check;
  if (problem.generator) {
    const AssumptionDParams params =
        generate_assumption_d(problem.generator->n, problem.generator->epsilon);
    d_check = check_assumption_d(params);
  }

  const std::string report = existence_report_json(problem, existence, lt, troyanov, d_check);
  std::cout << report;
  if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / "check.json", report);
  return existence.verdict ? kExitOk : kExitConditionFalse;
}

int cmd_cartan(const std::string& token) {
  const LieAlgebraType algebra = parse_algebra(token);
  const CartanMatrix cartan = build_cartan(algebra);
  const InverseCartanMatrix inverse = inverse_closed_form(algebra);
  const InverseVerification verification = verify_inverse(cartan, inverse);
  std::cout << cartan_report_json(cartan, inverse, verification);
  return kExitOk;
}

int cmd_pohozaev(const std::string& token, const std::vector<double>& mu,
                 const std::vector<double>& box, const std::vector<std::string>& pins, double step,
                 const std::string& out_dir) {
  const LieAlgebraType algebra = parse_algebra(token);
  const int n = algebra.rank;
  if (static_cast<int>(mu.size()) != n)
    throw ProblemFileError("--mu", "expected " + std::to_string(n) + " values");
  const PohozaevForm form = build_pohozaev_form(algebra);

  MassSolveOptions options;
  options.step = step;
  if (!box.empty()) {
    if (box.size() == 1)
      options.box_hi.assign(static_cast<size_t>(n), box[0]);
    else if (static_cast<int>(box.size()) == n)
      options.box_hi = box;
    else
      throw ProblemFileError("--box", "expected 1 or " + std::to_string(n) + " values");
  }
  if (!pins.empty()) {
    options.pinned.assign(static_cast<size_t>(n), std::nullopt);
    for (const std::string& pin : pins) {
      const auto eq = pin.find('=');
      if (eq == std::string::npos) throw ProblemFileError("--pin", "expected i=value");
      const int idx = std::stoi(pin.substr(0, eq));
      if (idx < 1 || idx > n) throw ProblemFileError("--pin", "index out of range");
      options.pinned[static_cast<size_t>(idx - 1)] = std::stod(pin.substr(eq + 1));
    }
  }

  const MassSolveResult result = solve_masses(form, mu, options);

  std::ostringstream csv;
  csv << "# " << algebra_token(algebra) << " local-mass identity: " << identity_text(form) << "\n";
  for (int i = 0; i < n; ++i) csv << "sigma_" << i + 1 << ",";
  csv << "residual,witness_index\n";
  bool all_witnessed = true;
  for (const auto& root : result.roots) {
    double total = 0;
    for (double s : root) total += s;
    const double res = residual(form, root, mu);
    int witness = 0;
    if (total > 1e-9) {
      LocalMassVector masses{algebra, root, mu};
      const DichotomyResult d = dichotomy_check(form, masses);
      witness = d.holds ? d.witness : 0;
      if (!d.holds) all_witnessed = false;
    }
    for (double s : root) csv << format_double(s) << ",";
    csv << format_double(res) << "," << witness << "\n";
  }
  std::cout << csv.str();
  if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / "roots.csv", csv.str());

  if (!result.unresolved.empty()) {
    std::cerr << result.unresolved.size() << " unresolved subdivision cells:\n";
    for (const UnresolvedCell& cell : result.unresolved) {
      std::cerr << "  cell at";
      for (double c : cell.corner) std::cerr << " " << format_double(c);
      std::cerr << "\n";
    }
    return kExitIncomplete;
  }
  return all_witnessed ? kExitOk : kExitConditionFalse;
}

int cmd_solve(const std::string& path, const SolverOverrides& over, const std::string& out_dir) {
  const ProblemFile problem = load_problem_file(path);
  if (!problem.solver) throw ProblemFileError("solver", "solve requires a solver block");
  if (problem.data.m() > 0 && problem.data.points.empty())
    throw ProblemFileError("points", "solve requires point positions");

  SolverParams params = *problem.solver;
  if (over.tol) params.tol = *over.tol;
  if (over.theta) params.theta = *over.theta;
  if (over.resolution) params.resolution = *over.resolution;
  if (over.radius) params.radius = *over.radius;
  if (over.max_iters) params.max_iters = *over.max_iters;

  TodaSolver solver(make_setup(problem.data, problem.algebra), params);
  const TodaSolver::SolveResult sol = solver.iterate();

  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;

  std::ostringstream history;
  history << "iter,step\n";
  for (const auto& row : sol.history) history << row.iter << "," << format_double(row.step) << "\n";
  write_file(dir / "history.csv", history.str());

  if (!sol.converged) {
    ContractReport empty;
    std::cout << contract_report_json(empty, sol, 0.0);
    std::cerr << "solver failed: " << sol.failure << "\n";
    return kExitSolverFailure;
  }

  const int n = solver.setup().n();
  std::ostringstream fields;
  fields << "x,y";
  for (int i = 0; i < n; ++i) fields << ",u_" << i + 1;
  fields << "\n";
  for (size_t s = 0; s < solver.grid().nodes.size(); ++s) {
    const Point2 x = solver.to_external(solver.grid().nodes[s].pos);
    fields << format_double(x.x) << "," << format_double(x.y);
    for (int i = 0; i < n; ++i) fields << "," << format_double(sol.u[static_cast<size_t>(i)][s]);
    fields << "\n";
  }
  write_file(dir / "fields.csv", fields.str());

  const ContractReport rep = solver.verify_solution(sol);
  const double rewrite_dev = solver.kernel_rewrite_max_dev(sol.v);
  const std::string report = contract_report_json(rep, sol, rewrite_dev);
  std::cout << report;
  write_file(dir / "report.json", report);

  return rep.all_pass ? kExitOk : kExitConditionFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singular Toda system toolkit"};
  app.require_subcommand(1);

  std::string path, token, out_dir;
  std::vector<double> mu, box;
  std::vector<std::string> pins;
  double step = 1e-2;
  SolverOverrides over;
  std::string format = "json";

  CLI::App* check = app.add_subcommand("check", "evaluate the exponent conditions of a problem file");
  check->add_option("file", path, "problem file")->required();
  check->add_option("--out-dir", out_dir, "directory for the JSON report");
  check->add_option("--format", format, "json (default)");

  CLI::App* cartan = app.add_subcommand("cartan", "print a Cartan matrix, its inverse, and checks");
  cartan->add_option("algebra", token, "algebra token, e.g. A5, E8, G2")->required();

  CLI::App* pohozaev = app.add_subcommand("pohozaev", "local-mass identity roots and witnesses");
  pohozaev->add_option("algebra", token, "algebra token")->required();
  pohozaev->add_option("--mu", mu, "weights mu_i in (0,1]")->required();
  pohozaev->add_option("--box", box, "upper bounds (one value or one per component)");
  pohozaev->add_option("--pin", pins, "pin a coordinate, i=value");
  pohozaev->add_option("--step", step, "subdivision step");
  pohozaev->add_option("--out-dir", out_dir, "directory for the CSV");

  CLI::App* solve = app.add_subcommand("solve", "run the fixed-point solver on a problem file");
  solve->add_option("file", path, "problem file with a solver block")->required();
  solve->add_option("--out-dir", out_dir, "output directory (fields.csv, report.json, history.csv)");
  solve->add_option("--tol", over.tol, "stopping tolerance");
  solve->add_option("--max-iters", over.max_iters, "iteration cap");
  solve->add_option("--theta", over.theta, "damping");
  solve->add_option("--resolution", over.resolution, "background cells per unit length");
  solve->add_option("--radius", over.radius, "truncation radius");
  solve->add_option("--format", format, "json (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*check) return cmd_check(path, out_dir);
    if (*cartan) return cmd_cartan(token);
    if (*pohozaev) return cmd_pohozaev(token, mu, box, pins, step, out_dir);
    if (*solve) return cmd_solve(path, over, out_dir);
  } catch (const ProblemFileError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitInputError;
}
