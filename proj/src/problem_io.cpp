#include "todaforge/problem_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace todaforge {

using nlohmann::json;

namespace {

Rat rat_from_json(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return rat_of(v.get<long>());
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw ProblemFileError(where, "non-finite number");
      return Rat(d);  // exact binary expansion of the double
    }
  } catch (const ProblemFileError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProblemFileError(where, e.what());
  }
  throw ProblemFileError(where, "expected a number or a rational string");
}

SolverParams solver_from_json(const json& v) {
  SolverParams p;
  if (!v.is_object()) throw ProblemFileError("solver", "expected an object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    const std::string& key = it.key();
    if (key == "R")
      p.radius = it.value().get<double>();
    else if (key == "resolution")
      p.resolution = it.value().get<double>();
    else if (key == "theta")
      p.theta = it.value().get<double>();
    else if (key == "tol")
      p.tol = it.value().get<double>();
    else if (key == "max_iters")
      p.max_iters = it.value().get<int>();
    else if (key == "threads")
      p.threads = it.value().get<int>();
    else
      throw ProblemFileError("solver." + key, "unknown field");
  }
  return p;
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& e) {
    throw ProblemFileError("json", e.what());
  }
  if (!root.is_object()) throw ProblemFileError("root", "expected an object");

  ProblemFile out;
  if (!root.contains("algebra") || !root["algebra"].is_string())
    throw ProblemFileError("algebra", "required string field");
  try {
    out.algebra = parse_algebra(root["algebra"].get<std::string>());
  } catch (const std::exception& e) {
    throw ProblemFileError("algebra", e.what());
  }

  const bool has_beta = root.contains("beta");
  const bool has_generator = root.contains("assumption_d");
  if (has_beta == has_generator)
    throw ProblemFileError("beta", "exactly one of 'beta' or 'assumption_d' must be present");

  if (has_generator) {
    const json& g = root["assumption_d"];
    if (!g.is_object() || !g.contains("n") || !g.contains("epsilon"))
      throw ProblemFileError("assumption_d", "expected {n, epsilon}");
    GeneratorBlock block;
    block.n = g["n"].get<int>();
    block.epsilon = rat_from_json(g["epsilon"], "assumption_d.epsilon");
    if (block.n != out.algebra.rank)
      throw ProblemFileError("assumption_d.n", "must equal the algebra rank");
    AssumptionDParams params = generate_assumption_d(block.n, block.epsilon);
    out.data = layout_beta_from_d(params);
    out.generator = block;
  } else {
    const json& b = root["beta"];
    if (!b.is_array() || b.empty()) throw ProblemFileError("beta", "expected a non-empty array of rows");
    for (size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_array()) throw ProblemFileError("beta[" + std::to_string(i) + "]", "expected an array");
      std::vector<Rat> row;
      for (size_t l = 0; l < b[i].size(); ++l)
        row.push_back(rat_from_json(b[i][l], "beta[" + std::to_string(i) + "][" + std::to_string(l) + "]"));
      out.data.beta.push_back(std::move(row));
    }
    if (static_cast<int>(out.data.beta.size()) != out.algebra.rank)
      throw ProblemFileError("beta", "row count must equal the algebra rank");
  }

  if (root.contains("points")) {
    const json& pts = root["points"];
    if (!pts.is_array()) throw ProblemFileError("points", "expected an array of [x,y]");
    for (size_t l = 0; l < pts.size(); ++l) {
      if (!pts[l].is_array() || pts[l].size() != 2)
        throw ProblemFileError("points[" + std::to_string(l) + "]", "expected [x,y]");
      out.data.points.push_back(Point2{pts[l][0].get<double>(), pts[l][1].get<double>()});
    }
  } else if (out.generator) {
    // Default placement for generated families: evenly spaced on a circle.
    const int m = out.data.m();
    for (int l = 0; l < m; ++l) {
      const double phi = 2 * std::numbers::pi * l / m;
      out.data.points.push_back(Point2{1.5 * std::cos(phi), 1.5 * std::sin(phi)});
    }
  }

  try {
    validate(out.data);
  } catch (const std::exception& e) {
    throw ProblemFileError("beta/points", e.what());
  }

  if (root.contains("solver")) out.solver = solver_from_json(root["solver"]);
  return out;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFileError("file", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_json(ss.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

json rat_vec_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& r : v) a.push_back(rat_str(r));
  return a;
}

json bool_table_json(const std::vector<std::vector<bool>>& t) {
  json a = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    a.push_back(r);
  }
  return a;
}

}  // namespace

std::string existence_report_json(const ProblemFile& problem, const ExistenceReport& rep,
                                  const LtReport& lt, const std::optional<TroyanovReport>& troyanov,
                                  const std::optional<AssumptionDCheck>& d_check) {
  json out;
  out["algebra"] = algebra_token(problem.algebra);
  out["n"] = problem.data.n();
  out["m"] = problem.data.m();
  out["beta_total"] = rat_vec_json(rep.summary.beta_total);
  out["beta_bar"] = rat_vec_json(rep.summary.beta_bar);

  json ex;
  ex["verdict"] = rep.verdict;
  ex["condition_direct"] = bool_table_json(rep.condition_direct);
  ex["condition_mass"] = bool_table_json(rep.condition_mass);
  json bp = json::array(), bbp = json::array();
  for (bool b : rep.beta_positive) bp.push_back(b);
  for (bool b : rep.beta_bar_positive) bbp.push_back(b);
  ex["beta_positive"] = bp;
  ex["beta_bar_positive"] = bbp;
  if (rep.first_fail_i >= 0) {
    ex["first_violation"] = {{"i", rep.first_fail_i + 1}, {"l", rep.first_fail_l + 1}};
  }
  out["existence"] = ex;

  json ltj;
  ltj["verdict"] = lt.verdict;
  ltj["table"] = bool_table_json(lt.table);
  out["lt_condition"] = ltj;

  if (troyanov) {
    json tj;
    tj["verdict"] = troyanov->verdict;
    tj["window_form"] = troyanov->window_form;
    tj["sum_form"] = troyanov->sum_form;
    out["troyanov"] = tj;
  }
  if (d_check) {
    json dj;
    dj["d1"] = d_check->d1;
    dj["d2"] = d_check->d2;
    dj["d3"] = d_check->d3;
    dj["d4"] = d_check->d4;
    dj["d5"] = d_check->d5;
    dj["edge_sums_straddle_one"] = d_check->edge_sums_straddle_one;
    dj["tails_below_fiftieth"] = d_check->tails_below_fiftieth;
    dj["all"] = d_check->all();
    out["assumption_d"] = dj;
  }
  return out.dump(2) + "\n";
}

std::string contract_report_json(const ContractReport& rep, const TodaSolver::SolveResult& sol,
                                 double rewrite_dev) {
  json out;
  out["converged"] = sol.converged;
  out["iterations"] = sol.iterations;
  out["final_step"] = format_double(sol.final_step);
  if (!sol.failure.empty()) out["failure"] = sol.failure;
  out["existence_warning"] = sol.existence_warning;
  out["kernel_rewrite_max_dev"] = format_double(rewrite_dev);

  json masses = json::array();
  for (const MassContract& m : rep.mass) {
    json mj;
    mj["grid_mass"] = format_double(m.grid_mass);
    mj["modeled_mass"] = format_double(m.modeled_mass);
    mj["target"] = format_double(m.target);
    mj["rel_err"] = format_double(m.rel_err);
    mj["pass"] = m.pass;
    masses.push_back(mj);
  }
  out["mass"] = masses;

  json decays = json::array();
  for (const DecayContract& d : rep.decay) {
    json dj;
    dj["oscillation"] = format_double(d.oscillation);
    dj["pass"] = d.pass;
    decays.push_back(dj);
  }
  out["decay"] = decays;

  json pj;
  pj["rel_l1"] = format_double(rep.pde.rel_l1);
  pj["bound"] = format_double(rep.pde.bound);
  pj["nodes_checked"] = rep.pde.nodes_checked;
  pj["pass"] = rep.pde.pass;
  out["pde_residual"] = pj;

  json kelvins = json::array();
  for (const KelvinContract& k : rep.kelvin) {
    json kj;
    kj["sup"] = format_double(k.sup);
    kj["oscillation"] = format_double(k.oscillation);
    kj["pass"] = k.pass;
    kelvins.push_back(kj);
  }
  out["kelvin"] = kelvins;

  out["all_pass"] = rep.all_pass;
  return out.dump(2) + "\n";
}

std::string cartan_report_json(const CartanMatrix& cartan, const InverseCartanMatrix& inverse,
                               const InverseVerification& verification) {
  json out;
  out["algebra"] = algebra_token(cartan.algebra);
  json cm = json::array();
  for (const auto& row : cartan.a) {
    json r = json::array();
    for (int v : row) r.push_back(v);
    cm.push_back(r);
  }
  out["cartan"] = cm;
  json im = json::array();
  for (int i = 0; i < inverse.n(); ++i) {
    json r = json::array();
    for (int j = 0; j < inverse.n(); ++j) r.push_back(rat_str(inverse.c.at(i, j)));
    im.push_back(r);
  }
  out["inverse"] = im;
  out["identity_ok"] = verification.identity_ok;
  out["entry_bound_ok"] = verification.bound_ok;
  out["max_deviation"] = rat_str(verification.max_deviation);
  return out.dump(2) + "\n";
}

}  // namespace todaforge
