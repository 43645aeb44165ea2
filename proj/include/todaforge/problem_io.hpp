#pragma once

#include "todaforge/conditions.hpp"
#include "todaforge/solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace todaforge {

/// Schema or value error in a problem file; `where` names the offending field.
struct ProblemFileError : std::runtime_error {
  explicit ProblemFileError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), field(where) {}
  std::string field;
};

struct GeneratorBlock {
  int n = 0;
  Rat epsilon;
};

/// Parsed problem file. Exactly one of `data.beta` (direct exponent matrix)
/// or `generator` is present; with a generator the exponent layout is filled
/// in from the generated family and points, when absent, are placed evenly
/// on a circle of radius 1.5.
struct ProblemFile {
  LieAlgebraType algebra;
  SingularityData data;
  std::optional<GeneratorBlock> generator;
  std::optional<SolverParams> solver;
};

/// Parses and validates a problem file. Accepts exponents as rational
/// strings ("1/2000"), decimal strings, or JSON numbers (converted exactly).
ProblemFile load_problem_file(const std::string& path);
ProblemFile parse_problem_json(const std::string& text);

// JSON report builders; all output is deterministic (sorted keys, fixed
// number formatting) so identical runs are byte-identical.
std::string existence_report_json(const ProblemFile& problem, const ExistenceReport& rep,
                                  const LtReport& lt, const std::optional<TroyanovReport>& troyanov,
                                  const std::optional<AssumptionDCheck>& d_check);
std::string contract_report_json(const ContractReport& rep, const TodaSolver::SolveResult& sol,
                                 double rewrite_dev);
std::string cartan_report_json(const CartanMatrix& cartan, const InverseCartanMatrix& inverse,
                               const InverseVerification& verification);

std::string format_double(double v);

}  // namespace todaforge
