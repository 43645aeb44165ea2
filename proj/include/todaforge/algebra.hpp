#pragma once

#include <string>
#include <string_view>

namespace todaforge {

enum class LieFamily : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Simple Lie algebra label: family plus rank. Rank constraints:
///   A: rank >= 1;  B, C: rank >= 2;  D: rank >= 3;  E: rank in {6,7,8};
///   F: rank == 4;  G: rank == 2.
struct LieAlgebraType {
  LieFamily family;
  int rank;

  bool operator==(const LieAlgebraType&) const = default;
};

/// Throws std::invalid_argument naming the violated rank constraint.
void validate_algebra(LieAlgebraType algebra);

LieAlgebraType make_algebra(LieFamily family, int rank);

/// Accepts tokens like "A5", "E8", "G2".
LieAlgebraType parse_algebra(std::string_view token);

std::string algebra_token(LieAlgebraType algebra);

}  // namespace todaforge
