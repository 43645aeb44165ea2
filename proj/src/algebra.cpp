#include "todaforge/algebra.hpp"

#include <cctype>
#include <stdexcept>

namespace todaforge {

void validate_algebra(LieAlgebraType algebra) {
  const int n = algebra.rank;
  auto fail = [&](const char* constraint) {
    throw std::invalid_argument("algebra " + std::string(1, static_cast<char>(algebra.family)) +
                                std::to_string(n) + " invalid: " + constraint);
  };
  switch (algebra.family) {
    case LieFamily::A:
      if (n < 1) fail("family A requires rank >= 1");
      break;
    case LieFamily::B:
      if (n < 2) fail("family B requires rank >= 2");
      break;
    case LieFamily::C:
      if (n < 2) fail("family C requires rank >= 2");
      break;
    case LieFamily::D:
      if (n < 3) fail("family D requires rank >= 3");
      break;
    case LieFamily::E:
      if (n < 6 || n > 8) fail("family E requires rank in {6,7,8}");
      break;
    case LieFamily::F:
      if (n != 4) fail("family F requires rank == 4");
      break;
    case LieFamily::G:
      if (n != 2) fail("family G requires rank == 2");
      break;
    default:
      fail("unknown family");
  }
}

LieAlgebraType make_algebra(LieFamily family, int rank) {
  LieAlgebraType a{family, rank};
  validate_algebra(a);
  return a;
}

LieAlgebraType parse_algebra(std::string_view token) {
  if (token.size() < 2) throw std::invalid_argument("algebra token too short: '" + std::string(token) + "'");
  char f = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
  if (f < 'A' || f > 'G')
    throw std::invalid_argument("unknown algebra family in token '" + std::string(token) + "'");
  std::string_view digits = token.substr(1);
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad rank in algebra token '" + std::string(token) + "'");
  if (digits.size() > 3) throw std::invalid_argument("rank out of range in token '" + std::string(token) + "'");
  return make_algebra(static_cast<LieFamily>(f), std::stoi(std::string(digits)));
}

std::string algebra_token(LieAlgebraType algebra) {
  return std::string(1, static_cast<char>(algebra.family)) + std::to_string(algebra.rank);
}

}  // namespace todaforge
