#include "todaforge/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace todaforge {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

// Explicit base 10; the mpz_class string constructor auto-detects the base
// and would read a leading zero as octal.
mpz_class mpz_decimal(std::string_view digits) {
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), std::string(digits).c_str(), 10) != 0)
    throw std::invalid_argument("bad digits '" + std::string(digits) + "'");
  return z;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    if (s.empty()) bad(text);
  }

  auto finish = [&](Rat r) {
    r.canonicalize();
    return negative ? Rat(-r) : r;
  };

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class nz = mpz_decimal(num);
    mpz_class dz = mpz_decimal(den);
    if (dz == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return finish(Rat(nz, dz));
  }

  // Decimal literal: digits [. digits] [e|E [sign] digits]
  std::string_view mantissa = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) bad(text);
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }

  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad(text);
    if (!ip.empty() && !all_digits(ip)) bad(text);
    if (!fp.empty() && !all_digits(fp)) bad(text);
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) bad(text);
    digits = std::string(mantissa);
  }
  if (digits.empty()) bad(text);

  mpz_class num = mpz_decimal(digits);
  mpz_class den(1);
  long net = exp10 - frac_digits;
  mpz_class ten(10), pow10;
  mpz_pow_ui(pow10.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(net < 0 ? -net : net));
  if (net >= 0)
    num *= pow10;
  else
    den = pow10;
  return finish(Rat(num, den));
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace todaforge
