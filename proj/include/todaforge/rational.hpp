#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace todaforge {

/// Exact rational scalar used throughout the condition and matrix code.
using Rat = mpq_class;

/// Parses "p/q", plain integers, and decimal literals ("0.125", "-3.5e-2")
/// into an exact rational. Throws std::invalid_argument on malformed input.
Rat parse_rat(std::string_view text);

/// Canonical string form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& r);

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace todaforge
