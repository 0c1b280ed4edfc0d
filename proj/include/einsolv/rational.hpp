#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace einsolv {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p", "-p", "p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact rational value of a finite double.
Rational from_double(double x);

/// Best continued-fraction approximation with denominator <= max_den.
struct Snapped {
  Rational value;
  double error = 0.0;  // |x - value|
};
Snapped snap_rational(double x, std::int64_t max_den = 64);

/// Smallest positive rational lambda with lambda * v_i integral for all i,
/// together with the resulting integers. All-zero input gives lambda = 1.
struct IntegerScaling {
  Rational lambda;
  std::vector<Integer> integers;
};
IntegerScaling integer_scaling(const std::vector<Rational>& values);

}  // namespace einsolv
