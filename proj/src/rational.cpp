#include "einsolv/rational.hpp"

#include "einsolv/errors.hpp"

#include <cctype>
#include <cmath>

namespace einsolv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  Integer p{std::string(num)};
  Integer q{std::string(den)};
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  const Integer& q = boost::multiprecision::denominator(r);
  if (q == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + q.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value cannot be made rational");
  return Rational(x);
}

Snapped snap_rational(double x, std::int64_t max_den) {
  // Continued-fraction convergents h/k, stopping before k exceeds max_den.
  const bool negative = x < 0;
  double rest = std::fabs(x);
  Integer h_prev = 1, h = static_cast<std::int64_t>(std::floor(rest));
  Integer k_prev = 0, k = 1;
  double frac = rest - std::floor(rest);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    rest = 1.0 / frac;
    const auto a = static_cast<std::int64_t>(std::floor(rest));
    frac = rest - std::floor(rest);
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    if (k_next > max_den) {
      // Best semiconvergent that still fits under the cap.
      const Integer t = (max_den - k_prev) / k;
      if (t > 0) {
        Integer hs = t * h + h_prev;
        Integer ks = t * k + k_prev;
        const double es = std::fabs(std::fabs(x) - to_double(Rational(hs, ks)));
        const double ec = std::fabs(std::fabs(x) - to_double(Rational(h, k)));
        if (es < ec) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rational value(h, k);
  if (negative) value = -value;
  return {value, std::fabs(x - to_double(value))};
}

IntegerScaling integer_scaling(const std::vector<Rational>& values) {
  Integer lcm_den = 1;
  for (const auto& v : values) {
    lcm_den = boost::multiprecision::lcm(lcm_den, Integer(boost::multiprecision::denominator(v)));
  }
  std::vector<Integer> scaled;
  scaled.reserve(values.size());
  Integer g = 0;
  for (const auto& v : values) {
    Integer m = boost::multiprecision::numerator(v) * (lcm_den / boost::multiprecision::denominator(v));
    g = boost::multiprecision::gcd(g, Integer(abs(m)));
    scaled.push_back(m);
  }
  if (g == 0) return {Rational(1), scaled};
  for (auto& m : scaled) m /= g;
  return {Rational(lcm_den, g), scaled};
}

}  // namespace einsolv
