#include "toric_cy/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "toric_cy/error.hpp"

namespace toric_cy {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(Errc::InvalidInput, "not an integer: '" + std::string(s) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::InvalidInput, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // decimal with optional exponent
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    Integer ez = parse_integer(exp_text);
    if (!ez.fits_slong_p() || abs(ez) > 4000) {
      throw Error(Errc::InvalidInput, "exponent out of range in '" + std::string(text) + "'");
    }
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
      throw Error(Errc::InvalidInput, "not a number: '" + std::string(text) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw Error(Errc::InvalidInput, "not a number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - frac_digits;
  Rational q;
  if (shift >= 0) {
    q = Rational(Integer(num * pow10(static_cast<unsigned long>(shift))));
  } else {
    q = Rational(num, pow10(static_cast<unsigned long>(-shift)));
  }
  q.canonicalize();
  return q;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw Error(Errc::InvalidInput, "non-finite value has no rational form");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

RationalVector to_rational(const IntVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(static_cast<signed long>(x));
  return out;
}

std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rational& q : v) out.push_back(q.get_d());
  return out;
}

long long dot(const IntVector& a, const IntVector& b) {
  long long acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

long long gcd_of(std::span<const long long> v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

IntVector primitive_part(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const Integer& x : v) g = gcd(g, x);
  IntVector out;
  out.reserve(v.size());
  for (const Integer& x : v) {
    Integer y = (g == 0) ? x : Integer(x / g);
    if (!y.fits_slong_p()) throw Error(Errc::InvalidInput, "lattice vector entry exceeds 64 bits");
    out.push_back(y.get_si());
  }
  return out;
}

}  // namespace toric_cy
