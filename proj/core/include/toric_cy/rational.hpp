#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace toric_cy {

using Rational = mpq_class;
using Integer = mpz_class;

/// Lattice vectors (facet normals, ray generators). Entries stay small at
/// desk scale; arithmetic that can grow is done in Integer and checked on
/// the way back.
using IntVector = std::vector<long long>;
using RationalVector = std::vector<Rational>;

/// The two number types every geometric routine is instantiated for:
/// exact rationals for certificates, binary64 inside the Newton solver.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <class S>
using Vector = std::vector<S>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <Scalar S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <Scalar S>
S from_int(long long v) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(static_cast<signed long>(v));
  } else {
    return static_cast<double>(v);
  }
}

inline Rational abs_value(const Rational& q) { return Rational(abs(q)); }
inline double abs_value(double x) { return std::abs(x); }

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "3", "-7/12", "0.25", "1.5e-3". Decimal input is converted
/// exactly, so "0.1" becomes 1/10.
Rational parse_rational(std::string_view text);

/// Exact rational value of a binary64 number.
Rational exact_rational(double x);

RationalVector to_rational(const IntVector& v);
std::vector<double> to_double(const RationalVector& v);

template <Scalar S>
Vector<S> convert_vector(const RationalVector& v) {
  Vector<S> out;
  out.reserve(v.size());
  for (const Rational& q : v) out.push_back(from_rational<S>(q));
  return out;
}

template <Scalar S>
S dot(const IntVector& a, const Vector<S>& b) {
  S acc = from_int<S>(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += from_int<S>(a[i]) * b[i];
  return acc;
}

template <Scalar S>
S dot(const Vector<S>& a, const Vector<S>& b) {
  S acc = from_int<S>(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

long long dot(const IntVector& a, const IntVector& b);

long long gcd_of(std::span<const long long> v);
bool is_primitive(const IntVector& v);

/// Divides by the gcd of the entries. Zero stays zero.
IntVector primitive_part(const std::vector<Integer>& v);

}  // namespace toric_cy
