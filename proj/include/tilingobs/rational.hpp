#pragma once

// Exact rational scalars. Everything measure-like in this library is a
// Rational; only the Fourier module drops to binary64.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tilingobs {

using Rational = mpq_class;
using Integer = mpz_class;

/// Malformed user input (bad rational literal, dimension mismatch, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A postcondition that must hold by construction failed.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Parses "p/q", "p" or "-p/q". The result is canonical (lowest terms, q > 0).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& x) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    x = (b == std::string::npos) ? std::string() : x.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw InputError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  auto valid_int = [](std::string_view x) {
    std::size_t i = (!x.empty() && x.front() == '-') ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-')
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  Rational r;
  r.get_num() = Integer(num);
  r.get_den() = Integer(den);
  if (r.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// Canonical "p/q" text; integers print without a denominator.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational pow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

/// True iff x/step is an integer.
inline bool is_multiple_of(const Rational& x, const Rational& step) {
  Rational q = x / step;
  return q.get_den() == 1;
}

inline long to_long_exact(const Rational& r) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p())
    throw InputError("value " + to_string(r) + " is not a machine integer");
  return r.get_num().get_si();
}

inline std::vector<Rational> parse_rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

}  // namespace tilingobs
