// Copyright 2026 The steplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact-rational truncations of each family, reduced mod p without using
// any library arithmetic.  Shared by the unit tests and the acceptance run.

#ifndef STEPLAB_TESTS_RATIONAL_ORACLE_HPP
#define STEPLAB_TESTS_RATIONAL_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Int binomial(unsigned n, unsigned k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

inline std::vector<Rational> polylog(unsigned p, unsigned k) {
  std::vector<Rational> c(p, 0);
  for (unsigned i = 1; i < p; ++i) c[i] = Rational(1, boost::multiprecision::pow(Int(i), k));
  return c;
}

inline std::vector<Rational> polyexp(unsigned p, unsigned k) {
  std::vector<Rational> c(p, 0);
  if (k == 0) c[0] = 1;
  for (unsigned i = 1; i < p; ++i) c[i] = Rational(1, factorial(i) * boost::multiprecision::pow(Int(i), k));
  return c;
}

inline std::vector<Rational> bessel(unsigned p) {
  const unsigned top = (p + 1) / 2;
  std::vector<Rational> c(2 * top + 1, 0);
  for (unsigned n = 0; n <= top; ++n) {
    Rational v(1, boost::multiprecision::pow(Int(4), n) * factorial(n) * factorial(n));
    c[2 * n] = n % 2 ? Rational(-v) : v;
  }
  return c;
}

inline std::vector<Rational> hasse(unsigned p) {
  const unsigned d = (p - 1) / 2;
  std::vector<Rational> c(d + 1);
  for (unsigned n = 0; n <= d; ++n) {
    Int b = binomial(d, n);
    c[n] = Rational(b * b);
  }
  return c;
}

inline std::vector<Rational> rseries(unsigned p) {
  const unsigned top = (p - 3) / 2;
  std::vector<Rational> c(2 * top + 2, 0);
  Int odd = 1;
  for (unsigned k = 0; k <= top; ++k) {
    if (k > 0) odd *= 2 * k + 1;
    c[2 * k + 1] = Rational(boost::multiprecision::pow(Int(2), k), odd);
  }
  return c;
}

// Reduces each rational mod p (denominators must be coprime to p) and strips
// trailing zeros.
inline std::vector<std::uint64_t> reduce(const std::vector<Rational>& c, unsigned p) {
  std::vector<std::uint64_t> out;
  const Int P = p;
  for (const auto& r : c) {
    Int num = boost::multiprecision::numerator(r) % P;
    if (num < 0) num += P;
    Int den = boost::multiprecision::denominator(r) % P;
    if (den == 0) throw std::runtime_error("denominator divisible by p");
    Int inv = boost::multiprecision::powm(den, P - 2, P);
    out.push_back(static_cast<std::uint64_t>((num * inv) % P));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace oracle

#endif  // STEPLAB_TESTS_RATIONAL_ORACLE_HPP
