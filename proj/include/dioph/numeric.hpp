/*
 * Copyright 2026 The dioph Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DIOPH_NUMERIC_HPP_
#define DIOPH_NUMERIC_HPP_

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dioph {

// Overflow-checked int64 arithmetic. Polynomial coefficients and ZBox
// elements are exact integers; silently wrapping would corrupt both.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in subtraction");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in multiplication");
  }
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

/// Least non-negative residue of `a` modulo `n` (n >= 1).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

__extension__ using int128 = __int128;

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>((static_cast<int128>(a) * static_cast<int128>(b)) % n);
}

/// Inverse of `a` modulo `n`, which must be a unit.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t old_r = mod_floor(a, n), r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw std::invalid_argument("mod_inverse: element is not a unit");
  }
  return mod_floor(old_s, n);
}

struct PrimePower {
  std::int64_t prime = 0;
  unsigned exponent = 0;
  std::int64_t value = 1;  // prime^exponent

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization, primes in ascending order. factorize(1) is
/// empty.
inline std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.size() == 1 && f[0].exponent == 1;
}

inline bool is_prime_power(std::int64_t n) {
  return n >= 2 && factorize(n).size() == 1;
}

/// Exact test for integer squares (negative numbers are never squares).
inline bool is_square_integer(std::int64_t d) {
  if (d < 0) return false;
  auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(d)));
  while (r > 0 && r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r * r == d;
}

/// Whether d is a square modulo the prime p (0 counts as a square).
inline bool is_square_mod_prime(std::int64_t d, std::int64_t p) {
  d = mod_floor(d, p);
  if (d == 0 || p == 2) return true;
  // Euler's criterion.
  std::int64_t e = (p - 1) / 2, base = d, acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul_mod(acc, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return acc == 1;
}

}  // namespace dioph

#endif  // DIOPH_NUMERIC_HPP_
