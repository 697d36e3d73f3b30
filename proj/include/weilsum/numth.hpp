#pragma once

// Exact integer utilities: Kronecker symbols, fundamental discriminants,
// divisor machinery and square-root counts modulo c.

#include <cstdint>
#include <utility>
#include <vector>

#include "weilsum/numeric.hpp"

namespace weilsum {

struct PrimePower {
  std::int64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::int64_t value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
};

/// Trial division; n >= 1.
Factorization factor(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);  // sorted ascending
int mobius(std::int64_t n);
int omega(std::int64_t n);
std::int64_t tau(std::int64_t n);
/// Inverse of a modulo n in [0, n); throws DomainError when gcd(a, n) > 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t n);
/// Exponent of p in x; x != 0.
int valuation(std::int64_t x, std::int64_t p);
std::int64_t ipow(std::int64_t base, int exp);
bool is_squarefree(std::int64_t n);
bool is_prime(std::int64_t n);

/// Full Kronecker symbol (a/n); (0/0) is rejected.
int kronecker(std::int64_t a, std::int64_t n);

/// 1 if d = 1 (mod 4), i if d = 3 (mod 4).
AlgValue eps(std::int64_t d, int prec_bits = kDefaultPrecBits);

bool is_fundamental_discriminant(std::int64_t d);

struct FundamentalDecomposition {
  std::int64_t m;
  std::int64_t m0;
  std::int64_t v;
  int sign_exponent;  // (g - 1) / 2 mod 2
};

/// m = m0 v^2 with (-1)^{(g-1)/2} m0 fundamental, g odd.
FundamentalDecomposition fundamental_decomposition(std::int64_t m, int g);

/// #{x mod c : x^2 = y (mod c)}
std::int64_t count_sqrt(std::int64_t y, std::int64_t c);

}  // namespace weilsum
