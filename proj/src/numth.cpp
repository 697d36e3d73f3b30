#include "weilsum/numth.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "weilsum/error.hpp"

namespace weilsum {

Factorization factor(std::int64_t n) {
  if (n < 1) throw DomainError("factor: n must be positive, got " + std::to_string(n));
  Factorization f;
  f.value = n;
  for (std::int64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  Factorization f = factor(n);
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(std::int64_t n) {
  int s = 1;
  for (const auto& pp : factor(n).factors) {
    if (pp.exponent > 1) return 0;
    s = -s;
  }
  return s;
}

int omega(std::int64_t n) { return static_cast<int>(factor(n).factors.size()); }

std::int64_t tau(std::int64_t n) {
  std::int64_t t = 1;
  for (const auto& pp : factor(n).factors) t *= pp.exponent + 1;
  return t;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
  if (n < 1) throw DomainError("inv_mod: modulus must be positive");
  if (n == 1) return 0;
  std::int64_t r0 = mod(a, n), r1 = n, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) {
    throw DomainError("inv_mod: " + std::to_string(a) + " is not invertible mod " + std::to_string(n));
  }
  return mod(s0, n);
}

int valuation(std::int64_t x, std::int64_t p) {
  if (x == 0) throw DomainError("valuation of zero");
  int k = 0;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return k;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (const auto& pp : factor(n).factors) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (a == 0 && n == 0) throw DomainError("kronecker(0, 0) is undefined");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // (a/2) = 0 for even a, otherwise +1 or -1 by a mod 8.
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    std::int64_t a8 = mod(a, 8);
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a/n) for odd n > 0.
  std::int64_t x = mod(a, n);
  std::int64_t y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      std::int64_t y8 = y % 8;
      if (y8 == 3 || y8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

AlgValue eps(std::int64_t d, int prec_bits) {
  if (d % 2 == 0) throw DomainError("eps: d must be odd, got " + std::to_string(d));
  return mod(d, 4) == 1 ? AlgValue::one(prec_bits) : AlgValue::imag_unit(prec_bits);
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 1) return true;
  std::int64_t r = mod(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r == 0) {
    std::int64_t q = d / 4;
    std::int64_t q4 = mod(q, 4);
    return (q4 == 2 || q4 == 3) && is_squarefree(q);
  }
  return false;
}

FundamentalDecomposition fundamental_decomposition(std::int64_t m, int g) {
  if (g < 1 || g % 2 == 0) throw DomainError("fundamental_decomposition: g must be odd and positive");
  const int sign_exponent = ((g - 1) / 2) % 2;
  const std::int64_t d = sign_exponent ? -m : m;
  if (m == 0 || (mod(d, 4) != 0 && mod(d, 4) != 1)) {
    throw DomainError("fundamental_decomposition: (-1)^((g-1)/2) m = " + std::to_string(d) +
                      " is not a nonzero discriminant");
  }
  // v ranges over integers with v^2 | m; exactly one quotient is fundamental.
  for (std::int64_t v = 1; v <= (d < 0 ? -d : d) / v; ++v) {
    if (d % (v * v) != 0) continue;
    if (is_fundamental_discriminant(d / (v * v))) {
      return FundamentalDecomposition{m, m / (v * v), v, sign_exponent};
    }
  }
  throw InternalError("fundamental_decomposition: no fundamental part found for " + std::to_string(m));
}

namespace {

// Root count for a unit y modulo p^k, k >= 1.
std::int64_t unit_sqrt_count(std::int64_t y, std::int64_t p, int k) {
  if (p != 2) return 1 + kronecker(y, p);
  if (k == 1) return 1;
  if (k == 2) return mod(y, 4) == 1 ? 2 : 0;
  return mod(y, 8) == 1 ? 4 : 0;
}

std::int64_t prime_power_sqrt_count(std::int64_t y, std::int64_t p, int lambda) {
  const std::int64_t q = ipow(p, lambda);
  std::int64_t r = mod(y, q);
  if (r == 0) return ipow(p, lambda / 2);
  int mu = valuation(r, p);
  if (mu % 2 != 0) return 0;
  // x = p^{mu/2} x' with x' a root of y / p^mu modulo p^{lambda - mu}.
  std::int64_t unit = r / ipow(p, mu);
  return ipow(p, mu / 2) * unit_sqrt_count(unit, p, lambda - mu);
}

}  // namespace

std::int64_t count_sqrt(std::int64_t y, std::int64_t c) {
  if (c < 1) throw DomainError("count_sqrt: modulus must be positive");
  std::int64_t total = 1;
  for (const auto& [p, e] : factor(c).factors) total *= prime_power_sqrt_count(y, p, e);
  return total;
}

}  // namespace weilsum
