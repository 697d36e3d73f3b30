#pragma once

// Quadratic Gauss sums and their classical evaluations. Every function takes
// a mode: the closed form, or direct enumeration over the residues.

#include <cstdint>
#include <string>
#include <vector>

#include "weilsum/lattice.hpp"
#include "weilsum/numeric.hpp"

namespace weilsum {

enum class GaussMode { closed_form, brute_force };

/// G(c) = sum_{x mod c} e_c(x^2)
AlgValue gauss_plain(std::int64_t c, GaussMode mode, int prec_bits = kDefaultPrecBits);
/// sum_{x mod c} e_c(a x^2) for odd c, (a, c) = 1
AlgValue gauss_scaled(std::int64_t a, std::int64_t c, GaussMode mode, int prec_bits = kDefaultPrecBits);
/// G(a, b, 2^lambda) = sum_{x mod 2^lambda} e_{2^lambda}(a x^2 + b x), a odd
AlgValue gauss_pow2(std::int64_t a, std::int64_t b, int lambda, GaussMode mode, int prec_bits = kDefaultPrecBits);
/// sum_{x in (Z/c)^g} e_c(q(x)); the closed form needs c odd and (det, c) = 1
AlgValue gauss_quadratic_form(const EvenLattice& L, std::int64_t c, GaussMode mode,
                              int prec_bits = kDefaultPrecBits);
/// T(n, p^lambda) = sum_{d mod p^lambda, p not | d} (d/p) e_{p^lambda}(n d), p odd prime
AlgValue twisted_sum_odd(std::int64_t n, std::int64_t p, int lambda, GaussMode mode,
                         int prec_bits = kDefaultPrecBits);
/// sum_{d mod 2^lambda, d odd} (-4/d) e_{2^lambda}(n d), lambda >= 2
AlgValue twisted_sum_pow2(std::int64_t n, int lambda, GaussMode mode, int prec_bits = kDefaultPrecBits);

enum class GaussKind { plain, scaled, shifted_binary_pow2, quadratic_form, twisted_odd, twisted_pow2 };

struct GaussSumQuery {
  GaussKind kind = GaussKind::plain;
  // plain: c. scaled: a, c. pow2: a, b, lambda. quadratic_form: lattice, c.
  // twisted_odd: n, p, lambda. twisted_pow2: n, lambda.
  std::int64_t a = 0, b = 0, c = 1, n = 0, p = 3;
  int lambda = 1;
  IntMatrix gram;

  std::string kind_name() const;
  std::string params() const;  // "a=1;b=0;lambda=2"
};

AlgValue evaluate(const GaussSumQuery& q, GaussMode mode, int prec_bits = kDefaultPrecBits);
GaussKind parse_gauss_kind(const std::string& name);

}  // namespace weilsum
