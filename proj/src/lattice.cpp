#include "weilsum/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "weilsum/error.hpp"

namespace weilsum {

namespace {

using BigRational = boost::multiprecision::cpp_rational;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BudgetExceeded("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw BudgetExceeded("integer overflow in lattice arithmetic");
  return r;
}

// Fraction-free Gaussian elimination.
std::int64_t bareiss_det(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  __int128 d = m[n - 1][n - 1] * sign;
  if (d > INT64_MAX || d < INT64_MIN) throw BudgetExceeded("determinant out of range");
  return static_cast<std::int64_t>(d);
}

IntMatrix compute_adjugate(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix adj(n, IntVector(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        IntVector row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      std::int64_t d = bareiss_det(minor);
      adj[i][j] = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return adj;
}

// Exact congruence diagonalization over Q.
Signature compute_signature(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<BigRational>> a(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  Signature s{0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a[i][i] != 0 && (piv == n || abs(a[i][i]) > abs(a[piv][piv]))) piv = i;
    }
    if (piv == n) {
      // No nonzero diagonal entry left: add e_j to e_i for some a_ij != 0.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw DomainError("Gram matrix is singular");
      for (std::size_t c = 0; c < n; ++c) a[pi][c] += a[pj][c];
      for (std::size_t r = 0; r < n; ++r) a[r][pi] += a[r][pj];
      piv = pi;
    }
    if (piv != k) {
      std::swap(a[k], a[piv]);
      for (std::size_t r = 0; r < n; ++r) std::swap(a[r][k], a[r][piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      BigRational f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      for (std::size_t c = k; c < n; ++c) a[c][r] = a[r][c];
    }
    if (a[k][k] > 0)
      ++s.b_plus;
    else
      ++s.b_minus;
  }
  return s;
}

std::uint64_t hash_matrix(const IntMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  mix(m.size());
  for (const auto& row : m)
    for (std::int64_t x : row) mix(static_cast<std::uint64_t>(x));
  return h;
}

void require_same_lattice(const EvenLattice& L, const DiscElement& a) {
  if (a.lattice_fingerprint() != L.fingerprint() || a.rank() != L.rank()) {
    throw DomainError("element " + a.to_string() + " does not belong to lattice " + L.describe());
  }
}

}  // namespace

EvenLattice::EvenLattice(const IntMatrix& gram) : gram_(gram) {
  rank_ = static_cast<int>(gram_.size());
  if (rank_ == 0) throw DomainError("Gram matrix is empty");
  if (rank_ > kMaxRank) throw BudgetExceeded("lattice rank " + std::to_string(rank_) + " exceeds the cap of 7");
  for (const auto& row : gram_) {
    if (static_cast<int>(row.size()) != rank_) throw DomainError("Gram matrix is not square");
  }
  for (int i = 0; i < rank_; ++i) {
    const std::int64_t d = gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (d % 2 != 0) throw DomainError("Gram matrix has odd diagonal entry " + std::to_string(d));
    for (int j = 0; j < rank_; ++j) {
      if (gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          gram_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
        throw DomainError("Gram matrix is not symmetric");
      }
    }
  }
  det_ = bareiss_det(gram_);
  if (det_ == 0) throw DomainError("Gram matrix is singular");
  if (abs_det() > kMaxAbsDet) {
    throw BudgetExceeded("|det| = " + std::to_string(abs_det()) + " exceeds the cap of 10000");
  }
  for (const auto& row : gram_) flat_.insert(flat_.end(), row.begin(), row.end());
  adjugate_ = compute_adjugate(gram_);
  signature_ = compute_signature(gram_);
  fingerprint_ = hash_matrix(gram_);
}

std::string EvenLattice::describe() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < gram_[i].size(); ++j) {
      if (j) os << ',';
      os << gram_[i][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::int64_t EvenLattice::bilinear(const IntVector& x, const IntVector& y) const {
  std::int64_t s = 0;
  for (int i = 0; i < rank_; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < rank_; ++j) row = checked_add(row, checked_mul(gram(i, j), y[static_cast<std::size_t>(j)]));
    s = checked_add(s, checked_mul(x[static_cast<std::size_t>(i)], row));
  }
  return s;
}

std::int64_t EvenLattice::quadratic(const IntVector& x) const { return bilinear(x, x) / 2; }

DiscElement::DiscElement(IntVector num, std::int64_t den, std::uint64_t fp)
    : num_(std::move(num)), den_(den), fingerprint_(fp) {
  reduce();
}

void DiscElement::reduce() {
  for (auto& x : num_) x = mod(x, den_);
}

DiscElement DiscElement::from_dual_vector(const EvenLattice& L, const IntVector& a) {
  if (static_cast<int>(a.size()) != L.rank()) throw DomainError("dual vector has the wrong length");
  // M^{-1} a = adj a / det; rescale to denominator |det|.
  const int g = L.rank();
  const std::int64_t sign = L.det() < 0 ? -1 : 1;
  IntVector num(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < g; ++j) {
      s = checked_add(s, checked_mul(L.adjugate()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                     mod(a[static_cast<std::size_t>(j)], L.abs_det())));
    }
    num[static_cast<std::size_t>(i)] = mod(s, L.abs_det()) * sign;
  }
  return DiscElement(std::move(num), L.abs_det(), L.fingerprint());
}

DiscElement DiscElement::from_coords(const EvenLattice& L, const std::vector<Rational>& coords) {
  if (static_cast<int>(coords.size()) != L.rank()) {
    throw DomainError("expected " + std::to_string(L.rank()) + " coordinates, got " + std::to_string(coords.size()));
  }
  const std::int64_t D = L.abs_det();
  IntVector num;
  for (const Rational& x : coords) {
    Rational y = frac_part(x) * D;
    if (y.denominator() != 1) {
      throw DomainError("coordinate " + weilsum::to_string(x) + " is not in the dual lattice");
    }
    num.push_back(y.numerator());
  }
  DiscElement e(std::move(num), D, L.fingerprint());
  // M x must be integral.
  for (int i = 0; i < L.rank(); ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < L.rank(); ++j) s += L.gram(i, j) * e.num_[static_cast<std::size_t>(j)];
    if (s % D != 0) throw DomainError("vector " + e.to_string() + " is not in the dual lattice");
  }
  return e;
}

DiscElement DiscElement::zero(const EvenLattice& L) {
  return DiscElement(IntVector(static_cast<std::size_t>(L.rank()), 0), L.abs_det(), L.fingerprint());
}

std::vector<Rational> DiscElement::coords() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (std::int64_t x : num_) out.emplace_back(x, den_);
  return out;
}

std::string DiscElement::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) s += ',';
    s += weilsum::to_string(Rational(num_[i], den_));
  }
  return s;
}

DiscElement DiscElement::operator+(const DiscElement& o) const {
  if (o.fingerprint_ != fingerprint_ || o.num_.size() != num_.size()) {
    throw DomainError("cannot add elements of different discriminant groups");
  }
  IntVector s(num_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = num_[i] + o.num_[i];
  return DiscElement(std::move(s), den_, fingerprint_);
}

DiscElement DiscElement::operator-() const {
  IntVector s(num_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = -num_[i];
  return DiscElement(std::move(s), den_, fingerprint_);
}

DiscElement DiscElement::scaled(std::int64_t k) const {
  IntVector s(num_.size());
  const std::int64_t kr = mod(k, den_);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = checked_mul(num_[i], kr);
  return DiscElement(std::move(s), den_, fingerprint_);
}

bool DiscElement::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](std::int64_t x) { return x == 0; });
}

Rational q_exact(const EvenLattice& L, const DiscElement& alpha) {
  require_same_lattice(L, alpha);
  const std::int64_t D = L.abs_det();
  return Rational(L.bilinear(alpha.num(), alpha.num()), checked_mul(2 * D, D));
}

Rational bilinear_exact(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta) {
  require_same_lattice(L, alpha);
  require_same_lattice(L, beta);
  const std::int64_t D = L.abs_det();
  return Rational(L.bilinear(alpha.num(), beta.num()), checked_mul(D, D));
}

Rational q(const EvenLattice& L, const DiscElement& alpha) { return frac_part(q_exact(L, alpha)); }

Rational bilinear(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta) {
  return frac_part(bilinear_exact(L, alpha, beta));
}

IntVector dual_image_scaled(const EvenLattice& L, const DiscElement& alpha) {
  require_same_lattice(L, alpha);
  IntVector out(static_cast<std::size_t>(L.rank()));
  for (int i = 0; i < L.rank(); ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < L.rank(); ++j) s += L.gram(i, j) * alpha.num()[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

std::int64_t pair_with_lattice(const EvenLattice& L, const DiscElement& alpha, const IntVector& r) {
  IntVector img = dual_image_scaled(L, alpha);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < img.size(); ++i) s = checked_add(s, checked_mul(img[i], r[i]));
  return s / L.abs_det();
}

bool check_index(const EvenLattice& L, const DiscElement& alpha, std::int64_t m) {
  return is_integer(Rational(m, 2 * L.det()) - q_exact(L, alpha));
}

IntVector sylvester_combination(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta,
                                const DiscElement& gamma) {
  const Rational ga = bilinear_exact(L, gamma, alpha);
  const Rational gb = bilinear_exact(L, gamma, beta);
  const auto a = alpha.coords();
  const auto b = beta.coords();
  IntVector out;
  for (int i = 0; i < L.rank(); ++i) {
    Rational x = Rational(L.det()) * (ga * b[static_cast<std::size_t>(i)] - gb * a[static_cast<std::size_t>(i)]);
    if (x.denominator() != 1) {
      throw InternalError("Sylvester combination is not in L for alpha=" + alpha.to_string() +
                          " beta=" + beta.to_string() + " gamma=" + gamma.to_string());
    }
    out.push_back(x.numerator());
  }
  return out;
}

bool check_ell_congruence(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta, std::int64_t ell,
                          std::int64_t m, std::int64_t n) {
  if (L.rank() % 2 == 0) throw DomainError("the l^2 congruence requires odd rank");
  if (!check_index(L, alpha, m)) throw DomainError("m is not an admissible index for alpha");
  if (!check_index(L, beta, n)) throw DomainError("n is not an admissible index for beta");
  if (!is_integer(Rational(ell, L.det()) - bilinear_exact(L, alpha, beta))) {
    throw DomainError("l / det - <alpha, beta> is not an integer");
  }
  const std::int64_t modulus = (L.rank() == 1 ? 4 : 2) * L.N();
  return mod(checked_mul(ell, ell) - checked_mul(m, n), modulus) == 0;
}

// ---------------------------------------------------------------------------
// Smith normal form: U M V = diag(d_1, ..., d_g), d_i | d_{i+1}.

namespace {

struct Smith {
  IntMatrix U, V;
  IntVector diag;
};

Smith smith_normal_form(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix A = m;
  IntMatrix U(n, IntVector(n, 0)), V(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = V[i][i] = 1;

  auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t f) {  // row_dst -= f row_src
    for (std::size_t c = 0; c < n; ++c) {
      A[dst][c] = checked_add(A[dst][c], -checked_mul(f, A[src][c]));
      U[dst][c] = checked_add(U[dst][c], -checked_mul(f, U[src][c]));
    }
  };
  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t f) {  // col_dst -= f col_src
    for (std::size_t r = 0; r < n; ++r) {
      A[r][dst] = checked_add(A[r][dst], -checked_mul(f, A[r][src]));
      V[r][dst] = checked_add(V[r][dst], -checked_mul(f, V[r][src]));
    }
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(A[r][i], A[r][j]);
      std::swap(V[r][i], V[r][j]);
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (k, k).
      std::size_t pr = n, pc = n;
      std::int64_t best = 0;
      for (std::size_t r = k; r < n; ++r)
        for (std::size_t c = k; c < n; ++c)
          if (A[r][c] != 0 && (best == 0 || std::abs(A[r][c]) < best)) {
            best = std::abs(A[r][c]);
            pr = r;
            pc = c;
          }
      if (pr == n) break;
      swap_rows(k, pr);
      swap_cols(k, pc);
      bool clean = true;
      for (std::size_t r = k + 1; r < n; ++r) {
        row_op(r, k, A[r][k] / A[k][k]);
        if (A[r][k] != 0) clean = false;
      }
      for (std::size_t c = k + 1; c < n; ++c) {
        col_op(c, k, A[k][c] / A[k][k]);
        if (A[k][c] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a row with an entry not divisible by the pivot.
      bool divisible = true;
      for (std::size_t r = k + 1; r < n && divisible; ++r)
        for (std::size_t c = k + 1; c < n; ++c)
          if (A[r][c] % A[k][k] != 0) {
            row_op(k, r, -1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (A[k][k] < 0) {
      for (std::size_t c = 0; c < n; ++c) {
        A[k][c] = -A[k][c];
        U[k][c] = -U[k][c];
      }
    }
  }
  Smith s{std::move(U), std::move(V), IntVector(n)};
  for (std::size_t i = 0; i < n; ++i) s.diag[i] = A[i][i];
  return s;
}

}  // namespace

DiscGroup::DiscGroup(const EvenLattice& L) : lattice_(L) {
  const Smith snf = smith_normal_form(L.gram());
  const std::size_t g = static_cast<std::size_t>(L.rank());
  const std::int64_t D = L.abs_det();
  // alpha = V D^{-1} y, so the i-th generator is column i of V divided by d_i.
  std::vector<std::size_t> nontrivial;
  for (std::size_t i = 0; i < g; ++i) {
    if (snf.diag[i] == 1) continue;
    nontrivial.push_back(i);
    divisors_.push_back(snf.diag[i]);
    std::vector<Rational> coords(g);
    for (std::size_t r = 0; r < g; ++r) coords[r] = Rational(snf.V[r][i], snf.diag[i]);
    generators_.push_back(DiscElement::from_coords(L, coords));
  }
  for (std::size_t i : nontrivial) snf_left_.push_back(snf.U[i]);
  std::int64_t total = 1;
  strides_.assign(divisors_.size(), 0);
  for (std::size_t i = divisors_.size(); i-- > 0;) {
    strides_[i] = total;
    total *= divisors_[i];
  }
  if (total != D) throw InternalError("Smith normal form does not multiply to |det|");

  elements_.reserve(static_cast<std::size_t>(D));
  for (std::int64_t idx = 0; idx < D; ++idx) {
    DiscElement x = DiscElement::zero(L);
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      const std::int64_t k = (idx / strides_[i]) % divisors_[i];
      if (k) x = x + generators_[i].scaled(k);
    }
    elements_.push_back(std::move(x));
  }
}

std::size_t DiscGroup::index_of(const DiscElement& alpha) const {
  // y = U M alpha, read modulo the invariant factors.
  const IntVector a = dual_image_scaled(lattice_, alpha);
  const std::int64_t D = lattice_.abs_det();
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      s = mod(s + mod(snf_left_[i][j], divisors_[i]) * mod(a[j] / D, divisors_[i]), divisors_[i]);
    }
    idx += s * strides_[i];
  }
  return static_cast<std::size_t>(idx);
}

EvenLattice lattice_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("lattice JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array()) {
    throw DomainError("lattice JSON must be an object with a \"gram\" array");
  }
  IntMatrix gram;
  for (const auto& row : j["gram"]) {
    if (!row.is_array()) throw DomainError("\"gram\" rows must be arrays");
    IntVector r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw DomainError("\"gram\" entries must be integers");
      r.push_back(x.get<std::int64_t>());
    }
    gram.push_back(std::move(r));
  }
  return EvenLattice(gram);
}

std::string lattice_to_json(const EvenLattice& L) {
  nlohmann::json j;
  j["gram"] = L.gram();
  return j.dump();
}

}  // namespace weilsum
