#include "orbitspace/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "orbitspace/errors.hpp"

namespace orbitspace {

// ------------------------------------------------------------ RationalMatrix

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalMatrix RationalMatrix::submatrix(std::span<const std::size_t> rows,
                                         std::span<const std::size_t> cols) const {
  RationalMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  }
  return s;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product: dimension mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Rational> operator*(const RationalMatrix& a, std::span<const Rational> v) {
  if (a.cols_ != v.size()) throw Error("matrix-vector product: dimension mismatch");
  std::vector<Rational> out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  }
  return out;
}

// -------------------------------------------------------- integer elimination

namespace {

using IntegerRow = std::vector<Integer>;

// Rows scaled by the lcm of their denominators; an optional right-hand side
// becomes the last column.
std::vector<IntegerRow> integer_rows(const RationalMatrix& a, std::span<const Rational> b,
                                     std::vector<Integer>* scales = nullptr) {
  const bool augmented = !b.empty();
  std::vector<IntegerRow> rows(a.rows());
  if (scales) scales->assign(a.rows(), Integer(1));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer l = 1;
    for (const auto& v : a.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    if (augmented) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[r].get_den_mpz_t());
    auto& row = rows[r];
    row.resize(a.cols() + (augmented ? 1 : 0));
    for (std::size_t c = 0; c < a.cols(); ++c) {
      row[c] = l / a(r, c).get_den() * a(r, c).get_num();
    }
    if (augmented) row.back() = l / b[r].get_den() * b[r].get_num();
    if (scales) (*scales)[r] = l;
  }
  return rows;
}

struct Elimination {
  std::vector<IntegerRow> m;
  std::vector<std::size_t> col_order;  // col_order[k] = original column at k
  std::size_t rank = 0;
  int sign = 1;  // parity of the row and column swaps
};

// Fraction-free (Bareiss) elimination with full pivoting over the first
// `pivot_cols` columns, choosing the nonzero entry of smallest bit size.
Elimination bareiss(std::vector<IntegerRow> m, std::size_t pivot_cols) {
  Elimination e;
  const std::size_t rows = m.size();
  const std::size_t width = rows ? m[0].size() : 0;
  e.col_order.resize(pivot_cols);
  for (std::size_t c = 0; c < pivot_cols; ++c) e.col_order[c] = c;

  Integer prev = 1;
  Integer tmp;
  std::size_t k = 0;
  for (; k < std::min(rows, pivot_cols); ++k) {
    std::size_t best_r = rows;
    std::size_t best_c = 0;
    std::size_t best_bits = 0;
    for (std::size_t r = k; r < rows; ++r) {
      for (std::size_t c = k; c < pivot_cols; ++c) {
        if (m[r][c] == 0) continue;
        const std::size_t bits = bit_size(m[r][c]);
        if (best_r == rows || bits < best_bits) {
          best_r = r;
          best_c = c;
          best_bits = bits;
        }
      }
    }
    if (best_r == rows) break;
    if (best_r != k) {
      std::swap(m[best_r], m[k]);
      e.sign = -e.sign;
    }
    if (best_c != k) {
      for (auto& row : m) std::swap(row[best_c], row[k]);
      std::swap(e.col_order[best_c], e.col_order[k]);
      e.sign = -e.sign;
    }
    const Integer& pivot = m[k][k];
    for (std::size_t r = k + 1; r < rows; ++r) {
      auto& row = m[r];
      const Integer factor = row[k];
      for (std::size_t c = k + 1; c < width; ++c) {
        // row[c] = (pivot*row[c] - factor*m[k][c]) / prev, exact.
        mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), row[c].get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), m[k][c].get_mpz_t());
        mpz_divexact(row[c].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      row[k] = 0;
    }
    prev = pivot;
  }
  e.rank = k;
  e.m = std::move(m);
  return e;
}

LinearSolution solve_exact(const RationalMatrix& a, std::span<const Rational> b) {
  LinearSolution out;
  const std::size_t n = a.cols();
  if (n == 0) {
    out.status = std::all_of(b.begin(), b.end(), [](const Rational& v) { return v == 0; })
                     ? SolveStatus::kUnique
                     : SolveStatus::kInconsistent;
    return out;
  }
  Elimination e = bareiss(integer_rows(a, b), n);
  out.rank = e.rank;
  for (std::size_t r = e.rank; r < e.m.size(); ++r) {
    if (e.m[r][n] != 0) {
      out.status = SolveStatus::kInconsistent;
      return out;
    }
  }
  if (e.rank < n) {
    out.status = SolveStatus::kUnderdetermined;
    return out;
  }
  // Cramer numerators: x_j = y_j / det, with det the last pivot.
  const Integer det = e.m[n - 1][n - 1];
  std::vector<Integer> y(n);
  Integer acc;
  for (std::size_t k = n; k-- > 0;) {
    acc = det * e.m[k][n];
    for (std::size_t j = k + 1; j < n; ++j) {
      mpz_submul(acc.get_mpz_t(), e.m[k][j].get_mpz_t(), y[j].get_mpz_t());
    }
    if (!mpz_divisible_p(acc.get_mpz_t(), e.m[k][k].get_mpz_t())) {
      throw Error("solve_linear: internal error, inexact back substitution");
    }
    mpz_divexact(y[k].get_mpz_t(), acc.get_mpz_t(), e.m[k][k].get_mpz_t());
  }
  out.x.assign(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    Rational v(y[k], det);
    v.canonicalize();
    out.x[e.col_order[k]] = std::move(v);
  }
  out.status = SolveStatus::kUnique;
  return out;
}

// ------------------------------------------------------------- modular lane

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

const std::vector<u64>& modular_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    Integer candidate = Integer(1) << 61;
    for (int i = 0; i < 2000; ++i) {
      mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
      out.push_back(candidate.get_ui());
    }
    return out;
  }();
  return primes;
}

enum class ModStatus { kUnique, kInconsistent, kDeficient };

// Gaussian elimination modulo p on the augmented integer rows.
ModStatus solve_mod_p(const std::vector<IntegerRow>& rows, std::size_t n, u64 p,
                      std::vector<u64>& x) {
  const std::size_t m = rows.size();
  std::vector<std::vector<u64>> a(m, std::vector<u64>(n + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c <= n; ++c) a[r][c] = mpz_fdiv_ui(rows[r][c].get_mpz_t(), p);
  }
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    const u64 inv = inv_mod(a[rank][c], p);
    for (std::size_t j = c; j <= n; ++j) a[rank][j] = mul_mod(a[rank][j], inv, p);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const u64 f = a[r][c];
      for (std::size_t j = c; j <= n; ++j) {
        const u64 sub = mul_mod(f, a[rank][j], p);
        a[r][j] = a[r][j] >= sub ? a[r][j] - sub : a[r][j] + p - sub;
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r) {
    if (a[r][n] != 0) return ModStatus::kInconsistent;
  }
  if (rank < n) return ModStatus::kDeficient;
  x.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) x[pivot_col[k]] = a[k][n];
  return ModStatus::kUnique;
}

// Wang's rational reconstruction of u mod m with |num|, den <= sqrt(m/2).
bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out) {
  Integer bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  Integer r0 = m, r1 = u, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

// Checks A x = b exactly on the scaled integer rows.
bool verifies(const std::vector<IntegerRow>& rows, std::size_t n,
              std::span<const Rational> x) {
  Integer den = 1;
  for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = den / x[j].get_den() * x[j].get_num();
  Integer acc;
  for (const auto& row : rows) {
    acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_addmul(acc.get_mpz_t(), row[j].get_mpz_t(), y[j].get_mpz_t());
    }
    mpz_submul(acc.get_mpz_t(), row[n].get_mpz_t(), den.get_mpz_t());
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace

LinearSolution solve_linear_modular(const RationalMatrix& a, std::span<const Rational> b) {
  const std::size_t n = a.cols();
  if (n == 0 || a.rows() < n) return solve_exact(a, b);
  const auto rows = integer_rows(a, b);
  const auto& primes = modular_primes();

  Integer modulus = 1;
  std::vector<Integer> residues(n, Integer(0));
  std::vector<u64> x;
  std::size_t good = 0;
  std::size_t bad = 0;
  std::size_t next_attempt = 2;
  std::vector<Rational> previous;
  for (u64 p : primes) {
    const ModStatus status = solve_mod_p(rows, n, p, x);
    if (status != ModStatus::kUnique) {
      // Inconsistent or rank-deficient modulo several primes in a row: let the
      // exact lane produce the authoritative report.
      if (++bad >= 3 && good == 0) break;
      continue;
    }
    // CRT: combine residues (mod modulus) with x (mod p).
    const Integer pz(static_cast<unsigned long>(p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(modulus % pz).get_mpz_t(), pz.get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      Integer diff = Integer(static_cast<unsigned long>(x[j])) - residues[j] % pz;
      Integer t = diff * inv % pz;
      if (t < 0) t += pz;
      residues[j] += modulus * t;
    }
    modulus *= pz;
    ++good;
    if (good < next_attempt) continue;
    next_attempt = good + std::max<std::size_t>(1, good / 4);

    std::vector<Rational> candidate(n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      ok = rational_reconstruct(residues[j], modulus, candidate[j]);
    }
    if (!ok) continue;
    if (candidate == previous && verifies(rows, n, candidate)) {
      LinearSolution out;
      out.status = SolveStatus::kUnique;
      out.rank = n;
      out.x = std::move(candidate);
      return out;
    }
    previous = std::move(candidate);
  }
  return solve_exact(a, b);
}

LinearSolution solve_linear(const RationalMatrix& a, std::span<const Rational> b,
                            SolverLane lane) {
  if (b.size() != a.rows()) throw Error("solve_linear: right-hand side has wrong length");
  return lane == SolverLane::kModular ? solve_linear_modular(a, b) : solve_exact(a, b);
}

std::vector<Rational> solve_unique(const RationalMatrix& a, std::span<const Rational> b,
                                   SolverLane lane) {
  LinearSolution s = solve_linear(a, b, lane);
  switch (s.status) {
    case SolveStatus::kUnique:
      return std::move(s.x);
    case SolveStatus::kInconsistent:
      throw InconsistentSystemError("linear system is inconsistent (" +
                                    std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + ")");
    case SolveStatus::kUnderdetermined:
      throw UnderdeterminedSystemError(
          "linear system is underdetermined: rank " + std::to_string(s.rank) + " < " +
          std::to_string(a.cols()) + " unknowns");
  }
  throw Error("solve_unique: unreachable");
}

std::size_t rank(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return bareiss(integer_rows(m, {}), m.cols()).rank;
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<Integer> scales;
  Elimination e = bareiss(integer_rows(m, {}, &scales), n);
  if (e.rank < n) return 0;
  Rational det(e.m[n - 1][n - 1]);
  if (e.sign < 0) det = -det;
  Integer scale = 1;
  for (const auto& s : scales) scale *= s;
  det /= Rational(scale);
  return det;
}

bool is_positive_semidefinite(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& idx : index_subsets(n, k)) {
      if (determinant(m.submatrix(idx, idx)) < 0) return false;
    }
  }
  return true;
}

bool is_positive_definite(const RationalMatrix& m) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    idx.push_back(k);
    if (determinant(m.submatrix(idx, idx)) <= 0) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------- PolynomialMatrix

PolynomialMatrix::PolynomialMatrix(RingPtr ring, std::size_t n)
    : ring_(ring), n_(n), data_(n * n, Polynomial(ring)) {}

RationalMatrix PolynomialMatrix::evaluate(std::span<const Rational> point) const {
  RationalMatrix m(n_, n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) m(r, c) = (*this)(r, c).evaluate(point);
  }
  return m;
}

PolynomialMatrix PolynomialMatrix::transposed() const {
  PolynomialMatrix t(ring_, n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool PolynomialMatrix::is_symmetric() const {
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = r + 1; c < n_; ++c) {
      if (!((*this)(r, c) == (*this)(c, r))) return false;
    }
  }
  return true;
}

PolynomialMatrix operator*(const PolynomialMatrix& a, const PolynomialMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix product");
  if (a.n_ != b.n_) throw Error("matrix product: dimension mismatch");
  PolynomialMatrix out(a.ring_, a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t j = 0; j < a.n_; ++j) {
      Polynomial sum(a.ring_);
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        sum = sum + a(i, k) * b(k, j);
      }
      out(i, j) = std::move(sum);
    }
  }
  return out;
}

bool PolynomialMatrix::operator==(const PolynomialMatrix& other) const {
  if (n_ != other.n_ || !same_ring(ring_, other.ring_)) return false;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!(data_[i] == other.data_[i])) return false;
  }
  return true;
}

namespace {

// Minors on the given rows over every column subset of size rows.size(),
// keyed by column bitmask, via Laplace expansion along the last row.
std::unordered_map<std::uint32_t, Polynomial> minors_for_rows(
    const PolynomialMatrix& m, std::span<const std::size_t> rows) {
  const std::size_t n = m.size();
  std::unordered_map<std::uint32_t, Polynomial> level;
  level.emplace(0U, Polynomial::constant(m.ring(), 1));
  for (std::size_t depth = 0; depth < rows.size(); ++depth) {
    std::unordered_map<std::uint32_t, Polynomial> next;
    const std::size_t r = rows[depth];
    for (const auto& [mask, minor] : level) {
      if (minor.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const std::uint32_t bit = 1U << c;
        if (mask & bit || m(r, c).is_zero()) continue;
        // Column c sits at position (#columns of the new set above c); the
        // expansion sign is (-1)^(depth + position).
        const std::uint32_t bigger = static_cast<std::uint32_t>(mask & ~((bit << 1) - 1));
        const int position = static_cast<int>(depth) - std::popcount(bigger);
        Polynomial term = m(r, c) * minor;
        if ((depth + static_cast<std::size_t>(position)) % 2 == 1) term = -term;
        auto [it, inserted] = next.try_emplace(mask | bit, term);
        if (!inserted) it->second = it->second + term;
      }
    }
    level = std::move(next);
  }
  return level;
}

std::uint32_t mask_of(std::span<const std::size_t> idx) {
  std::uint32_t m = 0;
  for (auto i : idx) m |= 1U << i;
  return m;
}

}  // namespace

Polynomial poly_det(const PolynomialMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(m.ring(), 1);
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  auto level = minors_for_rows(m, rows);
  auto it = level.find(mask_of(rows));
  return it == level.end() ? Polynomial(m.ring()) : it->second;
}

std::vector<PolynomialMinor> poly_minors(const PolynomialMatrix& m, std::size_t order,
                                         bool symmetric_only) {
  std::vector<PolynomialMinor> out;
  const auto subsets = index_subsets(m.size(), order);
  for (const auto& rows : subsets) {
    const auto level = minors_for_rows(m, rows);
    for (const auto& cols : subsets) {
      if (symmetric_only && cols < rows) continue;
      auto it = level.find(mask_of(cols));
      out.push_back({rows, cols, it == level.end() ? Polynomial(m.ring()) : it->second});
    }
  }
  return out;
}

std::vector<PolynomialMinor> poly_principal_minors(const PolynomialMatrix& m,
                                                   std::size_t order) {
  std::vector<PolynomialMinor> out;
  for (const auto& idx : index_subsets(m.size(), order)) {
    const auto level = minors_for_rows(m, idx);
    auto it = level.find(mask_of(idx));
    out.push_back({idx, idx, it == level.end() ? Polynomial(m.ring()) : it->second});
  }
  return out;
}

std::size_t rank_at(const PolynomialMatrix& m, std::span<const Rational> point) {
  return rank(m.evaluate(point));
}

}  // namespace orbitspace
