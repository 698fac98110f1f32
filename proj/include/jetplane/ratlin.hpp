#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "jetplane/rational.hpp"

namespace jetplane {

// Dense matrix over Q, row-major. Deliberately small: the library only needs
// exact elimination, and determinism of the results matters more than speed.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    assert(rows >= 0 && cols >= 0);
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  const Rational& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  RatMatrix transposed() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<Rational> col(int j) const {
    std::vector<Rational> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_col(int j, const std::vector<Rational>& v) {
    assert(static_cast<int>(v.size()) == rows_);
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  static RatMatrix from_cols(int rows, const std::vector<std::vector<Rational>>& cols) {
    RatMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) m.set_col(j, cols[j]);
    return m;
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<Rational> y(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
      Rational acc(0);
      for (int j = 0; j < cols_; ++j) {
        const Rational& m = (*this)(i, j);
        if (m != 0 && x[j] != 0) acc += m * x[j];
      }
      y[i] = acc;
    }
    return y;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    assert(cols_ == o.rows_);
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int l = 0; l < cols_; ++l) {
        const Rational& m = (*this)(i, l);
        if (m == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          if (o(l, j) != 0) r(i, j) += m * o(l, j);
      }
    return r;
  }

  // Columns of `o` appended to the right.
  RatMatrix hstack(const RatMatrix& o) const {
    assert(rows_ == o.rows_);
    RatMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }

  RatMatrix vstack(const RatMatrix& o) const {
    assert(cols_ == o.cols_);
    RatMatrix r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (int i = 0; i < o.rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

struct RrefResult {
  RatMatrix mat;
  std::vector<int> pivot_cols;  // strictly increasing
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Reduced row echelon form. Pivot choice is the first row with a nonzero
// entry in the leftmost unfinished column, so the result is a deterministic
// function of the input (and unique, as RREF always is).
inline RrefResult rref(RatMatrix m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = m(r, c);
    for (int j = c; j < m.cols(); ++j)
      if (m(r, j) != 0) m(r, j) /= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline int rank(const RatMatrix& m) { return rref(m).rank(); }

// Canonical kernel basis from the RREF: one column per free column f, with 1
// in coordinate f and -R(i, f) in the i-th pivot coordinate. Depends only on
// the row space of m, hence deterministic and reproducible across runs.
inline RatMatrix kernel_basis(const RatMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMatrix k(m.cols(), static_cast<int>(free_cols.size()));
  for (int j = 0; j < k.cols(); ++j) {
    int f = free_cols[j];
    k(f, j) = 1;
    for (int i = 0; i < rr.rank(); ++i) k(rr.pivot_cols[i], j) = -rr.mat(i, f);
  }
  return k;
}

// Particular solution of m x = rhs with all free variables set to zero;
// nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve(const RatMatrix& m,
                                                  const std::vector<Rational>& rhs) {
  assert(static_cast<int>(rhs.size()) == m.rows());
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  RrefResult rr = rref(std::move(aug));
  if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == m.cols())
    return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (int i = 0; i < rr.rank(); ++i) x[rr.pivot_cols[i]] = rr.mat(i, m.cols());
  return x;
}

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t mod_of(const Integer& z, uint64_t p) {
  Integer r = z % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace detail

// Rank of m reduced mod the prime p. Because a nonzero minor mod p is nonzero
// over Q, the result is an exact LOWER bound for rank(m); it can undershoot
// only when p divides the relevant minors. Returns nullopt when some
// denominator vanishes mod p (reduction undefined). Never use this alone to
// certify a rank claim; pair it with exactly verified kernel vectors.
inline std::optional<int> rank_mod_p(const RatMatrix& m, uint64_t p) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<uint64_t> a(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const Rational& q = m(i, j);
      uint64_t den = detail::mod_of(Integer(q.get_den()), p);
      if (den == 0) return std::nullopt;
      uint64_t num = detail::mod_of(Integer(q.get_num()), p);
      a[static_cast<size_t>(i) * cols + j] =
          detail::mulmod_u64(num, detail::powmod_u64(den, p - 2, p), p);
    }
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<size_t>(i) * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = c; j < cols; ++j)
      std::swap(a[static_cast<size_t>(piv) * cols + j],
                a[static_cast<size_t>(r) * cols + j]);
    uint64_t inv =
        detail::powmod_u64(a[static_cast<size_t>(r) * cols + c], p - 2, p);
    for (int i = r + 1; i < rows; ++i) {
      uint64_t f = a[static_cast<size_t>(i) * cols + c];
      if (f == 0) continue;
      f = detail::mulmod_u64(f, inv, p);
      for (int j = c; j < cols; ++j) {
        uint64_t sub = detail::mulmod_u64(f, a[static_cast<size_t>(r) * cols + j], p);
        uint64_t& x = a[static_cast<size_t>(i) * cols + j];
        x = (x >= sub) ? x - sub : x + p - sub;
      }
    }
    ++r;
  }
  return r;
}

// Fixed 62-bit primes for rank_mod_p users that need to retry on bad luck.
inline const std::vector<uint64_t>& certificate_primes() {
  static const std::vector<uint64_t> primes = {
      4611686018427388039ULL, 4611686018427388073ULL, 4611686018427388081ULL};
  return primes;
}

// Subspace of Q^ambient. The stored basis is the reduced COLUMN echelon form
// of any generating set (RREF of the transpose, transposed back), which is
// unique: two subspaces are equal iff their stored bases are identical.
class Subspace {
 public:
  explicit Subspace(int ambient) : ambient_(ambient), basis_(ambient, 0) {}

  // Span of the columns of `vectors`.
  static Subspace span(const RatMatrix& vectors) {
    Subspace s(vectors.rows());
    RrefResult rr = rref(vectors.transposed());
    RatMatrix b(vectors.rows(), rr.rank());
    for (int i = 0; i < rr.rank(); ++i)
      for (int j = 0; j < vectors.rows(); ++j) b(j, i) = rr.mat(i, j);
    s.basis_ = std::move(b);
    return s;
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  bool contains_vector(const std::vector<Rational>& v) const {
    assert(static_cast<int>(v.size()) == ambient_);
    RatMatrix aug = basis_.hstack(RatMatrix::from_cols(ambient_, {v}));
    return rank(aug) == dim();
  }

  // A contains B iff appending B's basis does not raise the rank.
  bool contains(const Subspace& o) const {
    assert(ambient_ == o.ambient_);
    if (o.dim() == 0) return true;
    return rank(basis_.hstack(o.basis())) == dim();
  }

 private:
  int ambient_;
  RatMatrix basis_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  assert(a.ambient() == b.ambient());
  return Subspace::span(a.basis().hstack(b.basis()));
}

// Kernel construction: (x; y) with A x + B y = 0 gives A x in the
// intersection, and every intersection vector arises this way.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  assert(a.ambient() == b.ambient());
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
  RatMatrix k = kernel_basis(a.basis().hstack(b.basis()));
  RatMatrix vecs(a.ambient(), k.cols());
  for (int j = 0; j < k.cols(); ++j) {
    std::vector<Rational> x(a.dim());
    for (int i = 0; i < a.dim(); ++i) x[i] = k(i, j);
    vecs.set_col(j, a.basis().apply(x));
  }
  return Subspace::span(vecs);
}

}  // namespace jetplane
