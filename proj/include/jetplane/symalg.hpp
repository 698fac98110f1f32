#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "jetplane/ratlin.hpp"

namespace jetplane {

// Ambient parameters: L = Q^n (base directions), N = Q^m (fiber values),
// k = order. All constructions downstream are exact in these three numbers.
struct Context {
  int n, m, k;
  Context(int n_, int m_, int k_) : n(n_), m(m_), k(k_) {
    if (n < 1 || m < 1 || k < 1)
      throw std::invalid_argument("context requires n >= 1, m >= 1, k >= 1");
  }
  bool operator==(const Context& o) const {
    return n == o.n && m == o.m && k == o.k;
  }
};

// Exponent tuple, one entry per variable; entries sum to the degree.
using MultiIndex = std::vector<int>;

namespace detail {

inline void enumerate_monomials(int nvars, int degree, MultiIndex& cur,
                                std::vector<MultiIndex>& out) {
  if (nvars == 0) {
    if (degree == 0) out.push_back(cur);
    return;
  }
  if (nvars == 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur.push_back(e);
    enumerate_monomials(nvars - 1, degree - e, cur, out);
    cur.pop_back();
  }
}

struct MonomialTable {
  std::vector<MultiIndex> list;  // graded-lex: first exponent descending
  std::map<MultiIndex, int> index;
};

inline const MonomialTable& monomial_table(int nvars, int degree) {
  static std::map<std::pair<int, int>, MonomialTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    MonomialTable t;
    MultiIndex cur;
    enumerate_monomials(nvars, degree, cur, t.list);
    for (int i = 0; i < static_cast<int>(t.list.size()); ++i)
      t.index[t.list[i]] = i;
    it = cache.emplace(key, std::move(t)).first;
  }
  return it->second;
}

}  // namespace detail

// All degree-d monomials over nvars variables, in descending lexicographic
// order of exponent tuples: (d,0,...,0) first, (0,...,0,d) last. This fixed
// order underlies every coefficient vector and serialized record.
inline const std::vector<MultiIndex>& monomials(int nvars, int degree) {
  return detail::monomial_table(nvars, degree).list;
}

inline int monomial_index(int nvars, const MultiIndex& mi) {
  int degree = 0;
  for (int e : mi) degree += e;
  const auto& t = detail::monomial_table(nvars, degree);
  auto it = t.index.find(mi);
  if (it == t.index.end())
    throw std::invalid_argument("monomial does not match variable count");
  return it->second;
}

inline long monomial_count(int nvars, int degree) {
  return binomial_l(nvars + degree - 1, degree);
}

// Element of S^degree (Q^nvars)* tensor Q^m: a homogeneous polynomial map
// Q^nvars -> Q^m. Coefficients are stored densely, monomial-major then value
// slot j, in the fixed monomial order above.
class SymPoly {
 public:
  SymPoly(int nvars, int m, int degree)
      : nvars_(nvars), m_(m), degree_(degree),
        c_(static_cast<size_t>(monomial_count(nvars, degree)) * m) {
    if (nvars < 0 || m < 1 || degree < 0)
      throw std::invalid_argument("bad SymPoly shape");
  }

  int nvars() const { return nvars_; }
  int values() const { return m_; }
  int degree() const { return degree_; }
  int monomial_terms() const {
    return static_cast<int>(c_.size()) / m_;
  }

  Rational& coef(int mono_idx, int j) {
    return c_[static_cast<size_t>(mono_idx) * m_ + j];
  }
  const Rational& coef(int mono_idx, int j) const {
    return c_[static_cast<size_t>(mono_idx) * m_ + j];
  }
  Rational& coef(const MultiIndex& mi, int j) {
    return coef(monomial_index(nvars_, mi), j);
  }
  const Rational& coef(const MultiIndex& mi, int j) const {
    return coef(monomial_index(nvars_, mi), j);
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  std::vector<Rational>& coeffs() { return c_; }

  bool same_shape(const SymPoly& o) const {
    return nvars_ == o.nvars_ && m_ == o.m_ && degree_ == o.degree_;
  }

  bool operator==(const SymPoly& o) const {
    return same_shape(o) && c_ == o.c_;
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  SymPoly& operator+=(const SymPoly& o) {
    if (!same_shape(o)) throw std::invalid_argument("SymPoly shape mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  SymPoly& operator-=(const SymPoly& o) {
    if (!same_shape(o)) throw std::invalid_argument("SymPoly shape mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  SymPoly& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(const Rational& s, SymPoly p) { return p *= s; }

  // Value of the polynomial map at l, one entry per value slot.
  std::vector<Rational> evaluate(const std::vector<Rational>& l) const {
    if (static_cast<int>(l.size()) != nvars_)
      throw std::invalid_argument("evaluate: wrong point dimension");
    std::vector<Rational> out(m_, Rational(0));
    const auto& monos = monomials(nvars_, degree_);
    for (int idx = 0; idx < static_cast<int>(monos.size()); ++idx) {
      Rational pw(1);
      for (int i = 0; i < nvars_ && pw != 0; ++i)
        for (int e = 0; e < monos[idx][i]; ++e) pw *= l[i];
      if (pw == 0) continue;
      for (int j = 0; j < m_; ++j)
        if (coef(idx, j) != 0) out[j] += coef(idx, j) * pw;
    }
    return out;
  }

 private:
  int nvars_, m_, degree_;
  std::vector<Rational> c_;
};

// Scalar monomial xi^i (degree 1, single value slot).
inline SymPoly unit_linear(int nvars, int i) {
  SymPoly p(nvars, 1, 1);
  MultiIndex mi(nvars, 0);
  mi[i] = 1;
  p.coef(mi, 0) = 1;
  return p;
}

// Formal partial derivative d/dxi_i; degree drops by one.
inline SymPoly partial(const SymPoly& p, int i) {
  if (p.degree() == 0) throw std::invalid_argument("partial of degree-0");
  SymPoly out(p.nvars(), p.values(), p.degree() - 1);
  const auto& monos = monomials(p.nvars(), p.degree());
  for (int idx = 0; idx < static_cast<int>(monos.size()); ++idx) {
    if (monos[idx][i] == 0) continue;
    MultiIndex tgt = monos[idx];
    tgt[i] -= 1;
    int tgt_idx = monomial_index(p.nvars(), tgt);
    for (int j = 0; j < p.values(); ++j)
      if (p.coef(idx, j) != 0)
        out.coef(tgt_idx, j) += Rational(monos[idx][i]) * p.coef(idx, j);
  }
  return out;
}

// Module product: scalar-valued a times N-valued b.
inline SymPoly multiply(const SymPoly& a, const SymPoly& b) {
  if (a.values() != 1 || a.nvars() != b.nvars())
    throw std::invalid_argument("multiply: left factor must be scalar-valued");
  SymPoly out(b.nvars(), b.values(), a.degree() + b.degree());
  const auto& ma = monomials(a.nvars(), a.degree());
  const auto& mb = monomials(b.nvars(), b.degree());
  for (int ia = 0; ia < static_cast<int>(ma.size()); ++ia) {
    if (a.coef(ia, 0) == 0) continue;
    for (int ib = 0; ib < static_cast<int>(mb.size()); ++ib) {
      MultiIndex sum = ma[ia];
      for (int i = 0; i < b.nvars(); ++i) sum[i] += mb[ib][i];
      int idx = monomial_index(b.nvars(), sum);
      for (int j = 0; j < b.values(); ++j)
        if (b.coef(ib, j) != 0)
          out.coef(idx, j) += a.coef(ia, 0) * b.coef(ib, j);
    }
  }
  return out;
}

// Linear map from a subspace of L into a space of SymPoly, given by the
// images of the columns of `domain`.
struct HomLS {
  RatMatrix domain;             // n x s, columns = domain basis
  std::vector<SymPoly> images;  // one per column, common shape

  bool operator==(const HomLS& o) const {
    return domain == o.domain && images == o.images;
  }
};

// Image of l under the polarization of p: (1/d) * sum_i l_i * dp/dxi_i.
// Satisfies polarize_at(p, l) evaluated at l == p(l); see the polarize tests.
inline SymPoly polarize_at(const SymPoly& p, const std::vector<Rational>& l) {
  if (p.degree() < 1) throw std::invalid_argument("polarize needs degree >= 1");
  if (static_cast<int>(l.size()) != p.nvars())
    throw std::invalid_argument("polarize_at: wrong vector dimension");
  SymPoly out(p.nvars(), p.values(), p.degree() - 1);
  const Rational inv_d = rat(1) / Rational(p.degree());
  const auto& monos = monomials(p.nvars(), p.degree());
  for (int idx = 0; idx < static_cast<int>(monos.size()); ++idx) {
    for (int i = 0; i < p.nvars(); ++i) {
      if (monos[idx][i] == 0 || l[i] == 0) continue;
      MultiIndex tgt = monos[idx];
      tgt[i] -= 1;
      int tgt_idx = monomial_index(p.nvars(), tgt);
      Rational f = Rational(monos[idx][i]) * inv_d * l[i];
      for (int j = 0; j < p.values(); ++j)
        if (p.coef(idx, j) != 0) out.coef(tgt_idx, j) += f * p.coef(idx, j);
    }
  }
  return out;
}

// Polarization as a linear map L -> S^(d-1)L* tensor N on the standard basis.
inline HomLS polarize(const SymPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("polarize needs degree >= 1");
  HomLS h;
  h.domain = RatMatrix::identity(p.nvars());
  h.images.reserve(p.nvars());
  std::vector<Rational> e(p.nvars(), Rational(0));
  for (int i = 0; i < p.nvars(); ++i) {
    e[i] = 1;
    h.images.push_back(polarize_at(p, e));
    e[i] = 0;
  }
  return h;
}

// Restriction of the polarization of q to the subspace spanned by the
// columns of sigma0 (the affine-action stabilizer test map).
inline HomLS restrict_polarization(const SymPoly& q, const RatMatrix& sigma0) {
  if (sigma0.rows() != q.nvars())
    throw std::invalid_argument("restrict_polarization: ambient mismatch");
  HomLS h;
  h.domain = sigma0;
  h.images.reserve(sigma0.cols());
  for (int t = 0; t < sigma0.cols(); ++t)
    h.images.push_back(polarize_at(q, sigma0.col(t)));
  return h;
}

// Substitute l = basis * t: the polynomial pulled back to the s coordinates
// of the subspace spanned by the basis columns.
inline SymPoly restrict_to(const SymPoly& p, const RatMatrix& basis) {
  if (basis.rows() != p.nvars())
    throw std::invalid_argument("restrict_to: ambient mismatch");
  const int s = basis.cols();
  SymPoly out(s, p.values(), p.degree());
  // Cache powers of the substituted linear forms lambda_i = sum_r B(i,r) tau_r.
  std::vector<std::vector<SymPoly>> pw(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) {
    SymPoly one(s, 1, 0);
    one.coef(0, 0) = 1;
    pw[i].push_back(one);
  }
  auto power = [&](int i, int e) -> const SymPoly& {
    while (static_cast<int>(pw[i].size()) <= e) {
      SymPoly lin(s, 1, 1);
      for (int r = 0; r < s; ++r) lin.coef(r, 0) = basis(i, r);
      pw[i].push_back(multiply(lin, pw[i].back()));
    }
    return pw[i][e];
  };
  const auto& monos = monomials(p.nvars(), p.degree());
  for (int idx = 0; idx < static_cast<int>(monos.size()); ++idx) {
    bool nonzero = false;
    for (int j = 0; j < p.values() && !nonzero; ++j)
      if (p.coef(idx, j) != 0) nonzero = true;
    if (!nonzero) continue;
    SymPoly prod(s, 1, 0);
    prod.coef(0, 0) = 1;
    for (int i = 0; i < p.nvars(); ++i)
      if (monos[idx][i] > 0) prod = multiply(power(i, monos[idx][i]), prod);
    for (int j = 0; j < p.values(); ++j) {
      if (p.coef(idx, j) == 0) continue;
      for (int t = 0; t < prod.monomial_terms(); ++t) {
        if (prod.coef(t, 0) != 0) out.coef(t, j) += prod.coef(t, 0) * p.coef(idx, j);
      }
    }
  }
  return out;
}

// Basis of S^k Ann(Sigma0)* tensor N: all degree-k products of a canonical
// annihilator basis of Sigma0, tensored with each value slot. These are
// exactly the degree-k elements whose polarization vanishes on Sigma0.
inline std::vector<SymPoly> annihilator_power_basis(const Context& ctx,
                                                    const Subspace& sigma0) {
  if (sigma0.ambient() != ctx.n)
    throw std::invalid_argument("annihilator_power_basis: ambient mismatch");
  // Covectors eta with eta(b) = 0 for every basis column b of sigma0.
  RatMatrix eta = kernel_basis(sigma0.basis().transposed());
  const int r = eta.cols();  // n - s
  std::vector<SymPoly> out;
  for (const MultiIndex& alpha : monomials(r, ctx.k)) {
    SymPoly prod(ctx.n, 1, 0);
    prod.coef(0, 0) = 1;
    for (int t = 0; t < r; ++t) {
      SymPoly lin(ctx.n, 1, 1);
      for (int i = 0; i < ctx.n; ++i) lin.coef(i, 0) = eta(i, t);
      for (int e = 0; e < alpha[t]; ++e) prod = multiply(lin, prod);
    }
    for (int j = 0; j < ctx.m; ++j) {
      SymPoly q(ctx.n, ctx.m, ctx.k);
      for (int t = 0; t < prod.monomial_terms(); ++t) q.coef(t, j) = prod.coef(t, 0);
      out.push_back(std::move(q));
    }
  }
  return out;
}

// Inverse of polarize where one exists: builds the only possible generator
// p(l) = sum_i xi^i * h(e_i) and accepts iff its polarization reproduces h.
inline std::optional<SymPoly> reconstruct_generator(const HomLS& h) {
  const int n = h.domain.rows();
  if (h.domain.cols() != n || rank(h.domain) != n)
    throw std::invalid_argument("reconstruct_generator needs a full basis of L");
  if (h.images.empty()) throw std::invalid_argument("empty homomorphism");
  // Rewrite on the standard basis when given on any other full basis.
  std::vector<SymPoly> std_images;
  const bool is_identity = (h.domain == RatMatrix::identity(n));
  for (int i = 0; i < n; ++i) {
    if (is_identity) {
      std_images.push_back(h.images[i]);
      continue;
    }
    std::vector<Rational> e(n, Rational(0));
    e[i] = 1;
    auto x = solve(h.domain, e);
    SymPoly img(h.images[0].nvars(), h.images[0].values(), h.images[0].degree());
    for (int t = 0; t < n; ++t)
      if ((*x)[t] != 0) img += (*x)[t] * h.images[t];
    std_images.push_back(std::move(img));
  }
  SymPoly candidate(n, std_images[0].values(), std_images[0].degree() + 1);
  for (int i = 0; i < n; ++i)
    candidate += multiply(unit_linear(n, i), std_images[i]);
  HomLS back = polarize(candidate);
  for (int i = 0; i < n; ++i)
    if (!(back.images[i] == std_images[i])) return std::nullopt;
  return candidate;
}

}  // namespace jetplane
