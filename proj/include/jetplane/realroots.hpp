#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetplane/poly.hpp"
#include "jetplane/rational.hpp"

namespace jetplane {

// Dense univariate polynomial over Q, coefficients in ascending degree order,
// trailing zeros trimmed. Supports the exact real-root machinery: Euclidean
// division, gcd, Yun squarefree decomposition, Sturm chains, root counting,
// rational-root extraction, and isolation of irrational real roots.
class UPoly {
 public:
  UPoly() = default;  // zero polynomial
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const Rational& v) { return UPoly({v}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // zero: -1
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  const Rational& lead() const {
    if (c_.empty()) throw std::invalid_argument("lead of zero polynomial");
    return c_.back();
  }

  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  Rational eval(const Rational& x) const {
    Rational out(0);
    for (int i = degree(); i >= 0; --i) out = out * x + c_[i];
    return out;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(i) * c_[i];
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Rational& s, const UPoly& p) {
    std::vector<Rational> c(p.c_);
    for (auto& v : c) v *= s;
    return UPoly(std::move(c));
  }

  // Exact Euclidean division; throws on zero divisor.
  struct DivMod;
  DivMod divmod(const UPoly& d) const;

  UPoly monic() const {
    if (is_zero()) return UPoly();
    return (Rational(1) / lead()) * *this;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct UPoly::DivMod {
  UPoly quot, rem;
};

inline UPoly::DivMod UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  UPoly r = *this;
  std::vector<Rational> q(std::max<int>(0, degree() - d.degree() + 1),
                          Rational(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    const int shift = r.degree() - d.degree();
    const Rational f = r.lead() / d.lead();
    q[shift] += f;
    for (int i = 0; i <= d.degree(); ++i) r.c_[i + shift] -= f * d.c_[i];
    r.trim();
  }
  return {UPoly(std::move(q)), std::move(r)};
}

// Univariate view of a one-variable Poly.
inline UPoly to_upoly(const Poly& p) {
  if (p.nvars() != 1)
    throw std::invalid_argument("to_upoly: expected one variable");
  std::vector<Rational> c;
  for (const auto& [e, v] : p.terms()) {
    if (static_cast<int>(c.size()) <= e[0]) c.resize(e[0] + 1, Rational(0));
    c[e[0]] = v;
  }
  return UPoly(std::move(c));
}

// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Yun squarefree decomposition: returns monic factors a_1, a_2, ... where a_i
// collects the roots of multiplicity exactly i; product of a_i^i is p/lead.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  if (p.is_zero())
    throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<UPoly> out;
  if (p.is_constant()) return out;
  const UPoly f = p.monic();
  const UPoly g = gcd(f, f.derivative());
  UPoly c = f.divmod(g).quot;
  UPoly d = f.derivative().divmod(g).quot - c.derivative();
  while (!c.is_constant()) {
    UPoly a = gcd(c, d);
    out.push_back(a);
    c = c.divmod(a).quot;
    d = d.divmod(a).quot - c.derivative();
  }
  return out;
}

inline UPoly squarefree_part(const UPoly& p) {
  UPoly out = UPoly::constant(Rational(1));
  for (const auto& f : squarefree_decomposition(p)) out = out * f;
  return out.monic();
}

// Sturm chain of a nonzero polynomial.
struct SturmChain {
  std::vector<UPoly> seq;

  explicit SturmChain(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm chain of zero");
    seq.push_back(p);
    if (p.is_constant()) return;
    seq.push_back(p.derivative());
    while (!seq.back().is_zero()) {
      UPoly r = seq[seq.size() - 2].divmod(seq.back()).rem;
      if (r.is_zero()) break;
      seq.push_back(Rational(-1) * r);
    }
  }

  static int sign(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

  int variations_at(const Rational& x) const {
    int prev = 0, var = 0;
    for (const auto& f : seq) {
      const int s = sign(f.eval(x));
      if (s != 0 && prev != 0 && s != prev) ++var;
      if (s != 0) prev = s;
    }
    return var;
  }

  int variations_at_infinity(int dir) const {  // dir = +1 or -1
    int prev = 0, var = 0;
    for (const auto& f : seq) {
      int s = sign(f.lead());
      if (dir < 0 && f.degree() % 2 == 1) s = -s;
      if (s != 0 && prev != 0 && s != prev) ++var;
      if (s != 0) prev = s;
    }
    return var;
  }
};

// Number of distinct real roots, exact.
inline int count_distinct_real_roots(const UPoly& p) {
  if (p.is_zero())
    throw std::invalid_argument("root count of zero polynomial");
  if (p.is_constant()) return 0;
  const SturmChain chain(squarefree_part(p));
  return chain.variations_at_infinity(-1) - chain.variations_at_infinity(+1);
}

// Every real root of p has absolute value strictly below this bound.
inline Rational root_magnitude_bound(const UPoly& p) {
  if (p.is_zero() || p.is_constant())
    throw std::invalid_argument("root bound needs positive degree");
  Rational mx(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational a = p.coeff(i) / p.lead();
    if (a < 0) a = -a;
    if (a > mx) mx = a;
  }
  return mx + 1;
}

// Rational roots with multiplicities, via the rational root theorem on the
// integerized polynomial. Divisor enumeration is budgeted by trial-division
// steps; when the budget is exhausted, *complete is set false and the list
// holds only the roots found so far.
inline std::vector<std::pair<Rational, int>> rational_roots(
    const UPoly& p, long budget = 200000, bool* complete = nullptr) {
  if (complete) *complete = true;
  std::vector<std::pair<Rational, int>> out;
  if (p.is_zero() || p.is_constant()) return out;

  auto multiplicity = [&p](const Rational& r) {
    const UPoly lin({-r, Rational(1)});
    int m = 0;
    UPoly cur = p;
    while (true) {
      auto dm = cur.divmod(lin);
      if (!dm.rem.is_zero()) break;
      ++m;
      cur = dm.quot;
      if (cur.is_constant()) break;
    }
    return m;
  };

  // Strip zero roots first.
  UPoly q = p;
  if (q.coeff(0) == 0) {
    out.emplace_back(Rational(0), multiplicity(Rational(0)));
    while (q.coeff(0) == 0 && !q.is_constant())
      q = q.divmod(UPoly::x()).quot;
  }
  if (q.is_constant()) return out;

  // Integerize: scale by the lcm of coefficient denominators.
  mpz_class scale(1);
  for (int i = 0; i <= q.degree(); ++i)
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
            q.coeff(i).get_den().get_mpz_t());
  std::vector<mpz_class> ic(q.degree() + 1);
  for (int i = 0; i <= q.degree(); ++i) {
    Rational v = q.coeff(i) * Rational(scale);
    ic[i] = v.get_num();
  }

  auto divisors = [budget, complete](mpz_class n) {
    std::vector<mpz_class> ds;
    n = abs(n);
    mpz_class i(1);
    long steps = 0;
    for (; i * i <= n; ++i) {
      if (++steps > budget) {
        if (complete) *complete = false;
        break;
      }
      if (n % i == 0) {
        ds.push_back(i);
        ds.push_back(n / i);
      }
    }
    return ds;
  };

  const auto nums = divisors(ic.front());
  const auto dens = divisors(ic.back());
  std::vector<Rational> found;
  for (const auto& nu : nums)
    for (const auto& de : dens) {
      for (int sgn : {1, -1}) {
        Rational cand(sgn * nu, de);
        cand.canonicalize();
        if (std::find(found.begin(), found.end(), cand) != found.end())
          continue;
        if (q.eval(cand) == 0) found.push_back(cand);
      }
    }
  std::sort(found.begin(), found.end());
  for (const auto& r : found) out.emplace_back(r, multiplicity(r));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// Distinct real roots of p, separated: exact rational roots (with their
// multiplicity in p) plus one open isolating interval per irrational real
// root. `exact_labels_complete` is false when the rational-root budget ran
// out, in which case some intervals may in fact hold rational roots; the
// total distinct-root count is exact regardless.
struct RootIsolation {
  std::vector<std::pair<Rational, int>> rational;
  std::vector<std::pair<Rational, Rational>> intervals;
  bool exact_labels_complete = true;
};

inline RootIsolation isolate_real_roots(const UPoly& p, long budget = 200000) {
  if (p.is_zero())
    throw std::invalid_argument("root isolation of zero polynomial");
  RootIsolation out;
  if (p.is_constant()) return out;

  auto multiplicity_in_p = [&p](const Rational& r) {
    int m = 0;
    UPoly cur = p;
    const UPoly lin({-r, Rational(1)});
    while (true) {
      auto dm = cur.divmod(lin);
      if (!dm.rem.is_zero()) break;
      ++m;
      cur = dm.quot;
      if (cur.is_constant()) break;
    }
    return m;
  };

  out.rational = rational_roots(p, budget, &out.exact_labels_complete);
  UPoly rest = squarefree_part(p);
  for (const auto& [r, mult] : out.rational)
    rest = rest.divmod(UPoly({-r, Rational(1)})).quot;

  // Bisection on a squarefree remainder whose box endpoints are never roots.
  // If a midpoint happens to hit an exact root the budgeted rational search
  // missed, record it, deflate, and restart on the smaller polynomial; the
  // degree strictly drops, so this terminates.
  const Rational min_width(1, 1024);
  bool restart = true;
  while (restart) {
    restart = false;
    if (rest.is_constant()) break;
    out.intervals.clear();
    const SturmChain chain(rest);
    const Rational bound = root_magnitude_bound(rest);
    struct Box {
      Rational lo, hi;
      int count;
    };
    std::vector<Box> work;
    const int total = chain.variations_at(-bound) - chain.variations_at(bound);
    if (total > 0) work.push_back({-bound, bound, total});
    while (!work.empty()) {
      Box b = work.back();
      work.pop_back();
      if (b.count == 1 && b.hi - b.lo <= min_width) {
        out.intervals.emplace_back(b.lo, b.hi);
        continue;
      }
      const Rational mid = (b.lo + b.hi) / 2;
      if (rest.eval(mid) == 0) {
        out.rational.emplace_back(mid, multiplicity_in_p(mid));
        rest = rest.divmod(UPoly({-mid, Rational(1)})).quot;
        restart = true;
        break;
      }
      const int lo_count =
          chain.variations_at(b.lo) - chain.variations_at(mid);
      const int hi_count = b.count - lo_count;
      if (lo_count > 0) work.push_back({b.lo, mid, lo_count});
      if (hi_count > 0) work.push_back({mid, b.hi, hi_count});
    }
  }
  std::sort(out.rational.begin(), out.rational.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(out.intervals.begin(), out.intervals.end());
  return out;
}

}  // namespace jetplane
