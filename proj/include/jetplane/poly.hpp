#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetplane/rational.hpp"

namespace jetplane {

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Terms are keyed by exponent vector in an ordered map, so iteration order,
// printing, and all derived reports are deterministic.
class Poly {
 public:
  explicit Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("Poly: negative variable count");
  }

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = c;
    return p;
  }

  static Poly variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::invalid_argument("Poly: bad variable");
    Poly p(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {  // total degree; zero polynomial reports 0
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      if (s > d) d = s;
    }
    return d;
  }

  const Rational coefficient(const std::vector<int>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Rational& s, Poly p) { return p *= s; }

  Poly operator*(const Poly& o) const {
    check_same(o);
    Poly out(nvars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        std::vector<int> e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  Poly partial(int i) const {
    if (i < 0 || i >= nvars_) throw std::invalid_argument("partial: bad variable");
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      std::vector<int> d = e;
      d[i] -= 1;
      out.add_term(d, Rational(e[i]) * c);
    }
    return out;
  }

  // Total substitution: variable i is replaced by exprs[i]; all exprs share a
  // common (possibly different) variable count, which the result uses.
  Poly substitute(const std::vector<Poly>& exprs) const {
    if (static_cast<int>(exprs.size()) != nvars_)
      throw std::invalid_argument("substitute: wrong expression count");
    const int out_vars = exprs.empty() ? 0 : exprs[0].nvars();
    for (const auto& p : exprs)
      if (p.nvars() != out_vars)
        throw std::invalid_argument("substitute: mixed variable counts");
    Poly out(out_vars);
    for (const auto& [e, c] : terms_) {
      Poly term = Poly::constant(out_vars, c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * exprs[i];
      out += term;
    }
    return out;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw std::invalid_argument("evaluate: wrong point dimension");
    Rational out(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      out += t;
    }
    return out;
  }

  // Deterministic rendering with the given variable names.
  std::string to_string(const std::vector<std::string>& names) const {
    if (static_cast<int>(names.size()) != nvars_)
      throw std::invalid_argument("to_string: wrong name count");
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coef = jetplane::to_string(c);
      std::string piece;
      if (mono.empty()) {
        piece = coef;
      } else if (c == 1) {
        piece = mono;
      } else if (c == -1) {
        piece = "-" + mono;
      } else {
        piece = coef + "*" + mono;
      }
      if (out.empty()) {
        out = piece;
      } else if (!piece.empty() && piece[0] == '-') {
        out += " - " + piece.substr(1);
      } else {
        out += " + " + piece;
      }
    }
    return out;
  }

 private:
  void check_same(const Poly& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("Poly: variable count mismatch");
  }

  void add_term(const std::vector<int>& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int nvars_;
  std::map<std::vector<int>, Rational> terms_;
};

}  // namespace jetplane
