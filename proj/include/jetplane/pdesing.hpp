#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetplane/grassmann.hpp"
#include "jetplane/poly.hpp"
#include "jetplane/prng.hpp"
#include "jetplane/realroots.hpp"

namespace jetplane {

// Everything in this module lives over one fixed second-order point of a
// scalar equation in two independent variables, i.e. inside the
// five-dimensional plane of Context(2, 1, 3).
inline Context pde_context() { return Context(2, 1, 3); }

// Third-order fiber coordinates (u_xxx, u_xxy, u_xyy, u_yyy) over that point.
struct FiberPoint3 {
  std::array<Rational, 4> u{Rational(0), Rational(0), Rational(0),
                            Rational(0)};
  bool operator==(const FiberPoint3& o) const { return u == o.u; }
  std::vector<Rational> as_vector() const { return {u[0], u[1], u[2], u[3]}; }
};

inline const std::array<std::string, 4>& fiber_variable_names() {
  static const std::array<std::string, 4> names = {"u_xxx", "u_xxy", "u_xyy",
                                                   "u_yyy"};
  return names;
}

// Scalar third-order equation F = 0, with F polynomial in the four fiber
// coordinates (lower-order values absorbed into the constants at the fixed
// base point). quasi_linear means affine in the fiber coordinates, which is
// exactly the condition for the symbol to be constant along the fiber.
struct PDE3 {
  Poly f;
  bool quasi_linear = false;

  explicit PDE3(Poly poly) : f(std::move(poly)) {
    if (f.nvars() != 4)
      throw std::invalid_argument("PDE3: expected four fiber variables");
    if (f.is_zero())
      throw std::invalid_argument("PDE3: equation is identically zero");
    quasi_linear = f.degree() <= 1;
  }
};

// ---------------------------------------------------------------------------
// Expression parser: sums, differences, products, integer powers, rational
// constants, and the four fiber variable names.
// ---------------------------------------------------------------------------

namespace detail {

class Pde3Parser {
 public:
  explicit Pde3Parser(const std::string& text) : s_(text) {}

  Poly parse() {
    Poly out = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    Poly out = term();
    while (true) {
      if (eat('+')) {
        out += term();
      } else if (eat('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  Poly term() {
    Poly out = factor();
    while (eat('*')) out = out * factor();
    return out;
  }

  Poly factor() {
    if (eat('-')) return Rational(-1) * factor();
    Poly base = atom();
    if (eat('^')) {
      const mpz_class e = integer("exponent");
      if (e < 0) fail("negative exponent");
      if (e > 256) fail("exponent too large");
      Poly out = Poly::constant(4, 1);
      for (mpz_class i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  Poly atom() {
    const char c = peek();
    if (c == '(') {
      eat('(');
      Poly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const mpz_class num = integer("number");
      if (eat('/')) {
        const mpz_class den = integer("denominator");
        if (den == 0) fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return Poly::constant(4, q);
      }
      return Poly::constant(4, Rational(num));
    }
    if (c == 'u') return variable();
    fail("expected number, variable, or '('");
  }

  Poly variable() {
    skip_ws();
    const auto& names = fiber_variable_names();
    for (int i = 0; i < 4; ++i) {
      const auto& n = names[i];
      if (s_.compare(pos_, n.size(), n) == 0) {
        pos_ += n.size();
        return Poly::variable(4, i);
      }
    }
    fail("unknown variable (expected u_xxx, u_xxy, u_xyy, or u_yyy)");
  }

  mpz_class integer(const std::string& what) {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected " + what);
    return mpz_class(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline PDE3 parse_pde3(const std::string& text) {
  return PDE3(detail::Pde3Parser(text).parse());
}

inline PDE3 monge_ampere() { return parse_pde3("u_xxy*u_yyy - u_xyy^2"); }
inline PDE3 quasi_linear_control() { return parse_pde3("u_xxx + u_yyy"); }

// ---------------------------------------------------------------------------
// Symbols and characteristic directions.
// ---------------------------------------------------------------------------

// Homogeneous cubic in the two base covectors; c[0]..c[3] are the
// coefficients of (dx)^3, (dx)^2 dy, dx (dy)^2, (dy)^3.
struct BinaryCubic {
  std::array<Rational, 4> c{Rational(0), Rational(0), Rational(0),
                            Rational(0)};

  bool operator==(const BinaryCubic& o) const { return c == o.c; }
  bool is_zero() const {
    return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
  }
  Rational evaluate(const Rational& x, const Rational& y) const {
    return c[0] * x * x * x + c[1] * x * x * y + c[2] * x * y * y +
           c[3] * y * y * y;
  }
};

// Symbol of F at a fiber point: the coefficient of (dx)^a (dy)^b is the
// partial of F along the fiber coordinate with the matching multi-index.
inline BinaryCubic symbol_at(const PDE3& eq, const FiberPoint3& t) {
  BinaryCubic out;
  const auto pt = t.as_vector();
  for (int i = 0; i < 4; ++i) {
    const Poly d = eq.f.partial(i);
    out.c[i] = d.evaluate(pt);
  }
  return out;
}

// Real projective root directions of a binary cubic. Finite slopes t label
// the directions (1 : t); the direction (0 : 1) is reported separately. The
// distinct count is always exact; when the rational-root budget runs out,
// exact_labels_complete turns false and some slopes may sit in intervals
// instead of the rational list.
struct CharacteristicCount {
  bool infinite = false;  // zero form: every direction is characteristic
  long distinct = 0;
  std::vector<std::pair<Rational, int>> rational_slopes;  // slope, multiplicity
  std::vector<std::pair<Rational, Rational>> irrational_slope_intervals;
  int vertical_multiplicity = 0;  // multiplicity of (0 : 1), 0 when absent
  bool exact_labels_complete = true;
};

inline CharacteristicCount characteristic_shadow_count(const BinaryCubic& q) {
  CharacteristicCount out;
  if (q.is_zero()) {
    out.infinite = true;
    return out;
  }
  const UPoly p({q.c[0], q.c[1], q.c[2], q.c[3]});  // q(1, t)
  if (q.c[3] == 0) {
    out.vertical_multiplicity = 3 - p.degree();
    out.distinct += 1;
  }
  if (!p.is_constant()) {
    RootIsolation iso = isolate_real_roots(p);
    out.exact_labels_complete = iso.exact_labels_complete;
    out.rational_slopes = std::move(iso.rational);
    out.irrational_slope_intervals = std::move(iso.intervals);
    out.distinct += static_cast<long>(out.rational_slopes.size()) +
                    static_cast<long>(out.irrational_slope_intervals.size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jet planes and lines over the fixed base point.
// ---------------------------------------------------------------------------

// The tangent plane cut out by a third-order fiber point: the span of the two
// truncated total derivatives it defines. Always a maximal horizontal
// integral element.
inline CartanSubspace jet_plane(const FiberPoint3& t) {
  const Context ctx = pde_context();
  SymPoly p(ctx.n, ctx.m, ctx.k);
  // Monomial coefficients scale the fiber coordinates by k / tau!, so that
  // each polarization row reproduces the truncated total derivative.
  p.coef(MultiIndex{3, 0}, 0) = t.u[0] / 2;
  p.coef(MultiIndex{2, 1}, 0) = Rational(3, 2) * t.u[1];
  p.coef(MultiIndex{1, 2}, 0) = Rational(3, 2) * t.u[2];
  p.coef(MultiIndex{0, 3}, 0) = t.u[3] / 2;
  return graph_of(ctx, p);
}

// Line spanned by l1 D_1 + l2 D_2 + (vertical part with second-order jet
// components pxx, pxy, pyy).
inline CartanSubspace line_from_jet_components(const Rational& l1,
                                               const Rational& l2,
                                               const Rational& pxx,
                                               const Rational& pxy,
                                               const Rational& pyy) {
  const Context ctx = pde_context();
  CartanVector v(ctx);
  v.l = {l1, l2};
  v.p.coef(MultiIndex{2, 0}, 0) = pxx / 2;
  v.p.coef(MultiIndex{1, 1}, 0) = pxy;
  v.p.coef(MultiIndex{0, 2}, 0) = pyy / 2;
  return CartanSubspace(
      ctx, Subspace::span(RatMatrix::from_cols(cartan_dim(ctx),
                                               {to_coords(v)})));
}

// The sampled family D_1 + a D_2 + c d/du_xx filling the singular locus of
// the Monge-Ampere example.
inline CartanSubspace monge_ampere_line(const Rational& a, const Rational& c) {
  return line_from_jet_components(Rational(1), a, c, Rational(0), Rational(0));
}

// ---------------------------------------------------------------------------
// Membership in the first singularity locus.
// ---------------------------------------------------------------------------

enum class Membership { MEMBER, MEMBER_IRRATIONAL, NOT_MEMBER, UNDECIDED };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::MEMBER: return "MEMBER";
    case Membership::MEMBER_IRRATIONAL: return "MEMBER_IRRATIONAL";
    case Membership::NOT_MEMBER: return "NOT_MEMBER";
    case Membership::UNDECIDED: return "UNDECIDED";
  }
  return "UNDECIDED";
}

struct MembershipResult {
  Membership status = Membership::UNDECIDED;
  std::optional<FiberPoint3> witness;  // rational witness when MEMBER
  std::optional<std::pair<Rational, Rational>>
      parameter_interval;  // isolates the family parameter when irrational
  FiberPoint3 family_base;  // containment family evaluated at parameter 0
  FiberPoint3 family_dir;   // derivative of the family in the parameter
};

// Independent re-check of the three membership conditions for a claimed
// witness: the fiber point solves the equation, its jet plane contains the
// line, and the line's shadow is a characteristic direction there.
inline bool verify_witness(const PDE3& eq, const CartanSubspace& sigma,
                           const FiberPoint3& t) {
  if (eq.f.evaluate(t.as_vector()) != 0) return false;
  const CartanSubspace plane = jet_plane(t);
  const auto& basis = sigma.space().basis();
  for (int c = 0; c < basis.cols(); ++c)
    if (!plane.space().contains_vector(basis.col(c))) return false;
  const CartanVector v = from_coords(sigma.context(), basis.col(0));
  return symbol_at(eq, t).evaluate(v.l[0], v.l[1]) == 0;
}

// Searches for a fiber point whose jet plane contains the line and whose
// symbol annihilates the line's shadow. Containment pins the fiber point to a
// one-parameter affine family; on it the equation and the symbol condition
// become univariate polynomials, and membership reduces to their common real
// roots: rational ones give an exact witness, irrational ones are isolated,
// and blowing the degree or factoring budget yields UNDECIDED.
inline MembershipResult singular_membership(const CartanSubspace& sigma,
                                            const PDE3& eq,
                                            int degree_budget = 64) {
  const Context ctx = pde_context();
  if (sigma.context() != ctx)
    throw std::invalid_argument("singular_membership: wrong ambient context");
  if (sigma.space().dim() != 1)
    throw std::invalid_argument("singular_membership: need a line");
  if (!is_horizontal(sigma))
    throw std::invalid_argument("singular_membership: line must be horizontal");

  const CartanVector v = from_coords(ctx, sigma.space().basis().col(0));
  const Rational l1 = v.l[0], l2 = v.l[1];
  const Rational pxx = Rational(2) * v.p.coef(MultiIndex{2, 0}, 0);
  const Rational pxy = v.p.coef(MultiIndex{1, 1}, 0);
  const Rational pyy = Rational(2) * v.p.coef(MultiIndex{0, 2}, 0);

  // Solve the banded containment system l1 t_{s+x} + l2 t_{s+y} = p_s for the
  // four fiber coordinates, leaving one free parameter.
  MembershipResult out;
  std::array<Rational, 4> base, dir;
  if (l1 != 0) {
    // free coordinate: u_yyy
    base[3] = 0;
    dir[3] = 1;
    base[2] = pyy / l1;
    dir[2] = -l2 / l1;
    base[1] = (pxy - l2 * base[2]) / l1;
    dir[1] = (-l2 * dir[2]) / l1;
    base[0] = (pxx - l2 * base[1]) / l1;
    dir[0] = (-l2 * dir[1]) / l1;
  } else {
    // free coordinate: u_xxx
    base[0] = 0;
    dir[0] = 1;
    base[1] = pxx / l2;
    dir[1] = 0;
    base[2] = pxy / l2;
    dir[2] = 0;
    base[3] = pyy / l2;
    dir[3] = 0;
  }
  out.family_base.u = base;
  out.family_dir.u = dir;

  std::vector<Poly> family;
  for (int i = 0; i < 4; ++i)
    family.push_back(Poly::constant(1, base[i]) +
                     dir[i] * Poly::variable(1, 0));

  const UPoly on_equation = to_upoly(eq.f.substitute(family));
  const std::array<Rational, 4> mono = {l1 * l1 * l1, l1 * l1 * l2,
                                        l1 * l2 * l2, l2 * l2 * l2};
  Poly symbol_on_shadow(1);
  for (int i = 0; i < 4; ++i)
    symbol_on_shadow += mono[i] * eq.f.partial(i).substitute(family);
  const UPoly on_symbol = to_upoly(symbol_on_shadow);

  const UPoly common = gcd(on_equation, on_symbol);
  auto witness_at = [&](const Rational& u) {
    FiberPoint3 w;
    for (int i = 0; i < 4; ++i) w.u[i] = base[i] + u * dir[i];
    return w;
  };

  if (common.is_zero()) {
    out.status = Membership::MEMBER;
    out.witness = witness_at(Rational(0));
  } else if (common.is_constant()) {
    out.status = Membership::NOT_MEMBER;
  } else if (common.degree() > degree_budget) {
    out.status = Membership::UNDECIDED;
  } else {
    const RootIsolation iso = isolate_real_roots(common);
    if (!iso.exact_labels_complete) {
      out.status = Membership::UNDECIDED;
    } else if (!iso.rational.empty()) {
      out.status = Membership::MEMBER;
      out.witness = witness_at(iso.rational.front().first);
    } else if (!iso.intervals.empty()) {
      out.status = Membership::MEMBER_IRRATIONAL;
      out.parameter_interval = iso.intervals.front();
    } else {
      out.status = Membership::NOT_MEMBER;
    }
  }

  if (out.witness && !verify_witness(eq, sigma, *out.witness))
    throw std::logic_error(
        "singular_membership: witness failed re-verification");
  return out;
}

// ---------------------------------------------------------------------------
// Polar dimension bounds on the singular locus.
// ---------------------------------------------------------------------------

struct PolarBoundRecord {
  int lower_bound = 0;  // pencil through the line inside the witness plane
  int upper_bound = 1;  // 0 when a constant symbol pins finitely many roots
};

// lower_bound = 1 when the whole pencil of lines through Sigma inside the
// witness jet plane stays in the singular locus identically in the pencil
// parameter; upper_bound = 0 when the equation is quasi-linear and its
// (constant) symbol has finitely many characteristic directions.
inline PolarBoundRecord polar_dim_on_singularity(const PDE3& eq,
                                                 const CartanSubspace& sigma,
                                                 const FiberPoint3& witness) {
  if (!verify_witness(eq, sigma, witness))
    throw std::invalid_argument(
        "polar_dim_on_singularity: not a verified member/witness pair");

  const Context ctx = pde_context();
  const CartanSubspace plane = jet_plane(witness);
  const CartanVector line = from_coords(ctx, sigma.space().basis().col(0));

  // Pencil direction: a plane generator whose shadow is independent.
  std::optional<CartanVector> pencil;
  for (int c = 0; c < plane.space().basis().cols(); ++c) {
    CartanVector w = from_coords(ctx, plane.space().basis().col(c));
    if (line.l[0] * w.l[1] - line.l[1] * w.l[0] != 0) {
      pencil = std::move(w);
      break;
    }
  }
  if (!pencil)
    throw std::logic_error("polar_dim_on_singularity: degenerate jet plane");

  const BinaryCubic q = symbol_at(eq, witness);
  const Poly t = Poly::variable(1, 0);
  const Poly sx = Poly::constant(1, line.l[0]) + pencil->l[0] * t;
  const Poly sy = Poly::constant(1, line.l[1]) + pencil->l[1] * t;
  const Poly swept = q.c[0] * (sx * sx * sx) + q.c[1] * (sx * sx * sy) +
                     q.c[2] * (sx * sy * sy) + q.c[3] * (sy * sy * sy);

  PolarBoundRecord out;
  out.lower_bound = swept.is_zero() ? 1 : 0;
  if (eq.quasi_linear) {
    const CharacteristicCount cc =
        characteristic_shadow_count(symbol_at(eq, FiberPoint3{}));
    out.upper_bound = cc.infinite ? 1 : 0;
  } else {
    out.upper_bound = 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end driver for the non-equivalence example.
// ---------------------------------------------------------------------------

struct MaExampleReport {
  std::uint64_t seed = 0;

  struct FiberSample {
    Rational c;
    bool on_equation = false;
    bool symbol_vanishes = false;
  };
  std::vector<FiberSample> fiber_samples;  // the (c,0,0,0) family
  bool family_on_locus = false;            // (a)

  struct LineSample {
    Rational a, c;
    Membership status = Membership::UNDECIDED;
    FiberPoint3 witness;
    bool witness_verified = false;
    int lower_bound = 0;
  };
  std::vector<LineSample> line_samples;
  bool all_members_verified = false;  // (b)
  bool lower_bound_holds = false;     // (c): every sampled member has bound 1

  Membership control_status = Membership::UNDECIDED;
  FiberPoint3 control_witness;
  int control_upper_bound = 1;  // (d)

  bool not_contact_equivalent = false;  // final verdict
};

inline MaExampleReport ma_example(std::uint64_t seed, int fiber_count = 20,
                                  int line_count = 50) {
  MaExampleReport rep;
  rep.seed = seed;
  const PDE3 ma = monge_ampere();
  const PDE3 control = quasi_linear_control();
  Xoshiro256 gen(seed);

  rep.family_on_locus = true;
  for (int i = 0; i < fiber_count; ++i) {
    MaExampleReport::FiberSample s;
    s.c = gen.rational();
    FiberPoint3 t;
    t.u[0] = s.c;
    s.on_equation = ma.f.evaluate(t.as_vector()) == 0;
    s.symbol_vanishes = symbol_at(ma, t).is_zero();
    if (!(s.on_equation && s.symbol_vanishes)) rep.family_on_locus = false;
    rep.fiber_samples.push_back(std::move(s));
  }

  rep.all_members_verified = true;
  rep.lower_bound_holds = true;
  for (int i = 0; i < line_count; ++i) {
    MaExampleReport::LineSample s;
    s.a = gen.rational();
    s.c = gen.rational();
    const CartanSubspace sigma = monge_ampere_line(s.a, s.c);
    const MembershipResult res = singular_membership(sigma, ma);
    s.status = res.status;
    if (res.status == Membership::MEMBER && res.witness) {
      s.witness = *res.witness;
      s.witness_verified = verify_witness(ma, sigma, s.witness);
      if (s.witness_verified) {
        s.lower_bound =
            polar_dim_on_singularity(ma, sigma, s.witness).lower_bound;
      }
    }
    if (!(s.status == Membership::MEMBER && s.witness_verified))
      rep.all_members_verified = false;
    if (s.lower_bound < 1) rep.lower_bound_holds = false;
    rep.line_samples.push_back(std::move(s));
  }

  const CartanSubspace control_line = line_from_jet_components(
      Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0));
  const MembershipResult control_res =
      singular_membership(control_line, control);
  rep.control_status = control_res.status;
  if (control_res.witness) {
    rep.control_witness = *control_res.witness;
    rep.control_upper_bound =
        polar_dim_on_singularity(control, control_line, rep.control_witness)
            .upper_bound;
  }

  rep.not_contact_equivalent =
      rep.family_on_locus && rep.all_members_verified &&
      rep.lower_bound_holds && rep.control_status == Membership::MEMBER &&
      rep.control_upper_bound == 0;
  return rep;
}

}  // namespace jetplane
