#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetplane/grassmann.hpp"
#include "jetplane/polar.hpp"
#include "jetplane/poly.hpp"
#include "jetplane/prng.hpp"

namespace jetplane {

// ---------------------------------------------------------------------------
// Charts: ordered lists of distinct coordinate names.
// ---------------------------------------------------------------------------

struct Chart {
  std::vector<std::string> names;

  explicit Chart(std::vector<std::string> ns) : names(std::move(ns)) {
    for (const auto& s : names)
      if (s.empty()) throw std::invalid_argument("Chart: empty variable name");
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("Chart: duplicate variable name");
  }

  int size() const { return static_cast<int>(names.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    throw std::invalid_argument("Chart: unknown variable " + name);
  }

  bool operator==(const Chart& o) const { return names == o.names; }
  bool operator!=(const Chart& o) const { return !(*this == o); }
};

// Chart around a generic line: slopes b^alpha (alpha = 2..n) of the
// horizontal direction and the full matrix f^j_i of vertical components.
// Layout: b2..bn, then f^j_i grouped by value index j, inner index i = 1..n.
inline int line_chart_b_index(int n, int alpha) { return alpha - 2; }
inline int line_chart_f_index(int n, int j, int i) {
  return (n - 1) + (j - 1) * n + (i - 1);
}

inline Chart line_chart(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("line_chart: need n, m >= 1");
  std::vector<std::string> names;
  for (int a = 2; a <= n; ++a) names.push_back("b" + std::to_string(a));
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= n; ++i)
      names.push_back("f" + std::to_string(j) + "_" + std::to_string(i));
  return Chart(std::move(names));
}

// Straightened chart produced by the coordinate change below: base slopes
// y^alpha, fibre values v^j, and the remaining slopes v^j_alpha (alpha >= 2).
inline int jet_chart_y_index(int n, int m, int alpha) { return alpha - 2; }
inline int jet_chart_v_index(int n, int m, int j) { return (n - 1) + (j - 1); }
inline int jet_chart_slope_index(int n, int m, int j, int alpha) {
  return (n - 1) + m + (j - 1) * (n - 1) + (alpha - 2);
}

inline Chart jet_chart(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("jet_chart: need n, m >= 1");
  std::vector<std::string> names;
  for (int a = 2; a <= n; ++a) names.push_back("y" + std::to_string(a));
  for (int j = 1; j <= m; ++j) names.push_back("v" + std::to_string(j));
  for (int j = 1; j <= m; ++j)
    for (int a = 2; a <= n; ++a)
      names.push_back("v" + std::to_string(j) + "_" + std::to_string(a));
  return Chart(std::move(names));
}

// ---------------------------------------------------------------------------
// Polynomial vector fields and the Lie bracket.
// ---------------------------------------------------------------------------

struct PolyVectorField {
  Chart chart;
  std::vector<Poly> coeffs;  // one polynomial per chart variable

  PolyVectorField(Chart c, std::vector<Poly> co)
      : chart(std::move(c)), coeffs(std::move(co)) {
    if (static_cast<int>(coeffs.size()) != chart.size())
      throw std::invalid_argument("PolyVectorField: wrong coefficient count");
    for (const auto& p : coeffs)
      if (p.nvars() != chart.size())
        throw std::invalid_argument("PolyVectorField: wrong variable count");
  }

  bool is_zero() const {
    for (const auto& p : coeffs)
      if (!p.is_zero()) return false;
    return true;
  }

  bool operator==(const PolyVectorField& o) const {
    return chart == o.chart && coeffs == o.coeffs;
  }

  // Derivation action X(g) = sum_i X^i dg/dx^i.
  Poly apply(const Poly& g) const {
    if (g.nvars() != chart.size())
      throw std::invalid_argument("apply: variable count mismatch");
    Poly out(chart.size());
    for (int i = 0; i < chart.size(); ++i)
      out += coeffs[i] * g.partial(i);
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < chart.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      std::string c = coeffs[i].to_string(chart.names);
      std::string piece;
      if (c == "1") {
        piece = "d_" + chart.names[i];
      } else if (c == "-1") {
        piece = "-d_" + chart.names[i];
      } else {
        bool atomic = c.find(' ') == std::string::npos;
        piece = (atomic ? c : "(" + c + ")") + "*d_" + chart.names[i];
      }
      if (out.empty()) {
        out = piece;
      } else if (piece[0] == '-') {
        out += " - " + piece.substr(1);
      } else {
        out += " + " + piece;
      }
    }
    return out.empty() ? "0" : out;
  }
};

inline PolyVectorField zero_field(const Chart& chart) {
  return PolyVectorField(chart,
                         std::vector<Poly>(chart.size(), Poly(chart.size())));
}

inline PolyVectorField coordinate_field(const Chart& chart, int i) {
  auto f = zero_field(chart);
  f.coeffs.at(i) = Poly::constant(chart.size(), 1);
  return f;
}

inline PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) {
  if (a.chart != b.chart)
    throw std::invalid_argument("field sum: chart mismatch");
  for (int i = 0; i < a.chart.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

inline PolyVectorField operator*(const Rational& s, PolyVectorField f) {
  for (auto& c : f.coeffs) c *= s;
  return f;
}

inline PolyVectorField operator*(const Poly& g, PolyVectorField f) {
  for (auto& c : f.coeffs) c = g * c;
  return f;
}

// [X, Y]^i = X(Y^i) - Y(X^i); both fields must live on the same chart.
inline PolyVectorField lie_bracket(const PolyVectorField& x,
                                   const PolyVectorField& y) {
  if (x.chart != y.chart)
    throw std::invalid_argument("lie_bracket: chart mismatch");
  std::vector<Poly> out;
  out.reserve(x.coeffs.size());
  for (int i = 0; i < x.chart.size(); ++i)
    out.push_back(x.apply(y.coeffs[i]) - y.apply(x.coeffs[i]));
  return PolyVectorField(x.chart, std::move(out));
}

// ---------------------------------------------------------------------------
// Polynomial chart maps with validated inverses.
// ---------------------------------------------------------------------------

struct ChartMap {
  Chart source;
  Chart target;
  std::vector<Poly> target_exprs;  // target coordinates as polys in source vars
  std::vector<Poly> source_exprs;  // source coordinates as polys in target vars
};

// Validates that the two coordinate expressions are mutually inverse as
// polynomial maps before accepting them.
inline ChartMap make_chart_map(Chart source, Chart target,
                               std::vector<Poly> target_exprs,
                               std::vector<Poly> source_exprs) {
  const int ns = source.size();
  const int nt = target.size();
  if (static_cast<int>(target_exprs.size()) != nt ||
      static_cast<int>(source_exprs.size()) != ns)
    throw std::invalid_argument("make_chart_map: wrong expression count");
  for (const auto& p : target_exprs)
    if (p.nvars() != ns)
      throw std::invalid_argument("make_chart_map: target expr variable count");
  for (const auto& p : source_exprs)
    if (p.nvars() != nt)
      throw std::invalid_argument("make_chart_map: source expr variable count");
  for (int w = 0; w < nt; ++w)
    if (!(target_exprs[w].substitute(source_exprs) == Poly::variable(nt, w)))
      throw std::invalid_argument(
          "make_chart_map: expressions are not mutually inverse");
  for (int v = 0; v < ns; ++v)
    if (!(source_exprs[v].substitute(target_exprs) == Poly::variable(ns, v)))
      throw std::invalid_argument(
          "make_chart_map: expressions are not mutually inverse");
  return ChartMap{std::move(source), std::move(target), std::move(target_exprs),
                  std::move(source_exprs)};
}

// Pushforward of a polynomial field along a polynomial diffeomorphism: the
// target coefficient at w is X applied to the w-th coordinate expression,
// rewritten in target variables through the inverse expressions.
inline PolyVectorField pushforward(const PolyVectorField& x,
                                   const ChartMap& map) {
  if (x.chart != map.source)
    throw std::invalid_argument("pushforward: field not on source chart");
  std::vector<Poly> out;
  out.reserve(map.target_exprs.size());
  for (const auto& w_expr : map.target_exprs)
    out.push_back(x.apply(w_expr).substitute(map.source_exprs));
  return PolyVectorField(map.target, std::move(out));
}

// ---------------------------------------------------------------------------
// The polar frame on the line chart and the straightening change.
// ---------------------------------------------------------------------------

// Frame spanning the polar plane of the chart's base line at every point:
//   X_alpha   = d_b^alpha + sum_j f^j_alpha d_f^j_1          (alpha = 2..n)
//   X^alpha_j = d_f^j_alpha - b^alpha d_f^j_1
// listed as X_2..X_n, then for each j the fields X^2_j..X^n_j.
inline std::vector<PolyVectorField> polar_frame(int n, int m) {
  if (n < 2 || m < 1)
    throw std::invalid_argument("polar_frame: need n >= 2, m >= 1");
  const Chart chart = line_chart(n, m);
  const int nv = chart.size();
  std::vector<PolyVectorField> frame;
  for (int a = 2; a <= n; ++a) {
    auto f = zero_field(chart);
    f.coeffs[line_chart_b_index(n, a)] = Poly::constant(nv, 1);
    for (int j = 1; j <= m; ++j)
      f.coeffs[line_chart_f_index(n, j, 1)] =
          Poly::variable(nv, line_chart_f_index(n, j, a));
    frame.push_back(std::move(f));
  }
  for (int j = 1; j <= m; ++j)
    for (int a = 2; a <= n; ++a) {
      auto f = zero_field(chart);
      f.coeffs[line_chart_f_index(n, j, a)] = Poly::constant(nv, 1);
      f.coeffs[line_chart_f_index(n, j, 1)] =
          Rational(-1) * Poly::variable(nv, line_chart_b_index(n, a));
      frame.push_back(std::move(f));
    }
  return frame;
}

// Coordinate change that straightens the polar frame:
//   b^alpha = y^alpha,  f^j_alpha = v^j_alpha,
//   f^j_1   = 2 v^j - sum_alpha v^j_alpha y^alpha,
// with inverse v^j = (f^j_1 + sum_alpha f^j_alpha b^alpha) / 2.
inline ChartMap straightening_map(int n, int m) {
  const Chart lc = line_chart(n, m);
  const Chart jc = jet_chart(n, m);
  const int nl = lc.size();
  const int nj = jc.size();

  // Jet-chart coordinates written in line-chart variables.
  std::vector<Poly> jet_exprs;
  for (int a = 2; a <= n; ++a)
    jet_exprs.push_back(Poly::variable(nl, line_chart_b_index(n, a)));
  for (int j = 1; j <= m; ++j) {
    Poly v = Rational(1, 2) * Poly::variable(nl, line_chart_f_index(n, j, 1));
    for (int a = 2; a <= n; ++a)
      v += Rational(1, 2) *
           (Poly::variable(nl, line_chart_f_index(n, j, a)) *
            Poly::variable(nl, line_chart_b_index(n, a)));
    jet_exprs.push_back(std::move(v));
  }
  for (int j = 1; j <= m; ++j)
    for (int a = 2; a <= n; ++a)
      jet_exprs.push_back(Poly::variable(nl, line_chart_f_index(n, j, a)));

  // Line-chart coordinates written in jet-chart variables.
  std::vector<Poly> line_exprs;
  for (int a = 2; a <= n; ++a)
    line_exprs.push_back(Poly::variable(nj, jet_chart_y_index(n, m, a)));
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= n; ++i) {
      if (i == 1) {
        Poly f1 = Rational(2) * Poly::variable(nj, jet_chart_v_index(n, m, j));
        for (int a = 2; a <= n; ++a)
          f1 -= Poly::variable(nj, jet_chart_slope_index(n, m, j, a)) *
                Poly::variable(nj, jet_chart_y_index(n, m, a));
        line_exprs.push_back(std::move(f1));
      } else {
        line_exprs.push_back(
            Poly::variable(nj, jet_chart_slope_index(n, m, j, i)));
      }
    }

  return make_chart_map(lc, jc, std::move(jet_exprs), std::move(line_exprs));
}

// ---------------------------------------------------------------------------
// Bridge to the exact polar-plane computation at order two.
// ---------------------------------------------------------------------------

namespace detail {

// Line encoded by a chart point: direction e_1 + sum b^alpha e_alpha plus the
// vertical part with component f^j_i on xi^i tensor e_j.
inline CartanVector chart_point_line(const Context& ctx,
                                     const std::vector<Rational>& point) {
  CartanVector cv(ctx);
  cv.l[0] = 1;
  for (int a = 2; a <= ctx.n; ++a)
    cv.l[a - 1] = point[line_chart_b_index(ctx.n, a)];
  for (int j = 1; j <= ctx.m; ++j)
    for (int i = 1; i <= ctx.n; ++i) {
      MultiIndex mi(ctx.n, 0);
      mi[i - 1] = 1;
      cv.p.coef(mi, j - 1) = point[line_chart_f_index(ctx.n, j, i)];
    }
  return cv;
}

// Chart tangent vector (B, F) as a canonical hom image at the base line.
inline std::vector<Rational> chart_vector_image(
    const CartanSubspace& sigma, const std::vector<Rational>& tangent) {
  const Context& ctx = sigma.context();
  CartanVector img(ctx);
  for (int a = 2; a <= ctx.n; ++a)
    img.l[a - 1] = tangent[line_chart_b_index(ctx.n, a)];
  for (int j = 1; j <= ctx.m; ++j)
    for (int i = 1; i <= ctx.n; ++i) {
      MultiIndex mi(ctx.n, 0);
      mi[i - 1] = 1;
      img.p.coef(mi, j - 1) = tangent[line_chart_f_index(ctx.n, j, i)];
    }
  return reduce_against(sigma.space(), to_coords(img));
}

}  // namespace detail

struct ContactSample {
  int index = 0;
  long polar_dim = 0;
  bool frame_spans_polar = false;   // frame values span exactly the polar plane
  bool membership_matches = false;  // vanishing pairing == first-slope relation
};

struct ContactReport {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  long frame_size = 0;
  long polar_dim_expected = 0;
  std::vector<ContactSample> samples;
  bool all_ok = false;
};

// At seeded chart points, checks that the polar frame evaluates to an exact
// basis of the polar plane of the encoded line, and that membership of a
// chart tangent vector in that plane is equivalent to the slope relation
//   F^j_1 = sum_alpha (f^j_alpha B^alpha - b^alpha F^j_alpha)  for all j.
inline ContactReport kernel_condition_check(int n, int m, std::uint64_t seed,
                                            int num_points) {
  if (n < 2 || m < 1)
    throw std::invalid_argument("kernel_condition_check: need n >= 2, m >= 1");
  if (num_points < 1)
    throw std::invalid_argument("kernel_condition_check: need points >= 1");
  const Context ctx(n, m, 2);
  const Chart chart = line_chart(n, m);
  const int nv = chart.size();
  const auto frame = polar_frame(n, m);

  ContactReport rep;
  rep.n = n;
  rep.m = m;
  rep.seed = seed;
  rep.frame_size = static_cast<long>(frame.size());
  rep.polar_dim_expected = dim_polar_formula(ctx, 1);

  Xoshiro256 gen(seed);
  rep.all_ok = true;
  for (int s = 0; s < num_points; ++s) {
    std::vector<Rational> point(nv);
    for (auto& q : point) q = gen.rational();
    // The first sample is always the chart origin, so every report covers the
    // base case where the frame degenerates to pure coordinate fields.
    if (s == 0) std::fill(point.begin(), point.end(), Rational(0));

    const CartanVector line = detail::chart_point_line(ctx, point);
    const CartanSubspace sigma(
        ctx, Subspace::span(RatMatrix::from_cols(cartan_dim(ctx),
                                                 {to_coords(line)})));

    ContactSample sample;
    sample.index = s;

    const auto polar = polar_plane(sigma);
    sample.polar_dim = static_cast<long>(polar.size());

    std::vector<std::vector<Rational>> polar_cols, frame_cols;
    for (const auto& h : polar) polar_cols.push_back(hom_coords(h));
    for (const auto& f : frame) {
      std::vector<Rational> tangent(nv);
      for (int i = 0; i < nv; ++i) tangent[i] = f.coeffs[i].evaluate(point);
      TangentHom h{sigma, {detail::chart_vector_image(sigma, tangent)}};
      frame_cols.push_back(hom_coords(h));
    }
    const long hom_dim = polar_cols.empty()
                             ? (frame_cols.empty()
                                    ? cartan_dim(ctx) - 1
                                    : static_cast<long>(frame_cols[0].size()))
                             : static_cast<long>(polar_cols[0].size());
    const Subspace polar_span =
        Subspace::span(RatMatrix::from_cols(hom_dim, polar_cols));
    const Subspace frame_span =
        Subspace::span(RatMatrix::from_cols(hom_dim, frame_cols));
    sample.frame_spans_polar =
        polar_span == frame_span &&
        frame_span.dim() == static_cast<long>(frame.size()) &&
        sample.polar_dim == rep.polar_dim_expected;

    // Membership probes: random tangent vectors, one forced onto the slope
    // relation and one forced off it.
    sample.membership_matches = true;
    for (int probe = 0; probe < 8; ++probe) {
      std::vector<Rational> tangent(nv);
      for (auto& q : tangent) q = gen.rational();
      if (probe == 1 || probe == 2) {
        for (int j = 1; j <= m; ++j) {
          Rational f1(0);
          for (int a = 2; a <= n; ++a)
            f1 += point[line_chart_f_index(n, j, a)] *
                      tangent[line_chart_b_index(n, a)] -
                  point[line_chart_b_index(n, a)] *
                      tangent[line_chart_f_index(n, j, a)];
          tangent[line_chart_f_index(n, j, 1)] = f1;
        }
        if (probe == 2) tangent[line_chart_f_index(n, 1, 1)] += 1;
      }
      bool relation = true;
      for (int j = 1; j <= m; ++j) {
        Rational rhs(0);
        for (int a = 2; a <= n; ++a)
          rhs += point[line_chart_f_index(n, j, a)] *
                     tangent[line_chart_b_index(n, a)] -
                 point[line_chart_b_index(n, a)] *
                     tangent[line_chart_f_index(n, j, a)];
        if (tangent[line_chart_f_index(n, j, 1)] != rhs) relation = false;
      }
      TangentHom h{sigma, {detail::chart_vector_image(sigma, tangent)}};
      const bool in_kernel = sharp(h).is_zero();
      if (in_kernel != relation) sample.membership_matches = false;
    }

    if (!(sample.frame_spans_polar && sample.membership_matches))
      rep.all_ok = false;
    rep.samples.push_back(std::move(sample));
  }
  return rep;
}

}  // namespace jetplane
