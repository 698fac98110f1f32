#include "jetplane/contactization.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "jetplane/polar.hpp"

namespace jetplane {
namespace {

Poly var(const Chart& c, const std::string& name) {
  return Poly::variable(c.size(), c.index_of(name));
}

Poly random_poly(Xoshiro256& g, int nvars) {
  Poly p(nvars);
  const int terms = static_cast<int>(g.int_in(1, 3));
  for (int t = 0; t < terms; ++t) {
    Poly term = Poly::constant(nvars, g.nonzero_rational());
    const int deg = static_cast<int>(g.int_in(0, 2));
    for (int d = 0; d < deg; ++d)
      term = term * Poly::variable(nvars, static_cast<int>(g.below(nvars)));
    p += term;
  }
  return p;
}

PolyVectorField random_field(Xoshiro256& g, const Chart& chart) {
  std::vector<Poly> coeffs;
  for (int i = 0; i < chart.size(); ++i)
    coeffs.push_back(random_poly(g, chart.size()));
  return PolyVectorField(chart, std::move(coeffs));
}

TEST(Poly, ArithmeticMatchesHandExpansion) {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly lhs = (x + y) * (x + y);
  const Poly rhs = x * x + Rational(2) * (x * y) + y * y;
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs.degree(), 2);
  EXPECT_EQ(lhs.coefficient({1, 1}), Rational(2));
  EXPECT_TRUE((lhs - rhs).is_zero());
  EXPECT_TRUE((Rational(0) * lhs).is_zero());
}

TEST(Poly, PartialDerivative) {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  // d/dx (x^2 y + 3x) = 2xy + 3.
  const Poly p = x * x * y + Rational(3) * x;
  EXPECT_EQ(p.partial(0), Rational(2) * (x * y) + Poly::constant(2, 3));
  EXPECT_TRUE(Poly::constant(2, 7).partial(1).is_zero());
  EXPECT_THROW(p.partial(2), std::invalid_argument);
}

TEST(Poly, SubstituteComposesWithEvaluate) {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly p = x * y + y * y;

  // Substitute x = u + w, y = u and compare against the hand expansion
  // (u + w) u + u^2 = 2u^2 + uw.
  const Poly u = Poly::variable(2, 0);
  const Poly w = Poly::variable(2, 1);
  const Poly composed = p.substitute({u + w, u});
  EXPECT_EQ(composed, Rational(2) * (u * u) + u * w);

  // Evaluation through the substitution agrees with composed evaluation.
  const std::vector<Rational> pt = {Rational(3, 2), Rational(-1, 3)};
  const Rational xv = (u + w).evaluate(pt), yv = u.evaluate(pt);
  EXPECT_EQ(composed.evaluate(pt), p.evaluate({xv, yv}));

  EXPECT_THROW(p.substitute({u}), std::invalid_argument);
  EXPECT_THROW(p.evaluate({Rational(1)}), std::invalid_argument);
}

TEST(Poly, DeterministicRendering) {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  // Terms are ordered lexicographically by exponent vector.
  const Poly p = Rational(-1, 2) * (x * x) + y + Poly::constant(2, 3);
  EXPECT_EQ(p.to_string({"x", "y"}), "3 + y - 1/2*x^2");
  EXPECT_EQ(Poly(2).to_string({"x", "y"}), "0");
}

TEST(Chart, NamesAndIndexLayout) {
  const Chart lc = line_chart(3, 2);
  const std::vector<std::string> expected_lc = {"b2",   "b3",   "f1_1", "f1_2",
                                                "f1_3", "f2_1", "f2_2", "f2_3"};
  EXPECT_EQ(lc.names, expected_lc);
  EXPECT_EQ(lc.size(), (3 - 1) + 3 * 2);
  EXPECT_EQ(line_chart_b_index(3, 3), lc.index_of("b3"));
  EXPECT_EQ(line_chart_f_index(3, 2, 1), lc.index_of("f2_1"));

  const Chart jc = jet_chart(3, 2);
  const std::vector<std::string> expected_jc = {"y2",   "y3",   "v1",   "v2",
                                                "v1_2", "v1_3", "v2_2", "v2_3"};
  EXPECT_EQ(jc.names, expected_jc);
  EXPECT_EQ(jc.size(), (3 - 1) + 2 + (3 - 1) * 2);
  EXPECT_EQ(jet_chart_v_index(3, 2, 2), jc.index_of("v2"));
  EXPECT_EQ(jet_chart_slope_index(3, 2, 1, 3), jc.index_of("v1_3"));

  EXPECT_THROW(Chart({"a", "a"}), std::invalid_argument);
  EXPECT_THROW(Chart({""}), std::invalid_argument);
  EXPECT_THROW(lc.index_of("nope"), std::invalid_argument);
}

TEST(Fields, ApplyAndRendering) {
  const Chart lc = line_chart(3, 1);
  const auto frame = polar_frame(3, 1);
  EXPECT_EQ(frame[0].to_string(), "d_b2 + f1_2*d_f1_1");
  EXPECT_EQ(frame[2].to_string(), "-b2*d_f1_1 + d_f1_2");
  EXPECT_EQ(zero_field(lc).to_string(), "0");

  // X_2 applied to b2*f1_1 is f1_1 + f1_2*b2 by the Leibniz rule.
  const Poly g = var(lc, "b2") * var(lc, "f1_1");
  EXPECT_EQ(frame[0].apply(g),
            var(lc, "f1_1") + var(lc, "f1_2") * var(lc, "b2"));
}

TEST(Bracket, SelfAndCoordinateBaseCases) {
  const Chart abc({"a", "b", "c"});
  Xoshiro256 g(11);
  const auto x = random_field(g, abc);
  EXPECT_TRUE(lie_bracket(x, x).is_zero());

  // [d_a, b*d_c] vanishes for a coordinate b distinct from a, and equals d_c
  // when the coefficient is the coordinate a itself.
  const auto da = coordinate_field(abc, 0);
  EXPECT_TRUE(lie_bracket(da, var(abc, "b") * coordinate_field(abc, 2))
                  .is_zero());
  EXPECT_EQ(lie_bracket(da, var(abc, "a") * coordinate_field(abc, 2)),
            coordinate_field(abc, 2));
}

TEST(Bracket, BilinearAntisymmetricJacobi) {
  const Chart chart = line_chart(3, 1);
  Xoshiro256 g(2026);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_field(g, chart);
    const auto y = random_field(g, chart);
    const auto z = random_field(g, chart);
    const Rational a = g.nonzero_rational();

    EXPECT_EQ(lie_bracket(x, y), Rational(-1) * lie_bracket(y, x));
    EXPECT_EQ(lie_bracket(a * x + y, z),
              a * lie_bracket(x, z) + lie_bracket(y, z));
    const auto jacobi = lie_bracket(x, lie_bracket(y, z)) +
                        lie_bracket(y, lie_bracket(z, x)) +
                        lie_bracket(z, lie_bracket(x, y));
    EXPECT_TRUE(jacobi.is_zero());
  }
}

TEST(Bracket, ChartMismatchThrows) {
  const auto x = zero_field(line_chart(2, 1));
  const auto y = zero_field(jet_chart(2, 1));
  EXPECT_THROW(lie_bracket(x, y), std::invalid_argument);
}

TEST(Frame, CountsAndExplicitInstance) {
  EXPECT_EQ(polar_frame(2, 1).size(), 2u);
  EXPECT_THROW(polar_frame(1, 1), std::invalid_argument);

  // n=3, m=1: the four fields, in order, with their exact coefficients.
  const Chart lc = line_chart(3, 1);
  const auto frame = polar_frame(3, 1);
  ASSERT_EQ(frame.size(), 4u);
  auto field = [&](const std::string& unit, const Poly& f11_coef) {
    auto f = zero_field(lc);
    f.coeffs[lc.index_of(unit)] = Poly::constant(lc.size(), 1);
    f.coeffs[lc.index_of("f1_1")] = f11_coef;
    return f;
  };
  EXPECT_EQ(frame[0], field("b2", var(lc, "f1_2")));
  EXPECT_EQ(frame[1], field("b3", var(lc, "f1_3")));
  EXPECT_EQ(frame[2], field("f1_2", Rational(-1) * var(lc, "b2")));
  EXPECT_EQ(frame[3], field("f1_3", Rational(-1) * var(lc, "b3")));

  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 2; ++m) {
      const auto fr = polar_frame(n, m);
      EXPECT_EQ(static_cast<long>(fr.size()),
                static_cast<long>(n - 1) * (m + 1));
      EXPECT_EQ(static_cast<long>(fr.size()),
                dim_polar_formula(Context(n, m, 2), 1));
    }
}

TEST(Frame, BracketRelationsArePolynomialIdentities) {
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 2; ++m) {
      const Chart lc = line_chart(n, m);
      const auto frame = polar_frame(n, m);
      auto base = [&](int a) { return frame[a - 2]; };
      auto vert = [&](int a, int j) {
        return frame[(n - 1) + (j - 1) * (n - 1) + (a - 2)];
      };
      for (int a = 2; a <= n; ++a)
        for (int b = 2; b <= n; ++b) {
          EXPECT_TRUE(lie_bracket(base(a), base(b)).is_zero());
          for (int j = 1; j <= m; ++j) {
            auto expected = zero_field(lc);
            if (a == b)
              expected.coeffs[line_chart_f_index(n, j, 1)] =
                  Poly::constant(lc.size(), -2);
            EXPECT_EQ(lie_bracket(base(a), vert(b, j)), expected)
                << "n=" << n << " m=" << m << " a=" << a << " b=" << b
                << " j=" << j;
            for (int l = 1; l <= m; ++l)
              EXPECT_TRUE(lie_bracket(vert(a, j), vert(b, l)).is_zero());
          }
        }
    }
}

TEST(ChangeOfCoords, PushforwardStraightensTheFrame) {
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 2; ++m) {
      const ChartMap map = straightening_map(n, m);
      const Chart jc = map.target;
      const auto frame = polar_frame(n, m);
      auto base = [&](int a) { return frame[a - 2]; };
      auto vert = [&](int a, int j) {
        return frame[(n - 1) + (j - 1) * (n - 1) + (a - 2)];
      };
      for (int a = 2; a <= n; ++a) {
        // Base fields become d_y^a plus the tautological vertical drift.
        auto expected = coordinate_field(jc, jet_chart_y_index(n, m, a));
        for (int j = 1; j <= m; ++j)
          expected.coeffs[jet_chart_v_index(n, m, j)] =
              Poly::variable(jc.size(), jet_chart_slope_index(n, m, j, a));
        EXPECT_EQ(pushforward(base(a), map), expected);

        for (int j = 1; j <= m; ++j) {
          EXPECT_EQ(pushforward(vert(a, j), map),
                    coordinate_field(jc, jet_chart_slope_index(n, m, j, a)));
          for (int b = 2; b <= n; ++b) {
            auto bracket_img =
                pushforward(lie_bracket(base(b), vert(a, j)), map);
            auto expected_bracket = zero_field(jc);
            if (a == b)
              expected_bracket.coeffs[jet_chart_v_index(n, m, j)] =
                  Poly::constant(jc.size(), -1);
            EXPECT_EQ(bracket_img, expected_bracket);
          }
        }
      }
    }
}

TEST(ChangeOfCoords, RejectsNonInvertibleSubstitution) {
  const Chart s({"x"});
  const Chart t({"t"});
  const Poly x = Poly::variable(1, 0);
  EXPECT_NO_THROW(make_chart_map(s, t, {x}, {x}));
  EXPECT_THROW(make_chart_map(s, t, {x * x}, {x}), std::invalid_argument);
  EXPECT_THROW(make_chart_map(s, t, {x, x}, {x}), std::invalid_argument);

  const auto field = zero_field(jet_chart(2, 1));
  EXPECT_THROW(pushforward(field, straightening_map(2, 1)),
               std::invalid_argument);
}

TEST(KernelCheck, OriginPointIsCoveredAndPasses) {
  const auto rep = kernel_condition_check(3, 1, 7, 1);
  EXPECT_EQ(rep.frame_size, 4);
  EXPECT_EQ(rep.polar_dim_expected, 4);
  ASSERT_EQ(rep.samples.size(), 1u);
  EXPECT_EQ(rep.samples[0].polar_dim, 4);
  EXPECT_TRUE(rep.samples[0].frame_spans_polar);
  EXPECT_TRUE(rep.samples[0].membership_matches);
  EXPECT_TRUE(rep.all_ok);

  // At the origin the frame fields degenerate to pure coordinate directions.
  const Chart lc = line_chart(3, 1);
  const std::vector<Rational> origin(lc.size(), Rational(0));
  const auto frame = polar_frame(3, 1);
  for (size_t i = 0; i < frame.size(); ++i) {
    int nonzero = 0;
    for (int v = 0; v < lc.size(); ++v) {
      const Rational c = frame[i].coeffs[v].evaluate(origin);
      if (c != 0) {
        ++nonzero;
        EXPECT_EQ(c, Rational(1));
        EXPECT_NE(lc.names[v], "f1_1");
      }
    }
    EXPECT_EQ(nonzero, 1);
  }
}

TEST(KernelCheck, SeededPointsAcrossSmallGrid) {
  for (int n = 2; n <= 3; ++n)
    for (int m = 1; m <= 2; ++m) {
      const auto rep = kernel_condition_check(n, m, 97 + n * 10 + m, 6);
      EXPECT_EQ(rep.frame_size, static_cast<long>(n - 1) * (m + 1));
      EXPECT_EQ(rep.polar_dim_expected, rep.frame_size);
      EXPECT_TRUE(rep.all_ok) << "n=" << n << " m=" << m;
      for (const auto& s : rep.samples) {
        EXPECT_TRUE(s.frame_spans_polar) << "n=" << n << " m=" << m
                                         << " sample " << s.index;
        EXPECT_TRUE(s.membership_matches) << "n=" << n << " m=" << m
                                          << " sample " << s.index;
      }
    }
}

TEST(KernelCheck, DeterministicAndValidating) {
  const auto a = kernel_condition_check(3, 2, 42, 4);
  const auto b = kernel_condition_check(3, 2, 42, 4);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].polar_dim, b.samples[i].polar_dim);
    EXPECT_EQ(a.samples[i].frame_spans_polar, b.samples[i].frame_spans_polar);
    EXPECT_EQ(a.samples[i].membership_matches,
              b.samples[i].membership_matches);
  }
  EXPECT_THROW(kernel_condition_check(1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(kernel_condition_check(2, 1, 1, 0), std::invalid_argument);
}

}  // namespace
}  // namespace jetplane
