#include "jetplane/grassmann.hpp"

#include <gtest/gtest.h>

namespace jetplane {
namespace {

SymPoly random_generator(Xoshiro256& g, const Context& ctx) {
  SymPoly p(ctx.n, ctx.m, ctx.k);
  for (auto& x : p.coeffs()) x = g.rational(6, 3);
  return p;
}

Subspace coordinate_subspace(int n, int s) {
  RatMatrix b(n, s);
  for (int i = 0; i < s; ++i) b(i, i) = 1;
  return Subspace::span(b);
}

CartanSubspace from_vectors(const Context& ctx,
                            const std::vector<CartanVector>& vs) {
  RatMatrix cols(static_cast<int>(cartan_dim(ctx)), static_cast<int>(vs.size()));
  for (size_t t = 0; t < vs.size(); ++t) cols.set_col(static_cast<int>(t), to_coords(vs[t]));
  return CartanSubspace(ctx, Subspace::span(cols));
}

TEST(Shadow, GraphVerticalAndSlantedLines) {
  Context ctx(2, 1, 2);
  SymPoly zero(2, 1, 2);
  EXPECT_EQ(shadow(graph_of(ctx, zero)), coordinate_subspace(2, 2));

  CartanVector vert(ctx);
  vert.p.coef(MultiIndex{1, 0}, 0) = 1;  // (0, xi^1)
  CartanSubspace v = from_vectors(ctx, {vert});
  EXPECT_EQ(shadow(v).dim(), 0);
  EXPECT_FALSE(is_horizontal(v));

  CartanVector slant(ctx);
  slant.l[0] = 1;
  slant.p.coef(MultiIndex{1, 0}, 0) = 1;  // (e1, xi^1)
  CartanSubspace s = from_vectors(ctx, {slant});
  EXPECT_EQ(shadow(s), coordinate_subspace(2, 1));
  EXPECT_TRUE(is_horizontal(s));
}

TEST(Horizontal, MixedPairFails) {
  Context ctx(2, 1, 2);
  CartanVector a(ctx);
  a.l[0] = 1;
  a.p.coef(MultiIndex{1, 0}, 0) = 1;
  CartanVector b(ctx);
  b.p.coef(MultiIndex{0, 1}, 0) = 1;
  EXPECT_FALSE(is_horizontal(from_vectors(ctx, {a, b})));
}

TEST(Isotropic, LinesAlwaysAndCounterexample) {
  Context ctx(2, 1, 2);
  Xoshiro256 g(31);
  CartanVector any(ctx);
  for (auto& x : any.l) x = g.rational(5, 2);
  for (auto& x : any.p.coeffs()) x = g.rational(5, 2);
  EXPECT_TRUE(is_isotropic(from_vectors(ctx, {any})));

  // span{(e1,0), (e2, xi^1)} pairs to a nonzero value.
  CartanVector e1(ctx);
  e1.l[0] = 1;
  CartanVector bad(ctx);
  bad.l[1] = 1;
  bad.p.coef(MultiIndex{1, 0}, 0) = 1;
  CartanSubspace cs = from_vectors(ctx, {e1, bad});
  EXPECT_FALSE(is_isotropic(cs));
  EXPECT_TRUE(is_horizontal(cs));
  EXPECT_FALSE(is_integral_element(cs));
}

TEST(GraphOf, SpecifiedColumns) {
  // k=2, n=2, m=1, p = (xi^1)^2: graph columns (e1, xi^1), (e2, 0).
  Context ctx(2, 1, 2);
  SymPoly p(2, 1, 2);
  p.coef(MultiIndex{2, 0}, 0) = 1;
  CartanSubspace gr = graph_of(ctx, p);
  CartanVector c1(ctx), c2(ctx);
  c1.l[0] = 1;
  c1.p.coef(MultiIndex{1, 0}, 0) = 1;
  c2.l[1] = 1;
  EXPECT_EQ(gr, from_vectors(ctx, {c1, c2}));
  EXPECT_TRUE(is_integral_element(gr));
}

TEST(GraphOf, SeededGraphsAreIntegral) {
  Xoshiro256 g(32);
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 2; ++m)
      for (int k = 1; k <= 4; ++k) {
        Context ctx(n, m, k);
        for (int t = 0; t < 3; ++t) {
          CartanSubspace gr = graph_of(ctx, random_generator(g, ctx));
          EXPECT_EQ(gr.dim(), n);
          EXPECT_TRUE(is_horizontal(gr));
          EXPECT_TRUE(is_isotropic(gr));  // recomputed, not cached
        }
      }
}

TEST(Lift, ZeroGeneratorFixesBaseAndAnnihilatorActsTrivially) {
  Context ctx(3, 1, 2);
  Subspace sigma0 = coordinate_subspace(3, 2);
  SymPoly zero(3, 1, 2);
  CartanSubspace flat = lift(ctx, sigma0, zero);
  EXPECT_EQ(shadow(flat), sigma0);
  // (xi^3)^2 polarizes to zero on span{e1,e2}: lift unchanged.
  SymPoly q(3, 1, 2);
  q.coef(MultiIndex{0, 0, 2}, 0) = 1;
  EXPECT_EQ(lift(ctx, sigma0, q), flat);
}

TEST(Lift, CachedHorizontalFlagAgreesWithRecomputation) {
  Xoshiro256 g(33);
  Context ctx(3, 2, 3);
  Subspace sigma0 = Subspace::span(g.full_rank_matrix(3, 2));
  CartanSubspace cs = lift(ctx, sigma0, random_generator(g, ctx));
  ASSERT_TRUE(cs.cached_horizontal().has_value());
  EXPECT_TRUE(*cs.cached_horizontal());
  EXPECT_EQ(shadow(cs).dim(), cs.dim());  // recomputation agrees
  EXPECT_EQ(shadow(cs), sigma0);
}

TEST(GraphHom, RecoversLiftImages) {
  Xoshiro256 g(34);
  Context ctx(3, 1, 3);
  Subspace sigma0 = Subspace::span(g.full_rank_matrix(3, 2));
  SymPoly p = random_generator(g, ctx);
  CartanSubspace cs = lift(ctx, sigma0, p);
  HomLS h = graph_hom(cs);
  EXPECT_EQ(h.domain, sigma0.basis());
  for (int t = 0; t < 2; ++t)
    EXPECT_EQ(h.images[t], polarize_at(p, sigma0.basis().col(t)));
}

TEST(FiberRepresentative, RoundtripOnSeededLifts) {
  Xoshiro256 g(35);
  for (int n = 2; n <= 3; ++n)
    for (int m = 1; m <= 2; ++m)
      for (int k = 2; k <= 3; ++k)
        for (int s = 1; s <= n; ++s) {
          Context ctx(n, m, k);
          Subspace sigma0 = Subspace::span(g.full_rank_matrix(n, s));
          SymPoly p = random_generator(g, ctx);
          CartanSubspace cs = lift(ctx, sigma0, p);
          SymPoly q = fiber_representative(cs);
          EXPECT_EQ(lift(ctx, sigma0, q), cs);
        }
}

TEST(FiberRepresentative, FlatLiftGetsZeroSolution) {
  Context ctx(3, 1, 2);
  CartanSubspace flat = lift(ctx, coordinate_subspace(3, 2), SymPoly(3, 1, 2));
  EXPECT_TRUE(fiber_representative(flat).is_zero());
}

TEST(FiberRepresentative, RejectsNonIntegralInput) {
  Context ctx(2, 1, 2);
  CartanVector e1(ctx);
  e1.l[0] = 1;
  CartanVector bad(ctx);
  bad.l[1] = 1;
  bad.p.coef(MultiIndex{1, 0}, 0) = 1;
  EXPECT_THROW(fiber_representative(from_vectors(ctx, {e1, bad})),
               std::invalid_argument);
}

TEST(Act, IdentityCompositionAndStabilizer) {
  Xoshiro256 g(36);
  Context ctx(3, 1, 2);
  Subspace sigma0 = Subspace::span(g.full_rank_matrix(3, 2));
  CartanSubspace cs = lift(ctx, sigma0, random_generator(g, ctx));
  SymPoly zero(3, 1, 2);
  EXPECT_EQ(act(cs, zero), cs);

  SymPoly q1 = random_generator(g, ctx);
  SymPoly q2 = random_generator(g, ctx);
  EXPECT_EQ(act(act(cs, q1), q2), act(cs, q1 + q2));

  // Annihilator powers stabilize; a generator moving the lift does not.
  for (const auto& q : annihilator_power_basis(ctx, shadow(cs)))
    EXPECT_EQ(act(cs, q), cs);
}

TEST(Act, MovesLiftOutsideStabilizer) {
  Context ctx(2, 1, 2);
  Subspace sigma0 = coordinate_subspace(2, 1);
  CartanSubspace cs = lift(ctx, sigma0, SymPoly(2, 1, 2));
  SymPoly q(2, 1, 2);
  q.coef(MultiIndex{2, 0}, 0) = 1;  // polarization nonzero on e1
  EXPECT_FALSE(act(cs, q) == cs);
}

TEST(Flags, LiftInsideGraphIsValid) {
  Xoshiro256 g(37);
  Context ctx(3, 1, 2);
  SymPoly p = random_generator(g, ctx);
  IsotropicFlag f{{lift(ctx, coordinate_subspace(3, 1), p),
                   lift(ctx, coordinate_subspace(3, 2), p),
                   graph_of(ctx, p)}};
  EXPECT_TRUE(is_valid_flag(f));
  IsotropicFlag broken{{graph_of(ctx, p), lift(ctx, coordinate_subspace(3, 1), p)}};
  EXPECT_FALSE(is_valid_flag(broken));
}

TEST(DimReport, ReferenceContextNumbers) {
  // n=3, k=2, m=1: dim I_3 = 6, dim I_2 = 7 with 5-dimensional fiber.
  Context ctx(3, 1, 2);
  DimReport r3 = dim_report(ctx, 3);
  EXPECT_EQ(r3.dim_is, 6);
  EXPECT_EQ(r3.fiber_dim, 6);
  EXPECT_TRUE(r3.consistent);
  DimReport r2 = dim_report(ctx, 2);
  EXPECT_EQ(r2.dim_is, 7);
  EXPECT_EQ(r2.fiber_dim, 5);
  EXPECT_EQ(r2.fiber_rank_oracle, 5);
  EXPECT_TRUE(r2.consistent);
  EXPECT_EQ(r2.dim_flag, 2 + 6);
  DimReport r0 = dim_report(ctx, 0);
  EXPECT_EQ(r0.dim_is, 0);
  EXPECT_TRUE(r0.consistent);
}

TEST(DimReport, FormulaMatchesRankOnSmallGrid) {
  for (int n = 2; n <= 3; ++n)
    for (int m = 1; m <= 2; ++m)
      for (int k = 2; k <= 3; ++k)
        for (int s = 1; s <= n; ++s)
          EXPECT_TRUE(dim_report(Context(n, m, k), s).consistent)
              << "n=" << n << " m=" << m << " k=" << k << " s=" << s;
}

TEST(CertifyKernel, AgreesWithExactKernelAndDetectsBadCandidates) {
  Xoshiro256 g(38);
  RatMatrix M = g.matrix(4, 7, 6, 3);
  RatMatrix K = kernel_basis(M);
  std::vector<std::vector<Rational>> cands;
  for (int j = 0; j < K.cols(); ++j) cands.push_back(K.col(j));
  RankCertificate cert = certify_kernel(M, cands);
  EXPECT_EQ(cert.rank, rank(M));
  EXPECT_TRUE(cert.kernel_equals_candidates);

  // A vector outside the kernel forces the exact fallback and a refusal.
  std::vector<Rational> bogus(7, Rational(1));
  if (!M.apply(bogus).empty() && !(M.apply(bogus) == std::vector<Rational>(4, Rational(0)))) {
    RankCertificate bad = certify_kernel(M, {bogus});
    EXPECT_FALSE(bad.kernel_equals_candidates);
    EXPECT_TRUE(bad.used_exact_fallback);
  }

  // Too few candidates: rank is still exact, equality refused.
  if (!cands.empty()) {
    RankCertificate part = certify_kernel(M, {cands[0]});
    EXPECT_EQ(part.rank, rank(M));
    EXPECT_FALSE(part.kernel_equals_candidates);
  }
}

TEST(VerifyTheorem1, ReferenceContextCertificates) {
  Context ctx(3, 1, 2);
  Theorem1Report rep = verify_theorem1(ctx, 2, 99, 5, 2);
  EXPECT_TRUE(rep.all_ok);
  EXPECT_EQ(rep.fiber_dim, 5);
  for (const auto& smp : rep.samples) {
    EXPECT_TRUE(smp.stabilizer_ok);
    EXPECT_TRUE(smp.rank_ok);
    EXPECT_TRUE(smp.transitivity_ok);
    EXPECT_EQ(smp.stabilizer_dim, 1);
    EXPECT_EQ(smp.fiber_rank, 5);
  }
}

TEST(VerifyTheorem1, FullDimensionalBaseHasTrivialStabilizer) {
  Context ctx(2, 2, 3);
  Theorem1Report rep = verify_theorem1(ctx, 2, 100, 3, 1);
  EXPECT_TRUE(rep.all_ok);
  for (const auto& smp : rep.samples) EXPECT_EQ(smp.stabilizer_dim, 0);
}

TEST(VerifyTheorem1, DeterministicForFixedSeed) {
  Context ctx(3, 2, 2);
  Theorem1Report a = verify_theorem1(ctx, 2, 4242, 4, 1);
  Theorem1Report b = verify_theorem1(ctx, 2, 4242, 4, 1);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].stabilizer_dim, b.samples[i].stabilizer_dim);
    EXPECT_EQ(a.samples[i].fiber_rank, b.samples[i].fiber_rank);
  }
}

}  // namespace
}  // namespace jetplane
