#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetplane/grassmann.hpp"

namespace jetplane {

// --- Canonical complements --------------------------------------------------

// Rows carrying the leading 1 of each canonical basis column.
inline std::vector<int> pivot_rows(const Subspace& s) {
  std::vector<int> rows;
  const RatMatrix& b = s.basis();
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < b.rows(); ++i)
      if (b(i, j) != 0) {
        rows.push_back(i);
        break;
      }
  return rows;
}

// Rows without a pivot; the frame vectors there span a complement, and
// canonical coset representatives are supported exactly on these rows.
inline std::vector<int> complement_rows(const Subspace& s) {
  std::vector<bool> is_pivot(s.ambient(), false);
  for (int r : pivot_rows(s)) is_pivot[r] = true;
  std::vector<int> rows;
  for (int i = 0; i < s.ambient(); ++i)
    if (!is_pivot[i]) rows.push_back(i);
  return rows;
}

// Canonical representative of v mod the subspace: its pivot-row coordinates
// are eliminated against the echelon basis. Linear in v and idempotent.
inline std::vector<Rational> reduce_against(const Subspace& s,
                                            std::vector<Rational> v) {
  if (static_cast<int>(v.size()) != s.ambient())
    throw std::invalid_argument("reduce_against: ambient mismatch");
  const RatMatrix& b = s.basis();
  const std::vector<int> pivots = pivot_rows(s);
  for (int j = 0; j < b.cols(); ++j) {
    const Rational c = v[pivots[j]];
    if (c == 0) continue;
    for (int i = 0; i < b.rows(); ++i)
      if (b(i, j) != 0) v[i] -= c * b(i, j);
  }
  return v;
}

namespace detail {

inline RatMatrix inverse_of(const RatMatrix& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("inverse_of: square only");
  const int n = t.rows();
  RrefResult r = rref(t.hstack(RatMatrix::identity(n)));
  if (r.rank() != n) throw std::invalid_argument("inverse_of: singular matrix");
  RatMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r.mat(i, n + j);
  return inv;
}

}  // namespace detail

// --- Tangent vectors to the isotropic locus ---------------------------------

// Linear map base -> C/base: the image of each canonical basis vector of the
// base, stored as its canonical coset representative in C.
struct TangentHom {
  CartanSubspace base;
  std::vector<std::vector<Rational>> images;

  bool operator==(const TangentHom& o) const {
    return base == o.base && images == o.images;
  }
};

// Flat coordinates on Hom(base, C/base): for each basis index t, the entries
// of images[t] at the complement rows of the base, in row order.
inline std::vector<Rational> hom_coords(const TangentHom& h) {
  const std::vector<int> comp = complement_rows(h.base.space());
  std::vector<Rational> out;
  out.reserve(h.images.size() * comp.size());
  for (const auto& img : h.images)
    for (int r : comp) out.push_back(img[r]);
  return out;
}

inline TangentHom hom_from_coords(const CartanSubspace& base,
                                  const std::vector<Rational>& coords) {
  const std::vector<int> comp = complement_rows(base.space());
  if (coords.size() != static_cast<size_t>(base.dim()) * comp.size())
    throw std::invalid_argument("hom_from_coords: wrong coordinate count");
  TangentHom h{base, {}};
  const long dim = cartan_dim(base.context());
  for (int t = 0; t < base.dim(); ++t) {
    std::vector<Rational> img(dim, Rational(0));
    for (size_t w = 0; w < comp.size(); ++w)
      img[comp[w]] = coords[t * comp.size() + w];
    h.images.push_back(std::move(img));
  }
  return h;
}

namespace detail {

// Pairing values omega(sigma_a, e_w) for every basis vector sigma_a of the
// base and every complement frame vector e_w, flattened to coefficient rows.
// Every linear condition below is assembled from this table.
struct PairingTable {
  std::vector<int> comp;
  // raw[a][w]: coefficients of omega(sigma_a, frame at comp[w])
  std::vector<std::vector<std::vector<Rational>>> raw;
  // restricted[a][w]: same value pulled back to shadow coordinates
  std::vector<std::vector<std::vector<Rational>>> restricted;
};

inline PairingTable pairing_table(const CartanSubspace& cs) {
  const Context& ctx = cs.context();
  PairingTable tab;
  tab.comp = complement_rows(cs.space());
  const RatMatrix sh = shadow(cs).basis();
  const long dim = cartan_dim(ctx);
  tab.raw.resize(cs.dim());
  tab.restricted.resize(cs.dim());
  for (int a = 0; a < cs.dim(); ++a) {
    CartanVector sa = cs.basis_vector(a);
    for (int w : tab.comp) {
      std::vector<Rational> e(dim, Rational(0));
      e[w] = 1;
      SymPoly om = omega(sa, from_coords(ctx, e));
      tab.raw[a].push_back(om.coeffs());
      tab.restricted[a].push_back(restrict_to(om, sh).coeffs());
    }
  }
  return tab;
}

}  // namespace detail

// Linear conditions on Hom(base, C/base) cutting out the tangent directions
// along which the base stays isotropic to first order:
//   omega(sigma_a, h(sigma_b)) = omega(sigma_b, h(sigma_a))  for all a < b.
// (omega(sigma, .) descends to C/base because the base is isotropic.)
inline RatMatrix tangency_matrix(const CartanSubspace& cs) {
  const detail::PairingTable tab = detail::pairing_table(cs);
  const int s = cs.dim();
  const int nw = static_cast<int>(tab.comp.size());
  const int vlen = s ? static_cast<int>(tab.raw[0].empty() ? 0 : tab.raw[0][0].size()) : 0;
  RatMatrix M(s * (s - 1) / 2 * vlen, s * nw);
  int pr = 0;
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b, ++pr)
      for (int w = 0; w < nw; ++w)
        for (int c = 0; c < vlen; ++c) {
          // condition row block pr: omega(sigma_a, h sigma_b) - omega(sigma_b, h sigma_a)
          M(pr * vlen + c, b * nw + w) += tab.raw[a][w][c];
          M(pr * vlen + c, a * nw + w) -= tab.raw[b][w][c];
        }
  return M;
}

// Linear conditions whose vanishing (together with tangency) cuts out the
// kernel of the sharp pairing: the shadow-restricted values
// omega(sigma_a, h(sigma_b)) for a <= b. For tangent h the a > b values then
// vanish too, by the symmetry the tangency conditions enforce.
inline RatMatrix sharp_entry_matrix(const CartanSubspace& cs) {
  const detail::PairingTable tab = detail::pairing_table(cs);
  const int s = cs.dim();
  const int nw = static_cast<int>(tab.comp.size());
  const int rlen = s ? static_cast<int>(tab.restricted[0].empty() ? 0 : tab.restricted[0][0].size()) : 0;
  RatMatrix M(s * (s + 1) / 2 * rlen, s * nw);
  int pr = 0;
  for (int a = 0; a < s; ++a)
    for (int b = a; b < s; ++b, ++pr)
      for (int w = 0; w < nw; ++w)
        for (int c = 0; c < rlen; ++c)
          M(pr * rlen + c, b * nw + w) += tab.restricted[a][w][c];
  return M;
}

// Basis of the tangent space at an integral element: all h in Hom(base,
// C/base) satisfying the first-order isotropy conditions. Its size equals
// dim_is_formula; dim_report cross-checks that by rank.
inline std::vector<TangentHom> tangent_space_Is(const CartanSubspace& cs) {
  if (!is_integral_element(cs))
    throw std::invalid_argument("tangent_space_Is requires an integral element");
  RatMatrix K = kernel_basis(tangency_matrix(cs));
  std::vector<TangentHom> out;
  out.reserve(K.cols());
  for (int j = 0; j < K.cols(); ++j)
    out.push_back(hom_from_coords(cs, K.col(j)));
  return out;
}

// The value of the sharp pairing at a tangent hom: a matrix of pairings
// omega(sigma_a, h(sigma_b)), each pulled back to the shadow coordinates.
// Symmetric in (a, b) exactly when h is tangent.
struct SharpValue {
  int s = 0;
  std::vector<SymPoly> entries;  // s*s, row-major; SymPoly in shadow coords

  const SymPoly& at(int a, int b) const { return entries[a * s + b]; }

  bool is_zero() const {
    for (const auto& e : entries)
      if (!e.is_zero()) return false;
    return true;
  }

  bool symmetric() const {
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b)
        if (!(at(a, b) == at(b, a))) return false;
    return true;
  }

  // Whether the data assembles into a totally symmetric degree-k form on the
  // shadow: pair symmetry plus the derivative-exchange law
  //   d/dt_c entries(a,b) == d/dt_b entries(a,c).
  // Transpositions of (a,b) and of (b, one polynomial slot) generate all
  // permutations of the k slots, so these two finite checks decide it.
  bool fully_symmetric() const {
    if (!symmetric()) return false;
    if (entries.empty() || entries[0].degree() == 0) return true;
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        for (int c = b + 1; c < s; ++c)
          if (!(partial(at(a, b), c) == partial(at(a, c), b))) return false;
    return true;
  }
};

// First basis pair on which the tangency symmetry fails, if any.
inline std::optional<std::pair<int, int>> tangency_violation(const TangentHom& h) {
  const Context& ctx = h.base.context();
  for (int a = 0; a < h.base.dim(); ++a) {
    CartanVector sa = h.base.basis_vector(a);
    for (int b = a + 1; b < h.base.dim(); ++b) {
      CartanVector sb = h.base.basis_vector(b);
      SymPoly lhs = omega(sa, from_coords(ctx, h.images[b]));
      SymPoly rhs = omega(sb, from_coords(ctx, h.images[a]));
      if (!(lhs == rhs)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

inline SharpValue sharp(const TangentHom& h) {
  if (auto bad = tangency_violation(h))
    throw std::invalid_argument(
        "sharp: hom is not tangent; symmetry fails at basis pair (" +
        std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
  const Context& ctx = h.base.context();
  const RatMatrix sh = shadow(h.base).basis();
  SharpValue v;
  v.s = h.base.dim();
  for (int a = 0; a < v.s; ++a) {
    CartanVector sa = h.base.basis_vector(a);
    for (int b = 0; b < v.s; ++b)
      v.entries.push_back(restrict_to(omega(sa, from_coords(ctx, h.images[b])), sh));
  }
  return v;
}

// Basis of the kernel of sharp inside the tangent space.
inline std::vector<TangentHom> polar_plane(const CartanSubspace& cs) {
  if (!is_integral_element(cs))
    throw std::invalid_argument("polar_plane requires an integral element");
  RatMatrix K = kernel_basis(tangency_matrix(cs).vstack(sharp_entry_matrix(cs)));
  std::vector<TangentHom> out;
  out.reserve(K.cols());
  for (int j = 0; j < K.cols(); ++j)
    out.push_back(hom_from_coords(cs, K.col(j)));
  return out;
}

// Rank of sharp as a linear map on the tangent space. The tangent space is
// ker A and the polar plane is ker [A; B], so the rank is rk[A; B] - rk A.
inline int sharp_rank(const CartanSubspace& cs) {
  if (!is_integral_element(cs))
    throw std::invalid_argument("sharp_rank requires an integral element");
  RatMatrix A = tangency_matrix(cs);
  return rank(A.vstack(sharp_entry_matrix(cs))) - rank(A);
}

// Preimage in C of the image of h: the base plus the swept first-order
// directions.
inline Subspace osculator(const TangentHom& h) {
  if (h.images.empty()) return h.base.space();
  RatMatrix img(static_cast<int>(h.images[0].size()),
                static_cast<int>(h.images.size()));
  for (size_t j = 0; j < h.images.size(); ++j)
    img.set_col(static_cast<int>(j), h.images[j]);
  return sum(h.base.space(), Subspace::span(img));
}

// Closed dimension count for the kernel of sharp over an s-dimensional base.
// Meaningful for k >= 2; at k = 1 the pairing vanishes identically and the
// kernel is the whole tangent space instead.
inline long dim_polar_formula(const Context& ctx, int s) {
  if (s < 0 || s > ctx.n)
    throw std::invalid_argument("dim_polar_formula: 0 <= s <= n");
  return static_cast<long>(s) * (ctx.n - s) +
         (binomial_l(ctx.n + ctx.k - 1, ctx.k) -
          binomial_l(ctx.n - s + ctx.k - 1, ctx.k) -
          binomial_l(s + ctx.k - 1, ctx.k)) *
             ctx.m;
}

inline long sharp_rank_formula(const Context& ctx, int s) {
  return binomial_l(s + ctx.k - 1, ctx.k) * ctx.m;
}

// --- Structural tangent directions ------------------------------------------

// Tangent direction dragging the t-th shadow basis vector toward the frame
// direction at row w of L, along the lift of the generator p. Zero pairing
// with every basis vector: the two second polarizations cancel.
inline TangentHom shadow_move(const CartanSubspace& cs, const SymPoly& p,
                              int t, int w) {
  const Context& ctx = cs.context();
  TangentHom h{cs, {}};
  const long dim = cartan_dim(ctx);
  for (int a = 0; a < cs.dim(); ++a) {
    if (a != t) {
      h.images.emplace_back(dim, Rational(0));
      continue;
    }
    CartanVector v(ctx);
    v.l[w] = 1;
    v.p = polarize_at(p, v.l);
    h.images.push_back(reduce_against(cs.space(), to_coords(v)));
  }
  return h;
}

// All shadow moves, ordered by basis index then complement row of the shadow.
inline std::vector<TangentHom> shadow_move_basis(const CartanSubspace& cs,
                                                 const SymPoly& p) {
  std::vector<TangentHom> out;
  const std::vector<int> comp = complement_rows(shadow(cs));
  for (int t = 0; t < cs.dim(); ++t)
    for (int w : comp) out.push_back(shadow_move(cs, p, t, w));
  return out;
}

// Tangent direction moving the generator of the lift by q: vertical images
// polarize_at(q, sigma_t). Its sharp value is the shadow restriction of the
// second polarization of q.
inline TangentHom generator_move(const CartanSubspace& cs, const SymPoly& q) {
  const Context& ctx = cs.context();
  if (q.nvars() != ctx.n || q.values() != ctx.m || q.degree() != ctx.k)
    throw std::invalid_argument("generator_move: generator must be degree-k on L");
  const RatMatrix sh = shadow(cs).basis();
  TangentHom h{cs, {}};
  for (int t = 0; t < cs.dim(); ++t) {
    CartanVector v(ctx);
    v.p = polarize_at(q, sh.col(t));
    h.images.push_back(reduce_against(cs.space(), to_coords(v)));
  }
  return h;
}

// Degree-k monomial generators in a dual basis adapted to the shadow: the
// first s covectors are dual to the shadow basis, the rest annihilate it.
// Keeps the monomials whose shadow-degree is at least min_shadow and whose
// annihilator-degree is at least min_ann:
//   (1, 0): representatives of a complement of the action stabilizer
//           (the range of generator_move on the tangent space);
//   (1, 1): those whose restriction to the shadow vanishes, i.e. generator
//           moves lying in the kernel of sharp.
inline std::vector<SymPoly> adapted_monomial_generators(const Context& ctx,
                                                        const Subspace& shadow_space,
                                                        int min_shadow,
                                                        int min_ann) {
  if (shadow_space.ambient() != ctx.n)
    throw std::invalid_argument("adapted_monomial_generators: ambient mismatch");
  const int s = shadow_space.dim();
  RatMatrix t(ctx.n, ctx.n);
  for (int j = 0; j < s; ++j) t.set_col(j, shadow_space.basis().col(j));
  const std::vector<int> comp = complement_rows(shadow_space);
  for (size_t j = 0; j < comp.size(); ++j) t(comp[j], s + static_cast<int>(j)) = 1;
  RatMatrix dual = detail::inverse_of(t);  // row i = covector lambda_i
  std::vector<SymPoly> out;
  for (const MultiIndex& alpha : monomials(ctx.n, ctx.k)) {
    int shadow_deg = 0;
    for (int i = 0; i < s; ++i) shadow_deg += alpha[i];
    if (shadow_deg < min_shadow || ctx.k - shadow_deg < min_ann) continue;
    SymPoly prod(ctx.n, 1, 0);
    prod.coef(0, 0) = 1;
    for (int i = 0; i < ctx.n; ++i) {
      if (alpha[i] == 0) continue;
      SymPoly lin(ctx.n, 1, 1);
      for (int r = 0; r < ctx.n; ++r) lin.coef(r, 0) = dual(i, r);
      for (int e = 0; e < alpha[i]; ++e) prod = multiply(lin, prod);
    }
    for (int j = 0; j < ctx.m; ++j) {
      SymPoly q(ctx.n, ctx.m, ctx.k);
      for (int idx = 0; idx < prod.monomial_terms(); ++idx)
        q.coef(idx, j) = prod.coef(idx, 0);
      out.push_back(std::move(q));
    }
  }
  return out;
}

// --- Seeded verification with rank certificates ------------------------------

struct PolarSample {
  int index = 0;
  bool tangent_ok = false;     // certified ker(tangency) == structural moves
  bool polar_ok = false;       // certified ker(tangency + sharp) == polar moves
  bool sharp_rank_ok = false;  // rank difference == C(s+k-1,k)*m
  bool used_exact_fallback = false;
  int tangent_dim = -1;
  int polar_dim = -1;
  int sharp_rank = -1;
};

struct PolarReport {
  Context ctx;
  int s = 0;
  uint64_t seed = 0;
  long tangent_dim_expected = 0;
  long polar_dim_expected = 0;
  long sharp_rank_expected = 0;
  std::vector<PolarSample> samples;
  bool all_ok = false;
};

// Seeded sweep: on random lifts, certifies that the structural tangent
// directions span the tangent space, that the shadow moves plus the mixed
// generator moves span the kernel of sharp, and that the rank of sharp
// matches its closed form. Certificates as in certify_kernel: candidate
// membership is verified exactly, ranks are pinned by the two-sided bound,
// and any gap falls back to exact elimination.
inline PolarReport verify_polar(const Context& ctx, int s, uint64_t seed,
                                int num_samples) {
  if (ctx.k < 2)
    throw std::invalid_argument("verify_polar: needs k >= 2 (zero pairing at k = 1)");
  if (s < 1 || s > ctx.n)
    throw std::invalid_argument("verify_polar: 1 <= s <= n");
  PolarReport rep{ctx, s, seed, dim_is_formula(ctx, s),
                  dim_polar_formula(ctx, s), sharp_rank_formula(ctx, s)};
  Xoshiro256 g(seed);
  bool all = true;
  for (int t = 0; t < num_samples; ++t) {
    PolarSample smp;
    smp.index = t;
    Subspace sigma0 = Subspace::span(g.full_rank_matrix(ctx.n, s, 6, 3));
    SymPoly p(ctx.n, ctx.m, ctx.k);
    for (auto& x : p.coeffs()) x = g.rational(6, 3);
    CartanSubspace cs = lift(ctx, sigma0, p);

    RatMatrix A = tangency_matrix(cs);
    RatMatrix AB = A.vstack(sharp_entry_matrix(cs));
    const int cols = A.cols();

    std::vector<TangentHom> moves = shadow_move_basis(cs, p);
    std::vector<std::vector<Rational>> tangent_cands;
    for (const auto& mv : moves) tangent_cands.push_back(hom_coords(mv));
    std::vector<std::vector<Rational>> polar_cands = tangent_cands;
    for (const auto& q : adapted_monomial_generators(ctx, shadow(cs), 1, 0))
      tangent_cands.push_back(hom_coords(generator_move(cs, q)));
    for (const auto& q : adapted_monomial_generators(ctx, shadow(cs), 1, 1))
      polar_cands.push_back(hom_coords(generator_move(cs, q)));

    RankCertificate ca = certify_kernel(A, tangent_cands);
    RankCertificate cab = certify_kernel(AB, polar_cands);
    smp.used_exact_fallback = ca.used_exact_fallback || cab.used_exact_fallback;
    smp.tangent_dim = cols - ca.rank;
    smp.polar_dim = cols - cab.rank;
    smp.sharp_rank = cab.rank - ca.rank;
    smp.tangent_ok =
        ca.kernel_equals_candidates && smp.tangent_dim == rep.tangent_dim_expected;
    smp.polar_ok =
        cab.kernel_equals_candidates && smp.polar_dim == rep.polar_dim_expected;
    smp.sharp_rank_ok = (smp.sharp_rank == rep.sharp_rank_expected);

    all = all && smp.tangent_ok && smp.polar_ok && smp.sharp_rank_ok;
    rep.samples.push_back(smp);
  }
  rep.all_ok = all;
  return rep;
}

}  // namespace jetplane
