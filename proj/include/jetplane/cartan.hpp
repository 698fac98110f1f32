#pragma once

#include <vector>

#include "jetplane/symalg.hpp"

namespace jetplane {

// Vertical summand S^(k-1)L* tensor N of the Cartan plane.
inline long vertical_dim(const Context& ctx) {
  return monomial_count(ctx.n, ctx.k - 1) * ctx.m;
}

// dim C = n + dim(S^(k-1)L* tensor N).
inline long cartan_dim(const Context& ctx) { return ctx.n + vertical_dim(ctx); }

// Element of C = L + S^(k-1)L* tensor N at a fixed point.
struct CartanVector {
  Context ctx;
  std::vector<Rational> l;  // horizontal part, size n
  SymPoly p;                // vertical part, degree k-1

  explicit CartanVector(const Context& c)
      : ctx(c), l(c.n, Rational(0)), p(c.n, c.m, c.k - 1) {}
};

// Coordinates in the canonical frame: the n horizontal directions first,
// then the vertical monomial basis (monomial-major, value slot minor).
inline std::vector<Rational> to_coords(const CartanVector& v) {
  std::vector<Rational> out(v.l);
  out.insert(out.end(), v.p.coeffs().begin(), v.p.coeffs().end());
  return out;
}

inline CartanVector from_coords(const Context& ctx,
                                const std::vector<Rational>& coords) {
  if (static_cast<long>(coords.size()) != cartan_dim(ctx))
    throw std::invalid_argument("from_coords: wrong coordinate dimension");
  CartanVector v(ctx);
  for (int i = 0; i < ctx.n; ++i) v.l[i] = coords[i];
  for (size_t t = 0; t < v.p.coeffs().size(); ++t)
    v.p.coeffs()[t] = coords[ctx.n + t];
  return v;
}

// The canonical ordered basis of C as explicit vectors.
inline std::vector<CartanVector> coordinate_frame(const Context& ctx) {
  std::vector<CartanVector> frame;
  const long dim = cartan_dim(ctx);
  for (long f = 0; f < dim; ++f) {
    std::vector<Rational> e(dim, Rational(0));
    e[f] = 1;
    frame.push_back(from_coords(ctx, e));
  }
  return frame;
}

// The meta-symplectic pairing: Omega((l1,p1),(l2,p2)) =
// polarize(p2)(l1) - polarize(p1)(l2), with values in S^(k-2)L* tensor N.
// Both L and the vertical summand are isotropic by construction. For k = 1
// the form vanishes for degree reasons; the zero element of S^0 tensor N is
// returned so callers see a uniform value type.
inline SymPoly omega(const CartanVector& v, const CartanVector& w) {
  if (!(v.ctx == w.ctx)) throw std::invalid_argument("omega: context mismatch");
  if (v.ctx.k == 1) return SymPoly(v.ctx.n, v.ctx.m, 0);
  return polarize_at(w.p, v.l) - polarize_at(v.p, w.l);
}

// {v in C : omega(v, s) = 0 for all s in sigma}, computed as the kernel of
// the stacked value-component conditions over sigma's basis.
inline Subspace omega_orthogonal(const Context& ctx, const Subspace& sigma) {
  const long dim = cartan_dim(ctx);
  if (sigma.ambient() != dim)
    throw std::invalid_argument("omega_orthogonal: ambient mismatch");
  if (ctx.k == 1 || sigma.dim() == 0)
    return Subspace::span(RatMatrix::identity(static_cast<int>(dim)));
  const long val_dim = monomial_count(ctx.n, ctx.k - 2) * ctx.m;
  std::vector<CartanVector> frame = coordinate_frame(ctx);
  RatMatrix cond(static_cast<int>(sigma.dim() * val_dim), static_cast<int>(dim));
  for (int t = 0; t < sigma.dim(); ++t) {
    CartanVector st = from_coords(ctx, sigma.basis().col(t));
    for (long f = 0; f < dim; ++f) {
      SymPoly w = omega(frame[f], st);
      for (long c = 0; c < val_dim; ++c)
        cond(static_cast<int>(t * val_dim + c), static_cast<int>(f)) =
            w.coeffs()[c];
    }
  }
  return Subspace::span(kernel_basis(cond));
}

}  // namespace jetplane
