#pragma once

#include "kslat/linalg.hpp"
#include "kslat/matrix.hpp"

namespace kslat {

// A validated orthogonal projection: P^2 = P = P^*, sp P in {0,1},
// rank = trace.
template <class S>
struct Projection {
  Mat<S> op;
  int rank = 0;

  int dim() const { return op.rows(); }
};

template <class S>
Projection<S> make_projection(const Mat<S>& p, double tol = 1e-9) {
  if (!p.square()) throw DimensionMismatch("projection: not square");
  if (!(p - p.adjoint()).is_zero(tol))
    throw NotProjection("projection: not self-adjoint");
  if (!(p * p - p).is_zero(tol))
    throw NotProjection("projection: not idempotent");
  double tr = ScalarOps<S>::to_double(ScalarOps<S>::real_part(p.trace()));
  int rank = int(std::lround(tr));
  if constexpr (ScalarOps<S>::exact) {
    if (!(p.trace() == ScalarOps<S>::from_int(rank)))
      throw NotProjection("projection: trace is not an integer");
  } else {
    if (std::abs(tr - rank) > 1e-6)
      throw NotProjection("projection: trace is not near an integer");
  }
  return Projection<S>{p, rank};
}

// Projection onto the line spanned by a nonzero column vector.
template <class S>
Projection<S> ray_projection(const Mat<S>& v) {
  S n2 = inner(v, v);
  if (ScalarOps<S>::is_zero(n2, 1e-300)) throw ZeroVector("ray of zero vector");
  Mat<S> p = v * v.adjoint();
  p *= ScalarOps<S>::from_int(1) / n2;
  return Projection<S>{p, 1};
}

template <class S>
Projection<S> ortho_complement(const Projection<S>& e) {
  return Projection<S>{Mat<S>::identity(e.dim()) - e.op, e.dim() - e.rank};
}

// Projection onto range(E) & range(F): the kernel of the stacked system
// (I-E; I-F), since x is in both ranges iff Ex = x and Fx = x.
template <class S>
Projection<S> lattice_meet(const Projection<S>& e, const Projection<S>& f,
                           double tol = 1e-9) {
  if (e.dim() != f.dim()) throw DimensionMismatch("meet: dimensions differ");
  const int n = e.dim();
  Mat<S> stacked(2 * n, n);
  Mat<S> ce = Mat<S>::identity(n) - e.op;
  Mat<S> cf = Mat<S>::identity(n) - f.op;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      stacked(i, j) = ce(i, j);
      stacked(n + i, j) = cf(i, j);
    }
  Mat<S> ker = kernel_basis(stacked, tol);
  Mat<S> p = projection_onto_columns(ker, tol);
  return make_projection(p, std::max(tol, 1e-8));
}

// Projection onto range(E) + range(F); equals E + F for orthogonal E, F.
template <class S>
Projection<S> lattice_join(const Projection<S>& e, const Projection<S>& f,
                           double tol = 1e-9) {
  if (e.dim() != f.dim()) throw DimensionMismatch("join: dimensions differ");
  const int n = e.dim();
  Mat<S> cols(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cols(i, j) = e.op(i, j);
      cols(i, n + j) = f.op(i, j);
    }
  Mat<S> p = projection_onto_columns(cols, tol);
  return make_projection(p, std::max(tol, 1e-8));
}

}  // namespace kslat
