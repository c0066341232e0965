#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kslat/linalg.hpp"
#include "kslat/rays.hpp"

namespace kslat {

namespace detail {
template <class S>
S from_ratio(long p, long q);
template <>
inline Complex from_ratio<Complex>(long p, long q) {
  return Complex(double(p) / double(q), 0.0);
}
template <>
inline XComplex from_ratio<XComplex>(long p, long q) {
  return XComplex(Surd(Rational(p, q)));
}
template <class S>
S from_parts(const typename ScalarOps<S>::Real& re,
             const typename ScalarOps<S>::Real& im);
template <>
inline Complex from_parts<Complex>(const double& re, const double& im) {
  return Complex(re, im);
}
template <>
inline XComplex from_parts<XComplex>(const Surd& re, const Surd& im) {
  return XComplex(re, im);
}

inline double real_abs(double x) { return std::abs(x); }
inline Surd real_abs(const Surd& x) { return abs(x); }
inline double real_to_double(double x) { return x; }
inline double real_to_double(const Surd& x) { return x.to_double(); }

template <class S>
Projection<S> family_projection(const ProjectionFamily& fam, int e);
template <>
inline Projection<Complex> family_projection<Complex>(
    const ProjectionFamily& fam, int e) {
  return family_projection_f(fam, e);
}
template <>
inline Projection<XComplex> family_projection<XComplex>(
    const ProjectionFamily& fam, int e) {
  return family_projection_x(fam, e);
}

template <class S>
std::vector<Projection<S>> context_atoms(const RayConfiguration& cfg,
                                         const ContextInfo& ctx);
template <>
inline std::vector<Projection<Complex>> context_atoms<Complex>(
    const RayConfiguration& cfg, const ContextInfo& ctx) {
  return context_atoms_f(cfg, ctx);
}
template <>
inline std::vector<Projection<XComplex>> context_atoms<XComplex>(
    const RayConfiguration& cfg, const ContextInfo& ctx) {
  return context_atoms_x(cfg, ctx);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Finitely additive probability measures on a projection family.

enum class ViolationKind {
  Range,          // (M1) value outside [0,1]
  Normalization,  // (M1) value at I differs from 1
  Additivity,     // (M2) value at E v F differs from value(E) + value(F)
  WellDefined,    // equal projections carry different values
};

template <class R>
struct MeasureViolation {
  ViolationKind kind;
  int e = -1, f = -1, g = -1;  // family element indices involved
  R residual{};
};

template <class R>
struct MeasureReport {
  std::vector<MeasureViolation<R>> violations;
  R max_residual{};
  bool pass() const { return violations.empty(); }
};

// Verifies (M1)/(M2) and well-definedness of `values` over the family.
// `tol` is 0 in exact arithmetic.
template <class R>
MeasureReport<R> check_probability_measure(const ProjectionFamily& fam,
                                           const std::vector<R>& values,
                                           const R& tol) {
  using detail::real_abs;
  if (int(values.size()) != fam.size())
    throw MissingValue("measure values do not cover the projection family");
  MeasureReport<R> rep;
  auto note = [&](ViolationKind kind, int e, int f, int g, const R& residual) {
    if (real_abs(residual) > rep.max_residual)
      rep.max_residual = real_abs(residual);
    if (real_abs(residual) > tol)
      rep.violations.push_back({kind, e, f, g, real_abs(residual)});
  };
  const R one = R(1);
  for (int e = 0; e < fam.size(); ++e) {
    if (values[e] < R(0)) note(ViolationKind::Range, e, -1, -1, -values[e]);
    if (values[e] > one) note(ViolationKind::Range, e, -1, -1, values[e] - one);
  }
  note(ViolationKind::Normalization, fam.identity_index, -1, -1,
       values[fam.identity_index] - one);
  if (fam.zero_index >= 0)
    note(ViolationKind::Normalization, fam.zero_index, -1, -1,
         values[fam.zero_index]);
  for (const auto& [e, f] : fam.aliases)
    note(ViolationKind::WellDefined, e, f, -1, values[e] - values[f]);
  for (const auto& t : fam.additive_triples)
    note(ViolationKind::Additivity, t[0], t[1], t[2],
         values[t[2]] - values[t[0]] - values[t[1]]);
  return rep;
}

// Additive lift of a 0/1 ray assignment to the whole family.
template <class R>
std::vector<R> lift_two_valued(const ProjectionFamily& fam,
                               const std::vector<int>& ray_values) {
  std::vector<R> out(fam.size(), R(0));
  for (int e = 0; e < fam.size(); ++e) {
    const auto& el = fam.elements[e];
    switch (el.kind) {
      case FamilyElement::Kind::Zero:
        break;
      case FamilyElement::Kind::Identity:
        out[e] = R(1);
        break;
      case FamilyElement::Kind::RaySum: {
        long s = 0;
        for (int r : el.rays) s += ray_values.at(r);
        out[e] = R(s);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Valuations and quasi-states.

// A real functional on self-adjoint operators; throws MissingValue outside
// its domain of definition.
template <class S>
using SaFunctional =
    std::function<typename ScalarOps<S>::Real(const Mat<S>&)>;

// Canonical extension to arbitrary operators through the unique self-adjoint
// decomposition B = A1 + i A2.
template <class S>
struct OperatorDecomposition {
  Mat<S> a1, a2;
};

template <class S>
OperatorDecomposition<S> self_adjoint_decomposition(const Mat<S>& b) {
  S half = detail::from_ratio<S>(1, 2);
  S minus_half_i = detail::from_parts<S>(typename ScalarOps<S>::Real(0),
                                         typename ScalarOps<S>::Real(0)) -
                   detail::from_parts<S>(typename ScalarOps<S>::Real(0),
                                         typename ScalarOps<S>::Real(1)) *
                       half;
  Mat<S> a1 = (b + b.adjoint()) * half;
  Mat<S> a2 = (b - b.adjoint()) * minus_half_i;
  return {std::move(a1), std::move(a2)};
}

template <class S>
S extended_value(const SaFunctional<S>& v, const Mat<S>& b) {
  auto dec = self_adjoint_decomposition(b);
  return detail::from_parts<S>(v(dec.a1), v(dec.a2));
}

// A valuation candidate built from a two-valued ray assignment: the value of
// a self-adjoint operator inside a context algebra is its coefficient on the
// atom carrying measure 1.
template <class S>
struct WitnessValuation {
  using Real = typename ScalarOps<S>::Real;

  const RayConfiguration* cfg = nullptr;
  const ContextSet* ctxs = nullptr;
  std::vector<int> ray_value;  // one 0/1 value per ray
  double tol = 1e-9;

  // Expansion coefficients of `a` over the atoms of context `ctx`;
  // MissingValue when `a` is not in the context algebra.
  std::vector<Real> atom_coefficients(int ctx, const Mat<S>& a) const {
    auto atoms = detail::context_atoms<S>(*cfg, ctxs->contexts.at(ctx));
    std::vector<Real> coeff;
    Mat<S> rec = Mat<S>::zero(a.rows(), a.cols());
    for (const auto& p : atoms) {
      S t = (p.op * a).trace();
      Real c = ScalarOps<S>::real_part(t) / Real(p.rank);
      rec += p.op * ScalarOps<S>::from_real(c);
      coeff.push_back(std::move(c));
    }
    if (!(a - rec).is_zero(ScalarOps<S>::exact ? 0.0 : tol))
      throw MissingValue("operator is not in the context algebra");
    return coeff;
  }

  int chosen_atom(int ctx) const {
    const auto& info = ctxs->contexts.at(ctx);
    int chosen = -1;
    for (size_t i = 0; i < info.rays.size(); ++i)
      if (ray_value.at(info.rays[i]) == 1) {
        if (chosen >= 0)
          throw IncompleteAssignment("two atoms carry value 1 in one context");
        chosen = int(i);
      }
    if (chosen < 0) {
      if (!info.has_remainder())
        throw IncompleteAssignment("complete context with no atom at value 1");
      chosen = info.remainder_atom();
    }
    return chosen;
  }

  Real value_in_context(int ctx, const Mat<S>& a) const {
    return atom_coefficients(ctx, a).at(chosen_atom(ctx));
  }

  // Finds some enumerated context whose algebra contains `a`.
  Real operator()(const Mat<S>& a) const {
    for (size_t c = 0; c < ctxs->contexts.size(); ++c) {
      try {
        return value_in_context(int(c), a);
      } catch (const MissingValue&) {
      }
    }
    throw MissingValue("operator lies in no enumerated context algebra");
  }

  SaFunctional<S> as_functional() const {
    return [copy = *this](const Mat<S>& a) { return copy(a); };
  }
};

// Report of the character checks (sum rule, product rule, FUNC) of a
// valuation on one context.
template <class S>
struct ContextCheckReport {
  using Real = typename ScalarOps<S>::Real;
  Real additivity_residual{};
  Real multiplicativity_residual{};
  Real func_residual{};
  Real normalization_residual{};
  bool spectrum_rule_ok = true;
  bool character = false;  // exactly one atom at 1, the rest at 0

  bool pass(double tol) const {
    using detail::real_to_double;
    return character && spectrum_rule_ok &&
           real_to_double(additivity_residual) <= tol &&
           real_to_double(multiplicativity_residual) <= tol &&
           real_to_double(func_residual) <= tol &&
           real_to_double(normalization_residual) <= tol;
  }
};

template <class S>
ContextCheckReport<S> check_func_on_context(
    const WitnessValuation<S>& v, int ctx,
    const std::vector<BorelFn<S>>& extra_fns = {},
    const SpectralOptions& sopts = {}) {
  using Real = typename ScalarOps<S>::Real;
  using detail::real_abs;
  ContextCheckReport<S> rep;
  const auto& info = v.ctxs->contexts.at(ctx);
  auto atoms = detail::context_atoms<S>(*v.cfg, info);
  const int k = int(atoms.size());
  const int n = v.cfg->dim;

  std::vector<Real> av;  // atom values
  long ones = 0;
  for (const auto& p : atoms) {
    Real val = v.value_in_context(ctx, p.op);
    if (val != Real(0) && val != Real(1)) rep.spectrum_rule_ok = false;
    if (val == Real(1)) ++ones;
    av.push_back(std::move(val));
  }
  rep.character = (ones == 1);
  Real total{};
  for (const auto& x : av) total = total + x;
  rep.normalization_residual = real_abs(total - Real(1));

  auto track = [](Real& slot, const Real& r) {
    if (real_abs(r) > slot) slot = real_abs(r);
  };

  // Generic algebra elements with distinct integer coefficients.
  Mat<S> a = Mat<S>::zero(n, n), b = Mat<S>::zero(n, n);
  std::vector<Real> spec_a;
  for (int i = 0; i < k; ++i) {
    a += atoms[i].op * ScalarOps<S>::from_int(i + 1);
    b += atoms[i].op * ScalarOps<S>::from_int((i + 1) * (i + 1) - 2);
    spec_a.push_back(Real(i + 1));
  }
  Real va = v.value_in_context(ctx, a);
  Real vb = v.value_in_context(ctx, b);
  // Sum and product rules (linearity and multiplicativity on the algebra).
  track(rep.additivity_residual,
        v.value_in_context(ctx, a + b) - (va + vb));
  track(rep.multiplicativity_residual,
        v.value_in_context(ctx, a * b) - va * vb);
  track(rep.multiplicativity_residual,
        v.value_in_context(ctx, a * a) - va * va);

  // FUNC against the built-in function library on sp(a).
  std::vector<BorelFn<S>> fns;
  fns.push_back(BorelFn<S>::square_on(spec_a));
  fns.push_back(BorelFn<S>::scalar_multiple_on(spec_a,
                                               ScalarOps<S>::from_int(3)));
  for (const Real& lam : spec_a)
    fns.push_back(BorelFn<S>::indicator_on(spec_a, {lam}));
  for (const auto& f : fns) {
    Mat<S> fa = borel_apply(f, a, sopts);
    S lhs = extended_value<S>(
        [&](const Mat<S>& m) { return v.value_in_context(ctx, m); }, fa);
    S rhs = f(va, sopts.gap);
    track(rep.func_residual,
          real_abs(ScalarOps<S>::real_part(lhs - rhs)) +
              real_abs(ScalarOps<S>::imag_part(lhs - rhs)));
  }
  // Caller-supplied functions act on the atoms' {0,1} spectra.
  for (const auto& f : extra_fns) {
    for (int i = 0; i < k; ++i) {
      Mat<S> fp = borel_apply(f, atoms[i].op, sopts);
      S lhs = extended_value<S>(
          [&](const Mat<S>& m) { return v.value_in_context(ctx, m); }, fp);
      S rhs = f(av[i], sopts.gap);
      track(rep.func_residual,
            real_abs(ScalarOps<S>::real_part(lhs - rhs)) +
                real_abs(ScalarOps<S>::imag_part(lhs - rhs)));
    }
  }
  return rep;
}

// Quasi-state verification: per-subalgebra linearity and positivity,
// additivity over the self-adjoint decomposition, and normalization.
template <class S>
struct QuasiStateReport {
  using Real = typename ScalarOps<S>::Real;
  Real linearity_residual{};
  Real positivity_violation{};
  Real decomposition_residual{};
  Real normalization{};

  bool pass(double tol) const {
    using detail::real_to_double;
    return real_to_double(linearity_residual) <= tol &&
           real_to_double(positivity_violation) <= tol &&
           real_to_double(decomposition_residual) <= tol &&
           std::abs(real_to_double(normalization) - 1.0) <= tol;
  }
};

template <class S>
QuasiStateReport<S> quasi_state_check(const SaFunctional<S>& phi,
                                      const std::vector<Mat<S>>& generators,
                                      const SpectralOptions& sopts = {}) {
  using Real = typename ScalarOps<S>::Real;
  using detail::real_abs;
  QuasiStateReport<S> rep;
  auto track = [](Real& slot, const Real& r) {
    if (real_abs(r) > slot) slot = real_abs(r);
  };
  if (generators.empty()) throw MissingValue("no generating operators");
  const int n = generators.front().rows();
  rep.normalization = phi(Mat<S>::identity(n));

  for (const Mat<S>& a : generators) {
    auto dec = spectral_decompose(a, sopts);
    const auto& spec = dec.eigenvalues;
    BorelFn<S> sq = BorelFn<S>::square_on(spec);
    BorelFn<S> tripled = BorelFn<S>::scalar_multiple_on(
        spec, ScalarOps<S>::from_int(3));
    Mat<S> fa = borel_apply(sq, a, sopts);
    Mat<S> ga = borel_apply(tripled, a, sopts);
    // Linearity on the singly generated abelian subalgebra.
    track(rep.linearity_residual, phi(fa + ga) - (phi(fa) + phi(ga)));
    track(rep.linearity_residual, phi(a + fa) - (phi(a) + phi(fa)));
    track(rep.linearity_residual, phi(ga) - Real(3) * phi(a));
    // Positivity: nonnegative functions of a have nonnegative value.
    Real vsq = phi(fa);
    if (vsq < Real(0)) track(rep.positivity_violation, vsq);
    for (const Real& lam : spec) {
      Mat<S> ind = borel_apply(BorelFn<S>::indicator_on(spec, {lam}), a,
                               sopts);
      Real vi = phi(ind);
      if (vi < Real(0)) track(rep.positivity_violation, vi);
    }
    // Decomposition additivity on b = f(a) + i g(a).
    S iunit = detail::from_parts<S>(Real(0), Real(1));
    Mat<S> b = fa + ga * iunit;
    auto sad = self_adjoint_decomposition(b);
    if (!(sad.a1 + sad.a2 * iunit - b).is_zero(ScalarOps<S>::exact ? 0.0
                                                                   : 1e-12))
      throw Error("self-adjoint decomposition failed to reassemble");
    S lhs = extended_value(phi, b);
    S rhs = detail::from_parts<S>(phi(fa), phi(ga));
    track(rep.decomposition_residual,
          real_abs(ScalarOps<S>::real_part(lhs - rhs)) +
              real_abs(ScalarOps<S>::imag_part(lhs - rhs)));
  }
  return rep;
}

// Restriction of a functional to the projection family (Gleason-side lemma:
// a quasi-state restricts to a finitely additive probability measure).
template <class S>
std::vector<typename ScalarOps<S>::Real> restrict_to_projections(
    const SaFunctional<S>& phi, const ProjectionFamily& fam) {
  std::vector<typename ScalarOps<S>::Real> out;
  for (int e = 0; e < fam.size(); ++e)
    out.push_back(phi(detail::family_projection<S>(fam, e).op));
  return out;
}

}  // namespace kslat
