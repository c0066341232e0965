#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kslat/matrix.hpp"

namespace kslat {

// Hard cap on operator dimension; everything here is desk scale.
inline constexpr int kDefaultDimensionCap = 64;

struct SpectralOptions {
  double tol = 1e-9;        // self-adjointness / reconstruction tolerance
  double gap = 1e-7;        // eigenvalues closer than this are merged
  int dimension_cap = kDefaultDimensionCap;
};

template <class S>
bool is_hermitian(const Mat<S>& a, double tol) {
  if (!a.square()) return false;
  return (a - a.adjoint()).is_zero(tol);
}

template <class S>
bool commutes(const Mat<S>& a, const Mat<S>& b, double tol = 1e-9) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw DimensionMismatch("commutes: operators of different dimension");
  return (a * b - b * a).is_zero(tol);
}

// Distinct eigenvalues (ascending) with their spectral projections.
template <class S>
struct Spectral {
  using Real = typename ScalarOps<S>::Real;
  std::vector<Real> eigenvalues;
  std::vector<Mat<S>> projections;

  Mat<S> reconstruct() const {
    Mat<S> a = Mat<S>::zero(projections.at(0).rows(), projections.at(0).rows());
    for (size_t i = 0; i < eigenvalues.size(); ++i)
      a += projections[i] * ScalarOps<S>::from_real(eigenvalues[i]);
    return a;
  }
};

Spectral<Complex> spectral_decompose(const CMat& a,
                                     const SpectralOptions& opts = {});
// Exact mode: eigenvalues must lie in the working field (recognized from a
// float shadow solve, then verified exactly); otherwise SpectrumNotInField.
Spectral<XComplex> spectral_decompose(const XMat& a,
                                      const SpectralOptions& opts = {});

// A Borel function tabulated on a finite spectrum. Values may be complex
// (g = g_r + i g_i); application outside the table throws DomainGap.
template <class S>
struct BorelFn {
  using Real = typename ScalarOps<S>::Real;
  std::vector<std::pair<Real, S>> table;
  std::string tag;

  S operator()(const Real& x, double match_tol = 1e-7) const {
    for (const auto& [k, v] : table) {
      if constexpr (ScalarOps<S>::exact) {
        if (k == x) return v;
      } else {
        if (std::abs(k - x) <= match_tol) return v;
      }
    }
    throw DomainGap("Borel function undefined at spectrum point");
  }

  bool real_valued() const {
    for (const auto& [k, v] : table)
      if (!ScalarOps<S>::is_zero(v - ScalarOps<S>::from_real(
                                         ScalarOps<S>::real_part(v)),
                                 0.0))
        return false;
    return true;
  }

  static BorelFn identity_on(const std::vector<Real>& spectrum) {
    BorelFn f;
    f.tag = "identity";
    for (const auto& x : spectrum)
      f.table.push_back({x, ScalarOps<S>::from_real(x)});
    return f;
  }
  static BorelFn square_on(const std::vector<Real>& spectrum) {
    BorelFn f;
    f.tag = "square";
    for (const auto& x : spectrum)
      f.table.push_back({x, ScalarOps<S>::from_real(x * x)});
    return f;
  }
  static BorelFn scalar_multiple_on(const std::vector<Real>& spectrum,
                                    const S& alpha) {
    BorelFn f;
    f.tag = "scalar-multiple";
    for (const auto& x : spectrum)
      f.table.push_back({x, alpha * ScalarOps<S>::from_real(x)});
    return f;
  }
  // Indicator of a subset of the spectrum.
  static BorelFn indicator_on(const std::vector<Real>& spectrum,
                              const std::vector<Real>& subset,
                              double match_tol = 1e-7) {
    BorelFn f;
    f.tag = "indicator";
    for (const auto& x : spectrum) {
      bool in = false;
      for (const auto& s : subset) {
        if constexpr (ScalarOps<S>::exact) {
          in = in || (s == x);
        } else {
          in = in || (std::abs(s - x) <= match_tol);
        }
      }
      f.table.push_back({x, ScalarOps<S>::from_int(in ? 1 : 0)});
    }
    return f;
  }
};

template <class S>
Mat<S> borel_apply(const BorelFn<S>& f, const Mat<S>& a,
                   const SpectralOptions& opts = {}) {
  auto dec = spectral_decompose(a, opts);
  Mat<S> out = Mat<S>::zero(a.rows(), a.rows());
  for (size_t i = 0; i < dec.eigenvalues.size(); ++i)
    out += dec.projections[i] * f(dec.eigenvalues[i], opts.gap);
  return out;
}

}  // namespace kslat
