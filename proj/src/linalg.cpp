#include "kslat/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>

#include "eigen_util.hpp"

namespace kslat {

using internal::to_eigen;

namespace {

// Cluster sorted eigenvalues whose neighbors are closer than `gap`.
std::vector<std::pair<double, std::vector<int>>> cluster_eigenvalues(
    const Eigen::VectorXd& ev, double gap) {
  std::vector<std::pair<double, std::vector<int>>> clusters;
  for (int i = 0; i < ev.size(); ++i) {
    if (clusters.empty() || ev[i] - ev[clusters.back().second.back()] > gap) {
      clusters.push_back({ev[i], {i}});
    } else {
      clusters.back().second.push_back(i);
    }
  }
  // Representative value: cluster mean.
  for (auto& [val, idx] : clusters) {
    double s = 0;
    for (int i : idx) s += ev[i];
    val = s / double(idx.size());
  }
  return clusters;
}

}  // namespace

Spectral<Complex> spectral_decompose(const CMat& a,
                                     const SpectralOptions& opts) {
  if (!a.square()) throw DimensionMismatch("spectral_decompose: not square");
  if (a.rows() > opts.dimension_cap)
    throw Error("dimension cap exceeded");
  if (!is_hermitian(a, opts.tol))
    throw NotSelfAdjoint("spectral_decompose: operator is not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a));
  if (solver.info() != Eigen::Success)
    throw NumericalDegeneracy("eigen solve failed");
  const Eigen::VectorXd ev = solver.eigenvalues();
  // Ambiguity guard: a pair separated by more than gap but less than 10*gap
  // cannot be clustered reliably.
  for (int i = 0; i + 1 < ev.size(); ++i) {
    double d = ev[i + 1] - ev[i];
    if (d > opts.gap && d < 10 * opts.gap)
      throw NumericalDegeneracy("eigenvalue clustering ambiguous near gap");
  }
  auto clusters = cluster_eigenvalues(ev, opts.gap);
  Spectral<Complex> out;
  for (const auto& [val, idx] : clusters) {
    CMat p = CMat::zero(a.rows(), a.rows());
    for (int k : idx) {
      Eigen::VectorXcd v = solver.eigenvectors().col(k);
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.rows(); ++j)
          p(i, j) += v(i) * std::conj(v(j));
    }
    out.eigenvalues.push_back(val);
    out.projections.push_back(std::move(p));
  }
  return out;
}

namespace {

// Try to recognize a float eigenvalue as an element a + b*sqrt(r) of the
// field. Candidates: rational, pure multiple of sqrt(r), and (for the common
// shipped radicands) a + b*sqrt(r) with small a.
bool recognize_field_value(double x, long r, Surd* out) {
  // Small denominators and a tight tolerance, so that a genuine multiple of
  // sqrt(r) is never mistaken for one of its rational approximants.
  Rational q;
  if (recognize_rational(x, &q, 1000L, 1e-10)) {
    *out = Surd(q);
    return true;
  }
  if (r > 1) {
    double s = std::sqrt(double(r));
    if (recognize_rational(x / s, &q, 1000L, 1e-10)) {
      *out = Surd(Rational(0), q, r);
      return true;
    }
    // a + b sqrt(r) with small integer a.
    for (long ai = -8; ai <= 8; ++ai) {
      if (ai == 0) continue;
      if (recognize_rational((x - double(ai)) / s, &q, 1000L, 1e-10)) {
        *out = Surd(Rational(ai), q, r);
        return true;
      }
    }
  }
  return false;
}

long detect_radicand(const XMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).re.radicand() != 0) return a(i, j).re.radicand();
      if (a(i, j).im.radicand() != 0) return a(i, j).im.radicand();
    }
  return 0;
}

}  // namespace

Spectral<XComplex> spectral_decompose(const XMat& a,
                                      const SpectralOptions& opts) {
  if (!a.square()) throw DimensionMismatch("spectral_decompose: not square");
  if (a.rows() > opts.dimension_cap) throw Error("dimension cap exceeded");
  if (!is_hermitian(a, 0.0))
    throw NotSelfAdjoint("spectral_decompose: operator is not self-adjoint");

  // Float shadow solve guides the eigenvalue guesses; everything asserted
  // about the result is then verified exactly.
  auto shadow = spectral_decompose(to_cmat(a), opts);
  long r = detect_radicand(a);

  std::vector<Surd> values;
  for (double ev : shadow.eigenvalues) {
    Surd s;
    if (!recognize_field_value(ev, r, &s))
      throw SpectrumNotInField("eigenvalue " + std::to_string(ev) +
                               " not recognized in Q(sqrt " +
                               std::to_string(r) + "); use float mode");
    values.push_back(s);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  const int n = a.rows();
  const XMat id = XMat::identity(n);
  Spectral<XComplex> out;
  for (const Surd& lam : values) {
    // Spectral projection by Lagrange interpolation through the other
    // eigenvalues; exact for a diagonalizable operator whose spectrum is
    // exactly `values`.
    XMat p = id;
    for (const Surd& mu : values) {
      if (mu == lam) continue;
      XComplex denom = XComplex(lam - mu);
      p = p * (a - id * XComplex(mu));
      XComplex inv = XComplex(Surd(1)) / denom;
      p = p * inv;
    }
    out.eigenvalues.push_back(lam);
    out.projections.push_back(std::move(p));
  }

  // Exact verification: projections are Hermitian idempotents, pairwise
  // orthogonal, resolve the identity, and reconstruct the operator.
  XMat sum = XMat::zero(n, n);
  XMat rec = XMat::zero(n, n);
  for (size_t i = 0; i < out.projections.size(); ++i) {
    const XMat& p = out.projections[i];
    if (!(p * p == p) || !(p.adjoint() == p))
      throw SpectrumNotInField("recognized spectrum failed exact check");
    for (size_t j = 0; j < i; ++j)
      if (!(p * out.projections[j]).is_zero(0.0))
        throw SpectrumNotInField("spectral projections not orthogonal");
    sum += p;
    rec += p * XComplex(out.eigenvalues[i]);
  }
  if (!(sum == id) || !(rec == a))
    throw SpectrumNotInField("recognized spectrum failed exact check");
  return out;
}

}  // namespace kslat
