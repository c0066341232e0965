#include "kslat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "eigen_util.hpp"
#include "kslat/errors.hpp"
#include "kslat/linalg.hpp"

namespace kslat {

using internal::from_eigen;
using internal::to_eigen;

FiniteAlgebra::FiniteAlgebra(std::vector<int> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw EmptyAlgebra("no blocks");
  for (int n : blocks_) {
    if (n < 1) throw BadBlockSpec("block sizes must be positive");
    offsets_.push_back(dim_);
    dim_ += n;
  }
  if (dim_ > kDefaultDimensionCap) throw BadBlockSpec("dimension cap exceeded");
}

CMat FiniteAlgebra::central_projection(int b) const {
  CMat p = CMat::zero(dim_, dim_);
  for (int i = 0; i < blocks_.at(b); ++i)
    p(offsets_[b] + i, offsets_[b] + i) = 1.0;
  return p;
}

CMat FiniteAlgebra::abelian_central_projection() const {
  CMat p = CMat::zero(dim_, dim_);
  for (int b = 0; b < num_blocks(); ++b)
    if (blocks_[b] == 1) p(offsets_[b], offsets_[b]) = 1.0;
  return p;
}

CMat FiniteAlgebra::embed(int b, const CMat& a) const {
  if (a.rows() != blocks_.at(b) || a.cols() != blocks_.at(b))
    throw DimensionMismatch("block matrix has the wrong size");
  CMat out = CMat::zero(dim_, dim_);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out(offsets_[b] + i, offsets_[b] + j) = a(i, j);
  return out;
}

CMat FiniteAlgebra::matrix_unit(int b, int i, int j) const {
  if (i < 0 || j < 0 || i >= blocks_.at(b) || j >= blocks_.at(b))
    throw DimensionMismatch("matrix unit index outside block");
  CMat out = CMat::zero(dim_, dim_);
  out(offsets_[b] + i, offsets_[b] + j) = 1.0;
  return out;
}

std::vector<CMat> FiniteAlgebra::matrix_units() const {
  std::vector<CMat> units;
  for (int b = 0; b < num_blocks(); ++b)
    for (int i = 0; i < blocks_[b]; ++i)
      for (int j = 0; j < blocks_[b]; ++j)
        units.push_back(matrix_unit(b, i, j));
  return units;
}

bool FiniteAlgebra::contains(const CMat& a, double tol) const {
  if (a.rows() != dim_ || a.cols() != dim_) return false;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      bool same_block = false;
      for (int b = 0; b < num_blocks(); ++b) {
        int lo = offsets_[b], hi = offsets_[b] + blocks_[b];
        if (i >= lo && i < hi && j >= lo && j < hi) same_block = true;
      }
      if (!same_block && std::abs(a(i, j)) > tol) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(CMat rho) : rho_(std::move(rho)) {
  if (!rho_.square()) throw DimensionMismatch("density operator not square");
  if (!is_hermitian(rho_, 1e-9))
    throw NotSelfAdjoint("density operator not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(rho_));
  if (solver.eigenvalues().minCoeff() < -1e-12)
    throw NotPositive("density operator has a negative eigenvalue");
  if (std::abs(rho_.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho_.trace().imag()) > 1e-10)
    throw NotNormalized("density operator trace is not 1");
}

DensityOperator DensityOperator::diagonal(const std::vector<double>& probs) {
  CMat rho = CMat::zero(int(probs.size()), int(probs.size()));
  for (size_t i = 0; i < probs.size(); ++i) rho(int(i), int(i)) = probs[i];
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::pure(const CMat& v) {
  Complex n2 = inner(v, v);
  if (std::abs(n2) == 0.0) throw ZeroVector("pure state from the zero vector");
  CMat rho = v * v.adjoint();
  rho *= Complex(1.0, 0.0) / n2;
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::maximally_mixed(int n) {
  CMat rho = CMat::identity(n);
  rho *= Complex(1.0 / n, 0.0);
  return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  CMat rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real(), 0.0);
  return DensityOperator(std::move(rho));
}

double DensityOperator::value(const CMat& projection) const {
  return (rho_ * projection).trace().real();
}

std::vector<double> gleason_values(const DensityOperator& rho,
                                   const ProjectionFamily& fam) {
  std::vector<double> out;
  for (int e = 0; e < fam.size(); ++e)
    out.push_back(rho.value(family_projection_f(fam, e).op));
  return out;
}

double operator_norm(const CMat& a) { return internal::operator_norm(a); }

FractionalWitness fractional_witness(const DensityOperator& rho, double delta,
                                     int max_rotations, std::uint64_t seed) {
  const int n = rho.dim();
  FractionalWitness w;
  auto try_projection = [&](CMat p, const std::string& how) {
    double v = rho.value(p);
    if (v > delta && v < 1.0 - delta) {
      w.found = true;
      w.projection = std::move(p);
      w.value = v;
      w.how = how;
      return true;
    }
    return false;
  };
  // Standard-basis subspaces first: for nondegenerate diagonals these are
  // already fractional, and keep the value exact for diagonal states.
  for (int k = 1; k < n; ++k) {
    CMat p = CMat::zero(n, n);
    for (int i = 0; i < k; ++i) p(i, i) = 1.0;
    if (try_projection(std::move(p), "standard-basis rank " + std::to_string(k)))
      return w;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < max_rotations; ++t) {
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::MatrixXcd q =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    for (int k = 1; k < n; ++k) {
      Eigen::MatrixXcd cols = q.leftCols(k);
      if (try_projection(from_eigen(cols * cols.adjoint()),
                         "rotated rank " + std::to_string(k) + " (trial " +
                             std::to_string(t) + ")"))
        return w;
    }
  }
  w.how = "no fractional projection found";
  return w;
}

// ---------------------------------------------------------------------------

ProjectionPartition partition_projection(const CMat& e, int pieces,
                                         double tol) {
  if (pieces < 1) throw BadBlockSpec("piece count must be positive");
  if (!e.square() || !is_hermitian(e, tol) ||
      !(e * e).approx_equal(e, std::max(tol, 1e-8)))
    throw NotProjection("partition input is not a projection");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(e));
  std::vector<Eigen::VectorXcd> range;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    double lam = solver.eigenvalues()(i);
    if (std::abs(lam - 1.0) < 0.5) range.push_back(solver.eigenvectors().col(i));
  }
  const int rank = int(range.size());
  if (rank % pieces != 0)
    throw IndivisibleRank("rank " + std::to_string(rank) +
                          " does not split into " + std::to_string(pieces) +
                          " equal pieces");
  const int m = rank / pieces;
  const int n = e.rows();
  ProjectionPartition out;
  for (int j = 0; j < pieces; ++j) {
    Eigen::MatrixXcd part = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < m; ++k) {
      const auto& u = range[size_t(j) * m + k];
      const auto& u0 = range[size_t(k)];
      part += u * u.adjoint();
      theta += u * u0.adjoint();  // maps piece 0 onto piece j
    }
    out.parts.push_back(from_eigen(part));
    out.isometries.push_back(from_eigen(theta));
  }
  return out;
}

namespace {

Json mat_to_json(const CMat& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.cols(); ++j)
      row.push_back(Json::array({a(i, j).real(), a(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

CMat mat_from_json(const Json& j) {
  int rows = int(j.size());
  if (rows == 0) throw CorruptCertificate("empty matrix");
  int cols = int(j.at(0).size());
  CMat a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (int(j.at(i).size()) != cols) throw CorruptCertificate("ragged matrix");
    for (int c = 0; c < cols; ++c)
      a(i, c) = Complex(j.at(i).at(c).at(0).get<double>(),
                        j.at(i).at(c).at(1).get<double>());
  }
  return a;
}

}  // namespace

Json multiplicative_no_go_witness(int n) {
  if (n < 2) throw BadBlockSpec("the obstruction needs n >= 2");
  FiniteAlgebra alg({n});
  Json isometries = Json::array();
  for (int j = 0; j < n; ++j)
    isometries.push_back(mat_to_json(alg.matrix_unit(0, j, 0)));
  return Json{
      {"format", "multiplicative-no-go"},
      {"version", 1},
      {"n", n},
      {"isometries", isometries},
      {"conclusion",
       "the n subprojections are equivalent, so a multiplicative state gives "
       "them a common value v in {0,1}; their sum is the identity, forcing "
       "n*v = 1, which no v in {0,1} satisfies for n >= 2"}};
}

bool verify_no_go_witness(const Json& cert, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    if (cert.value("format", "") != "multiplicative-no-go" ||
        cert.value("version", 0) != 1)
      return fail("unrecognized certificate format");
    int n = cert.value("n", 0);
    if (n < 2) return fail("n must be at least 2");
    const Json& iso = cert.at("isometries");
    if (int(iso.size()) != n) return fail("expected n isometries");
    std::vector<CMat> theta;
    for (const auto& j : iso) theta.push_back(mat_from_json(j));
    const int dim = theta[0].rows();
    CMat e0 = theta[0].adjoint() * theta[0];
    CMat sum = CMat::zero(dim, dim);
    for (int j = 0; j < n; ++j) {
      CMat ej = theta[j] * theta[j].adjoint();
      if (!(theta[j].adjoint() * theta[j]).approx_equal(e0, 1e-12))
        return fail("isometry " + std::to_string(j) +
                    " does not start from the common subprojection");
      if (!(ej * ej).approx_equal(ej, 1e-12) || !is_hermitian(ej, 1e-12))
        return fail("piece " + std::to_string(j) + " is not a projection");
      sum += ej;
    }
    if (!sum.approx_equal(CMat::identity(dim), 1e-12))
      return fail("pieces do not resolve the identity");
    // The arithmetic core of the obstruction.
    for (int v = 0; v <= 1; ++v)
      if (n * v == 1) return fail("n*v = 1 is satisfiable; no obstruction");
    return true;
  } catch (const std::exception& ex) {
    return fail(std::string("malformed certificate: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------

const char* valuation_verdict_name(ValuationVerdict v) {
  switch (v) {
    case ValuationVerdict::ExistsAbelian:
      return "EXISTS-ABELIAN";
    case ValuationVerdict::ExistsI2Finite:
      return "EXISTS-I2-FINITE";
    case ValuationVerdict::None:
      return "NONE";
  }
  return "?";
}

CenterDecomposition decompose_center(const FiniteAlgebra& alg) {
  CenterDecomposition out;
  out.abelian_part = alg.abelian_central_projection();
  bool has_two = false;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    if (alg.blocks()[b] == 1) out.abelian_blocks.push_back(b);
    if (alg.blocks()[b] == 2) has_two = true;
  }
  if (!out.abelian_blocks.empty()) {
    out.verdict = ValuationVerdict::ExistsAbelian;
    out.valuation_block = out.abelian_blocks.front();
    int k = alg.block_offset(out.valuation_block);
    out.valuation = [k](const CMat& a) { return a(k, k); };
    out.detail =
        "character through the one-dimensional central summand at block " +
        std::to_string(out.valuation_block) +
        "; vanishes on every projection under the complementary central "
        "projection";
  } else if (has_two) {
    out.verdict = ValuationVerdict::ExistsI2Finite;
    out.detail =
        "no abelian summand, but a 2x2 block admits two-valued measures on "
        "its projections (too few contexts to force a contradiction)";
  } else {
    out.verdict = ValuationVerdict::None;
    out.detail =
        "every central summand is a full matrix block of size >= 3; each is "
        "obstructed, so no valuation exists";
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Coordinates of a block-diagonal matrix in the matrix-unit basis.
Eigen::VectorXcd unit_coords(const FiniteAlgebra& alg, const CMat& a) {
  Eigen::VectorXcd x(alg.matrix_units().size());
  int idx = 0;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    int off = alg.block_offset(b);
    for (int i = 0; i < alg.blocks()[b]; ++i)
      for (int j = 0; j < alg.blocks()[b]; ++j)
        x(idx++) = a(off + i, off + j);
  }
  return x;
}

}  // namespace

GnsResult gns_construct(const FiniteAlgebra& alg, const State& phi,
                        double null_tol) {
  const std::vector<CMat> units = alg.matrix_units();
  const int d = int(units.size());
  const CMat id = CMat::identity(alg.dim());
  if (std::abs(phi(id) - Complex(1.0, 0.0)) > 1e-9)
    throw NotNormalized("state is not unital");

  Eigen::MatrixXcd gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      gram(a, b) = phi(units[a].adjoint() * units[b]);
  Eigen::MatrixXcd herm = (gram + gram.adjoint()) / 2.0;
  if ((gram - herm).norm() > 1e-9)
    throw NotPositive("sesquilinear form is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  if (solver.eigenvalues().minCoeff() < -null_tol)
    throw NotPositive("sesquilinear form is not positive semidefinite");

  // Orthonormal basis of the quotient: eigenvectors above the null cut,
  // scaled by 1/sqrt(eigenvalue).
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (solver.eigenvalues()(i) > null_tol) keep.push_back(i);
  const int dim = int(keep.size());
  Eigen::MatrixXcd y(d, dim);
  for (int k = 0; k < dim; ++k)
    y.col(k) = solver.eigenvectors().col(keep[k]) /
               std::sqrt(solver.eigenvalues()(keep[k]));

  // Left multiplication in coordinates, then compression to the quotient.
  GnsResult out;
  out.dim = dim;
  out.gram = from_eigen(gram);
  std::vector<Eigen::MatrixXcd> reps;
  for (int c = 0; c < d; ++c) {
    Eigen::MatrixXcd left(d, d);
    for (int a = 0; a < d; ++a)
      left.col(a) = unit_coords(alg, units[c] * units[a]);
    reps.push_back(y.adjoint() * gram * left * y);
    out.rep.push_back(from_eigen(reps.back()));
  }
  Eigen::VectorXcd omega = y.adjoint() * gram * unit_coords(alg, id);
  out.cyclic = from_eigen(omega);

  double resid = 0.0;
  for (int a = 0; a < d; ++a) {
    // Vector-state reconstruction of phi on the basis.
    Complex rebuilt = (omega.adjoint() * reps[a] * omega)(0, 0);
    resid = std::max(resid, std::abs(rebuilt - phi(units[a])));
    // Homomorphism property on basis pairs.
    for (int b = 0; b < d; ++b) {
      Eigen::VectorXcd p = unit_coords(alg, units[a] * units[b]);
      Eigen::MatrixXcd rep_prod = Eigen::MatrixXcd::Zero(dim, dim);
      for (int c = 0; c < d; ++c) rep_prod += p(c) * reps[c];
      resid = std::max(resid, (reps[a] * reps[b] - rep_prod).norm());
    }
  }
  out.rep_residual = resid;
  return out;
}

double multiplicativity_residual(const FiniteAlgebra& alg, const State& phi,
                                 int samples, std::uint64_t seed) {
  const std::vector<CMat> units = alg.matrix_units();
  double worst = 0.0;
  auto check = [&](const CMat& a, const CMat& b) {
    worst = std::max(worst, std::abs(phi(a * b) - phi(a) * phi(b)));
  };
  for (const auto& a : units)
    for (const auto& b : units) check(a, b);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_element = [&]() {
    CMat a = CMat::zero(alg.dim(), alg.dim());
    for (const auto& u : units) a += u * Complex(gauss(rng), gauss(rng));
    return a;
  };
  for (int s = 0; s < samples; ++s) check(random_element(), random_element());
  return worst;
}

}  // namespace kslat
