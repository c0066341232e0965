#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kslat/matrix.hpp"
#include "kslat/rays.hpp"

namespace kslat {

using Json = nlohmann::json;

// A finite-dimensional von Neumann algebra presented as a direct sum of full
// matrix blocks M_{n_1} + ... + M_{n_k}, acting block-diagonally on C^N.
class FiniteAlgebra {
 public:
  explicit FiniteAlgebra(std::vector<int> blocks);

  const std::vector<int>& blocks() const { return blocks_; }
  int num_blocks() const { return int(blocks_.size()); }
  int dim() const { return dim_; }
  int block_offset(int b) const { return offsets_.at(b); }

  // Central projection onto block b (the identity of that block).
  CMat central_projection(int b) const;
  // Central projection onto all size-1 blocks (the largest abelian central
  // summand cut out by minimal central projections of relative dimension 1).
  CMat abelian_central_projection() const;

  // Places a block-sized matrix at block b inside the ambient space.
  CMat embed(int b, const CMat& a) const;
  // Ambient matrix unit e_{ij} of block b.
  CMat matrix_unit(int b, int i, int j) const;
  // All matrix units, in block-major order; a linear basis of the algebra.
  std::vector<CMat> matrix_units() const;

  // Membership: block-diagonal with the declared block structure.
  bool contains(const CMat& a, double tol = 1e-9) const;

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

// ---------------------------------------------------------------------------
// Density operators and the measures they induce on projections.

class DensityOperator {
 public:
  // Validates positivity (eigenvalues >= -1e-12) and unit trace (1e-10).
  explicit DensityOperator(CMat rho);

  static DensityOperator diagonal(const std::vector<double>& probs);
  static DensityOperator pure(const CMat& v);  // |v><v| / <v,v>
  static DensityOperator maximally_mixed(int n);
  // G G^* / tr(G G^*) for a seeded complex Gaussian G.
  static DensityOperator random(int n, std::uint64_t seed);

  const CMat& matrix() const { return rho_; }
  int dim() const { return rho_.rows(); }

  // mu(E) = Re tr(rho E).
  double value(const CMat& projection) const;

 private:
  CMat rho_;
};

// The induced values over a whole projection family (float mode).
std::vector<double> gleason_values(const DensityOperator& rho,
                                   const ProjectionFamily& fam);

double operator_norm(const CMat& a);

// A projection whose induced value is strictly inside (delta, 1 - delta),
// witnessing that tr(rho .) is not two-valued. Tries rank-k standard-basis
// projections first, then seeded Haar rotations of them.
struct FractionalWitness {
  bool found = false;
  CMat projection;
  double value = 0.0;
  std::string how;
};

FractionalWitness fractional_witness(const DensityOperator& rho,
                                     double delta = 1e-6,
                                     int max_rotations = 100,
                                     std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Equivalence of projections and the multiplicative-state obstruction.

// Splits a projection of rank m*pieces into `pieces` mutually orthogonal,
// mutually equivalent subprojections; parts[j] = isometries[j] isometries[j]^*
// and isometries[j]^* isometries[j] = parts[0]. Throws IndivisibleRank when
// the rank does not divide evenly.
struct ProjectionPartition {
  std::vector<CMat> parts;
  std::vector<CMat> isometries;
};

ProjectionPartition partition_projection(const CMat& e, int pieces,
                                         double tol = 1e-9);

// Certificate that M_n (n >= 2) admits no multiplicative state: the identity
// splits into n equivalent rank-1 projections, so any multiplicative state
// would give them a common value v in {0,1} summing to n*v = 1.
Json multiplicative_no_go_witness(int n);
bool verify_no_go_witness(const Json& cert, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Central decomposition and the existence question for valuations.

enum class ValuationVerdict {
  ExistsAbelian,   // a nontrivial abelian central summand carries a character
  ExistsI2Finite,  // only a 2x2 block escapes the obstruction
  None,            // every central summand is obstructed
};

const char* valuation_verdict_name(ValuationVerdict v);

struct CenterDecomposition {
  ValuationVerdict verdict = ValuationVerdict::None;
  CMat abelian_part;               // central projection onto size-1 blocks
  std::vector<int> abelian_blocks;
  int valuation_block = -1;        // size-1 block carrying the character
  std::string detail;

  // Defined when verdict == ExistsAbelian: the character through the chosen
  // one-dimensional block, which vanishes on the complementary summand.
  std::function<Complex(const CMat&)> valuation;
};

CenterDecomposition decompose_center(const FiniteAlgebra& alg);

// ---------------------------------------------------------------------------
// GNS representation of a state on a finite algebra.

using State = std::function<Complex(const CMat&)>;

struct GnsResult {
  int dim = 0;                   // dimension of the representation space
  CMat gram;                     // <B_a, B_b> = phi(B_a^* B_b)
  std::vector<CMat> rep;         // representatives of the matrix-unit basis
  CMat cyclic;                   // coordinates of the class of the identity
  double rep_residual = 0.0;     // homomorphism + vector-state reconstruction
};

// phi must be positive (NotPositive) and unital (NotNormalized); vectors of
// squared length <= null_tol are divided out.
GnsResult gns_construct(const FiniteAlgebra& alg, const State& phi,
                        double null_tol = 1e-10);

// max |phi(AB) - phi(A)phi(B)| over all matrix-unit pairs plus `samples`
// seeded random pairs from the algebra.
double multiplicativity_residual(const FiniteAlgebra& alg, const State& phi,
                                 int samples = 50, std::uint64_t seed = 7);

}  // namespace kslat
