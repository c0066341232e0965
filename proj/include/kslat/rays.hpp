#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslat/projection.hpp"

namespace kslat {

enum class Mode { Exact, Float };

// A finite set of projectively distinct rays with their orthogonality
// relation. Exact configurations keep unnormalized field vectors so that
// orthogonality is decided with no tolerance at all.
class RayConfiguration {
 public:
  int dim = 0;
  Mode mode = Mode::Exact;
  std::vector<XMat> exact_rays;   // populated in exact mode (column vectors)
  std::vector<CMat> float_rays;   // always populated (unit vectors)
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> orth;
  std::uint64_t hash = 0;  // hash of the canonical source document

  int size() const { return int(float_rays.size()); }
  bool orthogonal(int i, int j) const { return orth[i][j]; }

  Projection<Complex> projection_f(int i) const {
    return ray_projection(float_rays[i]);
  }
  Projection<XComplex> projection_x(int i) const {
    return ray_projection(exact_rays.at(i));
  }
};

// Builds a configuration from raw vectors. Parallel duplicates either throw
// or are dropped, per `dedupe`.
RayConfiguration make_ray_configuration(int dim, std::vector<XMat> rays,
                                        std::vector<std::string> labels = {},
                                        bool dedupe = false);
RayConfiguration make_ray_configuration_float(
    int dim, std::vector<CMat> rays, std::vector<std::string> labels = {},
    bool dedupe = false, double tol = 1e-9);

// An abelian context generated by pairwise orthogonal rays. Its atoms are
// the listed ray projections plus, when they do not resolve the identity,
// one remainder projection I - sum. `complete` means the rays alone resolve
// the identity (d of them), which is what imposes exactly-one downstream.
struct ContextInfo {
  std::vector<int> rays;  // sorted ray ids, pairwise orthogonal
  bool complete = false;
  bool maximal = false;

  bool has_remainder() const { return !complete; }
  int atom_count() const { return int(rays.size()) + (complete ? 0 : 1); }
  // Atom indices: 0..rays.size()-1 are rays, rays.size() is the remainder.
  int remainder_atom() const { return int(rays.size()); }
};

struct ContextSet {
  std::vector<ContextInfo> contexts;

  std::vector<int> maximal_ids() const;
  std::vector<int> complete_ids() const;
};

// All maximal pairwise-orthogonal ray subsets; with `closure`, also every
// context generated by a nonempty orthogonal subset, canonicalized so that a
// rank-1 remainder that coincides with a configuration ray is absorbed into
// the ray list. Output order is canonical (by ray list), independent of the
// input ray order up to relabeling.
ContextSet enumerate_contexts(const RayConfiguration& config,
                              bool closure = true);

// Atom projections of a context (remainder last), in the requested mode.
std::vector<Projection<Complex>> context_atoms_f(const RayConfiguration& cfg,
                                                 const ContextInfo& ctx);
std::vector<Projection<XComplex>> context_atoms_x(const RayConfiguration& cfg,
                                                  const ContextInfo& ctx);

// The finite projection family a configuration spans: 0, I, and every sum of
// an orthogonal ray subset lying inside one maximal context. Elements are
// deduplicated by ray subset; subsets whose sums coincide as projections are
// recorded as aliases (a measure must be well defined on them).
struct FamilyElement {
  enum class Kind { Zero, Identity, RaySum };
  Kind kind = Kind::RaySum;
  std::vector<int> rays;  // sorted; empty for Zero/Identity
};

struct ProjectionFamily {
  const RayConfiguration* config = nullptr;
  std::vector<FamilyElement> elements;
  int zero_index = -1;
  int identity_index = -1;
  std::vector<int> ray_element;             // ray id -> element index
  std::vector<std::pair<int, int>> aliases;  // equal projections
  // (e, f, e_join_f) with EF = 0; additivity must hold on these.
  std::vector<std::array<int, 3>> additive_triples;

  int size() const { return int(elements.size()); }
};

ProjectionFamily build_projection_family(const RayConfiguration& config,
                                         const ContextSet& ctxs);

Projection<Complex> family_projection_f(const ProjectionFamily& fam, int e);
Projection<XComplex> family_projection_x(const ProjectionFamily& fam, int e);

}  // namespace kslat
