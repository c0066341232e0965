#pragma once

#include <iosfwd>
#include <string>

#include "kslat/rays.hpp"

namespace kslat {

// Ray-set document format.
//
//   # optional comment lines anywhere
//   dim 3
//   mode exact          (or: mode float)
//   rays 33
//   1 0 0
//   1 -1 sqrt(2)
//   1/2 1 -2*sqrt(2)
//   ...
//
// One ray per line, whitespace-separated real components. Exact entries are
// rational literals `p/q` or quadratic surds `a+b*sqrt(r)` (integer r > 1,
// rational a, b); float entries are decimals. The declared count must match
// the body.
struct RayDocumentOptions {
  bool dedupe = false;  // drop projectively parallel duplicates
  double tol = 1e-9;    // float-mode orthogonality tolerance
};

RayConfiguration load_ray_document(std::istream& in,
                                   const RayDocumentOptions& opts = {});
RayConfiguration load_ray_string(const std::string& text,
                                 const RayDocumentOptions& opts = {});
RayConfiguration load_ray_file(const std::string& path,
                               const RayDocumentOptions& opts = {});

// Canonical re-serialization of a configuration; the configuration hash is
// FNV-1a over exactly this text.
std::string canonical_document(const RayConfiguration& cfg);

Surd parse_exact_scalar(const std::string& token);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace kslat
