#include "kslat/rays.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kslat {

namespace {

bool parallel_exact(const XMat& u, const XMat& v) {
  const int n = u.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(u(i, 0) * v(j, 0) - u(j, 0) * v(i, 0)).is_zero()) return false;
  return true;
}

bool parallel_float(const CMat& u, const CMat& v, double tol) {
  // Unit vectors: parallel iff |<u,v>| = 1.
  return std::abs(std::abs(inner(u, v)) - 1.0) <= tol;
}

CMat normalize(const CMat& v) {
  double n = std::sqrt(std::abs(inner(v, v)));
  if (n < 1e-300) throw ZeroVector("zero ray vector");
  CMat out = v;
  out *= Complex(1.0 / n, 0.0);
  return out;
}

void finish_labels(std::vector<std::string>* labels, size_t n) {
  if (labels->empty())
    for (size_t i = 0; i < n; ++i) labels->push_back("r" + std::to_string(i));
  if (labels->size() != n) throw ParseError("label count mismatch");
}

}  // namespace

RayConfiguration make_ray_configuration(int dim, std::vector<XMat> rays,
                                        std::vector<std::string> labels,
                                        bool dedupe) {
  if (dim <= 0 || dim > kDefaultDimensionCap)
    throw ParseError("dimension out of range");
  RayConfiguration cfg;
  cfg.dim = dim;
  cfg.mode = Mode::Exact;
  finish_labels(&labels, rays.size());
  for (size_t i = 0; i < rays.size(); ++i) {
    const XMat& v = rays[i];
    if (v.rows() != dim || v.cols() != 1)
      throw DimensionMismatch("ray has wrong dimension");
    if (v.is_zero(0.0)) throw ZeroVector("zero ray vector");
    bool dup = false;
    for (const XMat& u : cfg.exact_rays)
      if (parallel_exact(u, v)) {
        dup = true;
        break;
      }
    if (dup) {
      if (!dedupe) throw ParseError("duplicate ray (projectively parallel)");
      continue;
    }
    cfg.exact_rays.push_back(v);
    cfg.float_rays.push_back(normalize(to_cmat(v)));
    cfg.labels.push_back(labels[i]);
  }
  const int n = int(cfg.exact_rays.size());
  cfg.orth.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool o = inner(cfg.exact_rays[i], cfg.exact_rays[j]).is_zero();
      cfg.orth[i][j] = cfg.orth[j][i] = o;
    }
  return cfg;
}

RayConfiguration make_ray_configuration_float(int dim, std::vector<CMat> rays,
                                              std::vector<std::string> labels,
                                              bool dedupe, double tol) {
  if (dim <= 0 || dim > kDefaultDimensionCap)
    throw ParseError("dimension out of range");
  RayConfiguration cfg;
  cfg.dim = dim;
  cfg.mode = Mode::Float;
  finish_labels(&labels, rays.size());
  for (size_t i = 0; i < rays.size(); ++i) {
    CMat v = rays[i];
    if (v.rows() != dim || v.cols() != 1)
      throw DimensionMismatch("ray has wrong dimension");
    if (v.is_zero(1e-12)) throw ZeroVector("zero ray vector");
    v = normalize(v);
    bool dup = false;
    for (const CMat& u : cfg.float_rays)
      if (parallel_float(u, v, tol)) {
        dup = true;
        break;
      }
    if (dup) {
      if (!dedupe) throw ParseError("duplicate ray (projectively parallel)");
      continue;
    }
    cfg.float_rays.push_back(v);
    cfg.labels.push_back(labels[i]);
  }
  const int n = int(cfg.float_rays.size());
  cfg.orth.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool o = std::abs(inner(cfg.float_rays[i], cfg.float_rays[j])) <= tol;
      cfg.orth[i][j] = cfg.orth[j][i] = o;
    }
  return cfg;
}

std::vector<int> ContextSet::maximal_ids() const {
  std::vector<int> out;
  for (size_t i = 0; i < contexts.size(); ++i)
    if (contexts[i].maximal) out.push_back(int(i));
  return out;
}

std::vector<int> ContextSet::complete_ids() const {
  std::vector<int> out;
  for (size_t i = 0; i < contexts.size(); ++i)
    if (contexts[i].complete) out.push_back(int(i));
  return out;
}

namespace {

void bron_kerbosch(const RayConfiguration& cfg, std::vector<int>& r,
                   std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>* cliques) {
  if (p.empty() && x.empty()) {
    cliques->push_back(r);
    return;
  }
  // Pivot on the vertex with most neighbors in p.
  int pivot = -1, best = -1;
  for (int u : p) {
    int cnt = 0;
    for (int w : p)
      if (cfg.orthogonal(u, w)) ++cnt;
    if (cnt > best) {
      best = cnt;
      pivot = u;
    }
  }
  for (int u : x) {
    int cnt = 0;
    for (int w : p)
      if (cfg.orthogonal(u, w)) ++cnt;
    if (cnt > best) {
      best = cnt;
      pivot = u;
    }
  }
  std::vector<int> candidates;
  for (int v : p)
    if (pivot < 0 || !cfg.orthogonal(pivot, v)) candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> np, nx;
    for (int w : p)
      if (cfg.orthogonal(v, w)) np.push_back(w);
    for (int w : x)
      if (cfg.orthogonal(v, w)) nx.push_back(w);
    r.push_back(v);
    bron_kerbosch(cfg, r, np, nx, cliques);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

template <class S>
Mat<S> ray_sum(const RayConfiguration& cfg, const std::vector<int>& rays);

template <>
CMat ray_sum<Complex>(const RayConfiguration& cfg,
                      const std::vector<int>& rays) {
  CMat p = CMat::zero(cfg.dim, cfg.dim);
  for (int r : rays) p += cfg.projection_f(r).op;
  return p;
}

template <>
XMat ray_sum<XComplex>(const RayConfiguration& cfg,
                       const std::vector<int>& rays) {
  XMat p = XMat::zero(cfg.dim, cfg.dim);
  for (int r : rays) p += cfg.projection_x(r).op;
  return p;
}

// If |S| = d-1, the remainder is rank one; when it coincides with a
// configuration ray, the generated algebra equals the one generated by the
// full basis, so the canonical form absorbs that ray.
std::vector<int> canonicalize_subset(const RayConfiguration& cfg,
                                     std::vector<int> s) {
  std::sort(s.begin(), s.end());
  if (int(s.size()) != cfg.dim - 1) return s;
  for (int cand = 0; cand < cfg.size(); ++cand) {
    if (std::find(s.begin(), s.end(), cand) != s.end()) continue;
    bool orth_all = true;
    for (int r : s)
      if (!cfg.orthogonal(cand, r)) {
        orth_all = false;
        break;
      }
    if (!orth_all) continue;
    // cand is orthogonal to all of s; with |s| = d-1 it spans the remainder.
    s.push_back(cand);
    std::sort(s.begin(), s.end());
    return s;
  }
  return s;
}

}  // namespace

ContextSet enumerate_contexts(const RayConfiguration& config, bool closure) {
  std::vector<std::vector<int>> cliques;
  std::vector<int> r, p, x;
  for (int i = 0; i < config.size(); ++i) p.push_back(i);
  bron_kerbosch(config, r, p, x, &cliques);
  for (auto& c : cliques) std::sort(c.begin(), c.end());

  std::set<std::vector<int>> maximal(cliques.begin(), cliques.end());
  std::set<std::vector<int>> nodes;
  for (const auto& c : cliques) {
    if (!closure) {
      nodes.insert(c);
      continue;
    }
    const int k = int(c.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> sub;
      for (int b = 0; b < k; ++b)
        if (mask & (1u << b)) sub.push_back(c[b]);
      nodes.insert(canonicalize_subset(config, sub));
    }
  }

  ContextSet out;
  for (const auto& s : nodes) {
    ContextInfo ctx;
    ctx.rays = s;
    ctx.complete = int(s.size()) == config.dim;
    ctx.maximal = maximal.count(s) > 0;
    out.contexts.push_back(std::move(ctx));
  }
  return out;
}

std::vector<Projection<Complex>> context_atoms_f(const RayConfiguration& cfg,
                                                 const ContextInfo& ctx) {
  std::vector<Projection<Complex>> atoms;
  for (int r : ctx.rays) atoms.push_back(cfg.projection_f(r));
  if (ctx.has_remainder()) {
    CMat rem = CMat::identity(cfg.dim) - ray_sum<Complex>(cfg, ctx.rays);
    atoms.push_back(make_projection(rem, 1e-8));
  }
  return atoms;
}

std::vector<Projection<XComplex>> context_atoms_x(const RayConfiguration& cfg,
                                                  const ContextInfo& ctx) {
  std::vector<Projection<XComplex>> atoms;
  for (int r : ctx.rays) atoms.push_back(cfg.projection_x(r));
  if (ctx.has_remainder()) {
    XMat rem = XMat::identity(cfg.dim) - ray_sum<XComplex>(cfg, ctx.rays);
    atoms.push_back(make_projection(rem, 0.0));
  }
  return atoms;
}

ProjectionFamily build_projection_family(const RayConfiguration& config,
                                         const ContextSet& ctxs) {
  ProjectionFamily fam;
  fam.config = &config;

  std::map<std::vector<int>, int> index;
  auto intern = [&](FamilyElement e) {
    auto key = e.rays;
    if (e.kind == FamilyElement::Kind::Zero) key = {-1};
    if (e.kind == FamilyElement::Kind::Identity) key = {-2};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = fam.size();
    index[key] = id;
    fam.elements.push_back(std::move(e));
    return id;
  };

  fam.zero_index = intern({FamilyElement::Kind::Zero, {}});
  fam.identity_index = intern({FamilyElement::Kind::Identity, {}});
  for (int i = 0; i < config.size(); ++i)
    fam.ray_element.push_back(intern({FamilyElement::Kind::RaySum, {i}}));

  std::set<std::array<int, 3>> triples;
  for (int cid : ctxs.maximal_ids()) {
    const auto& rays = ctxs.contexts[cid].rays;
    const int k = int(rays.size());
    std::vector<int> subset_elem(1u << k, -1);
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> sub;
      for (int b = 0; b < k; ++b)
        if (mask & (1u << b)) sub.push_back(rays[b]);
      subset_elem[mask] = intern({FamilyElement::Kind::RaySum, sub});
    }
    for (unsigned a = 1; a < (1u << k); ++a)
      for (unsigned b = 1; b < (1u << k); ++b) {
        if ((a & b) != 0 || a > b) continue;
        std::array<int, 3> t = {subset_elem[a], subset_elem[b],
                                subset_elem[a | b]};
        triples.insert(t);
      }
  }
  fam.additive_triples.assign(triples.begin(), triples.end());

  // Aliases: distinct ray subsets whose sums agree as projections, plus the
  // identity itself for complete-context sums.
  for (int e = 0; e < fam.size(); ++e) {
    const auto& el = fam.elements[e];
    if (el.kind != FamilyElement::Kind::RaySum) continue;
    if (int(el.rays.size()) == config.dim)
      fam.aliases.push_back({e, fam.identity_index});
    for (int f = e + 1; f < fam.size(); ++f) {
      const auto& fl = fam.elements[f];
      if (fl.kind != FamilyElement::Kind::RaySum) continue;
      if (fl.rays.size() != el.rays.size()) continue;
      bool equal;
      if (config.mode == Mode::Exact) {
        equal = (ray_sum<XComplex>(config, el.rays) ==
                 ray_sum<XComplex>(config, fl.rays));
      } else {
        equal = ray_sum<Complex>(config, el.rays)
                    .approx_equal(ray_sum<Complex>(config, fl.rays), 1e-8);
      }
      if (equal) fam.aliases.push_back({e, f});
    }
  }
  return fam;
}

Projection<Complex> family_projection_f(const ProjectionFamily& fam, int e) {
  const auto& el = fam.elements.at(e);
  const auto& cfg = *fam.config;
  switch (el.kind) {
    case FamilyElement::Kind::Zero:
      return Projection<Complex>{CMat::zero(cfg.dim, cfg.dim), 0};
    case FamilyElement::Kind::Identity:
      return Projection<Complex>{CMat::identity(cfg.dim), cfg.dim};
    case FamilyElement::Kind::RaySum:
      return make_projection(ray_sum<Complex>(cfg, el.rays), 1e-8);
  }
  throw Error("unreachable");
}

Projection<XComplex> family_projection_x(const ProjectionFamily& fam, int e) {
  const auto& el = fam.elements.at(e);
  const auto& cfg = *fam.config;
  switch (el.kind) {
    case FamilyElement::Kind::Zero:
      return Projection<XComplex>{XMat::zero(cfg.dim, cfg.dim), 0};
    case FamilyElement::Kind::Identity:
      return Projection<XComplex>{XMat::identity(cfg.dim), cfg.dim};
    case FamilyElement::Kind::RaySum:
      return make_projection(ray_sum<XComplex>(cfg, el.rays), 0.0);
  }
  throw Error("unreachable");
}

}  // namespace kslat
