#include <doctest.h>

#include <sstream>

#include "kslat/raydoc.hpp"
#include "kslat/search.hpp"

using namespace kslat;

namespace {

RayConfiguration load_data(const std::string& name) {
  return load_ray_file(std::string(KSLAT_DATA_DIR) + "/" + name);
}

struct Built {
  RayConfiguration cfg;
  ContextSet ctxs;
  ConstraintModel model;
};

Built build(const std::string& name) {
  Built b;
  b.cfg = load_data(name);
  b.ctxs = enumerate_contexts(b.cfg);
  b.model = build_constraint_model(b.cfg, b.ctxs);
  return b;
}

// Minimal DIMACS evaluation, independent of the model structures.
bool satisfies_cnf(const std::string& dimacs, const std::vector<int>& assign) {
  std::istringstream in(dimacs);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == 'p') continue;
    std::istringstream ls(line);
    int lit;
    bool clause_ok = false;
    while (ls >> lit && lit != 0) {
      int var = std::abs(lit) - 1;
      bool val = assign.at(var) == 1;
      if ((lit > 0) == val) clause_ok = true;
    }
    if (!clause_ok) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("a complete basis is colorable with one deterministic witness") {
  Built b = build("basis3.rays");
  SearchOutcome out = ks_search(b.model);
  REQUIRE(out.verdict == Verdict::SAT);
  CHECK(out.witness == std::vector<int>{0, 0, 1});
  CHECK(check_assignment(b.model, out.witness));
  std::string why;
  CHECK(verify_certificate(b.model, out.certificate, &why));
}

TEST_CASE("antipodal pairs: the full solution set is enumerated") {
  Built b = build("dim2_pairs.rays");
  auto all = enumerate_two_valued_measures(b.model);
  CHECK(all.size() == 16);  // one free exactly-one choice per pair
  for (const auto& w : all) CHECK(check_assignment(b.model, w));
  // deterministic lexicographic order
  CHECK(all.front() == std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(all.back() == std::vector<int>{1, 0, 1, 0, 1, 0, 1, 0});
}

TEST_CASE("the 33-ray configuration is uncolorable with a replayable proof") {
  Built b = build("peres33.rays");
  SearchOutcome out = ks_search(b.model);
  REQUIRE(out.verdict == Verdict::UNSAT);
  std::string why;
  CHECK(verify_certificate(b.model, out.certificate, &why));
  CHECK(why.empty());
}

TEST_CASE("tampered certificates are rejected") {
  Built b = build("peres33.rays");
  SearchOutcome out = ks_search(b.model);
  REQUIRE(out.verdict == Verdict::UNSAT);
  std::string why;

  Json wrong_hash = out.certificate;
  wrong_hash["config_hash"] = "0000000000000000";
  CHECK_FALSE(verify_certificate(b.model, wrong_hash, &why));

  Json fake_leaf = out.certificate;
  fake_leaf["tree"] = Json{
      {"leaf", Json{{"kind", "orthogonal-pair"}, {"rays", {0, 1}}}}};
  CHECK_FALSE(verify_certificate(b.model, fake_leaf, &why));

  Json fake_sat = out.certificate;
  fake_sat["verdict"] = "SAT";
  fake_sat["witness"] = std::vector<int>(b.model.num_rays(), 0);
  CHECK_FALSE(verify_certificate(b.model, fake_sat, &why));

  Json wrong_count = out.certificate;
  wrong_count["num_rays"] = 5;
  CHECK_FALSE(verify_certificate(b.model, wrong_count, &why));
}

TEST_CASE("certificates do not transfer between configurations") {
  Built peres = build("peres33.rays");
  Built ceg = build("ceg18.rays");
  SearchOutcome out = ks_search(peres.model);
  std::string why;
  CHECK_FALSE(verify_certificate(ceg.model, out.certificate, &why));
  CHECK(why.find("hash") != std::string::npos);
}

TEST_CASE("the verdict is invariant under ray permutation") {
  RayConfiguration orig = load_data("peres33.rays");
  // reverse the ray order in the document body
  std::string doc = canonical_document(orig);
  std::istringstream in(doc);
  std::string line;
  std::vector<std::string> header, body;
  while (std::getline(in, line)) {
    if (header.size() < 3) {
      header.push_back(line);
    } else {
      body.push_back(line);
    }
  }
  std::string reversed;
  for (const auto& h : header) reversed += h + "\n";
  for (auto it = body.rbegin(); it != body.rend(); ++it) reversed += *it + "\n";
  RayConfiguration cfg = load_ray_string(reversed);
  ContextSet ctxs = enumerate_contexts(cfg);
  ConstraintModel model = build_constraint_model(cfg, ctxs);
  SearchOutcome out = ks_search(model);
  CHECK(out.verdict == Verdict::UNSAT);
  CHECK(model.complete_contexts.size() == 16);
  std::string why;
  CHECK(verify_certificate(model, out.certificate, &why));
}

TEST_CASE("the verdict is invariant under a rigid rotation") {
  RayConfiguration orig = load_data("peres33.rays");
  // rotate every ray by a fixed orthogonal matrix (float mode)
  double c = std::cos(0.37), s = std::sin(0.37);
  std::vector<CMat> rotated;
  for (int i = 0; i < orig.size(); ++i) {
    const CMat& v = orig.float_rays[i];
    CMat w(3, 1);
    w(0, 0) = c * v(0, 0) - s * v(1, 0);
    w(1, 0) = s * v(0, 0) + c * v(1, 0);
    w(2, 0) = v(2, 0);
    rotated.push_back(std::move(w));
  }
  RayConfiguration cfg = make_ray_configuration_float(3, rotated);
  ContextSet ctxs = enumerate_contexts(cfg);
  ConstraintModel model = build_constraint_model(cfg, ctxs);
  CHECK(model.complete_contexts.size() == 16);
  CHECK(ks_search(model).verdict == Verdict::UNSAT);
}

TEST_CASE("an exhausted node budget is reported as indeterminate") {
  Built b = build("peres33.rays");
  SearchOptions opts;
  opts.node_budget = 3;
  SearchOutcome out = ks_search(b.model, opts);
  CHECK(out.verdict == Verdict::INDETERMINATE);
  std::string why;
  CHECK_FALSE(verify_certificate(b.model, out.certificate, &why));
}

TEST_CASE("CNF export matches the model and its witnesses") {
  Built b = build("dim2_pairs.rays");
  Json varmap;
  std::string cnf = export_cnf(b.model, &varmap);
  CHECK(cnf.find("p cnf 8 ") != std::string::npos);
  CHECK(varmap["num_vars"] == 8);
  CHECK(varmap["variables"].size() == 8);
  for (const auto& w : enumerate_two_valued_measures(b.model))
    CHECK(satisfies_cnf(cnf, w));
  // a violating assignment fails some clause
  CHECK_FALSE(satisfies_cnf(cnf, std::vector<int>(8, 0)));
}
