#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kslat/algebra.hpp"
#include "kslat/measures.hpp"
#include "kslat/presheaf.hpp"
#include "kslat/raydoc.hpp"
#include "kslat/search.hpp"

namespace {

using kslat::Json;

constexpr const char* kVersion = "0.1.0";

// Reports land on disk atomically: full write to a sibling temp file, then
// rename over the target.
void write_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw kslat::Error("cannot write " + tmp);
    out << data;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw kslat::Error("cannot move report into place: " + path);
}

Json base_report(const std::string& command) {
  Json rep{{"tool", "kslat"}, {"report_version", 1}, {"version", kVersion},
           {"command", command}};
  if (const char* threads = std::getenv("KSLAT_THREADS"))
    rep["threads_requested"] = std::atoi(threads);
  return rep;
}

void emit(const Json& rep, const std::string& out_path) {
  std::string text = rep.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_atomic(out_path, text);
  }
}

std::vector<int> parse_blocks(const std::string& spec) {
  std::vector<int> blocks;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (cur.empty()) throw kslat::BadBlockSpec("empty block in: " + spec);
      blocks.push_back(std::stoi(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      throw kslat::BadBlockSpec("bad character in block spec: " + spec);
    }
  }
  return blocks;
}

kslat::DensityOperator parse_density(const std::string& spec, int n,
                                     std::uint64_t seed) {
  if (spec == "mixed") return kslat::DensityOperator::maximally_mixed(n);
  if (spec == "random") return kslat::DensityOperator::random(n, seed);
  if (spec.rfind("e", 0) == 0 && spec.size() > 1) {
    int k = std::stoi(spec.substr(1));
    if (k < 1 || k > n) throw kslat::BadDensitySpec("basis index out of range");
    kslat::CMat v(n, 1);
    v(k - 1, 0) = 1.0;
    return kslat::DensityOperator::pure(v);
  }
  if (spec.rfind("diag:", 0) == 0) {
    std::vector<double> probs;
    std::string cur;
    for (char c : spec.substr(5) + ",") {
      if (c == ',') {
        probs.push_back(std::stod(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (int(probs.size()) != n)
      throw kslat::BadDensitySpec("diagonal length does not match dimension");
    return kslat::DensityOperator::diagonal(probs);
  }
  throw kslat::BadDensitySpec("unknown density spec: " + spec +
                              " (use mixed, random, e<k>, diag:p1,...)");
}

int run_ks(const std::string& rayfile, long long budget,
           const std::string& cnf_path, bool enumerate_all,
           const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  kslat::RayConfiguration cfg = kslat::load_ray_file(rayfile);
  kslat::ContextSet ctxs = kslat::enumerate_contexts(cfg);
  kslat::ConstraintModel model = kslat::build_constraint_model(cfg, ctxs);

  Json rep = base_report("ks");
  rep["input"] = rayfile;
  rep["dim"] = cfg.dim;
  rep["mode"] = cfg.mode == kslat::Mode::Exact ? "exact" : "float";
  rep["num_rays"] = cfg.size();
  rep["num_contexts"] = int(ctxs.contexts.size());
  rep["num_complete_maximal_contexts"] = int(model.complete_contexts.size());

  if (!cnf_path.empty()) {
    Json varmap;
    std::string cnf = kslat::export_cnf(model, &varmap);
    write_atomic(cnf_path, cnf);
    write_atomic(cnf_path + ".vars.json", varmap.dump(2) + "\n");
    rep["cnf"] = cnf_path;
  }

  kslat::SearchOptions opts;
  opts.node_budget = budget;
  kslat::SearchOutcome outcome = kslat::ks_search(model, opts);
  rep["verdict"] = kslat::verdict_name(outcome.verdict);
  rep["certificate"] = outcome.certificate;
  if (enumerate_all && outcome.verdict == kslat::Verdict::SAT) {
    auto all = kslat::enumerate_two_valued_measures(model, opts);
    rep["num_two_valued_measures"] = int(all.size());
    rep["two_valued_measures"] = all;
  }
  std::string why;
  rep["certificate_verified"] =
      kslat::verify_certificate(model, outcome.certificate, &why);
  if (!why.empty()) rep["certificate_rejection"] = why;
  rep["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  emit(rep, out_path);
  switch (outcome.verdict) {
    case kslat::Verdict::SAT:
      return 0;
    case kslat::Verdict::UNSAT:
      return 1;
    case kslat::Verdict::INDETERMINATE:
      return 2;
  }
  return 3;
}

int run_algebra(const std::string& blockspec, int no_go,
                const std::string& out_path) {
  Json rep = base_report("algebra");
  rep["blocks"] = parse_blocks(blockspec);
  kslat::FiniteAlgebra alg(parse_blocks(blockspec));
  kslat::CenterDecomposition dec = kslat::decompose_center(alg);
  rep["dim"] = alg.dim();
  rep["verdict"] = kslat::valuation_verdict_name(dec.verdict);
  rep["detail"] = dec.detail;
  rep["abelian_blocks"] = dec.abelian_blocks;
  if (no_go >= 2) {
    Json cert = kslat::multiplicative_no_go_witness(no_go);
    std::string why;
    rep["no_go_certificate"] = cert;
    rep["no_go_verified"] = kslat::verify_no_go_witness(cert, &why);
    if (!why.empty()) rep["no_go_rejection"] = why;
  }
  emit(rep, out_path);
  return 0;
}

int run_gleason(const std::string& rayfile, const std::string& rho_spec,
                std::uint64_t seed, const std::string& out_path) {
  kslat::RayConfiguration cfg = kslat::load_ray_file(rayfile);
  kslat::ContextSet ctxs = kslat::enumerate_contexts(cfg);
  kslat::ProjectionFamily fam = kslat::build_projection_family(cfg, ctxs);
  kslat::DensityOperator rho = parse_density(rho_spec, cfg.dim, seed);

  Json rep = base_report("gleason");
  rep["input"] = rayfile;
  rep["rho"] = rho_spec;
  rep["dim"] = cfg.dim;
  rep["family_size"] = fam.size();

  std::vector<double> values = kslat::gleason_values(rho, fam);
  auto check = kslat::check_probability_measure(fam, values, 1e-10);
  rep["measure_ok"] = check.pass();
  rep["max_measure_residual"] = check.max_residual;
  rep["values"] = values;

  kslat::FractionalWitness w = kslat::fractional_witness(rho);
  rep["fractional_witness"] = Json{
      {"found", w.found}, {"value", w.value}, {"how", w.how}};

  kslat::PresheafBundle bundle = kslat::build_presheaf(cfg, ctxs);
  kslat::StateSection section = kslat::state_presheaf_section(bundle, rho);
  rep["state_section_max_edge_residual"] = section.max_edge_residual;
  rep["state_section_class"] = kslat::classify_state_section(bundle, section);
  emit(rep, out_path);
  return 0;
}

int run_manifest(const std::string& rayfile, long long budget,
                 const std::string& out_path) {
  kslat::RayConfiguration cfg = kslat::load_ray_file(rayfile);
  kslat::ContextSet ctxs = kslat::enumerate_contexts(cfg);
  kslat::ProjectionFamily fam = kslat::build_projection_family(cfg, ctxs);
  kslat::ConstraintModel model = kslat::build_constraint_model(cfg, ctxs);
  kslat::SearchOptions opts;
  opts.node_budget = budget;
  kslat::SearchOutcome outcome = kslat::ks_search(model, opts);
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx",
                (unsigned long long)cfg.hash);
  Json manifest{
      {"format", "ray-manifest"},
      {"version", 1},
      {"dim", cfg.dim},
      {"mode", cfg.mode == kslat::Mode::Exact ? "exact" : "float"},
      {"num_rays", cfg.size()},
      {"config_hash", hash},
      {"census",
       Json{{"num_contexts", int(ctxs.contexts.size())},
            {"num_maximal", int(ctxs.maximal_ids().size())},
            {"num_complete_maximal", int(model.complete_contexts.size())},
            {"family_size", fam.size()},
            {"num_aliases", int(fam.aliases.size())},
            {"num_additive_triples", int(fam.additive_triples.size())}}},
      {"verdict", kslat::verdict_name(outcome.verdict)}};
  emit(manifest, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-algebra coloring toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string rayfile, out_path, cnf_path, blockspec, rho_spec = "mixed";
  long long budget = 100000000;
  bool enumerate_all = false;
  int no_go = 0;
  std::uint64_t seed = 1;

  CLI::App* ks = app.add_subcommand(
      "ks", "color a ray configuration; exit 0 SAT, 1 UNSAT, 2 indeterminate");
  ks->add_option("rayfile", rayfile, "ray document")->required();
  ks->add_option("--budget", budget, "search node budget");
  ks->add_option("--export-cnf", cnf_path, "write DIMACS CNF + variable map");
  ks->add_flag("--enumerate-all", enumerate_all,
               "list every admissible assignment when satisfiable");
  ks->add_option("-o,--output", out_path, "write the JSON report here");

  CLI::App* algebra = app.add_subcommand(
      "algebra", "central decomposition of a block algebra");
  algebra->add_option("blocks", blockspec, "block sizes, e.g. 1,3")->required();
  algebra->add_option("--no-go", no_go,
                      "emit the multiplicative-state obstruction for M_n");
  algebra->add_option("-o,--output", out_path, "write the JSON report here");

  CLI::App* gleason = app.add_subcommand(
      "gleason", "measures induced by a density operator on a ray family");
  gleason->add_option("rayfile", rayfile, "ray document")->required();
  gleason->add_option("--rho", rho_spec,
                      "mixed | random | e<k> | diag:p1,p2,...");
  gleason->add_option("--seed", seed, "seed for --rho random");
  gleason->add_option("-o,--output", out_path, "write the JSON report here");

  CLI::App* manifest = app.add_subcommand(
      "manifest", "context/family census and verdict of a ray document");
  manifest->add_option("rayfile", rayfile, "ray document")->required();
  manifest->add_option("--budget", budget, "search node budget");
  manifest->add_option("-o,--output", out_path, "write the manifest here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*ks) return run_ks(rayfile, budget, cnf_path, enumerate_all, out_path);
    if (*algebra) return run_algebra(blockspec, no_go, out_path);
    if (*gleason) return run_gleason(rayfile, rho_spec, seed, out_path);
    if (*manifest) return run_manifest(rayfile, budget, out_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 3;
}
