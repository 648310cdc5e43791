#include "hyperthresh_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "hyperthresh/bundle.hpp"
#include "hyperthresh/construct.hpp"
#include "hyperthresh/io.hpp"
#include "hyperthresh/recognize.hpp"
#include "hyperthresh/spheregeo.hpp"

namespace hyperthresh::cli {

namespace {

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

/// Accepts either the bare object or one wrapped under `key`.
const Json& unwrap(const Json& j, const std::string& key) {
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

struct ClassifyArgs {
  std::string file;
  std::string out;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const Hypergraph f = read_hypergraph(a.file);
  const Classification c = classify(f);
  emit(a.out, dump(classification_to_json(f, c)), out);
  return kOk;
}

struct ConstructArgs {
  ConstructionParams params;
  std::string mode = "relaxed";
  std::string forbidden;
  std::string out;
  std::string report;
  std::string degrees;
  std::uint64_t alpha_budget = 2'000'000;
  std::size_t forest_samples = 1000;
};

int cmd_construct(ConstructArgs a, std::ostream& out) {
  if (a.mode == "strict") a.params.mode = Mode::strict;
  else if (a.mode == "relaxed") a.params.mode = Mode::relaxed;
  else throw InputError("mode must be strict or relaxed");
  std::optional<Hypergraph> f;
  if (!a.forbidden.empty()) f = read_hypergraph(a.forbidden);
  const LayeredHypergraph g = build_g(f, a.params);
  emit(a.out, dump(layered_to_json(g)), out);
  if (!a.report.empty()) {
    const ConstructionReport rep = verify_construction(g, a.alpha_budget, a.forest_samples);
    emit(a.report, report_summary_csv(g, rep), out);
  }
  if (!a.degrees.empty()) emit(a.degrees, degree_csv(g), out);
  return kOk;
}

struct CheckArgs {
  std::string h;
  std::string f;
  std::string embedding;
  std::string coloring;
  std::string witness;
  std::string out;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Hypergraph h = read_hypergraph(a.h);
  Json report;
  bool ok = true;
  Json checks = Json::array();
  if (!a.embedding.empty()) {
    if (a.f.empty()) throw InputError("--embedding needs --f for the embedded hypergraph");
    const Hypergraph f = read_hypergraph(a.f);
    const Embedding e = embedding_from_json(h, f, unwrap(read_json_file(a.embedding), "embedding"));
    const bool valid = verify_embedding(h, f, e);
    ok = ok && valid;
    checks.push_back({{"check", "embedding"}, {"ok", valid}});
  } else if (!a.f.empty()) {
    const Hypergraph f = read_hypergraph(a.f);
    const auto copy = contains_copy(h, f);
    if (copy.exhausted()) throw BudgetExceeded("copy search exceeded its node budget");
    Json c = {{"check", "contains_copy"}, {"found", copy.found()}, {"nodes", copy.nodes}};
    c["embedding"] = copy.found() ? embedding_to_json(h, f, *copy.value) : Json(nullptr);
    checks.push_back(std::move(c));
  }
  if (!a.coloring.empty()) {
    const Coloring c = coloring_from_json(h, unwrap(read_json_file(a.coloring), "coloring"));
    const bool proper = c.is_complete() && c.is_proper(h);
    ok = ok && proper;
    checks.push_back({{"check", "coloring"}, {"ok", proper}, {"colors", c.num_colors()}});
  }
  if (!a.witness.empty()) {
    const PartitionWitness w = witness_from_json(h, read_json_file(a.witness));
    const UnifoliateCheck u = check_unifoliate_witness(h, w);
    Json c = {{"check", "witness"}, {"unifoliate", u.ok}};
    if (!u.ok) c["violation"] = violation_to_json(h, *u.violation);
    if (u.ok) {
      const StrongCheck s = check_strong_witness(h, w);
      c["strong"] = s.ok;
      if (!s.ok) c["strong_violation"] = strong_violation_to_json(h, *s.violation);
    }
    ok = ok && u.ok;
    checks.push_back(std::move(c));
  }
  if (checks.empty()) throw InputError("nothing to check: pass --f, --embedding, --coloring or --witness");
  report["ok"] = ok;
  report["checks"] = std::move(checks);
  emit(a.out, dump(report), out);
  return ok ? kOk : kCheckFailed;
}

struct LemmaArgs {
  std::string name;
  std::size_t trials = 1000;
  int d = 3;
  double a = 0;
  double radius = 1.4142135623730951;
  std::size_t samples = 100'000;
  int f = 3;
  double theta = 0;
  std::uint64_t seed = 0;
  std::string out;
};

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

int cmd_lemma(const LemmaArgs& a, std::ostream& out) {
  std::ostringstream csv;
  if (a.name == "near-or-far") {
    std::mt19937_64 rng(derive_seed(a.seed, "near-or-far"));
    std::uniform_real_distribution<double> scale(0.0, 0.1);
    csv << "trial,seed,d,a,rho_xy,rho_yz,rho_xz,hypotheses,margin,pass\n";
    std::size_t eligible = 0, passed = 0;
    for (std::size_t i = 0; i < a.trials; ++i) {
      double s = a.a;
      while (!(s > 0.0)) s = scale(rng);
      const NearOrFarTrial t = near_or_far_trial(a.d, s, rng);
      const bool pass = !t.hypotheses || t.conclusion;
      eligible += t.hypotheses;
      passed += t.hypotheses && t.conclusion;
      csv << i << "," << a.seed << "," << a.d << "," << csv_number(s) << "," << csv_number(t.rho_xy) << "," << csv_number(t.rho_yz)
          << "," << csv_number(t.rho_xz) << "," << t.hypotheses << "," << csv_number(t.margin) << "," << pass << "\n";
    }
    const double fraction = eligible == 0 ? 1.0 : static_cast<double>(passed) / static_cast<double>(eligible);
    csv << "summary," << a.seed << "," << a.d << ",,,,," << eligible << ",," << csv_number(fraction) << "\n";
  } else if (a.name == "cap") {
    csv << "trial,seed,d,radius,samples,estimate,std_error\n";
    double total = 0;
    std::size_t count = 0;
    const std::size_t rounds = std::max<std::size_t>(1, std::min<std::size_t>(a.trials, 100));
    for (std::size_t i = 0; i < rounds; ++i) {
      const CapEstimate e = cap_estimate(a.d, a.radius, a.samples, derive_seed(a.seed, "cap-" + std::to_string(i)));
      total += e.mean * static_cast<double>(e.samples);
      count += e.samples;
      csv << i << "," << a.seed << "," << a.d << "," << csv_number(a.radius) << "," << e.samples << "," << csv_number(e.mean) << ","
          << csv_number(e.std_error) << "\n";
    }
    const double mean = total / static_cast<double>(count);
    const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(count));
    csv << "summary," << a.seed << "," << a.d << "," << csv_number(a.radius) << "," << count << "," << csv_number(mean) << ","
        << csv_number(se) << "\n";
  } else if (a.name == "theta-chain") {
    const double theta = a.theta > 0 ? a.theta : choose_theta(a.f, 0.05).theta;
    csv << "j,theta,scale,composed,next,holds\n";
    const auto rows = theta_chain(a.f, theta);
    std::size_t held = 0;
    for (const auto& row : rows) {
      held += row.holds;
      csv << row.j << "," << csv_number(theta) << "," << csv_number(row.scale) << "," << csv_number(row.composed)
          << "," << csv_number(row.next) << "," << row.holds << "\n";
    }
    csv << "summary," << csv_number(theta) << ",,,," << csv_number(static_cast<double>(held) / rows.size()) << "\n";
  } else {
    throw InputError("unknown lemma '" + a.name + "' (expected near-or-far, cap or theta-chain)");
  }
  emit(a.out, csv.str(), out);
  return kOk;
}

struct DimArgs {
  std::string h;
  std::string t;
  std::size_t part_size = 1;
  std::size_t count = 1;
  std::string out;
};

int cmd_bundle_dim(const DimArgs& a, std::ostream& out) {
  const Hypergraph h = read_hypergraph(a.h);
  const Hypergraph t = read_hypergraph(a.t);
  const FiberBundle bundle = t_bundle(h, t);
  const auto dim = dim_at_least(bundle, KSpec{h.r() - 1, a.part_size}, a.count);
  if (dim.exhausted()) throw BudgetExceeded("dim search exceeded its node budget");
  Json j;
  j["dim_at_least"] = dim.found();
  j["t"] = a.count;
  j["part_size"] = a.part_size;
  j["base_edges"] = bundle.base.num_edges();
  if (dim.found()) {
    Json matching = Json::array();
    for (EdgeId e : *dim.value) matching.push_back(bundle.base.edge_names(e));
    j["matching"] = std::move(matching);
  }
  j["nodes"] = dim.nodes;
  emit(a.out, dump(j), out);
  return kOk;
}

struct ColorOrEmbedArgs {
  std::string h;
  std::string g;
  std::string witness;
  std::size_t cap = 3;
  std::string out;
};

int cmd_color_or_embed(const ColorOrEmbedArgs& a, std::ostream& out) {
  const Hypergraph h = read_hypergraph(a.h);
  const Hypergraph g = read_hypergraph(a.g);
  PartitionWitness w;
  if (!a.witness.empty()) {
    w = witness_from_json(g, read_json_file(a.witness));
  } else {
    const auto found = is_strong_unifoliate(g);
    if (found.exhausted()) throw BudgetExceeded("strong unifoliate search exceeded its node budget");
    if (!found.found()) throw InputError("G is not strong unifoliate r-partite");
    w = *found.value;
  }
  ColorOrEmbedOptions options;
  options.part_size_cap = a.cap;
  const ColorOrEmbedResult result = color_or_embed(h, g, w, options);
  emit(a.out, dump(color_or_embed_to_json(h, g, result)), out);
  return kOk;
}

struct ReportArgs {
  std::string g;
  std::string out;
  std::string degrees;
  std::uint64_t alpha_budget = 2'000'000;
  std::size_t forest_samples = 1000;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const LayeredHypergraph g = layered_from_json(read_json_file(a.g));
  const ConstructionReport rep = verify_construction(g, a.alpha_budget, a.forest_samples);
  emit(a.out, report_summary_csv(g, rep), out);
  if (!a.degrees.empty()) emit(a.degrees, degree_csv(g), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unifoliate hypergraph toolkit: recognizers, constructions and bundle searches"};
  // "--h" names the host hypergraph, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a hypergraph as NotUnifoliate, UnifoliateOnly or StrongUnifoliate");
  classify_cmd->add_option("file", classify_args.file, "Hypergraph JSON")->required();
  classify_cmd->add_option("--out,-o", classify_args.out, "Output path (default stdout)");

  ConstructArgs construct_args;
  auto* construct_cmd = app.add_subcommand("construct", "Build constructions");
  construct_cmd->require_subcommand(1);
  auto* g_cmd = construct_cmd->add_subcommand("g", "Layered lower-bound hypergraph");
  auto& p = construct_args.params;
  g_cmd->add_option("--r", p.r, "Uniformity (ignored when --forbidden is given)")->capture_default_str();
  g_cmd->add_option("--n", p.n, "Total size of the C and D layers; multiple of r")->required();
  g_cmd->add_option("--k", p.k, "Target chromatic number (recorded only)")->capture_default_str();
  g_cmd->add_option("--eps,--epsilon", p.epsilon, "Cap slack for choosing beta")->capture_default_str();
  g_cmd->add_option("--seed", p.seed, "Master seed")->capture_default_str();
  g_cmd->add_option("--mode", construct_args.mode, "strict or relaxed")->capture_default_str();
  g_cmd->add_option("--f-file,--forbidden", construct_args.forbidden, "Forbidden hypergraph F (sets r, L, f)");
  g_cmd->add_option("--points", p.points, "Sphere points behind the A layer")->capture_default_str();
  g_cmd->add_option("--dim", p.d, "Sphere dimension d (points on S^d)")->capture_default_str();
  g_cmd->add_option("--beta", p.beta, "Cap parameter (relaxed mode)")->capture_default_str();
  g_cmd->add_option("--theta", p.theta, "Far-pair parameter (relaxed mode)")->capture_default_str();
  g_cmd->add_option("--L", p.L, "Cycle span bound (default |V(F)| or 2r)");
  g_cmd->add_option("--blowup", p.blowup, "Blowup factor")->capture_default_str();
  g_cmd->add_option("--sparsen-p", p.sparsen_p, "Edge keep probability")->capture_default_str();
  g_cmd->add_option("--beta-samples", p.beta_samples, "Samples for choosing beta (strict mode)")->capture_default_str();
  g_cmd->add_option("--out,-o", construct_args.out, "Construction JSON path (default stdout)");
  g_cmd->add_option("--report", construct_args.report, "Summary CSV path");
  g_cmd->add_option("--degrees", construct_args.degrees, "Per-vertex degree CSV path");
  g_cmd->add_option("--alpha-budget", construct_args.alpha_budget, "Node budget for alpha(G[A])")->capture_default_str();
  g_cmd->add_option("--forest-samples", construct_args.forest_samples, "Sampled L-subsets of A")->capture_default_str();

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Re-verify embeddings, colorings and partition witnesses");
  check_cmd->add_option("--h", check_args.h, "Host hypergraph JSON")->required();
  check_cmd->add_option("--f", check_args.f, "Pattern hypergraph JSON; alone it runs a copy search");
  check_cmd->add_option("--embedding", check_args.embedding, "Embedding JSON of --f into --h");
  check_cmd->add_option("--coloring", check_args.coloring, "Coloring JSON of --h");
  check_cmd->add_option("--witness", check_args.witness, "Partition witness JSON for --h");
  check_cmd->add_option("--out,-o", check_args.out, "Output path (default stdout)");

  LemmaArgs lemma_args;
  auto* lemma_cmd = app.add_subcommand("lemma", "Run a geometric lemma suite and print CSV");
  lemma_cmd->add_option("name", lemma_args.name, "near-or-far, cap or theta-chain")->required();
  lemma_cmd->add_option("--trials", lemma_args.trials, "Trials (cap: repetitions)")->capture_default_str();
  lemma_cmd->add_option("--d", lemma_args.d, "Sphere dimension")->capture_default_str();
  lemma_cmd->add_option("--a", lemma_args.a, "Near-or-far scale in (0, 0.1); random per trial when omitted");
  lemma_cmd->add_option("--radius", lemma_args.radius, "Cap radius (chordal)")->capture_default_str();
  lemma_cmd->add_option("--samples", lemma_args.samples, "Samples per cap estimate")->capture_default_str();
  lemma_cmd->add_option("--f", lemma_args.f, "Chain length")->capture_default_str();
  lemma_cmd->add_option("--theta", lemma_args.theta, "Theta for the chain (default: chosen for beta = 0.05)");
  lemma_cmd->add_option("--seed", lemma_args.seed, "Seed")->capture_default_str();
  lemma_cmd->add_option("--out,-o", lemma_args.out, "Output path (default stdout)");

  DimArgs dim_args;
  auto* bundle_cmd = app.add_subcommand("bundle", "Fiber-bundle searches");
  bundle_cmd->require_subcommand(1);
  auto* dim_cmd = bundle_cmd->add_subcommand("dim", "Decide dim_K >= t for the T-bundle of H");
  dim_cmd->add_option("--h", dim_args.h, "Hypergraph H")->required();
  dim_cmd->add_option("--t-file", dim_args.t, "Hypergraph T")->required();
  dim_cmd->add_option("--part-size", dim_args.part_size, "Part size of K")->capture_default_str();
  dim_cmd->add_option("--t", dim_args.count, "Matching size")->capture_default_str();
  dim_cmd->add_option("--out,-o", dim_args.out, "Output path (default stdout)");

  ColorOrEmbedArgs coe_args;
  auto* coe_cmd = app.add_subcommand("color-or-embed", "Embed G into H or color H");
  coe_cmd->add_option("--h", coe_args.h, "Hypergraph H")->required();
  coe_cmd->add_option("--g", coe_args.g, "Strong unifoliate hypergraph G")->required();
  coe_cmd->add_option("--witness", coe_args.witness, "Partition witness for G (searched when omitted)");
  coe_cmd->add_option("--part-size-cap", coe_args.cap, "Cap on the K part size")->capture_default_str();
  coe_cmd->add_option("--out,-o", coe_args.out, "Output path (default stdout)");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Summary CSV for a saved construction");
  report_cmd->add_option("--g", report_args.g, "Construction JSON")->required();
  report_cmd->add_option("--out,-o", report_args.out, "Summary CSV path (default stdout)");
  report_cmd->add_option("--degrees", report_args.degrees, "Per-vertex degree CSV path");
  report_cmd->add_option("--alpha-budget", report_args.alpha_budget, "Node budget for alpha(G[A])")->capture_default_str();
  report_cmd->add_option("--forest-samples", report_args.forest_samples, "Sampled L-subsets of A")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(classify_args, out);
    if (g_cmd->parsed()) return cmd_construct(construct_args, out);
    if (check_cmd->parsed()) return cmd_check(check_args, out);
    if (lemma_cmd->parsed()) return cmd_lemma(lemma_args, out);
    if (dim_cmd->parsed()) return cmd_bundle_dim(dim_args, out);
    if (coe_cmd->parsed()) return cmd_color_or_embed(coe_args, out);
    if (report_cmd->parsed()) return cmd_report(report_args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << " (raise UNIFOLIATE_BUDGET)\n";
    return kBudget;
  } catch (const InfeasibleParameters& e) {
    err << "infeasible parameters: " << e.what()
        << "\nadvisory: strict mode needs astronomically small theta; use --mode relaxed with --beta/--theta\n";
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hyperthresh::cli
