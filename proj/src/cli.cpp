#include "wittlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "wittlab/json_io.hpp"

namespace wittlab::cli {

namespace {

struct Config {
  std::string command;
  std::string ring;
  std::string gram;
  std::string input;
  std::string from = "std";
  std::string to = "hat";
  std::string cert;
  std::string output;
  std::size_t rank_cap = 0;
  std::size_t stab_cap = 2;
  std::size_t size_cap = kDefaultSizeCap;
  std::uint64_t bfs_budget = ChainOptions{}.bfs_budget;
  std::uint64_t iso_budget = IsometryOptions{}.budget;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  bool allow_unreachable = false;
  bool cross_check = false;
};

// Input errors that are reported with the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kCheapOracle = std::uint64_t{1} << 16;

struct Outcome {
  Json body;
  int code = kExitOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(what + " is not valid JSON: " + e.what());
  }
}

// Inline JSON if it looks like JSON, otherwise a file path.
Json inline_or_file(const std::string& arg, const std::string& what) {
  std::size_t k = arg.find_first_not_of(" \t\r\n");
  if (k != std::string::npos && (arg[k] == '[' || arg[k] == '{')) return parse_json(arg, what);
  return parse_json(read_file(arg), what);
}

Json input_payload(const Config& cfg) {
  if (cfg.input.empty()) return Json::object();
  Json j = inline_or_file(cfg.input, "--input");
  if (!j.is_object()) throw UsageError("--input must hold a JSON object");
  return j;
}

RingPtr resolve_ring(const Config& cfg, const Json& payload) {
  std::string spec = cfg.ring;
  if (spec.empty() && payload.contains("ring") && payload.at("ring").is_string())
    spec = payload.at("ring").get<std::string>();
  if (spec.empty()) throw UsageError("--ring is required");
  return LocalRing::parse(spec, cfg.size_cap);
}

Matrix resolve_gram(const Config& cfg, const Json& payload, const LocalRing& R) {
  if (!cfg.gram.empty()) return matrix_from_json(R, inline_or_file(cfg.gram, "--gram"));
  if (payload.contains("gram")) return matrix_from_json(R, payload.at("gram"));
  throw UsageError("--gram is required");
}

Basis resolve_basis(const std::string& arg, const Json& payload, const char* key, const LocalRing& R,
                    std::size_t n) {
  if (payload.contains(key)) return basis_from_json(R, payload.at(key));
  if (arg == "std") return standard_basis(n);
  if (arg == "hat") return hat_basis(R, n);
  return basis_from_json(R, inline_or_file(arg, std::string("--") + key));
}

Json config_json(const Config& cfg, const CLI::App* sub) {
  Json c = Json::object();
  auto has = [&](const char* name) { return sub->get_option_no_throw(name) != nullptr; };
  if (has("--ring")) c["ring"] = cfg.ring;
  if (has("--gram")) c["gram"] = cfg.gram;
  if (has("--input")) c["input"] = cfg.input;
  if (has("--from")) c["from"] = cfg.from;
  if (has("--to")) c["to"] = cfg.to;
  if (has("--cert")) c["cert"] = cfg.cert;
  if (has("--rank-cap")) c["rank_cap"] = cfg.rank_cap;
  if (has("--stab-cap")) c["stab_cap"] = cfg.stab_cap;
  if (has("--bfs-budget")) c["bfs_budget"] = cfg.bfs_budget;
  if (has("--iso-budget")) c["iso_budget"] = cfg.iso_budget;
  if (has("--seed")) c["seed"] = cfg.seed;
  if (has("--samples")) c["samples"] = cfg.samples;
  if (has("--allow-unreachable")) c["allow_unreachable"] = cfg.allow_unreachable;
  if (has("--cross-check")) c["cross_check"] = cfg.cross_check;
  c["size_cap"] = cfg.size_cap;
  c["output"] = cfg.output;
  return c;
}

Json formatted(const LocalRing& R, const Vec& v) {
  Json arr = Json::array();
  for (Elem x : v) arr.push_back(R.format(x));
  return arr;
}

ChainOptions chain_options(const Config& cfg) {
  ChainOptions o;
  o.bfs_budget = cfg.bfs_budget;
  return o;
}

GwOptions gw_options(const Config& cfg) {
  GwOptions o;
  o.rank_cap = cfg.rank_cap;
  o.isometry.budget = cfg.iso_budget;
  return o;
}

Outcome cmd_ring_info(const Config& cfg) {
  RingPtr R = resolve_ring(cfg, input_payload(cfg));
  const LocalRing& F = R->residue_field();
  Json reps = Json::array();
  for (Elem u : R->square_class_reps()) reps.push_back({{"element", element_to_json(*R, u)}, {"text", R->format(u)}});
  Json body = {{"ring", R->spec_string()},
               {"size", R->size()},
               {"units", R->units().size()},
               {"maximal_ideal_size", R->size() - R->units().size()},
               {"is_field", R->is_field()},
               {"residue_field", F.spec_string()},
               {"residue_size", F.size()},
               {"residue_characteristic", R->characteristic_of_residue()},
               {"square_classes", reps}};
  return {body, kExitOk};
}

Outcome cmd_diagonalize(const Config& cfg) {
  Json payload = input_payload(cfg);
  RingPtr R = resolve_ring(cfg, payload);
  BilinearSpace S(R, resolve_gram(cfg, payload, *R));
  auto [report, witness] = diagonalize(S);
  Json blocks = Json::array();
  for (auto [a, b] : report.blocks) blocks.push_back({element_to_json(*R, a), element_to_json(*R, b)});
  StableDiagonalization sd = stable_diagonalize(S);
  bool ok = witness.verify(*R) && sd.witness.verify(*R);
  Json body = {{"units", vector_to_json(*R, report.units)},
               {"blocks", blocks},
               {"witness", witness_to_json(*R, witness)},
               {"stable",
                {{"diagonal", vector_to_json(*R, sd.diagonal)},
                 {"appended", sd.appended},
                 {"witness", witness_to_json(*R, sd.witness)}}},
               {"verified", ok}};
  return {body, ok ? kExitOk : kExitFailure};
}

Outcome cmd_chain(const Config& cfg) {
  Json payload = input_payload(cfg);
  RingPtr R = resolve_ring(cfg, payload);
  BilinearSpace S(R, resolve_gram(cfg, payload, *R));
  Basis B = resolve_basis(cfg.from, payload, "from", *R, S.dim());
  Basis C = resolve_basis(cfg.to, payload, "to", *R, S.dim());
  Json body;
  try {
    Chain c = chain_local(S, B, C, chain_options(cfg));
    ChainCertificate cert{R, S.gram(), c.bases};
    ChainCheck chk = verify_certificate(cert);
    body = {{"status", "found"}, {"steps", c.steps()}, {"verified", chk.ok}, {"certificate", certificate_to_json(cert)}};
    return {body, chk.ok ? kExitOk : kExitFailure};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::F2Unreachable) {
      body = {{"status", "unreachable"}, {"reason", e.what()}};
      return {body, cfg.allow_unreachable ? kExitOk : kExitFailure};
    }
    if (e.code() == ErrorCode::ResidueFieldF2WithoutBFSResult || e.code() == ErrorCode::BudgetExceeded) {
      body = {{"status", "unknown"}, {"reason", e.what()}};
      return {body, kExitFailure};
    }
    throw;
  }
}

Outcome cmd_verify(const Config& cfg) {
  std::string src = !cfg.cert.empty() ? cfg.cert : cfg.input;
  if (src.empty()) throw UsageError("--cert is required");
  Json j = inline_or_file(src, "certificate");
  if (!j.is_object()) throw UsageError("certificate must be a JSON object");
  // Output of `chain` carries the certificate under "certificate".
  if (j.contains("certificate") && j["certificate"].is_object()) j = Json(j["certificate"]);
  Json body;
  if (j.contains("bases")) {
    ChainCertificate c = certificate_from_json(j);
    ChainCheck chk = verify_certificate(c);
    body = {{"kind", "chain"}, {"verified", chk.ok}, {"steps", c.bases.empty() ? 0 : c.bases.size() - 1}};
    if (!chk.ok) body["diagnostic"] = chk.diagnostic;
    return {body, chk.ok ? kExitOk : kExitFailure};
  }
  if (j.contains("matrix")) {
    Config rc = cfg;
    RingPtr R = resolve_ring(rc, j);
    CongruenceWitness w = witness_from_json(*R, j);
    bool ok = w.verify(*R);
    body = {{"kind", "witness"}, {"verified", ok}};
    return {body, ok ? kExitOk : kExitFailure};
  }
  throw UsageError("certificate needs \"bases\" (chain) or \"matrix\" (congruence witness)");
}

Json structure_body(const LocalRing& R, const Presentation& P, const AbelianGroup& G) {
  Json body = structure_to_json(R, G, P.generators);
  body["group"] = P.name;
  body["relations"] = P.relations.size();
  body["generators"] = P.generators.size();
  return body;
}

Outcome cmd_group(const Config& cfg, const std::string& which) {
  RingPtr R = resolve_ring(cfg, input_payload(cfg));
  GroupRing ZG(R);
  Presentation P = which == "kmw" ? kmw_presentation(R)
                   : which == "gw" ? gw_presentation(R, gw_options(cfg))
                                   : witt_presentation(R, gw_options(cfg));
  AbelianGroup G = group_structure(P);
  Json body = structure_body(*R, P, G);
  if (which != "kmw") {
    body["rank_cap"] = P.rank_cap;
    body["complete"] = P.complete;
  }
  if (which != "witt") body["augmentation_ideal"] = structure_to_json(*R, augmentation_ideal(ZG, P), {});
  // Residue field F2: cross-check automatically when the oracle is cheap.
  std::uint64_t oracle_space = 1;
  for (std::size_t i = 0; i < P.rank_cap + cfg.stab_cap && oracle_space <= kCheapOracle; ++i) oracle_space *= R->size();
  const bool cheap = oracle_space <= kCheapOracle;
  if (which == "gw" && R->residue_is_f2() && !cheap && !cfg.cross_check)
    body["oracle"] = {{"skipped", "oracle spaces exceed 2^16 vectors; pass --cross-check"}};
  if (which == "gw" && ((R->residue_is_f2() && cheap) || cfg.cross_check)) {
    OracleOptions oo;
    oo.rank_cap = P.rank_cap;
    oo.stab_cap = cfg.stab_cap;
    oo.isometry.budget = cfg.iso_budget;
    OracleClassification oc = stable_isometry_oracle(R, oo);
    OracleAgreement ag = compare_with_oracle(ZG, G, oc);
    body["oracle"] = {{"rank_cap", oo.rank_cap},
                      {"stab_cap", oo.stab_cap},
                      {"classes", ag.oracle_classes},
                      {"gw_classes", ag.gw_classes},
                      {"agree", ag.agree}};
  }
  return {body, kExitOk};
}

Outcome cmd_compare(const Config& cfg) {
  RingPtr R = resolve_ring(cfg, input_payload(cfg));
  Comparison c = comparison_map(R, gw_options(cfg));
  auto plain = [&](const AbelianGroup& G) {
    return Json{{"free_rank", G.free_rank()}, {"invariant_factors", G.invariant_factors()}};
  };
  Json body = {{"kmw", plain(c.kmw)},         {"gw", plain(c.gw)},
               {"matrix", c.matrix},          {"kernel", plain(c.kernel)},
               {"cokernel", plain(c.cokernel)}, {"is_isomorphism", c.is_isomorphism}};
  return {body, kExitOk};
}

Outcome cmd_steinberg(const Config& cfg) {
  RingPtr R = resolve_ring(cfg, input_payload(cfg));
  SteinbergReport st = verify_steinberg_consequences(R);
  Json failures = Json::array();
  for (const auto& f : st.failures) failures.push_back({{"unit", R->format(f.unit)}, {"identity", f.identity}});
  Json body = {{"steinberg", {{"asserted", st.asserted}, {"checked", st.checked}, {"failures", failures}}}};
  bool ok = !st.asserted || st.failures.empty();
  if (!R->residue_is_f2()) {
    Rank2Report r2 = verify_rank2_equality(R, cfg.samples, cfg.seed);
    body["rank2"] = {{"samples", r2.samples}, {"holds", r2.holds}, {"failures", r2.failures}};
    ok = ok && r2.failures.empty();
  } else {
    body["rank2"] = nullptr;
  }
  body["ok"] = ok;
  return {body, ok ? kExitOk : kExitFailure};
}

Outcome cmd_oracle(const Config& cfg) {
  RingPtr R = resolve_ring(cfg, input_payload(cfg));
  OracleOptions oo;
  oo.rank_cap = cfg.rank_cap == 0 ? 3 : cfg.rank_cap;
  oo.stab_cap = cfg.stab_cap;
  oo.isometry.budget = cfg.iso_budget;
  OracleClassification oc = stable_isometry_oracle(R, oo);
  Json classes = Json::array();
  for (const auto& cls : oc.classes) {
    Json members = Json::array();
    for (const Vec& t : cls) members.push_back(formatted(*R, t));
    classes.push_back({{"rank", cls.front().size()}, {"members", members}});
  }
  Json body = {{"rank_cap", oo.rank_cap}, {"stab_cap", oo.stab_cap}, {"searches", oc.searches}, {"classes", classes}};
  return {body, kExitOk};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::ResidueFieldF2WithoutBFSResult:
    case ErrorCode::F2Unreachable:
    case ErrorCode::Overflow:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

void emit(const Json& j, const Config& cfg, std::ostream& out) {
  std::string text = j.dump(2);
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot write " + cfg.output);
    f << text << '\n';
  }
  out << text << '\n';
}

void error_out(std::ostream& out, std::ostream& err, const std::string& command, const std::string& kind,
               const std::string& message) {
  Json j = {{"schema", "witt-lab/1"}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
  out << j.dump(2) << '\n';
  err << "witt-lab: " << message << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact algebra for inner product spaces over finite local rings", "witt-lab"};
  app.require_subcommand(1);
  Config cfg;

  struct Flags {
    bool gram = false, chain = false, cert = false, groups = false, oracle = false, seed = false;
  };
  auto add = [&](const std::string& name, const std::string& help, Flags f) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--ring", cfg.ring, "Ring spec, e.g. GF(2)[x]/(x^4)");
    s->add_option("--input", cfg.input, "JSON payload (inline or file) with ring, gram, from, to");
    s->add_option("--size-cap", cfg.size_cap, "Largest accepted ring size");
    s->add_option("--output", cfg.output, "Also write the JSON result to this path");
    if (f.gram) s->add_option("--gram", cfg.gram, "Gram matrix (inline JSON or file)");
    if (f.chain) {
      s->add_option("--from", cfg.from, "Start basis: std, hat or JSON");
      s->add_option("--to", cfg.to, "End basis: std, hat or JSON");
      s->add_option("--bfs-budget", cfg.bfs_budget, "Node budget of the breadth-first search");
      s->add_flag("--allow-unreachable", cfg.allow_unreachable, "Exit 0 when the bases are provably unconnected");
    }
    if (f.cert) s->add_option("--cert", cfg.cert, "Chain certificate or congruence witness (inline or file)");
    if (f.groups) s->add_option("--rank-cap", cfg.rank_cap, "Largest rank of isometry relations (0: automatic)");
    if (f.groups || f.oracle) {
      s->add_option("--stab-cap", cfg.stab_cap, "Largest rank of the diagonal padding in the oracle");
      s->add_option("--iso-budget", cfg.iso_budget, "Candidate budget of each isometry search");
    }
    if (f.oracle && !f.groups) s->add_option("--rank-cap", cfg.rank_cap, "Largest tuple rank (0: 3)");
    if (f.seed) {
      s->add_option("--seed", cfg.seed, "Seed of the random sampler");
      s->add_option("--samples", cfg.samples, "Number of random samples");
    }
    return s;
  };
  std::vector<std::pair<CLI::App*, std::function<Outcome()>>> cmds;
  cmds.emplace_back(add("ring-info", "Describe a ring", {}), [&] { return cmd_ring_info(cfg); });
  cmds.emplace_back(add("diagonalize", "Diagonalize a Gram matrix", {.gram = true}),
                    [&] { return cmd_diagonalize(cfg); });
  cmds.emplace_back(add("chain", "Chain certificate between orthogonal bases", {.gram = true, .chain = true}),
                    [&] { return cmd_chain(cfg); });
  cmds.emplace_back(add("verify", "Verify a chain certificate or congruence witness", {.cert = true}),
                    [&] { return cmd_verify(cfg); });
  Flags grp{.groups = true};
  CLI::App* gw = add("gw", "Grothendieck-Witt group", grp);
  gw->add_flag("--cross-check", cfg.cross_check, "Compare with the stable-isometry oracle");
  cmds.emplace_back(gw, [&] { return cmd_group(cfg, "gw"); });
  cmds.emplace_back(add("kmw", "Milnor-Witt K-group K0MW", grp), [&] { return cmd_group(cfg, "kmw"); });
  cmds.emplace_back(add("witt", "Witt group", grp), [&] { return cmd_group(cfg, "witt"); });
  cmds.emplace_back(add("compare", "Comparison map K0MW -> GW", grp), [&] { return cmd_compare(cfg); });
  cmds.emplace_back(add("steinberg-check", "Steinberg consequences and rank-2 equality", {.seed = true}),
                    [&] { return cmd_steinberg(cfg); });
  cmds.emplace_back(add("oracle", "Stable isometry classes of diagonal forms", {.oracle = true}),
                    [&] { return cmd_oracle(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_out(out, err, "", "usage", e.what());
    return kExitUsage;
  }

  for (auto& [sub, fn] : cmds) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    try {
      Outcome o = fn();
      Json j = {{"schema", "witt-lab/1"}, {"command", cfg.command}, {"config", config_json(cfg, sub)}};
      j.update(o.body);
      j["exit_code"] = o.code;
      emit(j, cfg, out);
      return o.code;
    } catch (const UsageError& e) {
      error_out(out, err, cfg.command, "usage", e.what());
      return kExitUsage;
    } catch (const Error& e) {
      error_out(out, err, cfg.command, std::string(error_code_name(e.code())), e.what());
      return exit_code_for(e.code());
    }
  }
  error_out(out, err, "", "usage", "no subcommand");
  return kExitUsage;
}

}  // namespace wittlab::cli
