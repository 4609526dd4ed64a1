// spreadkit: batch front end for group orders, spread, mates and the M23 checks.
//
// Every command builds one JSON report; --format human renders that same
// report. Only the "runtime" section (timings, kernel ISA, worker count) may
// differ between runs with identical inputs.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spreadkit/error.hpp"
#include "spreadkit/io.hpp"
#include "spreadkit/kernels.hpp"
#include "spreadkit/m23.hpp"
#include "spreadkit/spread.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace spreadkit;

namespace {

constexpr std::uint64_t kDefaultSeed = 8064;
constexpr std::uint64_t kFastSamples = 10'000;

struct Config {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;
  std::string tier = "fast";
  std::string format = "human";
  std::optional<std::uint64_t> budget;
  std::string group_file;
  std::string set_file;
  std::string checkpoint_dir;
  std::string data_dir = SPREADKIT_DATA_DIR;
  bool exact = false;
  std::optional<std::uint64_t> at_least;
  std::uint64_t trials = 1000;
  std::uint64_t samples = kFastSamples;
  std::string strategy = "auto";
  std::string kind = "uniform";
  std::size_t size = m23::kMateGuarantee;
  std::string out_file;

  json echo() const {
    json j{{"command", command}, {"seed", seed}};
    if (command.starts_with("m23")) j["tier"] = tier;
    j["format"] = format;
    if (budget) j["budget"] = *budget;
    if (!group_file.empty()) j["group_file"] = fs::path(group_file).filename().string();
    if (!set_file.empty()) j["set_file"] = fs::path(set_file).filename().string();
    if (command == "spread") {
      j["exact"] = !at_least.has_value();
      if (at_least) j["at_least"] = *at_least, j["trials"] = trials;
    }
    if (command == "mate") j["strategy"] = strategy;
    if (command == "m23 verify-certificate") j["samples"] = samples;
    if (command == "m23 make-challenge") j["kind"] = kind, j["size"] = size;
    return j;
  }
};

struct Outcome {
  json result = json::object();
  ExitCode code = ExitCode::ok;
  json hashes = json::object();
  json timings = json::object();
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

json big(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return v.str();
}

json cycles_list(const std::vector<Permutation>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(format_cycles(p));
  return a;
}

json pair_summary(const std::vector<PairResult>& ev) {
  std::map<std::string, std::uint64_t> by_filter;
  std::uint64_t generating = 0;
  for (const auto& r : ev) {
    generating += r.generates;
    if (!r.generates) ++by_filter[std::string(filter_name(r.filter_used))];
  }
  json j{{"pairs", ev.size()}, {"generating", generating}};
  if (!by_filter.empty()) j["rejected_by"] = by_filter;
  return j;
}

struct LoadedGroup {
  GroupHandle g;
  std::vector<Permutation> gens;
};

LoadedGroup load_group(const Config& c, Outcome& out) {
  const PermutationFile f = read_generator_file(c.group_file);
  out.hashes[fs::path(c.group_file).filename().string()] = sha256_file(c.group_file);
  return {GroupHandle(GeneratorSet(f.degree, f.perms)), f.perms};
}

ChallengeSet load_set(const Config& c, const GroupHandle& g, Outcome& out) {
  if (c.set_file.empty()) throw InputError("missing_set", "--set <file> is required");
  const PermutationFile f = read_permutation_list(c.set_file, g.degree());
  out.hashes[fs::path(c.set_file).filename().string()] = sha256_file(c.set_file);
  return validate_challenge(f.perms, g);
}

bool is_m23_sized(const GroupHandle& g) {
  return g.degree() == m23::kDegree && g.order() == m23::kOrder;
}

m23::Context load_m23(const Config& c, Outcome& out) {
  const auto t = Clock::now();
  m23::Context ctx = m23::Context::load(m23::DataFiles::in(c.data_dir));
  for (const auto& [name, hash] : ctx.data_hashes()) out.hashes[name] = hash;
  out.timings["load"] = since(t);
  return ctx;
}

void build_tables(m23::Context& ctx, const Config& c, Outcome& out) {
  const auto t = Clock::now();
  ctx.build_tables(c.seed, c.workers);
  out.timings["build_tables"] = since(t);
}

ScanControl scan_control(const Config& c, const Outcome& out, const std::string& name) {
  ScanControl ctl;
  ctl.workers = c.workers;
  ctl.fingerprint = out.hashes.dump() + "|seed=" + std::to_string(c.seed);
  if (!c.checkpoint_dir.empty()) {
    fs::create_directories(c.checkpoint_dir);
    ctl.checkpoint_file = fs::path(c.checkpoint_dir) / (name + ".checkpoint.json");
  }
  if (c.tier == "long") {
    ctl.progress = [name, last = -1](std::uint64_t done, std::uint64_t total) mutable {
      const int pct = static_cast<int>(100 * done / std::max<std::uint64_t>(total, 1));
      if (pct / 5 == last / 5 && done != total) return;
      last = pct;
      std::cerr << name << ": " << done << " / " << total << " (" << pct << "%)\n";
    };
  }
  return ctl;
}

json mate_json(const MateReport& r, const ChallengeSet& x, std::string_view operation) {
  json j{{"operation", operation},
         {"set_size", x.size()},
         {"duplicates_removed", x.duplicates_removed},
         {"mate", r.mate ? json(format_cycles(*r.mate)) : json(nullptr)}};
  if (r.mate) j["mate_order"] = element_order(*r.mate);
  j["verified"] = r.verified;
  j["exhausted"] = r.exhausted;
  j["strategy"] = r.strategy;
  if (!r.branch.empty()) j["branch"] = r.branch;
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["candidates_tried"] = r.candidates_tried;
  j["pair_tests"] = r.pair_tests;
  j["filter_hits"] = r.filter_hits;
  j["evidence"] = pair_summary(r.evidence);
  return j;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void cmd_order(const Config& c, Outcome& out) {
  const auto t = Clock::now();
  const LoadedGroup lg = load_group(c, out);
  json base = json::array();
  for (Point b : lg.g.chain().base()) base.push_back(b + 1);
  out.result = {{"operation", "group_order"},
                {"degree", lg.g.degree()},
                {"generators", lg.g.generators().generators().size()},
                {"order", big(lg.g.order())},
                {"base", base},
                {"orbits", lg.g.orbit_count()},
                {"transitive", lg.g.transitive()}};
  out.timings["order"] = since(t);
}

void cmd_spread(const Config& c, Outcome& out) {
  const LoadedGroup lg = load_group(c, out);
  const std::uint64_t budget = c.budget.value_or(kDefaultSpreadBudget);
  if (lg.g.order() > budget)
    throw BudgetError("group_too_large", "|G| = " + lg.g.order().str() + " exceeds --budget " +
                                             std::to_string(budget));
  const auto t = Clock::now();
  const GroupTable table(lg.g, budget, c.workers);
  out.timings["table"] = since(t);

  if (c.at_least) {
    const auto t2 = Clock::now();
    const auto rep = spread_at_least_randomized(table, *c.at_least, c.trials, c.seed);
    out.timings["randomized"] = since(t2);
    out.result = {{"operation", "spread_at_least_randomized"},
                  {"group_order", big(lg.g.order())},
                  {"r", rep.r},
                  {"trials", rep.trials},
                  {"uniform_trials", rep.uniform_trials},
                  {"biased_trials", rep.biased_trials},
                  {"counterexample",
                   rep.counterexample ? cycles_list(rep.counterexample->elements) : json(nullptr)},
                  {"proof", rep.proof}};
    out.result["conclusion"] = rep.counterexample
                                   ? "spread < " + std::to_string(rep.r) + " (mateless set exhibited)"
                                   : "no counterexample in " + std::to_string(rep.trials) +
                                         " trials (not a proof)";
    return;
  }

  const auto t2 = Clock::now();
  const SpreadResult r = exact_spread_small(table);
  out.timings["exact_spread"] = since(t2);
  json j{{"operation", "exact_spread_small"},
         {"group_order", big(lg.g.order())},
         {"kind", spread_kind_name(r.kind)},
         {"value", r.value ? json(*r.value) : json(nullptr)}};
  if (r.witness) {
    j["witness"] = cycles_list(r.witness->elements);
    j["witness_size"] = r.witness->size();
    j["witness_verified"] = r.witness_verified;
  }
  if (r.universal_mate) j["universal_mate"] = format_cycles(*r.universal_mate);
  j["certificate"] = {{"search_complete", r.search_complete},
                      {"nodes_explored", r.nodes_explored},
                      {"greedy_upper_bound", r.greedy_upper_bound},
                      {"root_lower_bound", r.root_lower_bound},
                      {"kill_sets_after_reduction", r.kill_sets_after_reduction}};
  j["log"] = r.log;
  out.result = std::move(j);
}

void cmd_mate(const Config& c, Outcome& out) {
  const LoadedGroup lg = load_group(c, out);
  const ChallengeSet x = load_set(c, lg.g, out);
  const bool proof_guided =
      c.strategy == "proof-guided" || (c.strategy == "auto" && is_m23_sized(lg.g));
  if (proof_guided) {
    if (!is_m23_sized(lg.g))
      throw InputError("strategy_unavailable", "the proof-guided strategy needs M23 on 23 points");
    m23::Context ctx = m23::Context::from_generators(lg.gens);
    build_tables(ctx, c, out);
    const auto t = Clock::now();
    const MateReport r = ctx.proof_guided_mate(x);
    out.timings["proof_guided_mate"] = since(t);
    out.result = mate_json(r, x, "proof_guided_mate");
    if (x.size() <= m23::kMateGuarantee && !(r.mate && r.verified))
      out.code = ExitCode::verification_failed;
    return;
  }
  ScanOptions opts;
  opts.workers = c.workers;
  if (c.budget) opts.budget = *c.budget;
  const auto t = Clock::now();
  MateReport r = find_mate(x, lg.g, opts);
  out.timings["find_mate"] = since(t);
  if (r.mate) r.evidence = is_mate(*r.mate, x, lg.g, true).evidence;
  out.result = mate_json(r, x, "find_mate");
}

void cmd_certify(const Config& c, Outcome& out) {
  const LoadedGroup lg = load_group(c, out);
  const std::uint64_t budget = c.budget.value_or(20'000'000);
  if (lg.g.order() > budget)
    throw BudgetError("group_too_large", "|G| = " + lg.g.order().str() + " exceeds --budget " +
                                             std::to_string(budget));
  const ChallengeSet x = load_set(c, lg.g, out);
  const auto t = Clock::now();
  const auto o = verify_mateless(lg.g, x, nullptr, scan_control(c, out, "certify"));
  out.timings["verify_mateless"] = since(t);
  out.result = {{"operation", "verify_mateless"},
                {"set_size", x.size()},
                {"outcome", o.mateless_confirmed ? "confirmed-mateless" : "refuted"},
                {"mate", o.mate ? json(format_cycles(*o.mate)) : json(nullptr)},
                {"scanned", o.scanned},
                {"kills_per_element", o.kills_per_element}};
  if (!o.mateless_confirmed) out.code = ExitCode::verification_failed;
}

void cmd_m23_ingredients(const Config& c, Outcome& out) {
  m23::Context ctx = load_m23(c, out);
  build_tables(ctx, c, out);
  const bool exhaustive = c.tier == "long";

  std::vector<m23::IngredientReport> reps;
  auto run = [&](auto&& fn) {
    const auto t = Clock::now();
    m23::IngredientReport r = fn();
    out.timings[r.name] = since(t);
    reps.push_back(std::move(r));
  };
  auto mode = [&](const std::string& name) {
    m23::VerifyMode m;
    m.exhaustive = exhaustive;
    m.samples = kFastSamples;
    m.seed = c.seed;
    m.scan = scan_control(c, out, name);
    return m;
  };
  run([&] { return ctx.verify_order(c.workers); });
  run([&] { return ctx.verify_sylow_table(50, c.seed); });
  run([&] { return ctx.verify_five_copies(1000, 100, 100, c.seed); });
  run([&] { return ctx.verify_order11_normalizers(200, c.seed); });
  run([&] { return ctx.verify_spectra(c.workers); });
  run([&] { return ctx.verify_unique_maximal(mode("unique_maximal")); });
  run([&] { return ctx.verify_order14_step(mode("order14_step")); });

  json ingredients = json::array();
  std::vector<std::string> failed, degraded;
  for (const auto& r : reps) {
    ingredients.push_back(r.to_json());
    if (r.status == m23::CheckStatus::failed) failed.push_back(r.name);
    if (r.status == m23::CheckStatus::degraded) degraded.push_back(r.name);
  }
  std::string lower;
  if (!failed.empty()) {
    lower = "lower-bound argument NOT verified: failed";
    for (const auto& f : failed) lower += " " + f;
    out.code = ExitCode::verification_failed;
  } else {
    lower = exhaustive ? "lower-bound argument verified (long tier: exhaustive)"
                       : "lower-bound argument verified (fast tier: sampled)";
    if (!degraded.empty()) lower += "; degraded scope in";
    for (const auto& d : degraded) lower += " " + d;
  }
  out.result = {{"operation", "verify_ingredients"},
                {"tier", c.tier},
                {"tables", ctx.tables().build_counts()},
                {"ingredients", ingredients},
                {"verdict",
                 {{"lower_bound", lower},
                  {"upper_bound", "external citation, certificate support available"},
                  {"all_passed", failed.empty()}}}};
}

void cmd_m23_find_mate(const Config& c, Outcome& out) {
  m23::Context ctx = load_m23(c, out);
  const ChallengeSet x = load_set(c, ctx.group(), out);
  build_tables(ctx, c, out);
  const auto t = Clock::now();
  const MateReport r = ctx.proof_guided_mate(x);
  out.timings["proof_guided_mate"] = since(t);
  out.result = mate_json(r, x, "proof_guided_mate");
  if (x.size() <= m23::kMateGuarantee && !(r.mate && r.verified))
    out.code = ExitCode::verification_failed;
}

void cmd_m23_certificate(const Config& c, Outcome& out) {
  m23::Context ctx = load_m23(c, out);
  const ChallengeSet x = load_set(c, ctx.group(), out);
  build_tables(ctx, c, out);
  m23::VerifyMode mode;
  mode.exhaustive = c.tier == "long";
  mode.samples = c.samples;
  mode.seed = c.seed;
  mode.scan = scan_control(c, out, "certificate");
  mode.scan.fingerprint += "|" + out.hashes.dump();
  const auto t = Clock::now();
  const m23::CertificateReport r = ctx.verify_witness_certificate(x, mode);
  out.timings["verify_witness_certificate"] = since(t);

  std::string outcome;
  if (r.outcome.mate)
    outcome = "refuted";
  else if (r.outcome.mateless_confirmed)
    outcome = "confirmed-mateless";
  else
    outcome = "not refuted by " + std::to_string(r.outcome.scanned) + " sampled y (not a proof)";
  json j{{"operation", "verify_witness_certificate"},
         {"set_size", x.size()},
         {"mode", mode.exhaustive ? "exhaustive" : "sampled"},
         {"outcome", outcome},
         {"refuted_by", r.refuted_by.empty() ? json(nullptr) : json(r.refuted_by)},
         {"mate", r.outcome.mate ? json(format_cycles(*r.outcome.mate)) : json(nullptr)}};
  if (r.outcome.mate) j["mate_rank"] = r.outcome.mate_rank;
  j["y_total"] = r.y_total;
  j["scanned"] = r.outcome.scanned;
  j["hint_kills"] = r.outcome.hint_kills;
  j["scan_kills"] = r.outcome.scan_kills;
  out.result = std::move(j);
  if (r.outcome.mate) out.code = ExitCode::verification_failed;
}

void cmd_m23_make_challenge(const Config& c, Outcome& out) {
  m23::Context ctx = load_m23(c, out);
  build_tables(ctx, c, out);
  static const std::map<std::string, m23::ChallengeKind> kinds{
      {"uniform", m23::ChallengeKind::uniform},
      {"order11", m23::ChallengeKind::order11},
      {"order11_packed", m23::ChallengeKind::order11_packed},
      {"mixed", m23::ChallengeKind::mixed}};
  const ChallengeSet x = m23::random_challenge(ctx, kinds.at(c.kind), c.size, c.seed);
  const std::string text = write_permutation_list(
      m23::kDegree, x.elements,
      "challenge set: kind " + c.kind + ", size " + std::to_string(c.size) + ", seed " +
          std::to_string(c.seed));
  if (c.out_file.empty()) throw InputError("missing_output", "--out <file> is required");
  std::ofstream(c.out_file, std::ios::binary) << text;
  out.result = {{"operation", "random_challenge"},
                {"kind", c.kind},
                {"size", x.size()},
                {"file", fs::path(c.out_file).filename().string()},
                {"sha256", sha256_hex(text)}};
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent * 2, ' ');
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      os << pad << key << ":\n";
      render(os, v, indent + 1);
    } else if (v.is_array() && !v.empty() && v.front().is_structured()) {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        render(os, v[i], indent + 2);
      }
    } else if (v.is_array()) {
      os << pad << key << ":";
      if (v.size() > 32) {
        os << " (" << v.size() << " entries)\n";
        for (const auto& e : v) os << pad << "  " << (e.is_string() ? e.get<std::string>() : e.dump()) << '\n';
      } else {
        for (const auto& e : v) os << ' ' << (e.is_string() ? e.get<std::string>() : e.dump());
        os << '\n';
      }
    } else {
      os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

int emit(const Config& c, const Outcome& out, const std::optional<json>& error, double seconds) {
  json report{{"tool", {{"name", "spreadkit"}, {"version", SPREADKIT_VERSION}}},
              {"config", c.echo()},
              {"data_hashes", out.hashes}};
  if (error) {
    report["error"] = *error;
  } else {
    report["result"] = out.result;
  }
  report["exit_code"] = static_cast<int>(error ? (*error)["exit_code"].get<int>()
                                               : static_cast<int>(out.code));
  json runtime{{"seconds", seconds},
               {"workers", c.workers},
               {"isa", std::string(kernels::isa_name(kernels::active().isa))}};
  if (!out.timings.empty()) runtime["phases"] = out.timings;
  report["runtime"] = runtime;

  if (c.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    render(std::cout, report, 0);
    if (error) std::cerr << "error: " << (*error)["message"].get<std::string>() << '\n';
  }
  return report["exit_code"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"spreadkit: spread of finite permutation groups and the M23 verification suite"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "RNG seed (default 8064)");
    sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  };
  auto with_group = [&](CLI::App* sub) {
    sub->add_option("group_file", c.group_file, "Generator file")->required()->check(CLI::ExistingFile);
  };
  auto m23_opts = [&](CLI::App* sub) {
    sub->add_option("--data-dir", c.data_dir, "Directory with m23-generators.txt and m23-m11-words.txt");
    sub->add_option("--tier", c.tier, "fast (sampled) or long (exhaustive)")
        ->check(CLI::IsMember({"fast", "long"}));
    sub->add_option("--checkpoint-dir", c.checkpoint_dir, "Checkpoint directory for long scans");
  };

  auto* order = app.add_subcommand("order", "Order of the group generated by a generator file");
  common(order);
  with_group(order);

  auto* spread = app.add_subcommand("spread", "Exact spread of a small group");
  common(spread);
  with_group(spread);
  spread->add_flag("--exact", c.exact, "Exact spread by minimum hitting set (default)");
  spread->add_option("--budget", c.budget, "Largest |G| to enumerate");
  spread->add_option("--at-least", c.at_least, "Randomized test of spread >= R instead");
  spread->add_option("--trials", c.trials, "Trials for --at-least");

  auto* mate = app.add_subcommand("mate", "Find a mate for a challenge set");
  common(mate);
  with_group(mate);
  mate->add_option("--set", c.set_file, "Challenge set file")->required()->check(CLI::ExistingFile);
  mate->add_option("--budget", c.budget, "Largest |G| to scan");
  mate->add_option("--strategy", c.strategy, "auto, scan or proof-guided")
      ->check(CLI::IsMember({"auto", "scan", "proof-guided"}));

  auto* certify = app.add_subcommand("certify", "Check that a challenge set has no mate (exhaustive)");
  common(certify);
  with_group(certify);
  certify->add_option("--set", c.set_file, "Claimed mateless set")->required()->check(CLI::ExistingFile);
  certify->add_option("--budget", c.budget, "Largest |G| to scan");
  certify->add_option("--checkpoint-dir", c.checkpoint_dir, "Checkpoint directory");

  auto* m = app.add_subcommand("m23", "M23 checks");
  m->require_subcommand(1);
  auto* ingredients = m->add_subcommand("verify-ingredients", "Verify every ingredient of the lower bound");
  common(ingredients);
  m23_opts(ingredients);
  auto* find = m->add_subcommand("find-mate", "Proof-guided mate for a challenge set");
  common(find);
  m23_opts(find);
  find->add_option("--set", c.set_file, "Challenge set file")->required()->check(CLI::ExistingFile);
  auto* cert = m->add_subcommand("verify-certificate", "Check a claimed mateless set");
  common(cert);
  m23_opts(cert);
  cert->add_option("--set", c.set_file, "Claimed mateless set")->required()->check(CLI::ExistingFile);
  cert->add_option("--samples", c.samples, "Sampled y in the fast tier");
  auto* make = m->add_subcommand("make-challenge", "Write a seeded random challenge set");
  common(make);
  m23_opts(make);
  make->add_option("--kind", c.kind, "uniform, order11, order11_packed or mixed")
      ->check(CLI::IsMember({"uniform", "order11", "order11_packed", "mixed"}));
  make->add_option("--size", c.size, "Number of elements");
  make->add_option("--out", c.out_file, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::input_error);
  }

  std::map<CLI::App*, std::pair<std::string, void (*)(const Config&, Outcome&)>> dispatch{
      {order, {"order", cmd_order}},
      {spread, {"spread", cmd_spread}},
      {mate, {"mate", cmd_mate}},
      {certify, {"certify", cmd_certify}},
      {ingredients, {"m23 verify-ingredients", cmd_m23_ingredients}},
      {find, {"m23 find-mate", cmd_m23_find_mate}},
      {cert, {"m23 verify-certificate", cmd_m23_certificate}},
      {make, {"m23 make-challenge", cmd_m23_make_challenge}}};
  void (*fn)(const Config&, Outcome&) = nullptr;
  for (auto& [sub, entry] : dispatch)
    if (sub->parsed()) c.command = entry.first, fn = entry.second;

  const auto t = Clock::now();
  Outcome out;
  std::optional<json> error;
  try {
    fn(c, out);
  } catch (const Error& e) {
    error = json{{"code", e.name()}, {"exit_code", static_cast<int>(e.code())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    error = json{{"code", "internal_error"},
                 {"exit_code", static_cast<int>(ExitCode::verification_failed)},
                 {"message", e.what()}};
  }
  return emit(c, out, error, since(t));
}
