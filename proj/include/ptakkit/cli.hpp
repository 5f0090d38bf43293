#pragma once

// Command implementations behind the ptakkit executable. Every command
// produces a JSON report; exit status is 0 on success, 1 when a verification
// fails and 2 on usage or input errors.

#include "ptakkit/family.hpp"
#include "ptakkit/family_spec.hpp"
#include "ptakkit/fictitious_play.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/homogeneous.hpp"
#include "ptakkit/interval.hpp"
#include "ptakkit/io.hpp"
#include "ptakkit/norm.hpp"
#include "ptakkit/rational.hpp"
#include "ptakkit/rng.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ptakkit::cli {

using io::Json;

enum class Command { delta, certificate_verify, norm, search, trace, interval_bound, gen, oracle, suite };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::delta: return "delta";
    case Command::certificate_verify: return "certificate-verify";
    case Command::norm: return "norm";
    case Command::search: return "search";
    case Command::trace: return "trace";
    case Command::interval_bound: return "interval-bound";
    case Command::gen: return "gen";
    case Command::oracle: return "oracle";
    case Command::suite: return "suite";
  }
  return "?";
}

struct RunConfig {
  Command command = Command::delta;
  std::string family_path;
  std::string certificate_path;
  std::string vector_path;
  std::string system_path;
  std::string output_path;       // report (or generated file for gen); empty = stdout
  std::string certificate_out;   // delta: also write the bare certificate here
  std::string subset;            // trace: comma separated labels
  std::string kind;              // gen
  int n = 0;
  int k = 0;
  int pieces = 1;
  int sets = 0;
  int count = 40;
  int grid = 0;
  std::uint64_t seed = 0;
  Rational epsilon{1, 1000000};
  Rational min_measure{1, 4};
  long max_iters = 1'000'000;
  long node_budget = 1'000'000;
  bool timestamp = true;
};

struct Outcome {
  int exit_code = 0;
  Json report;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// FNV-1a, 64 bit, as 16 hex digits.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::FormatError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

namespace detail {

struct LoadedFile {
  Json json;
  std::string digest;
};

inline LoadedFile load(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("missing --") + what);
  std::string text = read_file(path);
  try {
    return {io::parse_json_text(text), digest(text)};
  } catch (const io::FormatError& e) {
    throw io::FormatError("'" + path + "': " + e.what());
  }
}

inline Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

inline std::vector<int> parse_labels(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--subset: '" + item + "' is not a label");
    }
  }
  return out;
}

inline Json family_summary(const HereditaryFamily& fam) {
  return Json{{"n", fam.n()}, {"maximal_sets", fam.maximal().size()}, {"max_member_size", fam.max_member_size()}};
}

inline Outcome cmd_delta(const RunConfig& cfg) {
  auto file = load(cfg.family_path, "family");
  HereditaryFamily fam = io::family_from_json(file.json);
  GameValueResult res = delta_exact(fam);
  CertificateCheck check = verify_certificate(fam, res);
  Json report{{"command", "delta"},
              {"inputs", {{"family", file.digest}}},
              {"family", family_summary(fam)},
              {"delta", to_string(res.delta)},
              {"pivots", res.pivots},
              {"certificate", io::certificate_to_json(res)},
              {"certificate_verified", check.ok}};
  if (!cfg.certificate_out.empty()) {
    std::ofstream out(cfg.certificate_out);
    if (!out) throw UsageError("cannot write '" + cfg.certificate_out + "'");
    out << io::dump(io::certificate_to_json(res));
  }
  return {check.ok ? kExitOk : kExitVerifyFailed, std::move(report)};
}

inline Outcome cmd_certificate_verify(const RunConfig& cfg) {
  auto fam_file = load(cfg.family_path, "family");
  auto cert_file = load(cfg.certificate_path, "certificate");
  HereditaryFamily fam = io::family_from_json(fam_file.json);
  GameValueResult res = io::certificate_from_json(cert_file.json, fam);
  CertificateCheck check = verify_certificate(fam, res);
  Json report{{"command", "certificate-verify"},
              {"inputs", {{"family", fam_file.digest}, {"certificate", cert_file.digest}}},
              {"delta", to_string(res.delta)},
              {"ok", check.ok},
              {"reason", describe(check.issue)}};
  return {check.ok ? kExitOk : kExitVerifyFailed, std::move(report)};
}

inline Outcome cmd_norm(const RunConfig& cfg) {
  auto file = load(cfg.family_path, "family");
  HereditaryFamily fam = io::family_from_json(file.json);
  const Rational delta = delta_exact(fam).delta;
  const Rational ratio = min_ratio_nonneg(fam);
  bool ok = ratio == delta;
  Json report{{"command", "norm"},
              {"inputs", {{"family", file.digest}}},
              {"family", family_summary(fam)},
              {"delta", to_string(delta)},
              {"min_ratio_nonneg", to_string(ratio)},
              {"basis_vector_norms", rationals_json(basis_vector_norms(fam))}};
  if (!cfg.vector_path.empty()) {
    auto vfile = load(cfg.vector_path, "vector");
    report["inputs"]["vector"] = vfile.digest;
    FamilyVector x = io::vector_from_json(vfile.json);
    if (x.n() != fam.n()) {
      throw io::FormatError("field 'coords': has " + std::to_string(x.n()) + " entries, family has n=" +
                            std::to_string(fam.n()));
    }
    EquivalenceReport eq = check_equivalence(fam, x, delta);
    report["equivalence"] = Json{{"l1", to_string(eq.l1)},
                                 {"fnorm", to_string(eq.fnorm)},
                                 {"lower_bound", to_string(delta / 2 * eq.l1)},
                                 {"lower_ok", eq.lower_ok},
                                 {"upper_ok", eq.upper_ok},
                                 {"nonnegative", eq.nonnegative},
                                 {"nonneg_ok", eq.nonneg_ok}};
    ok = ok && eq.ok();
  }
  if (cfg.grid > 0) {
    SignedRatioProbe probe = min_ratio_signed_bruteforce(fam, cfg.grid);
    report["signed_probe"] = Json{{"grid", cfg.grid},
                                  {"ratio", to_string(probe.ratio)},
                                  {"argmin_numerators", probe.argmin},
                                  {"at_least_half_delta", probe.ratio >= delta / 2}};
    ok = ok && probe.ratio >= delta / 2;
  }
  report["ok"] = ok;
  return {ok ? kExitOk : kExitVerifyFailed, std::move(report)};
}

inline Outcome cmd_search(const RunConfig& cfg) {
  auto file = load(cfg.family_path, "family");
  HereditaryFamily fam = io::family_from_json(file.json);
  const Rational delta = delta_exact(fam).delta;
  PtakBoundReport bound = ptak_bound_check(fam, delta, cfg.node_budget);
  SearchResult search = max_member(fam, cfg.node_budget);
  std::vector<int> order(static_cast<std::size_t>(fam.n()));
  std::iota(order.begin(), order.end(), 0);
  ElementSet greedy = greedy_member(fam, order);
  Json report{{"command", "search"},
              {"inputs", {{"family", file.digest}}},
              {"family", family_summary(fam)},
              {"max_member",
               {{"set", search.best.labels()},
                {"size", search.size},
                {"nodes_explored", search.nodes_explored},
                {"optimal", search.optimal}}},
              {"greedy_member", greedy.labels()},
              {"ptak_bound",
               {{"delta", to_string(delta)},
                {"n", bound.n},
                {"bound", bound.bound.get_si()},
                {"achieved", bound.achieved},
                {"uniform_best_response", bound.witness.labels()},
                {"ok", bound.ok}}}};
  return {bound.ok ? kExitOk : kExitVerifyFailed, std::move(report)};
}

inline Outcome cmd_trace(const RunConfig& cfg) {
  auto file = load(cfg.family_path, "family");
  HereditaryFamily fam = io::family_from_json(file.json);
  std::vector<int> labels = parse_labels(cfg.subset);
  ElementSet h;
  for (int s : labels) {
    if (s < 0 || s >= fam.n()) throw UsageError("--subset: label " + std::to_string(s) + " outside ground set");
    h.insert(s);
  }
  if (h.empty()) throw UsageError("--subset must name at least one label");
  TraceResult tr = trace(fam, h);
  Json family = io::family_to_json(tr.family);
  Json report{{"command", "trace"},
              {"inputs", {{"family", file.digest}}},
              {"subset", h.labels()},
              {"labels", tr.labels},
              {"family", std::move(family)},
              {"delta", to_string(delta_exact(tr.family).delta)}};
  return {kExitOk, std::move(report)};
}

inline Json helly_json(const IntervalSystem& sys) {
  const bool single = std::all_of(sys.sets.begin(), sys.sets.end(),
                                  [](const IntervalSet& c) { return c.pieces().size() == 1; });
  if (!single) return "not_applicable";
  return helly_check(sys);
}

inline Outcome cmd_interval_bound(const RunConfig& cfg) {
  auto file = load(cfg.system_path, "system");
  IntervalSystem sys = io::system_from_json(file.json);
  HereditaryFamily fam = trace_family(sys);
  MeasureBoundReport mb = measure_lower_bound(sys);
  Json measures = Json::array();
  for (const auto& c : sys.sets) measures.push_back(to_string(c.measure()));
  Json helly = helly_json(sys);
  const bool ok = mb.ok && helly != Json(false);
  Json report{{"command", "interval-bound"},
              {"inputs", {{"system", file.digest}}},
              {"measures", std::move(measures)},
              {"trace_family", io::family_to_json(fam)},
              {"bound", to_string(mb.bound)},
              {"delta", to_string(mb.delta)},
              {"measure_bound_ok", mb.ok},
              {"helly", std::move(helly)},
              {"ok", ok}};
  return {ok ? kExitOk : kExitVerifyFailed, std::move(report)};
}

inline Outcome cmd_oracle(const RunConfig& cfg) {
  auto file = load(cfg.family_path, "family");
  HereditaryFamily fam = io::family_from_json(file.json);
  if (cfg.max_iters < 1) throw UsageError("--max-iters must be >= 1");
  if (cfg.epsilon <= 0) throw UsageError("--epsilon must be positive");
  const Rational delta = delta_exact(fam).delta;
  FictitiousPlayResult fp = fictitious_play(fam, cfg.max_iters, cfg.epsilon);
  const bool contains = fp.contains(delta);
  const bool agree = abs(delta - fp.midpoint()) <= cfg.epsilon;
  Json report{{"command", "oracle"},
              {"inputs", {{"family", file.digest}}},
              {"family", family_summary(fam)},
              {"delta_exact", to_string(delta)},
              {"fictitious_play",
               {{"lower", to_string(fp.lower)},
                {"upper", to_string(fp.upper)},
                {"width", to_string(fp.width())},
                {"iterations", fp.iterations},
                {"converged", fp.converged}}},
              {"epsilon", to_string(cfg.epsilon)},
              {"bracket_contains_delta", contains},
              {"midpoint_within_epsilon", agree}};
  return {contains && (!fp.converged || agree) ? kExitOk : kExitVerifyFailed, std::move(report)};
}

inline Outcome cmd_gen(const RunConfig& cfg) {
  Json provenance{{"generator", cfg.kind}, {"seed", cfg.seed}, {"rng", Rng::kAlgorithm}};
  auto family_file = [&](const FamilySpec& fs) {
    HereditaryFamily fam = realize(fs);
    Json out = io::family_to_json(fam);
    out["spec"] = io::spec_to_json(fs);
    out["provenance"] = provenance;
    return out;
  };
  if (cfg.kind == "cycle-cliques") {
    if (cfg.n < 1) throw UsageError("--n must be >= 1");
    return {kExitOk, family_file(spec::GraphCliques{cfg.n, cycle_edges(cfg.n)})};
  }
  if (cfg.kind == "cycle-independent") {
    if (cfg.n < 1) throw UsageError("--n must be >= 1");
    return {kExitOk, family_file(spec::GraphIndependent{cfg.n, cycle_edges(cfg.n)})};
  }
  if (cfg.kind == "cardinality") {
    if (cfg.n < 1 || cfg.k < 0 || cfg.k > cfg.n) throw UsageError("need --n >= 1 and 0 <= --k <= n");
    return {kExitOk, family_file(spec::CardinalityBound{cfg.n, cfg.k})};
  }
  if (cfg.kind == "random") {
    if (cfg.n < 1 || cfg.n > kMaxGroundSize) throw UsageError("--n out of range");
    if (cfg.sets < 1) throw UsageError("--sets must be >= 1");
    Rng rng(cfg.seed);
    HereditaryFamily fam = random_family(rng, cfg.n, cfg.sets);
    Json out = io::family_to_json(fam);
    provenance["sets"] = cfg.sets;
    out["provenance"] = provenance;
    return {kExitOk, std::move(out)};
  }
  if (cfg.kind == "intervals") {
    IntervalSystem sys;
    try {
      sys = random_system(cfg.seed, cfg.n, cfg.pieces, cfg.min_measure);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    Json out = io::system_to_json(sys);
    provenance["pieces"] = cfg.pieces;
    provenance["min_measure"] = to_string(cfg.min_measure);
    out["provenance"] = provenance;
    return {kExitOk, std::move(out)};
  }
  throw UsageError("unknown --kind '" + cfg.kind +
                   "' (cycle-cliques, cycle-independent, cardinality, random, intervals)");
}

// ---- invariant suite ----

class Tally {
 public:
  void record(const std::string& name, bool ok) {
    auto it = std::find_if(rows_.begin(), rows_.end(), [&](const Row& r) { return r.name == name; });
    if (it == rows_.end()) {
      rows_.push_back({name, 0, 0});
      it = std::prev(rows_.end());
    }
    (ok ? it->passed : it->failed) += 1;
  }
  bool all_passed() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.failed == 0; });
  }
  Json to_json() const {
    Json out = Json::object();
    for (const auto& r : rows_) out[r.name] = Json{{"passed", r.passed}, {"failed", r.failed}};
    return out;
  }

 private:
  struct Row {
    std::string name;
    long passed;
    long failed;
  };
  std::vector<Row> rows_;
};

inline FamilyVector random_vector(Rng& rng, int n, bool nonnegative) {
  FamilyVector x;
  for (int s = 0; s < n; ++s) {
    const long num = nonnegative ? rng.between(0, 12) : rng.between(-12, 12);
    x.coords.push_back(fraction(num, rng.between(1, 6)));
  }
  if (x.is_zero()) x.coords[0] = 1;
  return x;
}

inline Rational brute_force_norm(const std::vector<ElementSet>& members, const FamilyVector& x) {
  Rational best;
  for (ElementSet f : members) {
    Rational sum;
    f.for_each([&](int s) { sum += x.coords[static_cast<std::size_t>(s)]; });
    if (abs(sum) > best) best = abs(sum);
  }
  return best;
}

inline void check_family(const HereditaryFamily& fam, Rng& rng, Tally& tally) {
  GameValueResult res = delta_exact(fam);
  tally.record("certificate_verifies", verify_certificate(fam, res).ok);
  GameValueResult tampered = res;
  tampered.delta += Rational(1, 1000000);
  tally.record("tampered_certificate_rejected", !verify_certificate(fam, tampered).ok);
  tally.record("min_ratio_nonneg_equals_delta", min_ratio_nonneg(fam) == res.delta);
  tally.record("full_powerset_iff_delta_one", is_full_powerset(fam) == (res.delta == 1));

  const std::vector<ElementSet> members = enumerate_members(fam);
  SearchResult search = max_member(fam);
  int brute_max = 0;
  for (ElementSet m : members) brute_max = std::max(brute_max, m.size());
  tally.record("max_member_matches_brute_force", !search.optimal || search.size == brute_max);
  tally.record("ptak_bound", ceil(res.delta * fam.n()) <= search.size);

  bool hereditary = true;
  for (ElementSet m : members) {
    for (std::uint64_t sub = m.mask();; sub = (sub - 1) & m.mask()) {
      hereditary = hereditary && fam.contains(ElementSet::from_mask(sub));
      if (sub == 0) break;
    }
  }
  tally.record("hereditary", hereditary);

  bool up_sets = true;
  for (ElementSet f : fam.maximal()) up_sets = up_sets && maximal_up_set(fam, f) == std::vector<ElementSet>{f};
  tally.record("maximal_up_set_singleton", up_sets);

  ElementSet h = ElementSet::from_mask(rng.next() & ElementSet::full(fam.n()).mask());
  if (h.empty()) h.insert(0);
  TraceResult tr = trace(fam, h);
  bool trace_ok = true;
  for (std::uint64_t sub = h.mask();; sub = (sub - 1) & h.mask()) {
    ElementSet a = ElementSet::from_mask(sub);
    trace_ok = trace_ok && tr.family.contains(compress(a, h)) == fam.contains(a);
    if (sub == 0) break;
  }
  tally.record("trace_identity", trace_ok);

  for (int i = 0; i < 8; ++i) {
    FamilyVector x = random_vector(rng, fam.n(), i % 2 == 0);
    EquivalenceReport eq = check_equivalence(fam, x, res.delta);
    tally.record("norm_sandwich", eq.ok());
    tally.record("norm_lossless_restriction", eq.fnorm == brute_force_norm(members, x));
  }

  FictitiousPlayResult fp = fictitious_play(fam, 200'000, Rational(1, 1000000));
  tally.record("oracle_bracket_contains_delta", fp.contains(res.delta));
}

inline void check_system(const IntervalSystem& sys, Tally& tally) {
  HereditaryFamily fam = trace_family(sys);
  bool sweep_ok = true;
  const std::uint64_t total = std::uint64_t{1} << sys.n();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ElementSet a = ElementSet::from_mask(mask);
    sweep_ok = sweep_ok && fam.contains(a) == common_point(sys, a);
  }
  tally.record("interval_sweep_matches_direct", sweep_ok);
  tally.record("interval_measure_bound", measure_lower_bound(sys).ok);
  const bool single = std::all_of(sys.sets.begin(), sys.sets.end(),
                                  [](const IntervalSet& c) { return c.pieces().size() == 1; });
  if (single) tally.record("interval_helly", helly_check(sys));
}

inline Outcome cmd_suite(const RunConfig& cfg) {
  const int max_n = cfg.n == 0 ? 8 : cfg.n;
  if (max_n < 1 || max_n > 12) throw UsageError("--n must be in [1, 12] for the suite");
  if (cfg.count < 1) throw UsageError("--count must be >= 1");
  Rng rng(cfg.seed);
  Tally tally;
  Json instances = Json::array();
  for (int i = 0; i < cfg.count; ++i) {
    const int n = static_cast<int>(rng.between(1, max_n));
    const int sets = static_cast<int>(rng.between(1, 40));
    HereditaryFamily fam = random_family(rng, n, sets);
    check_family(fam, rng, tally);
    instances.push_back(Json{{"kind", "family"},
                             {"n", n},
                             {"maximal_sets", fam.maximal().size()},
                             {"delta", to_string(delta_exact(fam).delta)}});

    const int pieces = static_cast<int>(rng.between(1, 3));
    const std::uint64_t sys_seed = rng.next();
    IntervalSystem sys = random_system(sys_seed, n, pieces, fraction(rng.between(0, 4), 10));
    check_system(sys, tally);
    instances.push_back(Json{{"kind", "intervals"},
                             {"n", n},
                             {"pieces", pieces},
                             {"bound", to_string(measure_lower_bound(sys).bound)}});
  }
  const bool ok = tally.all_passed();
  Json report{{"command", "suite"},
              {"seed", cfg.seed},
              {"rng", Rng::kAlgorithm},
              {"n", max_n},
              {"count", cfg.count},
              {"checks", tally.to_json()},
              {"instances", std::move(instances)},
              {"ok", ok}};
  return {ok ? kExitOk : kExitVerifyFailed, std::move(report)};
}

}  // namespace detail

inline Outcome run(const RunConfig& cfg) {
  Outcome out;
  switch (cfg.command) {
    case Command::delta: out = detail::cmd_delta(cfg); break;
    case Command::certificate_verify: out = detail::cmd_certificate_verify(cfg); break;
    case Command::norm: out = detail::cmd_norm(cfg); break;
    case Command::search: out = detail::cmd_search(cfg); break;
    case Command::trace: out = detail::cmd_trace(cfg); break;
    case Command::interval_bound: out = detail::cmd_interval_bound(cfg); break;
    case Command::gen: out = detail::cmd_gen(cfg); break;
    case Command::oracle: out = detail::cmd_oracle(cfg); break;
    case Command::suite: out = detail::cmd_suite(cfg); break;
  }
  if (cfg.command != Command::gen && cfg.timestamp) out.report["timestamp"] = utc_timestamp();
  return out;
}

}  // namespace ptakkit::cli
