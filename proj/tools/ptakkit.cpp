// ptakkit command-line front end.

#include "ptakkit/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using ptakkit::cli::Command;
using ptakkit::cli::RunConfig;

void add_rational(CLI::App* app, const std::string& name, ptakkit::Rational& target, std::string& text,
                  const std::string& help) {
  app->add_option(name, text, help)->each([&target, name](const std::string& v) {
    try {
      target = ptakkit::parse_rational(v);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError(name, e.what());
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptakkit: exact Pták constants, certificates, family norms and interval families"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("PTAKKIT_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: PTAKKIT_SEED='" << env << "' is not an unsigned integer\n";
      return ptakkit::cli::kExitUsage;
    }
  }
  std::string epsilon_text, measure_text;
  bool no_timestamp = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--out", cfg.output_path, "Write the report here instead of stdout");
    sub->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field from the report");
  };
  auto family_opt = [&](CLI::App* sub) {
    sub->add_option("-f,--family", cfg.family_path, "Family file (JSON)")->required();
  };

  auto* delta = app.add_subcommand("delta", "Exact Pták constant with primal/dual certificate");
  family_opt(delta);
  delta->add_option("--certificate-out", cfg.certificate_out, "Also write the bare certificate file");
  common(delta);

  auto* verify = app.add_subcommand("certificate-verify", "Check a certificate exactly");
  family_opt(verify);
  verify->add_option("-c,--certificate", cfg.certificate_path, "Certificate file (JSON)")->required();
  common(verify);

  auto* norm = app.add_subcommand("norm", "Family norm and its l1-equivalence constants");
  family_opt(norm);
  norm->add_option("-v,--vector", cfg.vector_path, "Vector file (JSON)");
  norm->add_option("--grid", cfg.grid, "Also run the signed-ratio grid probe at this resolution");
  common(norm);

  auto* search = app.add_subcommand("search", "Maximum homogeneous set and the delta*n guarantee");
  family_opt(search);
  search->add_option("--budget", cfg.node_budget, "Branch-and-bound node limit");
  common(search);

  auto* trace = app.add_subcommand("trace", "Trace of a family on a subset of the ground set");
  family_opt(trace);
  trace->add_option("--subset", cfg.subset, "Comma separated labels, e.g. 0,2")->required();
  common(trace);

  auto* interval = app.add_subcommand("interval-bound", "Intersection family of an interval system and its measure bound");
  interval->add_option("-s,--system", cfg.system_path, "Interval system file (JSON)")->required();
  common(interval);

  auto* gen = app.add_subcommand("gen", "Generate family or interval system files");
  gen->add_option("--kind", cfg.kind, "cycle-cliques | cycle-independent | cardinality | random | intervals")
      ->required();
  gen->add_option("--n", cfg.n, "Ground set size");
  gen->add_option("--k", cfg.k, "Cardinality bound");
  gen->add_option("--sets", cfg.sets, "Number of random sets (random)");
  gen->add_option("--pieces", cfg.pieces, "Pieces per interval set (intervals)");
  add_rational(gen, "--min-measure", cfg.min_measure, measure_text, "Minimum measure per set (intervals)");
  gen->add_option("--seed", cfg.seed, "Seed (default: $PTAKKIT_SEED or 0)");
  gen->add_option("-o,--out", cfg.output_path, "Output file instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "Fictitious-play bracket compared with the exact value");
  family_opt(oracle);
  add_rational(oracle, "--epsilon", cfg.epsilon, epsilon_text, "Target bracket width");
  oracle->add_option("--max-iters", cfg.max_iters, "Iteration limit");
  common(oracle);

  auto* suite = app.add_subcommand("suite", "Run the invariant suite on seeded random instances");
  suite->add_option("--seed", cfg.seed, "Seed (default: $PTAKKIT_SEED or 0)");
  suite->add_option("--n", cfg.n, "Largest ground set size (1..12, default 8)");
  suite->add_option("--count", cfg.count, "Number of instances of each kind");
  common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ptakkit::cli::kExitUsage;
  }
  cfg.timestamp = !no_timestamp;

  const std::pair<CLI::App*, Command> commands[] = {
      {delta, Command::delta},   {verify, Command::certificate_verify}, {norm, Command::norm},
      {search, Command::search}, {trace, Command::trace},               {interval, Command::interval_bound},
      {gen, Command::gen},       {oracle, Command::oracle},             {suite, Command::suite}};
  for (auto [sub, command] : commands) {
    if (sub->parsed()) cfg.command = command;
  }

  ptakkit::cli::Outcome outcome;
  try {
    outcome = ptakkit::cli::run(cfg);
  } catch (const ptakkit::io::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptakkit::cli::kExitUsage;
  } catch (const ptakkit::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptakkit::cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptakkit::cli::kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptakkit::cli::kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptakkit::cli::kExitUsage;
  }

  const std::string text = ptakkit::io::dump(outcome.report);
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
      return ptakkit::cli::kExitUsage;
    }
    out << text;
  }
  return outcome.exit_code;
}
