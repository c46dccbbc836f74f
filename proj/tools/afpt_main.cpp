#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "afpt/cli.hpp"
#include "afpt/errors.hpp"

using afpt::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Almost-fixed points, centralizer certificates, Farey windows and multitwists"};
  app.set_version_flag("--version", std::string(afpt::cli::kVersion));
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help");

  RunConfig flags;
  std::string config_path;
  std::string radius_max, a, delta;
  // options given on the command line override the config file
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;

  const std::vector<std::pair<std::string, std::string>> subs{
      {"ball", "build a Cayley ball and report its size"},
      {"delta", "estimate delta on a Cayley ball"},
      {"afp", "almost-fixed set of H and midpoint certification"},
      {"extract", "constants and verified centralizer certificates"},
      {"farey", "Farey windows: delta sweep, orbit profile, distances"},
      {"multitwist", "check that the full multitwist commutes with H"}};
  for (const auto& [name, help] : subs) {
    auto* sub = app.add_subcommand(name, help);
    sub->set_help_flag("--help", "print this help");  // frees -h, --h for H
    auto add = [&](CLI::Option* opt, std::function<void(RunConfig&)> copy) { overrides.emplace_back(opt, std::move(copy)); };
    sub->add_option("--config", config_path, "key = value config file");
    add(sub->add_option("--group", flags.group, "built-in group (F2, F2xZ3, Z2*Z3, D_inf, ...) or definition file"),
        [&](RunConfig& c) { c.group = flags.group; });
    add(sub->add_option("--h", flags.h, "generator word of H (repeatable)"), [&](RunConfig& c) { c.h = flags.h; });
    add(sub->add_option("--radius", flags.radius, "ball radius"), [&](RunConfig& c) { c.radius = flags.radius; });
    add(sub->add_option("--radius-max", radius_max, "extract: grow the radius up to this value"),
        [&](RunConfig& c) { c.radius_max = std::stoi(radius_max); });
    add(sub->add_option("--action", flags.action, "extract: cayley or tree"),
        [&](RunConfig& c) { c.action = flags.action; });
    add(sub->add_option("--a", a, "almost-fixed threshold"), [&](RunConfig& c) { c.a = std::stoi(a); });
    add(sub->add_option("--delta", delta, "exact delta (p/q) or auto"), [&](RunConfig& c) { c.delta = delta; });
    add(sub->add_option("--delta-mode", flags.delta_mode, "exhaustive or sampled"),
        [&](RunConfig& c) { c.delta_mode = flags.delta_mode; });
    add(sub->add_option("--samples", flags.samples, "sampled delta: triangles"),
        [&](RunConfig& c) { c.samples = flags.samples; });
    add(sub->add_option("--formula", flags.formula, "plus4 or plus10"), [&](RunConfig& c) { c.formula = flags.formula; });
    add(sub->add_option("--order-bound", flags.order_bound, "largest power tried when bounding orders"),
        [&](RunConfig& c) { c.order_bound = flags.order_bound; });
    add(sub->add_option("--max-vertices", flags.max_vertices, "window size budget"),
        [&](RunConfig& c) { c.max_vertices = flags.max_vertices; });
    add(sub->add_option("--max-pairs", flags.max_pairs, "afp: far pairs to certify"),
        [&](RunConfig& c) { c.max_pairs = flags.max_pairs; });
    add(sub->add_option("--subgroup", flags.subgroup, "farey: S4, ST6, center2 or trivial"),
        [&](RunConfig& c) { c.subgroup = flags.subgroup; });
    add(sub->add_option("--depths", flags.depths, "farey: window depths")->delimiter(','),
        [&](RunConfig& c) { c.depths = flags.depths; });
    add(sub->add_option("--pairs", flags.pairs, "farey: distance queries s1:s2")->delimiter(','),
        [&](RunConfig& c) { c.pairs = flags.pairs; });
    add(sub->add_option("--action-file", flags.action_file, "multitwist: permutation action file"),
        [&](RunConfig& c) { c.action_file = flags.action_file; });
    add(sub->add_option("--seed", flags.seed, "random seed"), [&](RunConfig& c) { c.seed = flags.seed; });
    add(sub->add_option("--output", flags.output, "report path (default stdout)"),
        [&](RunConfig& c) { c.output = flags.output; });
    add(sub->add_option("--summary", flags.summary, "summary path (default stderr)"),
        [&](RunConfig& c) { c.summary = flags.summary; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return afpt::cli::kParseError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = afpt::cli::load_config(config_path);
    for (auto& [opt, copy] : overrides)
      if (opt->count() > 0) copy(config);
  } catch (const afpt::ParseError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return afpt::cli::kParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad integer option\n";
    return afpt::cli::kParseError;
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return afpt::cli::kInputError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();

  std::ofstream report_file, summary_file;
  std::ostream* report = &std::cout;
  std::ostream* summary = &std::cerr;
  if (!config.output.empty()) {
    report_file.open(config.output);
    if (!report_file) {
      std::cerr << "cannot write " << config.output << "\n";
      return afpt::cli::kInputError;
    }
    report = &report_file;
  }
  if (!config.summary.empty()) {
    summary_file.open(config.summary);
    if (!summary_file) {
      std::cerr << "cannot write " << config.summary << "\n";
      return afpt::cli::kInputError;
    }
    summary = &summary_file;
  }
  return afpt::cli::run(config, *report, *summary);
}
