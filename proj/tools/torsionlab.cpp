// Command-line front end. Exit codes: 0 pass, 1 certificate failed,
// 2 invalid configuration, 3 solver failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "torsionlab/cli.hpp"
#include "torsionlab/errors.hpp"

namespace cli = torsionlab::cli;
using nlohmann::json;

namespace {

// Options whose values go into the parameter record under `key` when given.
struct ParamOptions {
  struct Scalar {
    std::string key;
    std::string value;
    CLI::Option* opt;
  };
  struct List {
    std::string key;
    std::vector<std::string> values;
    CLI::Option* opt;
    bool points;
  };
  struct Flag {
    std::string key;
    bool value = false;
    CLI::Option* opt;
  };
  std::vector<std::unique_ptr<Scalar>> scalars;
  std::vector<std::unique_ptr<List>> lists;
  std::vector<std::unique_ptr<Flag>> flags;

  void scalar(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    auto s = std::make_unique<Scalar>(Scalar{key, {}, nullptr});
    s->opt = app->add_option(name, s->value, help);
    scalars.push_back(std::move(s));
  }
  void list(CLI::App* app, const std::string& name, const std::string& key, const std::string& help,
            bool points = false) {
    auto l = std::make_unique<List>(List{key, {}, nullptr, points});
    l->opt = app->add_option(name, l->values, help);
    lists.push_back(std::move(l));
  }
  void flag(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    auto f = std::make_unique<Flag>(Flag{key, false, nullptr});
    f->opt = app->add_flag(name, f->value, help);
    flags.push_back(std::move(f));
  }

  void apply(json& params) const {
    for (const auto& s : scalars)
      if (s->opt->count()) params[s->key] = s->value;
    for (const auto& f : flags)
      if (f->opt->count()) params[f->key] = f->value;
    for (const auto& l : lists) {
      if (!l->opt->count()) continue;
      json a = json::array();
      for (const std::string& v : l->values) {
        if (!l->points) {
          a.push_back(v);
          continue;
        }
        const auto comma = v.find(',');
        if (comma == std::string::npos) throw torsionlab::InvalidArgument("point must be x,y: '" + v + "'");
        a.push_back(json::array({v.substr(0, comma), v.substr(comma + 1)}));
      }
      params[l->key] = std::move(a);
    }
  }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw torsionlab::InvalidArgument("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw torsionlab::InvalidArgument("config '" + path + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion function, Hardy inequality and comb localisation lab"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int threads = -1;
  auto* o_config = app.add_option("--config", config_path, "experiment config JSON; flags override it");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_threads = app.add_option("--threads", threads, "OpenMP threads (0 = default)");
  auto* o_out = app.add_option("--out", out_dir, "output directory");

  std::map<std::string, ParamOptions> opts;

  auto* geom = app.add_subcommand("geom", "area, inradius and distance field of a domain");
  geom->set_help_flag("--help", "Print this help message and exit");
  opts["geom"].scalar(geom, "--domain", "domain", "file or spec: square, rect:a=,b=, polygon:sides=,r=, comb:n=,alpha=,c=");
  opts["geom"].scalar(geom, "--resolution", "resolution", "samples per unit length");

  auto* solve = app.add_subcommand("solve", "torsion function on a grid");
  solve->set_help_flag("--help", "Print this help message and exit");
  opts["solve"].scalar(solve, "--domain", "domain", "file or spec");
  opts["solve"].scalar(solve, "--h", "h", "grid spacing");
  opts["solve"].scalar(solve, "--q", "q", "cells per comb tooth width when h is not given");
  opts["solve"].scalar(solve, "--tol", "tol", "relative residual");
  opts["solve"].flag(solve, "--eigen", "eigen", "also compute lambda_1");
  opts["solve"].flag(solve, "--no-field", "no_field", "skip field.csv");

  auto* eff = app.add_subcommand("efficiency", "efficiency bracket against the distance function");
  eff->set_help_flag("--help", "Print this help message and exit");
  opts["efficiency"].scalar(eff, "--domain", "domain", "file or spec");
  opts["efficiency"].scalar(eff, "--h", "h", "grid spacing");
  opts["efficiency"].scalar(eff, "--q", "q", "cells per comb tooth width when h is not given");
  opts["efficiency"].scalar(eff, "--tol", "tol", "relative residual");
  opts["efficiency"].scalar(eff, "--c-hardy", "c_hardy", "Hardy constant");
  opts["efficiency"].scalar(eff, "--csv", "csv", "append a summary row to this CSV");

  auto* sweep = app.add_subcommand("sweep", "comb family sweep over n");
  sweep->set_help_flag("--help", "Print this help message and exit");
  opts["sweep"].scalar(sweep, "--alpha", "alpha", "eps = c n^-alpha");
  opts["sweep"].scalar(sweep, "--c", "c", "eps = c n^-alpha");
  opts["sweep"].list(sweep, "--n", "n", "number of teeth (repeatable)");
  opts["sweep"].scalar(sweep, "--q", "q", "cells per tooth width");
  opts["sweep"].scalar(sweep, "--tol", "tol", "relative residual");
  opts["sweep"].flag(sweep, "--allow-large", "allow_large", "permit n > 64");

  auto* mc = app.add_subcommand("mc", "Monte Carlo experiments");
  mc->set_help_flag("--help", "Print this help message and exit");
  opts["mc"].scalar(mc, "--mode", "mode", "wos | hitting | halfstrip | lemma3");
  opts["mc"].scalar(mc, "--paths", "paths", "number of paths");
  opts["mc"].scalar(mc, "--eps-shell", "eps_shell", "walk-on-spheres absorption shell");
  opts["mc"].scalar(mc, "--domain", "domain", "file or spec (wos, lemma3)");
  opts["mc"].list(mc, "--point", "points", "x,y (repeatable)", true);
  opts["mc"].scalar(mc, "--h", "h", "solver spacing for the comparison");
  opts["mc"].flag(mc, "--no-compare", "no_compare", "skip the solver comparison (wos)");
  opts["mc"].scalar(mc, "--a", "a", "level (hitting), top height (halfstrip, lemma3)");
  opts["mc"].scalar(mc, "--b", "b", "strip width (halfstrip, lemma3)");
  opts["mc"].scalar(mc, "--x1", "x1", "start x1 (halfstrip)");
  opts["mc"].scalar(mc, "--x2", "x2", "start x2 (halfstrip)");
  opts["mc"].scalar(mc, "--p", "p", "frame left side (lemma3)");
  opts["mc"].list(mc, "--t", "times", "times for the joint bound (lemma3, repeatable)");
  opts["mc"].flag(mc, "--dump", "dump", "write the samples as CSV (hitting)");

  auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
  va->set_help_flag("--help", "Print this help message and exit");
  opts["verify-all"].scalar(va, "--paths", "paths", "Monte Carlo paths per estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitInvalidConfig;
  }

  try {
    cli::ExperimentConfig cfg;
    bool have_kind = false;
    if (o_config->count()) {
      cfg = cli::ExperimentConfig::from_json(read_json_file(config_path));
      have_kind = true;
    }
    if (!app.get_subcommands().empty()) {
      const auto* sub = app.get_subcommands().front();
      const auto kind = cli::kind_from_string(sub->get_name());
      if (have_kind && kind != cfg.kind) cfg.params = json::object();
      cfg.kind = kind;
      have_kind = true;
      opts[sub->get_name()].apply(cfg.params);
      // negative flags map onto positive parameters
      for (const auto& [neg, pos] : {std::pair{"no_field", "field"}, std::pair{"no_compare", "compare"}})
        if (cfg.params.contains(neg)) {
          cfg.params[pos] = !cfg.params[neg].get<bool>();
          cfg.params.erase(neg);
        }
    }
    if (!have_kind) {
      std::cerr << app.help();
      return cli::kExitInvalidConfig;
    }
    if (o_seed->count()) cfg.seed = seed;
    if (o_threads->count()) {
      if (threads < 0) throw torsionlab::InvalidArgument("--threads must be non-negative");
      cfg.threads = threads;
    }
    if (o_out->count()) cfg.output_dir = out_dir;

    cfg.validate();
    const cli::Report report = cli::run(cfg);
    std::cout << report.summary << '\n';
    for (const auto& c : report.checks)
      if (!c.pass)
        std::cout << "FAIL " << c.name << (c.where.empty() ? "" : " [" + c.where + "]") << ": " << c.lhs << ' '
                  << c.relation << ' ' << c.rhs << '\n';
    std::cout << (report.pass() ? "PASS" : "FAIL") << ": " << report.checks.size() << " checks, report in "
              << (cfg.output_dir / "report.json").string() << '\n';
    return cli::exit_code(report);
  } catch (const torsionlab::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return cli::kExitInvalidConfig;
  } catch (const torsionlab::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << " (iterations " << e.iterations() << ", residual "
              << e.residual() << ")\n";
    return cli::kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitSolverFailure;
  }
}
