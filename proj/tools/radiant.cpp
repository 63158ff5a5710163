// radiant: command-line front end for collective-decay spectra.
//
//   radiant <subcommand> [flags]
//
// Subcommands: sample | spectrum | dispersion | transform-check | mode-count |
// quotient | evolve. Exit codes: 0 success, 1 I/O, 2 usage/validation,
// 3 numerical failure or failed check.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "radiant/errors.hpp"

namespace {

using radiant::cli::RunConfig;

struct Subcommand {
  CLI::App* app = nullptr;
  std::function<int(const RunConfig&)> run;
  std::map<std::string, CLI::Option*> options;
};

class Options {
 public:
  Options(Subcommand& sub, RunConfig& cfg) : sub_(sub), cfg_(cfg) {}

  template <class T>
  Options& add(const std::string& name, T& field, const std::string& help) {
    sub_.options[name] = sub_.app->add_option("--" + name, field, help);
    return *this;
  }

  Options& physics() {
    add("k0", cfg_.k0, "resonant wavenumber (default 1)");
    add("mu", cfg_.mu, "inverse correlation length (default 0)");
    add("rho", cfg_.rho, "number density");
    return *this;
  }

  Options& sample() {
    add("radius", cfg_.radius, "sample radius");
    add("n", cfg_.n, "atom count (default: round(rho * 4/3 pi R^3))");
    add("seed", cfg_.seed, "RNG seed (default 0)");
    sub_.options["geometry"] = sub_.app->add_option("--geometry", geometry, "ball | dicke")
                                   ->check(CLI::IsMember({"ball", "dicke"}));
    return *this;
  }

  Options& common() {
    sub_.options["output"] = sub_.app->add_option("--output,-o", output, "output directory");
    sub_.options["format"] =
        sub_.app->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub_.app->add_option("--config", config_path, "JSON config file; flags win on conflict");
    return *this;
  }

  std::string geometry = "ball";
  std::string format = "csv";
  std::string output = ".";
  std::string config_path;

 private:
  Subcommand& sub_;
  RunConfig& cfg_;
};

}  // namespace

int main(int argc, char** argv) {
  namespace cli = radiant::cli;
  CLI::App app{"Collective decay spectra of coherent single-excitation atomic media"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::map<std::string, Subcommand> subs;
  std::map<std::string, std::unique_ptr<Options>> opts;

  auto make = [&](const std::string& name, const std::string& help,
                  std::function<int(const RunConfig&)> run) -> Options& {
    auto& sub = subs[name];
    sub.app = app.add_subcommand(name, help);
    sub.run = std::move(run);
    opts[name] = std::make_unique<Options>(sub, cfg);
    return opts[name]->common();
  };

  make("sample", "write a seeded atomic sample (CSV + JSON sidecar)", cli::cmd_sample)
      .physics()
      .sample();
  make("spectrum", "diagonalize the coupling matrix of a seeded sample", cli::cmd_spectrum)
      .physics()
      .sample()
      .add("ensemble", cfg.ensemble, "number of seeded runs (seeds seed..seed+M-1)")
      .add("threshold", cfg.threshold, "superradiance threshold on Re lambda (default 1)");
  subs["spectrum"].app->add_flag("--eigenvalues-only", cfg.eigenvalues_only,
                                 "skip eigenvectors and residuals");
  subs["spectrum"].app->add_flag("--dump-matrix", cfg.dump_matrix, "also write matrix.bin");
  make("dispersion", "closed-form continuum dispersion lambda(k) and peak summary",
       cli::cmd_dispersion)
      .physics()
      .add("k-min", cfg.k_min, "grid start (default 0)")
      .add("k-max", cfg.k_max, "grid end (default 3 k0)")
      .add("points", cfg.points, "grid size (default 400)");
  make("transform-check", "quadrature Fourier transform vs closed form", cli::cmd_transform_check)
      .physics()
      .add("k", cfg.k, "wavenumber (default 1)")
      .add("tol", cfg.tol, "quadrature relative tolerance (default 1e-9)");
  make("mode-count", "mode-counting identities", cli::cmd_mode_count)
      .physics()
      .add("box-side", cfg.box_side, "cubic box side for the shell mode count");
  make("quotient", "plane-wave Rayleigh quotient on a large random sample", cli::cmd_quotient)
      .physics()
      .sample()
      .add("ensemble", cfg.ensemble, "number of seeded runs")
      .add("carrier-k", cfg.carrier_k, "carrier |k| (default: peak of Re lambda(k))");
  make("evolve", "time-domain decay of a prepared state", cli::cmd_evolve)
      .physics()
      .sample()
      .add("t-max", cfg.t_max, "final time in units of 1/gamma (default 5)")
      .add("steps", cfg.steps, "number of time steps (default 100)")
      .add("initial", cfg.initial, "uniform | atom | top-mode | plane-wave");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    const Options& o = *opts[name];
    try {
      cfg.output_path = o.output;
      cfg.format = cli::parse_format(o.format);
      cfg.geometry = cli::parse_geometry(o.geometry);
      if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw radiant::IoError("cannot read config file " + o.config_path);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw radiant::InvalidArgument("config file " + o.config_path + ": " + e.what());
        }
        cli::apply_config_json(cfg, j, [&sub](const std::string& key) {
          auto it = sub.options.find(key);
          return it == sub.options.end() || it->second->count() == 0;
        });
      }
      return sub.run(cfg);
    } catch (const radiant::NumericalError& e) {
      std::cerr << "numerical failure: " << e.what() << " (iteration cap " << e.iterations()
                << ", worst residual " << e.achieved() << ")\n";
      return cli::kExitNumerical;
    } catch (const radiant::IoError& e) {
      std::cerr << "I/O error: " << e.what() << '\n';
      return cli::kExitIo;
    } catch (const std::logic_error& e) {
      // InvalidArgument, DomainError and RegimeError all derive from logic_error.
      std::cerr << "error: " << e.what() << "\n\n" << sub.app->help();
      return cli::kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kExitIo;
    }
  }
  return cli::kExitUsage;
}
