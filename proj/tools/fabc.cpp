// SPDX-License-Identifier: Apache-2.0
//
// fabc: sweeps, validation and debug access to the link-performance library.
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "fabc/channel.hpp"
#include "fabc/config.hpp"
#include "fabc/errors.hpp"
#include "fabc/specfun.hpp"
#include "fabc/sweep.hpp"
#include "fabc/validation.hpp"
#include "fabc/version.hpp"

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kIo = 3 };

struct Flags {
  std::string config;
  std::string metric;
  std::string engines;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string format = "csv";
  std::string out;
  std::string copula;
  std::string dor_mode;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "INI configuration file");
  cmd->add_option("--samples", f.samples, "Monte-Carlo sample count (>= 10000)");
  cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
  cmd->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  cmd->add_option("--copula", f.copula, "homogeneous | paper-literal | independence");
}

void add_sweep_flags(CLI::App* cmd, Flags& f) {
  add_common(cmd, f);
  cmd->add_option("--metric", f.metric, "op | dor");
  cmd->add_option("--engines", f.engines, "comma-separated subset of exact,asymptotic,mc");
  cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--dor-mode", f.dor_mode, "paper | corrected");
}

// Config file first, then flags on top, then validation, all before any computation.
fabc::SweepSpec resolve(const Flags& f) {
  fabc::SweepSpec spec = f.config.empty() ? fabc::SweepSpec{} : fabc::load_config(f.config);
  if (!f.metric.empty()) spec.metric = fabc::parse_metric(f.metric);
  if (!f.engines.empty()) spec.engines = fabc::parse_engines(f.engines);
  if (f.samples) spec.mc_samples = *f.samples;
  if (f.seed) spec.seed = *f.seed;
  if (f.workers) spec.workers = *f.workers;
  if (!f.copula.empty()) spec.copula.mode = fabc::parse_copula_mode(f.copula);
  if (!f.dor_mode.empty()) spec.dor_mode = fabc::parse_dor_mode(f.dor_mode);
  spec.validate();
  return spec;
}

int run_sweep_command(const Flags& f) {
  const fabc::SweepSpec spec = resolve(f);
  const auto format = f.format == "json" ? fabc::OutputFormat::json : fabc::OutputFormat::csv;
  const fabc::SweepResult result = fabc::run_sweep(spec);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (f.out.empty()) {
    std::cout << fabc::render(result, format);
  } else {
    fabc::emit(result, format, f.out);
  }
  return kOk;
}

int run_validate_command(const Flags& f) {
  const fabc::SweepSpec spec = resolve(f);
  const fabc::ValidationReport report = fabc::run_validation(fabc::validation_options(spec));
  std::cout << report.text();
  return report.all_passed() ? kOk : kValidationFailed;
}

int run_constants_command(const Flags& f) {
  const fabc::SweepSpec spec = resolve(f);
  const fabc::SystemConfig& cfg = spec.fixed;
  std::printf("euler_mascheroni %.17g\n", fabc::specfun::euler_mascheroni());
  std::printf("avg_snr %g dB = %.17g\n", cfg.avg_snr_db, fabc::db_to_linear(cfg.avg_snr_db));
  std::printf("snr_threshold %g dB = %.17g\n", cfg.snr_threshold_db, fabc::db_to_linear(cfg.snr_threshold_db));
  std::printf("dor_threshold paper %.17g\n", fabc::dor_threshold(cfg, fabc::DorThresholdMode::paper));
  std::printf("dor_threshold corrected %.17g\n", fabc::dor_threshold(cfg, fabc::DorThresholdMode::corrected));
  const auto profile = fabc::PortCorrelationProfile::from_config(cfg, spec.copula.clamp_floor);
  std::printf("port mu theta clamped\n");
  for (int k = 1; k <= profile.num_ports(); ++k) {
    const bool clamped = std::find(profile.clamped_ports().begin(), profile.clamped_ports().end(), k) !=
                         profile.clamped_ports().end();
    std::printf("%d %.17g %.17g %s\n", k, profile.mu()(k - 1), profile.theta()(k - 1), clamped ? "yes" : "no");
  }
  const fabc::CopulaSpec copula = fabc::make_copula(profile, spec.copula);
  std::printf("copula %s theta %.17g\n", fabc::to_string(copula.kind()), copula.theta());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluid-antenna backscatter link performance: closed forms, asymptotes and Monte-Carlo"};
  app.set_version_flag("--version", std::string("fabc ") + fabc::kVersion);
  app.require_subcommand(1);

  Flags flags;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep and write CSV or JSON");
  add_sweep_flags(sweep, flags);
  auto* emit = app.add_subcommand("emit", "like sweep, but --out is required");
  add_sweep_flags(emit, flags);
  emit->get_option("--out")->required();
  auto* validate = app.add_subcommand("validate", "closed-form versus Monte-Carlo agreement checks");
  add_common(validate, flags);
  auto* constants = app.add_subcommand("constants", "print constants and the correlation-to-theta table");
  add_common(constants, flags);

  std::vector<double> quantile_u;
  double quantile_tol = 1e-12;
  auto* quantile = app.add_subcommand("quantile", "inverse of the product-channel CDF");
  quantile->add_option("u", quantile_u, "probabilities in [0, 1)")->required();
  quantile->add_option("--tol", quantile_tol, "absolute CDF tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep || *emit) return run_sweep_command(flags);
    if (*validate) return run_validate_command(flags);
    if (*constants) return run_constants_command(flags);
    if (*quantile) {
      for (double u : quantile_u) {
        std::printf("%.17g %.17g\n", u, fabc::product_channel_quantile(u, quantile_tol));
      }
      return kOk;
    }
  } catch (const fabc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
