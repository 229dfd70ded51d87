// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps over the closed forms, their asymptotes and the
// Monte-Carlo oracle, and CSV / JSON output of the resulting curves.

#ifndef FABC_SWEEP_HPP
#define FABC_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fabc/channel.hpp"
#include "fabc/metrics.hpp"

namespace fabc {

enum class Metric { op, dor };
enum class XAxis { avg_snr_db, payload_bits };
/// Parameter that differs between curves.
enum class VaryParam { none, fa_size, num_ports };

struct Engines {
  bool exact = true;
  bool asymptotic = true;
  bool montecarlo = false;

  friend bool operator==(const Engines&, const Engines&) = default;
};

const char* to_string(Metric metric);
const char* to_string(XAxis axis);
const char* to_string(VaryParam param);
std::string to_string(const Engines& engines);

/// The empty-file defaults: OP against avg SNR 0..40 dB in 5 dB steps, one
/// curve per FA size in {0.5, 1, 2, 4, 6} at K = 4.
struct SweepSpec {
  Metric metric = Metric::op;
  XAxis x_axis = XAxis::avg_snr_db;
  std::vector<double> x_values{0, 5, 10, 15, 20, 25, 30, 35, 40};
  SystemConfig fixed;
  VaryParam vary = VaryParam::fa_size;
  std::vector<double> vary_values{0.5, 1, 2, 4, 6};
  Engines engines;
  std::int64_t mc_samples = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  CopulaOptions copula;
  DorThresholdMode dor_mode = DorThresholdMode::paper;

  /// Throws UsageError naming the offending field.
  void validate() const;
  /// One configuration per curve, in declaration order.
  std::vector<SystemConfig> curve_configs() const;
  std::vector<std::string> curve_ids() const;
};

struct SweepRow {
  std::string curve_id;
  double x = 0.0;
  std::optional<double> exact;
  std::optional<double> asymptotic;
  std::optional<double> mc;
  std::optional<double> mc_lo;
  std::optional<double> mc_hi;
};

struct CurveInfo {
  std::string id;
  SystemConfig config;
  Eigen::VectorXd mu;
  Eigen::VectorXd theta;
  CopulaKind copula = CopulaKind::independence;
  double copula_theta = 0.0;
  std::vector<int> clamped_ports;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<CurveInfo> curves;
  /// Curves in declaration order, x ascending within a curve.
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

SweepResult run_sweep(const SweepSpec& spec);

enum class OutputFormat { csv, json };

void write_csv(const SweepResult& result, std::ostream& os);
void write_json(const SweepResult& result, std::ostream& os);
std::string render(const SweepResult& result, OutputFormat format);

/// Writes the rendered result to `path`; IoError names the path on failure.
void emit(const SweepResult& result, OutputFormat format, const std::string& path);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

}  // namespace fabc

#endif  // FABC_SWEEP_HPP
