// SPDX-License-Identifier: Apache-2.0
//
// INI configuration files. Every key is optional; an empty file gives the
// SweepSpec defaults. Unknown sections or keys are usage errors.
//
//   [system]  num_ports fa_size large_scale avg_snr_db snr_threshold_db
//             payload_bits bandwidth_hz delay_threshold_s
//   [sweep]   metric = op | dor
//             x_axis = avg_snr_db | payload_bits
//             x_values = comma-separated list, or start:step:stop
//             vary = none | fa_size | num_ports
//             vary_values = list as for x_values
//             engines = comma-separated subset of exact, asymptotic, mc
//             mc_samples, seed, workers
//   [copula]  mode = homogeneous | paper-literal | independence
//             outer_index_rule = last | mean | max
//             theta = homogeneous theta override (>= 0)
//             clamp_floor
//   [dor]     threshold_mode = paper | corrected

#ifndef FABC_CONFIG_HPP
#define FABC_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fabc/sweep.hpp"

namespace fabc {

/// Parses and validates. `origin` labels error messages.
SweepSpec parse_config(std::istream& is, const std::string& origin = "<config>");
SweepSpec parse_config_string(const std::string& text);
/// IoError if the file cannot be read.
SweepSpec load_config(const std::string& path);

Metric parse_metric(std::string_view text);
CopulaMode parse_copula_mode(std::string_view text);
OuterIndexRule parse_outer_rule(std::string_view text);
DorThresholdMode parse_dor_mode(std::string_view text);
Engines parse_engines(std::string_view text);
/// Comma list or start:step:stop (inclusive, step > 0).
std::vector<double> parse_number_list(std::string_view text);
double parse_number(std::string_view text);

}  // namespace fabc

#endif  // FABC_CONFIG_HPP
