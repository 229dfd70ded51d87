// SPDX-License-Identifier: Apache-2.0
//
// Closed-form versus Monte-Carlo agreement suite behind `fabc validate`.
// Every check compares an empirical frequency with its closed-form
// probability p0 and passes when |p_hat - p0| <= 3 sqrt(p0 (1 - p0) / n).

#ifndef FABC_VALIDATION_HPP
#define FABC_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fabc/channel.hpp"
#include "fabc/metrics.hpp"
#include "fabc/sweep.hpp"

namespace fabc {

struct ValidationOptions {
  SystemConfig base;
  CopulaOptions copula;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

ValidationOptions validation_options(const SweepSpec& spec);

struct ValidationCheck {
  std::string group;  // product_law, sampler, op, dor
  std::string name;
  double closed_form = 0.0;
  double estimate = 0.0;
  /// sqrt(p0 (1 - p0) / n), the standard error under the closed form.
  double null_se = 0.0;
  /// sqrt(p_hat (1 - p_hat) / n).
  double sample_se = 0.0;
  double z = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;

  bool all_passed() const;
  /// Deterministic text: no timings, fixed number formatting.
  std::string text() const;
};

/// Compares an empirical frequency (hits / n) with p0.
ValidationCheck compare_frequency(std::string group, std::string name, double p0, std::int64_t hits,
                                  std::int64_t n);

ValidationReport run_validation(const ValidationOptions& options);

}  // namespace fabc

#endif  // FABC_VALIDATION_HPP
