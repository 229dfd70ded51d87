// SPDX-License-Identifier: Apache-2.0

#include "fabc/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "fabc/errors.hpp"
#include "fabc/montecarlo.hpp"
#include "fabc/version.hpp"

namespace fabc {

const char* to_string(Metric metric) { return metric == Metric::op ? "op" : "dor"; }

const char* to_string(XAxis axis) { return axis == XAxis::avg_snr_db ? "avg_snr_db" : "payload_bits"; }

const char* to_string(VaryParam param) {
  switch (param) {
    case VaryParam::none: return "none";
    case VaryParam::fa_size: return "fa_size";
    case VaryParam::num_ports: return "num_ports";
  }
  return "?";
}

std::string to_string(const Engines& engines) {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(engines.exact, "exact");
  add(engines.asymptotic, "asymptotic");
  add(engines.montecarlo, "mc");
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void usage(const std::string& field, const std::string& why) {
  throw UsageError("invalid sweep field '" + field + "': " + why);
}

SystemConfig with_x(SystemConfig cfg, XAxis axis, double x) {
  if (axis == XAxis::avg_snr_db) {
    cfg.avg_snr_db = x;
  } else {
    cfg.payload_bits = x;
  }
  return cfg;
}

std::string describe(const SystemConfig& c) {
  std::ostringstream os;
  os << "num_ports=" << c.num_ports << " fa_size=" << format_number(c.fa_size)
     << " large_scale=" << format_number(c.large_scale) << " avg_snr_db=" << format_number(c.avg_snr_db)
     << " snr_threshold_db=" << format_number(c.snr_threshold_db)
     << " payload_bits=" << format_number(c.payload_bits) << " bandwidth_hz=" << format_number(c.bandwidth_hz)
     << " delay_threshold_s=" << format_number(c.delay_threshold_s);
  return os.str();
}

}  // namespace

void SweepSpec::validate() const {
  fixed.validate();
  if (x_values.empty()) usage("x_values", "must not be empty");
  for (std::size_t i = 0; i < x_values.size(); ++i) {
    if (!std::isfinite(x_values[i])) usage("x_values", "must be finite");
    if (i > 0 && !(x_values[i] > x_values[i - 1])) usage("x_values", "must be strictly increasing");
  }
  if (x_axis == XAxis::payload_bits && metric != Metric::dor) usage("x_axis", "payload_bits requires metric dor");
  if (vary != VaryParam::none) {
    if (vary_values.empty()) usage("vary_values", "must not be empty");
    for (double v : vary_values) {
      if (vary == VaryParam::num_ports && !(v >= 1.0 && v == std::floor(v) && v <= 1e6)) {
        usage("vary_values", "num_ports values must be positive integers");
      }
    }
  }
  if (!engines.exact && !engines.asymptotic && !engines.montecarlo) usage("engines", "select at least one engine");
  if (engines.montecarlo && mc_samples < kMinMcSamples) {
    usage("mc_samples", "must be >= " + std::to_string(kMinMcSamples));
  }
  if (copula.theta_override && !(*copula.theta_override >= 0.0 && std::isfinite(*copula.theta_override))) {
    usage("copula.theta", "must be finite and >= 0");
  }
  if (!(copula.clamp_floor >= 0.0) || !std::isfinite(copula.clamp_floor)) {
    usage("copula.clamp_floor", "must be finite and >= 0");
  }
  for (const auto& cfg : curve_configs()) {
    for (double x : x_values) with_x(cfg, x_axis, x).validate();
  }
}

std::vector<SystemConfig> SweepSpec::curve_configs() const {
  if (vary == VaryParam::none) return {fixed};
  std::vector<SystemConfig> out;
  for (double v : vary_values) {
    SystemConfig cfg = fixed;
    if (vary == VaryParam::fa_size) {
      cfg.fa_size = v;
    } else {
      cfg.num_ports = static_cast<int>(v);
    }
    out.push_back(cfg);
  }
  return out;
}

std::vector<std::string> SweepSpec::curve_ids() const {
  if (vary == VaryParam::none) return {"base"};
  std::vector<std::string> out;
  for (double v : vary_values) out.push_back((vary == VaryParam::fa_size ? "W=" : "K=") + format_number(v));
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  std::set<std::string> seen;
  auto warn = [&](const std::string& text) {
    if (seen.insert(text).second) result.warnings.push_back(text);
  };

  const auto configs = spec.curve_configs();
  const auto ids = spec.curve_ids();
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto profile = PortCorrelationProfile::from_config(configs[c], spec.copula.clamp_floor);
    const CopulaSpec copula = make_copula(profile, spec.copula);
    result.curves.push_back({ids[c], configs[c], profile.mu(), profile.theta(), copula.kind(), copula.theta(),
                             profile.clamped_ports()});
    const bool can_sample = copula.kind() != CopulaKind::clayton_paper_literal;
    if (spec.engines.montecarlo && !can_sample) {
      warn(ids[c] + ": Monte-Carlo skipped, the paper-literal form cannot be sampled");
    }

    for (double x : spec.x_values) {
      const SystemConfig cfg = with_x(configs[c], spec.x_axis, x);
      SweepRow row;
      row.curve_id = ids[c];
      row.x = x;
      try {
        const bool op = spec.metric == Metric::op;
        if (spec.engines.exact) {
          const MetricResult m =
              op ? outage_probability(cfg, copula) : delay_outage_rate(cfg, copula, spec.dor_mode);
          row.exact = m.value;
          for (const auto& w : m.warnings) warn(ids[c] + ": " + w);
        }
        if (spec.engines.asymptotic) {
          const MetricResult m = op ? outage_probability_asymptotic(cfg, profile, copula)
                                    : delay_outage_rate_asymptotic(cfg, profile, copula, spec.dor_mode);
          row.asymptotic = m.value;
          for (const auto& w : m.warnings) warn(ids[c] + " x=" + format_number(x) + ": asymptote: " + w);
        }
        if (spec.engines.montecarlo && can_sample) {
          const McEstimate e = op ? estimate_outage(cfg, copula, spec.mc_samples, spec.seed, spec.workers)
                                  : estimate_dor(cfg, copula, spec.dor_mode, spec.mc_samples, spec.seed, spec.workers);
          row.mc = e.estimate;
          row.mc_lo = e.ci_low;
          row.mc_hi = e.ci_high;
        }
      } catch (const UsageError& e) {
        throw UsageError(std::string(e.what()) + " [at " + describe(cfg) + "]");
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " [at " + describe(cfg) + "]");
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

namespace {

std::string cell(const std::optional<double>& v) {
  if (!v || std::isnan(*v)) return {};
  return format_number(*v);
}

nlohmann::ordered_json json_value(const std::optional<double>& v) {
  if (!v || std::isnan(*v)) return nullptr;
  return *v;
}

nlohmann::ordered_json json_config(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["num_ports"] = c.num_ports;
  j["fa_size"] = c.fa_size;
  j["large_scale"] = c.large_scale;
  j["avg_snr_db"] = c.avg_snr_db;
  j["snr_threshold_db"] = std::isinf(c.snr_threshold_db) ? nlohmann::ordered_json("-inf")
                                                         : nlohmann::ordered_json(c.snr_threshold_db);
  j["payload_bits"] = c.payload_bits;
  j["bandwidth_hz"] = c.bandwidth_hz;
  j["delay_threshold_s"] = c.delay_threshold_s;
  return j;
}

nlohmann::ordered_json json_vector(const Eigen::VectorXd& v) {
  auto j = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

nlohmann::ordered_json metadata(const SweepResult& result) {
  const SweepSpec& s = result.spec;
  nlohmann::ordered_json m;
  m["version"] = kVersion;
  m["metric"] = to_string(s.metric);
  m["x_axis"] = to_string(s.x_axis);
  m["x_values"] = s.x_values;
  m["vary"] = to_string(s.vary);
  m["vary_values"] = s.vary == VaryParam::none ? std::vector<double>{} : s.vary_values;
  m["engines"] = to_string(s.engines);
  m["seed"] = s.seed;
  m["mc_samples"] = s.mc_samples;
  m["config"] = json_config(s.fixed);
  m["copula"] = {{"mode", to_string(s.copula.mode)},
                 {"outer_index_rule", to_string(s.copula.outer_rule)},
                 {"theta_override", s.copula.theta_override ? nlohmann::ordered_json(*s.copula.theta_override)
                                                            : nlohmann::ordered_json(nullptr)},
                 {"clamp_floor", s.copula.clamp_floor}};
  m["dor_threshold_mode"] = to_string(s.dor_mode);

  // Every dB quantity that was converted, with its linear value.
  auto conversions = nlohmann::ordered_json::array();
  std::set<std::pair<std::string, double>> logged;
  auto log = [&](const std::string& name, double db) {
    if (!logged.insert({name, db}).second) return;
    conversions.push_back({{"quantity", name}, {"db", db}, {"linear", db_to_linear(db)}});
  };
  auto thresholds = nlohmann::ordered_json::array();
  std::set<double> payloads;
  for (const auto& curve : result.curves) {
    for (double x : s.x_values) {
      const SystemConfig cfg = with_x(curve.config, s.x_axis, x);
      log("avg_snr", cfg.avg_snr_db);
      if (s.metric == Metric::op) {
        if (std::isfinite(cfg.snr_threshold_db)) log("snr_threshold", cfg.snr_threshold_db);
      } else if (payloads.insert(cfg.payload_bits).second) {
        thresholds.push_back({{"payload_bits", cfg.payload_bits},
                              {"mode", to_string(s.dor_mode)},
                              {"threshold", dor_threshold(cfg, s.dor_mode)}});
      }
    }
  }
  m["db_to_linear"] = conversions;
  if (s.metric == Metric::dor) m["dor_thresholds"] = thresholds;

  auto curves = nlohmann::ordered_json::array();
  for (const auto& c : result.curves) {
    curves.push_back({{"curve_id", c.id},
                      {"num_ports", c.config.num_ports},
                      {"fa_size", c.config.fa_size},
                      {"mu", json_vector(c.mu)},
                      {"theta", json_vector(c.theta)},
                      {"copula", to_string(c.copula)},
                      {"copula_theta", c.copula_theta},
                      {"clamped_ports", c.clamped_ports}});
  }
  m["curves"] = curves;
  m["warnings"] = result.warnings;
  return m;
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "curve_id,x,exact,asymptotic,mc,mc_lo,mc_hi\n";
  for (const auto& r : result.rows) {
    os << r.curve_id << ',' << format_number(r.x) << ',' << cell(r.exact) << ',' << cell(r.asymptotic) << ','
       << cell(r.mc) << ',' << cell(r.mc_lo) << ',' << cell(r.mc_hi) << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  nlohmann::ordered_json j;
  j["metadata"] = metadata(result);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"curve_id", r.curve_id},
                    {"x", r.x},
                    {"exact", json_value(r.exact)},
                    {"asymptotic", json_value(r.asymptotic)},
                    {"mc", json_value(r.mc)},
                    {"mc_lo", json_value(r.mc_lo)},
                    {"mc_hi", json_value(r.mc_hi)}});
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

std::string render(const SweepResult& result, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::csv) {
    write_csv(result, os);
  } else {
    write_json(result, os);
  }
  return os.str();
}

void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  const std::string text = render(result, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace fabc
