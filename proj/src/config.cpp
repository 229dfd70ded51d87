// SPDX-License-Identifier: Apache-2.0

#include "fabc/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "fabc/errors.hpp"

namespace fabc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view what, std::string_view text) {
  throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
}

}  // namespace

double parse_number(std::string_view text) {
  const std::string_view t = trim(text);
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* first = t.data();
  if (!t.empty() && t.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad_value("number", text);
  return value;
}

std::vector<double> parse_number_list(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) return {};
  if (t.find(':') != std::string_view::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) bad_value("range (expected start:step:stop)", text);
    const double start = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double stop = parse_number(parts[2]);
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
      bad_value("range (expected start <= stop, step > 0)", text);
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9)) + 1;
    if (count > 1000000) bad_value("range (too many points)", text);
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (auto part : split(t, ',')) out.push_back(parse_number(part));
  return out;
}

Metric parse_metric(std::string_view text) {
  if (text == "op") return Metric::op;
  if (text == "dor") return Metric::dor;
  bad_value("metric (op|dor)", text);
}

CopulaMode parse_copula_mode(std::string_view text) {
  if (text == "homogeneous") return CopulaMode::homogeneous;
  if (text == "paper-literal") return CopulaMode::paper_literal;
  if (text == "independence") return CopulaMode::independence;
  bad_value("copula mode (homogeneous|paper-literal|independence)", text);
}

OuterIndexRule parse_outer_rule(std::string_view text) {
  if (text == "last") return OuterIndexRule::last_port;
  if (text == "mean") return OuterIndexRule::mean_theta;
  if (text == "max") return OuterIndexRule::max_theta;
  bad_value("outer index rule (last|mean|max)", text);
}

DorThresholdMode parse_dor_mode(std::string_view text) {
  if (text == "paper") return DorThresholdMode::paper;
  if (text == "corrected") return DorThresholdMode::corrected;
  bad_value("DOR threshold mode (paper|corrected)", text);
}

Engines parse_engines(std::string_view text) {
  Engines e{false, false, false};
  for (auto part : split(text, ',')) {
    if (part == "exact") {
      e.exact = true;
    } else if (part == "asymptotic") {
      e.asymptotic = true;
    } else if (part == "mc") {
      e.montecarlo = true;
    } else {
      bad_value("engine (exact|asymptotic|mc)", part);
    }
  }
  return e;
}

namespace {

XAxis parse_x_axis(std::string_view text) {
  if (text == "avg_snr_db") return XAxis::avg_snr_db;
  if (text == "payload_bits") return XAxis::payload_bits;
  bad_value("x_axis (avg_snr_db|payload_bits)", text);
}

VaryParam parse_vary(std::string_view text) {
  if (text == "none") return VaryParam::none;
  if (text == "fa_size") return VaryParam::fa_size;
  if (text == "num_ports") return VaryParam::num_ports;
  bad_value("vary (none|fa_size|num_ports)", text);
}

template <typename Int>
Int parse_integer(std::string_view text) {
  const std::string_view t = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad_value("integer", text);
  return value;
}

using Setter = std::function<void(SweepSpec&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& grammar() {
  static const std::map<std::string, std::map<std::string, Setter>> g{
      {"system",
       {
           {"num_ports", [](SweepSpec& s, const std::string& v) { s.fixed.num_ports = parse_integer<int>(v); }},
           {"fa_size", [](SweepSpec& s, const std::string& v) { s.fixed.fa_size = parse_number(v); }},
           {"large_scale", [](SweepSpec& s, const std::string& v) { s.fixed.large_scale = parse_number(v); }},
           {"avg_snr_db", [](SweepSpec& s, const std::string& v) { s.fixed.avg_snr_db = parse_number(v); }},
           {"snr_threshold_db",
            [](SweepSpec& s, const std::string& v) { s.fixed.snr_threshold_db = parse_number(v); }},
           {"payload_bits", [](SweepSpec& s, const std::string& v) { s.fixed.payload_bits = parse_number(v); }},
           {"bandwidth_hz", [](SweepSpec& s, const std::string& v) { s.fixed.bandwidth_hz = parse_number(v); }},
           {"delay_threshold_s",
            [](SweepSpec& s, const std::string& v) { s.fixed.delay_threshold_s = parse_number(v); }},
       }},
      {"sweep",
       {
           {"metric", [](SweepSpec& s, const std::string& v) { s.metric = parse_metric(v); }},
           {"x_axis", [](SweepSpec& s, const std::string& v) { s.x_axis = parse_x_axis(v); }},
           {"x_values", [](SweepSpec& s, const std::string& v) { s.x_values = parse_number_list(v); }},
           {"vary", [](SweepSpec& s, const std::string& v) { s.vary = parse_vary(v); }},
           {"vary_values", [](SweepSpec& s, const std::string& v) { s.vary_values = parse_number_list(v); }},
           {"engines", [](SweepSpec& s, const std::string& v) { s.engines = parse_engines(v); }},
           {"mc_samples",
            [](SweepSpec& s, const std::string& v) { s.mc_samples = parse_integer<std::int64_t>(v); }},
           {"seed", [](SweepSpec& s, const std::string& v) { s.seed = parse_integer<std::uint64_t>(v); }},
           {"workers", [](SweepSpec& s, const std::string& v) { s.workers = parse_integer<unsigned>(v); }},
       }},
      {"copula",
       {
           {"mode", [](SweepSpec& s, const std::string& v) { s.copula.mode = parse_copula_mode(v); }},
           {"outer_index_rule",
            [](SweepSpec& s, const std::string& v) { s.copula.outer_rule = parse_outer_rule(v); }},
           {"theta", [](SweepSpec& s, const std::string& v) { s.copula.theta_override = parse_number(v); }},
           {"clamp_floor", [](SweepSpec& s, const std::string& v) { s.copula.clamp_floor = parse_number(v); }},
       }},
      {"dor",
       {
           {"threshold_mode", [](SweepSpec& s, const std::string& v) { s.dor_mode = parse_dor_mode(v); }},
       }},
  };
  return g;
}

}  // namespace

SweepSpec parse_config(std::istream& is, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(origin + ": " + e.message() + " at line " + std::to_string(e.line()));
  }
  SweepSpec spec;
  const auto& g = grammar();
  for (const auto& [section, body] : tree) {
    const auto sec = g.find(section);
    if (sec == g.end()) {
      if (!body.data().empty()) throw UsageError(origin + ": key '" + section + "' outside any section");
      throw UsageError(origin + ": unknown section [" + section + "]");
    }
    if (!body.data().empty()) throw UsageError(origin + ": key '" + section + "' outside any section");
    for (const auto& [key, node] : body) {
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end()) throw UsageError(origin + ": unknown key '" + key + "' in [" + section + "]");
      try {
        setter->second(spec, std::string(trim(node.data())));
      } catch (const UsageError& e) {
        throw UsageError(origin + ": [" + section + "] " + key + ": " + e.what());
      }
    }
  }
  spec.validate();
  return spec;
}

SweepSpec parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

SweepSpec load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read config file '" + path + "'");
  return parse_config(is, path);
}

}  // namespace fabc
