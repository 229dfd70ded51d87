// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Prints one PASS/FAIL line per criterion followed by
// indented diagnostics, and exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fabc/channel.hpp"
#include "fabc/copula.hpp"
#include "fabc/metrics.hpp"
#include "fabc/random.hpp"
#include "fabc/specfun.hpp"
#include "fabc/validation.hpp"
#include "oracles.hpp"

using namespace fabc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <typename... Args>
std::string fmtn(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  g.back() = hi;
  return g;
}

SystemConfig config(int ports, double w, double snr_db) {
  SystemConfig c;
  c.num_ports = ports;
  c.fa_size = w;
  c.avg_snr_db = snr_db;
  return c;
}

double op(const SystemConfig& c) { return outage_probability(c).value; }
double dor(const SystemConfig& c, DorThresholdMode m = DorThresholdMode::paper) {
  return delay_outage_rate(c, CopulaOptions{}, m).value;
}

Outcome special_functions() {
  Outcome o;
  const auto t0 = Clock::now();
  const specfun::AccuracyBudget budget(1e-12, 1e-14);
  double worst_j0 = 0.0;
  int bad_j0 = 0;
  for (double x : log_grid(1e-3, 200.0, 1000)) {
    const double ref = static_cast<double>(oracle::j0(x));
    const double v = specfun::bessel_j0(x);
    worst_j0 = std::max(worst_j0, std::fabs(v - ref) / std::max(std::fabs(ref), 1e-2));
    bad_j0 += budget.accepts(v, ref) ? 0 : 1;
  }
  double worst_k1 = 0.0;
  int bad_k1 = 0;
  for (double x : log_grid(1e-3, 700.0, 1000)) {
    const double ref = static_cast<double>(oracle::k1(x));
    const double v = specfun::bessel_k1(x);
    const double rel = std::fabs(v - ref) / ref;
    worst_k1 = std::max(worst_k1, rel);
    bad_k1 += rel <= 1e-12 ? 0 : 1;
  }
  const double t = seconds_since(t0);
  o.require(bad_j0 == 0, fmtn("J0 on 1000 log-spaced points in [1e-3, 200]: %d outside |d| <= 1e-12|ref| + 1e-14 "
                              "(worst scaled error %.2e)", bad_j0, worst_j0));
  o.require(bad_k1 == 0,
            fmtn("K1 on 1000 log-spaced points in [1e-3, 700]: %d above relative 1e-12 (worst %.2e)", bad_k1, worst_k1));
  o.require(t < 1.0, fmt("runtime including oracles %.3f s < 1 s", t));
  return o;
}

Outcome product_law() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::int64_t n = 1000000;
  const double probes[] = {0.1, 1.0, 5.0};
  std::array<std::int64_t, 3> hits{};
  rng::Engine engine = rng::substream(1, 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const double g = rng::standard_exponential(engine) * rng::standard_exponential(engine);
    for (int p = 0; p < 3; ++p) hits[p] += g <= probes[p] ? 1 : 0;
  }
  for (int p = 0; p < 3; ++p) {
    const double f = 1.0 - 2.0 * std::sqrt(probes[p]) * specfun::bessel_k1(2.0 * std::sqrt(probes[p]));
    const double est = hits[p] / static_cast<double>(n);
    const double se = std::sqrt(f * (1 - f) / n);
    o.require(std::fabs(est - f) <= 3 * se,
              fmtn("r=%g closed=%.6f empirical=%.6f |d|/se=%.2f", probes[p], f, est, std::fabs(est - f) / se));
  }
  const double t = seconds_since(t0);
  o.require(t < 10.0, fmt("runtime %.2f s < 10 s", t));
  return o;
}

Outcome copula_correctness(const ValidationReport& report) {
  Outcome o;
  double worst_margin = 0.0;
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int dim : {2, 3, 5, 10}) {
    for (double theta : {1e-9, 0.1, 0.5, 1.0, 2.0, 4.0, 10.0, 100.0}) {
      const CopulaSpec s = CopulaSpec::clayton(dim, theta);
      for (int trial = 0; trial < 100; ++trial) {
        const double u = unif(gen);
        for (int k = 0; k < dim; ++k) {
          Eigen::VectorXd v = Eigen::VectorXd::Ones(dim);
          v(k) = u;
          worst_margin = std::max(worst_margin, std::fabs(copula_cdf(v, s) - u));
        }
      }
    }
  }
  o.require(worst_margin <= 1e-12, fmt("margins C(1,..,u_k,..,1) = u_k, worst deviation %.2e <= 1e-12", worst_margin));

  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const int dim = 2 + i % 4;
    const double theta = std::array{0.1, 1.0, 5.0}[i % 3];
    Eigen::VectorXd u(dim);
    for (int k = 0; k < dim; ++k) u(k) = unif(gen);
    violations += copula_upper_bound_check(u, CopulaSpec::clayton(dim, theta)) ? 0 : 1;
  }
  o.require(violations == 0, fmtn("Frechet bounds on 10000 random probes: %d violations", violations));

  for (const auto& c : report.checks) {
    if (c.group != "sampler") continue;
    o.require(c.passed, fmtn("sampler %s closed=%.6f empirical=%.6f z=%.2f (n=1e6)", c.name.c_str(), c.closed_form,
                             c.estimate, c.z));
  }
  return o;
}

Outcome spearman() {
  Outcome o;
  for (double theta : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double numeric = spearman_rho_numeric(theta);
    const double approx = spearman_rho_approx(theta);
    o.require(std::fabs(numeric - approx) <= 0.05,
              fmtn("theta=%g numeric=%.6f approx=%.6f |d|=%.4f <= 0.05", theta, numeric, approx,
                   std::fabs(numeric - approx)));
  }
  double worst = 0.0;
  for (int i = 1; i <= 100000; ++i) {
    const double mu = i / 100000.0;
    worst = std::max(worst, std::fabs(spearman_rho_approx(theta_from_mu(mu, 0.0).theta) - mu));
  }
  for (double mu : {1e-300, 1e-12, 1e-7}) {
    worst = std::max(worst, std::fabs(spearman_rho_approx(theta_from_mu(mu, 0.0).theta) - mu));
  }
  o.require(worst <= 1e-12, fmt("theta <-> mu round trip on (0, 1], worst %.2e <= 1e-12", worst));
  return o;
}

// One-sided Poisson tail of the observed count, the small-count limit of the
// binomial. Diagnostic only.
double poisson_tail(double lambda, std::int64_t k) {
  double term = std::exp(-lambda);
  double below = 0.0;
  for (std::int64_t j = 0; j < k; ++j) {
    below += term;
    term *= lambda / static_cast<double>(j + 1);
  }
  return k > lambda ? 1.0 - below : below + term;
}

Outcome closed_form_vs_mc(const ValidationReport& report, double elapsed) {
  Outcome o;
  int n_op = 0;
  int n_dor = 0;
  for (const auto& c : report.checks) {
    if (c.group != "op" && c.group != "dor") continue;
    (c.group == "op" ? n_op : n_dor)++;
    const double d = std::fabs(c.estimate - c.closed_form);
    const bool sample_rule = d <= 3 * c.sample_se;
    o.require(c.passed, fmtn("%-3s %-22s closed=%.4e mc=%.4e |d|/se0=%.2f |d|/se_hat=%s", c.group.c_str(),
                             c.name.c_str(), c.closed_form, c.estimate, std::fabs(c.z),
                             c.sample_se > 0 ? fmt("%.2f", d / c.sample_se).c_str()
                                             : (sample_rule ? "0/0" : "inf")));
    const double lambda = c.closed_form * 1e6;
    if (!c.passed && lambda < 10.0) {
      const auto hits = static_cast<std::int64_t>(std::llround(c.estimate * 1e6));
      o.note(fmtn("expected count %.3f, observed %lld, one-sided Poisson tail %.4f", lambda,
                  static_cast<long long>(hits), poisson_tail(lambda, hits)));
    }
  }
  o.require(n_op == 27 && n_dor == 27, fmtn("grid coverage: %d OP and %d DOR points", n_op, n_dor));
  o.require(elapsed < 300.0, fmt("runtime %.1f s < 300 s", elapsed));
  return o;
}

Outcome asymptotes() {
  Outcome o;
  const double snrs[] = {30.0, 40.0, 50.0, 60.0};
  struct Series {
    const char* name;
    std::function<double(const SystemConfig&)> exact;
    std::function<double(const SystemConfig&, const PortCorrelationProfile&)> asym;
  };
  const Series series[] = {
      {"OP", [](const SystemConfig& c) { return op(c); },
       [](const SystemConfig& c, const PortCorrelationProfile& p) { return outage_probability_asymptotic(c, p).value; }},
      {"DOR(paper)", [](const SystemConfig& c) { return dor(c); },
       [](const SystemConfig& c, const PortCorrelationProfile& p) {
         return delay_outage_rate_asymptotic(c, p).value;
       }},
      {"DOR(corrected)", [](const SystemConfig& c) { return dor(c, DorThresholdMode::corrected); },
       [](const SystemConfig& c, const PortCorrelationProfile& p) {
         return delay_outage_rate_asymptotic(c, p, DorThresholdMode::corrected).value;
       }},
  };
  for (const auto& s : series) {
    double prev = INFINITY;
    std::string line = std::string(s.name) + " relative error at 30/40/50/60 dB:";
    bool decreasing = true;
    bool within = true;
    for (double snr : snrs) {
      const SystemConfig c = config(4, 1.0, snr);
      const auto p = PortCorrelationProfile::from_config(c);
      const double rel = std::fabs(s.asym(c, p) / s.exact(c) - 1.0);
      line += fmt(" %.3e", rel);
      decreasing = decreasing && rel < prev;
      if (snr >= 40.0) within = within && rel <= 0.05;
      prev = rel;
    }
    o.require(within && decreasing, line + " (<= 5% from 40 dB, strictly decreasing)");
  }
  return o;
}

Outcome figure_trends() {
  Outcome o;
  // (a) per-curve monotonicity in avg SNR.
  int bad = 0;
  int curves = 0;
  auto check_curve = [&](int k, double w) {
    ++curves;
    double prev_op = INFINITY;
    double prev_dor = INFINITY;
    for (double snr = 0.0; snr <= 40.0; snr += 5.0) {
      const SystemConfig c = config(k, w, snr);
      const double v = op(c);
      const double d = dor(c);
      bad += (v <= prev_op && d <= prev_dor) ? 0 : 1;
      prev_op = v;
      prev_dor = d;
    }
  };
  for (double w : {0.5, 1.0, 2.0, 4.0, 6.0}) check_curve(4, w);
  for (int k : {1, 2, 4, 6, 8, 10}) check_curve(k, 1.0);
  o.require(bad == 0, fmtn("(a) OP and DOR nonincreasing over 0..40 dB on %d curves: %d violations", curves, bad));

  // (b) larger aperture helps at K = 4.
  const double op_w4 = op(config(4, 4.0, 20));
  const double op_w05 = op(config(4, 0.5, 20));
  o.require(op_w4 <= op_w05, fmtn("(b) OP(W=4)=%.4e <= OP(W=0.5)=%.4e at K=4, 20 dB", op_w4, op_w05));
  for (double w : {0.5, 1.0, 2.0, 4.0, 6.0}) {
    const auto p = PortCorrelationProfile::from_config(config(4, w, 20));
    o.note(fmtn("W=%-3g mu_K=%+.4f theta=%.4f OP=%.4e", w, p.mu()(3), p.theta_scalar(), op(config(4, w, 20))));
  }

  // (c) more ports help at W = 1.
  const double op_k10 = op(config(10, 1.0, 20));
  const double op_k2 = op(config(2, 1.0, 20));
  o.require(op_k10 <= op_k2, fmtn("(c) OP(K=10)=%.4e <= OP(K=2)=%.4e at W=1, 20 dB", op_k10, op_k2));

  // (d) DOR grows with payload.
  for (auto mode : {DorThresholdMode::paper, DorThresholdMode::corrected}) {
    double prev = 0.0;
    bool ok = true;
    std::string line = std::string("(d) DOR(") + to_string(mode) + ") at R = 1..5 kbit:";
    for (double r = 1000.0; r <= 5000.0; r += 1000.0) {
      SystemConfig c = config(4, 1.0, 20);
      c.payload_bits = r;
      const double v = dor(c, mode);
      line += fmt(" %.4e", v);
      ok = ok && v >= prev;
      prev = v;
    }
    o.require(ok, line + " nondecreasing");
  }

  // (e) every multi-port configuration beats a single antenna.
  const double single = op(config(1, 1.0, 20));
  int worse = 0;
  int count = 0;
  for (int k : {2, 4, 6, 8, 10}) {
    for (double w : {0.5, 1.0, 2.0, 4.0, 6.0}) {
      ++count;
      worse += op(config(k, w, 20)) < single ? 0 : 1;
    }
  }
  o.require(worse == 0, fmtn("(e) %d of %d K>=2 configurations below single-port OP %.4e at 20 dB", count - worse,
                             count, single));
  return o;
}

Outcome degenerate_cases() {
  Outcome o;
  const auto p1 = PortCorrelationProfile::from_config(config(1, 1.0, 20));
  double worst1 = 0.0;
  for (double r : log_grid(1e-8, 100.0, 500)) {
    worst1 = std::max(worst1, std::fabs(equivalent_channel_cdf(r, p1, make_copula(p1)) - product_channel_cdf(r)));
  }
  o.require(worst1 <= 1e-12, fmt("K=1 equivalent CDF vs product CDF, worst %.2e <= 1e-12", worst1));
  double worst_ind = 0.0;
  for (int k = 2; k <= 10; ++k) {
    const auto p = PortCorrelationProfile::from_config(config(k, 1.0, 20));
    const auto spec = make_copula(p, {.mode = CopulaMode::independence});
    for (double r : log_grid(1e-8, 100.0, 200)) {
      worst_ind = std::max(worst_ind, std::fabs(equivalent_channel_cdf(r, p, spec) -
                                                std::pow(product_channel_cdf(r), k)));
    }
  }
  o.require(worst_ind <= 1e-10, fmt("independence vs product CDF^K, K=2..10, worst %.2e <= 1e-10", worst_ind));
  return o;
}

std::string run_cli_validate() {
  const std::string cmd = std::string(FABC_CLI_PATH) + " validate --seed 1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
  return out;
}

Outcome determinism(const ValidationReport& library_report) {
  Outcome o;
  const std::string a = run_cli_validate();
  const std::string b = run_cli_validate();
  o.require(!a.empty() && a == b,
            fmtn("two `fabc validate --seed 1` runs byte-identical (%zu and %zu bytes)", a.size(), b.size()));
  o.require(a == library_report.text(), "CLI report matches the library report for the same seed");
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;
  auto record = [&](const std::string& name, Outcome o) {
    std::printf("%s %s\n", o.passed ? "PASS" : "FAIL", name.c_str());
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    results.emplace_back(name, std::move(o));
  };

  record("1 special-function accuracy", special_functions());
  record("2 product-channel law vs simulation", product_law());

  const auto t0 = Clock::now();
  const ValidationReport report = run_validation(ValidationOptions{});
  const double validate_seconds = seconds_since(t0);

  record("3 copula correctness", copula_correctness(report));
  record("4 Spearman consistency", spearman());
  record("5 closed form vs Monte-Carlo", closed_form_vs_mc(report, validate_seconds));
  record("6 asymptote convergence", asymptotes());
  record("7 figure trends", figure_trends());
  record("8 degenerate-case exactness", degenerate_cases());
  record("9 validate determinism", determinism(report));

  int failed = 0;
  for (const auto& r : results) failed += r.second.passed ? 0 : 1;
  std::printf("acceptance: %zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
