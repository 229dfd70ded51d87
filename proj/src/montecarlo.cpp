// SPDX-License-Identifier: Apache-2.0

#include "fabc/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>

#include "fabc/errors.hpp"
#include "fabc/random.hpp"

namespace fabc {

McEstimate make_estimate(std::int64_t hits, std::int64_t n, std::uint64_t seed, double elapsed_s) {
  if (n < 1 || hits < 0 || hits > n) throw DomainError("make_estimate: need 0 <= hits <= n, n >= 1");
  McEstimate est;
  est.hits = hits;
  est.n_samples = n;
  est.seed = seed;
  est.elapsed_s = elapsed_s;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  est.estimate = p;
  est.std_error = std::sqrt(p * (1.0 - p) / nn);
  constexpr double z = 1.959963984540054;
  double lo;
  double hi;
  if (p < 1e-3) {
    const double z2n = z * z / nn;
    const double centre = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / nn + 0.25 * z2n / nn);
    lo = centre - half;
    hi = centre + half;
  } else {
    lo = p - z * est.std_error;
    hi = p + z * est.std_error;
  }
  est.ci_low = std::clamp(lo, 0.0, 1.0);
  est.ci_high = std::clamp(hi, 0.0, 1.0);
  return est;
}

double exact_gain_quantile(double u) {
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  const double tol = std::max(std::min(1e-12, 1e-15 * std::min(u, 1.0 - u)), std::numeric_limits<double>::denorm_min());
  return product_channel_quantile(u, tol);
}

namespace {

// 1 - u loses its relative precision beyond logit 30 or so.
constexpr double kLogitLow = QuantileCache::kLogitLow;
constexpr double kLogitHigh = QuantileCache::kLogitHigh;
constexpr double kStep = (kLogitHigh - kLogitLow) / (QuantileCache::kGridPoints - 1);

double logit(double u) { return std::log(u) - std::log1p(-u); }

}  // namespace

QuantileCache::QuantileCache() : log_q_(kGridPoints) {
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = kLogitLow + i * kStep;
    log_q_[i] = std::log(exact_gain_quantile(1.0 / (1.0 + std::exp(-x))));
  }
}

const QuantileCache& QuantileCache::shared() {
  static const QuantileCache cache;
  return cache;
}

double QuantileCache::operator()(double u) const {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("QuantileCache: u must lie in (0, 1]");
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  const double x = logit(u);
  if (!(x >= kLogitLow && x <= kLogitHigh)) return exact_gain_quantile(u);

  const double t = (x - kLogitLow) / kStep;
  const int i = std::min(static_cast<int>(t), kGridPoints - 2);
  const double w = t - i;
  double r = std::exp((1.0 - w) * log_q_[i] + w * log_q_[i + 1]);

  const double tail = 1.0 - u;
  for (int step = 0; step < 2; ++step) {
    const ProductChannelLaw law = product_channel_law(r);
    const double res = u < 0.5 ? law.cdf - u : tail - law.sf;
    const double next = r - res / law.pdf;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    r = next;
  }
  return r;
}

double QuantileCache::max_relative_error(std::uint64_t seed, int probes) const {
  rng::Engine engine = rng::substream(seed, std::numeric_limits<std::uint64_t>::max());
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const double x = kLogitLow + (kLogitHigh - kLogitLow) * rng::open_uniform(engine);
    const double u = 1.0 / (1.0 + std::exp(-x));
    const double exact = exact_gain_quantile(u);
    worst = std::max(worst, std::fabs((*this)(u) - exact) / exact);
  }
  return worst;
}

namespace {

constexpr double kCacheTolerance = 1e-8;

// Calls sink(block, span of g_FA draws for the block).
template <typename Sink>
void generate_gains(const CopulaSpec& spec, std::int64_t count, std::uint64_t seed, unsigned workers, Sink&& sink) {
  if (count < 1) throw DomainError("Monte-Carlo sample count must be >= 1");
  if (spec.kind() == CopulaKind::clayton_paper_literal) {
    throw DomainError("the paper-literal copula form is not a distribution and cannot be sampled");
  }
  const QuantileCache& cache = QuantileCache::shared();
  const bool cached = cache.max_relative_error(seed) <= kCacheTolerance;
  const int dim = spec.dimension();
  const bool independent = spec.kind() == CopulaKind::independence;
  const double theta = spec.theta();

  rng::for_each_block(count, workers, [&](std::int64_t block, std::int64_t begin, std::int64_t end) {
    rng::Engine engine = rng::substream(seed, static_cast<std::uint64_t>(block));
    std::vector<double> gains(static_cast<std::size_t>(end - begin));
    std::vector<double> row(dim);
    if (independent) {
      for (auto& g : gains) {
        double m = 0.0;
        for (int k = 0; k < dim; ++k) m = std::max(m, rng::open_uniform(engine));
        g = cached ? cache(m) : exact_gain_quantile(m);
      }
    } else {
      ClaytonRowSampler sampler(dim, theta);
      for (auto& g : gains) {
        sampler.draw(engine, row);
        const double m = *std::max_element(row.begin(), row.end());
        g = cached ? cache(m) : exact_gain_quantile(m);
      }
    }
    sink(block, begin, std::span<const double>(gains));
  });
}

template <typename Event>
McEstimate count_events(const CopulaSpec& spec, std::int64_t n, std::uint64_t seed, unsigned workers, Event event) {
  if (n < kMinMcSamples) {
    throw UsageError("Monte-Carlo needs at least " + std::to_string(kMinMcSamples) + " samples, got " +
                     std::to_string(n));
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::int64_t> hits(rng::block_count(n), 0);
  generate_gains(spec, n, seed, workers, [&](std::int64_t block, std::int64_t, std::span<const double> gains) {
    std::int64_t h = 0;
    for (double g : gains) h += event(g) ? 1 : 0;
    hits[block] = h;
  });
  const std::int64_t total = std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return make_estimate(total, n, seed, elapsed);
}

}  // namespace

Eigen::VectorXd sample_equivalent_gain(const PortCorrelationProfile& profile, const CopulaSpec& spec,
                                       std::int64_t count, std::uint64_t seed, unsigned workers) {
  if (spec.dimension() != profile.num_ports()) {
    throw DomainError("copula dimension does not match the port profile");
  }
  Eigen::VectorXd out(count);
  generate_gains(spec, count, seed, workers, [&](std::int64_t, std::int64_t begin, std::span<const double> gains) {
    std::copy(gains.begin(), gains.end(), out.data() + begin);
  });
  return out;
}

McEstimate estimate_outage(const SystemConfig& config, const CopulaSpec& spec, std::int64_t n, std::uint64_t seed,
                           unsigned workers) {
  config.validate();
  if (spec.dimension() != config.num_ports) throw DomainError("copula dimension does not match num_ports");
  const double r = db_to_linear(config.snr_threshold_db) / db_to_linear(config.avg_snr_db);
  return count_events(spec, n, seed, workers, [r](double g) { return g <= r; });
}

McEstimate estimate_dor(const SystemConfig& config, const CopulaSpec& spec, DorThresholdMode, std::int64_t n,
                        std::uint64_t seed, unsigned workers) {
  config.validate();
  if (spec.dimension() != config.num_ports) throw DomainError("copula dimension does not match num_ports");
  const double snr = db_to_linear(config.avg_snr_db);
  const double rate_scale = config.bandwidth_hz / std::numbers::ln2;
  return count_events(spec, n, seed, workers, [&](double g) {
    const double delay = config.payload_bits / (rate_scale * std::log1p(snr * g));
    return delay > config.delay_threshold_s;
  });
}

}  // namespace fabc
