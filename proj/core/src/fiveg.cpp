#include "tsnsim/fiveg.hpp"

#include <cmath>

namespace tsnsim {
namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Analytic mean of a lognormal(mu, sigma) conditioned on [a, b].
double truncated_lognormal_mean(double mu, double sigma, double a, double b) {
  const double la = std::log(a), lb = std::log(b);
  const double za = (la - mu) / sigma, zb = (lb - mu) / sigma;
  const double mass = std_normal_cdf(zb) - std_normal_cdf(za);
  if (mass < 1e-15) return mu < la ? a : b;  // essentially all mass clipped
  const double num = std::exp(mu + sigma * sigma / 2.0) *
                     (std_normal_cdf(zb - sigma) - std_normal_cdf(za - sigma));
  return num / mass;
}

}  // namespace

TddConfig TddConfig::uplink_centric_default() {
  TddConfig tdd;
  using enum SlotType;
  tdd.pattern = {Downlink, Downlink, Downlink, Downlink, Downlink,
                 Special,  Uplink,   Uplink,   Uplink,   Uplink};
  return tdd;
}

Instant next_uplink_opportunity(const TddConfig& tdd, Instant t) {
  if (tdd.pattern.empty() || tdd.slot_duration.ticks == 0)
    throw ConfigurationError("empty TDD pattern");
  const std::uint64_t slot = tdd.slot_duration.ticks;
  const std::uint64_t cycle = slot * tdd.pattern.size();
  const std::uint64_t in_cycle = t.ticks % cycle;
  const std::size_t idx = in_cycle / slot;
  for (std::size_t k = 0; k <= tdd.pattern.size(); ++k) {
    const std::size_t i = (idx + k) % tdd.pattern.size();
    if (tdd.pattern[i] != SlotType::Uplink) continue;
    if (k == 0) return t;  // already inside an uplink slot
    const std::uint64_t start = t.ticks - in_cycle + (idx + k) * slot;
    return Instant{start};
  }
  throw ConfigurationError("TDD pattern has no uplink slot");
}

TruncatedLognormalDelay TruncatedLognormalDelay::fit(Duration min, Duration max,
                                                     Duration target_mean, double sigma) {
  if (!(min < max) || target_mean <= min || target_mean >= max)
    throw ConfigurationError("truncated lognormal needs min < mean < max");
  const double a = static_cast<double>(min.ticks);
  const double b = static_cast<double>(max.ticks);
  const double target = static_cast<double>(target_mean.ticks);
  // Truncated mean is monotone increasing in mu; bisect.
  double lo = std::log(a) - 20.0, hi = std::log(b) + 20.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2.0;
    if (truncated_lognormal_mean(mid, sigma, a, b) < target)
      lo = mid;
    else
      hi = mid;
  }
  TruncatedLognormalDelay d{min, max, target_mean};
  d.mu = (lo + hi) / 2.0;
  d.sigma = sigma;
  return d;
}

Duration DelayModel::min_delay() const {
  return std::visit(
      [](const auto& law) -> Duration {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, ConstantDelay>)
          return law.value;
        else
          return law.min;
      },
      law);
}

Duration DelayModel::max_delay() const {
  return std::visit(
      [](const auto& law) -> Duration {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, ConstantDelay>)
          return law.value;
        else
          return law.max;
      },
      law);
}

Duration sample_delay(const DelayModel& model, Instant t_send, Rng& rng) {
  Duration align{0};
  if (model.tdd) align = next_uplink_opportunity(*model.tdd, t_send) - t_send;

  Duration inner = std::visit(
      [&rng](const auto& law) -> Duration {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, ConstantDelay>) {
          return law.value;
        } else if constexpr (std::is_same_v<T, UniformBoundedDelay>) {
          return Duration{rng.uniform_u64(law.min.ticks, law.max.ticks)};
        } else {
          // Rejection sampling against the hard bounds.
          for (;;) {
            const double x = std::exp(law.mu + law.sigma * rng.normal());
            const auto ns = static_cast<std::uint64_t>(std::llround(x));
            if (ns >= law.min.ticks && ns <= law.max.ticks) return Duration{ns};
          }
        }
      },
      model.law);
  return align + inner;
}

TransitResult Bridge::transit(Instant t_send) {
  const Duration d = sample_delay(config_.delay, t_send, rng_);
  const bool at_capacity =
      config_.in_flight_capacity && in_flight_ >= *config_.in_flight_capacity;
  if (at_capacity && config_.overflow_policy == OverflowPolicy::Drop) {
    ++dropped_;
    return Dropped{};
  }
  Instant arrival = t_send + d;
  if (at_capacity) arrival = arrival + config_.defer_extra;  // deferred, no slot held
  if (config_.fifo_enforced && last_arrival_ && arrival < *last_arrival_)
    arrival = *last_arrival_;
  last_arrival_ = arrival;
  if (!at_capacity) ++in_flight_;
  return Delivered{arrival, at_capacity};
}

}  // namespace tsnsim
