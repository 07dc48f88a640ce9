#pragma once

// Capture-probability math and its Monte Carlo cross-check.
//
// Without sharing, capturing any one packet leaks information; summing the
// geometric series of i-packet captures over N channels gives
//   P1(N) = sum_{i>=1} (1/N)^i = 1/(N-1).
// With k-of-k sharing the whole message is revealed only when all k packets
// are captured:
//   P2(N, k) = (1/N)^k.
// Both are kept as exact rationals; 1/N^k underflows or drifts long before
// k = 10 if accumulated in floating point.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "mcst/errors.hpp"
#include "mcst/gfshare.hpp"
#include "mcst/hopping.hpp"
#include "mcst/medium.hpp"
#include "mcst/packet.hpp"

namespace mcst {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational p1_capture(std::uint64_t channel_count) {
  if (channel_count < 2) {
    throw BadN("channel count must be at least 2");
  }
  return Rational(1, channel_count - 1);
}

inline Rational p2_capture(std::uint64_t channel_count, unsigned k) {
  if (channel_count < 2) {
    throw BadN("channel count must be at least 2");
  }
  if (k == 0) {
    throw BadN("share count k must be at least 1");
  }
  return Rational(1, boost::multiprecision::pow(BigInt(channel_count), k));
}

// C(n, k) with exact 64-bit arithmetic; n <= 64 keeps every value (and the
// running sums below) inside the type.
inline std::uint64_t ways_exact(unsigned n, unsigned k) {
  if (n > 64 || k > n) {
    throw OutOfRange("binomials are computed exactly only for 0 <= k <= n <= 64");
  }
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i; j > 0; --j) {
      row[j] += row[j - 1];
    }
  }
  return row[k];
}

// Number of ways to pick at least 1 and at most k of n: sum of C(n, i).
inline std::uint64_t ways_at_most(unsigned n, unsigned k) {
  if (n > 64 || k > n) {
    throw OutOfRange("binomials are computed exactly only for 0 <= k <= n <= 64");
  }
  std::uint64_t sum = 0;
  for (unsigned i = 1; i <= k; ++i) {
    sum += ways_exact(n, i);
  }
  return sum;
}

// -log2(p) for 0 < p <= 1, evaluated in extended precision so that values
// like 10^-50 keep their full bit count.
inline double security_bits(const Rational& p) {
  if (p <= 0 || p > 1) {
    throw OutOfRange("probability must be in (0, 1]");
  }
  using Float = boost::multiprecision::cpp_bin_float_100;
  const Float value(p);
  const Float bits = -boost::multiprecision::log2(value);
  return bits.convert_to<double>();
}

struct AttackScenario {
  std::uint32_t channel_count = kIsmChannelCount;
  unsigned k = 2;  // shares per message; the trial uses k-of-k sharing
  Adversary::Mode mode = Adversary::Mode::IndependentPerPacket;
  double q = 1.0 / kIsmChannelCount;  // independent mode: per-packet capture probability
  std::uint32_t tuned_channels = 0;   // fixed mode: m
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct CaptureStats {
  std::uint64_t trials = 0;
  std::uint64_t captures_without_sharing = 0;  // trials with >= 1 share captured
  std::uint64_t captures_with_sharing = 0;     // trials with all k shares captured
  Rational analytic_p1;                        // 1/(N-1)
  Rational analytic_p2;                        // (1/N)^k
  double expected_without = 0.0;  // adversary-model expectation for >= 1 capture
  double expected_with = 0.0;     // adversary-model expectation for all-k capture

  double empirical_without() const {
    return trials ? static_cast<double>(captures_without_sharing) / trials : 0.0;
  }
  double empirical_with() const {
    return trials ? static_cast<double>(captures_with_sharing) / trials : 0.0;
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D2B74F597FE527ull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Monte Carlo over the medium: each trial shares a fresh 5-byte secret
// k-of-k, so every share is exactly one packet on its own hopped channel --
// the unit the capture formulas count. Trials are seeded independently from
// the master seed, so the tallies do not depend on evaluation order.
inline CaptureStats monte_carlo(const AttackScenario& scenario) {
  if (scenario.trials == 0) {
    throw OutOfRange("at least one trial required");
  }
  if (scenario.k == 0 || scenario.k > scenario.channel_count) {
    throw OutOfRange("k must be in [1, channel_count]");
  }
  if (scenario.mode == Adversary::Mode::FixedChannelSet &&
      scenario.tuned_channels > scenario.channel_count) {
    throw OutOfRange("adversary cannot tune more channels than exist");
  }

  CaptureStats stats;
  stats.trials = scenario.trials;
  stats.analytic_p1 = p1_capture(scenario.channel_count);
  stats.analytic_p2 = p2_capture(scenario.channel_count, scenario.k);

  const double n = scenario.channel_count;
  const unsigned k = scenario.k;
  if (scenario.mode == Adversary::Mode::IndependentPerPacket) {
    double miss_all = 1.0, catch_all = 1.0;
    for (unsigned i = 0; i < k; ++i) {
      miss_all *= 1.0 - scenario.q;
      catch_all *= scenario.q;
    }
    stats.expected_without = 1.0 - miss_all;
    stats.expected_with = catch_all;
  } else {
    const double m = scenario.tuned_channels;
    double miss_all = 1.0, catch_all = 1.0;
    for (unsigned i = 0; i < k; ++i) {
      catch_all *= std::max(0.0, (m - i) / (n - i));
      miss_all *= std::max(0.0, (n - m - i) / (n - i));
    }
    stats.expected_without = 1.0 - miss_all;
    stats.expected_with = catch_all;
  }

  for (std::uint64_t trial = 0; trial < scenario.trials; ++trial) {
    const std::uint64_t base = detail::splitmix64(scenario.seed ^ detail::splitmix64(trial));
    const std::uint32_t hop_seed =
        static_cast<std::uint32_t>(base % Lfsr::kPeriod) + 1;
    std::mt19937 trial_rng(static_cast<std::uint32_t>(detail::splitmix64(base) >> 16));

    std::array<std::uint8_t, kElementsPerPacket> secret{};
    for (auto& b : secret) {
      b = static_cast<std::uint8_t>(trial_rng() & 0xFF);
    }
    CoefficientRng coeff_rng(detail::splitmix64(base + 1));
    const auto streams = share_message(secret, k, k, coeff_rng);
    const HopSchedule schedule =
        draw_distinct_channels(hop_seed, k, scenario.channel_count);

    Medium medium(scenario.channel_count);
    for (unsigned j = 0; j < k; ++j) {
      DataPacket packet;
      packet.countdown = 1;
      packet.device_id = j + 1;
      for (std::size_t e = 0; e < kElementsPerPacket; ++e) {
        const std::uint16_t v = streams[j].values[e].value();
        packet.payload[2 * e] = static_cast<std::uint8_t>(v >> 8);
        packet.payload[2 * e + 1] = static_cast<std::uint8_t>(v & 0xFF);
      }
      const auto raw = encode_data(packet);
      medium.transmit(schedule.channels[j], std::vector<std::uint8_t>(raw.begin(), raw.end()),
                      0);
    }

    Adversary adversary =
        scenario.mode == Adversary::Mode::IndependentPerPacket
            ? Adversary::independent(scenario.q)
            : Adversary::fixed_set(scenario.tuned_channels, scenario.channel_count, trial_rng);
    const std::size_t captured = adversary_observe(adversary, medium, 0, trial_rng);
    if (captured >= 1) {
      ++stats.captures_without_sharing;
    }
    if (captured == k) {
      ++stats.captures_with_sharing;
    }
  }
  return stats;
}

}  // namespace mcst
