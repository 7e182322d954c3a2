#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "bellfourier/core.hpp"

namespace bellfourier {

// Singlet-state correlation of the two analyzer outcomes.
inline double singlet_correlation(double alpha, double beta) {
  return -std::cos(2.0 * (alpha - beta));
}

/// Born-rule probability of the joint outcome (a, b) for the polarization
/// singlet: p(a, b) = (1 - a b cos 2(alpha - beta)) / 4.
inline double joint_probability(Outcome a, Outcome b, double alpha, double beta) {
  const double ab = sign_of(a) * sign_of(b);
  return (1.0 - ab * std::cos(2.0 * (alpha - beta))) / 4.0;
}

inline CorrelationFunction quantum_correlation() {
  return {singlet_correlation, CorrelationKind::quantum, "singlet: -cos 2(alpha - beta)"};
}

inline constexpr std::array<std::pair<Outcome, Outcome>, 4> kOutcomeOrder = {{
    {Outcome::plus, Outcome::plus},
    {Outcome::plus, Outcome::minus},
    {Outcome::minus, Outcome::plus},
    {Outcome::minus, Outcome::minus},
}};

// Inverse CDF over (++, +-, -+, --); always exactly one draw.
inline std::pair<Outcome, Outcome> sample_pair(double alpha, double beta, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < kOutcomeOrder.size(); ++i) {
    const auto& [a, b] = kOutcomeOrder[i];
    cumulative += joint_probability(a, b, alpha, beta);
    if (u < cumulative) return kOutcomeOrder[i];
  }
  return kOutcomeOrder.back();
}

/// Monte Carlo estimate of the measured correlation: the average of a*b over
/// n_runs sampled pairs. Deterministic in (seed, n_runs).
inline MeasuredCorrelation estimate_correlation(double alpha, double beta, std::uint64_t n_runs,
                                                std::uint64_t seed) {
  if (n_runs == 0) throw std::invalid_argument("n_runs must be at least 1");
  const std::int64_t sum =
      chunked_product_sum(n_runs, seed, [alpha, beta](std::uint64_t runs, RandomStream& rng) {
        std::int64_t s = 0;
        for (std::uint64_t r = 0; r < runs; ++r) {
          const auto [a, b] = sample_pair(alpha, beta, rng);
          s += sign_of(a) * sign_of(b);
        }
        return s;
      });
  return make_measurement(alpha, beta, sum, n_runs, seed);
}

}  // namespace bellfourier
