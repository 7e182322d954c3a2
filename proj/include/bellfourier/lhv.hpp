#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellfourier/core.hpp"

namespace bellfourier {

/// A +/-1 valued step function on [0, pi), extended with period pi.
///
/// Interval k (0-based) is [theta_k, theta_{k+1}) with theta_0 = 0 and
/// theta_K = pi implicit, and carries the sign first_sign * (-1)^k.
class SimpleFunctionSpec {
 public:
  SimpleFunctionSpec() = default;

  SimpleFunctionSpec(std::vector<double> breakpoints, int first_sign)
      : breakpoints_(std::move(breakpoints)), first_sign_(first_sign) {
    validate();
  }

  /// Builds a spec from an explicit per-interval sign list, which must
  /// alternate and have one entry per interval.
  static SimpleFunctionSpec from_signs(std::vector<double> breakpoints,
                                       std::span<const int> signs) {
    if (signs.size() != breakpoints.size() + 1) {
      throw ModelError("sign list length " + std::to_string(signs.size()) +
                       " does not match interval count " +
                       std::to_string(breakpoints.size() + 1));
    }
    for (std::size_t p = 0; p + 1 < signs.size(); ++p) {
      if (signs[p] + signs[p + 1] != 0) {
        throw ModelError("adjacent interval signs must alternate (s_p + s_{p+1} = 0), violated at p = " +
                         std::to_string(p + 1));
      }
    }
    return SimpleFunctionSpec(std::move(breakpoints), signs.front());
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  int first_sign() const { return first_sign_; }
  int intervals() const { return static_cast<int>(breakpoints_.size()) + 1; }

  // Sign on interval k (0-based).
  int sign(int k) const { return (k % 2 == 0) ? first_sign_ : -first_sign_; }

  // Partition 0 = theta_0 < ... < theta_K = pi.
  std::vector<double> partition() const {
    std::vector<double> p;
    p.reserve(breakpoints_.size() + 2);
    p.push_back(0.0);
    p.insert(p.end(), breakpoints_.begin(), breakpoints_.end());
    p.push_back(pi);
    return p;
  }

 private:
  void validate() const {
    if (first_sign_ != 1 && first_sign_ != -1) {
      throw ModelError("first_sign must be +1 or -1, got " + std::to_string(first_sign_));
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      const double b = breakpoints_[i];
      if (!std::isfinite(b) || b <= prev || b >= pi) {
        throw ModelError("breakpoints must be strictly increasing inside (0, pi); breakpoint " +
                         std::to_string(i) + " = " + std::to_string(b) + " violates the ordering");
      }
      prev = b;
    }
  }

  std::vector<double> breakpoints_;
  int first_sign_ = 1;
};

// Right-continuous: a breakpoint belongs to the interval it opens.
inline Outcome eval_simple(const SimpleFunctionSpec& spec, double theta) {
  const double t = normalize_angle(theta).radians();
  const auto& bp = spec.breakpoints();
  const auto k = std::upper_bound(bp.begin(), bp.end(), t) - bp.begin();
  return outcome_from_sign(spec.sign(static_cast<int>(k)));
}

// Deterministic response of the Aspect model; cos = 0 maps to +1.
inline Outcome aspect_response(double theta, double lambda) {
  return std::cos(2.0 * (theta - lambda)) >= 0.0 ? Outcome::plus : Outcome::minus;
}

/// The Aspect response theta -> aspect_response(theta, lambda) as a step
/// function. Breakpoints are the roots of cos 2(theta - lambda) reduced mod pi.
///
/// At the root where the cosine turns negative the step function takes the
/// value of the interval to its right (-1), whereas aspect_response gives +1;
/// the two agree everywhere else.
inline SimpleFunctionSpec aspect_to_simple(double lambda) {
  constexpr double edge = 1e-12;
  std::vector<double> roots;
  for (double offset : {pi / 4.0, 3.0 * pi / 4.0}) {
    const double r = normalize_angle(lambda + offset).radians();
    if (r > edge && r < pi - edge) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  const double first_end = roots.empty() ? pi : roots.front();
  const int first_sign = sign_of(aspect_response(0.5 * first_end, lambda));
  return SimpleFunctionSpec(std::move(roots), first_sign);
}

enum class Pairing { correlated, anti_correlated };

constexpr int pairing_sign(Pairing p) { return p == Pairing::correlated ? 1 : -1; }

inline std::string to_string(Pairing p) {
  return p == Pairing::correlated ? "correlated" : "anti-correlated";
}

struct Atom {
  double weight = 0.0;
  SimpleFunctionSpec response;
};

/// Finite mixture of hidden-variable points. Bob's response is Alice's
/// response times the pairing sign.
class LhvModel {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  LhvModel(std::vector<Atom> atoms, Pairing pairing, std::string description = {},
           double weight_tolerance = kWeightTolerance)
      : atoms_(std::move(atoms)), pairing_(pairing), description_(std::move(description)) {
    if (atoms_.empty()) throw ModelError("model must contain at least one atom");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const double w = atoms_[i].weight;
      if (!std::isfinite(w) || w <= 0.0) {
        throw ModelError("atom " + std::to_string(i) + " weight must be positive, got " +
                         std::to_string(w));
      }
      total += w;
    }
    if (std::abs(total - 1.0) > weight_tolerance) {
      throw ModelError("atom weights must sum to 1, got " + std::to_string(total));
    }
    cumulative_.reserve(atoms_.size());
    double c = 0.0;
    for (const auto& a : atoms_) cumulative_.push_back(c += a.weight);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  Pairing pairing() const { return pairing_; }
  int sign() const { return pairing_sign(pairing_); }
  const std::string& description() const { return description_; }

  // Atom index for a uniform draw u in [0, 1).
  std::size_t pick(double u) const {
    const double target = u * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    return std::min<std::size_t>(it - cumulative_.begin(), atoms_.size() - 1);
  }

 private:
  std::vector<Atom> atoms_;
  Pairing pairing_;
  std::string description_;
  std::vector<double> cumulative_;
};

inline double lhv_correlation_exact(const LhvModel& model, double alpha, double beta) {
  double sum = 0.0;
  for (const auto& atom : model.atoms()) {
    sum += atom.weight * sign_of(eval_simple(atom.response, alpha)) *
           sign_of(eval_simple(atom.response, beta));
  }
  return model.sign() * sum;
}

inline CorrelationFunction lhv_correlation(const LhvModel& model) {
  return {[model](double a, double b) { return lhv_correlation_exact(model, a, b); },
          CorrelationKind::lhv_exact, model.description()};
}

/// Closed-form Aspect correlation: a triangle wave in delta = (alpha - beta) mod pi.
inline double aspect_correlation_closed(double alpha, double beta) {
  const double delta = normalize_angle(alpha - beta).radians();
  return delta < pi / 2.0 ? -1.0 + 4.0 * delta / pi : 3.0 - 4.0 * delta / pi;
}

inline CorrelationFunction aspect_correlation() {
  return {aspect_correlation_closed, CorrelationKind::lhv_exact, "aspect: triangle wave"};
}

/// (1/pi) * integral over lambda in [0, pi] of A(alpha, lambda) B(beta, lambda),
/// with B = -A, evaluated exactly by splitting at the sign changes of both factors.
inline double aspect_correlation_quadrature(double alpha, double beta) {
  std::vector<double> cuts = {0.0, pi};
  for (double setting : {alpha, beta}) {
    for (double offset : {pi / 4.0, 3.0 * pi / 4.0}) {
      cuts.push_back(normalize_angle(setting + offset).radians());
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    integral -= len * sign_of(aspect_response(alpha, mid)) * sign_of(aspect_response(beta, mid));
  }
  return integral / pi;
}

// Uniform midpoint discretization of the Aspect hidden variable on [0, pi).
inline LhvModel aspect_model(std::size_t atoms = 1024) {
  if (atoms == 0) throw std::invalid_argument("atom count must be positive");
  std::vector<Atom> list;
  list.reserve(atoms);
  const double w = 1.0 / static_cast<double>(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    const double lambda = (static_cast<double>(i) + 0.5) * pi / static_cast<double>(atoms);
    list.push_back({w, aspect_to_simple(lambda)});
  }
  return LhvModel(std::move(list), Pairing::anti_correlated,
                  "aspect model, " + std::to_string(atoms) + " uniform atoms");
}

inline MeasuredCorrelation lhv_estimate_correlation(const LhvModel& model, double alpha, double beta,
                                                    std::uint64_t n_runs, std::uint64_t seed) {
  if (n_runs == 0) throw std::invalid_argument("n_runs must be at least 1");
  // Per-atom products are fixed, so tabulate them once.
  std::vector<int> products;
  products.reserve(model.atoms().size());
  for (const auto& atom : model.atoms()) {
    products.push_back(model.sign() * sign_of(eval_simple(atom.response, alpha)) *
                       sign_of(eval_simple(atom.response, beta)));
  }
  const std::int64_t sum =
      chunked_product_sum(n_runs, seed, [&](std::uint64_t runs, RandomStream& rng) {
        std::int64_t s = 0;
        for (std::uint64_t r = 0; r < runs; ++r) s += products[model.pick(rng.uniform())];
        return s;
      });
  return make_measurement(alpha, beta, sum, n_runs, seed);
}

}  // namespace bellfourier
