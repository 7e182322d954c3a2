#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellfourier/core.hpp"
#include "bellfourier/fourier.hpp"
#include "bellfourier/lhv.hpp"

namespace bellfourier {

/// M_nm = pairing_sign * sum_i w_i f_n(i) f_m(i) for n, m in [-N, N].
///
/// Stored as a Spectrum2D because a model's correlation expands as
/// sum_nm M_nm e^{2i(n alpha + m beta)} / pi, i.e. M is the model's 2D
/// spectrum in the 1/pi convention.
struct MomentMatrix {
  Spectrum2D entries;
  int pairing_sign = 1;

  int max_index() const { return entries.max_index; }
  cplx operator()(int n, int m) const { return entries.at(n, m); }

  // sum_n M_{n,-n}
  double trace() const {
    double t = 0.0;
    for (int n = -max_index(); n <= max_index(); ++n) t += entries(n, -n).real();
    return t;
  }
};

inline MomentMatrix moment_matrix(const LhvModel& model, int max_index) {
  if (max_index < 0) throw std::invalid_argument("Fourier window N must be non-negative");
  const int width = 2 * max_index + 1;
  const auto& atoms = model.atoms();

  // Partial sums over fixed atom blocks, reduced in block order; the block
  // layout depends only on the atom count so results are machine-independent.
  const std::size_t block = std::max<std::size_t>(64, (atoms.size() + 15) / 16);
  const std::size_t blocks = (atoms.size() + block - 1) / block;
  std::vector<std::vector<cplx>> partial(blocks, std::vector<cplx>(width * width));
  detail::parallel_for(blocks, [&](std::size_t w) {
    auto& acc = partial[w];
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(atoms.size(), lo + block);
    for (std::size_t i = lo; i < hi; ++i) {
      const auto f = coefficients_simple(atoms[i].response, max_index);
      const double weight = atoms[i].weight;
      for (int a = 0; a < width; ++a) {
        const cplx wf = weight * f.coefficients[a];
        for (int b = 0; b < width; ++b) acc[a * width + b] += wf * f.coefficients[b];
      }
    }
  });

  MomentMatrix m{Spectrum2D(max_index), model.sign()};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < p.size(); ++k) m.entries.coefficients[k] += p[k];
  }
  for (auto& c : m.entries.coefficients) c *= static_cast<double>(model.sign());
  return m;
}

/// The moment matrix the singlet correlation demands: -pi/2 at (1,-1) and
/// (-1,1), zero elsewhere.
inline MomentMatrix quantum_target(int max_index) {
  if (max_index < 1) throw std::invalid_argument("quantum target needs N >= 1");
  MomentMatrix t{Spectrum2D(max_index), -1};
  t.entries(1, -1) = -pi / 2.0;
  t.entries(-1, 1) = -pi / 2.0;
  return t;
}

// Reconstructs C(alpha, beta) from a moment matrix (or any 1/pi spectrum).
inline double reconstruct_correlation(const Spectrum2D& s, double alpha, double beta) {
  require_convention(s.convention, Convention::inverse_pi);
  cplx acc{};
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    for (int m = -s.max_index; m <= s.max_index; ++m) {
      acc += s(n, m) * std::polar(1.0, 2.0 * (n * alpha + m * beta));
    }
  }
  return acc.real() / pi;
}

struct Witness {
  int n = 0;
  int m = 0;
  cplx value;
  cplx target;
  std::string role;
};

struct IncompatibilityReport {
  int max_index = 0;
  Pairing pairing = Pairing::correlated;
  double residual_inf = 0.0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
  double parseval_total = 0.0;
  std::string verdict;
  std::string description;
};

inline constexpr double kIncompatibilityTolerance = 1e-6;

/// Compares a model's moment matrix against the quantum target and records
/// the entries that prevent agreement.
inline IncompatibilityReport incompatibility_report(const LhvModel& model, int max_index,
                                                    double tolerance = kIncompatibilityTolerance) {
  if (max_index < 2) throw std::invalid_argument("incompatibility check needs N >= 2");
  const auto m = moment_matrix(model, max_index);
  const auto target = quantum_target(max_index);

  IncompatibilityReport r;
  r.max_index = max_index;
  r.pairing = model.pairing();
  r.tolerance = tolerance;
  r.description = model.description();
  r.parseval_total = m.trace();

  int worst_n = 0, worst_m = 0;
  for (int n = -max_index; n <= max_index; ++n) {
    for (int k = -max_index; k <= max_index; ++k) {
      const double d = std::abs(m(n, k) - target(n, k));
      if (d > r.residual_inf) {
        r.residual_inf = d;
        worst_n = n;
        worst_m = k;
      }
    }
  }

  r.witnesses.push_back({1, -1, m(1, -1), target(1, -1), "singlet entry"});
  int strongest = 0;
  double strongest_mag = -1.0;
  for (int n = 0; n <= max_index; ++n) {
    if (n == 1) continue;
    const double mag = std::abs(m(n, -n));
    if (mag > strongest_mag) {
      strongest_mag = mag;
      strongest = n;
    }
  }
  r.witnesses.push_back({strongest, -strongest, m(strongest, -strongest),
                         target(strongest, -strongest), "largest diagonal entry off n = +/-1"});
  r.witnesses.push_back({worst_n, worst_m, m(worst_n, worst_m), target(worst_n, worst_m),
                         "largest residual"});

  r.verdict = r.residual_inf > tolerance ? "incompatible" : "compatible";
  return r;
}

/// The only response the moment equations allow once every coefficient off
/// n = +/-1 vanishes: F(theta) = sqrt(2) cos(phase + 2 theta).
class ForcedResponse {
 public:
  explicit ForcedResponse(double phase) : phase_(phase) {}

  double phase() const { return phase_; }
  double operator()(double theta) const { return std::sqrt(2.0) * std::cos(phase_ + 2.0 * theta); }

  // The four theta in [0, pi) with phase + 2 theta = (2k + 1) pi / 4.
  std::array<double, 4> unit_modulus_points() const {
    std::array<double, 4> pts{};
    for (int k = 0; k < 4; ++k) {
      pts[k] = normalize_angle(((2 * k + 1) * pi / 4.0 - phase_) / 2.0).radians();
    }
    std::sort(pts.begin(), pts.end());
    return pts;
  }

  // Sign changes of |F| - 1 between consecutive points of a periodic grid.
  int bracketed_unit_crossings(int grid_points) const {
    if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
    int crossings = 0;
    auto g = [this](double t) { return std::abs((*this)(t)) - 1.0; };
    double prev = g(0.0);
    for (int j = 1; j <= grid_points; ++j) {
      const double cur = g(j * pi / grid_points);
      if ((prev < 0.0) != (cur < 0.0)) ++crossings;
      prev = cur;
    }
    return crossings;
  }

  double off_unit_fraction(int grid_points, double margin = 0.01) const {
    if (grid_points < 1) throw std::invalid_argument("grid needs at least 1 point");
    int count = 0;
    for (int j = 0; j < grid_points; ++j) {
      if (std::abs(std::abs((*this)(j * pi / grid_points)) - 1.0) > margin) ++count;
    }
    return static_cast<double>(count) / grid_points;
  }

 private:
  double phase_;
};

inline ForcedResponse forced_response(double phase) { return ForcedResponse(phase); }

struct SchmidtSpectrum {
  int max_index = 0;
  std::vector<double> weights;  // sigma_n = |c_{n,-n}|, index n + N
  double threshold = 0.0;
  int above_threshold = 0;
  double off_diagonal_fraction = 0.0;

  double operator[](int n) const { return weights[n + max_index]; }
};

class NonStationaryError : public std::invalid_argument {
 public:
  NonStationaryError(double fraction)
      : std::invalid_argument("correlation is not stationary: off-diagonal spectral mass fraction " +
                              std::to_string(fraction)),
        fraction_(fraction) {}
  double off_diagonal_fraction() const { return fraction_; }

 private:
  double fraction_;
};

inline constexpr double kStationarityThreshold = 1e-6;
inline constexpr int kDefaultSchmidtResolution = 4096;

/// Diagonal weights sigma_n = |c_{n,-n}| of a stationary correlation C(alpha - beta).
inline SchmidtSpectrum schmidt_spectrum(const Spectrum2D& c, double threshold) {
  require_convention(c.convention, Convention::inverse_pi);
  const int n_max = c.max_index;
  double total = 0.0, off = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    for (int m = -n_max; m <= n_max; ++m) {
      const double mass = std::norm(c(n, m));
      total += mass;
      if (m != -n) off += mass;
    }
  }
  SchmidtSpectrum s;
  s.max_index = n_max;
  s.threshold = threshold;
  s.off_diagonal_fraction = total > 0.0 ? off / total : 0.0;
  if (s.off_diagonal_fraction > kStationarityThreshold) {
    throw NonStationaryError(s.off_diagonal_fraction);
  }
  for (int n = -n_max; n <= n_max; ++n) {
    s.weights.push_back(std::abs(c(n, -n)));
    if (s.weights.back() > threshold) ++s.above_threshold;
  }
  return s;
}

inline SchmidtSpectrum schmidt_spectrum(const CorrelationFunction& c, int max_index,
                                        double threshold,
                                        int resolution = kDefaultSchmidtResolution) {
  return schmidt_spectrum(coefficients_2d(c, max_index, resolution), threshold);
}

struct ChshSettings {
  double a = 0.0;
  double a_prime = pi / 4.0;
  double b = pi / 8.0;
  double b_prime = 3.0 * pi / 8.0;
};

// |C(a,b) - C(a,b') + C(a',b) + C(a',b')|
inline double chsh_score(const CorrelationFunction& c, const ChshSettings& s = {}) {
  return std::abs(c(s.a, s.b) - c(s.a, s.b_prime) + c(s.a_prime, s.b) + c(s.a_prime, s.b_prime));
}

}  // namespace bellfourier
