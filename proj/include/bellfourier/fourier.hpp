#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellfourier/core.hpp"
#include "bellfourier/lhv.hpp"

namespace bellfourier {

using cplx = std::complex<double>;

// Normalization carried by every spectrum. Spectra of different conventions
// must not be mixed.
enum class Convention {
  sqrt_period,  // 1D: basis e^{2 pi i n t / T} / sqrt(T)
  inverse_pi,   // 2D: basis e^{2i(n alpha + m beta)} / pi
};

inline std::string to_string(Convention c) {
  return c == Convention::sqrt_period ? "1/sqrt(T)" : "1/pi";
}

inline void require_convention(Convention have, Convention want) {
  if (have != want) {
    throw std::logic_error("spectrum convention " + to_string(have) + " used where " +
                           to_string(want) + " is required");
  }
}

/// Coefficients f_n, n in [-N, N], of a T-periodic function.
struct FourierSpectrum {
  int max_index = 0;
  double period = pi;
  std::vector<cplx> coefficients;  // index n + N
  Convention convention = Convention::sqrt_period;

  FourierSpectrum() = default;
  FourierSpectrum(int n, double t) : max_index(n), period(t), coefficients(2 * n + 1) {}

  cplx& operator[](int n) { return coefficients[n + max_index]; }
  const cplx& operator[](int n) const { return coefficients[n + max_index]; }
  cplx at(int n) const { return std::abs(n) > max_index ? cplx{} : (*this)[n]; }

  double max_conjugate_asymmetry() const {
    double worst = 0.0;
    for (int n = 0; n <= max_index; ++n) {
      worst = std::max(worst, std::abs((*this)[-n] - std::conj((*this)[n])));
    }
    return worst;
  }
};

/// 2D coefficients c_nm, n, m in [-N, N], in the 1/pi convention.
struct Spectrum2D {
  int max_index = 0;
  std::vector<cplx> coefficients;  // row-major, (n + N) * (2N + 1) + (m + N)
  Convention convention = Convention::inverse_pi;

  Spectrum2D() = default;
  explicit Spectrum2D(int n) : max_index(n), coefficients((2 * n + 1) * (2 * n + 1)) {}

  int width() const { return 2 * max_index + 1; }
  cplx& operator()(int n, int m) { return coefficients[(n + max_index) * width() + m + max_index]; }
  const cplx& operator()(int n, int m) const {
    return coefficients[(n + max_index) * width() + m + max_index];
  }
  cplx at(int n, int m) const {
    return (std::abs(n) > max_index || std::abs(m) > max_index) ? cplx{} : (*this)(n, m);
  }
};

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1].
template <int Order>
struct GaussLegendre {
  std::array<double, Order> nodes{};
  std::array<double, Order> weights{};

  GaussLegendre() {
    for (int i = 0; i < Order; ++i) {
      double x = std::cos(pi * (i + 0.75) / (Order + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= Order; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = Order * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

inline const GaussLegendre<8>& gauss8() {
  static const GaussLegendre<8> rule;
  return rule;
}

inline void check_window(int max_index, int resolution) {
  if (max_index < 0) throw std::invalid_argument("Fourier window N must be non-negative");
  if (resolution < 4 * max_index || resolution < 1) {
    throw std::invalid_argument("resolution " + std::to_string(resolution) +
                                " is below the anti-aliasing floor 4N = " +
                                std::to_string(4 * max_index));
  }
}

}  // namespace detail

/// Numerical f_n = int_0^T f(t) e^{-2 pi i n t/T} / sqrt(T) dt with the
/// periodic rectangle rule on `resolution` equispaced nodes. Spectrally
/// accurate for smooth periodic f; use the breakpoint overload otherwise.
inline FourierSpectrum coefficients_quadrature(const std::function<double(double)>& f,
                                               double period, int max_index, int resolution) {
  detail::check_window(max_index, resolution);
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  FourierSpectrum s(max_index, period);
  const double h = period / resolution;
  std::vector<double> samples(resolution);
  for (int j = 0; j < resolution; ++j) samples[j] = f(j * h);
  // roots[r] = e^{-2 pi i r / resolution}; n*j is reduced mod resolution
  std::vector<cplx> roots(resolution);
  for (int r = 0; r < resolution; ++r) roots[r] = std::polar(1.0, -2.0 * pi * r / resolution);
  const double scale = h / std::sqrt(period);
  for (int n = -max_index; n <= max_index; ++n) {
    const long long stride = ((static_cast<long long>(n) % resolution) + resolution) % resolution;
    cplx acc{};
    long long r = 0;
    for (int j = 0; j < resolution; ++j) {
      acc += samples[j] * roots[r];
      r += stride;
      if (r >= resolution) r -= resolution;
    }
    s[n] = acc * scale;
  }
  return s;
}

/// Breakpoint-aligned variant for piecewise-smooth f: [0, T] is split at the
/// given breakpoints and each piece is integrated with composite 8-point
/// Gauss-Legendre panels, roughly `resolution` nodes in total. f is only
/// sampled strictly inside pieces.
inline FourierSpectrum coefficients_quadrature(const std::function<double(double)>& f,
                                               double period, int max_index, int resolution,
                                               std::span<const double> breakpoints) {
  detail::check_window(max_index, resolution);
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  std::vector<double> cuts = {0.0, period};
  for (double b : breakpoints) {
    if (b > 0.0 && b < period) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto& gl = detail::gauss8();
  const int panels_total = std::max(1, resolution / 8);
  FourierSpectrum s(max_index, period);
  const double norm = 1.0 / std::sqrt(period);
  const double omega = 2.0 * pi / period;

  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double a = cuts[seg], b = cuts[seg + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil(panels_total * (b - a) / period)));
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * width;
      for (int q = 0; q < 8; ++q) {
        const double t = lo + 0.5 * width * (gl.nodes[q] + 1.0);
        const double fw = f(t) * 0.5 * width * gl.weights[q] * norm;
        // e^{-i omega n t} by recurrence from n = 0
        const cplx step = std::polar(1.0, -omega * t);
        cplx phase{1.0, 0.0};
        s[0] += fw;
        for (int n = 1; n <= max_index; ++n) {
          phase *= step;
          s[n] += fw * phase;
          s[-n] += fw * std::conj(phase);
        }
      }
    }
  }
  return s;
}

/// Exact coefficients of a step function (period pi), summed interval by
/// interval: int over [theta_{k-1}, theta_k) of e^{-2 i n theta} / sqrt(pi).
inline FourierSpectrum coefficients_simple(const SimpleFunctionSpec& spec, int max_index) {
  if (max_index < 0) throw std::invalid_argument("Fourier window N must be non-negative");
  FourierSpectrum s(max_index, pi);
  const auto part = spec.partition();
  const double inv_sqrt = 1.0 / std::sqrt(pi);
  const int k_count = spec.intervals();

  double f0 = 0.0;
  for (int k = 0; k < k_count; ++k) f0 += spec.sign(k) * (part[k + 1] - part[k]);
  s[0] = f0 * inv_sqrt;

  // Positive n directly; negative n as conjugates (the function is real).
  for (int n = 1; n <= max_index; ++n) {
    cplx acc{};
    cplx left = std::polar(1.0, -2.0 * n * part[0]);
    for (int k = 0; k < k_count; ++k) {
      const cplx right = std::polar(1.0, -2.0 * n * part[k + 1]);
      acc += static_cast<double>(spec.sign(k)) * (right - left);
      left = right;
    }
    const cplx fn = cplx{0.0, 1.0} * acc * (inv_sqrt / (2.0 * n));
    s[n] = fn;
    s[-n] = std::conj(fn);
  }
  return s;
}

struct PartialSumValue {
  double value = 0.0;
  double imaginary_residue = 0.0;
};

inline constexpr double kImaginaryResidueLimit = 1e-9;

inline PartialSumValue partial_sum_detailed(const FourierSpectrum& s, double t) {
  require_convention(s.convention, Convention::sqrt_period);
  const double omega = 2.0 * pi / s.period;
  cplx acc{};
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    acc += s[n] * std::polar(1.0, omega * n * t);
  }
  acc /= std::sqrt(s.period);
  return {acc.real(), acc.imag()};
}

/// f_N(t) = sum_{|n| <= N} f_n e^{2 pi i n t / T} / sqrt(T). Throws when the
/// imaginary residue shows the spectrum is not conjugate-symmetric.
inline double partial_sum(const FourierSpectrum& s, double t) {
  const auto r = partial_sum_detailed(s, t);
  if (std::abs(r.imaginary_residue) > kImaginaryResidueLimit) {
    throw std::domain_error("partial sum has imaginary residue " +
                            std::to_string(r.imaginary_residue) +
                            "; spectrum is not conjugate-symmetric");
  }
  return r.value;
}

inline double partial_sum(const SimpleFunctionSpec& spec, int max_index, double t) {
  return partial_sum(coefficients_simple(spec, max_index), t);
}

inline constexpr double kPeriodicityPrecheckTolerance = 1e-9;

/// c_nm = int_0^pi int_0^pi C(alpha, beta) e^{-2i(n alpha + m beta)} / pi,
/// via the tensor periodic rectangle rule on a resolution x resolution grid.
inline Spectrum2D coefficients_2d(const CorrelationFunction& c, int max_index, int resolution) {
  detail::check_window(max_index, resolution);
  {
    const auto report = check_constraints(c, 16, kPeriodicityPrecheckTolerance);
    if (report.c1_max_violation > kPeriodicityPrecheckTolerance) {
      throw std::invalid_argument("correlation is not pi-periodic in each argument (violation " +
                                  std::to_string(report.c1_max_violation) + ")");
    }
  }
  const int width = 2 * max_index + 1;
  const double h = pi / resolution;

  // basis[j][m + N] = e^{-2 i m x_j}
  std::vector<cplx> basis(static_cast<std::size_t>(resolution) * width);
  for (int j = 0; j < resolution; ++j) {
    for (int m = -max_index; m <= max_index; ++m) {
      const long long r = (static_cast<long long>(m) * j) % resolution;
      basis[static_cast<std::size_t>(j) * width + m + max_index] =
          std::polar(1.0, -2.0 * pi * static_cast<double>(r) / resolution);
    }
  }

  // rows[j][m] = sum_k C(alpha_j, beta_k) e^{-2 i m beta_k}
  std::vector<cplx> rows(static_cast<std::size_t>(resolution) * width);
  detail::parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t j) {
    const double alpha = static_cast<double>(j) * h;
    cplx* row = &rows[j * width];
    for (int k = 0; k < resolution; ++k) {
      const double value = c(alpha, k * h);
      const cplx* e = &basis[static_cast<std::size_t>(k) * width];
      for (int m = 0; m < width; ++m) row[m] += value * e[m];
    }
  });

  Spectrum2D s(max_index);
  const double scale = h * h / pi;
  for (int n = -max_index; n <= max_index; ++n) {
    for (int m = 0; m < width; ++m) {
      cplx acc{};
      for (int j = 0; j < resolution; ++j) {
        acc += basis[static_cast<std::size_t>(j) * width + n + max_index] *
               rows[static_cast<std::size_t>(j) * width + m];
      }
      s(n, m - max_index) = acc * scale;
    }
  }
  return s;
}

/// sum_{|n| <= N} |f_n|^2 for a step function; approaches pi from below.
inline double parseval_check(const SimpleFunctionSpec& spec, int max_index) {
  const auto s = coefficients_simple(spec, max_index);
  double total = 0.0;
  for (const auto& c : s.coefficients) total += std::norm(c);
  return total;
}

/// The spec translated by delta (mod pi): g(theta) = f(theta - delta).
inline SimpleFunctionSpec shift_spec(const SimpleFunctionSpec& spec, double delta) {
  const double d = normalize_angle(delta).radians();
  if (d == 0.0) return spec;
  // Value of g at 0 is f(pi - d); build the new partition from shifted cuts.
  std::vector<double> cuts;
  for (double b : spec.breakpoints()) cuts.push_back(normalize_angle(b + d).radians());
  // The implicit cut at 0 (period boundary) moves to d; it is a real jump
  // only if the first and last interval signs differ.
  const int last_sign = spec.sign(spec.intervals() - 1);
  if (last_sign != spec.first_sign()) cuts.push_back(d);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double x) { return x <= 0.0 || x >= pi; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const int start = sign_of(eval_simple(spec, pi - d));
  return SimpleFunctionSpec(std::move(cuts), start);
}

}  // namespace bellfourier
