#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bellfourier/builtins.hpp"
#include "bellfourier/fourier.hpp"
#include "bellfourier/quantum.hpp"
#include "oracles.hpp"

using namespace bellfourier;

namespace {

std::function<double(double)> as_function(const SimpleFunctionSpec& spec) {
  return [spec](double t) { return static_cast<double>(oracle::scan_eval(spec.breakpoints(), spec.first_sign(), t)); };
}

FourierSpectrum aligned_quadrature(const SimpleFunctionSpec& spec, int n, int resolution) {
  return coefficients_quadrature(as_function(spec), pi, n, resolution, spec.breakpoints());
}

}  // namespace

TEST(CoefficientsQuadrature, Constant) {
  const auto s = coefficients_quadrature([](double) { return 1.0; }, pi, 8, 64);
  EXPECT_NEAR(s[0].real(), std::sqrt(pi), 1e-10);
  for (int n = 1; n <= 8; ++n) {
    EXPECT_LT(std::abs(s[n]), 1e-10);
    EXPECT_LT(std::abs(s[-n]), 1e-10);
  }
}

TEST(CoefficientsQuadrature, CosineAgreesAcrossResolutions) {
  auto f = [](double t) { return std::cos(2.0 * t); };
  const auto s = coefficients_quadrature(f, pi, 6, 256);
  const auto fine = coefficients_quadrature(f, pi, 6, 512);
  for (int n = -6; n <= 6; ++n) {
    const double expected = (std::abs(n) == 1) ? std::sqrt(pi) / 2.0 : 0.0;
    EXPECT_NEAR(s[n].real(), expected, 1e-10) << n;
    EXPECT_NEAR(s[n].imag(), 0.0, 1e-10) << n;
    EXPECT_LT(std::abs(s[n] - fine[n]), 1e-10);
  }
}

TEST(CoefficientsQuadrature, ResolutionFloor) {
  EXPECT_THROW(coefficients_quadrature([](double) { return 1.0; }, pi, 16, 63), std::invalid_argument);
  const std::vector<double> bps = {1.0};
  EXPECT_THROW(coefficients_quadrature([](double) { return 1.0; }, pi, 16, 32, bps),
               std::invalid_argument);
}

TEST(CoefficientsQuadrature, GeneralPeriod) {
  // f(t) = sin(2 pi t / T) on T = 3: f_{+-1} = -+ i sqrt(T)/2
  const double T = 3.0;
  const auto s = coefficients_quadrature([T](double t) { return std::sin(2 * pi * t / T); }, T, 3, 64);
  EXPECT_NEAR(s[1].imag(), -std::sqrt(T) / 2.0, 1e-12);
  EXPECT_NEAR(s[-1].imag(), std::sqrt(T) / 2.0, 1e-12);
  EXPECT_NEAR(partial_sum(s, 0.75), 1.0, 1e-12);
}

TEST(Fig2Spectrum, SupportIsFourModEight) {
  // The eight-interval square wave has period pi/4 and odd half-wave
  // symmetry, so only n = 4 (mod 8) survives.
  const auto spec = builtins::fig2();
  const auto exact = coefficients_simple(spec, 64);
  const auto quad = aligned_quadrature(spec, 64, 1 << 14);
  for (int n = -64; n <= 64; ++n) {
    const bool support = ((n % 8) + 8) % 8 == 4;
    if (support) {
      EXPECT_GT(std::abs(exact[n]), 1e-3) << n;
    } else {
      EXPECT_LT(std::abs(exact[n]), 1e-12) << n;
    }
    EXPECT_LT(std::abs(exact[n] - quad[n]), 1e-10) << n;
  }
  // fundamental of a unit square wave: (4/pi) sin(8 theta), so |f_4| = 2/sqrt(pi)
  EXPECT_NEAR(std::abs(exact[4]), 2.0 / std::sqrt(pi), 1e-14);
  EXPECT_NEAR(std::abs(exact[4]), std::abs(oracle::midpoint_coefficient(spec, 4, 200000)), 1e-8);
}

TEST(CoefficientsSimple, Examples) {
  const auto c = coefficients_simple(builtins::constant(), 4);
  EXPECT_NEAR(c[0].real(), std::sqrt(pi), 1e-15);
  for (int n = 1; n <= 4; ++n) EXPECT_LT(std::abs(c[n]), 1e-15);

  const auto sq = coefficients_simple(builtins::square(), 4);
  EXPECT_NEAR(std::abs(sq[0]), 0.0, 1e-15);
  EXPECT_NEAR(sq[1].real(), 0.0, 1e-15);
  EXPECT_NEAR(sq[1].imag(), -2.0 / std::sqrt(pi), 1e-15);
  EXPECT_NEAR(std::norm(sq[1]) + std::norm(sq[-1]), 8.0 / pi, 1e-14);

  // oracle: breakpoint-aligned Gauss-Legendre at 2^20 nodes
  const auto quad = aligned_quadrature(builtins::square(), 4, 1 << 20);
  for (int n = -4; n <= 4; ++n) EXPECT_LT(std::abs(sq[n] - quad[n]), 1e-12) << n;
}

TEST(CoefficientsSimple, MatchesAlignedQuadratureOnRandomSpecs) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto spec = oracle::random_spec(rng);
    const auto exact = coefficients_simple(spec, 64);
    const auto quad = aligned_quadrature(spec, 64, 1 << 14);
    EXPECT_EQ(exact.max_conjugate_asymmetry(), 0.0);
    EXPECT_LE(quad.max_conjugate_asymmetry(), 1e-10);
    for (int n = -64; n <= 64; ++n) ASSERT_LT(std::abs(exact[n] - quad[n]), 1e-10) << i << " " << n;
  }
}

TEST(CoefficientsSimple, ExpandedZeroModeAgrees) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    const auto spec = oracle::random_spec(rng);
    EXPECT_NEAR(std::abs(coefficients_simple(spec, 0)[0] - oracle::expanded_f0(spec)), 0.0, 1e-12);
  }
}

TEST(CoefficientsSimple, ShiftTheorem) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> shift(0.0, pi);
  for (int i = 0; i < 50; ++i) {
    const auto spec = oracle::random_spec(rng);
    const double d = shift(rng);
    const auto shifted = shift_spec(spec, d);
    // shift_spec itself checked pointwise
    for (int j = 0; j < 50; ++j) {
      const double t = (j + 0.37) * pi / 50;
      ASSERT_EQ(eval_simple(shifted, t), eval_simple(spec, t - d));
    }
    const auto a = coefficients_simple(spec, 32);
    const auto b = coefficients_simple(shifted, 32);
    for (int n = -32; n <= 32; ++n) {
      ASSERT_LT(std::abs(b[n] - a[n] * std::polar(1.0, -2.0 * n * d)), 1e-12);
    }
  }
}

TEST(PartialSum, Examples) {
  FourierSpectrum c(0, pi);
  c[0] = std::sqrt(pi);
  EXPECT_NEAR(partial_sum(c, 0.77), 1.0, 1e-15);

  const auto sq = builtins::square();
  EXPECT_NEAR(partial_sum(sq, 128, pi / 4.0), 1.0, 0.02);
  EXPECT_EQ(sign_of(eval_simple(sq, pi / 4.0)), 1);

  double prev = 1.0;
  for (int n : {64, 128, 256}) {
    const double at_jump = std::abs(partial_sum(sq, n, pi / 2.0));
    EXPECT_LT(at_jump, 1e-9) << n;
    EXPECT_LE(at_jump, prev + 1e-12);
    prev = at_jump;
  }
}

TEST(PartialSum, RejectsAsymmetricSpectrum) {
  FourierSpectrum s(1, pi);
  s[1] = {1.0, 0.0};
  EXPECT_THROW(partial_sum(s, 0.3), std::domain_error);
  const auto r = partial_sum_detailed(s, 0.3);
  EXPECT_GT(std::abs(r.imaginary_residue), 1e-9);
}

TEST(PartialSum, RejectsWrongConvention) {
  FourierSpectrum s(1, pi);
  s.convention = Convention::inverse_pi;
  EXPECT_THROW(partial_sum(s, 0.0), std::logic_error);
}

TEST(Coefficients2D, Singlet) {
  const auto s = coefficients_2d(quantum_correlation(), 5, 64);
  for (int n = -5; n <= 5; ++n) {
    for (int m = -5; m <= 5; ++m) {
      const bool hit = (n == 1 && m == -1) || (n == -1 && m == 1);
      EXPECT_NEAR(std::abs(s(n, m) - (hit ? cplx{-pi / 2.0, 0.0} : cplx{})), 0.0, 1e-9) << n << "," << m;
    }
  }
}

TEST(Coefficients2D, Constant) {
  const CorrelationFunction one{[](double, double) { return 1.0; }, CorrelationKind::measured, "1"};
  const auto s = coefficients_2d(one, 3, 16);
  EXPECT_NEAR(s(0, 0).real(), pi, 1e-12);
  for (int n = -3; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m)
      if (n || m) {
        EXPECT_LT(std::abs(s(n, m)), 1e-12);
      }
}

TEST(Coefficients2D, TriangleDiagonalMatchesOneDimensional) {
  const auto s = coefficients_2d(aspect_correlation(), 7, 2048);
  // oracle: 1D coefficients of g(delta) = triangle(delta) in plain
  // int_0^pi g e^{-2 i n delta} form, by fine midpoint sums
  for (int n = -7; n <= 7; ++n) {
    cplx g{};
    const int pts = 400000;
    for (int j = 0; j < pts; ++j) {
      const double d = (j + 0.5) * pi / pts;
      g += aspect_correlation_closed(d, 0.0) * std::polar(1.0, -2.0 * n * d) * (pi / pts);
    }
    EXPECT_LT(std::abs(s(n, -n) - g), 1e-6) << n;
    if (n % 2 == 0) {
      EXPECT_LT(std::abs(s(n, -n)), 1e-9) << n;
    }
  }
  EXPECT_NEAR(std::abs(s(1, -1)) / std::abs(s(3, -3)), 9.0, 1e-4);
}

TEST(Coefficients2D, StationaryHasNoOffDiagonal) {
  const CorrelationFunction g{[](double a, double b) {
                                const double d = a - b;
                                return 0.3 * std::cos(2 * d) + 0.2 * std::sin(4 * d) + 0.1 * std::cos(6 * d);
                              },
                              CorrelationKind::measured, "stationary"};
  const auto s = coefficients_2d(g, 4, 64);
  for (int n = -4; n <= 4; ++n)
    for (int m = -4; m <= 4; ++m)
      if (m != -n) {
        EXPECT_LT(std::abs(s(n, m)), 1e-12);
      }
}

TEST(Coefficients2D, RejectsNonPeriodic) {
  const CorrelationFunction bad{[](double a, double b) { return std::cos(a - b); },
                                CorrelationKind::measured, "bad"};
  EXPECT_THROW(coefficients_2d(bad, 2, 16), std::invalid_argument);
  EXPECT_THROW(coefficients_2d(quantum_correlation(), 8, 16), std::invalid_argument);
}

TEST(Parseval, Examples) {
  EXPECT_NEAR(parseval_check(builtins::constant(), 0), pi, 1e-15);
  EXPECT_NEAR(parseval_check(builtins::square(), 512), pi, 0.01 * pi);
  std::mt19937_64 rng(24);
  for (int i = 0; i < 30; ++i) {
    EXPECT_NEAR(parseval_check(oracle::random_spec(rng), 2048), pi, 0.005 * pi);
  }
}

TEST(Parseval, MonotoneAndBounded) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 30; ++i) {
    const auto spec = oracle::random_spec(rng);
    const auto s = coefficients_simple(spec, 512);
    double partial = std::norm(s[0]);
    for (int n = 1; n <= 512; ++n) {
      const double next = partial + std::norm(s[n]) + std::norm(s[-n]);
      ASSERT_GE(next, partial);
      partial = next;
    }
    EXPECT_LE(partial, pi + 1e-9);
    EXPECT_NEAR(partial, parseval_check(spec, 512), 1e-12);
  }
}
