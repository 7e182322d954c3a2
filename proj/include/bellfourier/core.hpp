#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace bellfourier {

inline constexpr double pi = std::numbers::pi;

// A model or spec that breaks one of its structural invariants.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Polarizer orientation reduced to the fundamental domain [0, pi).
class Angle {
 public:
  constexpr Angle() = default;

  static Angle from_radians(double theta) {
    if (!std::isfinite(theta)) {
      throw std::invalid_argument("angle must be finite");
    }
    double r = std::fmod(theta, pi);
    if (r < 0.0) r += pi;
    // r + pi can round up to exactly pi for tiny negative r
    if (r >= pi) r = 0.0;
    return Angle(r);
  }

  constexpr double radians() const { return value_; }

  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  constexpr explicit Angle(double v) : value_(v) {}
  double value_ = 0.0;
};

inline Angle normalize_angle(double theta) { return Angle::from_radians(theta); }

enum class Outcome : int { plus = 1, minus = -1 };

constexpr int sign_of(Outcome o) { return static_cast<int>(o); }
constexpr Outcome outcome_from_sign(int s) { return s >= 0 ? Outcome::plus : Outcome::minus; }

enum class CorrelationKind { quantum, lhv_exact, lhv_estimated, measured };

/// A correlation C(alpha, beta) between two analyzer settings.
///
/// The evaluator receives raw radians, not pre-reduced angles, so that
/// check_constraints() can observe whether the underlying formula really is
/// pi-periodic in each argument.
struct CorrelationFunction {
  std::function<double(double, double)> eval;
  CorrelationKind kind = CorrelationKind::quantum;
  std::string description;

  double operator()(double alpha, double beta) const { return eval(alpha, beta); }
};

struct ConstraintReport {
  double c1_max_violation = 0.0;  // period-pi shift in either argument
  double c2_max_violation = 0.0;  // argument swap
  double tolerance = 0.0;
  bool pass = false;
};

/// Scans a grid_size x grid_size grid over [0, pi)^2 for violations of
/// pi-periodicity in each argument (C1) and swap symmetry (C2).
inline ConstraintReport check_constraints(const CorrelationFunction& c, int grid_size,
                                          double tol) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  ConstraintReport report;
  report.tolerance = tol;
  const double step = pi / grid_size;
  for (int i = 0; i < grid_size; ++i) {
    const double a = i * step;
    for (int j = 0; j < grid_size; ++j) {
      const double b = j * step;
      const double base = c(a, b);
      const double c1 = std::max(std::abs(c(a + pi, b) - base), std::abs(c(a, b + pi) - base));
      report.c1_max_violation = std::max(report.c1_max_violation, c1);
      report.c2_max_violation = std::max(report.c2_max_violation, std::abs(c(b, a) - base));
    }
  }
  report.pass = report.c1_max_violation <= tol && report.c2_max_violation <= tol;
  return report;
}

/// Counter-based random stream built on the SplitMix64 output function.
///
/// Draw i of a stream with key k is mix(k + (i + 1) * gamma), so a stream is
/// fully described by (key, position) and can be split into independent
/// children without touching the parent.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), key_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64() {
    ++position_;
    return mix(key_ + position_ * kGamma);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  RandomStream split(std::uint64_t index) const {
    RandomStream child(seed_);
    child.key_ = mix(key_ ^ mix(index + 0x632be59bd9b4e019ULL));
    return child;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t position_ = 0;
};

namespace detail {

inline unsigned worker_count(std::size_t tasks) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(tasks, 1)));
}

// Runs body(i) for i in [0, count) over contiguous blocks on worker threads.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const unsigned workers = worker_count(count);
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
}

}  // namespace detail

inline constexpr std::uint64_t kRunsPerChunk = 1u << 16;

/// Sums per-run +/-1 products over n_runs runs split into fixed-size chunks.
/// Chunk c draws from RandomStream(seed).split(c), so the total depends only
/// on (seed, n_runs), never on the number of worker threads.
template <typename ChunkFn>
std::int64_t chunked_product_sum(std::uint64_t n_runs, std::uint64_t seed, ChunkFn&& chunk_fn) {
  const std::uint64_t chunks = (n_runs + kRunsPerChunk - 1) / kRunsPerChunk;
  std::vector<std::int64_t> partial(chunks, 0);
  const RandomStream master(seed);
  detail::parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kRunsPerChunk;
    const std::uint64_t runs = std::min(kRunsPerChunk, n_runs - begin);
    RandomStream stream = master.split(c);
    partial[c] = chunk_fn(runs, stream);
  });
  std::int64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

struct MeasuredCorrelation {
  double alpha = 0.0;
  double beta = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t n_runs = 0;
  std::uint64_t seed = 0;
};

inline MeasuredCorrelation make_measurement(double alpha, double beta, std::int64_t product_sum,
                                            std::uint64_t n_runs, std::uint64_t seed) {
  MeasuredCorrelation m;
  m.alpha = alpha;
  m.beta = beta;
  m.n_runs = n_runs;
  m.seed = seed;
  m.estimate = static_cast<double>(product_sum) / static_cast<double>(n_runs);
  m.standard_error = std::sqrt(std::max(0.0, 1.0 - m.estimate * m.estimate) / n_runs);
  return m;
}

}  // namespace bellfourier
