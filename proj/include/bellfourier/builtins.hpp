#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellfourier/lhv.hpp"
#include "bellfourier/quantum.hpp"

namespace bellfourier::builtins {

// K = 8 equal intervals of width pi/8 starting at +1. Equal spacing is an
// assumption; nothing pins the breakpoints down further.
inline SimpleFunctionSpec fig2() {
  std::vector<double> bps;
  for (int k = 1; k < 8; ++k) bps.push_back(k * pi / 8.0);
  return SimpleFunctionSpec(std::move(bps), +1);
}

inline SimpleFunctionSpec square() { return SimpleFunctionSpec({pi / 2.0}, +1); }

inline SimpleFunctionSpec constant() { return SimpleFunctionSpec({}, +1); }

inline std::optional<SimpleFunctionSpec> spec(const std::string& name) {
  if (name == "fig2") return fig2();
  if (name == "square") return square();
  if (name == "constant") return constant();
  return std::nullopt;
}

inline std::optional<CorrelationFunction> correlation(const std::string& name) {
  if (name == "quantum") return quantum_correlation();
  if (name == "aspect") return aspect_correlation();
  return std::nullopt;
}

inline std::optional<LhvModel> model(const std::string& name, std::size_t atoms = 1024) {
  if (name == "aspect") return aspect_model(atoms);
  if (name == "square") return LhvModel({{1.0, square()}}, Pairing::correlated, "square wave, correlated");
  if (name == "constant") {
    return LhvModel({{1.0, constant()}}, Pairing::anti_correlated, "constant response, anti-correlated");
  }
  return std::nullopt;
}

}  // namespace bellfourier::builtins
