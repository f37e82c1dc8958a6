#pragma once

#include <string>
#include <vector>

#include "cm3/cremona.hpp"
#include "cm3/invariants.hpp"

namespace cm3 {

inline constexpr int kNormalizeWordLimit = 16;
inline constexpr int kClassifyWordLimit = 20;

enum class OrbitLabel { Zero, Special, Generic };

inline const char* to_string(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::Zero: return "ZERO";
    case OrbitLabel::Special: return "SPECIAL";
    case OrbitLabel::Generic: return "GENERIC";
  }
  return "?";
}

struct NormalizationResult {
  GroupWord<Complex> word;
  Tuple7<Complex> terminal;
  double residual = 0.0;              // Linf distance to the target form
  std::vector<std::string> branches;  // case path taken
};

struct ClassificationResult {
  OrbitLabel label = OrbitLabel::Zero;
  NormalizationResult norm;
};

// Orbit representatives on the commuting variety's tuple coordinates.
Tuple7<Complex> orbit_representative(OrbitLabel label);

// Drive a tuple satisfying the rank-one relation system (v = -3) to the zero
// tuple by an explicit word.
NormalizationResult normalize_d3(const Tuple7<Complex>& t,
                                 const TolerancePolicy& tol = {});

// Decide which of the three orbits a commuting-variety tuple (v = 0) lies
// in, with the word to its representative.
ClassificationResult classify_d30(const Tuple7<Complex>& t,
                                  const TolerancePolicy& tol = {});

}  // namespace cm3
