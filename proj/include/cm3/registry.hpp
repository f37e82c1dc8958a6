#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cm3/rng.hpp"
#include "cm3/sampler.hpp"

namespace cm3 {

enum class WitnessFamily { Generic, GenericTraceless, CM, Commuting, Rank2 };

const char* to_string(WitnessFamily f);

// One sampled input for an identity trial.  CM witnesses carry the full
// quadruple; the other families only the pair.
struct Witness {
  WitnessFamily family = WitnessFamily::Generic;
  int n = 3;
  std::optional<CMQuadruple> quad;
  RationalMatrix x, y;
};

Witness make_witness(WitnessFamily family, int n, Rng& rng);

// An identity is data: the witness family it quantifies over, the dimension
// range, and an exact residual evaluator (all residuals must vanish).
struct IdentityDef {
  std::string id;
  std::string description;
  WitnessFamily family = WitnessFamily::Generic;
  int n_min = 3;
  int n_max = 3;
  std::function<std::vector<Rational>(const Witness&, Rng&)> residuals;
};

struct IdentityReport {
  std::string id;
  int trials = 0;
  int failures = 0;
  std::string first_failure;  // serialized witness JSON, empty when clean
  double elapsed_ms = 0.0;
};

const std::vector<IdentityDef>& identity_registry();
std::vector<std::string> registry_ids();
const IdentityDef& find_identity(const std::string& id);

// Runs `trials` independent exact evaluations per id; per-trial RNG streams
// derive from (seed, trial index), so reports are reproducible bit for bit.
std::vector<IdentityReport> run_identity_suite(
    const std::vector<std::string>& ids, int trials, std::uint64_t seed);

}  // namespace cm3
