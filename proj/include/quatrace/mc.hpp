#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "quatrace/contraction.hpp"
#include "quatrace/ensembles.hpp"

namespace quatrace {

// Sample mean of a contraction with componentwise standard errors. Draw i
// always uses stream i of the seed, so the estimate is reproducible and does
// not depend on how draws are divided among workers.
struct MCEstimate {
  Value<double> mean;
  Value<double> se;
  long samples = 0;
  std::uint64_t seed = 0;
};

// colors[k] binds slot k (0-based) to a manifest entry; color 0 is identity.
// Slots of one color share a single draw per sample.
MCEstimate mc_expectation(const ContractionSpec& spec,
                          const std::vector<int>& colors,
                          const std::map<int, EnsembleSpec>& ensembles, int N,
                          long samples, std::uint64_t seed);

// Largest componentwise |mean - exact| / se, with the error floored at
// rounding scale so exact components (se = 0) compare cleanly.
double max_z(const MCEstimate& est, const Value<double>& exact);

// Flattened real components of a value (1, 4, or 4 N^2 numbers).
std::vector<double> value_components(const Value<double>& v);

}  // namespace quatrace
