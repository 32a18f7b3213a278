#pragma once

#include <map>
#include <vector>

#include "quatrace/contraction.hpp"
#include "quatrace/ensembles.hpp"

namespace quatrace {

// Exact expectation of a fully contracted word in Gaussian-built matrices
// (Ginibre, GSE, Wishart) and deterministic ones (identity, fixed), by
// literal enumeration: every matrix index, spin index and real Gaussian
// component is summed and the component moments are applied one variable at
// a time. Exponential in the degree, exact in BigRat; this is the ground
// truth the topological expansion is checked against.
//
// colors[k] binds slot k (0-based) to an ensemble; color 0 means identity.
// Throws SemanticError for Haar colors (not Gaussian), non-scalar
// contractions, or mismatched inputs; CapError when the total term count
// would pass term_cap.
BigRat wick_exact_gaussian(const ContractionSpec& spec,
                           const std::vector<int>& colors,
                           const std::map<int, EnsembleSpec>& ensembles, int N,
                           long term_cap = 10'000'000);

}  // namespace quatrace
