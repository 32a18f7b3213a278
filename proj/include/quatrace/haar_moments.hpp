#pragma once

#include <map>
#include <vector>

#include "quatrace/contraction.hpp"
#include "quatrace/ensembles.hpp"
#include "quatrace/weingarten.hpp"

namespace quatrace {

// Exact expectation of a fully contracted word in Haar-symplectic matrices
// and deterministic factors, by expanding the word into embedding entries
// and integrating each monomial with the Weingarten formula. Independent of
// the topological expansion, so it serves as its ground truth on Haar words
// (the role the Wick oracle plays for the Gaussian families).
//
// colors[k] gives slot k's color, 0 meaning the identity matrix. Every
// non-deterministic color must be Haar; distinct Haar colors are integrated
// independently. A word with w factors of one Haar color needs the
// Weingarten table over pairings of [w], so w <= 10, and the fixed-N Gram
// system must be invertible there (it is exactly when N >= w/2).
BigRat haar_exact_moment(const ContractionSpec& spec,
                         const std::vector<int>& colors,
                         const std::map<int, EnsembleSpec>& ensembles, int N,
                         WgBase base = WgBase::OrthogonalMinusTwoN,
                         long term_cap = 10'000'000);

}  // namespace quatrace
