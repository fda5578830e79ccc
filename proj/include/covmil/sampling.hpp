#ifndef COVMIL_SAMPLING_HPP
#define COVMIL_SAMPLING_HPP

#include <random>

#include "covmil/brunnian.hpp"
#include "covmil/tangle.hpp"

namespace covmil {

/// Seeded generators behind the sweep commands and the property suites.

MilnorLinkSpec random_milnor_spec(std::mt19937& rng, int nplus1);

/// Band sum of 1..max_summands random Milnor links on the same components.
TangleWord random_band_sum(std::mt19937& rng, int nplus1, int max_summands);

/// Random valid word: crossings with occasional turnback pairs; labels are
/// assigned in discovery order.
TangleWord random_word(std::mt19937& rng, int max_width = 4, int max_crossings = 10);

/// Random word with at least `min_components` closure components.
TangleWord random_word_with_components(std::mt19937& rng, int min_components);

}  // namespace covmil

#endif
