#include "covmil/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "covmil/diagram.hpp"
#include "covmil/errors.hpp"

namespace covmil {

MilnorLinkSpec random_milnor_spec(std::mt19937& rng, int nplus1) {
  MilnorLinkSpec s;
  s.index.resize(nplus1);
  std::iota(s.index.begin(), s.index.end(), 1);
  std::shuffle(s.index.begin(), s.index.end(), rng);
  s.sign = (rng() & 1) ? 1 : -1;
  return s;
}

TangleWord random_band_sum(std::mt19937& rng, int nplus1, int max_summands) {
  int k = 1 + static_cast<int>(rng() % max_summands);
  TangleWord w = milnor_link(random_milnor_spec(rng, nplus1));
  for (int i = 1; i < k; ++i) w = band_sum(w, milnor_link(random_milnor_spec(rng, nplus1)));
  return w;
}

TangleWord random_word(std::mt19937& rng, int max_width, int max_crossings) {
  int m = 2 + static_cast<int>(rng() % std::max(1, max_width - 1));
  TangleWord w;
  w.width = m;
  int cur = m;
  int open = 0;
  int ncross = 1 + static_cast<int>(rng() % max_crossings);
  for (int i = 0; i < ncross; ++i) {
    if (open < 1 && rng() % 5 == 0) {
      w.events.push_back(MorseEvent::cup(1 + static_cast<int>(rng() % (cur + 1))));
      cur += 2;
      ++open;
    }
    if (cur >= 2)
      w.events.push_back(
          MorseEvent::cross(1 + static_cast<int>(rng() % (cur - 1)), (rng() & 1) ? 1 : -1));
  }
  while (cur > m) {
    w.events.push_back(MorseEvent::cap(1 + static_cast<int>(rng() % (cur - 1))));
    cur -= 2;
  }
  w.validate_structure();
  ClosureTrace t = trace_closure(w);
  for (int c = 0; c < t.ncycles; ++c) w.labels[c + 1] = c + 1;
  w.name = "random";
  w.validate();
  return w;
}

TangleWord random_word_with_components(std::mt19937& rng, int min_components) {
  for (int tries = 0; tries < 200; ++tries) {
    TangleWord w = random_word(rng);
    if (w.component_count() >= min_components) return w;
  }
  fail(Errc::internal_consistency, "could not sample a word with enough components");
}

}  // namespace covmil
