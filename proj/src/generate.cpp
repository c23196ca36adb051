#include "arlab/generate.hpp"

#include <string>
#include <utility>

#include "arlab/bigint.hpp"

namespace arlab {

ARWordPrefix generate_prefix(const DirectiveSequence& ds, std::size_t length,
                             std::size_t budget) {
  ds.require_valid_ar();
  if (length > budget) {
    throw BudgetError("requested prefix of " + std::to_string(length) +
                      " symbols exceeds budget of " + std::to_string(budget));
  }
  const int d = ds.alphabet_size();

  // lengths[a] = |psi_k(a)|; advancing k by one maps lengths[b] to
  // lengths[i_k] + lengths[b] for b != i_k and leaves lengths[i_k] unchanged.
  std::vector<Int> lengths(d, Int(1));
  std::size_t k = 0;
  while (lengths[ds.letter(k)] < length) {
    Letter i = ds.letter(k);
    for (int b = 0; b < d; ++b) {
      if (b != int(i)) lengths[b] += lengths[i];
    }
    ++k;
  }

  std::vector<Letter> word{ds.letter(k)};
  std::vector<Letter> next;
  for (std::size_t j = k; j-- > 0;) {
    Letter i = ds.letter(j);
    next.clear();
    next.reserve(std::min(2 * word.size(), length));
    for (Letter s : word) {
      if (next.size() >= length) break;
      next.push_back(i);
      if (s != i && next.size() < length) next.push_back(s);
    }
    word.swap(next);
  }
  if (word.size() > length) word.resize(length);

  return ARWordPrefix{ds,
                      std::make_shared<const std::vector<Letter>>(std::move(word)),
                      k, budget};
}

ARWordPrefix grow(const ARWordPrefix& p, std::size_t length) {
  if (p.size() >= length) return p;
  return generate_prefix(p.directive, length, p.budget);
}

}  // namespace arlab
