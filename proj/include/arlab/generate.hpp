#pragma once

// Prefix generation for standard Arnoux-Rauzy words.
//
// With psi_k = phi_{i_0} ... phi_{i_{k-1}}, the words w_k = psi_k(i_k) are
// prefixes of one another and converge to the standard word of the directive.
// The generator picks the smallest k with |w_k| >= L using exact incidence
// lengths, then materializes backward, truncating every intermediate word to
// L symbols; this is sound because images are nonempty, so the first L
// letters of an image depend only on the first L letters of the argument.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "arlab/directive.hpp"
#include "arlab/errors.hpp"
#include "arlab/words.hpp"

namespace arlab {

inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 28;

// An immutable prefix of a standard AR word. Copies share the buffer; growth
// returns a new value, so concurrent readers are safe.
struct ARWordPrefix {
  DirectiveSequence directive;
  std::shared_ptr<const std::vector<Letter>> buffer;
  std::size_t depth = 0;  // index k of the generating word w_k
  std::size_t budget = kDefaultBudget;

  std::size_t size() const { return buffer->size(); }
  Letter operator[](std::size_t i) const { return (*buffer)[i]; }
  std::span<const Letter> view() const { return *buffer; }
  FiniteWord word() const {
    return FiniteWord(directive.alphabet_size(), view());
  }
};

// Length-L prefix of the standard AR word of `ds` (exactly L symbols).
// Throws ValidityError for non-VALID-AR directives, BudgetError if L > budget.
ARWordPrefix generate_prefix(const DirectiveSequence& ds, std::size_t length,
                             std::size_t budget = kDefaultBudget);

// The same word extended to at least `length` symbols (no-op when already
// long enough). Subject to the prefix's own budget.
ARWordPrefix grow(const ARWordPrefix& p, std::size_t length);

}  // namespace arlab
