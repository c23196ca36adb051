#pragma once

// Eventually periodic directive sequences (i_n), stored as preperiod:period.
//
// A directive is VALID-AR when d >= 2 and every letter of the alphabet occurs
// in the period; exactly those sequences drive the prefix generator and the
// complexity formulas.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "arlab/words.hpp"

namespace arlab {

class DirectiveSequence {
 public:
  DirectiveSequence(int d, FiniteWord preperiod, FiniteWord period);

  // Text form "pre:period", each side in FiniteWord::parse syntax, e.g.
  // ":01", "0:012", "[]:[0,1,11]". d == 0 infers the alphabet.
  static DirectiveSequence parse(std::string_view text, int d = 0);

  int alphabet_size() const { return d_; }
  const FiniteWord& preperiod() const { return preperiod_; }
  const FiniteWord& period() const { return period_; }

  Letter letter(std::size_t n) const;

  bool valid_ar() const;
  void require_valid_ar() const;  // throws ValidityError

  // The directive with its first k letters dropped.
  DirectiveSequence shifted(std::size_t k) const;

  std::string str() const;

  friend bool operator==(const DirectiveSequence&, const DirectiveSequence&) = default;

 private:
  int d_;
  FiniteWord preperiod_;
  FiniteWord period_;
};

// Directive (0 1 ... d-1)^omega of the d-bonacci word.
DirectiveSequence dbonacci_directive(int d);

// Uniformly recurrent test input: period = shuffled copy of the full alphabet
// plus a few extra random letters, preperiod of length <= 3. Deterministic in
// the generator state; uses plain modulo so results are portable.
DirectiveSequence random_valid_directive(int d, std::mt19937_64& rng);

}  // namespace arlab
