#pragma once

#include <stdexcept>

namespace arlab {

// A directive that cannot define an Arnoux-Rauzy word: alphabet too small,
// empty period, or a letter of the alphabet missing from the period.
struct ValidityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An operation would materialize more symbols than its budget allows.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A language-level answer still changed across a buffer doubling when the
// growth cap was reached, so no exact value can be reported.
struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace arlab
