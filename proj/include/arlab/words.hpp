#pragma once

// Finite words over an alphabet {0, ..., d-1} and their abelianizations.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arlab/bigint.hpp"

namespace arlab {

using Letter = std::uint8_t;

// Sanity bound on the alphabet size; everything downstream is generic in d.
inline constexpr int kMaxAlphabet = 64;

// Throws std::domain_error unless 1 <= d <= kMaxAlphabet.
void check_alphabet_size(int d);

class FiniteWord {
 public:
  explicit FiniteWord(int d);
  FiniteWord(int d, std::vector<Letter> symbols);
  FiniteWord(int d, std::initializer_list<int> symbols);
  FiniteWord(int d, std::span<const Letter> symbols);

  // Accepts the digit form "0102" and, for letters beyond 9, the bracket
  // form "[0,1,11]". d == 0 infers the alphabet as max letter + 1.
  static FiniteWord parse(std::string_view text, int d = 0);

  int alphabet_size() const { return d_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Letter operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Letter>& symbols() const { return symbols_; }
  std::span<const Letter> view() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  void push_back(Letter a);
  void append(const FiniteWord& other);
  void append(std::span<const Letter> other);

  bool is_prefix_of(const FiniteWord& other) const;
  FiniteWord reversed() const;
  bool is_palindrome() const;

  // Digit string for d <= 10, comma-separated integers otherwise.
  std::string str() const;

  friend bool operator==(const FiniteWord& a, const FiniteWord& b) {
    return a.d_ == b.d_ && a.symbols_ == b.symbols_;
  }
  friend std::strong_ordering operator<=>(const FiniteWord& a,
                                          const FiniteWord& b) {
    return a.symbols_ <=> b.symbols_;
  }

 private:
  int d_;
  std::vector<Letter> symbols_;
};

struct ParikhVector {
  std::vector<Int> counts;

  int alphabet_size() const { return static_cast<int>(counts.size()); }
  Int total() const;
  friend bool operator==(const ParikhVector&, const ParikhVector&) = default;
};

ParikhVector parikh(const FiniteWord& w);

// Shared formatting helper: symbols as digits (d <= 10) or comma-separated.
std::string format_symbols(std::span<const Letter> symbols, int d);

}  // namespace arlab
