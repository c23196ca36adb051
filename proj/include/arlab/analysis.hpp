#pragma once

// Factor-level analysis of generated prefixes.
//
// A finite buffer only approximates the language of the infinite word, so
// every language-level answer here follows the doubling policy: compute the
// answer on the first half of the buffer and on the whole buffer, and accept
// it only when the two agree; otherwise regenerate with twice the length, up
// to the prefix budget. Factor identity uses exact symbol comparison.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arlab/bigint.hpp"
#include "arlab/directive.hpp"
#include "arlab/generate.hpp"
#include "arlab/words.hpp"

namespace arlab {

// All distinct length-n factors of (a slice of) a buffer, each with its
// sorted occurrence list and extension sets. Entries are numbered in order
// of first occurrence. Holds a reference to the underlying buffer.
class FactorSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  FactorSet(const ARWordPrefix& p, std::size_t n);
  // Scans only the first `limit` symbols of the buffer.
  FactorSet(const ARWordPrefix& p, std::size_t n, std::size_t limit);

  std::size_t factor_length() const { return n_; }
  std::size_t scanned_length() const { return limit_; }
  int alphabet_size() const { return d_; }
  std::size_t count() const { return entries_.size(); }

  std::size_t find(std::span<const Letter> factor) const;
  std::span<const std::uint32_t> occurrences(std::size_t idx) const;
  std::span<const Letter> factor_view(std::size_t idx) const;
  FiniteWord factor(std::size_t idx) const;

  // Extension alphabets as bitmasks (bit a = letter a), degrees, specials.
  std::uint64_t left_mask(std::size_t idx) const;
  std::uint64_t right_mask(std::size_t idx) const;
  int left_degree(std::size_t idx) const;
  int right_degree(std::size_t idx) const;
  bool left_special(std::size_t idx) const { return left_degree(idx) >= 2; }
  bool right_special(std::size_t idx) const { return right_degree(idx) >= 2; }
  bool bispecial(std::size_t idx) const {
    return left_special(idx) && right_special(idx);
  }

  // True when factor idx starts somewhere in [lo, hi].
  bool occurs_within(std::size_t idx, std::uint32_t lo, std::uint32_t hi) const;

 private:
  std::shared_ptr<const std::vector<Letter>> buffer_;
  int d_;
  std::size_t n_;
  std::size_t limit_;
  struct Entry {
    std::vector<std::uint32_t> occ;
    std::uint64_t lmask = 0;
    std::uint64_t rmask = 0;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string_view, std::uint32_t> index_;
};

// Raw scans of the buffer as given (no growth).
FactorSet factor_set(const ARWordPrefix& p, std::size_t n);
std::size_t factor_complexity(const ARWordPrefix& p, std::size_t n);

struct SpecialFactors {
  std::vector<FiniteWord> left;   // sorted lexicographically
  std::vector<FiniteWord> right;  // sorted lexicographically
  friend bool operator==(const SpecialFactors&, const SpecialFactors&) = default;
};

// Stabilized left/right special factors of length n.
// Throws InstabilityError when the doubling policy fails at the budget.
SpecialFactors special_factors(const ARWordPrefix& p, std::size_t n);

// Bispecial prefix B(k) of the standard word of a directive, built by k
// applications of B' -> phi_i(B') i, innermost level first. Lengths are kept
// exact; symbols are materialized only within the budget.
struct BispecialRecord {
  std::size_t k = 0;
  int d = 0;
  Int length;
  std::vector<Int> return_word_lengths;  // |psi_k(a)|, indexed by letter
  std::optional<FiniteWord> factor;
  std::optional<std::vector<FiniteWord>> return_words;  // psi_k(a) by letter
};
BispecialRecord bispecial(const DirectiveSequence& ds, std::size_t k,
                          std::size_t budget = kDefaultBudget);

// Words separating consecutive occurrences of w in the buffer as given.
// Throws std::invalid_argument when w occurs fewer than two times.
std::set<FiniteWord> return_words_bruteforce(const ARWordPrefix& p,
                                             const FiniteWord& w);

// Derived word of u with respect to a prefix w: the coding of the return-word
// decomposition of u, return words numbered by first appearance.
struct DerivedWord {
  FiniteWord base;
  FiniteWord coding;
  std::vector<FiniteWord> return_words;  // indexed by coding letter
};
DerivedWord derived_word(const ARWordPrefix& p, const FiniteWord& w,
                         std::size_t coding_length);

// Rauzy graph of order n: one vertex per length-n factor, one edge per
// length-(n+1) factor, from its length-n prefix to its length-n suffix.
// Vertices and edges are sorted lexicographically by factor content.
struct RauzyGraph {
  std::size_t n = 0;
  int d = 0;
  std::shared_ptr<const std::vector<Letter>> buffer;
  struct Vertex {
    std::uint32_t first_occurrence;
    bool left_special = false;
    bool right_special = false;
  };
  struct Edge {
    std::uint32_t from;
    std::uint32_t to;
    std::uint32_t first_occurrence;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::span<const Letter> vertex_view(std::size_t idx) const;
  std::string vertex_label(std::size_t idx) const;
  int out_degree(std::size_t idx) const;
  int in_degree(std::size_t idx) const;

  // Deterministic DOT form; factors longer than 32 symbols are labeled
  // len=N@off by their first occurrence.
  std::string to_dot() const;
};
RauzyGraph rauzy_graph(const ARWordPrefix& p, std::size_t n);

// Cycle shape of an AR Rauzy graph: d cycles through the right-special
// vertex beta, all sharing the simple path from the left-special vertex
// alpha to beta. Throws std::runtime_error when the graph has another shape.
struct ArCycleDecomposition {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::size_t common_path_vertices = 0;
  std::vector<std::size_t> cycle_sizes;  // vertices per cycle, sorted
};
ArCycleDecomposition ar_cycles(const RauzyGraph& g);

// Checks the successor/predecessor property of Rauzy graphs at orders where
// nrC(n) = C(n): apart from the designated window endpoints, all but at most
// one successor of a vertex are left special (and the mirrored statement).
struct RauzySpecialReport {
  bool applicable = false;  // nrC(n) == C(n) held on the stabilized buffer
  bool holds = false;
  std::string detail;
  friend bool operator==(const RauzySpecialReport&,
                         const RauzySpecialReport&) = default;
};
RauzySpecialReport check_rauzy_special_property(const ARWordPrefix& p,
                                                std::size_t n);

namespace detail {

// Doubling driver shared by the stabilized operations. `compute` is called
// as compute(prefix, limit) and must depend only on the first `limit`
// symbols. Returns the last value plus whether two scales agreed.
template <typename Compute>
auto stabilize(ARWordPrefix p, std::size_t min_len, Compute compute)
    -> std::pair<decltype(compute(p, std::size_t{0})), bool> {
  if (min_len > p.budget) {
    throw BudgetError("stabilized scan needs " + std::to_string(min_len) +
                      " symbols but the budget is " + std::to_string(p.budget));
  }
  std::size_t want = std::max<std::size_t>(2 * min_len + 2, 64);
  p = grow(p, std::min(std::max(p.size(), want), p.budget));
  for (;;) {
    auto full = compute(p, p.size());
    if (p.size() / 2 >= min_len) {
      auto half = compute(p, p.size() / 2);
      if (half == full) return {std::move(full), true};
    }
    if (p.size() >= p.budget) return {std::move(full), false};
    p = grow(p, std::min(2 * p.size(), p.budget));
  }
}

}  // namespace detail

}  // namespace arlab
