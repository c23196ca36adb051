#pragma once

// Non-repetitive complexity: window oracles over generated prefixes and the
// closed formulas driven by bispecial lengths.
//
// nrC(n) is the largest m such that some m consecutive positions carry
// pairwise distinct length-n factors; inrC(n) is the same quantity anchored
// at position 0. The oracle route scans buffers; the formula route works
// purely on exact incidence lengths: with the unique k such that
// |B(k-1)| < n <= |B(k)|,
//
//   nrC(n)  = |psi_k phi_{i_k}(a)| - 1 - |B(k)| + n,
//   inrC(n) = |psi_k(i_k)|  (standard words),
//
// where psi_k = phi_{i_0} ... phi_{i_{k-1}} and a != i_k minimizes the last
// occurrence S_a(k). All n are 1-based; n = 0 is rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arlab/analysis.hpp"
#include "arlab/bigint.hpp"
#include "arlab/directive.hpp"
#include "arlab/generate.hpp"
#include "arlab/words.hpp"

namespace arlab {

// Witness for an oracle value: the window [start, start+length) of positions
// whose factors are pairwise distinct. When endpoints_checked is set, the
// factors just outside the window are the designated right/left special
// factors of the window lemma and both occur inside the window.
struct WindowCertificate {
  std::uint64_t start = 0;
  std::uint64_t length = 0;
  bool endpoints_checked = false;
  std::optional<FiniteWord> right_special_endpoint;  // f_n(start-1)
  std::optional<FiniteWord> left_special_endpoint;   // f_n(start+length)
  friend bool operator==(const WindowCertificate&,
                         const WindowCertificate&) = default;
};

struct NrcOracleResult {
  std::uint64_t value = 0;
  WindowCertificate certificate;
  bool stable = false;
};

// Window sweep over the prefix as given (no growth). The stability flag
// reports agreement between the half- and full-buffer sweeps plus coverage of
// the certificate window (including one recurrence window when hinted).
NrcOracleResult nrc_oracle(const ARWordPrefix& p, std::size_t n,
                           std::optional<std::uint64_t> recurrence_hint = {});

// Position of the first repeated length-n factor; exact once a repeat is in
// the buffer, growing the prefix as needed. Throws InstabilityError when no
// repeat fits the budget.
std::uint64_t inrc_oracle(const ARWordPrefix& p, std::size_t n);

struct RecurrenceResult {
  std::uint64_t value = 0;
  bool stable = false;
};

// R(n) = n - 1 + (largest gap between consecutive occurrences of any length-n
// factor), growing the prefix until every factor has occurred twice. Throws
// InstabilityError when some factor still occurs once at the budget.
RecurrenceResult recurrence_oracle(const ARWordPrefix& p, std::size_t n);

// S_a(k): the largest l < k with i_l = a, or nullopt for "never" (-infinity);
// nullopt compares below every index and equal to itself.
std::optional<std::size_t> s_last_occurrence(const DirectiveSequence& ds,
                                             std::size_t k, Letter a);

// Memoized exact lengths |B(k)| and |psi_k(a)| of one directive.
class BispecialLengths {
 public:
  explicit BispecialLengths(DirectiveSequence ds);

  const DirectiveSequence& directive() const { return ds_; }
  const Int& bispecial_length(std::size_t k);
  const Int& psi_image_length(std::size_t k, Letter a);

  // The unique k with |B(k-1)| < n <= |B(k)|, for n >= 1.
  std::size_t bracket(const Int& n);

 private:
  void extend(std::size_t k);

  DirectiveSequence ds_;
  std::vector<std::vector<Int>> psi_;  // psi_[k][a] = |psi_k(a)|
  std::vector<Int> b_;                 // b_[k] = |B(k)|
};

std::size_t bracket_bispecial(const DirectiveSequence& ds, const Int& n);

struct NrcFormulaResult {
  Int value;
  std::size_t k = 0;
  Letter letter = 0;            // chosen minimizer a
  std::size_t minimizer_count = 0;
  Int bispecial_length;         // |B(k)|
  Int adjacent_pair_length;     // |psi_k phi_{i_k}(a)| = max |r_i r_j|
  Int value_at_bispecial;       // nrC(|B(k)|) = adjacent_pair_length - 1
};

// Formula route; ties between minimizers are asserted to give equal lengths
// (std::logic_error otherwise) and resolved to the smallest letter.
NrcFormulaResult nrc_formula(BispecialLengths& cache, std::uint64_t n);
NrcFormulaResult nrc_formula(const DirectiveSequence& ds, std::uint64_t n);

Int inrc_formula(BispecialLengths& cache, std::uint64_t n);
Int inrc_formula(const DirectiveSequence& ds, std::uint64_t n);

struct TableRow {
  std::uint64_t n = 0;
  std::size_t k = 0;
  Int nrc_formula_value;
  Int inrc_formula_value;
  std::optional<std::uint64_t> c_oracle;
  std::optional<std::uint64_t> nrc_oracle_value;
  std::optional<std::uint64_t> inrc_oracle_value;
  std::optional<std::uint64_t> r_oracle;
  std::optional<WindowCertificate> certificate;
  bool c_stable = false;
  bool nrc_stable = false;
  bool inrc_found = false;
  bool r_stable = false;
  bool stable = false;  // all oracle facts of this row are stable
  std::optional<bool> agree_nrc;   // set when the oracle value exists
  std::optional<bool> agree_inrc;
};

struct TableOptions {
  std::size_t budget = kDefaultBudget;
  unsigned threads = 0;            // 0 = hardware concurrency
  std::size_t initial_length = 0;  // 0 = automatic
};

struct ComplexityTable {
  DirectiveSequence directive;
  std::uint64_t n_max = 0;
  std::vector<TableRow> rows;
  std::size_t buffer_length = 0;  // final oracle buffer length

  std::size_t stable_rows() const;
};

// Formula and oracle columns for n = 1..n_max. Oracle buffers grow by
// doubling until every row is stable or the budget is reached; rows may be
// evaluated concurrently (each row only reads the shared immutable buffer).
ComplexityTable complexity_table(const DirectiveSequence& ds,
                                 std::uint64_t n_max,
                                 const TableOptions& options = {});

// CSV with the exact column set
// n,C,nrC_formula,nrC_oracle,inrC_formula,inrC_oracle,R_oracle,k,agree_nrc,agree_inrc,stable
// missing oracle values as empty fields and booleans as true/false.
std::string csv_header();
std::string to_csv_row(const TableRow& row);
std::string to_csv(const ComplexityTable& table);

}  // namespace arlab
