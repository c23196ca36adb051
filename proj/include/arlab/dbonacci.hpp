#pragma once

// Exact closed-form fast path for the d-bonacci word t = fixed point of
// tau: 0 -> 01, 1 -> 02, ..., d-2 -> 0(d-1), d-1 -> 0, equivalently the
// word with directive sequence (0 1 ... d-1)^omega.
//
// The d-bonacci numbers D_k satisfy D_k = sum_{j=1}^{d} D_{k-j} with seeds
// D_k = 2^k for 0 <= k < d. With the padding D_{-1} = 1, D_{-j} = 0 for
// 2 <= j <= d the recurrence holds for every k >= 0, and the vector
// (D_n, ..., D_{n-d+1})^T equals M^{n+1} (1, 0, ..., 0)^T for the incidence
// matrix M of tau. Everything here is integer arithmetic; the one division
// in the bispecial-length formula is asserted exact.

#include <cstddef>
#include <vector>

#include "arlab/bigint.hpp"

namespace arlab {

class DBonacciNumbers {
 public:
  // Materializes D_{-d}, ..., D_{k_max}. Throws ValidityError for d < 2.
  explicit DBonacciNumbers(int d, std::size_t k_max = 0);

  int order() const { return d_; }

  // D_k for any k >= -d; extends the table on demand.
  const Int& at(long long k);

  // Largest index materialized so far (at least -1).
  long long k_max() const {
    return static_cast<long long>(values_.size()) - 1 - d_;
  }

 private:
  int d_;
  std::vector<Int> values_;  // values_[j] holds D_{j - d}
};

DBonacciNumbers dbonacci_numbers(int d, std::size_t k_max);

// Length of the k-th bispecial factor of the d-bonacci word:
// |B_t(k)| = ( sum_{i=0}^{d-1} (d-i) D_{k-i-1} - d ) / (d-1),
// with the divisibility by d-1 asserted. The cache overload extends and
// reuses the caller's table.
Int bispecial_length_dbonacci(int d, std::size_t k);
Int bispecial_length_dbonacci(DBonacciNumbers& numbers, std::size_t k);

// |tau^k(0)| = D_k.
Int tau_power_length(int d, std::size_t k);

// The unique k >= 1 with |B_t(k-1)| < n <= |B_t(k)|. Requires n >= 1.
std::size_t dbonacci_bracket(int d, const Int& n);

// Non-repetitive complexity of the d-bonacci word:
// nrC_t(n) = D_{k+1} - 1 - |B_t(k)| + n on the bracket above.
Int nrc_dbonacci(int d, const Int& n);

// Initial non-repetitive complexity: inrC_t(n) = D_k on the same bracket.
Int inrc_dbonacci(int d, const Int& n);

// Range-rule corollaries. With F_k := D_k at d = 2 (1, 2, 3, 5, ...) and
// T_k := D_k at d = 3 (1, 2, 4, 7, ...), inrC is F_k on (F_k - 2, F_{k+1} - 2]
// and T_k on ((T_k + T_{k-2} - 3)/2, (T_{k+1} + T_{k-1} - 3)/2]. Both rules
// restate the bracket, so these delegate; tests reproduce the ranges
// independently.
Int inrc_fibonacci(const Int& n);
Int inrc_tribonacci(const Int& n);

}  // namespace arlab
