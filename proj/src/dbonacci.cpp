#include "arlab/dbonacci.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "arlab/errors.hpp"
#include "arlab/words.hpp"

namespace arlab {

namespace {

void check_order(int d) {
  check_alphabet_size(d);
  if (d < 2) {
    throw ValidityError("d-bonacci order must be at least 2, got " +
                        std::to_string(d));
  }
}

void check_n(const Int& n) {
  if (n < 1) {
    throw std::domain_error("complexity index must satisfy n >= 1, got " +
                            n.str());
  }
}

// Shared bracket loop: smallest k with n <= |B_t(k)|, plus that length.
std::size_t bracket_with(DBonacciNumbers& numbers, const Int& n,
                         Int& bispecial_len) {
  check_n(n);
  std::size_t k = 0;
  bispecial_len = bispecial_length_dbonacci(numbers, 0);
  while (bispecial_len < n) {
    ++k;
    bispecial_len = bispecial_length_dbonacci(numbers, k);
  }
  return k;
}

}  // namespace

DBonacciNumbers::DBonacciNumbers(int d, std::size_t k_max) : d_(d) {
  check_order(d);
  values_.assign(static_cast<std::size_t>(d), Int(0));
  values_.back() = 1;  // D_{-1}
  at(static_cast<long long>(k_max));
}

const Int& DBonacciNumbers::at(long long k) {
  if (k < -static_cast<long long>(d_)) {
    throw std::domain_error("d-bonacci index below -d: " + std::to_string(k));
  }
  while (k_max() < k) {
    Int next = 0;
    for (std::size_t j = values_.size() - static_cast<std::size_t>(d_);
         j < values_.size(); ++j) {
      next += values_[j];
    }
    values_.push_back(std::move(next));
  }
  return values_[static_cast<std::size_t>(k + d_)];
}

DBonacciNumbers dbonacci_numbers(int d, std::size_t k_max) {
  return DBonacciNumbers(d, k_max);
}

Int bispecial_length_dbonacci(DBonacciNumbers& numbers, std::size_t k) {
  const int d = numbers.order();
  Int numerator = -d;
  for (int i = 0; i < d; ++i) {
    numerator += Int(d - i) * numbers.at(static_cast<long long>(k) - i - 1);
  }
  if (numerator % (d - 1) != 0) {
    throw std::logic_error(
        "bispecial length numerator not divisible by d - 1");
  }
  return numerator / (d - 1);
}

Int bispecial_length_dbonacci(int d, std::size_t k) {
  DBonacciNumbers numbers(d);
  return bispecial_length_dbonacci(numbers, k);
}

Int tau_power_length(int d, std::size_t k) {
  DBonacciNumbers numbers(d, k);
  return numbers.at(static_cast<long long>(k));
}

std::size_t dbonacci_bracket(int d, const Int& n) {
  DBonacciNumbers numbers(d);
  Int ignored;
  return bracket_with(numbers, n, ignored);
}

Int nrc_dbonacci(int d, const Int& n) {
  DBonacciNumbers numbers(d);
  Int bispecial_len;
  const std::size_t k = bracket_with(numbers, n, bispecial_len);
  return numbers.at(static_cast<long long>(k) + 1) - 1 - bispecial_len + n;
}

Int inrc_dbonacci(int d, const Int& n) {
  DBonacciNumbers numbers(d);
  Int ignored;
  const std::size_t k = bracket_with(numbers, n, ignored);
  return numbers.at(static_cast<long long>(k));
}

Int inrc_fibonacci(const Int& n) { return inrc_dbonacci(2, n); }

Int inrc_tribonacci(const Int& n) { return inrc_dbonacci(3, n); }

}  // namespace arlab
