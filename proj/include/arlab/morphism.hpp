#pragma once

// Non-erasing morphisms on {0, ..., d-1}* and their incidence matrices.
//
// The elementary morphism for letter i maps i -> i and j -> ij for j != i;
// the d-bonacci morphism maps a -> 0(a+1) for a < d-1 and d-1 -> 0.

#include <span>
#include <vector>

#include "arlab/bigint.hpp"
#include "arlab/words.hpp"

namespace arlab {

// d x d matrix of exact integers, row-major. Entry (a, b) counts the letter a
// in the image of b, so incidence(compose(f, g)) = incidence(f) * incidence(g).
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(int d);
  static IncidenceMatrix identity(int d);

  int dimension() const { return d_; }
  Int& operator()(int row, int col) { return cells_[row * d_ + col]; }
  const Int& operator()(int row, int col) const { return cells_[row * d_ + col]; }

  IncidenceMatrix operator*(const IncidenceMatrix& rhs) const;
  std::vector<Int> operator*(std::span<const Int> v) const;
  ParikhVector apply(const ParikhVector& v) const;

  // Sum of column `col`; for an incidence matrix this is the image length.
  Int column_sum(int col) const;

  friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

 private:
  int d_;
  std::vector<Int> cells_;
};

class Morphism {
 public:
  // One image per letter; images must be nonempty words over the same alphabet.
  explicit Morphism(std::vector<FiniteWord> images);
  static Morphism identity(int d);

  int alphabet_size() const { return d_; }
  const FiniteWord& image(Letter a) const { return images_[a]; }

  FiniteWord apply(const FiniteWord& w) const;
  IncidenceMatrix incidence() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  int d_;
  std::vector<FiniteWord> images_;
};

Morphism elementary_morphism(Letter i, int d);
Morphism dbonacci_morphism(int d);

// compose(f, g) applies g first: compose(f, g).apply(w) == f.apply(g.apply(w)).
Morphism compose(const Morphism& outer, const Morphism& inner);

}  // namespace arlab
