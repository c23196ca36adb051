#include "arlab/morphism.hpp"

#include <stdexcept>
#include <string>

#include "arlab/errors.hpp"

namespace arlab {

IncidenceMatrix::IncidenceMatrix(int d) : d_(d) {
  check_alphabet_size(d);
  cells_.assign(static_cast<std::size_t>(d) * d, Int(0));
}

IncidenceMatrix IncidenceMatrix::identity(int d) {
  IncidenceMatrix m(d);
  for (int i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

IncidenceMatrix IncidenceMatrix::operator*(const IncidenceMatrix& rhs) const {
  if (rhs.d_ != d_) throw std::domain_error("matrix dimension mismatch");
  IncidenceMatrix out(d_);
  for (int i = 0; i < d_; ++i) {
    for (int k = 0; k < d_; ++k) {
      const Int& left = (*this)(i, k);
      if (left == 0) continue;
      for (int j = 0; j < d_; ++j) out(i, j) += left * rhs(k, j);
    }
  }
  return out;
}

std::vector<Int> IncidenceMatrix::operator*(std::span<const Int> v) const {
  if (static_cast<int>(v.size()) != d_) {
    throw std::domain_error("vector dimension mismatch");
  }
  std::vector<Int> out(d_, Int(0));
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

ParikhVector IncidenceMatrix::apply(const ParikhVector& v) const {
  return ParikhVector{(*this) * std::span<const Int>(v.counts)};
}

Int IncidenceMatrix::column_sum(int col) const {
  Int sum = 0;
  for (int i = 0; i < d_; ++i) sum += (*this)(i, col);
  return sum;
}

Morphism::Morphism(std::vector<FiniteWord> images)
    : d_(static_cast<int>(images.size())), images_(std::move(images)) {
  check_alphabet_size(d_);
  for (const FiniteWord& im : images_) {
    if (im.alphabet_size() != d_) {
      throw std::domain_error("morphism image over mismatched alphabet");
    }
    if (im.empty()) throw std::domain_error("morphism image must be nonempty");
  }
}

Morphism Morphism::identity(int d) {
  check_alphabet_size(d);
  std::vector<FiniteWord> images;
  images.reserve(d);
  for (int a = 0; a < d; ++a) {
    images.push_back(FiniteWord(d, {a}));
  }
  return Morphism(std::move(images));
}

FiniteWord Morphism::apply(const FiniteWord& w) const {
  if (w.alphabet_size() != d_) {
    throw std::domain_error("word over mismatched alphabet");
  }
  FiniteWord out(d_);
  for (Letter a : w) out.append(images_[a]);
  return out;
}

IncidenceMatrix Morphism::incidence() const {
  IncidenceMatrix m(d_);
  for (int b = 0; b < d_; ++b) {
    for (Letter a : images_[b]) ++m(a, b);
  }
  return m;
}

Morphism elementary_morphism(Letter i, int d) {
  check_alphabet_size(d);
  if (static_cast<int>(i) >= d) {
    throw std::domain_error("elementary morphism letter " +
                            std::to_string(int(i)) +
                            " outside alphabet of size " + std::to_string(d));
  }
  std::vector<FiniteWord> images;
  images.reserve(d);
  for (int j = 0; j < d; ++j) {
    if (j == int(i)) {
      images.push_back(FiniteWord(d, {j}));
    } else {
      images.push_back(FiniteWord(d, {int(i), j}));
    }
  }
  return Morphism(std::move(images));
}

Morphism dbonacci_morphism(int d) {
  check_alphabet_size(d);
  if (d < 2) {
    throw ValidityError("d-bonacci morphism needs d >= 2, got " +
                        std::to_string(d));
  }
  std::vector<FiniteWord> images;
  images.reserve(d);
  for (int a = 0; a < d; ++a) {
    if (a + 1 < d) {
      images.push_back(FiniteWord(d, {0, a + 1}));
    } else {
      images.push_back(FiniteWord(d, {0}));
    }
  }
  return Morphism(std::move(images));
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (outer.alphabet_size() != inner.alphabet_size()) {
    throw std::domain_error("composing morphisms over different alphabets");
  }
  std::vector<FiniteWord> images;
  images.reserve(inner.alphabet_size());
  for (int a = 0; a < inner.alphabet_size(); ++a) {
    images.push_back(outer.apply(inner.image(static_cast<Letter>(a))));
  }
  return Morphism(std::move(images));
}

}  // namespace arlab
