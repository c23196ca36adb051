#include "arlab/directive.hpp"

#include <algorithm>
#include <utility>

#include "arlab/errors.hpp"

namespace arlab {

DirectiveSequence::DirectiveSequence(int d, FiniteWord preperiod,
                                     FiniteWord period)
    : d_(d), preperiod_(std::move(preperiod)), period_(std::move(period)) {
  check_alphabet_size(d);
  if (preperiod_.alphabet_size() != d || period_.alphabet_size() != d) {
    throw std::domain_error("directive parts over mismatched alphabet");
  }
  if (period_.empty()) {
    throw ValidityError("directive period must be nonempty");
  }
}

DirectiveSequence DirectiveSequence::parse(std::string_view text, int d) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("directive must contain ':': " +
                                std::string(text));
  }
  std::string_view pre_text = text.substr(0, colon);
  std::string_view per_text = text.substr(colon + 1);
  if (pre_text == "[]") pre_text = {};
  FiniteWord pre = FiniteWord::parse(pre_text, d == 0 ? kMaxAlphabet : d);
  FiniteWord per = FiniteWord::parse(per_text, d == 0 ? kMaxAlphabet : d);
  if (d == 0) {
    int max_letter = 0;
    for (Letter a : pre) max_letter = std::max(max_letter, int(a));
    for (Letter a : per) max_letter = std::max(max_letter, int(a));
    d = max_letter + 1;
  }
  return DirectiveSequence(d, FiniteWord(d, pre.view()),
                           FiniteWord(d, per.view()));
}

Letter DirectiveSequence::letter(std::size_t n) const {
  if (n < preperiod_.size()) return preperiod_[n];
  return period_[(n - preperiod_.size()) % period_.size()];
}

bool DirectiveSequence::valid_ar() const {
  if (d_ < 2) return false;
  std::vector<bool> seen(d_, false);
  for (Letter a : period_) seen[a] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

void DirectiveSequence::require_valid_ar() const {
  if (!valid_ar()) {
    throw ValidityError("directive " + str() +
                        " is not VALID-AR (need d >= 2 and every letter in "
                        "the period)");
  }
}

DirectiveSequence DirectiveSequence::shifted(std::size_t k) const {
  if (k <= preperiod_.size()) {
    FiniteWord pre(d_, std::span<const Letter>(preperiod_.symbols()).subspan(k));
    return DirectiveSequence(d_, std::move(pre), period_);
  }
  std::size_t rot = (k - preperiod_.size()) % period_.size();
  FiniteWord per(d_);
  for (std::size_t j = 0; j < period_.size(); ++j) {
    per.push_back(period_[(rot + j) % period_.size()]);
  }
  return DirectiveSequence(d_, FiniteWord(d_), std::move(per));
}

std::string DirectiveSequence::str() const {
  if (d_ <= 10) return preperiod_.str() + ":" + period_.str();
  return "[" + preperiod_.str() + "]:[" + period_.str() + "]";
}

DirectiveSequence dbonacci_directive(int d) {
  check_alphabet_size(d);
  if (d < 2) {
    throw ValidityError("d-bonacci directive needs d >= 2, got " +
                        std::to_string(d));
  }
  FiniteWord per(d);
  for (int a = 0; a < d; ++a) per.push_back(static_cast<Letter>(a));
  return DirectiveSequence(d, FiniteWord(d), std::move(per));
}

DirectiveSequence random_valid_directive(int d, std::mt19937_64& rng) {
  check_alphabet_size(d);
  if (d < 2) throw ValidityError("random directive needs d >= 2");
  std::vector<Letter> per;
  for (int a = 0; a < d; ++a) per.push_back(static_cast<Letter>(a));
  std::size_t extra = rng() % 5;
  for (std::size_t e = 0; e < extra; ++e) {
    per.push_back(static_cast<Letter>(rng() % d));
  }
  for (std::size_t i = per.size() - 1; i > 0; --i) {
    std::swap(per[i], per[rng() % (i + 1)]);
  }
  FiniteWord pre(d);
  std::size_t pre_len = rng() % 4;
  for (std::size_t i = 0; i < pre_len; ++i) {
    pre.push_back(static_cast<Letter>(rng() % d));
  }
  return DirectiveSequence(d, std::move(pre), FiniteWord(d, per));
}

}  // namespace arlab
