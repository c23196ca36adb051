#include "arlab/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace arlab {

void check_alphabet_size(int d) {
  if (d < 1 || d > kMaxAlphabet) {
    throw std::domain_error("alphabet size must be in [1, " +
                            std::to_string(kMaxAlphabet) + "], got " +
                            std::to_string(d));
  }
}

namespace {

void check_symbol(Letter a, int d) {
  if (static_cast<int>(a) >= d) {
    throw std::domain_error("letter " + std::to_string(int(a)) +
                            " outside alphabet of size " + std::to_string(d));
  }
}

}  // namespace

FiniteWord::FiniteWord(int d) : d_(d) { check_alphabet_size(d); }

FiniteWord::FiniteWord(int d, std::vector<Letter> symbols)
    : d_(d), symbols_(std::move(symbols)) {
  check_alphabet_size(d);
  for (Letter a : symbols_) check_symbol(a, d_);
}

FiniteWord::FiniteWord(int d, std::initializer_list<int> symbols) : d_(d) {
  check_alphabet_size(d);
  symbols_.reserve(symbols.size());
  for (int a : symbols) {
    if (a < 0 || a >= d) {
      throw std::domain_error("letter " + std::to_string(a) +
                              " outside alphabet of size " + std::to_string(d));
    }
    symbols_.push_back(static_cast<Letter>(a));
  }
}

FiniteWord::FiniteWord(int d, std::span<const Letter> symbols)
    : FiniteWord(d, std::vector<Letter>(symbols.begin(), symbols.end())) {}

FiniteWord FiniteWord::parse(std::string_view text, int d) {
  std::vector<Letter> symbols;
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') {
      throw std::invalid_argument("unterminated bracket form: " +
                                  std::string(text));
    }
    std::string_view body = text.substr(1, text.size() - 2);
    while (!body.empty()) {
      std::size_t comma = body.find(',');
      std::string_view item =
          comma == std::string_view::npos ? body : body.substr(0, comma);
      body = comma == std::string_view::npos ? std::string_view{}
                                             : body.substr(comma + 1);
      int value = 0;
      if (item.empty()) throw std::invalid_argument("empty letter in list");
      for (char c : item) {
        if (c < '0' || c > '9') {
          throw std::invalid_argument(std::string("bad letter character '") +
                                      c + "'");
        }
        value = value * 10 + (c - '0');
        if (value > kMaxAlphabet) break;
      }
      if (value >= kMaxAlphabet) {
        throw std::domain_error("letter " + std::string(item) +
                                " exceeds the alphabet cap");
      }
      symbols.push_back(static_cast<Letter>(value));
    }
  } else {
    symbols.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument(std::string("bad letter character '") + c +
                                    "'");
      }
      symbols.push_back(static_cast<Letter>(c - '0'));
    }
  }
  if (d == 0) {
    int max_letter = -1;
    for (Letter a : symbols) max_letter = std::max(max_letter, int(a));
    d = max_letter + 1;
    if (d == 0) d = 1;
  }
  return FiniteWord(d, std::move(symbols));
}

void FiniteWord::push_back(Letter a) {
  check_symbol(a, d_);
  symbols_.push_back(a);
}

void FiniteWord::append(const FiniteWord& other) {
  if (other.d_ != d_) {
    throw std::domain_error("appending word over a different alphabet");
  }
  symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
}

void FiniteWord::append(std::span<const Letter> other) {
  for (Letter a : other) check_symbol(a, d_);
  symbols_.insert(symbols_.end(), other.begin(), other.end());
}

bool FiniteWord::is_prefix_of(const FiniteWord& other) const {
  return symbols_.size() <= other.symbols_.size() &&
         std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

FiniteWord FiniteWord::reversed() const {
  std::vector<Letter> rev(symbols_.rbegin(), symbols_.rend());
  return FiniteWord(d_, std::move(rev));
}

bool FiniteWord::is_palindrome() const {
  return std::equal(symbols_.begin(),
                    symbols_.begin() + symbols_.size() / 2, symbols_.rbegin());
}

std::string FiniteWord::str() const { return format_symbols(symbols_, d_); }

std::string format_symbols(std::span<const Letter> symbols, int d) {
  std::string out;
  if (d <= 10) {
    out.reserve(symbols.size());
    for (Letter a : symbols) out.push_back(static_cast<char>('0' + a));
  } else {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(int(symbols[i]));
    }
  }
  return out;
}

Int ParikhVector::total() const {
  Int sum = 0;
  for (const Int& c : counts) sum += c;
  return sum;
}

ParikhVector parikh(const FiniteWord& w) {
  ParikhVector v;
  v.counts.assign(w.alphabet_size(), Int(0));
  for (Letter a : w) ++v.counts[a];
  return v;
}

}  // namespace arlab
