#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "arlab/analysis.hpp"
#include "arlab/complexity.hpp"
#include "arlab/directive.hpp"
#include "arlab/errors.hpp"
#include "arlab/generate.hpp"
#include "support/naive.hpp"

using namespace arlab;

namespace {

DirectiveSequence fib() { return DirectiveSequence::parse(":01"); }
DirectiveSequence trib() { return DirectiveSequence::parse(":012"); }

}  // namespace

TEST_CASE("factor set accessors") {
  ARWordPrefix p = generate_prefix(fib(), 5);  // 01001
  FactorSet fs(p, 2);
  CHECK(fs.count() == 3);
  CHECK(fs.factor_length() == 2);
  CHECK(fs.alphabet_size() == 2);

  std::size_t i01 = fs.find(FiniteWord::parse("01", 2).view());
  std::size_t i10 = fs.find(FiniteWord::parse("10", 2).view());
  std::size_t i00 = fs.find(FiniteWord::parse("00", 2).view());
  CHECK(i01 == 0);  // numbered by first occurrence
  CHECK(i10 == 1);
  CHECK(i00 == 2);
  CHECK(fs.find(FiniteWord::parse("11", 2).view()) == FactorSet::npos);
  CHECK(fs.find(FiniteWord::parse("010", 2).view()) == FactorSet::npos);

  CHECK(std::vector<std::uint32_t>(fs.occurrences(i01).begin(),
                                   fs.occurrences(i01).end()) ==
        std::vector<std::uint32_t>{0, 3});
  CHECK(fs.occurrences(i10).size() == 1);
  CHECK(fs.factor(i10).str() == "10");

  CHECK(fs.left_mask(i01) == 0b01);   // only an interior occurrence counts
  CHECK(fs.right_mask(i01) == 0b01);
  CHECK(fs.left_mask(i00) == 0b10);
  CHECK(fs.right_mask(i00) == 0b10);
  CHECK(fs.occurs_within(i01, 1, 3));
  CHECK(!fs.occurs_within(i01, 1, 2));
  CHECK(fs.occurs_within(i01, 0, 0));

  CHECK_THROWS_AS(FactorSet(p, 6), std::invalid_argument);

  SUBCASE("empty factor") {
    FactorSet f0(p, 0);
    CHECK(f0.count() == 1);
    CHECK(f0.occurrences(0).size() == p.size() + 1);
    CHECK(f0.bispecial(0));
  }
}

TEST_CASE("factor complexity counts") {
  ARWordPrefix f = generate_prefix(fib(), 10000);
  ARWordPrefix t = generate_prefix(trib(), 10000);
  CHECK(factor_complexity(f, 7) == 8);
  CHECK(factor_complexity(t, 5) == 11);
  CHECK(factor_complexity(t, 7) == 15);
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(factor_complexity(f, n) == n + 1);
    CHECK(factor_complexity(t, n) == 2 * n + 1);
  }
}

TEST_CASE("special factors") {
  ARWordPrefix f = generate_prefix(fib(), 256);
  SpecialFactors s1 = special_factors(f, 1);
  REQUIRE(s1.left.size() == 1);
  REQUIRE(s1.right.size() == 1);
  CHECK(s1.left[0].str() == "0");
  CHECK(s1.right[0].str() == "0");

  ARWordPrefix t = generate_prefix(trib(), 256);
  SpecialFactors s2 = special_factors(t, 2);
  REQUIRE(s2.left.size() == 1);
  REQUIRE(s2.right.size() == 1);
  CHECK(s2.left[0].str() == "01");
  CHECK(s2.right[0].str() == "10");

  SpecialFactors s0 = special_factors(f, 0);
  REQUIRE(s0.left.size() == 1);
  CHECK(s0.left[0].empty());
  CHECK(s0.right[0].empty());

  SUBCASE("one special factor per side at every order") {
    for (std::size_t n = 1; n <= 12; ++n) {
      for (const ARWordPrefix& p : {f, t}) {
        SpecialFactors s = special_factors(p, n);
        CHECK(s.left.size() == 1);
        CHECK(s.right.size() == 1);
        CHECK(s.left[0].reversed() == s.right[0]);
      }
    }
  }

  SUBCASE("budget failures") {
    ARWordPrefix tiny = generate_prefix(fib(), 7, 7);
    CHECK_THROWS_AS(special_factors(tiny, 2), InstabilityError);
    ARWordPrefix tiny3 = generate_prefix(fib(), 3, 3);
    CHECK_THROWS_AS(special_factors(tiny3, 3), BudgetError);
  }
}

TEST_CASE("language is closed under reversal") {
  for (const DirectiveSequence& ds : {fib(), trib()}) {
    ARWordPrefix p = generate_prefix(ds, 10000);
    for (std::size_t n = 1; n <= 12; ++n) {
      FactorSet fs(p, n);
      std::set<std::vector<Letter>> seen;
      for (std::size_t i = 0; i < fs.count(); ++i) {
        auto v = fs.factor_view(i);
        seen.insert(std::vector<Letter>(v.begin(), v.end()));
      }
      for (const auto& w : seen) {
        std::vector<Letter> rev(w.rbegin(), w.rend());
        CHECK(seen.count(rev) == 1);
      }
    }
  }
}

TEST_CASE("bispecial records") {
  BispecialRecord b0 = bispecial(fib(), 0);
  CHECK(b0.length == 0);
  REQUIRE(b0.factor.has_value());
  CHECK(b0.factor->empty());
  REQUIRE(b0.return_words.has_value());
  CHECK(b0.return_words->at(0).str() == "0");
  CHECK(b0.return_words->at(1).str() == "1");

  BispecialRecord t2 = bispecial(trib(), 2);
  CHECK(t2.length == 3);
  REQUIRE(t2.factor.has_value());
  CHECK(t2.factor->str() == "010");
  CHECK(t2.return_word_lengths == std::vector<Int>{3, 2, 4});
  REQUIRE(t2.return_words.has_value());
  CHECK(t2.return_words->at(0).str() == "010");
  CHECK(t2.return_words->at(1).str() == "01");
  CHECK(t2.return_words->at(2).str() == "0102");

  CHECK(bispecial(fib(), 3).factor->str() == "010010");

  SUBCASE("frozen length sequences") {
    Int fib_expect[] = {0, 1, 3, 6, 11, 19};
    Int trib_expect[] = {0, 1, 3, 7, 14, 27, 51};
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(bispecial(fib(), k).length == fib_expect[k]);
    }
    for (std::size_t k = 0; k < 7; ++k) {
      CHECK(bispecial(trib(), k).length == trib_expect[k]);
    }
  }

  SUBCASE("bispecial factors are palindromes with increasing lengths") {
    std::mt19937_64 rng(11);
    for (const DirectiveSequence& ds :
         {fib(), trib(), random_valid_directive(3, rng)}) {
      Int prev = -1;
      for (std::size_t k = 0; k <= 12; ++k) {
        BispecialRecord rec = bispecial(ds, k);
        CHECK(rec.length > prev);
        prev = rec.length;
        REQUIRE(rec.factor.has_value());
        CHECK(rec.factor->is_palindrome());
        CHECK(Int(rec.factor->size()) == rec.length);
      }
    }
  }

  SUBCASE("lengths agree with the memoized recurrence") {
    std::mt19937_64 rng(12);
    for (const DirectiveSequence& ds :
         {fib(), trib(), random_valid_directive(4, rng)}) {
      BispecialLengths cache(ds);
      for (std::size_t k = 0; k <= 60; ++k) {
        BispecialRecord rec = bispecial(ds, k);
        CHECK(rec.length == cache.bispecial_length(k));
        for (int a = 0; a < ds.alphabet_size(); ++a) {
          CHECK(rec.return_word_lengths[a] ==
                cache.psi_image_length(k, static_cast<Letter>(a)));
        }
      }
    }
  }

  SUBCASE("materialization respects the budget") {
    BispecialRecord big = bispecial(fib(), 30, 100);
    CHECK(big.length > 100);
    CHECK(!big.factor.has_value());
    CHECK(!big.return_words.has_value());
    CHECK(big.return_word_lengths.size() == 2);
  }

  CHECK_THROWS_AS(bispecial(DirectiveSequence::parse(":0", 2), 2),
                  ValidityError);
}

TEST_CASE("return words by brute force") {
  ARWordPrefix f = generate_prefix(fib(), 400);
  std::set<FiniteWord> r0 = return_words_bruteforce(f, FiniteWord::parse("0", 2));
  CHECK(r0 == std::set<FiniteWord>{FiniteWord::parse("0", 2),
                                   FiniteWord::parse("01", 2)});

  ARWordPrefix t = generate_prefix(trib(), 400);
  std::set<FiniteWord> r010 =
      return_words_bruteforce(t, FiniteWord::parse("010", 3));
  BispecialRecord t2 = bispecial(trib(), 2);
  std::set<FiniteWord> expect(t2.return_words->begin(),
                              t2.return_words->end());
  CHECK(r010 == expect);

  ARWordPrefix tiny = generate_prefix(fib(), 20, 20);
  CHECK_THROWS_AS(return_words_bruteforce(tiny, tiny.word()),
                  std::invalid_argument);
  CHECK_THROWS_AS(return_words_bruteforce(f, FiniteWord::parse("11", 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(return_words_bruteforce(f, FiniteWord(3, {0})),
                  std::domain_error);
}

TEST_CASE("derived words") {
  ARWordPrefix f = generate_prefix(fib(), 4000);
  ARWordPrefix t = generate_prefix(trib(), 4000);

  SUBCASE("empty base word codes the word itself") {
    DerivedWord dw = derived_word(f, FiniteWord(2), 20);
    CHECK(dw.coding == FiniteWord(2, f.view().first(20)));
    CHECK(dw.return_words.size() == 2);
  }

  SUBCASE("frozen coding for the Fibonacci prefix 010") {
    DerivedWord dw = derived_word(f, FiniteWord::parse("010", 2), 5);
    CHECK(dw.coding.str() == "01001");
    CHECK(dw.return_words[0].str() == "010");
    CHECK(dw.return_words[1].str() == "01");
  }

  SUBCASE("concatenating return words rebuilds the prefix") {
    DerivedWord dw = derived_word(t, FiniteWord::parse("0102010", 3), 40);
    FiniteWord rebuilt(3);
    for (Letter c : dw.coding) rebuilt.append(dw.return_words[c]);
    CHECK(rebuilt.is_prefix_of(t.word()));
    CHECK(rebuilt.size() > 40);
  }

  SUBCASE("derived word of B(k) matches the shifted directive") {
    for (const DirectiveSequence& ds : {fib(), trib()}) {
      ARWordPrefix p = generate_prefix(ds, 4000);
      for (std::size_t k = 0; k <= 4; ++k) {
        FiniteWord base = *bispecial(ds, k).factor;
        DerivedWord dw = derived_word(p, base, 50);
        ARWordPrefix shifted_word = generate_prefix(ds.shifted(k), 50);
        CHECK(testsup::order_isomorphic(dw.coding.view(), shifted_word.view()));
      }
    }
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(derived_word(f, FiniteWord::parse("1", 2), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(derived_word(f, FiniteWord(3, {0}), 3), std::domain_error);
    ARWordPrefix tiny = generate_prefix(fib(), 10, 20);
    CHECK_THROWS_AS(derived_word(tiny, FiniteWord::parse("010", 2), 15),
                    InstabilityError);
  }
}

TEST_CASE("rauzy graphs") {
  ARWordPrefix f = generate_prefix(fib(), 2048);
  ARWordPrefix t = generate_prefix(trib(), 2048);

  SUBCASE("order zero collapses to loops on the empty factor") {
    RauzyGraph g = rauzy_graph(t, 0);
    REQUIRE(g.vertices.size() == 1);
    CHECK(g.edges.size() == 3);
    for (const auto& e : g.edges) {
      CHECK(e.from == 0);
      CHECK(e.to == 0);
    }
    CHECK(g.vertex_label(0) == "\xce\xb5 B");
    ArCycleDecomposition c = ar_cycles(g);
    CHECK(c.alpha == c.beta);
    CHECK(c.cycle_sizes == std::vector<std::size_t>{1, 1, 1});
  }

  SUBCASE("fibonacci order 2") {
    RauzyGraph g = rauzy_graph(f, 2);
    REQUIRE(g.vertices.size() == 3);
    REQUIRE(g.edges.size() == 4);
    CHECK(g.vertex_label(0) == "00");
    CHECK(g.vertex_label(1) == "01 L");
    CHECK(g.vertex_label(2) == "10 R");
    CHECK(g.out_degree(2) == 2);
    CHECK(g.in_degree(1) == 2);

    ArCycleDecomposition c = ar_cycles(g);
    CHECK(g.vertex_label(c.alpha) == "01 L");
    CHECK(g.vertex_label(c.beta) == "10 R");
    CHECK(c.common_path_vertices == 2);
    CHECK(c.cycle_sizes == std::vector<std::size_t>{2, 3});
  }

  SUBCASE("tribonacci order 3") {
    RauzyGraph g = rauzy_graph(t, 3);
    REQUIRE(g.vertices.size() == 7);
    REQUIRE(g.edges.size() == 9);

    int bispecial_count = 0;
    std::size_t hub = 0;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      if (g.vertices[i].left_special && g.vertices[i].right_special) {
        ++bispecial_count;
        hub = i;
      }
    }
    CHECK(bispecial_count == 1);
    CHECK(g.vertex_label(hub) == "010 B");
    CHECK(g.out_degree(hub) == 3);
    CHECK(g.in_degree(hub) == 3);

    ArCycleDecomposition c = ar_cycles(g);
    CHECK(c.alpha == hub);
    CHECK(c.beta == hub);
    CHECK(c.common_path_vertices == 1);
    CHECK(c.cycle_sizes == std::vector<std::size_t>{2, 3, 4});

    std::string dot = g.to_dot();
    CHECK(dot.find("digraph rauzy {") == 0);
    CHECK(dot.find("010 B") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
  }

  SUBCASE("degree totals match the edge count") {
    for (std::size_t n : {1, 2, 4, 6}) {
      RauzyGraph g = rauzy_graph(t, n);
      int out_total = 0, in_total = 0;
      for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        out_total += g.out_degree(i);
        in_total += g.in_degree(i);
      }
      CHECK(out_total == static_cast<int>(g.edges.size()));
      CHECK(in_total == static_cast<int>(g.edges.size()));
      CHECK(g.vertices.size() == 2 * n + 1);
      CHECK(g.edges.size() == 2 * (n + 1) + 1);
    }
  }
}

TEST_CASE("rauzy special property") {
  ARWordPrefix f = generate_prefix(fib(), 2048);
  ARWordPrefix t = generate_prefix(trib(), 2048);

  RauzySpecialReport r4 = check_rauzy_special_property(f, 4);
  CHECK(r4.applicable);
  CHECK(r4.holds);

  RauzySpecialReport r1 = check_rauzy_special_property(f, 1);
  CHECK(r1.applicable);
  CHECK(r1.holds);

  RauzySpecialReport t3 = check_rauzy_special_property(t, 3);
  CHECK(!t3.applicable);
  CHECK(t3.detail.find("nrC") != std::string::npos);

  CHECK_THROWS_AS(check_rauzy_special_property(f, 0), std::domain_error);
}
