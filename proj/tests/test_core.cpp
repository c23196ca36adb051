#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "arlab/directive.hpp"
#include "arlab/errors.hpp"
#include "arlab/generate.hpp"
#include "arlab/morphism.hpp"
#include "arlab/words.hpp"
#include "support/naive.hpp"

using namespace arlab;

TEST_CASE("alphabet size bounds") {
  CHECK_NOTHROW(check_alphabet_size(1));
  CHECK_NOTHROW(check_alphabet_size(2));
  CHECK_NOTHROW(check_alphabet_size(kMaxAlphabet));
  CHECK_THROWS_AS(check_alphabet_size(0), std::domain_error);
  CHECK_THROWS_AS(check_alphabet_size(-3), std::domain_error);
  CHECK_THROWS_AS(check_alphabet_size(kMaxAlphabet + 1), std::domain_error);
}

TEST_CASE("finite word construction") {
  FiniteWord w(3, {0, 1, 2, 0});
  CHECK(w.alphabet_size() == 3);
  CHECK(w.size() == 4);
  CHECK(!w.empty());
  CHECK(w[0] == 0);
  CHECK(w[2] == 2);
  CHECK(w.symbols() == std::vector<Letter>{0, 1, 2, 0});

  FiniteWord empty(2);
  CHECK(empty.empty());
  CHECK(empty.size() == 0);

  CHECK_THROWS_AS(FiniteWord(2, {0, 2}), std::domain_error);
  CHECK_THROWS_AS(FiniteWord(2, {-1}), std::domain_error);
  CHECK_THROWS_AS(FiniteWord(0), std::domain_error);
  CHECK_THROWS_AS(FiniteWord(kMaxAlphabet + 1), std::domain_error);
}

TEST_CASE("finite word parse") {
  FiniteWord w = FiniteWord::parse("0102");
  CHECK(w.alphabet_size() == 3);
  CHECK(w == FiniteWord(3, {0, 1, 0, 2}));

  CHECK(FiniteWord::parse("0102", 4).alphabet_size() == 4);

  FiniteWord b = FiniteWord::parse("[0,1,11]");
  CHECK(b.alphabet_size() == 12);
  CHECK(b.size() == 3);
  CHECK(b[2] == 11);

  FiniteWord e = FiniteWord::parse("");
  CHECK(e.alphabet_size() == 1);
  CHECK(e.empty());

  CHECK_THROWS_AS(FiniteWord::parse("01a2"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteWord::parse("[0,1"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteWord::parse("[0,,1]"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteWord::parse("7", 3), std::domain_error);
  CHECK_THROWS_AS(FiniteWord::parse("[99]"), std::domain_error);

  CHECK(FiniteWord::parse("0102").str() == "0102");
  CHECK(FiniteWord::parse("[0,1,11]").str() == "0,1,11");
  CHECK(FiniteWord(2).str() == "");
}

TEST_CASE("finite word operations") {
  FiniteWord fib5 = FiniteWord::parse("01001", 2);

  CHECK(FiniteWord::parse("010", 2).is_prefix_of(fib5));
  CHECK(fib5.is_prefix_of(fib5));
  CHECK(!FiniteWord::parse("011", 2).is_prefix_of(fib5));
  CHECK(!fib5.is_prefix_of(FiniteWord::parse("010", 2)));

  CHECK(FiniteWord::parse("0102").reversed() == FiniteWord::parse("2010"));
  CHECK(FiniteWord::parse("010010", 2).is_palindrome());
  CHECK(FiniteWord::parse("0102010").is_palindrome());
  CHECK(!FiniteWord::parse("01", 2).is_palindrome());
  CHECK(FiniteWord::parse("0", 2).is_palindrome());
  CHECK(FiniteWord(2).is_palindrome());

  CHECK(FiniteWord::parse("01", 2) < FiniteWord::parse("010", 2));
  CHECK(FiniteWord::parse("0", 2) < FiniteWord::parse("1", 2));
  CHECK(FiniteWord::parse("10", 2) > FiniteWord::parse("011", 2));

  FiniteWord acc(2, {0});
  acc.append(FiniteWord(2, {1, 0}));
  CHECK(acc == FiniteWord::parse("010", 2));
  acc.push_back(1);
  CHECK(acc.str() == "0101");
  CHECK_THROWS_AS(acc.push_back(2), std::domain_error);
  CHECK_THROWS_AS(acc.append(FiniteWord(3, {0})), std::domain_error);
}

TEST_CASE("parikh vectors") {
  ParikhVector v = parikh(FiniteWord::parse("0102010", 3));
  CHECK(v.counts == std::vector<Int>{4, 2, 1});
  CHECK(v.total() == 7);
  CHECK(parikh(FiniteWord(3)).total() == 0);
}

TEST_CASE("elementary morphisms") {
  Morphism phi0 = elementary_morphism(0, 2);
  CHECK(phi0.image(0) == FiniteWord::parse("0", 2));
  CHECK(phi0.image(1) == FiniteWord::parse("01", 2));
  CHECK(phi0.apply(FiniteWord::parse("10", 2)) == FiniteWord::parse("010", 2));

  Morphism phi1 = elementary_morphism(1, 3);
  CHECK(phi1.image(0) == FiniteWord::parse("10", 3));
  CHECK(phi1.image(1) == FiniteWord::parse("1", 3));
  CHECK(phi1.image(2) == FiniteWord::parse("12", 3));

  CHECK_THROWS_AS(elementary_morphism(2, 2), std::domain_error);
  CHECK_THROWS_AS(phi0.apply(FiniteWord(3, {0})), std::domain_error);
}

TEST_CASE("dbonacci morphism") {
  Morphism tau2 = dbonacci_morphism(2);
  CHECK(tau2.image(0) == FiniteWord::parse("01", 2));
  CHECK(tau2.image(1) == FiniteWord::parse("0", 2));

  Morphism tau3 = dbonacci_morphism(3);
  CHECK(tau3.image(0) == FiniteWord::parse("01", 3));
  CHECK(tau3.image(1) == FiniteWord::parse("02", 3));
  CHECK(tau3.image(2) == FiniteWord::parse("0", 3));

  CHECK_THROWS_AS(dbonacci_morphism(1), ValidityError);
  CHECK_THROWS_AS(dbonacci_morphism(0), std::domain_error);

  SUBCASE("incidence matrix shape") {
    for (int d = 2; d <= 6; ++d) {
      IncidenceMatrix m = dbonacci_morphism(d).incidence();
      testsup::Mat expect = testsup::dbonacci_matrix(d);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) CHECK(m(a, b) == expect[a][b]);
      }
    }
  }

  SUBCASE("tau^d equals the composition of the first d elementary morphisms") {
    for (int d = 2; d <= 5; ++d) {
      Morphism tau = dbonacci_morphism(d);
      Morphism tau_d = Morphism::identity(d);
      for (int j = 0; j < d; ++j) tau_d = compose(tau_d, tau);
      Morphism psi_d = Morphism::identity(d);
      for (int j = 0; j < d; ++j) {
        psi_d = compose(psi_d, elementary_morphism(static_cast<Letter>(j), d));
      }
      CHECK(tau_d == psi_d);
    }
  }
}

TEST_CASE("morphism composition") {
  Morphism c = compose(elementary_morphism(0, 3), elementary_morphism(1, 3));
  CHECK(c.image(0) == FiniteWord::parse("010", 3));
  CHECK(c.image(1) == FiniteWord::parse("01", 3));
  CHECK(c.image(2) == FiniteWord::parse("0102", 3));

  SUBCASE("incidence of a composition is the matrix product") {
    IncidenceMatrix product = elementary_morphism(0, 3).incidence() *
                              elementary_morphism(1, 3).incidence();
    CHECK(c.incidence() == product);

    Int expect[3][3] = {{2, 1, 2}, {1, 1, 1}, {0, 0, 1}};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) CHECK(product(a, b) == expect[a][b]);
    }
    CHECK(product.column_sum(0) == 3);
    CHECK(product.column_sum(1) == 2);
    CHECK(product.column_sum(2) == 4);
  }

  SUBCASE("identity laws") {
    Morphism f = compose(elementary_morphism(1, 3), elementary_morphism(2, 3));
    CHECK(compose(Morphism::identity(3), f) == f);
    CHECK(compose(f, Morphism::identity(3)) == f);
  }

  CHECK_THROWS_AS(compose(elementary_morphism(0, 2), elementary_morphism(0, 3)),
                  std::domain_error);
}

TEST_CASE("incidence acts as abelianization") {
  std::mt19937_64 rng(2024);
  for (int d = 2; d <= 5; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      Morphism m = Morphism::identity(d);
      for (int j = 0; j < 3; ++j) {
        m = compose(m, elementary_morphism(static_cast<Letter>(rng() % d), d));
      }
      FiniteWord w(d);
      std::size_t len = rng() % 51;
      for (std::size_t i = 0; i < len; ++i) {
        w.push_back(static_cast<Letter>(rng() % d));
      }
      ParikhVector expect = parikh(m.apply(w));
      CHECK(m.incidence().apply(parikh(w)) == expect);
      std::vector<Int> raw = m.incidence() * std::span<const Int>(parikh(w).counts);
      CHECK(raw == expect.counts);
    }
  }
}

TEST_CASE("directive sequences") {
  DirectiveSequence fib = DirectiveSequence::parse(":01");
  CHECK(fib.alphabet_size() == 2);
  CHECK(fib.preperiod().empty());
  CHECK(fib.period() == FiniteWord::parse("01", 2));
  CHECK(fib.letter(0) == 0);
  CHECK(fib.letter(1) == 1);
  CHECK(fib.letter(7) == 1);
  CHECK(fib.str() == ":01");

  DirectiveSequence p = DirectiveSequence::parse("0:1");
  CHECK(p.alphabet_size() == 2);
  CHECK(p.letter(0) == 0);
  CHECK(p.letter(1) == 1);
  CHECK(p.letter(5) == 1);

  CHECK(DirectiveSequence::parse(":012", 4).letter(4) == 1);
  CHECK(DirectiveSequence::parse("[]:[0,1,11]").str() == "[]:[0,1,11]");

  CHECK_THROWS_AS(DirectiveSequence::parse("012"), std::invalid_argument);
  CHECK_THROWS_AS(DirectiveSequence(2, FiniteWord(2), FiniteWord(2)),
                  ValidityError);
  CHECK_THROWS_AS(DirectiveSequence(3, FiniteWord(2), FiniteWord(3, {0, 1, 2})),
                  std::domain_error);

  SUBCASE("validity") {
    CHECK(DirectiveSequence::parse(":01").valid_ar());
    CHECK(DirectiveSequence::parse("111:01").valid_ar());
    CHECK(!DirectiveSequence::parse(":0", 2).valid_ar());
    CHECK(!DirectiveSequence::parse("1:0", 2).valid_ar());
    CHECK(!DirectiveSequence::parse(":0", 1).valid_ar());
    CHECK_NOTHROW(DirectiveSequence::parse(":01").require_valid_ar());
    CHECK_THROWS_AS(DirectiveSequence::parse(":0", 2).require_valid_ar(),
                    ValidityError);
  }

  SUBCASE("shifts") {
    DirectiveSequence ds = DirectiveSequence::parse("21:012", 3);
    CHECK(ds.shifted(0) == ds);
    CHECK(ds.shifted(1) == DirectiveSequence::parse("1:012", 3));
    CHECK(ds.shifted(2) == DirectiveSequence::parse(":012", 3));
    CHECK(ds.shifted(3) == DirectiveSequence::parse(":120", 3));
    CHECK(ds.shifted(5) == DirectiveSequence::parse(":012", 3));
    for (std::size_t k = 0; k <= 10; ++k) {
      DirectiveSequence sh = ds.shifted(k);
      for (std::size_t n = 0; n <= 30; ++n) {
        CHECK(sh.letter(n) == ds.letter(n + k));
      }
    }
  }

  SUBCASE("dbonacci directive") {
    DirectiveSequence t3 = dbonacci_directive(3);
    CHECK(t3 == DirectiveSequence::parse(":012", 3));
    for (std::size_t n = 0; n <= 100; ++n) {
      CHECK(t3.letter(n) == static_cast<Letter>(n % 3));
    }
    CHECK(dbonacci_directive(2).valid_ar());
    CHECK_THROWS_AS(dbonacci_directive(1), ValidityError);
  }

  SUBCASE("random directives are valid and deterministic") {
    for (int d = 2; d <= 5; ++d) {
      std::mt19937_64 a(42), b(42);
      for (int rep = 0; rep < 20; ++rep) {
        DirectiveSequence da = random_valid_directive(d, a);
        CHECK(da.valid_ar());
        CHECK(da.alphabet_size() == d);
        CHECK(da.preperiod().size() <= 3);
        CHECK(da.period().size() >= static_cast<std::size_t>(d));
        CHECK(da == random_valid_directive(d, b));
      }
    }
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(random_valid_directive(1, rng), ValidityError);
  }
}

TEST_CASE("prefix generation") {
  DirectiveSequence fib = DirectiveSequence::parse(":01");
  DirectiveSequence trib = DirectiveSequence::parse(":012");

  CHECK(generate_prefix(fib, 13).word().str() == "0100101001001");
  CHECK(generate_prefix(trib, 13).word().str() == "0102010010201");
  CHECK(generate_prefix(fib, 0).size() == 0);

  SUBCASE("exact length and prefix stability") {
    ARWordPrefix longest = generate_prefix(fib, 40);
    for (std::size_t len = 1; len <= 40; ++len) {
      ARWordPrefix p = generate_prefix(fib, len);
      CHECK(p.size() == len);
      CHECK(p.word().is_prefix_of(longest.word()));
    }
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(generate_prefix(DirectiveSequence::parse(":0", 2), 5),
                    ValidityError);
    CHECK_THROWS_AS(generate_prefix(fib, 100, 50), BudgetError);
  }

  SUBCASE("grow") {
    ARWordPrefix p = generate_prefix(fib, 10, 1000);
    ARWordPrefix q = grow(p, 500);
    CHECK(q.size() >= 500);
    CHECK(p.word().is_prefix_of(q.word()));
    CHECK(grow(p, 5).size() == p.size());
    CHECK_THROWS_AS(grow(p, 2000), BudgetError);
  }

  SUBCASE("every length-2 factor contains the first directive letter") {
    std::mt19937_64 rng(7);
    std::vector<DirectiveSequence> cases = {fib, trib,
                                            random_valid_directive(4, rng)};
    for (const DirectiveSequence& ds : cases) {
      ARWordPrefix p = generate_prefix(ds, 10000);
      Letter dom = ds.letter(0);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p[i] != dom && p[i + 1] != dom) {
          FAIL(("position " + std::to_string(i) + " of " + ds.str() +
                " misses the dominant letter"));
        }
      }
    }
  }
}
