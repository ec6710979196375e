#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "sgwp/rewriting.hpp"

using namespace sgwp;
using namespace sgwp::test_fixtures;

TEST_CASE("normal forms of the named systems") {
  MonadicRewritingSystem bic = bicyclic_system();
  CHECK(normal_form(bic, {"b", "b", "c", "c"}) == Word{});
  CHECK(normal_form(bic, {"c", "b"}) == Word{"c", "b"});

  MonadicRewritingSystem pal = palindrome_system();
  CHECK(normal_form(pal, {"x", "a", "b", "b", "a", "y"}) == Word{"z"});
  CHECK(normal_form(pal, {"x", "a", "b", "y"}) == Word{"x", "a", "b", "y"});

  MonadicRewritingSystem na = non_automatic_system();
  CHECK(normal_form(na, {"a", "b", "b", "c", "c", "d"}) == Word{"z"});
  CHECK(normal_form(na, {"a", "d"}) == Word{"z"});
  CHECK(normal_form(na, {"a", "b", "c", "c", "d"}) ==
        Word{"a", "b", "c", "c", "d"});
}

TEST_CASE("word equality under confluence") {
  MonadicRewritingSystem bic = bicyclic_system();
  CHECK(word_equal(bic, {"b", "c"}, {}));
  CHECK_FALSE(word_equal(bic, {"b"}, {"c"}));

  MonadicRewritingSystem pal = palindrome_system();
  CHECK_FALSE(word_equal(pal, {"x", "a", "b", "y"}, {"z"}));
  CHECK(word_equal(pal, {"x", "a", "b", "a", "y"}, {"z"}));

  MonadicRewritingSystem loose = bicyclic_system();
  loose.confluentAsserted = false;
  CHECK_THROWS_AS(word_equal(loose, {"b"}, {"b"}), HypothesisViolation);
}

TEST_CASE("length reduction is validated") {
  MonadicRewritingSystem bad;
  bad.alphabet = {"a", "b"};
  bad.lhsLanguages.emplace("a", LhsDescriptor(std::set<Word>{{"b"}}));
  CHECK_THROWS_AS(bad.validate(), InputError);

  MonadicRewritingSystem bad2;
  bad2.alphabet = {"a"};
  bad2.lhsLanguages.emplace("", LhsDescriptor(std::set<Word>{{}}));
  CHECK_THROWS_AS(bad2.validate(), InputError);
}

TEST_CASE("confluence smoke test") {
  CHECK(confluence_smoke_test(bicyclic_system(), 100, 10, 11).clean());

  MonadicRewritingSystem nc;
  nc.alphabet = {"a", "b"};
  nc.lhsLanguages.emplace("a", LhsDescriptor(std::set<Word>{{"a", "b"}}));
  nc.lhsLanguages.emplace("b", LhsDescriptor(std::set<Word>{{"a", "b"}}));
  auto rep = confluence_smoke_test(nc, 200, 6, 3);
  CHECK_FALSE(rep.clean());

  MonadicRewritingSystem empty;
  empty.alphabet = {"a"};
  CHECK(confluence_smoke_test(empty, 50, 6, 5).clean());
}

TEST_CASE("normal form properties on sampled words") {
  MonadicRewritingSystem systems[] = {bicyclic_system(), palindrome_system(),
                                      non_automatic_system()};
  std::mt19937_64 rng(2026);
  for (const auto& rs : systems) {
    std::vector<Letter> targets = rs.ordered_targets();
    std::uniform_int_distribution<size_t> lenDist(0, 8);
    std::uniform_int_distribution<size_t> letterDist(0, rs.alphabet.size() - 1);
    for (int i = 0; i < 60; ++i) {
      Word w;
      size_t len = lenDist(rng);
      for (size_t j = 0; j < len; ++j) w.push_back(rs.alphabet[letterDist(rng)]);
      Word nf = normal_form(rs, w);
      CHECK(nf.size() <= w.size());
      CHECK(normal_form(rs, nf) == nf);
      // irreducible: no factor lies in any lhs language
      for (size_t p = 0; p < nf.size(); ++p)
        for (size_t l = 1; p + l <= nf.size(); ++l) {
          Word factor(nf.begin() + static_cast<long>(p),
                      nf.begin() + static_cast<long>(p + l));
          for (const Letter& t : targets)
            CHECK_FALSE(rs.lhsLanguages.at(t).member(factor));
        }
    }
  }
}

TEST_CASE("word equality is a sampled congruence") {
  MonadicRewritingSystem bic = bicyclic_system();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> lenDist(0, 5);
  std::uniform_int_distribution<size_t> letterDist(0, 1);
  auto sample = [&] {
    Word w;
    size_t len = lenDist(rng);
    for (size_t j = 0; j < len; ++j) w.push_back(bic.alphabet[letterDist(rng)]);
    return w;
  };
  for (int i = 0; i < 40; ++i) {
    Word u = sample(), v = sample(), x = sample(), y = sample();
    CHECK(word_equal(bic, u, u));  // reflexive
    CHECK(word_equal(bic, u, v) == word_equal(bic, v, u));
    if (word_equal(bic, u, v)) {
      Word xu = concat(concat(x, u), y), xv = concat(concat(x, v), y);
      CHECK(word_equal(bic, xu, xv));
    }
  }
}

TEST_CASE("lhs languages may be given as finite automata") {
  // c a* c -> c over {a, c}
  Nfa n;
  n.alphabet = Alphabet({"a", "c"});
  int s0 = n.add_state("s0");
  int s1 = n.add_state("s1");
  int s2 = n.add_state("s2");
  n.initial = {s0};
  n.finals = {s2};
  n.add_transition(s0, "c", s1);
  n.add_transition(s1, "a", s1);
  n.add_transition(s1, "c", s2);
  MonadicRewritingSystem rs;
  rs.alphabet = {"a", "c"};
  rs.lhsLanguages.emplace("c", LhsDescriptor(n));
  rs.confluentAsserted = true;
  rs.validate();
  CHECK(normal_form(rs, {"c", "a", "a", "c"}) == Word{"c"});
  CHECK(normal_form(rs, {"c", "c", "a", "c"}) == Word{"c"});
  CHECK(word_equal(rs, {"c", "a", "c", "a"}, {"c", "a"}));
}

TEST_CASE("complement grammar fixture matches the counting predicate to length 8") {
  Cfg g = complement_of_abc_counting();
  CykMatcher m(g);
  for (const Word& w : enumerate_words({"a", "b", "c"}, 8))
    CHECK(m.member(w) == outside_abc_counting(w));
}

TEST_CASE("marked-complement system rewrites exactly the non-counting fillings") {
  MonadicRewritingSystem rs = no_cf_cross_section_system();
  CHECK(normal_form(rs, {"x", "a", "b", "y"}) == Word{"z"});
  CHECK(normal_form(rs, {"x", "a", "b", "c", "y"}) ==
        Word{"x", "a", "b", "c", "y"});
  CHECK(word_equal(rs, {"x", "b", "a", "y"}, {"z"}));
}
