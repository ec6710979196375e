#include "doctest.h"

#include "fixtures.hpp"
#include "sgwp/builders.hpp"
#include "sgwp/bruck_reilly.hpp"
#include "sgwp/oracles.hpp"

using namespace sgwp;

TEST_CASE("finite semigroup validation and decomposability") {
  FiniteSemigroup c2 = fixtures::cyclic2();
  c2.validate();
  CHECK(is_decomposable(c2));                     // monoids always are
  CHECK(is_decomposable(fixtures::right_zero2()));
  CHECK_FALSE(is_decomposable(fixtures::null2()));

  FiniteSemigroup broken;
  broken.elements = {"x", "y"};
  broken.table[{"x", "x"}] = "y";
  broken.table[{"x", "y"}] = "y";
  broken.table[{"y", "x"}] = "y";
  broken.table[{"y", "y"}] = "x";  // (xx)y = x but x(xy) = y
  CHECK_THROWS_WITH_AS(broken.validate(),
                       doctest::Contains("associative"), InputError);
}

TEST_CASE("finite word problems") {
  auto c2 = builders::finite_word_problem(fixtures::cyclic2(), {"a"}, false);
  CHECK(c2.accepts_pair({"a", "a"}, {"a", "a"}));
  CHECK_FALSE(c2.accepts_pair({"a"}, {"a", "a"}));
  auto rz = builders::finite_word_problem(fixtures::right_zero2(), {"r", "s"},
                                          false);
  CHECK(rz.accepts_pair({"r", "s"}, {"s"}));  // right-zero law

  SUBCASE("generators must generate") {
    CHECK_THROWS_AS(
        builders::finite_word_problem(fixtures::right_zero2(), {"r"}, false),
        InputError);
  }
  SUBCASE("the recognizer matches the oracle exhaustively") {
    CHECK(cross_check(c2, 5, 5).clean());
    CHECK(cross_check(rz, 4, 4).clean());
    auto c2m = builders::finite_word_problem(fixtures::cyclic2(), {"a"}, true);
    CHECK(cross_check(c2m, 5, 5).clean());
  }
  SUBCASE("semigroup-mode recognizers reject empty sides") {
    CHECK_FALSE(c2.recognizer->member(encode_pair({}, {"a"})));
    CHECK_FALSE(c2.recognizer->member(encode_pair({"a"}, {})));
    CHECK_FALSE(c2.recognizer->member(encode_pair({}, {})));
  }
}

TEST_CASE("free monoid word problems") {
  auto fm = builders::free_monoid_word_problem(std::vector<Letter>{"a", "b"},
                                               true);
  CHECK(fm.recognizer->member({"a", "b", kSeparator, "b", "a"}));
  CHECK_FALSE(fm.recognizer->member({"a", "b", kSeparator, "a", "b"}));
  CHECK(fm.recognizer->member({kSeparator}));
  CHECK(fm.deterministicHint);
  CHECK(cross_check(fm, 4, 4).clean());

  auto fs = builders::free_monoid_word_problem(std::vector<Letter>{"a", "b"},
                                               false);
  CHECK_FALSE(fs.recognizer->member({kSeparator}));
  CHECK(cross_check(fs, 4, 4).clean());
}

TEST_CASE("free group word problems") {
  auto fg = builders::free_group_word_problem(2);
  CHECK(fg.recognizer->member({"x", "X", kSeparator}));
  CHECK(fg.recognizer->member({"x", "X", kSeparator, "X", "x"}));
  CHECK_FALSE(fg.recognizer->member({"x", "y", kSeparator, "x", "y"}));
  CHECK(pda::is_deterministic(fg.recognizer->pda()));
  CHECK(cross_check(fg, 3, 3).clean());
}

TEST_CASE("rewriting-presented word problems are oracle-only") {
  auto wp = builders::rewriting_word_problem(test_fixtures::bicyclic_system());
  CHECK_FALSE(wp.has_recognizer());
  CHECK(wp.oracle({"b", "c"}, {}));
  CHECK(wp.oracle({"b"}, {"b"}));
  CHECK_FALSE(wp.oracle({"b"}, {"c"}));
  CHECK_THROWS_AS(cross_check(wp, 2, 2), InputError);

  auto pal = builders::rewriting_word_problem(test_fixtures::palindrome_system());
  CHECK(pal.oracle({"x", "a", "b", "a", "y"}, {"z"}));

  MonadicRewritingSystem loose = test_fixtures::bicyclic_system();
  loose.confluentAsserted = false;
  CHECK_THROWS_AS(builders::rewriting_word_problem(loose), HypothesisViolation);
}

TEST_CASE("change of generators") {
  auto fm = builders::free_monoid_word_problem(std::vector<Letter>{"a"}, true);
  auto doubled = builders::change_generators(fm, {{"d", {"a", "a"}}});
  CHECK(doubled.accepts_pair({"d"}, {"d"}));
  CHECK_FALSE(doubled.accepts_pair({"d", "d"}, {"d"}));
  CHECK(cross_check(doubled, 4, 4).clean());

  SUBCASE("bicyclic with d mapping to bc") {
    auto bic = constructions::bruck_reilly(test_fixtures::bicyclic_br_spec());
    auto cg = builders::change_generators(
        bic, {{"b", {"b"}}, {"c", {"c"}}, {"d", {"b", "c"}}});
    CHECK(cg.accepts_pair({"d"}, {}));  // bc = 1
    CHECK(cross_check(cg, 3, 3, 2).clean());
  }
  SUBCASE("empty images need monoid mode") {
    auto fs = builders::free_monoid_word_problem(std::vector<Letter>{"a"},
                                                 false);
    CHECK_THROWS_AS(builders::change_generators(fs, {{"d", {}}}), InputError);
    auto ok = builders::change_generators(fm, {{"d", {}}, {"e", {"a"}}});
    CHECK(ok.accepts_pair({"d"}, {}));
    CHECK(cross_check(ok, 3, 3).clean());
  }
  SUBCASE("oracle-only objects are rejected") {
    auto wp = builders::rewriting_word_problem(test_fixtures::bicyclic_system());
    CHECK_THROWS_AS(builders::change_generators(wp, {{"d", {"b"}}}), InputError);
  }
}
