#include "doctest.h"

#include "fixtures.hpp"
#include "sgwp/builders.hpp"
#include "sgwp/bruck_reilly.hpp"
#include "sgwp/pda.hpp"

using namespace sgwp;

namespace {

const Npda& free_monoid_machine() {
  static Npda p = [] {
    auto w = builders::free_monoid_word_problem(std::vector<Letter>{"a", "b"}, true);
    return w.recognizer->pda();
  }();
  return p;
}

// acceptance by bare bottom, u # u^rev, hand-built with a long push to
// exercise normalization
Npda clunky_mirror() {
  Npda p;
  p.input = Alphabet({"a", "b", kSeparator});
  p.bottom = p.add_stack_symbol("Z");
  int sa = p.add_stack_symbol("a");
  int sb = p.add_stack_symbol("b");
  int l = p.add_state("l");
  int r = p.add_state("r");
  p.initial = l;
  p.mode = Npda::AcceptMode::emptyStack;
  for (int sym : {sa, sb}) {
    p.add_move(l, 0, sym, l, {sa, sym});
    p.add_move(l, 1, sym, l, {sb, sym});
    p.add_move(l, 2, sym, r, {sym});
  }
  p.add_move(l, 0, p.bottom, l, {sa, p.bottom});
  p.add_move(l, 1, p.bottom, l, {sb, p.bottom});
  p.add_move(l, 2, p.bottom, r, {p.bottom});
  p.add_move(r, 0, sa, r, {});
  p.add_move(r, 1, sb, r, {});
  return p;
}

}  // namespace

TEST_CASE("membership on the mirror machine") {
  const Npda& p = free_monoid_machine();
  CHECK(pda::accepts(p, {"a", "b", kSeparator, "b", "a"}));
  CHECK_FALSE(pda::accepts(p, {"a", "b", kSeparator, "a", "b"}));
  CHECK_THROWS_AS(pda::accepts(p, {"q"}), InputError);
}

TEST_CASE("bicyclic word problem machine accepts bc#") {
  auto bic = constructions::bruck_reilly(test_fixtures::bicyclic_br_spec());
  CHECK(bic.recognizer->member({"b", "c", kSeparator}));
  CHECK_FALSE(bic.recognizer->member({"c", "b", kSeparator}));
}

TEST_CASE("normalization") {
  SUBCASE("an already-normal machine passes through unchanged") {
    const Npda& p = free_monoid_machine();
    REQUIRE(pda::is_normal(p));
    Npda q = pda::normalize(p);
    CHECK(q.size() == p.size());
    CHECK(q.stackNames == p.stackNames);
  }
  SUBCASE("empty-stack acceptance converts with the same membership") {
    Npda p = clunky_mirror();
    Npda q = pda::normalize(p);
    CHECK(q.mode == Npda::AcceptMode::finalStateAndBareBottom);
    CHECK(pda::bottom_disciplined(q));
    for (const Word& w : enumerate_words({"a", "b", kSeparator}, 5)) {
      std::vector<int> ids = p.input.encode(w);
      Ternary a = pda::bounded_search(p, ids, 2 * (w.size() + 2));
      Ternary b = pda::bounded_search(q, q.input.encode(w), 2 * (w.size() + 2));
      REQUIRE(a != Ternary::Unknown);
      REQUIRE(b != Ternary::Unknown);
      CHECK(a == b);
    }
  }
  SUBCASE("triple pushes split into chains with the same membership") {
    // accepts a^n # a^{2n} by pushing two symbols per letter plus re-push
    Npda p;
    p.input = Alphabet({"a", kSeparator});
    p.bottom = p.add_stack_symbol("Z");
    int sa = p.add_stack_symbol("A");
    int l = p.add_state("l");
    int r = p.add_state("r");
    p.initial = l;
    p.finals = {r};
    p.mode = Npda::AcceptMode::finalStateAndBareBottom;
    p.add_move(l, 0, p.bottom, l, {sa, sa, p.bottom});
    p.add_move(l, 0, sa, l, {sa, sa, sa});
    p.add_move(l, 1, p.bottom, r, {p.bottom});
    p.add_move(l, 1, sa, r, {sa});
    p.add_move(r, 0, sa, r, {});
    Npda q = pda::normalize(p);
    for (const auto& [k, moves] : q.delta[static_cast<size_t>(q.initial)])
      (void)moves;
    for (size_t s = 0; s < q.size(); ++s)
      for (const auto& [k, moves] : q.delta[s])
        for (const Npda::Move& m : moves) CHECK(m.push.size() <= 2);
    for (const Word& w : enumerate_words({"a", kSeparator}, 6)) {
      Ternary a = pda::bounded_search(p, p.input.encode(w), 2 * (w.size() + 2));
      Ternary b = pda::bounded_search(q, q.input.encode(w), 2 * (w.size() + 2));
      REQUIRE(a != Ternary::Unknown);
      REQUIRE(b != Ternary::Unknown);
      CHECK(a == b);
    }
  }
}

TEST_CASE("intersection with regular languages") {
  const Npda& p = free_monoid_machine();
  Nfa r;  // a* # a*
  r.alphabet = Alphabet({"a", "b", kSeparator});
  int s0 = r.add_state("l");
  int s1 = r.add_state("r");
  r.initial = {s0};
  r.finals = {s1};
  r.add_transition(s0, "a", s0);
  r.add_transition(s0, kSeparator, s1);
  r.add_transition(s1, "a", s1);

  Npda cut = pda::intersect_regular(p, r);
  CHECK(pda::accepts(cut, {"a", "a", kSeparator, "a", "a"}));
  CHECK_FALSE(pda::accepts(cut, {"a", "b", kSeparator, "b", "a"}));
  for (const Word& w : enumerate_words({"a", "b", kSeparator}, 6))
    CHECK(pda::accepts(cut, w) == (pda::accepts(p, w) && r.accepts(w)));

  SUBCASE("free group machine restricted to x* # x*") {
    auto fg = builders::free_group_word_problem(1);  // letters x, X
    Nfa xs;
    xs.alphabet = Alphabet({"x", kSeparator});
    int a0 = xs.add_state("l");
    int a1 = xs.add_state("r");
    xs.initial = {a0};
    xs.finals = {a1};
    xs.add_transition(a0, "x", a0);
    xs.add_transition(a0, kSeparator, a1);
    xs.add_transition(a1, "x", a1);
    Npda cut2 = pda::intersect_regular(fg.recognizer->pda(), xs);
    CHECK(pda::accepts(cut2, {"x", "x", kSeparator, "x", "x"}));
    CHECK_FALSE(pda::accepts(cut2, {"x", kSeparator, "x", "x"}));
  }

  SUBCASE("alphabet mismatch is an input error") {
    Nfa bad;
    bad.alphabet = Alphabet({"z"});
    bad.initial = {bad.add_state("s")};
    CHECK_THROWS_AS(pda::intersect_regular(p, bad), InputError);
  }
}

TEST_CASE("inverse gsm images") {
  auto fm = builders::free_monoid_word_problem(std::vector<Letter>{"a"}, true);
  const Npda& p = fm.recognizer->pda();

  Gsm dbl;  // doubles a, fixes the separator
  dbl.inputAlphabet = Alphabet({"a", kSeparator});
  int q = dbl.add_state("q");
  dbl.initial = q;
  dbl.finals = {q};
  dbl.add_transition(q, "a", q, {"a", "a"});
  dbl.add_transition(q, kSeparator, q, {kSeparator});

  Npda inv = pda::inverse_gsm(p, dbl);
  CHECK(pda::accepts(inv, {"a", kSeparator, "a"}));
  CHECK_FALSE(pda::accepts(inv, {"a", kSeparator, "a", "a"}));
  // transduce-then-test, exhaustively
  for (const Word& w : enumerate_words({"a", kSeparator}, 6)) {
    auto img = dbl.apply(w);
    bool expect = img.has_value() && pda::accepts(p, *img);
    CHECK(pda::accepts(inv, w) == expect);
  }

  SUBCASE("identity gsm preserves membership") {
    Gsm id;
    id.inputAlphabet = Alphabet({"a", kSeparator});
    int s = id.add_state("s");
    id.initial = s;
    id.finals = {s};
    id.add_transition(s, "a", s, {"a"});
    id.add_transition(s, kSeparator, s, {kSeparator});
    Npda inv2 = pda::inverse_gsm(p, id);
    for (const Word& w : enumerate_words({"a", kSeparator}, 6))
      CHECK(pda::accepts(inv2, w) == pda::accepts(p, w));
  }

  SUBCASE("letters outside the gsm domain kill membership") {
    Gsm part;
    part.inputAlphabet = Alphabet({"a", "b", kSeparator});
    int s = part.add_state("s");
    part.initial = s;
    part.finals = {s};
    part.add_transition(s, "a", s, {"a"});
    part.add_transition(s, kSeparator, s, {kSeparator});
    Npda inv3 = pda::inverse_gsm(p, part);
    for (const Word& w : enumerate_words({"a", "b", kSeparator}, 5)) {
      bool hasB = std::find(w.begin(), w.end(), "b") != w.end();
      if (hasB) CHECK_FALSE(pda::accepts(inv3, w));
    }
  }
}

TEST_CASE("inverse homomorphisms") {
  auto fm = builders::free_monoid_word_problem(std::vector<Letter>{"a"}, true);
  const Npda& p = fm.recognizer->pda();
  SUBCASE("b maps to aa") {
    Npda inv = pda::inverse_homomorphism(
        p, {{"b", {"a", "a"}}, {kSeparator, {kSeparator}}});
    CHECK(pda::accepts(inv, {"b", kSeparator, "b"}));
  }
  SUBCASE("erasing letters grow the preimage") {
    std::map<Letter, Word> h{
        {"a", {"a"}}, {"e", {}}, {kSeparator, {kSeparator}}};
    Npda inv = pda::inverse_homomorphism(p, h);
    for (const Word& w : enumerate_words({"a", "e", kSeparator}, 5)) {
      Word img;
      for (const Letter& l : w)
        img.insert(img.end(), h.at(l).begin(), h.at(l).end());
      bool expect =
          std::count(w.begin(), w.end(), kSeparator) >= 1
              ? pda::accepts(p, img)
              : pda::accepts(p, img);
      CHECK(pda::accepts(inv, w) == expect);
    }
  }
  SUBCASE("identity homomorphism") {
    Npda inv = pda::inverse_homomorphism(
        p, {{"a", {"a"}}, {kSeparator, {kSeparator}}});
    for (const Word& w : enumerate_words({"a", kSeparator}, 6))
      CHECK(pda::accepts(inv, w) == pda::accepts(p, w));
  }
}

TEST_CASE("finite unions") {
  Npda pa = pda::cfg_to_pda([] {
    Cfg g;
    int S = g.add_nonterminal("S");
    g.terminals = Alphabet({"a", "b"});
    g.start = S;
    g.add_production(S, {g.t("a")});
    return g;
  }());
  Npda pb = pda::cfg_to_pda([] {
    Cfg g;
    int S = g.add_nonterminal("S");
    g.terminals = Alphabet({"a", "b"});
    g.start = S;
    g.add_production(S, {g.t("b")});
    return g;
  }());
  Npda u = pda::union_lang({pa, pb});
  for (const Word& w : enumerate_words({"a", "b"}, 4))
    CHECK(pda::accepts(u, w) == (w.size() == 1));

  SUBCASE("union with the empty language changes nothing") {
    Npda none = pda::cfg_to_pda([] {
      Cfg g;
      g.add_nonterminal("S");
      g.terminals = Alphabet({"a", "b"});
      g.start = 0;
      return g;
    }());
    Npda u2 = pda::union_lang({pa, none});
    for (const Word& w : enumerate_words({"a", "b"}, 6))
      CHECK(pda::accepts(u2, w) == pda::accepts(pa, w));
  }
  SUBCASE("empty union list is an input error") {
    CHECK_THROWS_AS(pda::union_lang({}), InputError);
  }
}

TEST_CASE("structural determinism predicate") {
  CHECK(pda::is_deterministic(free_monoid_machine()));
  Npda p;
  p.input = Alphabet({"a"});
  p.bottom = p.add_stack_symbol("Z");
  int s = p.add_state("s");
  p.initial = s;
  p.add_move(s, -1, p.bottom, s, {p.bottom});
  p.add_move(s, -1, p.bottom, s, {p.bottom});
  CHECK_FALSE(pda::is_deterministic(p));
}

TEST_CASE("triple construction") {
  SUBCASE("one-state acceptor of a*") {
    Npda p;
    p.input = Alphabet({"a"});
    p.bottom = p.add_stack_symbol("Z");
    int s = p.add_state("s");
    p.initial = s;
    p.finals = {s};
    p.mode = Npda::AcceptMode::finalStateAndBareBottom;
    p.add_move(s, 0, p.bottom, s, {p.bottom});
    Cfg g = pda::to_cfg(p);
    CykMatcher m(g);
    for (const Word& w : enumerate_words({"a"}, 6)) CHECK(m.member(w));
  }
  SUBCASE("mirror machine agrees on words up to length 6") {
    const Npda& p = free_monoid_machine();
    CykMatcher m(pda::to_cfg(p));
    for (const Word& w : enumerate_words({"a", "b", kSeparator}, 6)) {
      Ternary t = pda::bounded_search(p, p.input.encode(w), 2 * (w.size() + 2));
      REQUIRE(t != Ternary::Unknown);
      CHECK(m.member(w) == (t == Ternary::True));
    }
  }
  SUBCASE("empty language gives an unproductive start") {
    Npda p;
    p.input = Alphabet({"a"});
    p.bottom = p.add_stack_symbol("Z");
    p.initial = p.add_state("s");
    p.mode = Npda::AcceptMode::finalStateAndBareBottom;
    Cfg g = pda::to_cfg(p);
    CHECK(language_up_to(g, 5).empty());
  }
}

TEST_CASE("engine agreement on random small machines") {
  // a slice of the acceptance-suite soundness sweep
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Npda p = test_fixtures::random_small_pda(seed);
    Npda n = pda::normalize(p);
    CHECK(pda::bottom_disciplined(n));
    CykMatcher m(pda::to_cfg(p));
    for (const Word& w : enumerate_words({"a", "b"}, 6)) {
      bool viaCfg = m.member(w);
      Ternary t = pda::bounded_search(p, p.input.encode(w), 2 * (w.size() + 2));
      if (t != Ternary::Unknown) CHECK(viaCfg == (t == Ternary::True));
      Ternary tn = pda::bounded_search(n, n.input.encode(w), 2 * (w.size() + 2));
      if (tn != Ternary::Unknown) CHECK(viaCfg == (tn == Ternary::True));
    }
  }
}
