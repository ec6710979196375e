#include "doctest.h"

#include "sgwp/gsm.hpp"
#include "sgwp/nfa.hpp"
#include "sgwp/semilattice.hpp"

using namespace sgwp;

namespace {

Nfa a_star_sep_a_star() {
  // a* # a*
  Nfa n;
  n.alphabet = Alphabet({"a", kSeparator});
  int s0 = n.add_state("l");
  int s1 = n.add_state("r");
  n.initial = {s0};
  n.finals = {s1};
  n.add_transition(s0, "a", s0);
  n.add_transition(s0, kSeparator, s1);
  n.add_transition(s1, "a", s1);
  return n;
}

SemilatticeOrder two_chain() {
  SemilatticeOrder o;
  o.elements = {"top", "bot"};
  o.meetTable[{"top", "top"}] = "top";
  o.meetTable[{"top", "bot"}] = "bot";
  o.meetTable[{"bot", "top"}] = "bot";
  o.meetTable[{"bot", "bot"}] = "bot";
  return o;
}

}  // namespace

TEST_CASE("nfa acceptance") {
  Nfa n = a_star_sep_a_star();
  CHECK(n.accepts({"a", kSeparator, "a"}));
  CHECK(n.accepts({kSeparator}));
  CHECK_FALSE(n.accepts({"a", "a"}));
  CHECK_THROWS_AS(n.accepts({"a", "b"}), InputError);  // unknown letter
}

TEST_CASE("regular combinators agree with set-level definitions up to length 6") {
  std::vector<Letter> sigma{"a", "b", "c"};
  Nfa x = nfa::from_words(sigma, {{"a"}, {"a", "b"}, {"c", "c"}});
  Nfa y = nfa::from_words(sigma, {{"a", "b"}, {"b"}, {}});
  auto words = enumerate_words(sigma, 6);

  auto in = [](const Nfa& n, const Word& w) { return n.accepts(w); };
  Nfa u = nfa::union_of(x, y);
  Nfa cat = nfa::concat(x, y);
  Nfa st = nfa::star(y);
  Nfa prod = nfa::product(u, st);
  Nfa det = nfa::determinize(cat);

  auto concatMember = [&](const Word& w) {
    for (size_t k = 0; k <= w.size(); ++k) {
      Word l(w.begin(), w.begin() + static_cast<long>(k));
      Word r(w.begin() + static_cast<long>(k), w.end());
      if (x.accepts(l) && y.accepts(r)) return true;
    }
    return false;
  };
  std::function<bool(const Word&)> starMember = [&](const Word& w) -> bool {
    if (w.empty()) return true;
    for (size_t k = 1; k <= w.size(); ++k) {
      Word l(w.begin(), w.begin() + static_cast<long>(k));
      Word r(w.begin() + static_cast<long>(k), w.end());
      if (y.accepts(l) && starMember(r)) return true;
    }
    return false;
  };

  for (const Word& w : words) {
    CHECK(in(u, w) == (x.accepts(w) || y.accepts(w)));
    CHECK(in(cat, w) == concatMember(w));
    CHECK(in(st, w) == starMember(w));
    CHECK(in(prod, w) == (u.accepts(w) && st.accepts(w)));
    CHECK(in(det, w) == cat.accepts(w));
  }
}

TEST_CASE("gsm application") {
  Gsm g;
  g.inputAlphabet = Alphabet({"a", "b"});
  int q = g.add_state("q");
  g.initial = q;
  g.finals = {q};
  g.add_transition(q, "a", q, {"a", "a"});
  g.add_transition(q, "b", q, {"b", "b"});

  auto out = g.apply({"a", "b"});
  REQUIRE(out.has_value());
  CHECK(*out == Word{"a", "a", "b", "b"});
  // applying twice yields the same value
  CHECK(g.apply({"a", "b"}) == out);
  CHECK_FALSE(g.apply({"a", "z"}).has_value());

  // determinism is part of the model
  Gsm d;
  d.inputAlphabet = Alphabet({"a"});
  int s = d.add_state("s");
  d.add_transition(s, "a", s, {});
  CHECK_THROWS_AS(d.add_transition(s, "a", s, {"a"}), InputError);
}

TEST_CASE("gsm terminal output") {
  Gsm g;
  g.inputAlphabet = Alphabet({"a"});
  int q0 = g.add_state("q0");
  int q1 = g.add_state("q1");
  g.initial = q0;
  g.finals = {q1};
  g.add_transition(q0, "a", q1, {"a"});
  g.outputAlphabet.add(kSeparator);
  g.terminalOutput[q1] = {kSeparator};
  CHECK(*g.apply({"a"}) == Word{"a", kSeparator});
  CHECK_FALSE(g.apply({}).has_value());  // run must end in a final state
}

TEST_CASE("content automaton on the two-chain") {
  SemilatticeOrder o = two_chain();
  o.validate();
  std::map<Letter, std::string> origin{{"x", "top"}, {"p", "bot"}};

  Nfa atTop = content_automaton(o, origin, "top");
  CHECK(atTop.accepts({"x"}));
  CHECK_FALSE(atTop.accepts({"x", "p"}));  // the meet drops to the bottom

  Nfa atBot = content_automaton(o, origin, "bot");
  CHECK_FALSE(atBot.accepts({}));  // the start state is never final
  CHECK(atBot.accepts({"x", "p"}));
}

TEST_CASE("content automaton equals the meet fold, exhaustively to length 6") {
  SemilatticeOrder o;
  o.elements = {"1", "2", "3"};
  // the three-element chain 1 > 2 > 3
  for (const std::string& a : o.elements)
    for (const std::string& b : o.elements)
      o.meetTable[{a, b}] = std::max(a, b);
  o.validate();
  std::map<Letter, std::string> origin{{"x", "1"}, {"y", "2"}, {"z", "3"}};
  std::vector<Letter> sigma{"x", "y", "z"};

  for (const std::string& target : o.elements) {
    Nfa n = content_automaton(o, origin, target);
    for (const Word& w : enumerate_words(sigma, 6)) {
      bool expect = false;
      if (!w.empty()) {
        std::string m = origin.at(w[0]);
        for (size_t i = 1; i < w.size(); ++i) m = o.meet(m, origin.at(w[i]));
        expect = m == target;
      }
      CHECK(n.accepts(w) == expect);
    }
  }
}

TEST_CASE("semilattice validation reports broken tables") {
  SemilatticeOrder o = two_chain();
  o.meetTable[{"top", "bot"}] = "top";  // breaks commutativity
  CHECK_THROWS_AS(o.validate(), InputError);
}
