#ifndef SGWP_TESTS_FIXTURES_HPP
#define SGWP_TESTS_FIXTURES_HPP

#include <random>

#include "sgwp/sgwp.hpp"

namespace sgwp::test_fixtures {

// Grammar for { a, b, c }* minus { a^n b^n c^n }: the union of the words
// that leave a*b*c* and the blocks with mismatched a/b or b/c counts.
inline Cfg complement_of_abc_counting() {
  Cfg g;
  int S = g.add_nonterminal("S");
  int W = g.add_nonterminal("W");
  int R = g.add_nonterminal("R");
  int D = g.add_nonterminal("D");
  int U = g.add_nonterminal("U");
  int M = g.add_nonterminal("M");
  int M1 = g.add_nonterminal("M1");
  int M2 = g.add_nonterminal("M2");
  int V = g.add_nonterminal("V");
  int N = g.add_nonterminal("N");
  int N1 = g.add_nonterminal("N1");
  int N2 = g.add_nonterminal("N2");
  int As = g.add_nonterminal("As");
  int Bs = g.add_nonterminal("Bs");
  int Cs = g.add_nonterminal("Cs");
  g.terminals = Alphabet({"a", "b", "c"});
  g.start = S;
  auto t = [&](const char* l) { return g.t(l); };
  auto nt = Cfg::nt;

  g.add_production(S, {nt(W)});
  g.add_production(S, {nt(U)});
  g.add_production(S, {nt(V)});

  // W: any word containing a descent ba, ca or cb
  g.add_production(W, {nt(R), nt(D), nt(R)});
  g.add_production(D, {t("b"), t("a")});
  g.add_production(D, {t("c"), t("a")});
  g.add_production(D, {t("c"), t("b")});
  for (const char* l : {"a", "b", "c"}) g.add_production(R, {t(l), nt(R)});
  g.add_production(R, {});

  g.add_production(As, {t("a"), nt(As)});
  g.add_production(As, {});
  g.add_production(Bs, {t("b"), nt(Bs)});
  g.add_production(Bs, {});
  g.add_production(Cs, {t("c"), nt(Cs)});
  g.add_production(Cs, {});

  // U: a^i b^j c^k with i != j
  g.add_production(U, {nt(M), nt(Cs)});
  g.add_production(M, {nt(M1)});
  g.add_production(M, {nt(M2)});
  g.add_production(M1, {t("a"), nt(M1), t("b")});
  g.add_production(M1, {t("a"), nt(As)});
  g.add_production(M2, {t("a"), nt(M2), t("b")});
  g.add_production(M2, {nt(Bs), t("b")});

  // V: a^i b^j c^k with j != k
  g.add_production(V, {nt(As), nt(N)});
  g.add_production(N, {nt(N1)});
  g.add_production(N, {nt(N2)});
  g.add_production(N1, {t("b"), nt(N1), t("c")});
  g.add_production(N1, {t("b"), nt(Bs)});
  g.add_production(N2, {t("b"), nt(N2), t("c")});
  g.add_production(N2, {nt(Cs), t("c")});
  return g;
}

// Direct counting predicate for the complement language.
inline bool outside_abc_counting(const Word& w) {
  size_t i = 0, a = 0, b = 0, c = 0;
  while (i < w.size() && w[i] == "a") ++a, ++i;
  while (i < w.size() && w[i] == "b") ++b, ++i;
  while (i < w.size() && w[i] == "c") ++c, ++i;
  if (i != w.size()) return true;  // not of shape a*b*c*
  return !(a == b && b == c);
}

// Grammar for { x w y : w a palindrome over {a,b} }.
inline Cfg palindrome_marked() {
  Cfg g;
  int S = g.add_nonterminal("S");
  int P = g.add_nonterminal("P");
  g.terminals = Alphabet({"a", "b", "x", "y"});
  g.start = S;
  g.add_production(S, {g.t("x"), Cfg::nt(P), g.t("y")});
  g.add_production(P, {});
  g.add_production(P, {g.t("a")});
  g.add_production(P, {g.t("b")});
  g.add_production(P, {g.t("a"), Cfg::nt(P), g.t("a")});
  g.add_production(P, {g.t("b"), Cfg::nt(P), g.t("b")});
  return g;
}

// The palindrome-marked rewriting system over {a,b,x,y,z}.
inline MonadicRewritingSystem palindrome_system() {
  MonadicRewritingSystem rs;
  rs.alphabet = {"a", "b", "x", "y", "z"};
  rs.lhsLanguages.emplace("z", LhsDescriptor(palindrome_marked()));
  rs.confluentAsserted = true;
  rs.validate();
  return rs;
}

// { (a b^n c^n d, z) } over {a,b,c,d,z}.
inline MonadicRewritingSystem non_automatic_system() {
  Cfg g;
  int S = g.add_nonterminal("S");
  int M = g.add_nonterminal("M");
  g.terminals = Alphabet({"a", "b", "c", "d"});
  g.start = S;
  g.add_production(S, {g.t("a"), Cfg::nt(M), g.t("d")});
  g.add_production(M, {});
  g.add_production(M, {g.t("b"), Cfg::nt(M), g.t("c")});
  MonadicRewritingSystem rs;
  rs.alphabet = {"a", "b", "c", "d", "z"};
  rs.lhsLanguages.emplace("z", LhsDescriptor(g));
  rs.confluentAsserted = true;
  rs.validate();
  return rs;
}

// { (x w y, z) : w in the complement of a^n b^n c^n } over {a,b,c,x,y,z}.
inline MonadicRewritingSystem no_cf_cross_section_system() {
  Cfg inner = complement_of_abc_counting();
  Cfg g;
  int S = g.add_nonterminal("S'");
  int off = 1;
  for (const auto& n : inner.nonterminalNames) g.add_nonterminal(n);
  g.terminals = Alphabet({"a", "b", "c", "x", "y"});
  g.start = S;
  g.add_production(S, {g.t("x"), Cfg::nt(inner.start + off), g.t("y")});
  for (size_t a = 0; a < inner.productions.size(); ++a)
    for (const Cfg::Body& b : inner.productions[a]) {
      Cfg::Body nb;
      for (const Cfg::Symbol& s : b)
        nb.push_back(s.terminal ? g.t(inner.terminals.name(s.id))
                                : Cfg::nt(s.id + off));
      g.add_production(static_cast<int>(a) + off, std::move(nb));
    }
  MonadicRewritingSystem rs;
  rs.alphabet = {"a", "b", "c", "x", "y", "z"};
  rs.lhsLanguages.emplace("z", LhsDescriptor(g));
  rs.confluentAsserted = true;
  rs.validate();
  return rs;
}

// Bicyclic monoid as a rewriting system: { bc -> eps }.
inline MonadicRewritingSystem bicyclic_system() {
  MonadicRewritingSystem rs;
  rs.alphabet = {"b", "c"};
  rs.lhsLanguages.emplace("", LhsDescriptor(std::set<Word>{{"b", "c"}}));
  rs.confluentAsserted = true;
  rs.validate();
  return rs;
}

// Bicyclic monoid as BR(trivial monoid, id).
inline BruckReillySpec bicyclic_br_spec() {
  BruckReillySpec spec;
  spec.base = builders::finite_word_problem(fixtures::trivial_monoid(), {}, true);
  return spec;
}

inline BruckReillySpec br_c2_spec() {
  BruckReillySpec spec;
  spec.base = builders::finite_word_problem(fixtures::cyclic2(), {"a"}, true);
  spec.phi["a"] = {"a"};
  return spec;
}

// The two-vertex semilattice with the free group on x,y on top of the
// integers generated by +1 (p) and -1 (q).
inline SemilatticeSpec semilattice_spec() {
  SemilatticeSpec spec;
  spec.order.elements = {"top", "bot"};
  spec.order.meetTable[{"top", "top"}] = "top";
  spec.order.meetTable[{"top", "bot"}] = "bot";
  spec.order.meetTable[{"bot", "top"}] = "bot";
  spec.order.meetTable[{"bot", "bot"}] = "bot";
  spec.components.emplace("top", builders::free_group_word_problem(2));
  spec.components.emplace("bot",
                          builders::free_group_word_problem({"p"}, {"q"}));
  spec.homs[{"top", "bot"}] = {
      {"x", {"p"}}, {"y", {"q"}}, {"X", {"q"}}, {"Y", {"p"}}};
  return spec;
}

// Rees matrix semigroup over C2 with I = Lambda = {1,2}, P = [[e,e],[e,a]],
// and all eight generator triples.
inline ReesMatrixSpec rees_c2_spec() {
  ReesMatrixSpec spec;
  spec.base = builders::finite_word_problem(fixtures::cyclic2(), {"e", "a"}, false);
  spec.rows = {"1", "2"};
  spec.columns = {"1", "2"};
  spec.sandwich[{"1", "1"}] = {"e"};
  spec.sandwich[{"1", "2"}] = {"e"};
  spec.sandwich[{"2", "1"}] = {"e"};
  spec.sandwich[{"2", "2"}] = {"a"};
  for (const char* i : {"1", "2"})
    for (const char* x : {"e", "a"})
      for (const char* l : {"1", "2"})
        spec.generators.push_back({i, x, l});
  return spec;
}

// Seeded random small machines for the engine soundness checks.
inline Npda random_small_pda(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  };
  Npda p;
  p.input = Alphabet({"a", "b"});
  p.bottom = p.add_stack_symbol("Z");
  size_t nSyms = 1 + pick(2);  // 1 or 2 symbols besides the bottom
  for (size_t i = 0; i < nSyms; ++i)
    p.add_stack_symbol("G" + std::to_string(i));
  size_t nStates = 1 + pick(4);
  for (size_t i = 0; i < nStates; ++i) p.add_state("q" + std::to_string(i));
  p.initial = 0;
  for (size_t i = 0; i < nStates; ++i)
    if (pick(2)) p.finals.insert(static_cast<int>(i));
  size_t modePick = pick(3);
  p.mode = modePick == 0   ? Npda::AcceptMode::finalState
           : modePick == 1 ? Npda::AcceptMode::emptyStack
                           : Npda::AcceptMode::finalStateAndBareBottom;
  size_t nMoves = 3 + pick(10);
  for (size_t i = 0; i < nMoves; ++i) {
    int from = static_cast<int>(pick(nStates));
    int in = static_cast<int>(pick(3)) - 1;  // -1, a, b
    int top = static_cast<int>(pick(nSyms + 1));
    int to = static_cast<int>(pick(nStates));
    std::vector<int> push;
    size_t len = pick(3);
    for (size_t j = 0; j < len; ++j)
      push.push_back(1 + static_cast<int>(pick(nSyms)));  // never the bottom
    if (top == p.bottom) push.push_back(p.bottom);        // keep it buried
    p.add_move(from, in, top, to, std::move(push));
  }
  p.deterministicFlag = pda::is_deterministic(p);
  return p;
}

}  // namespace sgwp::test_fixtures

#endif  // SGWP_TESTS_FIXTURES_HPP
