#ifndef SGWP_CFG_HPP
#define SGWP_CFG_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sgwp/core.hpp"

namespace sgwp {

// Context-free grammar over named terminals.
struct Cfg {
  struct Symbol {
    bool terminal = false;
    int id = -1;  // terminal letter id or nonterminal index
    bool operator==(const Symbol& o) const {
      return terminal == o.terminal && id == o.id;
    }
  };
  using Body = std::vector<Symbol>;

  std::vector<std::string> nonterminalNames;
  Alphabet terminals;
  std::vector<std::vector<Body>> productions;  // per nonterminal
  int start = 0;

  int add_nonterminal(std::string name) {
    nonterminalNames.push_back(std::move(name));
    productions.emplace_back();
    return static_cast<int>(nonterminalNames.size()) - 1;
  }

  void add_production(int lhs, Body body) {
    for (const Symbol& s : body) {
      if (s.terminal) {
        if (s.id < 0 || s.id >= static_cast<int>(terminals.size()))
          throw InputError("production uses undeclared terminal");
      } else if (s.id < 0 || s.id >= static_cast<int>(nonterminalNames.size())) {
        throw InputError("production uses undeclared nonterminal");
      }
    }
    productions[static_cast<size_t>(lhs)].push_back(std::move(body));
  }

  Symbol t(const Letter& l) const { return Symbol{true, terminals.id(l)}; }
  static Symbol nt(int i) { return Symbol{false, i}; }

  size_t production_count() const {
    size_t n = 0;
    for (const auto& ps : productions) n += ps.size();
    return n;
  }
};

// Chomsky normal form: binary productions A -> B C, terminal productions
// A -> a, plus an epsilon flag at the start symbol only.
struct CnfGrammar {
  int nonterminalCount = 0;
  int start = 0;
  bool startNullable = false;
  Alphabet terminals;
  std::vector<std::array<int, 3>> binary;            // {A, B, C}
  std::vector<std::pair<int, int>> terminal;         // {A, letter id}
  std::vector<std::string> names;                    // debug names
};

namespace detail {

class BitSet {
 public:
  explicit BitSet(size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(size_t i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  bool test(size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  bool empty() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

 private:
  std::vector<uint64_t> words_;
};

}  // namespace detail

inline CnfGrammar to_cnf(const Cfg& g) {
  using Body = Cfg::Body;
  using Symbol = Cfg::Symbol;

  // Working copy with a fresh start symbol.
  std::vector<std::string> names = g.nonterminalNames;
  std::vector<std::vector<Body>> prods = g.productions;
  auto fresh = [&](std::string n) {
    names.push_back(std::move(n));
    prods.emplace_back();
    return static_cast<int>(names.size()) - 1;
  };
  int start = fresh("S'");
  prods[static_cast<size_t>(start)].push_back(Body{Cfg::nt(g.start)});

  // TERM: terminals only in length-1 bodies.
  std::map<int, int> termNt;
  auto termFor = [&](int letterId) {
    auto it = termNt.find(letterId);
    if (it != termNt.end()) return it->second;
    int n = fresh("T<" + g.terminals.name(letterId) + ">");
    prods[static_cast<size_t>(n)].push_back(Body{Symbol{true, letterId}});
    termNt.emplace(letterId, n);
    return n;
  };
  for (size_t a = 0; a < prods.size(); ++a)
    for (Body& b : prods[a])
      if (b.size() >= 2)
        for (Symbol& s : b)
          if (s.terminal) s = Cfg::nt(termFor(s.id));

  // BIN: bodies of length <= 2.
  for (size_t a = 0; a < prods.size(); ++a) {
    for (size_t i = 0; i < prods[a].size(); ++i) {
      while (prods[a][i].size() > 2) {
        Body& b = prods[a][i];
        int n = fresh("B<" + names[a] + ">");
        Body tail(b.begin() + 1, b.end());
        b = Body{b[0], Cfg::nt(n)};
        prods[static_cast<size_t>(n)].push_back(std::move(tail));
      }
    }
  }

  // DEL: nullable elimination.
  size_t count = names.size();
  std::vector<bool> nullable(count, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a < count; ++a) {
      if (nullable[a]) continue;
      for (const Body& b : prods[a]) {
        bool all = true;
        for (const Symbol& s : b)
          if (s.terminal || !nullable[static_cast<size_t>(s.id)]) {
            all = false;
            break;
          }
        if (all) {
          nullable[a] = true;
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<std::vector<Body>> noEps(count);
  for (size_t a = 0; a < count; ++a) {
    std::set<std::vector<std::pair<bool, int>>> seen;
    auto emit = [&](const Body& b) {
      if (b.empty()) return;
      std::vector<std::pair<bool, int>> key;
      for (const Symbol& s : b) key.emplace_back(s.terminal, s.id);
      if (seen.insert(key).second) noEps[a].push_back(b);
    };
    for (const Body& b : prods[a]) {
      if (b.empty()) continue;
      if (b.size() == 1) {
        emit(b);
      } else {  // length 2 after BIN
        emit(b);
        if (!b[0].terminal && nullable[static_cast<size_t>(b[0].id)])
          emit(Body{b[1]});
        if (!b[1].terminal && nullable[static_cast<size_t>(b[1].id)])
          emit(Body{b[0]});
      }
    }
  }

  // UNIT: closure over unit chains.
  std::vector<std::set<int>> unitReach(count);
  for (size_t a = 0; a < count; ++a) {
    std::deque<int> todo{static_cast<int>(a)};
    unitReach[a].insert(static_cast<int>(a));
    while (!todo.empty()) {
      int u = todo.front();
      todo.pop_front();
      for (const Body& b : noEps[static_cast<size_t>(u)])
        if (b.size() == 1 && !b[0].terminal)
          if (unitReach[a].insert(b[0].id).second) todo.push_back(b[0].id);
    }
  }

  CnfGrammar cnf;
  cnf.nonterminalCount = static_cast<int>(count);
  cnf.start = start;
  cnf.startNullable = nullable[static_cast<size_t>(start)];
  cnf.terminals = g.terminals;
  cnf.names = names;
  std::set<std::array<int, 3>> binSeen;
  std::set<std::pair<int, int>> termSeen;
  for (size_t a = 0; a < count; ++a)
    for (int u : unitReach[a])
      for (const Body& b : noEps[static_cast<size_t>(u)]) {
        if (b.size() == 2) {
          std::array<int, 3> p{static_cast<int>(a), b[0].id, b[1].id};
          if (binSeen.insert(p).second) cnf.binary.push_back(p);
        } else if (b[0].terminal) {
          std::pair<int, int> p{static_cast<int>(a), b[0].id};
          if (termSeen.insert(p).second) cnf.terminal.push_back(p);
        }
      }
  return cnf;
}

// CYK table runner; build once per grammar and reuse across words.
class CykMatcher {
 public:
  explicit CykMatcher(const Cfg& g) : CykMatcher(to_cnf(g)) {}
  explicit CykMatcher(CnfGrammar cnf) : cnf_(std::move(cnf)) {
    byFirst_.assign(static_cast<size_t>(cnf_.nonterminalCount), {});
    for (const auto& p : cnf_.binary)
      byFirst_[static_cast<size_t>(p[1])].emplace_back(p[2], p[0]);
    byLetter_.assign(cnf_.terminals.size(), {});
    for (const auto& [a, l] : cnf_.terminal)
      byLetter_[static_cast<size_t>(l)].push_back(a);
  }

  const CnfGrammar& grammar() const { return cnf_; }

  bool member(const Word& w) const {
    for (const Letter& l : w)
      if (!cnf_.terminals.contains(l))
        throw InputError("unknown terminal: " + l);
    if (w.empty()) return cnf_.startNullable;
    size_t n = w.size();
    size_t N = static_cast<size_t>(cnf_.nonterminalCount);
    // cell(i, len) for substring starting at i of length len
    std::vector<detail::BitSet> bits(n * (n + 1), detail::BitSet(N));
    std::vector<std::vector<int>> list(n * (n + 1));
    auto at = [&](size_t i, size_t len) -> size_t { return len * n + i; };
    for (size_t i = 0; i < n; ++i) {
      size_t c = at(i, 1);
      for (int a : byLetter_[static_cast<size_t>(cnf_.terminals.id(w[i]))])
        if (!bits[c].test(static_cast<size_t>(a))) {
          bits[c].set(static_cast<size_t>(a));
          list[c].push_back(a);
        }
    }
    for (size_t len = 2; len <= n; ++len) {
      for (size_t i = 0; i + len <= n; ++i) {
        size_t c = at(i, len);
        for (size_t k = 1; k < len; ++k) {
          size_t lc = at(i, k), rc = at(i + k, len - k);
          if (list[rc].empty()) continue;
          for (int b : list[lc])
            for (const auto& [cSym, head] : byFirst_[static_cast<size_t>(b)])
              if (bits[rc].test(static_cast<size_t>(cSym)) &&
                  !bits[c].test(static_cast<size_t>(head))) {
                bits[c].set(static_cast<size_t>(head));
                list[c].push_back(head);
              }
        }
      }
    }
    return bits[at(0, n)].test(static_cast<size_t>(cnf_.start));
  }

 private:
  CnfGrammar cnf_;
  std::vector<std::vector<std::pair<int, int>>> byFirst_;  // B -> [(C, A)]
  std::vector<std::vector<int>> byLetter_;
};

// Membership through a one-shot matcher; prefer a cached CykMatcher when
// querying the same grammar repeatedly.
inline bool cyk_member(const Cfg& g, const Word& w) {
  return CykMatcher(g).member(w);
}

// Applies a terminal homomorphism h to the generated language by replacing
// every terminal occurrence with its image word. h must be total on the
// grammar's terminals; images may be empty.
inline Cfg apply_homomorphism(const Cfg& g, const std::map<Letter, Word>& h) {
  std::vector<Letter> targetLetters;
  for (const Letter& l : g.terminals.names()) {
    auto it = h.find(l);
    if (it == h.end())
      throw InputError("homomorphism image missing for terminal " + l);
    for (const Letter& m : it->second)
      if (std::find(targetLetters.begin(), targetLetters.end(), m) ==
          targetLetters.end())
        targetLetters.push_back(m);
  }
  Cfg out;
  out.nonterminalNames = g.nonterminalNames;
  out.productions.assign(g.productions.size(), {});
  out.terminals = Alphabet(targetLetters);
  out.start = g.start;
  for (size_t a = 0; a < g.productions.size(); ++a)
    for (const Cfg::Body& b : g.productions[a]) {
      Cfg::Body nb;
      for (const Cfg::Symbol& s : b) {
        if (!s.terminal) {
          nb.push_back(s);
        } else {
          for (const Letter& m : h.at(g.terminals.name(s.id)))
            nb.push_back(Cfg::Symbol{true, out.terminals.id(m)});
        }
      }
      out.productions[a].push_back(std::move(nb));
    }
  return out;
}

// All generated words of length <= maxLen, by bottom-up dynamic programming
// over the CNF form. Intended for small fixtures and tests.
inline std::set<Word> language_up_to(const Cfg& g, size_t maxLen) {
  CnfGrammar cnf = to_cnf(g);
  size_t N = static_cast<size_t>(cnf.nonterminalCount);
  // words[A][len] -> set of words of that exact length
  std::vector<std::vector<std::set<Word>>> words(
      N, std::vector<std::set<Word>>(maxLen + 1));
  for (const auto& [a, l] : cnf.terminal)
    if (maxLen >= 1)
      words[static_cast<size_t>(a)][1].insert(Word{cnf.terminals.name(l)});
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cnf.binary)
      for (size_t lb = 1; lb + 1 <= maxLen; ++lb)
        for (const Word& wb : words[static_cast<size_t>(p[1])][lb])
          for (size_t lc = 1; lb + lc <= maxLen; ++lc)
            for (const Word& wc : words[static_cast<size_t>(p[2])][lc])
              if (words[static_cast<size_t>(p[0])][lb + lc]
                      .insert(concat(wb, wc))
                      .second)
                changed = true;
  }
  std::set<Word> out;
  if (cnf.startNullable) out.insert(Word{});
  for (size_t len = 1; len <= maxLen; ++len)
    out.insert(words[static_cast<size_t>(cnf.start)][len].begin(),
               words[static_cast<size_t>(cnf.start)][len].end());
  return out;
}

}  // namespace sgwp

#endif  // SGWP_CFG_HPP
