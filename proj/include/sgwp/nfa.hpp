#ifndef SGWP_NFA_HPP
#define SGWP_NFA_HPP

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sgwp/core.hpp"

namespace sgwp {

// Nondeterministic finite automaton over named letters, with epsilon moves.
struct Nfa {
  std::vector<std::string> stateNames;
  Alphabet alphabet;
  // transitions[state][letterId] -> successor set; epsilon[state] -> set
  std::vector<std::map<int, std::set<int>>> transitions;
  std::vector<std::set<int>> epsilon;
  std::set<int> initial;
  std::set<int> finals;

  int add_state(std::string name) {
    stateNames.push_back(std::move(name));
    transitions.emplace_back();
    epsilon.emplace_back();
    return static_cast<int>(stateNames.size()) - 1;
  }

  void add_transition(int from, const Letter& letter, int to) {
    transitions[static_cast<size_t>(from)][alphabet.id(letter)].insert(to);
  }

  void add_epsilon(int from, int to) {
    epsilon[static_cast<size_t>(from)].insert(to);
  }

  size_t size() const { return stateNames.size(); }

  std::set<int> eps_closure(std::set<int> states) const {
    std::deque<int> todo(states.begin(), states.end());
    while (!todo.empty()) {
      int s = todo.front();
      todo.pop_front();
      for (int t : epsilon[static_cast<size_t>(s)])
        if (states.insert(t).second) todo.push_back(t);
    }
    return states;
  }

  bool accepts(const Word& w) const {
    std::vector<int> ids = alphabet.encode(w);  // throws on unknown letter
    std::set<int> cur = eps_closure(initial);
    for (int a : ids) {
      std::set<int> next;
      for (int s : cur) {
        auto it = transitions[static_cast<size_t>(s)].find(a);
        if (it != transitions[static_cast<size_t>(s)].end())
          next.insert(it->second.begin(), it->second.end());
      }
      cur = eps_closure(std::move(next));
      if (cur.empty()) return false;
    }
    for (int s : cur)
      if (finals.count(s)) return true;
    return false;
  }
};

namespace nfa {

inline Nfa empty_language(const std::vector<Letter>& letters) {
  Nfa n;
  n.alphabet = Alphabet(letters);
  int s = n.add_state("q0");
  n.initial.insert(s);
  return n;
}

inline Nfa from_word(const std::vector<Letter>& letters, const Word& w) {
  Nfa n;
  n.alphabet = Alphabet(letters);
  int prev = n.add_state("q0");
  n.initial.insert(prev);
  for (size_t i = 0; i < w.size(); ++i) {
    int s = n.add_state("q" + std::to_string(i + 1));
    n.add_transition(prev, w[i], s);
    prev = s;
  }
  n.finals.insert(prev);
  return n;
}

inline Nfa from_words(const std::vector<Letter>& letters,
                      const std::vector<Word>& ws) {
  Nfa n;
  n.alphabet = Alphabet(letters);
  int root = n.add_state("root");
  n.initial.insert(root);
  for (size_t k = 0; k < ws.size(); ++k) {
    int prev = root;
    for (size_t i = 0; i < ws[k].size(); ++i) {
      int s = n.add_state("w" + std::to_string(k) + "." + std::to_string(i));
      n.add_transition(prev, ws[k][i], s);
      prev = s;
    }
    n.finals.insert(prev);
  }
  return n;
}

// Copies `src` into `dst`, returning the state offset.
inline int embed(Nfa& dst, const Nfa& src) {
  int offset = static_cast<int>(dst.size());
  for (size_t s = 0; s < src.size(); ++s)
    dst.add_state(src.stateNames[s]);
  for (size_t s = 0; s < src.size(); ++s) {
    for (const auto& [a, tos] : src.transitions[s])
      for (int t : tos)
        dst.add_transition(static_cast<int>(s) + offset,
                           src.alphabet.name(a), t + offset);
    for (int t : src.epsilon[s])
      dst.add_epsilon(static_cast<int>(s) + offset, t + offset);
  }
  return offset;
}

inline std::vector<Letter> merged_letters(const Nfa& a, const Nfa& b) {
  std::vector<Letter> ls = a.alphabet.names();
  for (const Letter& l : b.alphabet.names())
    if (std::find(ls.begin(), ls.end(), l) == ls.end()) ls.push_back(l);
  return ls;
}

inline Nfa union_of(const Nfa& a, const Nfa& b) {
  Nfa n;
  n.alphabet = Alphabet(merged_letters(a, b));
  int root = n.add_state("u");
  n.initial.insert(root);
  int oa = embed(n, a);
  int ob = embed(n, b);
  for (int s : a.initial) n.add_epsilon(root, s + oa);
  for (int s : b.initial) n.add_epsilon(root, s + ob);
  for (int s : a.finals) n.finals.insert(s + oa);
  for (int s : b.finals) n.finals.insert(s + ob);
  return n;
}

inline Nfa concat(const Nfa& a, const Nfa& b) {
  Nfa n;
  n.alphabet = Alphabet(merged_letters(a, b));
  int oa = embed(n, a);
  int ob = embed(n, b);
  for (int s : a.initial) n.initial.insert(s + oa);
  for (int f : a.finals)
    for (int s : b.initial) n.add_epsilon(f + oa, s + ob);
  for (int s : b.finals) n.finals.insert(s + ob);
  return n;
}

inline Nfa star(const Nfa& a) {
  Nfa n;
  n.alphabet = a.alphabet;
  int root = n.add_state("s");
  n.initial.insert(root);
  n.finals.insert(root);
  int oa = embed(n, a);
  for (int s : a.initial) n.add_epsilon(root, s + oa);
  for (int f : a.finals) n.add_epsilon(f + oa, root);
  return n;
}

// Letter-synchronized product (intersection). Epsilon moves are advanced
// one component at a time.
inline Nfa product(const Nfa& a, const Nfa& b) {
  Nfa n;
  n.alphabet = Alphabet(merged_letters(a, b));
  std::map<std::pair<int, int>, int> index;
  std::deque<std::pair<int, int>> todo;
  auto state = [&](int x, int y) {
    auto it = index.find({x, y});
    if (it != index.end()) return it->second;
    int s = n.add_state("(" + a.stateNames[static_cast<size_t>(x)] + "," +
                        b.stateNames[static_cast<size_t>(y)] + ")");
    index.emplace(std::make_pair(x, y), s);
    todo.push_back({x, y});
    return s;
  };
  for (int x : a.initial)
    for (int y : b.initial) n.initial.insert(state(x, y));
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    int from = index.at({x, y});
    if (a.finals.count(x) && b.finals.count(y)) n.finals.insert(from);
    for (int t : a.epsilon[static_cast<size_t>(x)])
      n.add_epsilon(from, state(t, y));
    for (int t : b.epsilon[static_cast<size_t>(y)])
      n.add_epsilon(from, state(x, t));
    for (const auto& [la, tos] : a.transitions[static_cast<size_t>(x)]) {
      const Letter& name = a.alphabet.name(la);
      if (!b.alphabet.contains(name)) continue;
      auto it = b.transitions[static_cast<size_t>(y)].find(b.alphabet.id(name));
      if (it == b.transitions[static_cast<size_t>(y)].end()) continue;
      for (int ta : tos)
        for (int tb : it->second) n.add_transition(from, name, state(ta, tb));
    }
  }
  return n;
}

// Subset construction; explicit set-of-names state labels.
inline Nfa determinize(const Nfa& a) {
  Nfa n;
  n.alphabet = a.alphabet;
  std::map<std::set<int>, int> index;
  std::deque<std::set<int>> todo;
  auto state = [&](const std::set<int>& ss) {
    auto it = index.find(ss);
    if (it != index.end()) return it->second;
    std::string name = "{";
    for (int s : ss) name += a.stateNames[static_cast<size_t>(s)] + ",";
    name += "}";
    int id = n.add_state(name);
    index.emplace(ss, id);
    todo.push_back(ss);
    return id;
  };
  n.initial.insert(state(a.eps_closure(a.initial)));
  while (!todo.empty()) {
    std::set<int> ss = todo.front();
    todo.pop_front();
    int from = index.at(ss);
    for (int s : ss)
      if (a.finals.count(s)) {
        n.finals.insert(from);
        break;
      }
    for (size_t la = 0; la < a.alphabet.size(); ++la) {
      std::set<int> next;
      for (int s : ss) {
        auto it = a.transitions[static_cast<size_t>(s)].find(static_cast<int>(la));
        if (it != a.transitions[static_cast<size_t>(s)].end())
          next.insert(it->second.begin(), it->second.end());
      }
      if (next.empty()) continue;
      n.add_transition(from, a.alphabet.name(static_cast<int>(la)),
                       state(a.eps_closure(next)));
    }
  }
  return n;
}

}  // namespace nfa
}  // namespace sgwp

#endif  // SGWP_NFA_HPP
