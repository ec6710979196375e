#ifndef SGWP_SEMILATTICE_HPP
#define SGWP_SEMILATTICE_HPP

#include <map>
#include <string>
#include <vector>

#include "sgwp/core.hpp"
#include "sgwp/nfa.hpp"

namespace sgwp {

// A finite meet-semilattice given by its elements and meet table.
struct SemilatticeOrder {
  std::vector<std::string> elements;
  std::map<std::pair<std::string, std::string>, std::string> meetTable;

  const std::string& meet(const std::string& a, const std::string& b) const {
    auto it = meetTable.find({a, b});
    if (it == meetTable.end())
      throw InputError("meet undefined for (" + a + ", " + b + ")");
    return it->second;
  }

  bool contains(const std::string& a) const {
    return std::find(elements.begin(), elements.end(), a) != elements.end();
  }

  // a >= b iff a /\ b == b
  bool geq(const std::string& a, const std::string& b) const {
    return meet(a, b) == b;
  }

  // Meet must be associative, commutative and idempotent; exhaustively
  // checkable since the order is finite.
  void validate() const {
    for (const auto& a : elements) {
      if (meet(a, a) != a)
        throw InputError("meet not idempotent at " + a);
      for (const auto& b : elements) {
        if (!contains(meet(a, b)))
          throw InputError("meet leaves the element set at (" + a + "," + b + ")");
        if (meet(a, b) != meet(b, a))
          throw InputError("meet not commutative at (" + a + "," + b + ")");
        for (const auto& c : elements)
          if (meet(meet(a, b), c) != meet(a, meet(b, c)))
            throw InputError("meet not associative at (" + a + "," + b + "," +
                             c + ")");
      }
    }
  }
};

// Deterministic automaton over the full alphabet whose states are the
// semilattice elements plus an adjoined top element as start state; the
// transition on a letter takes the meet with the letter's origin vertex.
// Accepts w iff the meet of the origins of w's letters equals `target`.
// The empty word is rejected: the start state (top) is never final.
inline Nfa content_automaton(const SemilatticeOrder& order,
                             const std::map<Letter, std::string>& letterOrigin,
                             const std::string& target) {
  if (!order.contains(target))
    throw InputError("content automaton target not in the semilattice");
  std::vector<Letter> letters;
  for (const auto& [l, origin] : letterOrigin) {
    if (!order.contains(origin))
      throw InputError("letter " + l + " has origin outside the semilattice");
    letters.push_back(l);
  }
  Nfa n;
  n.alphabet = Alphabet(letters);
  int top = n.add_state("top");
  n.initial.insert(top);
  std::map<std::string, int> index;
  for (const auto& e : order.elements) index[e] = n.add_state(e);
  for (const auto& [l, origin] : letterOrigin) {
    n.add_transition(top, l, index.at(origin));
    for (const auto& e : order.elements)
      n.add_transition(index.at(e), l, index.at(order.meet(e, origin)));
  }
  n.finals.insert(index.at(target));
  return n;
}

}  // namespace sgwp

#endif  // SGWP_SEMILATTICE_HPP
