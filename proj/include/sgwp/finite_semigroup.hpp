#ifndef SGWP_FINITE_SEMIGROUP_HPP
#define SGWP_FINITE_SEMIGROUP_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgwp/core.hpp"

namespace sgwp {

// Finite semigroup given by its Cayley table; identity optional.
struct FiniteSemigroup {
  std::vector<std::string> elements;
  std::map<std::pair<std::string, std::string>, std::string> table;
  std::optional<std::string> identity;

  const std::string& product(const std::string& a, const std::string& b) const {
    auto it = table.find({a, b});
    if (it == table.end())
      throw InputError("product undefined for (" + a + ", " + b + ")");
    return it->second;
  }

  std::string product_of(const std::vector<std::string>& xs) const {
    if (xs.empty()) {
      if (!identity) throw InputError("empty product in a semigroup without identity");
      return *identity;
    }
    std::string acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = product(acc, xs[i]);
    return acc;
  }

  bool contains(const std::string& x) const {
    return std::find(elements.begin(), elements.end(), x) != elements.end();
  }

  void validate() const {
    for (const auto& a : elements)
      for (const auto& b : elements) {
        if (!contains(product(a, b)))
          throw InputError("product leaves the element set at (" + a + "," + b + ")");
        for (const auto& c : elements)
          if (product(product(a, b), c) != product(a, product(b, c)))
            throw InputError("table is not associative at the triple (" + a +
                             "," + b + "," + c + ")");
      }
    if (identity) {
      if (!contains(*identity)) throw InputError("identity not an element");
      for (const auto& a : elements)
        if (product(*identity, a) != a || product(a, *identity) != a)
          throw InputError("declared identity fails at " + a);
    }
  }

  // Closure of a subset under the table.
  std::set<std::string> closure(const std::set<std::string>& gens) const {
    std::set<std::string> cl = gens;
    bool grown = true;
    while (grown) {
      grown = false;
      std::vector<std::string> cur(cl.begin(), cl.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (cl.insert(product(a, b)).second) grown = true;
    }
    return cl;
  }

  bool generated_by(const std::set<std::string>& gens) const {
    return closure(gens).size() == elements.size();
  }
};

// S is decomposable iff S^2 = S.
inline bool is_decomposable(const FiniteSemigroup& t) {
  std::set<std::string> products;
  for (const auto& a : t.elements)
    for (const auto& b : t.elements) products.insert(t.product(a, b));
  return products.size() == t.elements.size();
}

namespace fixtures {

inline FiniteSemigroup cyclic2() {
  FiniteSemigroup s;
  s.elements = {"e", "a"};
  s.identity = "e";
  s.table[{"e", "e"}] = "e";
  s.table[{"e", "a"}] = "a";
  s.table[{"a", "e"}] = "a";
  s.table[{"a", "a"}] = "e";
  return s;
}

inline FiniteSemigroup right_zero2() {
  FiniteSemigroup s;
  s.elements = {"r", "s"};
  s.table[{"r", "r"}] = "r";
  s.table[{"r", "s"}] = "s";
  s.table[{"s", "r"}] = "r";
  s.table[{"s", "s"}] = "s";
  return s;
}

inline FiniteSemigroup null2() {
  FiniteSemigroup s;
  s.elements = {"0", "n"};
  s.table[{"0", "0"}] = "0";
  s.table[{"0", "n"}] = "0";
  s.table[{"n", "0"}] = "0";
  s.table[{"n", "n"}] = "0";
  return s;
}

inline FiniteSemigroup trivial_monoid() {
  FiniteSemigroup s;
  s.elements = {"1"};
  s.identity = "1";
  s.table[{"1", "1"}] = "1";
  return s;
}

}  // namespace fixtures
}  // namespace sgwp

#endif  // SGWP_FINITE_SEMIGROUP_HPP
