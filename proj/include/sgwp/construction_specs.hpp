#ifndef SGWP_CONSTRUCTION_SPECS_HPP
#define SGWP_CONSTRUCTION_SPECS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sgwp/core.hpp"
#include "sgwp/finite_semigroup.hpp"
#include "sgwp/semilattice.hpp"
#include "sgwp/word_problem.hpp"

namespace sgwp {

// Strong semilattice of semigroups: components indexed by a finite meet
// semilattice, glued by connecting homomorphisms phi_{alpha,beta} given on
// generators for alpha > beta. phi_{alpha,alpha} is the identity.
struct SemilatticeSpec {
  SemilatticeOrder order;
  std::map<std::string, WordProblemObject> components;
  std::map<std::pair<std::string, std::string>, std::map<Letter, Word>> homs;

  const WordProblemObject& component(const std::string& a) const {
    auto it = components.find(a);
    if (it == components.end())
      throw InputError("no component for semilattice vertex " + a);
    return it->second;
  }

  // Image of a single letter of the beta component inside the alpha <= beta
  // component's generators.
  Word letter_image(const std::string& beta, const Letter& x,
                    const std::string& alpha) const {
    if (beta == alpha) return Word{x};
    auto it = homs.find({beta, alpha});
    if (it == homs.end())
      throw InputError("missing connecting homomorphism (" + beta + " -> " +
                       alpha + ")");
    auto im = it->second.find(x);
    if (im == it->second.end())
      throw InputError("connecting homomorphism (" + beta + " -> " + alpha +
                       ") undefined on letter " + x);
    return im->second;
  }

  std::map<Letter, std::string> letter_origins() const {
    std::map<Letter, std::string> origin;
    for (const auto& [alpha, comp] : components)
      for (const Letter& l : comp.alphabet) {
        if (origin.count(l))
          throw InputError("component alphabets are not disjoint at letter " + l);
        origin[l] = alpha;
      }
    return origin;
  }

  // Word image under psi_alpha, defined exactly on words whose letters come
  // from components >= alpha.
  Word word_image(const Word& w, const std::string& alpha,
                  const std::map<Letter, std::string>& origin) const {
    Word out;
    for (const Letter& l : w) {
      const std::string& beta = origin.at(l);
      if (!order.geq(beta, alpha))
        throw InputError("psi_" + alpha + " undefined on letter " + l);
      Word img = letter_image(beta, l, alpha);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  // phi_{alpha,alpha} = id on generators and composition coherence
  // phi_{alpha,beta} phi_{beta,gamma} = phi_{alpha,gamma}, checked with the
  // component oracles.
  void validate() const {
    order.validate();
    for (const auto& e : order.elements) component(e);
    auto origin = letter_origins();
    for (const auto& [key, images] : homs) {
      const auto& [alpha, beta] = key;
      if (!order.contains(alpha) || !order.contains(beta) ||
          !order.geq(alpha, beta))
        throw InputError("homomorphism key (" + alpha + "," + beta +
                         ") is not a descending pair");
      const WordProblemObject& target = component(beta);
      for (const Letter& x : component(alpha).alphabet) {
        auto it = images.find(x);
        if (it == images.end())
          throw InputError("homomorphism (" + alpha + "," + beta +
                           ") misses generator " + x);
        if (it->second.empty() && !target.monoidFlag)
          throw HypothesisViolation("homomorphism (" + alpha + "," + beta +
                                    ") sends " + x +
                                    " to the empty word of a semigroup component");
        if (alpha == beta && !target.oracle(it->second, Word{x}))
          throw HypothesisViolation("phi_{" + alpha + "," + alpha +
                                    "} is not the identity on " + x);
      }
    }
    for (const auto& a : order.elements)
      for (const auto& b : order.elements) {
        if (a == b || !order.geq(a, b)) continue;
        for (const auto& c : order.elements) {
          if (b == c || !order.geq(b, c)) continue;
          for (const Letter& x : component(a).alphabet) {
            Word viaB = word_image(letter_image(a, x, b), c, letter_origins());
            Word direct = letter_image(a, x, c);
            if (!component(c).oracle(viaB, direct))
              throw HypothesisViolation(
                  "homomorphisms do not cohere on letter " + x + " along " + a +
                  " >= " + b + " >= " + c);
          }
        }
      }
  }
};

// Rees matrix semigroup M[S; I, Lambda; P] generated by chosen triples
// (i, x, lambda) with single-letter middles.
struct ReesMatrixSpec {
  WordProblemObject base;  // semigroup S over A
  std::vector<std::string> rows;     // I
  std::vector<std::string> columns;  // Lambda
  std::map<std::pair<std::string, std::string>, Word> sandwich;  // (lambda, i)
  struct Generator {
    std::string row;
    Letter middle;
    std::string column;
  };
  std::vector<Generator> generators;

  static Letter triple_name(const std::string& i, const Letter& x,
                            const std::string& l) {
    return "(" + i + "," + x + "," + l + ")";
  }

  const Word& sandwich_word(const std::string& lambda,
                            const std::string& i) const {
    auto it = sandwich.find({lambda, i});
    if (it == sandwich.end())
      throw InputError("sandwich entry (" + lambda + "," + i + ") missing");
    return it->second;
  }

  void validate() const {
    if (rows.empty() || columns.empty() || generators.empty())
      throw InputError("Rees matrix data incomplete");
    for (const auto& l : columns)
      for (const auto& i : rows) {
        const Word& w = sandwich_word(l, i);
        if (w.empty())
          throw InputError("sandwich word (" + l + "," + i + ") is empty");
        for (const Letter& a : w)
          if (std::find(base.alphabet.begin(), base.alphabet.end(), a) ==
              base.alphabet.end())
            throw InputError("sandwich word uses unknown base letter " + a);
      }
    for (const auto& g : generators) {
      if (std::find(rows.begin(), rows.end(), g.row) == rows.end())
        throw InputError("generator row " + g.row + " not an index");
      if (std::find(columns.begin(), columns.end(), g.column) == columns.end())
        throw InputError("generator column " + g.column + " not an index");
      if (std::find(base.alphabet.begin(), base.alphabet.end(), g.middle) ==
          base.alphabet.end())
        throw InputError("generator middle " + g.middle + " not a base letter");
    }
  }
};

// Bruck-Reilly extension BR(M, phi). phi is supplied as the letter map psi
// with x psi =_M x phi; the finite-image hypothesis is established by
// closing <X phi^k> under multiplication up to the image bound.
struct BruckReillySpec {
  WordProblemObject base;  // monoid M over X
  std::map<Letter, Word> phi;
  size_t imageBound = 16;

  Word apply_psi(const Word& w) const {
    Word out;
    for (const Letter& l : w) {
      auto it = phi.find(l);
      if (it == phi.end())
        throw InputError("phi undefined on generator " + l);
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
  }

  Word apply_psi_pow(const Word& w, size_t k) const {
    Word out = w;
    for (size_t j = 0; j < k; ++j) out = apply_psi(out);
    return out;
  }
};

// Derived data for the Bruck-Reilly machine and oracle: T = im phi^n as
// representative words, the action of phi on T, the index/period of that
// action, and m = n + i + p - 1 so that phi^{m+1} = phi^{n+i}.
struct BruckReillyData {
  std::vector<Word> tReps;
  std::vector<int> phiOnT;
  std::vector<std::vector<int>> tTable;
  int tIdentity = -1;
  size_t n = 0, indexI = 0, periodP = 1, m = 0;

  size_t bracket(size_t beta) const {
    if (beta <= m) return beta;
    return n + indexI + ((beta - n - indexI) % periodP);
  }
};

inline BruckReillyData derive_bruck_reilly(const BruckReillySpec& spec) {
  const EqualityOracle& eq = spec.base.oracle;
  for (const Letter& x : spec.base.alphabet)
    if (!spec.phi.count(x)) throw InputError("phi undefined on generator " + x);
  if (!spec.base.monoidFlag)
    throw InputError("Bruck-Reilly extension needs a monoid base");

  auto findRep = [&](const std::vector<Word>& reps, const Word& w) {
    for (size_t i = 0; i < reps.size(); ++i)
      if (eq(reps[i], w)) return static_cast<int>(i);
    return -1;
  };

  BruckReillyData data;
  bool found = false;
  for (size_t k = 1; k <= spec.imageBound && !found; ++k) {
    // generators of im phi^k, plus the identity (empty word)
    std::vector<Word> reps{Word{}};
    bool overflow = false;
    for (const Letter& x : spec.base.alphabet) {
      Word w = spec.apply_psi_pow(Word{x}, k);
      if (findRep(reps, w) < 0) reps.push_back(w);
    }
    bool grown = true;
    while (grown && !overflow) {
      grown = false;
      size_t sz = reps.size();
      for (size_t a = 0; a < sz && !overflow; ++a)
        for (size_t b = 0; b < sz && !overflow; ++b) {
          Word w = concat(reps[a], reps[b]);
          if (findRep(reps, w) < 0) {
            reps.push_back(w);
            grown = true;
            if (reps.size() > spec.imageBound) overflow = true;
          }
        }
    }
    if (!overflow) {
      data.tReps = reps;
      data.n = k;
      found = true;
    }
  }
  if (!found)
    throw HypothesisViolation(
        "no power of phi has a finite image within the bound; the extension "
        "is outside the construction's hypothesis");

  size_t tn = data.tReps.size();
  data.tIdentity = findRep(data.tReps, Word{});
  data.phiOnT.resize(tn);
  for (size_t i = 0; i < tn; ++i) {
    int img = findRep(data.tReps, spec.apply_psi(data.tReps[i]));
    if (img < 0)
      throw HypothesisViolation("phi does not act on the computed image set");
    data.phiOnT[static_cast<size_t>(i)] = img;
  }
  data.tTable.assign(tn, std::vector<int>(tn, -1));
  for (size_t a = 0; a < tn; ++a)
    for (size_t b = 0; b < tn; ++b) {
      int pr = findRep(data.tReps, concat(data.tReps[a], data.tReps[b]));
      if (pr < 0)
        throw HypothesisViolation("image set is not closed under products");
      data.tTable[a][b] = pr;
    }

  // index and period of the phi action on T
  std::vector<std::vector<int>> powers;  // powers[j] = action of phi^j
  std::vector<int> id(tn);
  for (size_t i = 0; i < tn; ++i) id[i] = static_cast<int>(i);
  powers.push_back(id);
  for (;;) {
    std::vector<int> next(tn);
    for (size_t i = 0; i < tn; ++i)
      next[i] = data.phiOnT[static_cast<size_t>(powers.back()[i])];
    // find earliest previous occurrence
    bool done = false;
    for (size_t j = 0; j < powers.size(); ++j)
      if (powers[j] == next) {
        data.indexI = j;
        data.periodP = powers.size() - j;
        done = true;
        break;
      }
    powers.push_back(next);
    if (done) break;
  }
  data.m = data.n + data.indexI + data.periodP - 1;
  return data;
}

}  // namespace sgwp

#endif  // SGWP_CONSTRUCTION_SPECS_HPP
