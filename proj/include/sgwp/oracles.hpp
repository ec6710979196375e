#ifndef SGWP_ORACLES_HPP
#define SGWP_ORACLES_HPP

#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sgwp/construction_specs.hpp"
#include "sgwp/core.hpp"
#include "sgwp/word_problem.hpp"

namespace sgwp {

// Exhaustive recognizer-versus-oracle comparison; the acceptance engine of
// the whole artifact. Enumeration is length-lexicographic and the report
// keeps the first 20 mismatches verbatim.
struct CrossCheckReport {
  size_t boundLeft = 0, boundRight = 0;
  size_t total = 0;
  size_t mismatchCount = 0;
  struct Mismatch {
    Word u, v;
    bool recognizerSays = false;
    bool oracleSays = false;
  };
  std::vector<Mismatch> mismatches;  // first 20 in enumeration order

  bool clean() const { return mismatchCount == 0; }

  std::string to_string() const {
    std::ostringstream os;
    os << "cross-check: bounds (" << boundLeft << "," << boundRight << "), "
       << total << " queries, " << mismatchCount << " mismatches\n";
    for (const auto& m : mismatches)
      os << "  mismatch: u=" << format_word(m.u) << " v=" << format_word(m.v)
         << " recognizer=" << (m.recognizerSays ? "accept" : "reject")
         << " oracle=" << (m.oracleSays ? "equal" : "distinct") << "\n";
    return os.str();
  }
};

inline CrossCheckReport cross_check(const WordProblemObject& w, size_t maxLeft,
                                    size_t maxRight, unsigned jobs = 1) {
  w.require_recognizer("cross_check");
  size_t minLen = w.monoidFlag ? 0 : 1;
  std::vector<Word> us = enumerate_words(w.alphabet, maxLeft, minLen);
  std::vector<Word> vs = enumerate_words(w.alphabet, maxRight, minLen);

  CrossCheckReport rep;
  rep.boundLeft = maxLeft;
  rep.boundRight = maxRight;
  rep.total = us.size() * vs.size();

  if (jobs == 0) jobs = 1;
  std::vector<std::vector<CrossCheckReport::Mismatch>> found(us.size());
  std::atomic<size_t> nextU{0};
  auto worker = [&] {
    for (;;) {
      size_t ui = nextU.fetch_add(1);
      if (ui >= us.size()) return;
      const Word& u = us[ui];
      for (const Word& v : vs) {
        bool rec = w.recognizer->member(encode_pair(u, v));
        bool orc = w.oracle(u, v);
        if (rec != orc)
          found[ui].push_back(CrossCheckReport::Mismatch{u, v, rec, orc});
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& perU : found)
    for (const auto& m : perU) {
      ++rep.mismatchCount;
      if (rep.mismatches.size() < 20) rep.mismatches.push_back(m);
    }
  return rep;
}

// Splits "(first,second)" at the top-level comma.
inline std::pair<Letter, Letter> split_pair_letter(const Letter& l) {
  if (l.size() < 3 || l.front() != '(' || l.back() != ')')
    throw InputError("malformed pair letter: " + l);
  int depth = 0;
  for (size_t i = 1; i + 1 < l.size(); ++i) {
    char c = l[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0)
      return {l.substr(1, i - 1), l.substr(i + 1, l.size() - i - 2)};
  }
  throw InputError("malformed pair letter: " + l);
}

// Componentwise equality on words of pair letters.
inline EqualityOracle pair_oracle(const EqualityOracle& o1,
                                  const EqualityOracle& o2,
                                  const std::vector<Letter>& pairAlphabet) {
  return EqualityOracle{
      pairAlphabet,
      [o1, o2](const Word& u, const Word& v) {
        Word u1, u2, v1, v2;
        for (const Letter& l : u) {
          auto [a, b] = split_pair_letter(l);
          u1.push_back(a);
          u2.push_back(b);
        }
        for (const Letter& l : v) {
          auto [a, b] = split_pair_letter(l);
          v1.push_back(a);
          v2.push_back(b);
        }
        return o1(u1, v1) && o2(u2, v2);
      },
      "pairwise (" + o1.description + ") x (" + o2.description + ")"};
}

// Free product equality via syllable decomposition. In monoid mode identity
// syllables are deleted and newly adjacent same-factor syllables merged
// until stable; then counts and componentwise equalities must match.
inline EqualityOracle syllable_oracle(const EqualityOracle& o1,
                                      const EqualityOracle& o2,
                                      bool monoidMode) {
  std::set<Letter> left(o1.alphabet.begin(), o1.alphabet.end());
  for (const Letter& l : o2.alphabet)
    if (left.count(l))
      throw InputError("free factors must have disjoint alphabets; letter " + l);
  std::vector<Letter> alphabet = o1.alphabet;
  alphabet.insert(alphabet.end(), o2.alphabet.begin(), o2.alphabet.end());

  auto oracle = [o1, o2, left, monoidMode](const Word& u, const Word& v) {
    auto syllables = [&](const Word& w) {
      std::vector<std::pair<int, Word>> sy;  // factor tag, syllable
      for (const Letter& l : w) {
        int tag = left.count(l) ? 0 : 1;
        if (sy.empty() || sy.back().first != tag) sy.push_back({tag, Word{}});
        sy.back().second.push_back(l);
      }
      return sy;
    };
    auto isIdentity = [&](int tag, const Word& s) {
      return tag == 0 ? o1(s, Word{}) : o2(s, Word{});
    };
    auto stable = [&](std::vector<std::pair<int, Word>> sy) {
      if (!monoidMode) return sy;
      bool changed = true;
      while (changed) {
        changed = false;
        for (size_t i = 0; i < sy.size(); ++i)
          if (isIdentity(sy[i].first, sy[i].second)) {
            sy.erase(sy.begin() + static_cast<long>(i));
            if (i > 0 && i < sy.size() && sy[i - 1].first == sy[i].first) {
              sy[i - 1].second = concat(sy[i - 1].second, sy[i].second);
              sy.erase(sy.begin() + static_cast<long>(i));
            }
            changed = true;
            break;
          }
      }
      return sy;
    };
    auto su = stable(syllables(u));
    auto sv = stable(syllables(v));
    if (su.size() != sv.size()) return false;
    for (size_t i = 0; i < su.size(); ++i) {
      if (su[i].first != sv[i].first) return false;
      bool eq = su[i].first == 0 ? o1(su[i].second, sv[i].second)
                                 : o2(su[i].second, sv[i].second);
      if (!eq) return false;
    }
    return true;
  };
  return EqualityOracle{alphabet, oracle,
                        std::string("syllable equality (") +
                            (monoidMode ? "monoid" : "semigroup") + " free product)"};
}

// Evaluate both sides in the meet component: reject when the letter-origin
// meets differ, otherwise map through the connecting homomorphisms and ask
// the meet component's oracle.
inline EqualityOracle semilattice_oracle(const SemilatticeSpec& spec) {
  auto origin = spec.letter_origins();
  std::vector<Letter> alphabet;
  for (const auto& [l, o] : origin) alphabet.push_back(l);
  SemilatticeSpec s = spec;  // value capture keeps the components alive
  auto oracle = [s, origin](const Word& u, const Word& v) {
    if (u.empty() || v.empty())
      throw InputError("semilattice word problem is semigroup-mode: nonempty words");
    auto meetOf = [&](const Word& w) {
      std::string m = origin.at(w[0]);
      for (size_t i = 1; i < w.size(); ++i)
        m = s.order.meet(m, origin.at(w[i]));
      return m;
    };
    std::string mu = meetOf(u), mv = meetOf(v);
    if (mu != mv) return false;
    return s.component(mu).oracle(s.word_image(u, mu, origin),
                                  s.word_image(v, mu, origin));
  };
  return EqualityOracle{alphabet, oracle, "strong semilattice evaluation"};
}

// Fold a product of triples by the Rees multiplication law
// (i,x,l)(j,y,m) = (i, x p_{l j} y, m) and compare indices plus middles.
inline EqualityOracle rees_oracle(const ReesMatrixSpec& spec) {
  spec.validate();
  std::map<Letter, ReesMatrixSpec::Generator> byName;
  std::vector<Letter> alphabet;
  for (const auto& g : spec.generators) {
    Letter name = ReesMatrixSpec::triple_name(g.row, g.middle, g.column);
    byName[name] = g;
    alphabet.push_back(name);
  }
  ReesMatrixSpec s = spec;
  auto oracle = [s, byName](const Word& u, const Word& v) {
    if (u.empty() || v.empty())
      throw InputError("Rees matrix word problem is semigroup-mode: nonempty words");
    struct Folded {
      std::string row, column;
      Word middle;
    };
    auto fold = [&](const Word& w) {
      Folded f;
      for (size_t i = 0; i < w.size(); ++i) {
        auto it = byName.find(w[i]);
        if (it == byName.end())
          throw InputError("letter " + w[i] + " is not a Rees generator");
        const auto& g = it->second;
        if (i == 0) {
          f.row = g.row;
        } else {
          const Word& p = s.sandwich_word(f.column, g.row);
          f.middle.insert(f.middle.end(), p.begin(), p.end());
        }
        f.middle.push_back(g.middle);
        f.column = g.column;
      }
      return f;
    };
    Folded fu = fold(u), fv = fold(v);
    return fu.row == fv.row && fu.column == fv.column &&
           s.base.oracle(fu.middle, fv.middle);
  };
  return EqualityOracle{alphabet, oracle, "Rees matrix triple fold"};
}

// Bruck-Reilly normal form fold: letters b and c move the counters, letters
// of X multiply the middle by x psi^beta (with the power taken through the
// eventual cycle of phi).
inline EqualityOracle br_oracle(const BruckReillySpec& spec,
                                const BruckReillyData& data,
                                const Letter& bLetter = "b",
                                const Letter& cLetter = "c") {
  std::vector<Letter> alphabet = spec.base.alphabet;
  alphabet.push_back(bLetter);
  alphabet.push_back(cLetter);
  BruckReillySpec s = spec;
  BruckReillyData d = data;
  auto oracle = [s, d, bLetter, cLetter](const Word& u, const Word& v) {
    struct NF {
      size_t alpha = 0, beta = 0;
      Word middle;
    };
    auto fold = [&](const Word& w) {
      NF f;
      for (const Letter& l : w) {
        if (l == bLetter) {
          ++f.beta;
        } else if (l == cLetter) {
          if (f.beta > 0) {
            --f.beta;
          } else {
            ++f.alpha;
            f.middle = s.apply_psi(f.middle);
          }
        } else {
          Word img = s.apply_psi_pow(Word{l}, d.bracket(f.beta));
          f.middle.insert(f.middle.end(), img.begin(), img.end());
        }
      }
      return f;
    };
    NF fu = fold(u), fv = fold(v);
    return fu.alpha == fv.alpha && fu.beta == fv.beta &&
           s.base.oracle(fu.middle, fv.middle);
  };
  return EqualityOracle{alphabet, oracle, "Bruck-Reilly normal form fold"};
}

}  // namespace sgwp

#endif  // SGWP_ORACLES_HPP
