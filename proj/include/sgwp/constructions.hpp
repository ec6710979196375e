#ifndef SGWP_CONSTRUCTIONS_HPP
#define SGWP_CONSTRUCTIONS_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sgwp/builders.hpp"
#include "sgwp/construction_specs.hpp"
#include "sgwp/core.hpp"
#include "sgwp/finite_semigroup.hpp"
#include "sgwp/oracles.hpp"
#include "sgwp/pda.hpp"
#include "sgwp/semilattice.hpp"
#include "sgwp/word_problem.hpp"

namespace sgwp {
namespace constructions {

inline Letter pair_name(const Letter& a, const std::string& t) {
  return "(" + a + "," + t + ")";
}

// ---------------------------------------------------------------------------
// Direct product with a finite decomposable semigroup. The base machine is
// run on first coordinates while the states fold the finite second
// coordinates: the product of u before the separator, the suffix product of
// v after it.
// ---------------------------------------------------------------------------
inline WordProblemObject direct_product_finite(const WordProblemObject& s,
                                               const FiniteSemigroup& t) {
  t.validate();
  if (!is_decomposable(t))
    throw HypothesisViolation(
        "direct product with a finite factor needs the factor decomposable");
  s.require_recognizer("direct_product_finite");

  Npda base = pda::normalize(s.recognizer->pda());

  std::vector<Letter> pairLetters;
  for (const Letter& a : s.alphabet)
    for (const auto& e : t.elements) pairLetters.push_back(pair_name(a, e));

  Npda p;
  std::vector<Letter> full = pairLetters;
  full.push_back(kSeparator);
  p.input = Alphabet(full);
  p.stackNames = base.stackNames;
  p.bottom = base.bottom;
  p.mode = Npda::AcceptMode::finalStateAndBareBottom;

  // state = (base state, u-product or virgin, v-product or virgin-or-pre)
  const std::string virgin = "_";
  const std::string preMark = "<pre>";
  std::map<std::string, int> index;
  auto state = [&](int q, const std::string& mu, const std::string& mv) {
    std::string key = std::to_string(q) + "|" + mu + "|" + mv;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = p.add_state(base.stateNames[static_cast<size_t>(q)] + "|" + mu +
                         "|" + mv);
    index.emplace(key, id);
    return id;
  };

  std::vector<std::string> uVals{virgin};
  for (const auto& e : t.elements) uVals.push_back(e);
  std::vector<std::string> vVals{preMark, virgin};
  for (const auto& e : t.elements) vVals.push_back(e);

  p.initial = state(base.initial, virgin, preMark);
  for (size_t q = 0; q < base.size(); ++q)
    for (const std::string& mu : uVals)
      for (const std::string& mv : vVals) {
        int from = state(static_cast<int>(q), mu, mv);
        bool pre = mv == preMark;
        for (const auto& [k, moves] : base.delta[q]) {
          if (k.first < 0) {
            for (const Npda::Move& m : moves)
              p.add_move(from, -1, k.second, state(m.to, mu, mv), m.push);
            continue;
          }
          const Letter& letter = base.input.name(k.first);
          if (letter == kSeparator) {
            if (pre && mu != virgin)
              for (const Npda::Move& m : moves)
                p.add_move(from, p.input.id(kSeparator), k.second,
                           state(m.to, mu, virgin), m.push);
            continue;
          }
          for (const auto& e : t.elements) {
            int in = p.input.id(pair_name(letter, e));
            for (const Npda::Move& m : moves) {
              if (pre) {
                std::string mu2 = mu == virgin ? e : t.product(mu, e);
                p.add_move(from, in, k.second, state(m.to, mu2, preMark),
                           m.push);
              } else {
                std::string mv2 = mv == virgin ? e : t.product(e, mv);
                p.add_move(from, in, k.second, state(m.to, mu, mv2), m.push);
              }
            }
          }
        }
        if (base.finals.count(static_cast<int>(q)) && !pre && mu != virgin &&
            mv != virgin && mu == mv)
          p.finals.insert(from);
      }
  p.deterministicFlag = pda::is_deterministic(p);
  bool det = p.deterministicFlag;

  FiniteSemigroup table = t;
  EqualityOracle tableOracle{
      t.elements,
      [table](const Word& u, const Word& v) {
        if (u.empty() || v.empty()) return false;
        return table.product_of(u) == table.product_of(v);
      },
      "Cayley table product equality"};

  WordProblemObject out;
  out.alphabet = pairLetters;
  out.monoidFlag = false;
  out.recognizer = LanguageRep(std::move(p));
  out.deterministicHint = det && s.deterministicHint;
  out.oracle = pair_oracle(s.oracle, tableOracle, pairLetters);
  return out;
}

// ---------------------------------------------------------------------------
// Direct factors. The finite factor supplies an element c and a word w with
// cw = c, found as a circuit in the factorization digraph; fixing the second
// coordinates along (B x {c})(B x {w})* exposes the first factor, which the
// coordinate-erasing homomorphism then extracts from the grammar.
// ---------------------------------------------------------------------------
struct DirectFactorCircuit {
  std::string c;
  std::vector<std::string> w;  // labels, reverse edge order; product fixes c
};

inline DirectFactorCircuit direct_factor_circuit(const FiniteSemigroup& t) {
  if (t.elements.empty()) throw InputError("empty semigroup has no circuit");
  // zeta: first factorization x = y * u in element order
  std::map<std::string, std::pair<std::string, std::string>> zeta;
  for (const auto& x : t.elements) {
    bool found = false;
    for (const auto& y : t.elements) {
      for (const auto& u : t.elements)
        if (t.product(y, u) == x) {
          zeta[x] = {y, u};
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found)
      throw HypothesisViolation("factor is not decomposable: no factorization of " + x);
  }
  // walk the out-degree-one digraph until a vertex repeats
  std::vector<std::string> path{t.elements.front()};
  std::map<std::string, size_t> seen{{t.elements.front(), 0}};
  for (;;) {
    const std::string& nxt = zeta.at(path.back()).first;
    auto it = seen.find(nxt);
    if (it != seen.end()) {
      DirectFactorCircuit circ;
      circ.c = nxt;
      // labels in reverse edge order around the circuit, so that following
      // the factorizations back around gives c . w = c
      for (size_t j = path.size(); j-- > it->second;)
        circ.w.push_back(zeta.at(path[j]).second);
      std::string prod = circ.w.front();
      for (size_t j = 1; j < circ.w.size(); ++j)
        prod = t.product(prod, circ.w[j]);
      if (t.product(circ.c, prod) != circ.c)
        throw std::logic_error("circuit does not fix its base point");
      return circ;
    }
    seen[nxt] = path.size();
    path.push_back(nxt);
  }
}

inline WordProblemObject direct_factor(const WordProblemObject& st,
                                       const FiniteSemigroup& t,
                                       const std::vector<Letter>& gensB) {
  st.require_recognizer("direct_factor");
  t.validate();
  DirectFactorCircuit circ = direct_factor_circuit(t);
  std::string wVal = circ.w.front();
  for (size_t j = 1; j < circ.w.size(); ++j) wVal = t.product(wVal, circ.w[j]);

  // the pair letters this construction rides on must exist in st
  std::vector<Letter> cLetters, wLetters;
  for (const Letter& b : gensB) {
    Letter lc = pair_name(b, circ.c), lw = pair_name(b, wVal);
    for (const Letter& l : {lc, lw})
      if (std::find(st.alphabet.begin(), st.alphabet.end(), l) ==
          st.alphabet.end())
        throw InputError("direct factor needs pair generator " + l);
    cLetters.push_back(lc);
    wLetters.push_back(lw);
  }

  // R = (B x {c})(B x {w})* # (B x {w})*(B x {c})
  std::vector<Letter> rLetters = cLetters;
  rLetters.insert(rLetters.end(), wLetters.begin(), wLetters.end());
  rLetters.push_back(kSeparator);
  Nfa r;
  r.alphabet = Alphabet(rLetters);
  int r0 = r.add_state("r0");
  int r1 = r.add_state("r1");
  int r2 = r.add_state("r2");
  int r3 = r.add_state("r3");
  r.initial = {r0};
  r.finals = {r3};
  for (const Letter& l : cLetters) {
    r.add_transition(r0, l, r1);
    r.add_transition(r2, l, r3);
  }
  for (const Letter& l : wLetters) {
    r.add_transition(r1, l, r1);
    r.add_transition(r2, l, r2);
  }
  r.add_transition(r1, kSeparator, r2);

  Npda cut = pda::intersect_regular(st.recognizer->pda(), r);
  Cfg grammar = pda::to_cfg(cut);
  std::map<Letter, Word> erase;
  for (const Letter& l : grammar.terminals.names()) {
    if (l == kSeparator)
      erase[l] = {kSeparator};
    else
      erase[l] = {split_pair_letter(l).first};
  }
  Cfg projected = apply_homomorphism(grammar, erase);

  // the projected grammar may have lost letters of B that never occur;
  // queries validate against the object alphabet, so that is harmless
  EqualityOracle stOracle = st.oracle;
  std::string cName = circ.c, wName = wVal;
  WordProblemObject out;
  out.alphabet = gensB;
  out.monoidFlag = false;
  out.recognizer = LanguageRep(std::move(projected));
  out.deterministicHint = false;
  out.oracle = EqualityOracle{
      gensB,
      [stOracle, cName, wName](const Word& u, const Word& v) {
        if (u.empty() || v.empty()) return false;
        auto pad = [&](const Word& x) {
          Word px;
          px.push_back(pair_name(x[0], cName));
          for (size_t j = 1; j < x.size(); ++j)
            px.push_back(pair_name(x[j], wName));
          return px;
        };
        return stOracle(pad(u), pad(v));
      },
      "first factor of: " + stOracle.description};
  return out;
}

// ---------------------------------------------------------------------------
// Word-hyperbolic structure (A*, M(A*)): the inverse image of the word
// problem under #1 -> eps, #2 -> #, intersected with A* #1 A* #2 A*.
// ---------------------------------------------------------------------------
inline LanguageRep word_hyperbolic_structure(const WordProblemObject& w) {
  w.require_recognizer("word_hyperbolic_structure");
  std::map<Letter, Word> h;
  for (const Letter& a : w.alphabet) h[a] = {a};
  h[kSeparator1] = {};
  h[kSeparator2] = {kSeparator};
  Npda pre = pda::inverse_homomorphism(w.recognizer->pda(), h);

  std::vector<Letter> shapeLetters = w.alphabet;
  shapeLetters.push_back(kSeparator1);
  shapeLetters.push_back(kSeparator2);
  Nfa shape;
  shape.alphabet = Alphabet(shapeLetters);
  int s0 = shape.add_state("u");
  int s1 = shape.add_state("v");
  int s2 = shape.add_state("w");
  shape.initial = {s0};
  shape.finals = {s2};
  for (const Letter& a : w.alphabet) {
    shape.add_transition(s0, a, s0);
    shape.add_transition(s1, a, s1);
    shape.add_transition(s2, a, s2);
  }
  shape.add_transition(s0, kSeparator1, s1);
  shape.add_transition(s1, kSeparator2, s2);
  return LanguageRep(pda::intersect_regular(pre, shape));
}

// Colliding component alphabets are renamed apart (primes appended, in
// vertex order), with the connecting homomorphisms relabelled to match.
inline SemilatticeSpec disjointify_components(const SemilatticeSpec& in) {
  std::set<Letter> used;
  std::map<std::string, std::map<Letter, Letter>> ren;
  bool any = false;
  for (const auto& v : in.order.elements) {
    std::map<Letter, Letter> m;
    for (const Letter& l : in.component(v).alphabet) {
      Letter fresh = l;
      while (used.count(fresh)) fresh += "'";
      used.insert(fresh);
      if (fresh != l) {
        m[l] = fresh;
        any = true;
      }
    }
    ren[v] = std::move(m);
  }
  if (!any) return in;
  SemilatticeSpec out = in;
  for (const auto& v : in.order.elements)
    if (!ren[v].empty())
      out.components.at(v) = builders::rename_letters(in.component(v), ren[v]);
  out.homs.clear();
  for (const auto& [key, images] : in.homs) {
    const auto& mA = ren[key.first];
    const auto& mB = ren[key.second];
    std::map<Letter, Word> imgs;
    for (const auto& [x, w] : images) {
      Letter x2 = mA.count(x) ? mA.at(x) : x;
      Word w2;
      for (const Letter& y : w) w2.push_back(mB.count(y) ? mB.at(y) : y);
      imgs[x2] = std::move(w2);
    }
    out.homs[key] = std::move(imgs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strong semilattice of semigroups. Per vertex alpha: the component word
// problem is bridged to images of the glued generators, pulled back through
// the psi_alpha gsm, and filtered by the content automaton; the result is
// the finite union over the vertices.
// ---------------------------------------------------------------------------
inline WordProblemObject strong_semilattice(const SemilatticeSpec& specIn) {
  SemilatticeSpec spec = disjointify_components(specIn);
  spec.validate();
  auto origin = spec.letter_origins();

  std::vector<Letter> fullAlphabet;
  for (const auto& alpha : spec.order.elements)
    for (const Letter& l : spec.component(alpha).alphabet)
      fullAlphabet.push_back(l);
  std::vector<Letter> fullWithSep = fullAlphabet;
  fullWithSep.push_back(kSeparator);

  std::vector<Npda> pieces;
  for (const auto& alpha : spec.order.elements) {
    const WordProblemObject& comp = spec.component(alpha);
    comp.require_recognizer("strong_semilattice");
    const std::vector<Letter>& compAlphabet = comp.alphabet;

    // psi_alpha as a gsm over the full alphabet; letters from components
    // not above alpha have no transition, making the transduction undefined
    Gsm psi;
    psi.inputAlphabet = Alphabet(fullWithSep);
    int q0 = psi.add_state("pre");
    int q1 = psi.add_state("post");
    psi.initial = q0;
    psi.finals = {q1};
    std::vector<Word> images;  // the finite set W of image words
    for (const Letter& x : fullAlphabet) {
      const std::string& beta = origin.at(x);
      if (!spec.order.geq(beta, alpha)) continue;
      Word img = spec.letter_image(beta, x, alpha);
      psi.add_transition(q0, x, q0, img);
      psi.add_transition(q1, x, q1, reversed(img));
      images.push_back(img);
    }
    psi.add_transition(q0, kSeparator, q1, {kSeparator});

    // M = WP(S_alpha, A_alpha) restricted to the bridging language
    // W* # (W^rev)*
    std::vector<Word> revImages;
    for (const Word& im : images) revImages.push_back(reversed(im));
    Nfa wStar = nfa::star(nfa::from_words(compAlphabet, images));
    Nfa wRevStar = nfa::star(nfa::from_words(compAlphabet, revImages));
    std::vector<Letter> sepAlpha = compAlphabet;
    sepAlpha.push_back(kSeparator);
    Nfa bridge = nfa::concat(
        nfa::concat(wStar, nfa::from_word(sepAlpha, {kSeparator})), wRevStar);
    Npda m = pda::intersect_regular(comp.recognizer->pda(), bridge);

    Npda lPrime = pda::inverse_gsm(m, psi);

    // R_alpha = R'_alpha # R'_alpha via the content automaton
    Nfa rPrime = content_automaton(spec.order, origin, alpha);
    Nfa rAlpha = nfa::concat(
        nfa::concat(rPrime, nfa::from_word(fullWithSep, {kSeparator})), rPrime);
    pieces.push_back(pda::intersect_regular(lPrime, rAlpha));
  }

  Npda machine = pda::union_lang(pieces);
  WordProblemObject out;
  out.alphabet = fullAlphabet;
  out.monoidFlag = false;
  out.recognizer = LanguageRep(std::move(machine));
  out.deterministicHint = false;
  out.oracle = semilattice_oracle(spec);
  return out;
}

// ---------------------------------------------------------------------------
// Rees matrix semigroup. The gsm Phi unfolds triples into base words with
// sandwich words in between (reversed after the separator) and emits a
// trailing separator exactly when the outer indices mismatch; the word
// problem is the inverse image of the bridged base word problem.
// ---------------------------------------------------------------------------
inline Gsm rees_gsm(const ReesMatrixSpec& spec) {
  std::vector<Letter> tripleLetters;
  std::set<Letter> seen;
  for (const auto& g : spec.generators) {
    Letter name = ReesMatrixSpec::triple_name(g.row, g.middle, g.column);
    if (!seen.insert(name).second)
      throw InputError("duplicate Rees generator " + name);
    tripleLetters.push_back(name);
  }
  std::vector<Letter> gsmInput = tripleLetters;
  gsmInput.push_back(kSeparator);

  Gsm phi;
  phi.inputAlphabet = Alphabet(gsmInput);
  std::map<std::string, int> states;
  std::deque<std::string> todo;
  auto state = [&](const std::string& key) {
    auto it = states.find(key);
    if (it != states.end()) return it->second;
    int s = phi.add_state(key);
    states.emplace(key, s);
    todo.push_back(key);
    return s;
  };
  // keys: "s" | "pre|i1|l" | "mid|i1|lu" | "post|i1|lu|lv|ip"
  int start = state("s");
  phi.initial = start;
  for (const auto& g : spec.generators) {
    Letter name = ReesMatrixSpec::triple_name(g.row, g.middle, g.column);
    phi.add_transition(start, name, state("pre|" + g.row + "|" + g.column),
                       {g.middle});
  }
  while (!todo.empty()) {
    std::string key = todo.front();
    todo.pop_front();
    // split the key
    std::vector<std::string> parts;
    {
      std::string cur;
      for (char ch : key) {
        if (ch == '|') {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      parts.push_back(cur);
    }
    int from = states.at(key);
    if (parts[0] == "pre") {
      const std::string& i1 = parts[1];
      const std::string& lam = parts[2];
      for (const auto& g : spec.generators) {
        Letter name = ReesMatrixSpec::triple_name(g.row, g.middle, g.column);
        Word out = spec.sandwich_word(lam, g.row);
        out.push_back(g.middle);
        phi.add_transition(from, name, state("pre|" + i1 + "|" + g.column),
                           out);
      }
      phi.add_transition(from, kSeparator, state("mid|" + i1 + "|" + lam),
                         {kSeparator});
    } else if (parts[0] == "mid") {
      const std::string& i1 = parts[1];
      const std::string& lu = parts[2];
      for (const auto& g : spec.generators) {
        Letter name = ReesMatrixSpec::triple_name(g.row, g.middle, g.column);
        phi.add_transition(
            from, name,
            state("post|" + i1 + "|" + lu + "|" + g.column + "|" + g.row),
            {g.middle});
      }
    } else if (parts[0] == "post") {
      const std::string& i1 = parts[1];
      const std::string& lu = parts[2];
      const std::string& lv = parts[3];
      const std::string& ip = parts[4];
      for (const auto& g : spec.generators) {
        Letter name = ReesMatrixSpec::triple_name(g.row, g.middle, g.column);
        Word out = reversed(spec.sandwich_word(g.column, ip));
        out.push_back(g.middle);
        phi.add_transition(
            from, name,
            state("post|" + i1 + "|" + lu + "|" + lv + "|" + g.row), out);
      }
      phi.finals.insert(from);
      // c = eps when i(u) = i(v) and lambda(u) = lambda(v), else #
      if (i1 == ip && lu == lv)
        phi.terminalOutput[from] = {};
      else
        phi.terminalOutput[from] = {kSeparator};
    }
  }
  // make sure the separator is a known output letter
  phi.outputAlphabet.add(kSeparator);
  return phi;
}

inline WordProblemObject rees_matrix(const ReesMatrixSpec& spec) {
  spec.validate();
  spec.base.require_recognizer("rees_matrix");

  std::vector<Letter> tripleLetters;
  for (const auto& g : spec.generators)
    tripleLetters.push_back(
        ReesMatrixSpec::triple_name(g.row, g.middle, g.column));
  Gsm phi = rees_gsm(spec);

  // L = WP(S, A) /\ (A W)* A # A (W^rev A)*
  const std::vector<Letter>& A = spec.base.alphabet;
  std::vector<Word> sandwichWords, sandwichRev;
  for (const auto& l : spec.columns)
    for (const auto& i : spec.rows) {
      sandwichWords.push_back(spec.sandwich_word(l, i));
      sandwichRev.push_back(reversed(spec.sandwich_word(l, i)));
    }
  std::vector<Word> singles;
  for (const Letter& a : A) singles.push_back({a});
  Nfa anyA = nfa::from_words(A, singles);
  std::vector<Letter> aSep = A;
  aSep.push_back(kSeparator);
  Nfa preSide =
      nfa::concat(nfa::star(nfa::concat(anyA, nfa::from_words(A, sandwichWords))),
                  anyA);
  Nfa postSide =
      nfa::concat(anyA,
                  nfa::star(nfa::concat(nfa::from_words(A, sandwichRev), anyA)));
  Nfa bridge = nfa::concat(
      nfa::concat(preSide, nfa::from_word(aSep, {kSeparator})), postSide);
  Npda cut = pda::intersect_regular(spec.base.recognizer->pda(), bridge);
  Npda machine = pda::inverse_gsm(cut, phi);

  WordProblemObject out;
  out.alphabet = tripleLetters;
  out.monoidFlag = false;
  out.recognizer = LanguageRep(std::move(machine));
  out.deterministicHint = false;
  out.oracle = rees_oracle(spec);
  return out;
}

}  // namespace constructions
}  // namespace sgwp

#endif  // SGWP_CONSTRUCTIONS_HPP
