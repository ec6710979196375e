#ifndef SGWP_FREE_PRODUCTS_HPP
#define SGWP_FREE_PRODUCTS_HPP

#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sgwp/builders.hpp"
#include "sgwp/oracles.hpp"
#include "sgwp/pda.hpp"
#include "sgwp/word_problem.hpp"

namespace sgwp {
namespace constructions {

namespace detail {

// Shared scaffolding for the two free-product machines. Both interleave
// simulations of the normalized component recognizers on one stack: one
// region per syllable, opened above the component's own bottom marker, with
// the suspended state of the interrupted simulation saved underneath.
// Closing a region on the right of the separator requires the current
// simulation to be in an accepting configuration (final state, bare region),
// after which the saved simulation resumes with a simulated separator.
// The monoid variant additionally accepts the bare separator and opens
// nested simulations that consume identity-valued factors anywhere,
// including inside other nests.
class FreeProductBuilder {
 public:
  FreeProductBuilder(const WordProblemObject& s, const WordProblemObject& t,
                     bool monoidMode)
      : monoid_(monoidMode) {
    comp_[0] = pda::normalize(s.recognizer->pda());
    comp_[1] = pda::normalize(t.recognizer->pda());
    alpha_[0] = s.alphabet;
    alpha_[1] = t.alphabet;

    std::vector<Letter> letters(s.alphabet);
    letters.insert(letters.end(), t.alphabet.begin(), t.alphabet.end());
    letters.push_back(kSeparator);
    m_.input = Alphabet(letters);
    m_.bottom = m_.add_stack_symbol("_qbot");
    m_.mode = Npda::AcceptMode::finalStateAndBareBottom;

    for (int x = 0; x < 2; ++x) {
      symMap_[x].resize(comp_[x].stackNames.size());
      for (size_t i = 0; i < comp_[x].stackNames.size(); ++i)
        symMap_[x][i] = m_.add_stack_symbol(std::string(x == 0 ? "S." : "T.") +
                                            comp_[x].stackNames[i]);
      saved_[x].resize(comp_[x].size());
      for (size_t q = 0; q < comp_[x].size(); ++q)
        saved_[x][q] = m_.add_stack_symbol(
            std::string(x == 0 ? "St.S." : "St.T.") + std::to_string(q));
    }
  }

  Npda build() {
    start_ = state("start");
    m_.initial = start_;
    acc_ = state("acc");
    almost_ = state("almost");
    m_.finals = {acc_};
    m_.add_move(almost_, -1, m_.bottom, acc_, {m_.bottom});
    if (monoid_) npop_ = state("npop");

    for (int x = 0; x < 2; ++x)
      for (const Letter& a : alpha_[x])
        m_.add_move(start_, m_.input.id(a), m_.bottom,
                    feed(x, comp_[x].initial, 'u', {a}), {bot(x), m_.bottom});

    if (monoid_) {
      int vpost = state("vpost");
      m_.add_move(start_, m_.input.id(kSeparator), m_.bottom, vpost,
                  {m_.bottom});
      m_.add_move(vpost, -1, m_.bottom, acc_, {m_.bottom});
      register_host(start_, 'u');
      register_host(vpost, 'v');
    }

    // Expansion and nest wiring both create states; drain to a fixpoint.
    for (;;) {
      if (!todo_.empty()) {
        auto [kind, x, q, code] = todo_.front();
        todo_.pop_front();
        if (kind == 0)
          expand_run(x, q, code);
        else
          expand_nrun(x, q, code == 'U' || code == 'V',
                      code == 'u' || code == 'U');
        continue;
      }
      if (!hostTodo_.empty()) {
        int h = hostTodo_.front();
        hostTodo_.pop_front();
        wire_host(h);
        continue;
      }
      break;
    }
    m_.deterministicFlag = pda::is_deterministic(m_);
    return std::move(m_);
  }

 private:
  int bot(int x) { return symMap_[x][static_cast<size_t>(comp_[x].bottom)]; }

  int state(const std::string& label) {
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = m_.add_state(label);
    states_.emplace(label, id);
    return id;
  }

  void register_host(int id, char ph) {
    if (!monoid_) return;
    if (hostPhase_.emplace(id, ph).second) hostTodo_.push_back(id);
  }

  // run(x, q, phase): simulating component x in its state q
  int rstate(int x, int q, char ph) {
    std::string label =
        "run|" + std::to_string(x) + "|" + std::to_string(q) + "|" + ph;
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    todo_.push_back({0, x, q, ph});
    register_host(id, ph);
    return id;
  }

  // nested simulation of component x verifying an identity factor
  int nstate(int x, int q, bool dirU, bool virgin) {
    std::string label = "nest|" + std::to_string(x) + "|" + std::to_string(q) +
                        "|" + (dirU ? "u" : "v") + (virgin ? "!" : "");
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    char code = virgin ? (dirU ? 'U' : 'V') : (dirU ? 'u' : 'v');
    todo_.push_back({1, x, q, code});
    register_host(id, dirU ? 'u' : 'v');
    return id;
  }

  int host_saved(int h) {
    auto it = hostSaved_.find(h);
    if (it != hostSaved_.end()) return it->second;
    int sym = m_.add_stack_symbol("Sv." + std::to_string(h));
    hostSaved_.emplace(h, sym);
    return sym;
  }

  void wire_host(int h) {
    char ph = hostPhase_.at(h);
    size_t symbolCount = m_.stackNames.size();
    for (int x = 0; x < 2; ++x) {
      // u-side nests read the factor then a simulated separator; v-side
      // nests (which see the factor reversed) simulate the separator first.
      int entry = ph == 'u'
                      ? nstate(x, comp_[x].initial, true, true)
                      : nfeed_entry(x, comp_[x].initial, false,
                                    Word{kSeparator}, true);
      for (size_t sym = 0; sym < symbolCount; ++sym)
        m_.add_move(h, -1, static_cast<int>(sym), entry,
                    {bot(x), host_saved(h), static_cast<int>(sym)});
    }
    m_.add_move(npop_, -1, host_saved(h), h, {});
  }

  std::vector<int> mapped(int x, const std::vector<int>& push) {
    std::vector<int> out;
    out.reserve(push.size());
    for (int s : push) out.push_back(symMap_[x][static_cast<size_t>(s)]);
    return out;
  }

  // Chain states feeding `virt` into component x from state q; afterwards
  // control lands in the continuation named by `cont`.
  int feed(int x, int q, char ph, const Word& virt) {
    return feed_chain(x, q, virt, 0, std::string(1, ph));
  }
  int nfeed_entry(int x, int q, bool dirU, const Word& virt, bool virgin) {
    return feed_chain(x, q, virt, 0,
                      std::string(dirU ? "NU" : "NV") + (virgin ? "!" : ""));
  }

  int continuation(int x, int q, const std::string& cont) {
    if (cont.size() == 1) return rstate(x, q, cont[0]);
    if (cont == "CK") {
      // close check for u-side nests: accepting configuration pops the
      // region marker and returns through the generic pop-back state
      std::string label =
          "ncheck|" + std::to_string(x) + "|" + std::to_string(q);
      auto it = states_.find(label);
      if (it != states_.end()) return it->second;
      int id = state(label);
      for (const auto& [k, moves] : comp_[x].delta[static_cast<size_t>(q)])
        if (k.first < 0)
          for (const Npda::Move& mv : moves)
            m_.add_move(id, -1, symMap_[x][static_cast<size_t>(k.second)],
                        continuation(x, mv.to, "CK"), mapped(x, mv.push));
      if (comp_[x].finals.count(q)) m_.add_move(id, -1, bot(x), npop_, {});
      return id;
    }
    bool dirU = cont[1] == 'U';
    bool virgin = cont.size() == 3;  // trailing '!'
    return nstate(x, q, dirU, virgin);
  }

  int feed_chain(int x, int q, const Word& virt, size_t pos,
                 const std::string& cont) {
    if (pos == virt.size()) return continuation(x, q, cont);
    std::string label = "feed|" + std::to_string(x) + "|" + std::to_string(q) +
                        "|" + cont + "|";
    for (size_t i = pos; i < virt.size(); ++i) label += virt[i] + ".";
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    const Npda& c = comp_[x];
    int want = c.input.id(virt[pos]);
    for (const auto& [k, moves] : c.delta[static_cast<size_t>(q)]) {
      if (k.first < 0) {
        for (const Npda::Move& mv : moves)
          m_.add_move(id, -1, symMap_[x][static_cast<size_t>(k.second)],
                      feed_chain(x, mv.to, virt, pos, cont), mapped(x, mv.push));
      } else if (k.first == want) {
        for (const Npda::Move& mv : moves)
          m_.add_move(id, -1, symMap_[x][static_cast<size_t>(k.second)],
                      feed_chain(x, mv.to, virt, pos + 1, cont),
                      mapped(x, mv.push));
      }
    }
    return id;
  }

  void expand_run(int x, int q, char ph) {
    int from = rstate(x, q, ph);
    const Npda& c = comp_[x];
    size_t symbolCount = m_.stackNames.size();
    for (const auto& [k, moves] : c.delta[static_cast<size_t>(q)])
      if (k.first < 0)
        for (const Npda::Move& mv : moves)
          m_.add_move(from, -1, symMap_[x][static_cast<size_t>(k.second)],
                      rstate(x, mv.to, ph), mapped(x, mv.push));
    for (const Letter& a : alpha_[x]) {
      int target = feed(x, q, ph, {a});
      for (size_t sym = 0; sym < symbolCount; ++sym)
        m_.add_move(from, m_.input.id(a), static_cast<int>(sym), target,
                    {static_cast<int>(sym)});
    }
    int y = 1 - x;
    if (ph == 'u') {
      for (const Letter& b : alpha_[y]) {
        int target = feed(y, comp_[y].initial, 'u', {b});
        for (size_t sym = 0; sym < symbolCount; ++sym)
          m_.add_move(from, m_.input.id(b), static_cast<int>(sym), target,
                      {bot(y), saved_[x][static_cast<size_t>(q)],
                       static_cast<int>(sym)});
      }
      int target = feed(x, q, 'v', {kSeparator});
      for (size_t sym = 0; sym < symbolCount; ++sym)
        m_.add_move(from, m_.input.id(kSeparator), static_cast<int>(sym),
                    target, {static_cast<int>(sym)});
    } else if (c.finals.count(q)) {
      for (const Letter& b : alpha_[y]) {
        int mid =
            state("close|" + std::to_string(y) + "|" + b + "|" +
                  std::to_string(from));
        m_.add_move(from, m_.input.id(b), bot(x), mid, {});
        for (size_t q2 = 0; q2 < comp_[y].size(); ++q2)
          m_.add_move(mid, -1, saved_[y][q2],
                      feed(y, static_cast<int>(q2), 'v', {kSeparator, b}), {});
      }
      m_.add_move(from, -1, bot(x), almost_, {});
    }
  }

  void expand_nrun(int x, int q, bool virgin, bool dirU) {
    int from = nstate(x, q, dirU, virgin);
    const Npda& c = comp_[x];
    size_t symbolCount = m_.stackNames.size();
    for (const auto& [k, moves] : c.delta[static_cast<size_t>(q)])
      if (k.first < 0)
        for (const Npda::Move& mv : moves)
          m_.add_move(from, -1, symMap_[x][static_cast<size_t>(k.second)],
                      nstate(x, mv.to, dirU, virgin), mapped(x, mv.push));
    for (const Letter& a : alpha_[x]) {
      int target = nfeed_entry(x, q, dirU, {a}, false);
      for (size_t sym = 0; sym < symbolCount; ++sym)
        m_.add_move(from, m_.input.id(a), static_cast<int>(sym), target,
                    {static_cast<int>(sym)});
    }
    if (!virgin) {
      if (dirU) {
        int target = feed_chain(x, q, {kSeparator}, 0, "CK");
        for (size_t sym = 0; sym < symbolCount; ++sym)
          m_.add_move(from, -1, static_cast<int>(sym), target,
                      {static_cast<int>(sym)});
      } else if (c.finals.count(q)) {
        m_.add_move(from, -1, bot(x), npop_, {});
      }
    }
  }

  bool monoid_;
  Npda comp_[2];
  std::vector<Letter> alpha_[2];
  Npda m_;
  std::vector<int> symMap_[2];
  std::vector<int> saved_[2];
  std::map<std::string, int> states_;
  std::deque<std::tuple<int, int, int, char>> todo_;
  std::deque<int> hostTodo_;
  std::map<int, char> hostPhase_;
  std::map<int, int> hostSaved_;
  int start_ = -1, acc_ = -1, almost_ = -1, npop_ = -1;
};

inline std::pair<WordProblemObject, WordProblemObject> disjointify(
    const WordProblemObject& s, const WordProblemObject& t) {
  std::set<Letter> used(s.alphabet.begin(), s.alphabet.end());
  std::map<Letter, Letter> ren;
  for (const Letter& l : t.alphabet) {
    Letter fresh = l;
    while (used.count(fresh)) fresh += "'";
    used.insert(fresh);
    if (fresh != l) ren[l] = fresh;
  }
  if (ren.empty()) return {s, t};
  return {s, builders::rename_letters(t, ren)};
}

}  // namespace detail

// Semigroup free product: alternating-syllable protocol over interleaved
// component simulations.
inline WordProblemObject free_product_semigroups(const WordProblemObject& sIn,
                                                 const WordProblemObject& tIn) {
  sIn.require_recognizer("free_product_semigroups");
  tIn.require_recognizer("free_product_semigroups");
  if (sIn.monoidFlag || tIn.monoidFlag)
    throw InputError("semigroup free product needs semigroup-mode factors");
  auto [s, t] = detail::disjointify(sIn, tIn);
  detail::FreeProductBuilder builder(s, t, false);
  Npda machine = builder.build();

  WordProblemObject out;
  out.alphabet = s.alphabet;
  out.alphabet.insert(out.alphabet.end(), t.alphabet.begin(), t.alphabet.end());
  out.monoidFlag = false;
  out.recognizer = LanguageRep(std::move(machine));
  out.deterministicHint = false;
  out.oracle = syllable_oracle(s.oracle, t.oracle, false);
  return out;
}

// Monoid free product: additionally accepts the bare separator, and
// identity-valued factors of either factor are consumed by nested
// simulations opened nondeterministically at any point.
inline WordProblemObject free_product_monoids(const WordProblemObject& sIn,
                                              const WordProblemObject& tIn) {
  sIn.require_recognizer("free_product_monoids");
  tIn.require_recognizer("free_product_monoids");
  if (!sIn.monoidFlag || !tIn.monoidFlag)
    throw InputError("monoid free product needs monoid-mode factors");
  auto [s, t] = detail::disjointify(sIn, tIn);
  detail::FreeProductBuilder builder(s, t, true);
  Npda machine = builder.build();

  WordProblemObject out;
  out.alphabet = s.alphabet;
  out.alphabet.insert(out.alphabet.end(), t.alphabet.begin(), t.alphabet.end());
  out.monoidFlag = true;
  out.recognizer = LanguageRep(std::move(machine));
  out.deterministicHint = false;
  out.oracle = syllable_oracle(s.oracle, t.oracle, true);
  return out;
}

}  // namespace constructions
}  // namespace sgwp

#endif  // SGWP_FREE_PRODUCTS_HPP
