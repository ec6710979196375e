#ifndef SGWP_BRUCK_REILLY_HPP
#define SGWP_BRUCK_REILLY_HPP

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sgwp/builders.hpp"
#include "sgwp/construction_specs.hpp"
#include "sgwp/oracles.hpp"
#include "sgwp/pda.hpp"
#include "sgwp/word_problem.hpp"

namespace sgwp {
namespace constructions {
namespace detail {

// The Bruck-Reilly recognizer. The stack discipline is
//   C^alpha . [simulated base stack] . B-region        (before the separator)
// with the B-region encoded as a single indexed symbol B_j for counts up to
// n+i and an unbounded tail of plain B above B_{n+i} beyond that; a mirrored
// D-family counts uncancelled c's after the separator. The state carries
//   (q, t, k, l)            before the separator
//   (q, t, t', k, l)(#?)    after it
//   (sigma, pi, cj, dj)     in the endgame family f
// where q is the simulated base state, t/t' accumulate absorbed factors in
// the finite image monoid T, k = [current B count], and l is, before the
// separator, the guessed number of still-to-come migrating c's (c's read at
// B-count zero, which shift everything read so far by phi). Several moves
// keep invariants the construction depends on:
//  - k (and l, dj for the D side) always equals [stack count]: popping from
//    the tail at k = n+i wraps to m, since [count-1] = m when
//    [count] = n+i and count > n+i;
//  - guessed migrating c's have their C's pre-pushed through a bounded
//    tunnel at guess time (the B-region is then at most one indexed symbol
//    above the base bottom), so the C-region stays exact;
//  - absorbed material is flushed into the base simulation (and t, t' reset)
//    whenever a simulation step follows, preserving left-to-right order;
//  - the endgame guesses the product sigma of everything still to be
//    absorbed, verifies the base run, deletes the base region, and then
//    checks the remaining b/c-suffix against the C-region, tracking the
//    product pi of the letters actually seen for the final pi = sigma check.
class BruckReillyBuilder {
 public:
  BruckReillyBuilder(const BruckReillySpec& spec, const BruckReillyData& data,
                     Letter bLetter, Letter cLetter)
      : spec_(spec), d_(data), bL_(std::move(bLetter)), cL_(std::move(cLetter)) {
    base_ = pda::normalize(spec_.base.recognizer->pda());
    X_ = spec_.base.alphabet;

    std::vector<Letter> letters = X_;
    letters.push_back(bL_);
    letters.push_back(cL_);
    letters.push_back(kSeparator);
    m_.input = Alphabet(letters);
    m_.bottom = m_.add_stack_symbol("_bot");
    m_.mode = Npda::AcceptMode::finalStateAndBareBottom;

    cSym_ = m_.add_stack_symbol("C");
    size_t ni = d_.n + d_.indexI;
    bIdx_.assign(ni + 1, -1);
    dIdx_.assign(ni + 1, -1);
    for (size_t j = 1; j <= ni; ++j) {
      bIdx_[j] = m_.add_stack_symbol("B" + std::to_string(j));
      dIdx_[j] = m_.add_stack_symbol("D" + std::to_string(j));
    }
    bTail_ = m_.add_stack_symbol("B");
    dTail_ = m_.add_stack_symbol("D");
    gOff_.resize(base_.stackNames.size());
    for (size_t i = 0; i < base_.stackNames.size(); ++i)
      gOff_[i] = m_.add_stack_symbol("G." + base_.stackNames[i]);
    gBot_ = gOff_[static_cast<size_t>(base_.bottom)];

    // powers x psi^j and their values in T, for j = 0..m
    for (const Letter& x : X_) {
      auto& words = powWord_[x];
      auto& vals = powVal_[x];
      words.resize(d_.m + 1);
      vals.resize(d_.m + 1);
      Word cur{x};
      for (size_t j = 0; j <= d_.m; ++j) {
        words[j] = cur;
        vals[j] = t_index(cur);
        cur = spec_.apply_psi(cur);
      }
    }
  }

  Npda build() {
    m_.initial = pre_state(base_.initial, false, -1, 0, -1);
    while (!todo_.empty()) {
      auto item = todo_.front();
      todo_.pop_front();
      expand(item);
    }
    m_.deterministicFlag = pda::is_deterministic(m_);
    return std::move(m_);
  }

 private:
  // --- T-arithmetic ---------------------------------------------------
  int t_index(const Word& w) const {
    for (size_t i = 0; i < d_.tReps.size(); ++i)
      if (spec_.base.oracle(d_.tReps[i], w)) return static_cast<int>(i);
    return -1;
  }
  int mul1(int a, int b) const {  // -1 is the adjoined identity
    if (a < 0) return b;
    if (b < 0) return a;
    return d_.tTable[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  int tphi(int t) const {
    return t < 0 ? -1 : d_.phiOnT[static_cast<size_t>(t)];
  }
  Word rep(int t) const { return t < 0 ? Word{} : d_.tReps[static_cast<size_t>(t)]; }
  size_t bracket(size_t b) const { return d_.bracket(b); }
  size_t ni() const { return d_.n + d_.indexI; }

  // --- state bookkeeping ----------------------------------------------
  int state(const std::string& label) {
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = m_.add_state(label);
    states_.emplace(label, id);
    return id;
  }

  struct Item {
    char kind;  // 'P', 'X' (pre with pending letter), 'Q', 'F'
    int q = 0, t = -1, t2 = -1;
    bool z = false, hp = false;
    size_t k = 0, cj = 0;
    int l = -1;  // -1 = blank before the separator; dj in kind 'F'
    Letter x;
  };

  int keyed_state(const std::string& label, const Item& item) {
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    todo_.push_back(item);
    return id;
  }

  int pre_state(int q, bool z, int t, size_t k, int l) {
    Item it;
    it.kind = 'P';
    it.q = q;
    it.z = z;
    it.t = t;
    it.k = k;
    it.l = l;
    return keyed_state("P|" + std::to_string(q) + "|" + (z ? "1" : "0") + "|" +
                           std::to_string(t) + "|" + std::to_string(k) + "|" +
                           std::to_string(l),
                       it);
  }
  int stage_state(int q, bool z, int t, size_t k, int l, const Letter& x) {
    Item it;
    it.kind = 'X';
    it.q = q;
    it.z = z;
    it.t = t;
    it.k = k;
    it.l = l;
    it.x = x;
    return keyed_state("PX|" + std::to_string(q) + "|" + (z ? "1" : "0") + "|" +
                           std::to_string(t) + "|" + std::to_string(k) + "|" +
                           std::to_string(l) + "|" + x,
                       it);
  }
  int post_state(int q, int t, int t2, size_t k, size_t l, bool hp) {
    Item it;
    it.kind = 'Q';
    it.q = q;
    it.t = t;
    it.t2 = t2;
    it.k = k;
    it.l = static_cast<int>(l);
    it.hp = hp;
    return keyed_state("Q|" + std::to_string(q) + "|" + std::to_string(t) +
                           "|" + std::to_string(t2) + "|" + std::to_string(k) +
                           "|" + std::to_string(l) + "|" + (hp ? "1" : "0"),
                       it);
  }
  int f_state(int sigma, int pi, size_t cj, size_t dj) {
    Item it;
    it.kind = 'F';
    it.t = sigma;
    it.t2 = pi;
    it.cj = cj;
    it.l = static_cast<int>(dj);
    return keyed_state("F|" + std::to_string(sigma) + "|" + std::to_string(pi) +
                           "|" + std::to_string(cj) + "|" + std::to_string(dj),
                       it);
  }

  std::vector<int> mapped(const std::vector<int>& push) const {
    std::vector<int> out;
    out.reserve(push.size());
    for (int s : push) out.push_back(gOff_[static_cast<size_t>(s)]);
    return out;
  }

  const std::vector<int>& base_syms() const { return gOff_; }

  // --- base-simulation feeds -------------------------------------------
  // Continuations: where to land after the base machine has digested the
  // virtual word, and which region markers to restore above the base stack.
  struct Cont {
    std::string key;
    std::function<int(int)> target;  // base state -> machine state (-1: dead)
    std::vector<int> repush;         // pushed above the revealed base top
  };

  int feed_chain(int q, const Word& virt, size_t pos, const Cont& cont) {
    if (pos == virt.size()) return drain(q, cont);
    std::string label =
        "fd|" + std::to_string(q) + "|" + cont.key + "|" + std::to_string(pos);
    for (size_t i = pos; i < virt.size(); ++i) label += "." + virt[i];
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    int want = base_.input.id(virt[pos]);
    for (const auto& [k, moves] : base_.delta[static_cast<size_t>(q)]) {
      if (k.first < 0) {
        for (const Npda::Move& mv : moves)
          m_.add_move(id, -1, gOff_[static_cast<size_t>(k.second)],
                      feed_chain(mv.to, virt, pos, cont), mapped(mv.push));
      } else if (k.first == want) {
        for (const Npda::Move& mv : moves)
          m_.add_move(id, -1, gOff_[static_cast<size_t>(k.second)],
                      feed_chain(mv.to, virt, pos + 1, cont), mapped(mv.push));
      }
    }
    return id;
  }

  int drain(int q, const Cont& cont) {
    std::string label = "dr|" + std::to_string(q) + "|" + cont.key;
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    for (const auto& [k, moves] : base_.delta[static_cast<size_t>(q)])
      if (k.first < 0)
        for (const Npda::Move& mv : moves)
          m_.add_move(id, -1, gOff_[static_cast<size_t>(k.second)],
                      drain(mv.to, cont), mapped(mv.push));
    int target = cont.target(q);
    if (target >= 0)
      for (int top : base_syms()) {
        std::vector<int> push = cont.repush;
        push.push_back(top);
        m_.add_move(id, -1, top, target, std::move(push));
      }
    return id;
  }

  // --- expansion --------------------------------------------------------
  void expand(const Item& it) {
    switch (it.kind) {
      case 'P': expand_pre(it); break;
      case 'X': expand_stage(it); break;
      case 'Q': expand_post(it); break;
      case 'F': expand_f(it); break;
    }
  }

  void add(int from, const std::optional<Letter>& in, int top, int to,
           std::vector<int> push) {
    m_.add_move(from, in ? m_.input.id(*in) : -1, top, to, std::move(push));
  }

  void expand_pre(const Item& it) {
    int from = pre_state(it.q, it.z, it.t, it.k, it.l);
    size_t NI = ni();

    // input b: extend the B-region, k <- [k+1]
    {
      size_t k2 = bracket(it.k + 1);
      int to = pre_state(it.q, it.z, it.t, k2, it.l);
      add(from, bL_, m_.bottom, to, {bIdx_[1], gBot_, m_.bottom});
      add(from, bL_, cSym_, to, {bIdx_[1], gBot_, cSym_});
      for (int g : base_syms()) add(from, bL_, g, to, {bIdx_[1], g});
      if (it.k >= 1 && it.k <= NI) {
        if (it.k < NI)
          add(from, bL_, bIdx_[it.k], to, {bIdx_[it.k + 1]});
        else
          add(from, bL_, bIdx_[NI], to, {bTail_, bIdx_[NI]});
      }
      if (it.k >= NI) add(from, bL_, bTail_, to, {bTail_, bTail_});
    }

    // input c
    {
      if (it.k >= NI) {  // tail pop; [count-1] wraps to m at the boundary
        size_t k2 = it.k > NI ? it.k - 1 : d_.m;
        add(from, cL_, bTail_, pre_state(it.q, it.z, it.t, k2, it.l), {});
      }
      if (it.k >= 1 && it.k <= NI) {
        int to = pre_state(it.q, it.z, it.t, it.k - 1, it.l);
        if (it.k >= 2)
          add(from, cL_, bIdx_[it.k], to, {bIdx_[it.k - 1]});
        else
          add(from, cL_, bIdx_[1], to, {});
      }
      if (it.k == 0) {
        // migrating c (B-region empty)
        if (it.l == -1) {
          // no generator read yet, so t = 1 and the base region is pristine
          int to = pre_state(it.q, it.z, it.t, 0, -1);
          add(from, cL_, m_.bottom, to, {cSym_, m_.bottom});
          add(from, cL_, cSym_, to, {cSym_, cSym_});
          add(from, cL_, gBot_, to, {gBot_, cSym_});
        } else if (it.l >= 1) {
          // predicted: the C was pre-pushed at guess time
          int to = pre_state(it.q, it.z, it.t, 0, it.l - 1);
          add(from, cL_, m_.bottom, to, {m_.bottom});
          add(from, cL_, cSym_, to, {cSym_});
          for (int g : base_syms()) add(from, cL_, g, to, {g});
        } else if (it.t >= 0 && !it.z) {
          // unpredicted shift past absorbed material only
          int to = pre_state(it.q, it.z, tphi(it.t), 0, 0);
          add(from, cL_, m_.bottom, to, {cSym_, m_.bottom});
          add(from, cL_, cSym_, to, {cSym_, cSym_});
          add(from, cL_, gBot_, to, {gBot_, cSym_});
        }
      }
    }

    // input x: stage the letter. With outstanding predictions (l >= 1)
    // or live simulated content the current l is the only choice; with a
    // blank l, or l = 0 over absorbed-only material, a fresh count of
    // still-to-come migrating c's may be guessed, pre-pushing its C's and
    // compensating the absorbed part by that many extra phi applications.
    for (const Letter& x : X_) {
      if (it.l >= 0) {
        int to = stage_state(it.q, it.z, it.t, it.k, it.l, x);
        for (size_t sym = 0; sym < m_.stackNames.size(); ++sym)
          add(from, x, static_cast<int>(sym), to, {static_cast<int>(sym)});
      }
      if (it.l == -1 || (it.l == 0 && !it.z)) {
        size_t maxL = it.k >= d_.n ? 0 : d_.n - it.k;
        size_t first = it.l == -1 ? 0 : 1;  // l = 0 already staged above
        for (size_t lc = first; lc <= maxL; ++lc) {
          int tShift = it.t;
          for (size_t j = 0; j < lc; ++j) tShift = tphi(tShift);
          int to = stage_state(it.q, it.z, tShift, it.k, static_cast<int>(lc), x);
          if (lc == 0) {
            for (size_t sym = 0; sym < m_.stackNames.size(); ++sym)
              add(from, x, static_cast<int>(sym), to, {static_cast<int>(sym)});
          } else {
            std::vector<int> cs(lc, cSym_);
            {
              std::vector<int> push = cs;
              push.push_back(m_.bottom);
              add(from, x, m_.bottom, to, std::move(push));
            }
            {
              std::vector<int> push = cs;
              push.insert(push.begin(), cSym_);  // re-expose a C on top
              add(from, x, cSym_, to, std::move(push));
            }
            {
              std::vector<int> push{gBot_};
              push.insert(push.end(), cs.begin(), cs.end());
              add(from, x, gBot_, to, std::move(push));
            }
            if (it.k >= 1 && it.k <= NI) {
              // tunnel below the single B-region symbol and the base bottom
              int tun = state("PT|" + std::to_string(from) + "|" + x + "|" +
                              std::to_string(lc));
              add(from, x, bIdx_[it.k], tun, {});
              std::vector<int> push{bIdx_[it.k], gBot_};
              push.insert(push.end(), cs.begin(), cs.end());
              m_.add_move(tun, -1, gBot_, to, std::move(push));
            }
          }
        }
      }
    }

    // input #: move to the post side; the separator itself is simulated in
    // the base machine later (hp flag)
    if (it.l <= 0) {
      int to = post_state(it.q, it.t, -1, it.k, 0, true);
      add(from, kSeparator, m_.bottom, to, {gBot_, m_.bottom});
      add(from, kSeparator, cSym_, to, {gBot_, cSym_});
      for (size_t sym = 0; sym < m_.stackNames.size(); ++sym) {
        if (static_cast<int>(sym) == m_.bottom || static_cast<int>(sym) == cSym_)
          continue;
        add(from, kSeparator, static_cast<int>(sym), to,
            {static_cast<int>(sym)});
      }
    }
  }

  void expand_stage(const Item& it) {
    int from = stage_state(it.q, it.z, it.t, it.k, it.l, it.x);
    size_t power = bracket(it.k + static_cast<size_t>(it.l));
    int vt = powVal_.at(it.x)[power];
    if (vt >= 0) {
      // absorb into t; T holds the value, the stack is untouched
      int to = pre_state(it.q, it.z, mul1(it.t, vt), it.k, it.l);
      for (size_t sym = 0; sym < m_.stackNames.size(); ++sym)
        m_.add_move(from, -1, static_cast<int>(sym), to,
                    {static_cast<int>(sym)});
    }
    if (it.k + static_cast<size_t>(it.l) < d_.n) {
      // simulate reading [t] x psi^{k+l}; flushing t keeps the order right
      Word virt = rep(it.t);
      const Word& pw = powWord_.at(it.x)[it.k + static_cast<size_t>(it.l)];
      virt.insert(virt.end(), pw.begin(), pw.end());
      Cont cont;
      cont.key = "preS|" + std::to_string(it.k) + "|" + std::to_string(it.l);
      size_t k = it.k;
      int l = it.l;
      cont.target = [this, k, l](int q2) { return pre_state(q2, true, -1, k, l); };
      if (it.k >= 1) cont.repush = {bIdx_[it.k]};
      int entry = feed_chain(it.q, virt, 0, cont);
      if (it.k >= 1 && it.k <= ni()) {
        m_.add_move(from, -1, bIdx_[it.k], entry, {});
      } else if (it.k == 0) {
        for (int g : base_syms()) m_.add_move(from, -1, g, entry, {g});
        m_.add_move(from, -1, m_.bottom, entry, {gBot_, m_.bottom});
        m_.add_move(from, -1, cSym_, entry, {gBot_, cSym_});
      }
    }
  }

  void expand_post(const Item& it) {
    int from = post_state(it.q, it.t, it.t2, it.k, static_cast<size_t>(it.l),
                          it.hp);
    size_t NI = ni();
    size_t l = static_cast<size_t>(it.l);

    // input b: cancel B's (u's trailing b's) or D's (undoing bc = 1)
    {
      if (l == 0 && it.k >= NI) {
        size_t k2 = it.k > NI ? it.k - 1 : d_.m;
        add(from, bL_, bTail_,
            post_state(it.q, it.t, it.t2, k2, l, it.hp), {});
      }
      if (l == 0 && it.k >= 1 && it.k <= NI) {
        int to = post_state(it.q, it.t, it.t2, it.k - 1, l, it.hp);
        if (it.k >= 2)
          add(from, bL_, bIdx_[it.k], to, {bIdx_[it.k - 1]});
        else
          add(from, bL_, bIdx_[1], to, {});
      }
      if (l >= NI) {
        size_t l2 = l > NI ? l - 1 : d_.m;
        add(from, bL_, dTail_, post_state(it.q, it.t, it.t2, it.k, l2, it.hp),
            {});
      }
      if (l >= 1 && l <= NI) {
        int to = post_state(it.q, it.t, it.t2, it.k, l - 1, it.hp);
        if (l >= 2)
          add(from, bL_, dIdx_[l], to, {dIdx_[l - 1]});
        else
          add(from, bL_, dIdx_[1], to, {});
      }
    }

    // input c: count it in the D-region, l <- [l+1]
    {
      size_t l2 = bracket(l + 1);
      int to = post_state(it.q, it.t, it.t2, it.k, l2, it.hp);
      if (l == 0) {
        for (int g : base_syms()) add(from, cL_, g, to, {dIdx_[1], g});
        if (it.k >= 1 && it.k <= NI)
          add(from, cL_, bIdx_[it.k], to, {dIdx_[1], bIdx_[it.k]});
        if (it.k >= NI) add(from, cL_, bTail_, to, {dIdx_[1], bTail_});
      }
      if (l >= 1 && l <= NI) {
        if (l < NI)
          add(from, cL_, dIdx_[l], to, {dIdx_[l + 1]});
        else
          add(from, cL_, dIdx_[NI], to, {dTail_, dIdx_[NI]});
      }
      if (l >= NI) add(from, cL_, dTail_, to, {dTail_, dTail_});
    }

    // input x: absorb into t', or pop the markers and simulate
    for (const Letter& x : X_) {
      size_t power = bracket(it.k + l);
      int vt = powVal_.at(x)[power];
      if (vt >= 0) {
        int to = post_state(it.q, it.t, mul1(vt, it.t2), it.k, l, it.hp);
        for (size_t sym = 0; sym < m_.stackNames.size(); ++sym)
          add(from, x, static_cast<int>(sym), to, {static_cast<int>(sym)});
      }
      if (it.k + l < d_.n) {
        Word virt = rep(it.t);
        if (it.hp) virt.push_back(kSeparator);
        Word t2r = reversed(rep(it.t2));
        virt.insert(virt.end(), t2r.begin(), t2r.end());
        Word pwr = reversed(powWord_.at(x)[it.k + l]);
        virt.insert(virt.end(), pwr.begin(), pwr.end());
        Cont cont;
        cont.key = "postS|" + std::to_string(it.k) + "|" + std::to_string(l);
        size_t k = it.k;
        cont.target = [this, k, l](int q2) {
          return post_state(q2, -1, -1, k, l, false);
        };
        if (it.k >= 1) cont.repush = {bIdx_[it.k]};
        if (l >= 1) cont.repush.insert(cont.repush.begin(), dIdx_[l]);
        int entry = feed_chain(it.q, virt, 0, cont);
        if (l >= 1) {
          if (it.k >= 1) {
            int mid = state("QT|" + std::to_string(from) + "|" + x);
            add(from, x, dIdx_[l], mid, {});
            m_.add_move(mid, -1, bIdx_[it.k], entry, {});
          } else {
            add(from, x, dIdx_[l], entry, {});
          }
        } else if (it.k >= 1) {
          add(from, x, bIdx_[it.k], entry, {});
        } else {
          for (int g : base_syms()) add(from, x, g, entry, {g});
        }
      }
    }

    // endgame guess: no markers left, guess the product sigma of the still
    // unread generators, verify the base run, delete the base region
    if (it.k == 0 && l == 0) {
      std::vector<int> sigmas{-1};
      for (size_t s = 0; s < d_.tReps.size(); ++s)
        sigmas.push_back(static_cast<int>(s));
      for (int sigma : sigmas) {
        Word virt = rep(it.t);
        if (it.hp) virt.push_back(kSeparator);
        Word t2r = reversed(rep(it.t2));
        virt.insert(virt.end(), t2r.begin(), t2r.end());
        Word sr = reversed(rep(sigma));
        virt.insert(virt.end(), sr.begin(), sr.end());
        Cont cont;
        cont.key = "flush|" + std::to_string(sigma);
        cont.target = [this, sigma](int q2) {
          return base_.finals.count(q2) ? flush_tail(sigma) : -1;
        };
        int entry = feed_chain(it.q, virt, 0, cont);
        for (int g : base_syms()) m_.add_move(from, -1, g, entry, {g});
      }
    }
  }

  int flush_tail(int sigma) {
    std::string label = "FT|" + std::to_string(sigma);
    auto it = states_.find(label);
    if (it != states_.end()) return it->second;
    int id = state(label);
    m_.add_move(id, -1, gBot_, f_state(sigma, -1, 0, 0), {});
    return id;
  }

  void expand_f(const Item& it) {
    size_t dj = static_cast<size_t>(it.l);
    int from = f_state(it.t, it.t2, it.cj, dj);
    size_t NI = ni();
    if (it.t == it.t2) m_.finals.insert(from);

    // input c: match a C (a migrating c of v) or predict a b (bc-pair)
    {
      add(from, cL_, cSym_, f_state(it.t, it.t2, bracket(it.cj + 1), dj), {});
      size_t dj2 = bracket(dj + 1);
      int to = f_state(it.t, it.t2, it.cj, dj2);
      if (dj == 0) {
        add(from, cL_, cSym_, to, {dIdx_[1], cSym_});
        add(from, cL_, m_.bottom, to, {dIdx_[1], m_.bottom});
      }
      if (dj >= 1 && dj <= NI) {
        if (dj < NI)
          add(from, cL_, dIdx_[dj], to, {dIdx_[dj + 1]});
        else
          add(from, cL_, dIdx_[NI], to, {dTail_, dIdx_[NI]});
      }
      if (dj >= NI) add(from, cL_, dTail_, to, {dTail_, dTail_});
    }
    // input b: consume a predicted D
    {
      if (dj >= NI) {
        size_t dj2 = dj > NI ? dj - 1 : d_.m;
        add(from, bL_, dTail_, f_state(it.t, it.t2, it.cj, dj2), {});
      }
      if (dj >= 1 && dj <= NI) {
        int to = f_state(it.t, it.t2, it.cj, dj - 1);
        if (dj >= 2)
          add(from, bL_, dIdx_[dj], to, {dIdx_[dj - 1]});
        else
          add(from, bL_, dIdx_[1], to, {});
      }
    }
    // input x: multiply into pi with the tracked power
    for (const Letter& x : X_) {
      int vt = powVal_.at(x)[bracket(it.cj + dj)];
      if (vt < 0) continue;
      int to = f_state(it.t, mul1(vt, it.t2), it.cj, dj);
      for (size_t sym = 0; sym < m_.stackNames.size(); ++sym)
        add(from, x, static_cast<int>(sym), to, {static_cast<int>(sym)});
    }
  }

  BruckReillySpec spec_;
  BruckReillyData d_;
  Letter bL_, cL_;
  Npda base_;
  std::vector<Letter> X_;
  Npda m_;
  int cSym_ = -1, bTail_ = -1, dTail_ = -1, gBot_ = -1;
  std::vector<int> bIdx_, dIdx_;
  std::vector<int> gOff_;
  std::map<Letter, std::vector<Word>> powWord_;
  std::map<Letter, std::vector<int>> powVal_;
  std::map<std::string, int> states_;
  std::deque<Item> todo_;
};

}  // namespace detail

// BR(M, phi): derives the finite image data (or raises a hypothesis
// violation), then builds the stack machine above and pairs it with the
// normal-form fold oracle.
inline WordProblemObject bruck_reilly(const BruckReillySpec& specIn) {
  specIn.base.require_recognizer("bruck_reilly");
  if (!specIn.base.monoidFlag)
    throw InputError("Bruck-Reilly extension needs a monoid base");

  // keep the adjoined letters clear of the base alphabet
  BruckReillySpec spec = specIn;
  {
    std::set<Letter> used(spec.base.alphabet.begin(), spec.base.alphabet.end());
    std::map<Letter, Letter> ren;
    for (const Letter& l : spec.base.alphabet)
      if (l == "b" || l == "c") {
        Letter fresh = l;
        while (used.count(fresh)) fresh += "'";
        used.insert(fresh);
        ren[l] = fresh;
      }
    if (!ren.empty()) {
      spec.base = builders::rename_letters(spec.base, ren);
      std::map<Letter, Word> phi2;
      for (const auto& [x, img] : spec.phi) {
        Letter x2 = ren.count(x) ? ren.at(x) : x;
        Word img2;
        for (const Letter& y : img)
          img2.push_back(ren.count(y) ? ren.at(y) : y);
        phi2[x2] = img2;
      }
      spec.phi = std::move(phi2);
    }
  }

  BruckReillyData data = derive_bruck_reilly(spec);
  detail::BruckReillyBuilder builder(spec, data, "b", "c");
  Npda machine = builder.build();

  WordProblemObject out;
  out.alphabet = spec.base.alphabet;
  out.alphabet.push_back("b");
  out.alphabet.push_back("c");
  out.monoidFlag = true;
  out.recognizer = LanguageRep(std::move(machine));
  out.deterministicHint = false;
  out.oracle = br_oracle(spec, data, "b", "c");
  return out;
}

}  // namespace constructions
}  // namespace sgwp

#endif  // SGWP_BRUCK_REILLY_HPP
