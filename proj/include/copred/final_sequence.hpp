#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "copred/fibre.hpp"
#include "copred/formula.hpp"
#include "copred/lifting.hpp"
#include "copred/system.hpp"

namespace copred {

struct stage_cap_error : std::runtime_error {
  stage_cap_error(std::size_t stage, const std::string& cardinality)
      : std::runtime_error("final sequence stage " + std::to_string(stage) +
                           " has " + cardinality + " elements, over the configured bound"),
        stage(stage) {}
  std::size_t stage;
};

// Canonical depth-stratified behaviour trees for one behaviour functor.
// Stage 0 is a single point; a stage-(s+1) node records one-step behaviour
// whose children are stage-s nodes.  Nodes are interned, so index equality
// is tree equality.  Stages can hold just the trees reached from a system
// (via cone) or the fully enumerated carrier (via materialize_full).
template <typename Box>
class Stages {
 public:
  Stages(std::size_t alphabet, std::size_t cap) : alphabet_(alphabet), cap_(cap) {}

  std::size_t alphabet() const { return alphabet_; }
  std::size_t cap() const { return cap_; }

  std::size_t stage_size(std::size_t s) const {
    if (s == 0) return 1;
    return s <= nodes_.size() ? nodes_[s - 1].size() : 0;
  }
  const Box& node(std::size_t s, std::uint32_t idx) const { return nodes_.at(s - 1).at(idx); }
  const std::vector<Box>& stage_nodes(std::size_t s) const { return nodes_.at(s - 1); }

  std::uint32_t intern(std::size_t s, Box box) {
    if (s == 0) return 0;
    if (nodes_.size() < s) { nodes_.resize(s); index_.resize(s); }
    auto& idx = index_[s - 1];
    auto it = idx.find(box);
    if (it != idx.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(nodes_[s - 1].size());
    if (nodes_[s - 1].size() >= cap_) throw stage_cap_error(s, "more than cap");
    nodes_[s - 1].push_back(box);
    idx.emplace(std::move(box), id);
    return id;
  }

 protected:
  std::size_t alphabet_;
  std::size_t cap_;
  std::vector<std::vector<Box>> nodes_;           // nodes_[s-1] = stage-s carrier
  std::vector<std::map<Box, std::uint32_t>> index_;
};

// ---------------------------------------------------------------------------
// Deterministic-automaton trees: output bit plus one child per label.

class DfaStages : public Stages<DfaBox> {
 public:
  explicit DfaStages(std::size_t alphabet, std::size_t cap = 1'000'000)
      : Stages(alphabet, cap) {}

  // |B^{s}1| = 2 * m^A where m is the size of stage s-1.
  void materialize_full(std::size_t s) {
    if (s == 0) return;
    materialize_full(s - 1);
    std::size_t m = stage_size(s - 1);
    double estimate = 2.0;
    for (std::size_t a = 0; a < alphabet_; ++a) estimate *= static_cast<double>(m);
    if (estimate > static_cast<double>(cap_))
      throw stage_cap_error(s, "2*" + std::to_string(m) + "^" + std::to_string(alphabet_));
    for (const DfaBox& box : enumerate_dfa_boxes(m, alphabet_)) intern(s, box);
  }

  // gamma_i: the depth-i unfolding of every state.
  std::vector<std::uint32_t> cone(const Dfa& d, std::size_t i) {
    if (d.alphabet_size() != alphabet_) throw std::invalid_argument("cone: alphabet mismatch");
    std::vector<std::uint32_t> gamma(d.size(), 0);
    for (std::size_t s = 1; s <= i; ++s) {
      std::vector<std::uint32_t> next(d.size());
      for (std::size_t x = 0; x < d.size(); ++x) {
        DfaBox box{d.output[x], {}};
        for (std::size_t a = 0; a < alphabet_; ++a) box.next.push_back(gamma[d.next(x, a)]);
        next[x] = intern(s, std::move(box));
      }
      gamma = std::move(next);
    }
    return gamma;
  }

  // delta_s in Boolean form: the theory of a stage-s tree at a word of
  // length < s.  The discounted value of Section "words as tests" is
  // c^{|w|} * this bit, reconstructed by the caller from the length.
  std::uint8_t delta_word(std::size_t s, std::uint32_t idx, const WordFormula& w,
                          std::size_t from = 0) const {
    if (w.letters.size() - from >= s)
      throw std::invalid_argument("delta_word: word too long for this stage");
    const DfaBox& b = node(s, idx);
    if (from == w.letters.size()) return b.out;
    return delta_word(s - 1, b.next.at(w.letters[from]), w, from + 1);
  }

  // b_{s, s-1}: forget the deepest layer of a stage-s tree.
  std::uint32_t project(std::size_t s, std::uint32_t idx) {
    if (s == 0) throw std::invalid_argument("project: stage 0 has no predecessor");
    if (s == 1) return 0;
    DfaBox out = node(s, idx);
    for (auto& child : out.next) child = project(s - 1, child);
    return intern(s - 1, std::move(out));
  }

  std::string render(std::size_t s, std::uint32_t idx) const {
    if (s == 0) return "*";
    const DfaBox& b = node(s, idx);
    std::string out = "(" + std::to_string(int(b.out));
    for (std::uint32_t child : b.next) out += " " + std::to_string(child);
    return out + ")";
  }
};

// ---------------------------------------------------------------------------
// Transition-system trees: one set of children per label.

class LtsStages : public Stages<LtsBox> {
 public:
  explicit LtsStages(std::size_t alphabet, std::size_t cap = 1'000'000)
      : Stages(alphabet, cap) {}

  // |B^{s}1| = 2^(m*A) where m is the size of stage s-1.
  void materialize_full(std::size_t s) {
    if (s == 0) return;
    materialize_full(s - 1);
    std::size_t m = stage_size(s - 1);
    if (m * alphabet_ >= 63 ||
        (std::size_t{1} << (m * alphabet_)) > cap_)
      throw stage_cap_error(s, "2^" + std::to_string(m * alphabet_));
    for (const LtsBox& box : enumerate_lts_boxes(m, alphabet_)) intern(s, box);
  }

  std::vector<std::uint32_t> cone(const Lts& l, std::size_t i) {
    if (l.alphabet_size() != alphabet_) throw std::invalid_argument("cone: alphabet mismatch");
    std::vector<std::uint32_t> gamma(l.size(), 0);
    for (std::size_t s = 1; s <= i; ++s) {
      std::vector<std::uint32_t> next(l.size());
      for (std::size_t x = 0; x < l.size(); ++x) {
        LtsBox box{std::vector<std::vector<std::uint32_t>>(alphabet_)};
        for (std::size_t a = 0; a < alphabet_; ++a) {
          for (std::uint32_t y : l.succ(x, a)) box.succ[a].push_back(gamma[y]);
          std::sort(box.succ[a].begin(), box.succ[a].end());
          box.succ[a].erase(std::unique(box.succ[a].begin(), box.succ[a].end()),
                            box.succ[a].end());
        }
        next[x] = intern(s, std::move(box));
      }
      gamma = std::move(next);
    }
    return gamma;
  }

  std::uint8_t delta_tau(std::size_t s, std::uint32_t idx, std::uint32_t n,
                         std::uint32_t tau) const {
    if (n >= s) throw std::invalid_argument("delta_tau: formula too deep for this stage");
    if (n == 0) return 1;
    for (std::uint32_t child : node(s, idx).succ.at(tau))
      if (delta_tau(s - 1, child, n - 1, tau)) return 1;
    return 0;
  }

  std::uint8_t delta_hm(std::size_t s, std::uint32_t idx, const HmFormula& phi) const {
    if (phi.is_top()) return 1;
    if (phi.depth() > s) throw std::invalid_argument("delta_hm: formula too deep for this stage");
    for (const auto& part : phi.parts()) {
      bool witnessed = false;
      for (std::uint32_t child : node(s, idx).succ.at(part.label))
        if (delta_hm(s - 1, child, *part.child)) { witnessed = true; break; }
      if (!witnessed) return 0;
    }
    return 1;
  }

  std::uint32_t project(std::size_t s, std::uint32_t idx) {
    if (s == 0) throw std::invalid_argument("project: stage 0 has no predecessor");
    if (s == 1) return 0;
    LtsBox out = node(s, idx);
    for (auto& set : out.succ) {
      for (auto& child : set) child = project(s - 1, child);
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return intern(s - 1, std::move(out));
  }

  std::string render(std::size_t s, std::uint32_t idx) const {
    if (s == 0) return "*";
    const LtsBox& b = node(s, idx);
    std::string out = "(";
    for (std::size_t a = 0; a < b.succ.size(); ++a) {
      if (a) out += " ";
      out += "{";
      for (std::size_t i = 0; i < b.succ[a].size(); ++i)
        out += (i ? "," : "") + std::to_string(b.succ[a][i]);
      out += "}";
    }
    return out + ")";
  }
};

// ---------------------------------------------------------------------------
// B-bar^i 1: the lifted final sequence, by i-fold raw lifting from the top
// of the fibre over the one-point stage.  Values are computed on whatever
// part of the stages is interned; lifting formulas only consult children,
// which are always present.

inline BoolFibre stage_lifting_bool(const LtsStages& st, LiftingId id, std::size_t i) {
  BoolFibre m = BoolFibre::top(1, FibreKind::relation);
  for (std::size_t s = 1; s <= i; ++s)
    m = id == LiftingId::canonical_lts ? raw_canonical(m, st.stage_nodes(s))
                                       : raw_simulation(m, st.stage_nodes(s));
  return m;
}

inline BoolFibre stage_lifting_divergence(const LtsStages& st, std::uint32_t tau,
                                          std::size_t i) {
  BoolFibre m = BoolFibre::top(1, FibreKind::predicate);
  for (std::size_t s = 1; s <= i; ++s) m = raw_divergence(m, st.stage_nodes(s), tau);
  return m;
}

inline LevelFibre stage_lifting_sdw(const DfaStages& st, std::size_t i) {
  LevelFibre m = LevelFibre::top(1, FibreKind::relation);
  for (std::size_t s = 1; s <= i; ++s) m = raw_sdw(m, st.stage_nodes(s));
  return m;
}

}  // namespace copred
