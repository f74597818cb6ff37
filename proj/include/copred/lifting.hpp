#pragma once

#include <functional>
#include <string>
#include <vector>

#include "copred/fibre.hpp"
#include "copred/system.hpp"

namespace copred {

// The four concrete liftings.  canonical/simulation act on Boolean
// relations, sdw on discount-level relations, divergence on Boolean
// predicates.
enum class LiftingId { canonical_lts, simulation_lts, sdw_dfa, divergence_lts };

inline FibreKind lifting_kind(LiftingId id) {
  return id == LiftingId::divergence_lts ? FibreKind::predicate : FibreKind::relation;
}

inline std::string lifting_name(LiftingId id) {
  switch (id) {
    case LiftingId::canonical_lts: return "canonical";
    case LiftingId::simulation_lts: return "simulation";
    case LiftingId::sdw_dfa: return "sdw";
    case LiftingId::divergence_lts: return "divergence";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Raw liftings: relations/predicates over X lifted to explicit BX elements.
// A BX element is a one-step behaviour: per-label successor sets for the
// LTS functor, an output bit plus per-label next states for the DFA functor.

struct LtsBox {
  std::vector<std::vector<std::uint32_t>> succ;  // one sorted set per label
  friend bool operator==(const LtsBox&, const LtsBox&) = default;
  friend auto operator<=>(const LtsBox&, const LtsBox&) = default;
};

struct DfaBox {
  std::uint8_t out = 0;
  std::vector<std::uint32_t> next;  // one state per label
  friend bool operator==(const DfaBox&, const DfaBox&) = default;
  friend auto operator<=>(const DfaBox&, const DfaBox&) = default;
};

// Egli-Milner condition on one pair of successor sets.
inline bool egli_milner(const std::vector<std::uint32_t>& u,
                        const std::vector<std::uint32_t>& v, const BoolFibre& r) {
  for (std::uint32_t x : u) {
    bool matched = false;
    for (std::uint32_t y : v)
      if (r.at(x, y)) { matched = true; break; }
    if (!matched) return false;
  }
  for (std::uint32_t y : v) {
    bool matched = false;
    for (std::uint32_t x : u)
      if (r.at(x, y)) { matched = true; break; }
    if (!matched) return false;
  }
  return true;
}

// Forth-only half of the Egli-Milner condition.
inline bool forth_only(const std::vector<std::uint32_t>& u,
                       const std::vector<std::uint32_t>& v, const BoolFibre& r) {
  for (std::uint32_t x : u) {
    bool matched = false;
    for (std::uint32_t y : v)
      if (r.at(x, y)) { matched = true; break; }
    if (!matched) return false;
  }
  return true;
}

inline BoolFibre raw_canonical(const BoolFibre& r, const std::vector<LtsBox>& boxes) {
  const std::size_t m = boxes.size();
  BoolFibre out = BoolFibre::bottom(m, FibreKind::relation);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bool ok = true;
      for (std::size_t a = 0; ok && a < boxes[i].succ.size(); ++a)
        ok = egli_milner(boxes[i].succ[a], boxes[j].succ[a], r);
      out.set(i, j, ok);
    }
  return out;
}

inline BoolFibre raw_simulation(const BoolFibre& r, const std::vector<LtsBox>& boxes) {
  const std::size_t m = boxes.size();
  BoolFibre out = BoolFibre::bottom(m, FibreKind::relation);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bool ok = true;
      for (std::size_t a = 0; ok && a < boxes[i].succ.size(); ++a)
        ok = forth_only(boxes[i].succ[a], boxes[j].succ[a], r);
      out.set(i, j, ok);
    }
  return out;
}

inline BoolFibre raw_divergence(const BoolFibre& g, const std::vector<LtsBox>& boxes,
                                std::size_t tau) {
  const std::size_t m = boxes.size();
  BoolFibre out = BoolFibre::bottom(m, FibreKind::predicate);
  for (std::size_t i = 0; i < m; ++i) {
    bool in = false;
    for (std::uint32_t x : boxes[i].succ[tau])
      if (g.at(x)) { in = true; break; }
    out.set(i, in);
  }
  return out;
}

inline LevelFibre raw_sdw(const LevelFibre& d, const std::vector<DfaBox>& boxes) {
  const std::size_t m = boxes.size();
  LevelFibre out = LevelFibre::bottom(m, FibreKind::relation);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (boxes[i].out != boxes[j].out) {
        out.set(i, j, Level::of(0));
        continue;
      }
      // c * max of distances = successor of the min level.
      Level best = Level::inf();
      for (std::size_t a = 0; a < boxes[i].next.size(); ++a)
        best = DiscountLevel::meet(best, d.at(boxes[i].next[a], boxes[j].next[a]));
      out.set(i, j, best.discounted());
    }
  return out;
}

// All elements of (P X)^A respectively 2 x X^A over the carrier {0..n-1};
// used by the enumeration-based law checkers.
inline std::vector<LtsBox> enumerate_lts_boxes(std::size_t n, std::size_t na) {
  std::vector<std::vector<std::uint32_t>> subsets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t x = 0; x < n; ++x)
      if (mask >> x & 1) s.push_back(x);
    subsets.push_back(std::move(s));
  }
  std::vector<LtsBox> boxes{{std::vector<std::vector<std::uint32_t>>(na)}};
  for (std::size_t a = 0; a < na; ++a) {
    std::vector<LtsBox> grown;
    for (const auto& b : boxes)
      for (const auto& s : subsets) {
        LtsBox b2 = b;
        b2.succ[a] = s;
        grown.push_back(std::move(b2));
      }
    boxes = std::move(grown);
  }
  return boxes;
}

inline std::vector<DfaBox> enumerate_dfa_boxes(std::size_t n, std::size_t na) {
  std::vector<DfaBox> boxes;
  for (std::uint8_t o = 0; o < 2; ++o) {
    std::vector<DfaBox> partial{{o, {}}};
    for (std::size_t a = 0; a < na; ++a) {
      std::vector<DfaBox> grown;
      for (const auto& b : partial)
        for (std::uint32_t x = 0; x < n; ++x) {
          DfaBox b2 = b;
          b2.next.push_back(x);
          grown.push_back(std::move(b2));
        }
      partial = std::move(grown);
    }
    boxes.insert(boxes.end(), partial.begin(), partial.end());
  }
  return boxes;
}

// Callback forms of the raw liftings, so checkers can also be run against
// deliberately broken variants.
using RawLtsLifting = std::function<BoolFibre(const BoolFibre&, const std::vector<LtsBox>&)>;
using RawSdwLifting = std::function<LevelFibre(const LevelFibre&, const std::vector<DfaBox>&)>;

// ---------------------------------------------------------------------------
// Fused step operators R |-> gamma^*(B(R)) over a fixed system.

template <ValueLattice L>
using StepOperator = std::function<Fibre<L>(const Fibre<L>&)>;

inline BoolFibre step_canonical(const Lts& l, const BoolFibre& r) {
  if (r.carrier() != l.size() || r.kind() != FibreKind::relation)
    throw std::invalid_argument("step_canonical: carrier mismatch");
  const std::size_t n = l.size();
  BoolFibre out = BoolFibre::bottom(n, FibreKind::relation);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      bool ok = true;
      for (std::size_t a = 0; ok && a < l.alphabet_size(); ++a)
        ok = egli_milner(l.succ(x, a), l.succ(y, a), r);
      out.set(x, y, ok);
    }
  return out;
}

inline BoolFibre step_simulation(const Lts& l, const BoolFibre& r) {
  if (r.carrier() != l.size() || r.kind() != FibreKind::relation)
    throw std::invalid_argument("step_simulation: carrier mismatch");
  const std::size_t n = l.size();
  BoolFibre out = BoolFibre::bottom(n, FibreKind::relation);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      bool ok = true;
      for (std::size_t a = 0; ok && a < l.alphabet_size(); ++a)
        ok = forth_only(l.succ(x, a), l.succ(y, a), r);
      out.set(x, y, ok);
    }
  return out;
}

inline LevelFibre step_sdw(const Dfa& d, const LevelFibre& r) {
  if (r.carrier() != d.size() || r.kind() != FibreKind::relation)
    throw std::invalid_argument("step_sdw: carrier mismatch");
  const std::size_t n = d.size();
  LevelFibre out = LevelFibre::bottom(n, FibreKind::relation);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (d.output[x] != d.output[y]) {
        out.set(x, y, Level::of(0));
        continue;
      }
      Level best = Level::inf();
      for (std::size_t a = 0; a < d.alphabet_size(); ++a)
        best = DiscountLevel::meet(best, r.at(d.next(x, a), d.next(y, a)));
      out.set(x, y, best.discounted());
    }
  return out;
}

inline BoolFibre step_divergence(const Lts& l, const BoolFibre& g) {
  if (g.carrier() != l.size() || g.kind() != FibreKind::predicate)
    throw std::invalid_argument("step_divergence: carrier mismatch");
  const std::uint32_t tau = l.tau_or_throw();
  const std::size_t n = l.size();
  BoolFibre out = BoolFibre::bottom(n, FibreKind::predicate);
  for (std::size_t x = 0; x < n; ++x) {
    bool in = false;
    for (std::uint32_t y : l.succ(x, tau))
      if (g.at(y)) { in = true; break; }
    out.set(x, in);
  }
  return out;
}

inline StepOperator<Bool2> canonical_step(const Lts& l) {
  return [&l](const BoolFibre& r) { return step_canonical(l, r); };
}
inline StepOperator<Bool2> simulation_step(const Lts& l) {
  return [&l](const BoolFibre& r) { return step_simulation(l, r); };
}
inline StepOperator<DiscountLevel> sdw_step(const Dfa& d) {
  return [&d](const LevelFibre& r) { return step_sdw(d, r); };
}
inline StepOperator<Bool2> divergence_step(const Lts& l) {
  l.tau_or_throw();
  return [&l](const BoolFibre& g) { return step_divergence(l, g); };
}

}  // namespace copred
