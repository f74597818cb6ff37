#pragma once

#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "copred/fixpoint.hpp"
#include "copred/logic.hpp"
#include "copred/oracles.hpp"
#include "copred/system.hpp"

namespace copred {

// How two theories are compared: equality of theories, inclusion, the
// least distinguishing level, or "every formula holds".
enum class Mode { equality, inclusion, sup_distance, totality };

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::equality: return "equality";
    case Mode::inclusion: return "inclusion";
    case Mode::sup_distance: return "sup-distance";
    case Mode::totality: return "totality";
  }
  return "?";
}

// The four supported predicate/logic pairings.
enum class PipelineId { sdw, divergence, similarity, bisimilarity };

inline std::string pipeline_name(PipelineId p) {
  switch (p) {
    case PipelineId::sdw: return "sdw";
    case PipelineId::divergence: return "divergence";
    case PipelineId::similarity: return "similarity";
    case PipelineId::bisimilarity: return "bisimilarity";
  }
  return "?";
}

struct ComparisonObject {
  std::variant<BoolFibre, LevelFibre> value;
  LogicId logic;
  Mode mode;
  std::size_t depth;
};

// ---------------------------------------------------------------------------
// Comparison objects, computed directly from satisfaction rather than from
// the lifting-based step operators.

// Least length of a word below the depth bound telling the states apart:
// breadth-first search from the output-discrepant pairs backwards through
// the simultaneous-step pair graph.
inline LevelFibre comparison_sup_distance(const Dfa& d, std::size_t k) {
  const std::size_t n = d.size();
  std::vector<std::size_t> dist(n * n, static_cast<std::size_t>(-1));
  std::deque<std::pair<std::uint32_t, std::uint32_t>> frontier;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (d.output[x] != d.output[y]) {
        dist[x * n + y] = 0;
        frontier.emplace_back(x, y);
      }
  while (!frontier.empty()) {
    auto [x, y] = frontier.front();
    frontier.pop_front();
    for (std::uint32_t p = 0; p < n; ++p)
      for (std::uint32_t q = 0; q < n; ++q) {
        if (dist[p * n + q] != static_cast<std::size_t>(-1)) continue;
        for (std::size_t a = 0; a < d.alphabet_size(); ++a)
          if (d.next(p, a) == x && d.next(q, a) == y) {
            dist[p * n + q] = dist[x * n + y] + 1;
            frontier.emplace_back(p, q);
            break;
          }
      }
  }
  LevelFibre out = LevelFibre::top(n, FibreKind::relation);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      std::size_t l = dist[x * n + y];
      if (l != static_cast<std::size_t>(-1) && l < k)
        out.set(x, y, Level::of(static_cast<std::uint32_t>(l)));
    }
  return out;
}

// States whose whole depth-bounded tau-tower theory is true.  Downward
// closure of the theories makes this the single deepest formula.
inline BoolFibre comparison_totality(const Lts& l, std::size_t k) {
  BoolFibre out = BoolFibre::top(l.size(), FibreKind::predicate);
  if (k == 0) return out;
  for (std::uint32_t x = 0; x < l.size(); ++x)
    out.set(x, sat_tau(l, x, static_cast<std::uint32_t>(k - 1)));
  return out;
}

// Depth-stratified theory inclusion for the conjunction/diamond logic.
// With a finite alphabet, theories of depth i+1 are included exactly when
// every move of x is answered by a move of y with depth-i included
// theories; the loop below iterates that characterization.  Tests check it
// against literal formula enumeration at small depths.
inline BoolFibre comparison_inclusion(const Lts& l, std::size_t k) {
  const std::size_t n = l.size();
  BoolFibre incl = BoolFibre::top(n, FibreKind::relation);
  for (std::size_t step = 0; step < k; ++step) {
    BoolFibre next = BoolFibre::bottom(n, FibreKind::relation);
    bool changed = false;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) {
        bool ok = true;
        for (std::size_t a = 0; ok && a < l.alphabet_size(); ++a)
          for (std::uint32_t x2 : l.succ(x, a)) {
            bool answered = false;
            for (std::uint32_t y2 : l.succ(y, a))
              if (incl.at(x2, y2)) { answered = true; break; }
            if (!answered) { ok = false; break; }
          }
        next.set(x, y, ok);
        changed |= ok != (incl.at(x, y) != 0);
      }
    incl = std::move(next);
    if (!changed) break;
  }
  return incl;
}

// Theory equality is inclusion both ways (the semilattice logic has no
// negation, so this is mutual inclusion, not a back-and-forth condition).
inline BoolFibre comparison_equality_hm(const Lts& l, std::size_t k) {
  BoolFibre incl = comparison_inclusion(l, k);
  BoolFibre out = BoolFibre::bottom(l.size(), FibreKind::relation);
  for (std::uint32_t x = 0; x < l.size(); ++x)
    for (std::uint32_t y = 0; y < l.size(); ++y)
      out.set(x, y, incl.at(x, y) && incl.at(y, x));
  return out;
}

// Word theories agree below the depth bound.
inline BoolFibre comparison_equality_words(const Dfa& d, std::size_t k) {
  LevelFibre dist = comparison_sup_distance(d, k);
  BoolFibre out = BoolFibre::bottom(d.size(), FibreKind::relation);
  for (std::uint32_t x = 0; x < d.size(); ++x)
    for (std::uint32_t y = 0; y < d.size(); ++y)
      out.set(x, y, dist.at(x, y) == Level::inf());
  return out;
}

inline ComparisonObject comparison(const System& system, LogicId logic, Mode mode,
                                   std::size_t k) {
  if (const Dfa* d = std::get_if<Dfa>(&system)) {
    if (logic == LogicId::words && mode == Mode::sup_distance)
      return {comparison_sup_distance(*d, k), logic, mode, k};
    if (logic == LogicId::words && mode == Mode::equality)
      return {comparison_equality_words(*d, k), logic, mode, k};
    throw unsupported_error("comparison: unsupported logic/mode for a dfa");
  }
  const Lts& l = std::get<Lts>(system);
  if (logic == LogicId::tau_tower && mode == Mode::totality)
    return {comparison_totality(l, k), logic, mode, k};
  if (logic == LogicId::hm && mode == Mode::inclusion)
    return {comparison_inclusion(l, k), logic, mode, k};
  if (logic == LogicId::hm && mode == Mode::equality)
    return {comparison_equality_hm(l, k), logic, mode, k};
  throw unsupported_error("comparison: unsupported logic/mode for an lts");
}

// ---------------------------------------------------------------------------
// Minimal distinguishing witnesses, re-checkable by the satisfaction maps.

// Lexicographically least shortest word accepted from exactly one of the
// two states.
inline std::optional<WordFormula> minimal_distinguishing_word(const Dfa& d, std::uint32_t x,
                                                              std::uint32_t y) {
  const std::size_t n = d.size();
  struct From {
    std::uint32_t prev;
    std::uint32_t label;
  };
  std::vector<std::uint8_t> seen(n * n, 0);
  std::vector<From> from(n * n);
  std::deque<std::uint32_t> frontier{x * static_cast<std::uint32_t>(n) + y};
  seen[x * n + y] = 1;
  while (!frontier.empty()) {
    std::uint32_t pq = frontier.front();
    frontier.pop_front();
    std::uint32_t p = pq / n, q = pq % n;
    if (d.output[p] != d.output[q]) {
      WordFormula w;
      while (pq != x * n + y) {
        w.letters.push_back(from[pq].label);
        pq = from[pq].prev;
      }
      std::reverse(w.letters.begin(), w.letters.end());
      return w;
    }
    for (std::uint32_t a = 0; a < d.alphabet_size(); ++a) {
      std::uint32_t p2 = d.next(p, a), q2 = d.next(q, a);
      std::uint32_t pq2 = p2 * static_cast<std::uint32_t>(n) + q2;
      if (!seen[pq2]) {
        seen[pq2] = 1;
        from[pq2] = {pq, a};
        frontier.push_back(pq2);
      }
    }
  }
  return std::nullopt;
}

inline std::optional<TauFormula> minimal_distinguishing_tau(const Lts& l, std::uint32_t x,
                                                            std::uint32_t y, std::size_t k) {
  for (std::uint32_t n = 0; n < k; ++n)
    if (sat_tau(l, x, n) != sat_tau(l, y, n)) return TauFormula{n};
  return std::nullopt;
}

// Least-depth formula true at x but not at y; ties broken by the canonical
// normal-form order.  Enumerates stages while they fit the cap and falls
// back to a constructive witness from the inclusion refinement beyond it.
inline std::optional<HmFormula> minimal_distinguishing_hm(const Lts& l, std::uint32_t x,
                                                          std::uint32_t y, std::size_t max_depth,
                                                          std::size_t cap = 1u << 16) {
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    std::vector<HmFormula> stage;
    try {
      stage = enumerate_hm(l.alphabet_size(), depth, cap);
    } catch (const unsupported_error&) {
      break;  // constructive fallback below
    }
    std::sort(stage.begin(), stage.end(), [](const HmFormula& a, const HmFormula& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (const HmFormula& phi : stage)
      if (sat_hm(l, x, phi) && !sat_hm(l, y, phi)) return phi;
  }

  // Constructive route: find the refinement stage separating the pair and
  // rebuild a distinguishing formula from the violating move.
  std::vector<BoolFibre> chain{BoolFibre::top(l.size(), FibreKind::relation)};
  for (std::size_t i = 1; i <= max_depth; ++i) {
    chain.push_back(comparison_inclusion(l, i));
    if (chain[i] == chain[i - 1]) break;
  }
  struct Builder {
    const Lts& l;
    const std::vector<BoolFibre>& chain;
    std::optional<HmFormula> build(std::uint32_t x, std::uint32_t y, std::size_t stage) const {
      if (chain[stage].at(x, y)) return std::nullopt;
      std::size_t s = stage;
      while (s > 1 && !chain[s - 1].at(x, y)) --s;  // minimal separating stage
      for (std::size_t a = 0; a < l.alphabet_size(); ++a)
        for (std::uint32_t x2 : l.succ(x, a)) {
          bool answered = false;
          for (std::uint32_t y2 : l.succ(y, a))
            if (chain[s - 1].at(x2, y2)) { answered = true; break; }
          if (answered) continue;
          HmFormula body = HmFormula::top();
          for (std::uint32_t y2 : l.succ(y, a))
            if (auto sub = build(x2, y2, s - 1)) body = HmFormula::conj(body, *sub);
          return HmFormula::diamond(static_cast<std::uint32_t>(a), body);
        }
      return std::nullopt;
    }
  };
  std::size_t last = chain.size() - 1;
  if (chain[last].at(x, y)) return std::nullopt;
  return Builder{l, chain}.build(x, y, last);
}

// ---------------------------------------------------------------------------
// Verdicts.

struct Witness {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  bool is_pair = true;
  std::string formula;          // rendered distinguishing formula, when one exists
  std::size_t separation_stage = 0;
  std::string detail;
};

struct Verdict {
  bool adequacy_holds = true;
  bool expressiveness_holds = true;
  std::optional<Witness> adequacy_witness;
  std::optional<Witness> expressiveness_witness;
  std::size_t depth = 0;
  bool stabilized = false;        // gfp reached within the depth bound
  std::size_t stabilization_steps = 0;
  bool gfp_requested_but_unstable = false;
};

namespace checker_detail {

template <ValueLattice L>
std::optional<std::pair<std::uint32_t, std::uint32_t>> first_violation(const Fibre<L>& lo,
                                                                       const Fibre<L>& hi) {
  const std::size_t n = lo.carrier();
  if (lo.kind() == FibreKind::relation) {
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        if (!L::leq(lo.at(x, y), hi.at(x, y))) return std::make_pair(x, y);
  } else {
    for (std::uint32_t x = 0; x < n; ++x)
      if (!L::leq(lo.at(x), hi.at(x))) return std::make_pair(x, x);
  }
  return std::nullopt;
}

// First trace index at which the approximant at the witness position drops
// strictly below the comparison entry.
template <ValueLattice L>
std::size_t separation_stage(const std::vector<Fibre<L>>& trace, const Fibre<L>& comp,
                             std::uint32_t x, std::uint32_t y) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto approx = trace[i].kind() == FibreKind::relation ? trace[i].at(x, y) : trace[i].at(x);
    auto want = comp.kind() == FibreKind::relation ? comp.at(x, y) : comp.at(x);
    if (!L::leq(want, approx)) return i;
  }
  return trace.size();
}

}  // namespace checker_detail

// One step of the canonical relation lifting for the deterministic-automaton
// functor: outputs agree and every successor pair is related.
inline BoolFibre step_canonical_dfa(const Dfa& d, const BoolFibre& r) {
  if (r.carrier() != d.size() || r.kind() != FibreKind::relation)
    throw std::invalid_argument("step_canonical_dfa: carrier mismatch");
  BoolFibre out = BoolFibre::bottom(d.size(), FibreKind::relation);
  for (std::uint32_t x = 0; x < d.size(); ++x)
    for (std::uint32_t y = 0; y < d.size(); ++y) {
      bool ok = d.output[x] == d.output[y];
      for (std::size_t a = 0; ok && a < d.alphabet_size(); ++a)
        ok = r.at(d.next(x, a), d.next(y, a)) != 0;
      out.set(x, y, ok);
    }
  return out;
}

inline StepOperator<Bool2> canonical_dfa_step(const Dfa& d) {
  return [&d](const BoolFibre& r) { return step_canonical_dfa(d, r); };
}

// ---------------------------------------------------------------------------
// The full adequacy/expressiveness check for one pipeline at depth k.

template <ValueLattice L>
Verdict check_against(const FixpointResult<L>& fix, const Fibre<L>& comp, std::size_t k,
                      bool use_gfp,
                      const std::function<std::string(std::uint32_t, std::uint32_t)>& explain) {
  Verdict v;
  v.depth = k;
  v.stabilization_steps = fix.steps;
  v.stabilized = fix.steps <= k;
  v.gfp_requested_but_unstable = use_gfp && !v.stabilized;
  const Fibre<L>& predicate = use_gfp ? fix.value : approximant(fix, k);

  if (auto bad = checker_detail::first_violation(predicate, comp)) {
    v.adequacy_holds = false;
    Witness w;
    w.x = bad->first;
    w.y = bad->second;
    w.is_pair = predicate.kind() == FibreKind::relation;
    w.formula = explain(bad->first, bad->second);
    w.detail = "predicate entry above the comparison entry";
    v.adequacy_witness = std::move(w);
  }
  if (auto bad = checker_detail::first_violation(comp, predicate)) {
    v.expressiveness_holds = false;
    Witness w;
    w.x = bad->first;
    w.y = bad->second;
    w.is_pair = predicate.kind() == FibreKind::relation;
    w.separation_stage = checker_detail::separation_stage(fix.trace, comp, bad->first, bad->second);
    w.detail = "comparison entry above the predicate entry";
    v.expressiveness_witness = std::move(w);
  }
  return v;
}

inline Verdict check(const System& system, PipelineId pipeline, std::size_t k, bool use_gfp) {
  switch (pipeline) {
    case PipelineId::sdw: {
      const Dfa* d = std::get_if<Dfa>(&system);
      if (!d) throw unsupported_error("the sdw pipeline needs a dfa");
      auto fix = gfp(sdw_step(*d), LevelFibre::top(d->size(), FibreKind::relation));
      LevelFibre comp = comparison_sup_distance(*d, k);
      return check_against<DiscountLevel>(
          fix, comp, k, use_gfp, [&](std::uint32_t x, std::uint32_t y) {
            auto w = minimal_distinguishing_word(*d, x, y);
            return w ? "word witness of length " + std::to_string(w->letters.size())
                     : std::string{};
          });
    }
    case PipelineId::divergence: {
      const Lts* l = std::get_if<Lts>(&system);
      if (!l) throw unsupported_error("the divergence pipeline needs an lts");
      auto fix = gfp(divergence_step(*l), BoolFibre::top(l->size(), FibreKind::predicate));
      BoolFibre comp = comparison_totality(*l, k);
      return check_against<Bool2>(fix, comp, k, use_gfp,
                                  [&](std::uint32_t x, std::uint32_t) {
                                    for (std::uint32_t n = 0; n < k; ++n)
                                      if (!sat_tau(*l, x, n))
                                        return "<tau>^" + std::to_string(n) + " T";
                                    return std::string{};
                                  });
    }
    case PipelineId::similarity: {
      const Lts* l = std::get_if<Lts>(&system);
      if (!l) throw unsupported_error("the similarity pipeline needs an lts");
      auto fix = gfp(simulation_step(*l), BoolFibre::top(l->size(), FibreKind::relation));
      BoolFibre comp = comparison_inclusion(*l, k);
      return check_against<Bool2>(fix, comp, k, use_gfp,
                                  [&](std::uint32_t x, std::uint32_t y) {
                                    auto phi = minimal_distinguishing_hm(*l, x, y, k);
                                    return phi ? phi->render(l->labels) : std::string{};
                                  });
    }
    case PipelineId::bisimilarity: {
      if (const Dfa* d = std::get_if<Dfa>(&system)) {
        auto fix = gfp(canonical_dfa_step(*d), BoolFibre::top(d->size(), FibreKind::relation));
        BoolFibre comp = comparison_equality_words(*d, k);
        return check_against<Bool2>(fix, comp, k, use_gfp,
                                    [&](std::uint32_t x, std::uint32_t y) {
                                      auto w = minimal_distinguishing_word(*d, x, y);
                                      return w ? "word of length " +
                                                     std::to_string(w->letters.size())
                                               : std::string{};
                                    });
      }
      const Lts& l = std::get<Lts>(system);
      auto fix = gfp(canonical_step(l), BoolFibre::top(l.size(), FibreKind::relation));
      BoolFibre comp = comparison_equality_hm(l, k);
      return check_against<Bool2>(fix, comp, k, use_gfp,
                                  [&](std::uint32_t x, std::uint32_t y) {
                                    auto phi = minimal_distinguishing_hm(l, x, y, k);
                                    if (!phi) phi = minimal_distinguishing_hm(l, y, x, k);
                                    return phi ? phi->render(l.labels) : std::string{};
                                  });
    }
  }
  throw unsupported_error("unknown pipeline");
}

// Prop.-style behavioural-equivalence check: logical equivalence at depth k
// against the partition-refinement oracle.  The conjunction/diamond logic
// has no negation, so its one-step semantics is not injective and the
// expressiveness direction can genuinely fail; the verdict then carries a
// pair that is logically equivalent but not bisimilar.
inline Verdict behavioural_equivalence_check(const Lts& l, std::size_t k) {
  auto fix = gfp(canonical_step(l), BoolFibre::top(l.size(), FibreKind::relation));
  BoolFibre oracle = bisimilarity_oracle(l);
  BoolFibre comp = comparison_equality_hm(l, k);

  Verdict v;
  v.depth = k;
  v.stabilization_steps = fix.steps;
  v.stabilized = fix.steps <= k;
  if (auto bad = checker_detail::first_violation(oracle, comp)) {
    v.adequacy_holds = false;
    Witness w;
    w.x = bad->first;
    w.y = bad->second;
    auto phi = minimal_distinguishing_hm(l, w.x, w.y, k);
    if (!phi) phi = minimal_distinguishing_hm(l, w.y, w.x, k);
    if (phi) w.formula = phi->render(l.labels);
    w.detail = "bisimilar pair with distinct depth-" + std::to_string(k) + " theories";
    v.adequacy_witness = std::move(w);
  }
  if (auto bad = checker_detail::first_violation(comp, oracle)) {
    v.expressiveness_holds = false;
    Witness w;
    w.x = bad->first;
    w.y = bad->second;
    w.separation_stage = checker_detail::separation_stage(fix.trace, comp, w.x, w.y);
    w.detail = "logically equivalent pair that is not bisimilar";
    v.expressiveness_witness = std::move(w);
  }
  return v;
}

}  // namespace copred
