#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "copred/fibre.hpp"
#include "copred/lifting.hpp"

namespace copred {

template <ValueLattice L>
struct FixpointResult {
  Fibre<L> value;                // the greatest fixed point
  std::vector<Fibre<L>> trace;   // top, step(top), ..., value (when retained)
  std::size_t steps = 0;         // index of stabilization
};

struct GfpOptions {
  bool keep_trace = true;
  std::size_t max_steps = 0;  // 0: use the default bound for the fibre
};

// Default iteration bounds.  Boolean chains shrink at least one entry per
// strict step; level chains drop every entry at most carrier^2 + 1 times.
inline std::size_t boolean_step_bound(std::size_t carrier, FibreKind kind) {
  std::size_t h = kind == FibreKind::relation ? carrier * carrier : carrier;
  return h + 2;
}
inline std::size_t level_step_bound(std::size_t carrier) {
  std::size_t h = carrier * carrier + 2;
  return h * h;
}

namespace detail {
template <ValueLattice L>
std::size_t default_bound(const Fibre<L>& top) {
  if constexpr (std::is_same_v<L, Bool2>)
    return boolean_step_bound(top.carrier(), top.kind());
  else
    return level_step_bound(top.carrier());
}
}  // namespace detail

// Descending Kleene iteration from the given top element.  Stops at the
// first repeat; equality is exact, so no tolerance is involved.
template <ValueLattice L>
FixpointResult<L> gfp(const StepOperator<L>& step, Fibre<L> top, GfpOptions opts = {}) {
  std::size_t bound = opts.max_steps ? opts.max_steps : detail::default_bound(top);
  FixpointResult<L> result{top, {}, 0};
  if (opts.keep_trace) result.trace.push_back(top);
  Fibre<L> current = std::move(top);
  for (std::size_t i = 0;; ++i) {
    if (i > bound)
      throw std::runtime_error("gfp: no stabilization within " + std::to_string(bound) +
                               " steps; step operator is not descending");
    Fibre<L> next = step(current);
    if (!fibre_leq(next, current))
      throw std::runtime_error("gfp: chain is not descending at step " + std::to_string(i) +
                               "; step operator is not monotone");
    if (next == current) {
      result.value = std::move(current);
      result.steps = i;
      return result;
    }
    if (opts.keep_trace) result.trace.push_back(next);
    current = std::move(next);
  }
}

// R <= step(R): R is an invariant (a bisimulation/simulation/... candidate).
template <ValueLattice L>
bool is_postfixed(const StepOperator<L>& step, const Fibre<L>& r) {
  return fibre_leq(r, step(r));
}

// The i-th Kleene approximant, constant after stabilization.
template <ValueLattice L>
Fibre<L> approximant(const StepOperator<L>& step, Fibre<L> top, std::size_t i) {
  Fibre<L> current = std::move(top);
  for (std::size_t k = 0; k < i; ++k) {
    Fibre<L> next = step(current);
    if (next == current) return current;
    current = std::move(next);
  }
  return current;
}

template <ValueLattice L>
const Fibre<L>& approximant(const FixpointResult<L>& r, std::size_t i) {
  if (r.trace.empty()) throw std::logic_error("approximant: trace was not retained");
  return r.trace[i < r.steps ? i : r.steps];
}

}  // namespace copred
