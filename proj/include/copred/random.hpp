#pragma once

#include <random>
#include <string>
#include <vector>

#include "copred/system.hpp"

namespace copred {

// Bounded draw; the slight modulo bias is irrelevant for test corpora and
// keeps the sequence reproducible from the seed alone.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline Dfa random_dfa(std::mt19937_64& rng, std::size_t max_states, std::size_t max_labels) {
  Dfa d;
  const std::size_t n = 1 + draw(rng, max_states);
  const std::size_t na = 1 + draw(rng, max_labels);
  for (std::size_t x = 0; x < n; ++x) d.state_names.push_back("q" + std::to_string(x));
  for (std::size_t a = 0; a < na; ++a) d.labels.push_back(std::string(1, static_cast<char>('a' + a)));
  for (std::size_t x = 0; x < n; ++x) d.output.push_back(static_cast<std::uint8_t>(draw(rng, 2)));
  for (std::size_t e = 0; e < n * na; ++e)
    d.next_table.push_back(static_cast<std::uint32_t>(draw(rng, n)));
  return d;
}

inline Lts random_lts(std::mt19937_64& rng, std::size_t max_states, std::size_t max_labels,
                      bool with_tau) {
  Lts l;
  const std::size_t n = 1 + draw(rng, max_states);
  const std::size_t na = 1 + draw(rng, max_labels);
  for (std::size_t x = 0; x < n; ++x) l.state_names.push_back("s" + std::to_string(x));
  for (std::size_t a = 0; a < na; ++a) {
    if (a == 0 && with_tau) {
      l.labels.push_back("tau");
    } else {
      l.labels.push_back(std::string(1, static_cast<char>('a' + a - (with_tau ? 1 : 0))));
    }
  }
  if (with_tau) l.tau = 0;
  // Per-system edge density, so sparse and dense shapes both appear.
  const std::uint64_t density = 1 + draw(rng, 3);  // out of 6
  l.succ_table.assign(n * na, {});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < na; ++a)
      for (std::uint32_t y = 0; y < n; ++y)
        if (draw(rng, 6) < density) l.succ_table[x * na + a].push_back(y);
  return l;
}

// ---------------------------------------------------------------------------
// Shrinking: drop states, then single transitions, then labels, keeping a
// reduction only when the failure predicate still fires.

inline Lts lts_without_state(const Lts& l, std::uint32_t dead) {
  Lts out;
  out.labels = l.labels;
  out.tau = l.tau;
  for (std::uint32_t x = 0; x < l.size(); ++x)
    if (x != dead) out.state_names.push_back(l.state_names[x]);
  auto remap = [dead](std::uint32_t x) { return x > dead ? x - 1 : x; };
  for (std::uint32_t x = 0; x < l.size(); ++x) {
    if (x == dead) continue;
    for (std::size_t a = 0; a < l.alphabet_size(); ++a) {
      std::vector<std::uint32_t> set;
      for (std::uint32_t y : l.succ(x, a))
        if (y != dead) set.push_back(remap(y));
      out.succ_table.push_back(std::move(set));
    }
  }
  return out;
}

inline Lts lts_without_edge(const Lts& l, std::uint32_t x, std::size_t a, std::uint32_t y) {
  Lts out = l;
  auto& set = out.succ_table[x * l.alphabet_size() + a];
  std::erase(set, y);
  return out;
}

inline Lts lts_without_label(const Lts& l, std::size_t dead) {
  Lts out;
  out.state_names = l.state_names;
  for (std::size_t a = 0; a < l.alphabet_size(); ++a)
    if (a != dead) out.labels.push_back(l.labels[a]);
  if (l.tau && *l.tau != dead) out.tau = *l.tau > dead ? *l.tau - 1 : *l.tau;
  for (std::uint32_t x = 0; x < l.size(); ++x)
    for (std::size_t a = 0; a < l.alphabet_size(); ++a)
      if (a != dead) out.succ_table.push_back(l.succ(x, a));
  return out;
}

inline Dfa dfa_without_state(const Dfa& d, std::uint32_t dead) {
  Dfa out;
  out.labels = d.labels;
  auto remap = [dead](std::uint32_t x) { return x > dead ? x - 1 : x; };
  for (std::uint32_t x = 0; x < d.size(); ++x) {
    if (x == dead) continue;
    out.state_names.push_back(d.state_names[x]);
    out.output.push_back(d.output[x]);
    for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
      std::uint32_t y = d.next(x, a);
      out.next_table.push_back(y == dead ? 0 : remap(y));  // reroute dangling edges
    }
  }
  return out;
}

inline Dfa dfa_without_label(const Dfa& d, std::size_t dead) {
  Dfa out;
  out.state_names = d.state_names;
  out.output = d.output;
  for (std::size_t a = 0; a < d.alphabet_size(); ++a)
    if (a != dead) out.labels.push_back(d.labels[a]);
  for (std::uint32_t x = 0; x < d.size(); ++x)
    for (std::size_t a = 0; a < d.alphabet_size(); ++a)
      if (a != dead) out.next_table.push_back(d.next(x, a));
  return out;
}

template <typename Failing>
Lts shrink_lts(Lts witness, const Failing& failing) {
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (std::uint32_t x = 0; x < witness.size() && witness.size() > 1; ++x) {
      Lts cand = lts_without_state(witness, x);
      if (failing(cand)) { witness = std::move(cand); reduced = true; --x; }
    }
    for (std::uint32_t x = 0; x < witness.size() && !reduced; ++x)
      for (std::size_t a = 0; a < witness.alphabet_size() && !reduced; ++a)
        for (std::uint32_t y : witness.succ(x, a)) {
          Lts cand = lts_without_edge(witness, x, a, y);
          if (failing(cand)) { witness = std::move(cand); reduced = true; break; }
        }
    for (std::size_t a = 0; a < witness.alphabet_size() && !reduced; ++a) {
      if (witness.alphabet_size() == 1) break;
      if (witness.tau && *witness.tau == a) continue;
      Lts cand = lts_without_label(witness, a);
      if (failing(cand)) { witness = std::move(cand); reduced = true; }
    }
  }
  return witness;
}

template <typename Failing>
Dfa shrink_dfa(Dfa witness, const Failing& failing) {
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (std::uint32_t x = 0; x < witness.size() && witness.size() > 1; ++x) {
      Dfa cand = dfa_without_state(witness, x);
      if (failing(cand)) { witness = std::move(cand); reduced = true; --x; }
    }
    for (std::size_t a = 0; a < witness.alphabet_size() && !reduced; ++a) {
      if (witness.alphabet_size() == 1) break;
      Dfa cand = dfa_without_label(witness, a);
      if (failing(cand)) { witness = std::move(cand); reduced = true; }
    }
  }
  return witness;
}

}  // namespace copred
