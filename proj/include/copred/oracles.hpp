#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

#include "copred/fibre.hpp"
#include "copred/system.hpp"

namespace copred {

// Length of the shortest word telling x and y apart, by breadth-first
// search on the pair graph under simultaneous transitions; Level::inf()
// when the states accept the same language.
inline Level product_reachability(const Dfa& d, std::uint32_t x, std::uint32_t y) {
  const std::size_t n = d.size();
  std::vector<std::uint8_t> visited(n * n, 0);
  std::deque<std::pair<std::uint32_t, std::uint32_t>> frontier{{x, y}};
  visited[x * n + y] = 1;
  std::uint32_t depth = 0;
  while (!frontier.empty()) {
    std::size_t layer = frontier.size();
    for (std::size_t i = 0; i < layer; ++i) {
      auto [p, q] = frontier.front();
      frontier.pop_front();
      if (d.output[p] != d.output[q]) return Level::of(depth);
      for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
        std::uint32_t p2 = d.next(p, a), q2 = d.next(q, a);
        if (!visited[p2 * n + q2]) {
          visited[p2 * n + q2] = 1;
          frontier.emplace_back(p2, q2);
        }
      }
    }
    ++depth;
  }
  return Level::inf();
}

// States from which an infinite tau-path starts.  On a finite graph that
// means a tau-cycle is tau-reachable: detect the states lying on a
// tau-cycle (breadth-first search from each state back to itself), then
// close backwards along tau-edges.
inline BoolFibre tau_divergence_oracle(const Lts& l) {
  const std::uint32_t tau = l.tau_or_throw();
  const std::size_t n = l.size();

  auto bfs = [&](const std::vector<std::vector<std::uint32_t>>& edges,
                 std::vector<std::uint8_t> seed) {
    std::deque<std::uint32_t> frontier;
    for (std::uint32_t x = 0; x < n; ++x)
      if (seed[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      std::uint32_t x = frontier.front();
      frontier.pop_front();
      for (std::uint32_t y : edges[x])
        if (!seed[y]) { seed[y] = 1; frontier.push_back(y); }
    }
    return seed;
  };

  std::vector<std::vector<std::uint32_t>> fwd(n), bwd(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y : l.succ(x, tau)) { fwd[x].push_back(y); bwd[y].push_back(x); }

  std::vector<std::uint8_t> on_cycle(n, 0);
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<std::uint8_t> seed(n, 0);
    for (std::uint32_t y : fwd[s]) seed[y] = 1;
    if (bfs(fwd, std::move(seed))[s]) on_cycle[s] = 1;
  }

  std::vector<std::uint8_t> diverging = bfs(bwd, std::move(on_cycle));
  BoolFibre out = BoolFibre::bottom(n, FibreKind::predicate);
  for (std::size_t x = 0; x < n; ++x) out.set(x, diverging[x]);
  return out;
}

// Similarity preorder, by deleting violating pairs from the full relation.
// A pair (x, y) is violated when some move of x has no matching move of y
// into a retained pair; deletions are propagated through a worklist of
// predecessor pairs.
inline BoolFibre simulation_oracle(const Lts& l) {
  const std::size_t n = l.size();
  const std::size_t na = l.alphabet_size();
  std::vector<std::uint8_t> related(n * n, 1);

  // Predecessor lists per label.
  std::vector<std::vector<std::uint32_t>> pred(n * na);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < na; ++a)
      for (std::uint32_t y : l.succ(x, a)) pred[y * na + a].push_back(static_cast<std::uint32_t>(x));

  auto violated = [&](std::size_t x, std::size_t y) {
    for (std::size_t a = 0; a < na; ++a) {
      for (std::uint32_t x2 : l.succ(x, a)) {
        bool matched = false;
        for (std::uint32_t y2 : l.succ(y, a))
          if (related[x2 * n + y2]) { matched = true; break; }
        if (!matched) return true;
      }
    }
    return false;
  };

  std::deque<std::pair<std::uint32_t, std::uint32_t>> work;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (violated(x, y)) { related[x * n + y] = 0; work.emplace_back(x, y); }

  while (!work.empty()) {
    auto [x2, y2] = work.front();
    work.pop_front();
    // Only pairs of predecessors of (x2, y2) under a common label can
    // become violated by this deletion.
    for (std::size_t a = 0; a < na; ++a) {
      for (std::uint32_t x : pred[x2 * na + a]) {
        for (std::uint32_t y : pred[y2 * na + a]) {
          if (!related[x * n + y]) continue;
          if (violated(x, y)) {
            related[x * n + y] = 0;
            work.emplace_back(x, y);
          }
        }
      }
    }
  }

  BoolFibre out = BoolFibre::bottom(n, FibreKind::relation);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out.set(x, y, related[x * n + y]);
  return out;
}

// Bisimilarity, by partition refinement: split blocks on the signature
// "set of blocks reachable per label" until stable, then return the
// induced equivalence relation.
inline BoolFibre bisimilarity_oracle(const Lts& l) {
  const std::size_t n = l.size();
  const std::size_t na = l.alphabet_size();
  std::vector<std::uint32_t> block(n, 0);
  std::size_t blocks = 1;
  for (;;) {
    std::map<std::vector<std::vector<std::uint32_t>>, std::uint32_t> sig_index;
    std::vector<std::uint32_t> next_block(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::vector<std::uint32_t>> sig(na + 1);
      sig[0] = {block[x]};  // keep refinement of the previous partition
      for (std::size_t a = 0; a < na; ++a) {
        for (std::uint32_t y : l.succ(x, a)) sig[a + 1].push_back(block[y]);
        std::sort(sig[a + 1].begin(), sig[a + 1].end());
        sig[a + 1].erase(std::unique(sig[a + 1].begin(), sig[a + 1].end()), sig[a + 1].end());
      }
      auto [it, inserted] = sig_index.emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size()));
      next_block[x] = it->second;
    }
    std::size_t count = sig_index.size();
    block = std::move(next_block);
    if (count == blocks) break;
    blocks = count;
  }
  BoolFibre out = BoolFibre::bottom(n, FibreKind::relation);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out.set(x, y, block[x] == block[y]);
  return out;
}

}  // namespace copred
