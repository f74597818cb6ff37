#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "copred/formula.hpp"
#include "copred/system.hpp"

namespace copred {

enum class LogicId { words, tau_tower, hm };

inline std::string logic_name(LogicId id) {
  switch (id) {
    case LogicId::words: return "words";
    case LogicId::tau_tower: return "tau";
    case LogicId::hm: return "hm";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Satisfaction / theory values.

inline std::uint8_t accepts(const Dfa& d, std::uint32_t x, const WordFormula& w) {
  std::uint32_t cur = x;
  for (std::uint32_t a : w.letters) {
    if (a >= d.alphabet_size()) throw std::invalid_argument("accepts: foreign letter");
    cur = d.next(cur, a);
  }
  return d.output[cur];
}

// 1 iff a tau-path with n edges starts at x.
inline std::uint8_t sat_tau(const Lts& l, std::uint32_t x, std::uint32_t n) {
  const std::uint32_t tau = l.tau_or_throw();
  std::vector<std::uint8_t> frontier(l.size(), 0);
  frontier[x] = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    std::vector<std::uint8_t> next(l.size(), 0);
    bool any = false;
    for (std::uint32_t s = 0; s < l.size(); ++s)
      if (frontier[s])
        for (std::uint32_t y : l.succ(s, tau)) { next[y] = 1; any = true; }
    if (!any) return 0;
    frontier = std::move(next);
  }
  return 1;
}

inline std::uint8_t sat_hm(const Lts& l, std::uint32_t x, const HmFormula& phi) {
  for (const auto& part : phi.parts()) {
    if (part.label >= l.alphabet_size()) throw std::invalid_argument("sat_hm: foreign label");
    bool witnessed = false;
    for (std::uint32_t y : l.succ(x, part.label))
      if (sat_hm(l, y, *part.child)) { witnessed = true; break; }
    if (!witnessed) return 0;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Depth-stratified formula sets L^i 0.  The connecting maps are literal
// inclusions: every stage contains the previous one.

inline std::vector<WordFormula> enumerate_words(std::size_t alphabet, std::size_t i) {
  std::vector<WordFormula> out;
  std::vector<WordFormula> layer{WordFormula{}};
  for (std::size_t len = 0; len < i; ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<WordFormula> next;
    for (const auto& w : layer)
      for (std::uint32_t a = 0; a < alphabet; ++a) {
        WordFormula w2 = w;
        w2.letters.push_back(a);
        next.push_back(std::move(w2));
      }
    layer = std::move(next);
  }
  return out;
}

inline std::vector<TauFormula> enumerate_tau(std::size_t i) {
  std::vector<TauFormula> out;
  for (std::uint32_t n = 0; n < i; ++n) out.push_back(TauFormula{n});
  return out;
}

// All conjunction/diamond normal forms obtained by i unfoldings of
// P(A x -) from {T}; grows doubly exponentially, so a cap guards it.
inline std::vector<HmFormula> enumerate_hm(std::size_t alphabet, std::size_t i,
                                           std::size_t cap = 1u << 20) {
  std::vector<HmFormula> stage{HmFormula::top()};
  for (std::size_t k = 0; k < i; ++k) {
    const std::size_t generators = alphabet * stage.size();
    if (generators >= 63 || (std::size_t{1} << generators) > cap)
      throw unsupported_error("hm formula stage " + std::to_string(k + 1) +
                              " exceeds the enumeration cap (2^" +
                              std::to_string(generators) + " normal forms)");
    std::vector<HmFormula> next;
    next.reserve(std::size_t{1} << generators);
    for (std::size_t mask = 0; mask < (std::size_t{1} << generators); ++mask) {
      HmFormula f;
      for (std::size_t g = 0; g < generators; ++g)
        if (mask >> g & 1)
          f = HmFormula::conj(
              f, HmFormula::diamond(static_cast<std::uint32_t>(g / stage.size()),
                                    stage[g % stage.size()]));
      next.push_back(std::move(f));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    stage = std::move(next);
  }
  std::sort(stage.begin(), stage.end());
  return stage;
}

// ---------------------------------------------------------------------------
// Theories restricted to a stage: one bit per formula, aligned with the
// enumeration above.

inline std::vector<std::uint8_t> word_theory_at_depth(const Dfa& d, std::uint32_t x,
                                                      std::size_t i) {
  std::vector<std::uint8_t> out;
  for (const auto& w : enumerate_words(d.alphabet_size(), i)) out.push_back(accepts(d, x, w));
  return out;
}

inline std::vector<std::uint8_t> tau_theory_at_depth(const Lts& l, std::uint32_t x,
                                                     std::size_t i) {
  std::vector<std::uint8_t> out;
  for (std::uint32_t n = 0; n < i; ++n) out.push_back(sat_tau(l, x, n));
  return out;
}

inline std::vector<std::uint8_t> hm_theory_at_depth(const Lts& l, std::uint32_t x, std::size_t i,
                                                    std::size_t cap = 1u << 20) {
  std::vector<std::uint8_t> out;
  for (const auto& phi : enumerate_hm(l.alphabet_size(), i, cap))
    out.push_back(sat_hm(l, x, phi));
  return out;
}

}  // namespace copred
