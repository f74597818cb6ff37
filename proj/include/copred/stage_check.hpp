#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "copred/checker.hpp"
#include "copred/final_sequence.hpp"
#include "copred/logic.hpp"

namespace copred {

// Exact rational arithmetic for the quantitative one-step condition, where
// distances between discount-level theories such as |c^2 - c| leave the
// level encoding.  Values stay tiny.
struct Rat {
  long long num = 0;
  long long den = 1;

  static Rat of(long long n, long long d) {
    Rat r{n, d};
    r.normalize();
    return r;
  }
  void normalize() {
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  friend Rat operator-(Rat a, Rat b) { return of(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(Rat a, Rat b) { return of(a.num * b.num, a.den * b.den); }
  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
  Rat abs() const { return num < 0 ? Rat{-num, den} : *this; }
  std::string render() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

inline Rat level_value(Level l, Rat c) {
  if (l.is_inf()) return Rat{0, 1};
  Rat v{1, 1};
  for (std::uint32_t i = 0; i < l.exponent(); ++i) v = v * c;
  return v;
}

struct DirectionReport {
  bool holds = true;
  std::string witness;
};

struct StageView {
  bool ran = false;
  std::string skip_reason;
  std::size_t carrier = 0;
  DirectionReport delta_below_lifting;  // expressiveness-flavoured direction
  DirectionReport lifting_below_delta;  // adequacy-flavoured direction
};

struct StageReport {
  PipelineId pipeline{};
  std::size_t stage = 0;
  StageView sequence;   // delta_i^*(Qbar L^i 0) against Bbar^i 1, over B^i 1
  StageView component;  // delta_X^*(Qbar L X) against Bbar Qbar X, at X = L^i 0
};

namespace stage_detail {

constexpr std::size_t kComponentCap = 1u << 14;  // carrier bound for B Q X

inline std::vector<std::string> synth_labels(std::size_t alphabet, bool tau_first) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < alphabet; ++a) {
    if (a == 0 && tau_first)
      out.push_back("tau");
    else
      out.push_back(std::string(1, static_cast<char>('a' + a - (tau_first ? 1 : 0))));
  }
  return out;
}

template <ValueLattice L>
void compare_fibres(StageView& view, const Fibre<L>& delta_side, const Fibre<L>& lifting_side,
                    const std::function<std::string(std::uint32_t, std::uint32_t)>& show) {
  view.ran = true;
  view.carrier = delta_side.carrier();
  if (auto bad = checker_detail::first_violation(delta_side, lifting_side)) {
    view.delta_below_lifting.holds = false;
    view.delta_below_lifting.witness = show(bad->first, bad->second);
  }
  if (auto bad = checker_detail::first_violation(lifting_side, delta_side)) {
    view.lifting_below_delta.holds = false;
    view.lifting_below_delta.witness = show(bad->first, bad->second);
  }
}

}  // namespace stage_detail

// ---------------------------------------------------------------------------
// Similarity: conjunction/diamond formulas against the forth-only lifting.

inline StageReport stage_check_similarity(
    std::size_t alphabet, std::size_t i,
    const RawLtsLifting& lift = [](const BoolFibre& r, const std::vector<LtsBox>& b) {
      return raw_simulation(r, b);
    },
    bool equality_mode = false, std::size_t cap = 1'000'000) {
  StageReport report;
  report.pipeline = equality_mode ? PipelineId::bisimilarity : PipelineId::similarity;
  report.stage = i;
  auto labels = stage_detail::synth_labels(alphabet, false);

  // Final-sequence view.
  std::vector<HmFormula> formulas;
  bool have_formulas = false;
  try {
    formulas = enumerate_hm(alphabet, i, cap);
    have_formulas = true;
  } catch (const unsupported_error& e) {
    report.sequence.skip_reason = e.what();
    report.component.skip_reason = e.what();
  }
  if (have_formulas) {
    try {
      LtsStages st(alphabet, cap);
      st.materialize_full(i);
      const std::size_t m = st.stage_size(i);
      BoolFibre lifted = BoolFibre::top(1, FibreKind::relation);
      for (std::size_t s = 1; s <= i; ++s) lifted = lift(lifted, st.stage_nodes(s));

      std::vector<std::vector<std::uint8_t>> theory(m);
      for (std::uint32_t t = 0; t < m; ++t)
        for (const auto& phi : formulas) theory[t].push_back(st.delta_hm(i, t, phi));

      BoolFibre delta_side = BoolFibre::bottom(m, FibreKind::relation);
      for (std::uint32_t t1 = 0; t1 < m; ++t1)
        for (std::uint32_t t2 = 0; t2 < m; ++t2) {
          bool ok = true;
          for (std::size_t f = 0; ok && f < formulas.size(); ++f)
            ok = equality_mode ? theory[t1][f] == theory[t2][f]
                               : theory[t1][f] <= theory[t2][f];
          delta_side.set(t1, t2, ok);
        }
      stage_detail::compare_fibres<Bool2>(
          report.sequence, delta_side, lifted, [&](std::uint32_t a, std::uint32_t b) {
            return "trees " + st.render(i, a) + " vs " + st.render(i, b);
          });
    } catch (const stage_cap_error& e) {
      report.sequence.skip_reason = e.what();
    }
  }

  // Component view at X = L^i 0.  Theories over the formula semilattice are
  // principal filters, so they are indexed by formulas themselves.
  if (have_formulas) {
    const std::size_t m = formulas.size();
    if (m * alphabet >= 63 ||
        (std::size_t{1} << (m * alphabet)) > stage_detail::kComponentCap) {
      report.component.skip_reason = "B Q L^i 0 carrier 2^" + std::to_string(m * alphabet) +
                                     " exceeds the component bound";
    } else {
      // theory_leq(u, v): filter of u included in filter of v.
      auto theory_leq = [&](std::uint32_t u, std::uint32_t v) {
        return HmFormula::conj(formulas[u], formulas[v]) == formulas[v];
      };
      BoolFibre q_rel = BoolFibre::bottom(m, FibreKind::relation);
      for (std::uint32_t u = 0; u < m; ++u)
        for (std::uint32_t v = 0; v < m; ++v)
          q_rel.set(u, v, equality_mode ? u == v : theory_leq(u, v));

      auto boxes = enumerate_lts_boxes(m, alphabet);
      BoolFibre lifted = lift(q_rel, boxes);

      // phi(u): does the principal filter at index f contain formula u.
      auto holds_at = [&](std::uint32_t f, std::uint32_t u) {
        return HmFormula::conj(formulas[f], formulas[u]) == formulas[f];
      };
      // The value of a box at a modal layer W (a set of generators (a, u))
      // is the conjunction of its per-generator values, so the pointwise
      // comparison over all W reduces to the sets of satisfied generators.
      std::vector<std::uint64_t> sat_mask(boxes.size(), 0);
      for (std::uint32_t t = 0; t < boxes.size(); ++t)
        for (std::size_t g = 0; g < m * alphabet; ++g) {
          std::size_t a = g / m;
          std::uint32_t u = static_cast<std::uint32_t>(g % m);
          for (std::uint32_t f : boxes[t].succ[a])
            if (holds_at(f, u)) { sat_mask[t] |= std::uint64_t{1} << g; break; }
        }
      BoolFibre delta_side = BoolFibre::bottom(boxes.size(), FibreKind::relation);
      for (std::uint32_t t1 = 0; t1 < boxes.size(); ++t1)
        for (std::uint32_t t2 = 0; t2 < boxes.size(); ++t2)
          delta_side.set(t1, t2,
                         equality_mode ? sat_mask[t1] == sat_mask[t2]
                                       : (sat_mask[t1] & ~sat_mask[t2]) == 0);
      stage_detail::compare_fibres<Bool2>(
          report.component, delta_side, lifted, [&](std::uint32_t a, std::uint32_t b) {
            auto show_box = [&](const LtsBox& t) {
              std::string out = "(";
              for (std::size_t lab = 0; lab < alphabet; ++lab) {
                if (lab) out += " ";
                out += "{";
                for (std::size_t j = 0; j < t.succ[lab].size(); ++j)
                  out += (j ? ", " : "") + formulas[t.succ[lab][j]].render(labels);
                out += "}";
              }
              return out + ")";
            };
            return "theory boxes " + show_box(boxes[a]) + " vs " + show_box(boxes[b]);
          });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Divergence: tau-tower formulas against the tau-successor lifting.

inline StageReport stage_check_divergence(
    std::size_t alphabet, std::uint32_t tau, std::size_t i,
    const RawLtsLifting& lift_opt = nullptr, std::size_t cap = 1'000'000) {
  RawLtsLifting lift = lift_opt;
  if (!lift)
    lift = [tau](const BoolFibre& g, const std::vector<LtsBox>& b) {
      return raw_divergence(g, b, tau);
    };
  StageReport report;
  report.pipeline = PipelineId::divergence;
  report.stage = i;

  // Final-sequence view.
  try {
    LtsStages st(alphabet, cap);
    st.materialize_full(i);
    const std::size_t m = st.stage_size(i);
    BoolFibre lifted = BoolFibre::top(1, FibreKind::predicate);
    for (std::size_t s = 1; s <= i; ++s) lifted = lift(lifted, st.stage_nodes(s));

    BoolFibre delta_side = BoolFibre::bottom(m, FibreKind::predicate);
    for (std::uint32_t t = 0; t < m; ++t) {
      bool all = true;
      for (std::uint32_t n = 0; all && n < i; ++n) all = st.delta_tau(i, t, n, tau) != 0;
      delta_side.set(t, all);
    }
    stage_detail::compare_fibres<Bool2>(
        report.sequence, delta_side, lifted, [&](std::uint32_t a, std::uint32_t) {
          return "tree " + st.render(i, a);
        });
  } catch (const stage_cap_error& e) {
    report.sequence.skip_reason = e.what();
  }

  // Component view at X = L^i 0, the i-chain of tau-towers.  Its theories
  // are the downward-closed sets {0..j-1}, indexed by j.
  {
    const std::size_t q = i + 1;  // theories over the chain
    if (q * alphabet >= 63 ||
        (std::size_t{1} << (q * alphabet)) > stage_detail::kComponentCap) {
      report.component.skip_reason = "component carrier too large";
    } else {
      BoolFibre all_true = BoolFibre::bottom(q, FibreKind::predicate);
      all_true.set(q - 1, 1);  // only the full theory j = i
      auto boxes = enumerate_lts_boxes(q, alphabet);
      BoolFibre lifted = lift(all_true, boxes);

      BoolFibre delta_side = BoolFibre::bottom(boxes.size(), FibreKind::predicate);
      for (std::uint32_t t = 0; t < boxes.size(); ++t) {
        bool ok = true;  // new top is always satisfied
        for (std::uint32_t n = 0; ok && n < i; ++n) {
          bool some = false;
          for (std::uint32_t j : boxes[t].succ[tau])
            if (n < j) { some = true; break; }
          ok = some;
        }
        delta_side.set(t, ok);
      }
      stage_detail::compare_fibres<Bool2>(
          report.component, delta_side, lifted, [&](std::uint32_t a, std::uint32_t) {
            std::string out = "theory box (tau -> {";
            for (std::size_t j = 0; j < boxes[a].succ[tau].size(); ++j)
              out += (j ? ", " : "") + std::to_string(boxes[a].succ[tau][j]);
            return out + "})";
          });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Shortest-distinguishing-word distance: word tests against the discounted
// lifting.  The sequence view is exact in levels; the component view works
// with truncated level theories and exact rationals at sample values of c.

inline StageReport stage_check_sdw(std::size_t alphabet, std::size_t i,
                                   const RawSdwLifting& lift_opt = nullptr,
                                   bool drop_output_comparison = false,
                                   std::size_t cap = 1'000'000) {
  RawSdwLifting lift = lift_opt;
  if (!lift)
    lift = [](const LevelFibre& d, const std::vector<DfaBox>& b) { return raw_sdw(d, b); };
  StageReport report;
  report.pipeline = PipelineId::sdw;
  report.stage = i;

  auto words = enumerate_words(alphabet, i);

  // Final-sequence view.
  try {
    DfaStages st(alphabet, cap);
    st.materialize_full(i);
    const std::size_t m = st.stage_size(i);
    LevelFibre lifted = LevelFibre::top(1, FibreKind::relation);
    for (std::size_t s = 1; s <= i; ++s) lifted = lift(lifted, st.stage_nodes(s));

    LevelFibre delta_side = LevelFibre::top(m, FibreKind::relation);
    for (std::uint32_t t1 = 0; t1 < m; ++t1)
      for (std::uint32_t t2 = 0; t2 < m; ++t2) {
        Level best = Level::inf();
        for (const auto& w : words)
          if (st.delta_word(i, t1, w) != st.delta_word(i, t2, w))
            best = DiscountLevel::meet(best, Level::of(static_cast<std::uint32_t>(w.letters.size())));
        delta_side.set(t1, t2, best);
      }
    stage_detail::compare_fibres<DiscountLevel>(
        report.sequence, delta_side, lifted, [&](std::uint32_t a, std::uint32_t b) {
          return "trees " + st.render(i, a) + " vs " + st.render(i, b) + ": delta side " +
                 DiscountLevel::render(delta_side.at(a, b)) + ", lifting side " +
                 DiscountLevel::render(lifted.at(a, b));
        });
  } catch (const stage_cap_error& e) {
    report.sequence.skip_reason = e.what();
  }

  // Component view at X = L^i 0 = words below length i, with theories
  // X -> {1, c, c^2, 0} and two sample discounts.
  {
    const std::size_t m = words.size();
    const Level grid[] = {Level::of(0), Level::of(1), Level::of(2), Level::inf()};
    double q_est = 1, box_est = 2;
    for (std::size_t j = 0; j < m; ++j) q_est *= 4;
    for (std::size_t a = 0; a < alphabet; ++a) box_est *= q_est;
    if (box_est > static_cast<double>(stage_detail::kComponentCap)) {
      report.component.skip_reason = "component carrier too large";
      return report;
    }
    const std::size_t q = static_cast<std::size_t>(q_est);
    std::vector<std::vector<Level>> theories;
    for (std::size_t code = 0; code < q; ++code) {
      std::vector<Level> th(m);
      std::size_t c = code;
      for (std::size_t j = 0; j < m; ++j) { th[j] = grid[c % 4]; c /= 4; }
      theories.push_back(std::move(th));
    }
    auto boxes = enumerate_dfa_boxes(q, alphabet);

    for (Rat c : {Rat::of(1, 2), Rat::of(3, 4)}) {
      // cdist[u][v] = c * sup_j |value(u_j) - value(v_j)|
      std::vector<Rat> cdist(q * q, Rat{0, 1});
      for (std::size_t u = 0; u < q; ++u)
        for (std::size_t v = 0; v < q; ++v) {
          Rat best{0, 1};
          for (std::size_t j = 0; j < m; ++j) {
            Rat d = (level_value(theories[u][j], c) - level_value(theories[v][j], c)).abs();
            if (best < d) best = d;
          }
          cdist[u * q + v] = c * best;
        }
      report.component.ran = true;
      report.component.carrier = boxes.size();
      for (std::uint32_t t1 = 0; t1 < boxes.size(); ++t1)
        for (std::uint32_t t2 = 0; t2 < boxes.size(); ++t2) {
          const DfaBox& b1 = boxes[t1];
          const DfaBox& b2 = boxes[t2];
          Rat succ_part{0, 1};
          for (std::size_t a = 0; a < alphabet; ++a) {
            Rat d = cdist[b1.next[a] * q + b2.next[a]];
            if (succ_part < d) succ_part = d;
          }
          // delta side: sup over A x X + 1; lifting side: the two branches.
          Rat dv = succ_part;
          if (b1.out != b2.out && dv < Rat{1, 1}) dv = Rat{1, 1};
          Rat lv = b1.out != b2.out && !drop_output_comparison ? Rat{1, 1} : succ_part;
          if (dv == lv) continue;
          // Reversed order on distances: the bigger value sits lower, so
          // "delta below lifting" fails where the delta value is smaller.
          if (dv < lv && report.component.delta_below_lifting.holds) {
            report.component.delta_below_lifting.holds = false;
            report.component.delta_below_lifting.witness =
                "at c=" + c.render() + ": delta side " + dv.render() + ", lifting side " +
                lv.render();
          }
          if (lv < dv && report.component.lifting_below_delta.holds) {
            report.component.lifting_below_delta.holds = false;
            report.component.lifting_below_delta.witness =
                "at c=" + c.render() + ": delta side " + dv.render() + ", lifting side " +
                lv.render();
          }
        }
    }
  }
  return report;
}

// Canonical lifting on deterministic automata against Boolean word tests;
// here the one-step semantics is injective and both views agree exactly.
inline StageReport stage_check_bisimilarity_dfa(std::size_t alphabet, std::size_t i,
                                                std::size_t cap = 1'000'000) {
  StageReport report;
  report.pipeline = PipelineId::bisimilarity;
  report.stage = i;
  auto words = enumerate_words(alphabet, i);

  try {
    DfaStages st(alphabet, cap);
    st.materialize_full(i);
    const std::size_t m = st.stage_size(i);
    // Raw canonical lifting for 2 x Id^A, iterated from the top.
    BoolFibre lifted = BoolFibre::top(1, FibreKind::relation);
    for (std::size_t s = 1; s <= i; ++s) {
      const auto& boxes = st.stage_nodes(s);
      BoolFibre next = BoolFibre::bottom(boxes.size(), FibreKind::relation);
      for (std::uint32_t a = 0; a < boxes.size(); ++a)
        for (std::uint32_t b = 0; b < boxes.size(); ++b) {
          bool ok = boxes[a].out == boxes[b].out;
          for (std::size_t lab = 0; ok && lab < alphabet; ++lab)
            ok = lifted.at(boxes[a].next[lab], boxes[b].next[lab]) != 0;
          next.set(a, b, ok);
        }
      lifted = std::move(next);
    }

    BoolFibre delta_side = BoolFibre::bottom(m, FibreKind::relation);
    for (std::uint32_t t1 = 0; t1 < m; ++t1)
      for (std::uint32_t t2 = 0; t2 < m; ++t2) {
        bool equal = true;
        for (const auto& w : words)
          if (st.delta_word(i, t1, w) != st.delta_word(i, t2, w)) { equal = false; break; }
        delta_side.set(t1, t2, equal);
      }
    stage_detail::compare_fibres<Bool2>(
        report.sequence, delta_side, lifted, [&](std::uint32_t a, std::uint32_t b) {
          return "trees " + st.render(i, a) + " vs " + st.render(i, b);
        });
  } catch (const stage_cap_error& e) {
    report.sequence.skip_reason = e.what();
  }

  // Component view: theories are all Boolean vectors over the words, and
  // the one-step map is injective on boxes.
  const std::size_t m = words.size();
  if (m >= 16 || (std::size_t{1} << m) * alphabet >= 20) {
    report.component.skip_reason = "component carrier too large";
    return report;
  }
  const std::size_t q = std::size_t{1} << m;
  auto boxes = enumerate_dfa_boxes(q, alphabet);
  if (boxes.size() > stage_detail::kComponentCap) {
    report.component.skip_reason = "component carrier too large";
    return report;
  }
  auto delta_equal = [&](const DfaBox& b1, const DfaBox& b2) {
    if (b1.out != b2.out) return false;
    for (std::size_t a = 0; a < alphabet; ++a)
      if (b1.next[a] != b2.next[a]) return false;  // theories compared pointwise
    return true;
  };
  BoolFibre lifted = BoolFibre::bottom(boxes.size(), FibreKind::relation);
  BoolFibre delta_side = BoolFibre::bottom(boxes.size(), FibreKind::relation);
  for (std::uint32_t t1 = 0; t1 < boxes.size(); ++t1)
    for (std::uint32_t t2 = 0; t2 < boxes.size(); ++t2) {
      lifted.set(t1, t2, t1 == t2);
      delta_side.set(t1, t2, delta_equal(boxes[t1], boxes[t2]));
    }
  stage_detail::compare_fibres<Bool2>(report.component, delta_side, lifted,
                                      [&](std::uint32_t a, std::uint32_t b) {
                                        return "theory boxes " + std::to_string(a) + " vs " +
                                               std::to_string(b);
                                      });
  return report;
}

inline StageReport check_one_step_stage(PipelineId pipeline, std::size_t alphabet,
                                        std::size_t i) {
  switch (pipeline) {
    case PipelineId::sdw: return stage_check_sdw(alphabet, i);
    case PipelineId::divergence: return stage_check_divergence(alphabet, 0, i);
    case PipelineId::similarity: return stage_check_similarity(alphabet, i);
    case PipelineId::bisimilarity:
      return stage_check_similarity(alphabet, i, /*lift=*/
                                    [](const BoolFibre& r, const std::vector<LtsBox>& b) {
                                      return raw_canonical(r, b);
                                    },
                                    /*equality_mode=*/true);
  }
  throw unsupported_error("unknown pipeline");
}

}  // namespace copred
