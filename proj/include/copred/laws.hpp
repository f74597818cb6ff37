#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "copred/fibre.hpp"
#include "copred/lifting.hpp"

namespace copred {

struct LawReport {
  bool ok = true;
  std::string counterexample;
  std::size_t instances = 0;  // (f, S) pairs or relation tuples checked
};

// Heterogeneous Boolean relation between two small carriers, one bit row
// per left element; right carriers stay below 64.
struct BitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> bits;

  BitMatrix() = default;
  BitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), bits(r, 0) {}
  bool at(std::size_t i, std::size_t j) const { return bits[i] >> j & 1; }
  void set(std::size_t i, std::size_t j, bool v) {
    if (v)
      bits[i] |= std::uint64_t{1} << j;
    else
      bits[i] &= ~(std::uint64_t{1} << j);
  }
  BitMatrix transpose() const {
    BitMatrix out(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (at(i, j)) out.set(j, i, true);
    return out;
  }
  // Relational composition via row lookups.
  friend BitMatrix compose(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j)
        if (a.at(i, j)) out.bits[i] |= b.bits[j];
    return out;
  }
  friend bool subset(const BitMatrix& a, const BitMatrix& b) {
    for (std::size_t i = 0; i < a.rows; ++i)
      if (a.bits[i] & ~b.bits[i]) return false;
    return true;
  }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
};

// A relation lifting acting on heterogeneous relations, as Definition-style
// lax extensions require; instantiated by the Egli-Milner and forth-only
// liftings and by broken variants in tests.
using HetLifting = std::function<BitMatrix(const BitMatrix&, const std::vector<LtsBox>&,
                                           const std::vector<LtsBox>&)>;

inline BitMatrix het_canonical(const BitMatrix& r, const std::vector<LtsBox>& bx,
                               const std::vector<LtsBox>& by) {
  BitMatrix out(bx.size(), by.size());
  for (std::size_t i = 0; i < bx.size(); ++i)
    for (std::size_t j = 0; j < by.size(); ++j) {
      bool ok = true;
      for (std::size_t a = 0; ok && a < bx[i].succ.size(); ++a) {
        for (std::uint32_t x : bx[i].succ[a]) {
          bool m = false;
          for (std::uint32_t y : by[j].succ[a])
            if (r.at(x, y)) { m = true; break; }
          if (!m) { ok = false; break; }
        }
        if (!ok) break;
        for (std::uint32_t y : by[j].succ[a]) {
          bool m = false;
          for (std::uint32_t x : bx[i].succ[a])
            if (r.at(x, y)) { m = true; break; }
          if (!m) { ok = false; break; }
        }
      }
      out.set(i, j, ok);
    }
  return out;
}

inline BitMatrix het_simulation(const BitMatrix& r, const std::vector<LtsBox>& bx,
                                const std::vector<LtsBox>& by) {
  BitMatrix out(bx.size(), by.size());
  for (std::size_t i = 0; i < bx.size(); ++i)
    for (std::size_t j = 0; j < by.size(); ++j) {
      bool ok = true;
      for (std::size_t a = 0; ok && a < bx[i].succ.size(); ++a)
        for (std::uint32_t x : bx[i].succ[a]) {
          bool m = false;
          for (std::uint32_t y : by[j].succ[a])
            if (r.at(x, y)) { m = true; break; }
          if (!m) { ok = false; break; }
        }
      out.set(i, j, ok);
    }
  return out;
}

namespace laws_detail {

inline std::vector<BitMatrix> all_relations(std::size_t rows, std::size_t cols) {
  std::vector<BitMatrix> out;
  std::size_t entries = rows * cols;
  for (std::size_t mask = 0; mask < (std::size_t{1} << entries); ++mask) {
    BitMatrix r(rows, cols);
    for (std::size_t e = 0; e < entries; ++e)
      if (mask >> e & 1) r.set(e / cols, e % cols, true);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<std::vector<std::uint32_t>> all_maps(std::size_t nx, std::size_t ny) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<std::vector<std::uint32_t>> grown;
    for (const auto& f : out)
      for (std::uint32_t y = 0; y < ny; ++y) {
        auto f2 = f;
        f2.push_back(y);
        grown.push_back(std::move(f2));
      }
    out = std::move(grown);
  }
  return out;
}

// The functor action on boxes: apply f to every successor.
inline LtsBox map_box(const LtsBox& b, const std::vector<std::uint32_t>& f) {
  LtsBox out;
  out.succ.resize(b.succ.size());
  for (std::size_t a = 0; a < b.succ.size(); ++a) {
    for (std::uint32_t x : b.succ[a]) out.succ[a].push_back(f[x]);
    std::sort(out.succ[a].begin(), out.succ[a].end());
    out.succ[a].erase(std::unique(out.succ[a].begin(), out.succ[a].end()), out.succ[a].end());
  }
  return out;
}

inline DfaBox map_box(const DfaBox& b, const std::vector<std::uint32_t>& f) {
  DfaBox out{b.out, {}};
  for (std::uint32_t x : b.next) out.next.push_back(f[x]);
  return out;
}

template <typename Box>
std::map<Box, std::uint32_t> index_boxes(const std::vector<Box>& boxes) {
  std::map<Box, std::uint32_t> out;
  for (std::uint32_t i = 0; i < boxes.size(); ++i) out.emplace(boxes[i], i);
  return out;
}

}  // namespace laws_detail

// ---------------------------------------------------------------------------
// Fibration-map law: (Bf)^* . Bbar_Y = Bbar_X . f^*, enumerated over all
// maps between carriers up to the bound and all fibre elements over the
// target (levels truncated to {0, 1, 2, inf}).

inline LawReport check_fibration_map_lts(
    const RawLtsLifting& lift, FibreKind kind, std::size_t max_carrier, std::size_t alphabet) {
  LawReport report;
  for (std::size_t ny = 0; ny <= max_carrier; ++ny) {
    auto boxes_y = enumerate_lts_boxes(ny, alphabet);
    for (std::size_t nx = 0; nx <= max_carrier; ++nx) {
      auto boxes_x = enumerate_lts_boxes(nx, alphabet);
      auto box_index = laws_detail::index_boxes(boxes_y);
      for (const auto& f : laws_detail::all_maps(nx, ny)) {
        // Bf as an index table from BX to BY.
        std::vector<std::uint32_t> bf;
        for (const auto& b : boxes_x) bf.push_back(box_index.at(laws_detail::map_box(b, f)));
        std::size_t entries = kind == FibreKind::relation ? ny * ny : ny;
        for (std::size_t mask = 0; mask < (std::size_t{1} << entries); ++mask) {
          BoolFibre s = BoolFibre::bottom(ny, kind);
          for (std::size_t e = 0; e < entries; ++e)
            if (mask >> e & 1) {
              if (kind == FibreKind::relation)
                s.set(e / ny, e % ny, 1);
              else
                s.set(e, 1);
            }
          BoolFibre lhs = reindex(bf, lift(s, boxes_y));
          BoolFibre rhs = lift(reindex(f, s), boxes_x);
          ++report.instances;
          if (lhs != rhs) {
            report.ok = false;
            report.counterexample = "carriers " + std::to_string(nx) + "->" +
                                    std::to_string(ny) + ", fibre element code " +
                                    std::to_string(mask);
            return report;
          }
        }
      }
    }
  }
  return report;
}

inline LawReport check_fibration_map_sdw(const RawSdwLifting& lift, std::size_t max_carrier,
                                         std::size_t alphabet) {
  LawReport report;
  const Level grid[] = {Level::of(0), Level::of(1), Level::of(2), Level::inf()};
  for (std::size_t ny = 0; ny <= max_carrier; ++ny) {
    auto boxes_y = enumerate_dfa_boxes(ny, alphabet);
    auto box_index = laws_detail::index_boxes(boxes_y);
    std::size_t codes = 1;
    for (std::size_t e = 0; e < ny * ny; ++e) codes *= 4;
    for (std::size_t nx = 0; nx <= max_carrier; ++nx) {
      if (ny == 0 && nx > 0) continue;  // no maps into the empty carrier
      auto boxes_x = enumerate_dfa_boxes(nx, alphabet);
      std::vector<std::vector<std::uint32_t>> bfs;
      auto maps = laws_detail::all_maps(nx, ny);
      for (const auto& f : maps) {
        std::vector<std::uint32_t> bf;
        for (const auto& b : boxes_x) bf.push_back(box_index.at(laws_detail::map_box(b, f)));
        bfs.push_back(std::move(bf));
      }
      for (std::size_t code = 0; code < codes; ++code) {
        LevelFibre s = LevelFibre::bottom(ny, FibreKind::relation);
        std::size_t c = code;
        for (std::size_t x = 0; x < ny; ++x)
          for (std::size_t y = 0; y < ny; ++y) {
            s.set(x, y, grid[c % 4]);
            c /= 4;
          }
        LevelFibre lifted_y = lift(s, boxes_y);
        for (std::size_t fi = 0; fi < maps.size(); ++fi) {
          LevelFibre lhs = reindex(bfs[fi], lifted_y);
          LevelFibre rhs = lift(reindex(maps[fi], s), boxes_x);
          ++report.instances;
          if (lhs != rhs) {
            report.ok = false;
            report.counterexample = "carriers " + std::to_string(nx) + "->" +
                                    std::to_string(ny) + ", level table code " +
                                    std::to_string(code);
            return report;
          }
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Lax-extension axioms for a lifting on heterogeneous relations, enumerated
// exhaustively on carriers up to the bound.

struct LaxReport {
  LawReport converse;      // Bbar(R^o) = (Bbar R)^o
  LawReport monotonicity;  // R <= S implies Bbar R <= Bbar S
  LawReport composition;   // Bbar R ; Bbar S <= Bbar (R ; S)
  LawReport graphs;        // Bbar Gr(f) = Gr(Bf), includes diagonals
  bool all_ok() const {
    return converse.ok && monotonicity.ok && composition.ok && graphs.ok;
  }
};

inline LaxReport check_lax_extension(const HetLifting& lift, std::size_t max_carrier,
                                     std::size_t alphabet) {
  LaxReport report;

  std::vector<std::vector<LtsBox>> boxes(max_carrier + 1);
  for (std::size_t n = 0; n <= max_carrier; ++n) boxes[n] = enumerate_lts_boxes(n, alphabet);

  // Clause 1 and clause 2.
  for (std::size_t nx = 0; nx <= max_carrier; ++nx)
    for (std::size_t ny = 0; ny <= max_carrier; ++ny) {
      auto rels = laws_detail::all_relations(nx, ny);
      for (const auto& r : rels) {
        BitMatrix lifted = lift(r, boxes[nx], boxes[ny]);
        ++report.converse.instances;
        if (report.converse.ok &&
            lift(r.transpose(), boxes[ny], boxes[nx]) != lifted.transpose()) {
          report.converse.ok = false;
          report.converse.counterexample =
              "relation on " + std::to_string(nx) + "x" + std::to_string(ny);
        }
        // Monotone in the sub-relations of r.
        for (const auto& r2 : rels) {
          if (!subset(r2, r)) continue;
          ++report.monotonicity.instances;
          if (report.monotonicity.ok && !subset(lift(r2, boxes[nx], boxes[ny]), lifted)) {
            report.monotonicity.ok = false;
            report.monotonicity.counterexample =
                "relations on " + std::to_string(nx) + "x" + std::to_string(ny);
          }
        }
      }
    }

  // Clause 3: lax composition, with the lifting cached per relation.
  for (std::size_t nx = 0; nx <= max_carrier; ++nx)
    for (std::size_t ny = 0; ny <= max_carrier; ++ny)
      for (std::size_t nz = 0; nz <= max_carrier; ++nz) {
        auto rels_xy = laws_detail::all_relations(nx, ny);
        auto rels_yz = laws_detail::all_relations(ny, nz);
        std::vector<BitMatrix> lift_xy, lift_yz, lift_xz;
        for (const auto& r : rels_xy) lift_xy.push_back(lift(r, boxes[nx], boxes[ny]));
        for (const auto& s : rels_yz) lift_yz.push_back(lift(s, boxes[ny], boxes[nz]));
        for (const auto& t : laws_detail::all_relations(nx, nz))
          lift_xz.push_back(lift(t, boxes[nx], boxes[nz]));
        auto code_of = [&](const BitMatrix& m) {
          std::size_t code = 0, e = 0;
          for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j, ++e)
              if (m.at(i, j)) code |= std::size_t{1} << e;
          return code;
        };
        for (std::size_t ri = 0; ri < rels_xy.size(); ++ri)
          for (std::size_t si = 0; si < rels_yz.size(); ++si) {
            ++report.composition.instances;
            if (!report.composition.ok) continue;
            const BitMatrix& composed_lift = lift_xz[code_of(compose(rels_xy[ri], rels_yz[si]))];
            if (!subset(compose(lift_xy[ri], lift_yz[si]), composed_lift)) {
              report.composition.ok = false;
              report.composition.counterexample = "relations on " + std::to_string(nx) + "x" +
                                                  std::to_string(ny) + "x" + std::to_string(nz);
            }
          }
      }

  // Clause 4: graphs of functions, diagonals included via identities.
  for (std::size_t nx = 0; nx <= max_carrier; ++nx)
    for (std::size_t ny = 0; ny <= max_carrier; ++ny) {
      if (ny == 0 && nx > 0) continue;
      auto index_y = laws_detail::index_boxes(boxes[ny]);
      for (const auto& f : laws_detail::all_maps(nx, ny)) {
        BitMatrix graph(nx, ny);
        for (std::size_t x = 0; x < nx; ++x) graph.set(x, f[x], true);
        BitMatrix lifted = lift(graph, boxes[nx], boxes[ny]);
        BitMatrix graph_bf(boxes[nx].size(), boxes[ny].size());
        for (std::uint32_t i = 0; i < boxes[nx].size(); ++i)
          graph_bf.set(i, index_y.at(laws_detail::map_box(boxes[nx][i], f)), true);
        ++report.graphs.instances;
        if (report.graphs.ok && lifted != graph_bf) {
          report.graphs.ok = false;
          report.graphs.counterexample =
              "map " + std::to_string(nx) + "->" + std::to_string(ny);
        }
      }
    }

  return report;
}

}  // namespace copred
