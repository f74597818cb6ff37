#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "copred/lifting.hpp"
#include "copred/oracles.hpp"
#include "copred/system_io.hpp"

using namespace copred;

namespace {

Lts lts_s() {
  return std::get<Lts>(load_system(
      "kind: lts\nlabels: a b c\nstates: x x1 y y1 y2 z\n"
      "x: a -> {x1}\nx1: b -> {z}; c -> {z}\ny: a -> {y1, y2}\ny1: b -> {z}\ny2: c -> {z}\n"));
}

Dfa dfa_b() {
  return std::get<Dfa>(load_system(
      "kind: dfa\nlabels: a\nstates: p0 p1 p2\np0: 0; a -> p1\np1: 0; a -> p2\np2: 1; a -> p2\n"));
}

Lts lts_d() {
  return std::get<Lts>(load_system(
      "kind: lts\nlabels: tau\ntau: tau\nstates: s0 s1 s2 s3 s4\n"
      "s0: tau -> {s1}\ns1: tau -> {s2}\ns2: tau -> {s1}\ns3: tau -> {s4}\n"));
}

std::uint32_t state(const Lts& l, const std::string& name) {
  for (std::uint32_t i = 0; i < l.size(); ++i)
    if (l.state_names[i] == name) return i;
  FAIL("no state " + name);
  return 0;
}

BoolFibre random_relation(std::mt19937_64& rng, std::size_t n, FibreKind kind) {
  BoolFibre r = BoolFibre::bottom(n, kind);
  std::size_t entries = kind == FibreKind::relation ? n * n : n;
  for (std::size_t i = 0; i < entries; ++i) {
    if (kind == FibreKind::relation)
      r.set(i / n, i % n, rng() & 1);
    else
      r.set(i, rng() & 1);
  }
  return r;
}

}  // namespace

TEST_CASE("canonical step") {
  Lts dead = std::get<Lts>(load_system("kind: lts\nlabels: a\nstates: s t\n"));
  BoolFibre full2 = BoolFibre::top(2, FibreKind::relation);
  CHECK(step_canonical(dead, full2) == full2);

  Lts half = std::get<Lts>(load_system("kind: lts\nlabels: a\nstates: x y x1\nx: a -> {x1}\n"));
  BoolFibre step1 = step_canonical(half, BoolFibre::top(3, FibreKind::relation));
  CHECK(step1.at(0, 1) == 0);  // x moves, y cannot answer
  CHECK(step1.at(1, 0) == 0);  // back clause fails too
  CHECK(step1.at(1, 1) == 1);

  Lts s = lts_s();
  const auto x = state(s, "x"), y = state(s, "y");
  BoolFibre a1 = step_canonical(s, BoolFibre::top(s.size(), FibreKind::relation));
  CHECK(a1.at(x, y) == 1);
  BoolFibre a2 = step_canonical(s, a1);
  CHECK(a2.at(x, y) == 0);

  CHECK_THROWS_AS(step_canonical(s, full2), std::invalid_argument);
}

TEST_CASE("simulation step") {
  Lts half = std::get<Lts>(load_system("kind: lts\nlabels: a\nstates: x y x1\nx: a -> {x1}\n"));
  BoolFibre full = BoolFibre::top(3, FibreKind::relation);
  BoolFibre step1 = step_simulation(half, full);
  CHECK(step1.at(1, 0) == 1);  // deadlocked y below anything
  CHECK(step1.at(0, 1) == 0);  // x's move has no answer

  Lts s = lts_s();
  BoolFibre sim = simulation_oracle(s);
  BoolFibre stepped = step_simulation(s, sim);
  CHECK(stepped.at(state(s, "y"), state(s, "x")) == 1);
  CHECK(stepped.at(state(s, "x"), state(s, "y")) == 0);
}

TEST_CASE("sdw step") {
  Dfa b = dfa_b();
  LevelFibre top = LevelFibre::top(3, FibreKind::relation);

  LevelFibre one = step_sdw(b, top);
  CHECK(one.at(1, 2) == Level::of(0));  // outputs differ
  CHECK(one.at(0, 1) == Level::inf());  // outputs equal, successors still at top
  CHECK(one.at(0, 0) == Level::inf());

  // Outputs differ: level 0 regardless of the relation argument.
  LevelFibre bottom = LevelFibre::bottom(3, FibreKind::relation);
  CHECK(step_sdw(b, bottom).at(0, 2) == Level::of(0));

  LevelFibre two = step_sdw(b, one);
  CHECK(two.at(0, 1) == Level::of(1));  // 1 + level of (p1, p2)
}

TEST_CASE("divergence step") {
  Lts d = lts_d();
  BoolFibre all = BoolFibre::top(d.size(), FibreKind::predicate);
  BoolFibre one = step_divergence(d, all);
  CHECK(one.at(0) == 1);
  CHECK(one.at(3) == 1);
  CHECK(one.at(4) == 0);  // no tau-move

  BoolFibre just_s1 = BoolFibre::bottom(d.size(), FibreKind::predicate);
  just_s1.set(1, 1);
  BoolFibre pre = step_divergence(d, just_s1);
  CHECK(pre.at(0) == 1);
  CHECK(pre.at(2) == 1);
  CHECK(pre.at(1) == 0);
  CHECK(pre.at(3) == 0);

  Lts no_tau = std::get<Lts>(load_system("kind: lts\nlabels: a\nstates: s\n"));
  CHECK_THROWS_AS(step_divergence(no_tau, BoolFibre::top(1, FibreKind::predicate)),
                  validation_error);
}

TEST_CASE("monotonicity and the forth-only comparison, sampled") {
  std::mt19937_64 rng(7);
  Lts s = lts_s();
  Lts d = lts_d();
  Dfa b = dfa_b();
  for (int it = 0; it < 200; ++it) {
    BoolFibre r1 = random_relation(rng, s.size(), FibreKind::relation);
    BoolFibre r2 = fibre_meet(r1, random_relation(rng, s.size(), FibreKind::relation));
    // r2 <= r1 by construction
    CHECK(fibre_leq(step_canonical(s, r2), step_canonical(s, r1)));
    CHECK(fibre_leq(step_simulation(s, r2), step_simulation(s, r1)));
    CHECK(fibre_leq(step_canonical(s, r1), step_simulation(s, r1)));

    BoolFibre g1 = random_relation(rng, d.size(), FibreKind::predicate);
    BoolFibre g2 = fibre_meet(g1, random_relation(rng, d.size(), FibreKind::predicate));
    CHECK(fibre_leq(step_divergence(d, g2), step_divergence(d, g1)));
  }

  const Level levels[] = {Level::of(0), Level::of(1), Level::of(2), Level::inf()};
  for (int it = 0; it < 200; ++it) {
    LevelFibre r1 = LevelFibre::bottom(b.size(), FibreKind::relation);
    LevelFibre r2 = LevelFibre::bottom(b.size(), FibreKind::relation);
    for (std::size_t x = 0; x < b.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        Level v1 = levels[rng() % 4];
        Level v2 = DiscountLevel::meet(v1, levels[rng() % 4]);
        r1.set(x, y, v1);
        r2.set(x, y, v2);
      }
    CHECK(fibre_leq(step_sdw(b, r2), step_sdw(b, r1)));
  }
}

TEST_CASE("raw liftings agree with the fused steps through the coalgebra") {
  // Reindexing the raw lifting along gamma must equal the fused step.
  std::mt19937_64 rng(11);
  Lts s = lts_s();
  std::vector<LtsBox> gamma_boxes;
  std::vector<std::uint32_t> gamma;
  for (std::uint32_t x = 0; x < s.size(); ++x) {
    LtsBox box;
    for (std::size_t a = 0; a < s.alphabet_size(); ++a) box.succ.push_back(s.succ(x, a));
    gamma_boxes.push_back(std::move(box));
    gamma.push_back(x);
  }
  for (int it = 0; it < 50; ++it) {
    BoolFibre r = random_relation(rng, s.size(), FibreKind::relation);
    CHECK(raw_canonical(r, gamma_boxes) == step_canonical(s, r));
    CHECK(raw_simulation(r, gamma_boxes) == step_simulation(s, r));
  }
}

TEST_CASE("diagonal preservation of the canonical lifting") {
  // raw canonical lifting of the diagonal is the diagonal on BX, for all
  // carriers <= 3 and alphabets <= 2.
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t na = 1; na <= 2; ++na) {
      auto boxes = enumerate_lts_boxes(n, na);
      BoolFibre diag = BoolFibre::bottom(n, FibreKind::relation);
      for (std::size_t x = 0; x < n; ++x) diag.set(x, x, 1);
      BoolFibre lifted = raw_canonical(diag, boxes);
      for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = 0; j < boxes.size(); ++j)
          REQUIRE(lifted.at(i, j) == (i == j ? 1 : 0));
    }
}
