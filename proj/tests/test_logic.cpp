#include <catch2/catch_amalgamated.hpp>

#include "copred/final_sequence.hpp"
#include "copred/fixpoint.hpp"
#include "copred/logic.hpp"
#include "copred/system_io.hpp"

using namespace copred;

namespace {

Dfa dfa_a() {
  return std::get<Dfa>(
      load_system("kind: dfa\nlabels: a\nstates: q0 q1\nq0: 0; a -> q1\nq1: 1; a -> q1\n"));
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

Lts lts_s() {
  return std::get<Lts>(load_system(
      "kind: lts\nlabels: a b c\nstates: x x1 y y1 y2 z\n"
      "x: a -> {x1}\nx1: b -> {z}; c -> {z}\ny: a -> {y1, y2}\ny1: b -> {z}\ny2: c -> {z}\n"));
}

WordFormula word(std::initializer_list<std::uint32_t> ls) { return WordFormula{ls}; }

}  // namespace

TEST_CASE("accepts") {
  Dfa a = dfa_a();
  CHECK(accepts(a, 1, word({})) == 1);
  CHECK(accepts(a, 0, word({})) == 0);

  Dfa b = dfa_b();
  CHECK(accepts(b, 0, word({0, 0})) == 1);
  CHECK(accepts(b, 1, word({0, 0})) == 1);
  CHECK(accepts(b, 1, word({0})) == 1);
  CHECK(accepts(b, 0, word({0})) == 0);
  CHECK_THROWS_AS(accepts(b, 0, word({3})), std::invalid_argument);

  // th(x)(aw) = th(t(x)(a))(w)
  for (std::uint32_t x = 0; x < b.size(); ++x)
    for (const auto& w : enumerate_words(1, 4)) {
      WordFormula aw;
      aw.letters.push_back(0);
      aw.letters.insert(aw.letters.end(), w.letters.begin(), w.letters.end());
      CHECK(accepts(b, x, aw) == accepts(b, b.next(x, 0), w));
    }
}

TEST_CASE("sat_tau") {
  Lts d = lts_d();
  for (std::uint32_t x = 0; x < d.size(); ++x) CHECK(sat_tau(d, x, 0) == 1);
  CHECK(sat_tau(d, 3, 1) == 1);
  CHECK(sat_tau(d, 3, 2) == 0);
  for (std::uint32_t n = 0; n < 10; ++n) CHECK(sat_tau(d, 0, n) == 1);
}

TEST_CASE("sat_hm") {
  Lts s = lts_s();
  CHECK(sat_hm(s, 0, HmFormula::top()) == 1);
  CHECK(sat_hm(s, 5, HmFormula::top()) == 1);

  // <a>(<b>T & <c>T) tells x and y apart.
  HmFormula phi = HmFormula::diamond(
      0, HmFormula::conj(HmFormula::diamond(1, HmFormula::top()),
                         HmFormula::diamond(2, HmFormula::top())));
  CHECK(sat_hm(s, 0, phi) == 1);
  CHECK(sat_hm(s, 2, phi) == 0);

  HmFormula dia = HmFormula::diamond(0, HmFormula::top());
  CHECK(sat_hm(s, 5, dia) == 0);  // deadlocked z
}

TEST_CASE("formula parsing and rendering") {
  std::vector<std::string> labels{"a", "b", "c"};
  HmFormula phi = parse_hm_formula("<a>(<b>T & <c>T)", labels);
  CHECK(phi.render(labels) == "<a>(<b>T & <c>T)");
  CHECK(parse_hm_formula("<a>( <c>T & <b> T )", labels) == phi);  // normal form
  CHECK(parse_hm_formula("T & T", labels) == HmFormula::top());
  CHECK(parse_hm_formula("<a>T & <a>T", labels) ==
        HmFormula::diamond(0, HmFormula::top()));
  CHECK_THROWS_AS(parse_hm_formula("<d>T", labels), std::invalid_argument);
  CHECK_THROWS_AS(parse_hm_formula("<a>", labels), std::invalid_argument);
  CHECK_THROWS_AS(parse_hm_formula("(T", labels), std::invalid_argument);
}

TEST_CASE("formula enumeration") {
  auto w2 = enumerate_words(1, 2);
  REQUIRE(w2.size() == 2);
  CHECK(w2[0] == word({}));
  CHECK(w2[1] == word({0}));
  CHECK(enumerate_words(2, 3).size() == 1 + 2 + 4);
  CHECK(enumerate_words(1, 0).empty());

  CHECK(enumerate_tau(0).empty());
  CHECK(enumerate_tau(3).size() == 3);

  auto h1 = enumerate_hm(1, 1);
  REQUIRE(h1.size() == 2);
  CHECK(h1[0] == HmFormula::top());
  CHECK(h1[1] == HmFormula::diamond(0, HmFormula::top()));
  CHECK(enumerate_hm(1, 2).size() == 4);
  CHECK(enumerate_hm(2, 1).size() == 4);
  CHECK(enumerate_hm(2, 2).size() == 256);
  CHECK_THROWS_AS(enumerate_hm(2, 3), unsupported_error);

  // Stages are cumulative: every stage-i normal form appears at stage i+1.
  auto h2 = enumerate_hm(1, 2);
  for (const auto& f : h1) CHECK(std::find(h2.begin(), h2.end(), f) != h2.end());
}

TEST_CASE("depth-restricted theories") {
  Dfa b = dfa_b();
  CHECK(word_theory_at_depth(b, 0, 0).empty());
  CHECK(word_theory_at_depth(b, 0, 3) == std::vector<std::uint8_t>{0, 0, 1});

  Lts d = lts_d();
  CHECK(tau_theory_at_depth(d, 3, 3) == std::vector<std::uint8_t>{1, 1, 0});

  // Downward closure in n: once false, false forever.
  for (std::uint32_t x = 0; x < d.size(); ++x) {
    auto th = tau_theory_at_depth(d, x, 8);
    for (std::size_t n = 1; n < th.size(); ++n) CHECK(th[n] <= th[n - 1]);
  }

  // Filter laws for depth-k conjunction/diamond theories.
  Lts s = std::get<Lts>(load_system(
      "kind: lts\nlabels: a b\nstates: p q s1 s2 d\n"
      "p: a -> {s1, s2}\nq: a -> {s1}\ns1: a -> {d}; b -> {d}\ns2: a -> {d}\n"));
  auto stage = enumerate_hm(s.alphabet_size(), 2);
  REQUIRE(stage.size() == 256);
  for (std::uint32_t x = 0; x < s.size(); ++x) {
    CHECK(sat_hm(s, x, HmFormula::top()) == 1);
    for (std::size_t i = 0; i < stage.size(); i += 7)
      for (std::size_t j = 0; j < stage.size(); j += 11) {
        HmFormula both = HmFormula::conj(stage[i], stage[j]);
        CHECK(sat_hm(s, x, both) ==
              (sat_hm(s, x, stage[i]) && sat_hm(s, x, stage[j]) ? 1 : 0));
      }
  }

  // Coherence along the stage inclusions: the depth-i theory is the
  // depth-(i+1) theory restricted to the smaller stage.
  for (std::size_t i = 0; i + 1 <= 4; ++i) {
    auto small = enumerate_words(b.alphabet_size(), i);
    auto theory_small = word_theory_at_depth(b, 0, i);
    auto big = enumerate_words(b.alphabet_size(), i + 1);
    auto theory_big = word_theory_at_depth(b, 0, i + 1);
    for (std::size_t k = 0; k < small.size(); ++k) {
      auto at = std::find(big.begin(), big.end(), small[k]) - big.begin();
      CHECK(theory_big[at] == theory_small[k]);
    }
  }
}

TEST_CASE("final sequence carriers") {
  DfaStages ds(1);
  ds.materialize_full(2);
  CHECK(ds.stage_size(0) == 1);
  CHECK(ds.stage_size(1) == 2);
  CHECK(ds.stage_size(2) == 4);

  LtsStages ls(1);
  ls.materialize_full(2);
  CHECK(ls.stage_size(1) == 2);
  CHECK(ls.stage_size(2) == 4);

  LtsStages capped(2, 100);
  CHECK_THROWS_AS(capped.materialize_full(2), stage_cap_error);

  // gamma_1 for DFA-A: q0 |-> (0, *), q1 |-> (1, *).
  DfaStages da(1);
  Dfa a = dfa_a();
  auto g1 = da.cone(a, 1);
  CHECK(da.node(1, g1[0]) == DfaBox{0, {0}});
  CHECK(da.node(1, g1[1]) == DfaBox{1, {0}});

  // Projection squares with the cone: b(gamma_{i+1}) = gamma_i.
  Dfa b = dfa_b();
  DfaStages db(1);
  for (std::size_t i = 0; i + 1 <= 4; ++i) {
    auto gi = db.cone(b, i);
    auto gi1 = db.cone(b, i + 1);
    for (std::uint32_t x = 0; x < b.size(); ++x)
      CHECK(db.project(i + 1, gi1[x]) == gi[x]);
  }
  Lts s = lts_s();
  LtsStages lst(3);
  for (std::size_t i = 0; i + 1 <= 3; ++i) {
    auto gi = lst.cone(s, i);
    auto gi1 = lst.cone(s, i + 1);
    for (std::uint32_t x = 0; x < s.size(); ++x)
      CHECK(lst.project(i + 1, gi1[x]) == gi[x]);
  }
}

TEST_CASE("delta_i on trees") {
  DfaStages ds(1);
  ds.materialize_full(1);
  std::uint32_t accepting = ds.intern(1, DfaBox{1, {0}});
  CHECK(ds.delta_word(1, accepting, word({})) == 1);
  CHECK_THROWS_AS(ds.delta_word(1, accepting, word({0})), std::invalid_argument);

  LtsStages ls(1);
  ls.materialize_full(1);
  std::uint32_t can_a = ls.intern(1, LtsBox{{{0}}});
  std::uint32_t stuck = ls.intern(1, LtsBox{{{}}});
  CHECK(ls.delta_hm(1, can_a, HmFormula::top()) == 1);
  CHECK(ls.delta_hm(1, can_a, HmFormula::diamond(0, HmFormula::top())) == 1);
  CHECK(ls.delta_hm(1, stuck, HmFormula::diamond(0, HmFormula::top())) == 0);
  CHECK(ls.delta_tau(1, stuck, 0, 0) == 1);
  std::uint32_t two_deep = ls.intern(2, LtsBox{{{can_a}}});
  std::uint32_t three_deep = ls.intern(3, LtsBox{{{two_deep}}});
  CHECK(ls.delta_tau(3, three_deep, 2, 0) == 1);
  std::uint32_t stuck2 = ls.intern(2, LtsBox{{{stuck}}});
  CHECK(ls.delta_tau(3, ls.intern(3, LtsBox{{{stuck2}}}), 2, 0) == 1);
  CHECK(ls.delta_tau(3, ls.intern(3, LtsBox{{{}}}), 2, 0) == 0);
  CHECK_THROWS_AS(ls.delta_tau(2, two_deep, 2, 0), std::invalid_argument);
}

TEST_CASE("theory maps factor through the final sequence") {
  // th_i = delta_i . gamma_i, checked pointwise on every stage formula.
  Dfa b = dfa_b();
  DfaStages ds(1);
  for (std::size_t i = 0; i <= 3; ++i) {
    auto gamma = ds.cone(b, i);
    auto words = enumerate_words(1, i);
    for (std::uint32_t x = 0; x < b.size(); ++x) {
      auto th = word_theory_at_depth(b, x, i);
      for (std::size_t k = 0; k < words.size(); ++k)
        REQUIRE(ds.delta_word(i, gamma[x], words[k]) == th[k]);
    }
  }

  Lts d = lts_d();
  LtsStages lsd(1);
  for (std::size_t i = 0; i <= 3; ++i) {
    auto gamma = lsd.cone(d, i);
    for (std::uint32_t x = 0; x < d.size(); ++x) {
      auto th = tau_theory_at_depth(d, x, i);
      for (std::uint32_t n = 0; n < i; ++n)
        REQUIRE(lsd.delta_tau(i, gamma[x], n, *d.tau) == th[n]);
    }
  }

  Lts s = lts_s();
  LtsStages lss(3);
  for (std::size_t i = 0; i <= 1; ++i) {
    auto gamma = lss.cone(s, i);
    for (const auto& phi : enumerate_hm(3, i))
      for (std::uint32_t x = 0; x < s.size(); ++x)
        REQUIRE(lss.delta_hm(i, gamma[x], phi) == sat_hm(s, x, phi));
  }
  Lts m = std::get<Lts>(load_system(
      "kind: lts\nlabels: a b\nstates: p q s1 s2 d\n"
      "p: a -> {s1, s2}\nq: a -> {s1}\ns1: a -> {d}; b -> {d}\ns2: a -> {d}\n"));
  LtsStages lsm(2);
  for (std::size_t i = 0; i <= 2; ++i) {
    auto gamma = lsm.cone(m, i);
    for (const auto& phi : enumerate_hm(2, i))
      for (std::uint32_t x = 0; x < m.size(); ++x)
        REQUIRE(lsm.delta_hm(i, gamma[x], phi) == sat_hm(m, x, phi));
  }
}

TEST_CASE("lifted final sequence matches the approximants") {
  // (gamma_i)^*(Bbar^i 1) = (gamma^* . Bbar)^i (top)
  Lts s = lts_s();
  LtsStages lss(3);
  for (std::size_t i = 0; i <= 3; ++i) {
    auto gamma = lss.cone(s, i);
    for (LiftingId id : {LiftingId::canonical_lts, LiftingId::simulation_lts}) {
      BoolFibre stage = stage_lifting_bool(lss, id, i);
      BoolFibre pulled = reindex(gamma, stage);
      auto step = id == LiftingId::canonical_lts ? canonical_step(s) : simulation_step(s);
      REQUIRE(pulled ==
              approximant(step, BoolFibre::top(s.size(), FibreKind::relation), i));
    }
  }

  Lts d = lts_d();
  LtsStages lsd(1);
  for (std::size_t i = 0; i <= 4; ++i) {
    auto gamma = lsd.cone(d, i);
    BoolFibre stage = stage_lifting_divergence(lsd, *d.tau, i);
    REQUIRE(reindex(gamma, stage) ==
            approximant(divergence_step(d), BoolFibre::top(d.size(), FibreKind::predicate), i));
  }

  Dfa b = dfa_b();
  DfaStages dsb(1);
  for (std::size_t i = 0; i <= 4; ++i) {
    auto gamma = dsb.cone(b, i);
    LevelFibre stage = stage_lifting_sdw(dsb, i);
    REQUIRE(reindex(gamma, stage) ==
            approximant(sdw_step(b), LevelFibre::top(b.size(), FibreKind::relation), i));
  }
}
