#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "copred/fibre.hpp"

using namespace copred;

namespace {

// All maps {0..nx-1} -> {0..ny-1}, as tables.
std::vector<std::vector<std::uint32_t>> all_maps(std::size_t nx, std::size_t ny) {
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

std::vector<BoolFibre> all_bool_relations(std::size_t n) {
  std::vector<BoolFibre> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n * n)); ++mask) {
    BoolFibre r = BoolFibre::bottom(n, FibreKind::relation);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        r.set(x, y, mask >> (x * n + y) & 1);
    out.push_back(std::move(r));
  }
  return out;
}

const Level kLevels[] = {Level::of(0), Level::of(1), Level::of(2), Level::inf()};

std::vector<LevelFibre> all_level_relations(std::size_t n) {
  std::vector<LevelFibre> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    LevelFibre r = LevelFibre::bottom(n, FibreKind::relation);
    std::size_t c = code;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        r.set(x, y, kLevels[c % 4]);
        c /= 4;
      }
    out.push_back(std::move(r));
  }
  return out;
}

BoolFibre diagonal(std::size_t n) {
  BoolFibre r = BoolFibre::bottom(n, FibreKind::relation);
  for (std::size_t x = 0; x < n; ++x) r.set(x, x, 1);
  return r;
}

}  // namespace

TEST_CASE("discount levels form a total order with inf on top") {
  CHECK(DiscountLevel::leq(Level::of(0), Level::of(1)));
  CHECK(DiscountLevel::leq(Level::of(1), Level::of(2)));
  CHECK(DiscountLevel::leq(Level::of(7), Level::inf()));
  CHECK_FALSE(DiscountLevel::leq(Level::inf(), Level::of(1000)));
  CHECK(DiscountLevel::top() == Level::inf());
  CHECK(DiscountLevel::bottom() == Level::of(0));
  CHECK(DiscountLevel::meet(Level::of(2), Level::of(5)) == Level::of(2));
  CHECK(DiscountLevel::join(Level::of(2), Level::of(5)) == Level::of(5));
  CHECK(DiscountLevel::join(Level::inf(), Level::of(5)) == Level::inf());
  CHECK(DiscountLevel::meet(Level::inf(), Level::of(5)) == Level::of(5));
  CHECK(Level::of(3).discounted() == Level::of(4));
  CHECK(Level::inf().discounted() == Level::inf());
  CHECK(DiscountLevel::render(Level::of(0)) == "1");
  CHECK(DiscountLevel::render(Level::of(2)) == "c^2");
  CHECK(DiscountLevel::render(Level::inf()) == "0");
}

TEST_CASE("fibre top") {
  BoolFibre full = BoolFibre::top(2, FibreKind::relation);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(full.at(x, y) == 1);

  LevelFibre lvl = LevelFibre::top(2, FibreKind::relation);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(lvl.at(x, y) == Level::inf());

  BoolFibre pred = BoolFibre::top(1, FibreKind::predicate);
  CHECK(pred.at(0) == 1);

  // Empty carriers are legal and collapse to the unique empty table.
  CHECK(BoolFibre::top(0, FibreKind::relation) == BoolFibre::bottom(0, FibreKind::relation));
}

TEST_CASE("fibre order") {
  BoolFibre full = BoolFibre::top(2, FibreKind::relation);
  CHECK(fibre_leq(diagonal(2), full));
  CHECK_FALSE(fibre_leq(full, diagonal(2)));

  // In the reversed order on distances the table of c^2 sits strictly
  // above the table of c^1: larger exponents mean smaller distances.
  LevelFibre ones(1, FibreKind::relation, Level::of(1));
  LevelFibre twos(1, FibreKind::relation, Level::of(2));
  CHECK(fibre_leq(ones, twos));
  CHECK_FALSE(fibre_leq(twos, ones));

  CHECK_THROWS_AS(fibre_leq(full, BoolFibre::top(3, FibreKind::relation)),
                  std::invalid_argument);
  CHECK_THROWS_AS(fibre_leq(full, BoolFibre::top(2, FibreKind::predicate)),
                  std::invalid_argument);
}

TEST_CASE("fibre meet") {
  BoolFibre full = BoolFibre::top(2, FibreKind::relation);
  BoolFibre r = BoolFibre::bottom(2, FibreKind::relation);
  r.set(0, 1, 1);
  CHECK(fibre_meet(r, full) == r);
  CHECK(fibre_meet(r, r) == r);

  BoolFibre s = BoolFibre::bottom(2, FibreKind::relation);
  s.set(0, 1, 1);
  s.set(1, 0, 1);
  CHECK(fibre_meet(r, s) == r);

  for (const auto& a : all_bool_relations(2))
    for (const auto& b : all_bool_relations(2)) {
      auto m = fibre_meet(a, b);
      CHECK(fibre_leq(m, a));
      CHECK(fibre_leq(m, b));
    }
}

TEST_CASE("reindexing") {
  BoolFibre diag1 = diagonal(1);

  SECTION("identity") {
    BoolFibre s = diagonal(3);
    CHECK(reindex({0, 1, 2}, s) == s);
  }
  SECTION("constant map yields a constant table") {
    BoolFibre s = BoolFibre::bottom(2, FibreKind::relation);
    s.set(0, 0, 1);
    BoolFibre r = reindex({0, 0, 0}, s);
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 3; ++y) CHECK(r.at(x, y) == 1);
  }
  SECTION("collapsing {0,1} onto a point pulls the diagonal back to the full relation") {
    CHECK(reindex({0, 0}, diag1) == BoolFibre::top(2, FibreKind::relation));
  }
  SECTION("map leaving the carrier is rejected") {
    CHECK_THROWS_AS(reindex({1}, diag1), std::invalid_argument);
  }
}

TEST_CASE("reindexing laws on small carriers") {
  // Functoriality, meet preservation and top preservation, enumerated
  // exhaustively on carriers of size <= 3 (Booleans) and <= 2 (levels).
  for (std::size_t nx = 0; nx <= 3; ++nx)
    for (std::size_t ny = 0; ny <= 3; ++ny)
      for (std::size_t nz = 0; nz <= 3; ++nz) {
        auto fs = all_maps(nx, ny);
        auto gs = all_maps(ny, nz);
        auto ss = all_bool_relations(nz);
        for (const auto& g : gs) {
          std::vector<std::uint32_t> gof(nx);
          for (const auto& f : fs) {
            for (std::size_t i = 0; i < nx; ++i) gof[i] = g[f[i]];
            for (const auto& s : ss)
              REQUIRE(reindex(f, reindex(g, s)) == reindex(gof, s));
          }
        }
      }

  for (std::size_t nx = 0; nx <= 2; ++nx)
    for (std::size_t ny = 0; ny <= 2; ++ny) {
      auto fs = all_maps(nx, ny);
      auto as = all_level_relations(ny);
      for (const auto& f : fs) {
        REQUIRE(reindex(f, LevelFibre::top(ny, FibreKind::relation)) ==
                LevelFibre::top(nx, FibreKind::relation));
        for (const auto& a : as)
          for (const auto& b : as)
            REQUIRE(reindex(f, fibre_meet(a, b)) ==
                    fibre_meet(reindex(f, a), reindex(f, b)));
      }
    }
}
