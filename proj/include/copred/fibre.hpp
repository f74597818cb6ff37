#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "copred/lattice.hpp"

namespace copred {

enum class FibreKind : std::uint8_t { relation, predicate };

// A V-valued relation or unary predicate over the carrier {0, ..., n-1},
// stored as a dense table (n*n or n entries).  Values are immutable in
// spirit: operations return fresh fibres.
template <ValueLattice L>
class Fibre {
 public:
  using value_type = typename L::value_type;

  Fibre(std::size_t carrier, FibreKind kind, value_type fill)
      : carrier_(carrier),
        kind_(kind),
        values_(kind == FibreKind::relation ? carrier * carrier : carrier, fill) {}

  static Fibre top(std::size_t carrier, FibreKind kind) {
    return Fibre(carrier, kind, L::top());
  }
  static Fibre bottom(std::size_t carrier, FibreKind kind) {
    return Fibre(carrier, kind, L::bottom());
  }

  std::size_t carrier() const { return carrier_; }
  FibreKind kind() const { return kind_; }

  value_type at(std::size_t x) const { return values_[check_pred(x)]; }
  value_type at(std::size_t x, std::size_t y) const { return values_[check_rel(x, y)]; }
  void set(std::size_t x, value_type v) { values_[check_pred(x)] = v; }
  void set(std::size_t x, std::size_t y, value_type v) { values_[check_rel(x, y)] = v; }

  friend bool operator==(const Fibre&, const Fibre&) = default;

 private:
  std::size_t check_pred(std::size_t x) const {
    if (kind_ != FibreKind::predicate || x >= carrier_)
      throw std::invalid_argument("fibre: bad predicate access");
    return x;
  }
  std::size_t check_rel(std::size_t x, std::size_t y) const {
    if (kind_ != FibreKind::relation || x >= carrier_ || y >= carrier_)
      throw std::invalid_argument("fibre: bad relation access");
    return x * carrier_ + y;
  }

  std::size_t carrier_;
  FibreKind kind_;
  std::vector<value_type> values_;
};

using BoolFibre = Fibre<Bool2>;
using LevelFibre = Fibre<DiscountLevel>;

namespace detail {
template <ValueLattice L>
void require_compatible(const Fibre<L>& a, const Fibre<L>& b) {
  if (a.carrier() != b.carrier() || a.kind() != b.kind())
    throw std::invalid_argument("fibre: carrier/kind mismatch");
}
}  // namespace detail

// Pointwise order on a fibre: a <= b iff every entry of a is lattice-below
// the corresponding entry of b.
template <ValueLattice L>
bool fibre_leq(const Fibre<L>& a, const Fibre<L>& b) {
  detail::require_compatible(a, b);
  const std::size_t n = a.carrier();
  if (a.kind() == FibreKind::relation) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!L::leq(a.at(x, y), b.at(x, y))) return false;
  } else {
    for (std::size_t x = 0; x < n; ++x)
      if (!L::leq(a.at(x), b.at(x))) return false;
  }
  return true;
}

template <ValueLattice L>
Fibre<L> fibre_meet(const Fibre<L>& a, const Fibre<L>& b) {
  detail::require_compatible(a, b);
  Fibre<L> out = a;
  const std::size_t n = a.carrier();
  if (a.kind() == FibreKind::relation) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        out.set(x, y, L::meet(a.at(x, y), b.at(x, y)));
  } else {
    for (std::size_t x = 0; x < n; ++x) out.set(x, L::meet(a.at(x), b.at(x)));
  }
  return out;
}

// Reindexing along f: X -> Y, given as a table of Y-indices with one entry
// per element of X.  Relations pull back along f x f, predicates along f.
template <ValueLattice L>
Fibre<L> reindex(const std::vector<std::uint32_t>& f, const Fibre<L>& s) {
  const std::size_t n = f.size();
  for (std::uint32_t fx : f)
    if (fx >= s.carrier()) throw std::invalid_argument("reindex: map leaves the carrier");
  Fibre<L> out(n, s.kind(), L::top());
  if (s.kind() == FibreKind::relation) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) out.set(x, y, s.at(f[x], f[y]));
  } else {
    for (std::size_t x = 0; x < n; ++x) out.set(x, s.at(f[x]));
  }
  return out;
}

}  // namespace copred
