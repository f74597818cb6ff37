#pragma once

#include <algorithm>
#include <cstdint>
#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace copred {

// A word over the alphabet, as label indices.
struct WordFormula {
  std::vector<std::uint32_t> letters;
  friend bool operator==(const WordFormula&, const WordFormula&) = default;
  friend auto operator<=>(const WordFormula&, const WordFormula&) = default;
};

// <tau>^n T
struct TauFormula {
  std::uint32_t depth = 0;
  friend bool operator==(const TauFormula&, const TauFormula&) = default;
  friend auto operator<=>(const TauFormula&, const TauFormula&) = default;
};

// Conjunction/diamond formula in semilattice normal form: a finite set of
// (label, subformula) pairs.  The empty set is T, a one-element set is a
// diamond, anything larger the conjunction of its diamonds.  Sets are kept
// sorted and deduplicated, so syntactically distinct presentations of the
// same normal form compare equal.  Subformulas are shared immutable nodes.
class HmFormula {
 public:
  struct Part {
    std::uint32_t label = 0;
    std::shared_ptr<const HmFormula> child;  // never null
  };

  HmFormula() = default;  // T

  static HmFormula top() { return HmFormula(); }

  static HmFormula diamond(std::uint32_t label, HmFormula child) {
    HmFormula out;
    out.parts_.push_back(Part{label, std::make_shared<const HmFormula>(std::move(child))});
    return out;
  }

  static HmFormula conj(const HmFormula& a, const HmFormula& b) {
    HmFormula out;
    out.parts_ = a.parts_;
    out.parts_.insert(out.parts_.end(), b.parts_.begin(), b.parts_.end());
    out.normalize();
    return out;
  }

  const std::vector<Part>& parts() const { return parts_; }
  bool is_top() const { return parts_.empty(); }

  std::uint32_t depth() const {
    std::uint32_t d = 0;
    for (const Part& p : parts_) d = std::max(d, 1 + p.child->depth());
    return d;
  }

  // Total diamond count, used to prefer small witnesses.
  std::uint32_t size() const {
    std::uint32_t s = 0;
    for (const Part& p : parts_) s += 1 + p.child->size();
    return s;
  }

  // Structural order; the induced equality is normal-form equality.
  static std::strong_ordering cmp(const HmFormula& a, const HmFormula& b) {
    const std::size_t n = std::min(a.parts_.size(), b.parts_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.parts_[i].label <=> b.parts_[i].label; c != 0) return c;
      if (a.parts_[i].child != b.parts_[i].child)
        if (auto c = cmp(*a.parts_[i].child, *b.parts_[i].child); c != 0) return c;
    }
    return a.parts_.size() <=> b.parts_.size();
  }

  friend bool operator==(const HmFormula& a, const HmFormula& b) {
    return cmp(a, b) == std::strong_ordering::equal;
  }
  friend bool operator<(const HmFormula& a, const HmFormula& b) {
    return cmp(a, b) == std::strong_ordering::less;
  }

  std::string render(const std::vector<std::string>& labels) const {
    if (is_top()) return "T";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += " & ";
      const Part& p = parts_[i];
      out += "<" + labels.at(p.label) + ">";
      if (p.child->parts().size() > 1) {
        out += "(" + p.child->render(labels) + ")";
      } else {
        out += p.child->render(labels);
      }
    }
    return out;
  }

 private:
  void normalize() {
    auto less = [](const Part& x, const Part& y) {
      if (x.label != y.label) return x.label < y.label;
      return cmp(*x.child, *y.child) == std::strong_ordering::less;
    };
    auto equal = [](const Part& x, const Part& y) {
      return x.label == y.label && *x.child == *y.child;
    };
    std::sort(parts_.begin(), parts_.end(), less);
    parts_.erase(std::unique(parts_.begin(), parts_.end(), equal), parts_.end());
  }

  std::vector<Part> parts_;
};

// Parser for the CLI boundary syntax: `T`, `<a> phi`, `phi & psi`,
// parentheses.  The result is normalized on construction.
namespace formula_detail {

struct HmParser {
  std::string_view text;
  std::size_t pos = 0;
  const std::vector<std::string>& labels;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("formula: " + msg + " at offset " + std::to_string(pos));
  }

  HmFormula parse_conjunction() {
    HmFormula acc = parse_atom();
    while (eat('&')) acc = HmFormula::conj(acc, parse_atom());
    return acc;
  }

  HmFormula parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of formula");
    if (eat('(')) {
      HmFormula inner = parse_conjunction();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (eat('<')) {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != '>') ++pos;
      if (pos >= text.size()) fail("missing '>'");
      std::string name(text.substr(start, pos - start));
      ++pos;
      auto it = std::find(labels.begin(), labels.end(), name);
      if (it == labels.end()) fail("unknown label '" + name + "'");
      return HmFormula::diamond(static_cast<std::uint32_t>(it - labels.begin()), parse_atom());
    }
    if (text[pos] == 'T') { ++pos; return HmFormula::top(); }
    fail("expected 'T', '<label>' or '('");
  }
};

}  // namespace formula_detail

inline HmFormula parse_hm_formula(std::string_view text, const std::vector<std::string>& labels) {
  formula_detail::HmParser p{text, 0, labels};
  HmFormula out = p.parse_conjunction();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace copred
