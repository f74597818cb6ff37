#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace copred {

// Raised when an input file cannot be parsed; carries a 1-based position.
struct parse_error : std::runtime_error {
  parse_error(std::string msg, std::size_t line, std::size_t col)
      : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

// Raised when a parsed system violates a structural invariant.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a requested lifting/logic/mode combination is not supported.
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic automaton: total transition function and an acceptance bit
// per state.  States and labels are index ranges with name tables.
struct Dfa {
  std::vector<std::string> state_names;
  std::vector<std::string> labels;
  std::vector<std::uint8_t> output;       // one bit per state
  std::vector<std::uint32_t> next_table;  // state * |labels| + label

  std::size_t size() const { return state_names.size(); }
  std::size_t alphabet_size() const { return labels.size(); }
  std::uint32_t next(std::size_t x, std::size_t a) const {
    return next_table[x * labels.size() + a];
  }
};

// Finitely-branching labelled transition system; successor sets are kept
// sorted and deduplicated.  An optional label may be designated as tau.
struct Lts {
  std::vector<std::string> state_names;
  std::vector<std::string> labels;
  std::optional<std::uint32_t> tau;
  std::vector<std::vector<std::uint32_t>> succ_table;  // state * |labels| + label

  std::size_t size() const { return state_names.size(); }
  std::size_t alphabet_size() const { return labels.size(); }
  const std::vector<std::uint32_t>& succ(std::size_t x, std::size_t a) const {
    return succ_table[x * labels.size() + a];
  }
  std::uint32_t tau_or_throw() const {
    if (!tau) throw validation_error("no tau label designated");
    return *tau;
  }
};

using System = std::variant<Dfa, Lts>;

inline void validate(const Dfa& d) {
  if (d.labels.empty()) throw validation_error("dfa: empty alphabet");
  if (d.output.size() != d.size() || d.next_table.size() != d.size() * d.labels.size())
    throw validation_error("dfa: table sizes do not match the state count");
  for (std::uint32_t t : d.next_table)
    if (t >= d.size()) throw validation_error("dfa: transition to unknown state");
  for (std::uint8_t o : d.output)
    if (o > 1) throw validation_error("dfa: output must be 0 or 1");
}

inline void validate(const Lts& l) {
  if (l.labels.empty()) throw validation_error("lts: empty alphabet");
  if (l.succ_table.size() != l.size() * l.labels.size())
    throw validation_error("lts: table sizes do not match the state count");
  if (l.tau && *l.tau >= l.labels.size())
    throw validation_error("lts: tau designates an unknown label");
  for (const auto& set : l.succ_table) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] >= l.size()) throw validation_error("lts: successor is an unknown state");
      if (i > 0 && set[i] <= set[i - 1])
        throw validation_error("lts: successor sets must be sorted and deduplicated");
    }
  }
}

}  // namespace copred
