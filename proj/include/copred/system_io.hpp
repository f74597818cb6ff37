#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "copred/system.hpp"

namespace copred {

// Text format, one system per document:
//
//   kind: dfa                    kind: lts
//   labels: a b                  labels: t a
//   states: q0 q1                tau: t
//   q0: 0; a -> q1; b -> q0      states: s0 s1
//   q1: 1; a -> q1; b -> q1      s0: t -> {s0, s1}
//                                s1: a -> {}
//
// '#' starts a comment; blank lines are ignored.  DFA rows list the output
// bit first and must cover every label; LTS rows may omit labels (empty
// successor set).

namespace sysio_detail {

struct Line {
  std::string text;
  std::size_t number;
};

inline std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line(text.substr(pos, end - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    line.erase(0, start);
    if (!line.empty()) out.push_back({line, line_no});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// "key: rest" split; returns false when the line has no colon.
inline bool key_value(const std::string& line, std::string& key, std::string& rest) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  key = line.substr(0, colon);
  while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
  rest = line.substr(colon + 1);
  std::size_t start = 0;
  while (start < rest.size() && std::isspace(static_cast<unsigned char>(rest[start]))) ++start;
  rest.erase(0, start);
  return true;
}

class IndexTable {
 public:
  explicit IndexTable(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) index_[names[i]] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t lookup(const std::string& name, const char* what, std::size_t line) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw parse_error(std::string(what) + " '" + name + "' was not declared", line, 1);
    return it->second;
  }
  bool unique() const { return true; }

 private:
  std::map<std::string, std::uint32_t> index_;
};

inline void require_unique(const std::vector<std::string>& names, const char* what) {
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw validation_error(std::string(what) + " declared twice");
}

// One "label -> target" arrow; target is either a bare state (DFA) or a
// brace-enclosed set (LTS).
struct Arrow {
  std::string label;
  std::vector<std::string> targets;
  bool braced;
};

inline Arrow parse_arrow(const std::string& field, std::size_t line) {
  auto arrow = field.find("->");
  if (arrow == std::string::npos)
    throw parse_error("expected 'label -> target' in '" + field + "'", line, 1);
  Arrow out;
  auto names = split_names(field.substr(0, arrow));
  if (names.size() != 1)
    throw parse_error("expected a single label before '->'", line, 1);
  out.label = names[0];
  std::string rhs = field.substr(arrow + 2);
  auto lbrace = rhs.find('{');
  if (lbrace != std::string::npos) {
    auto rbrace = rhs.find('}');
    if (rbrace == std::string::npos || rbrace < lbrace)
      throw parse_error("unbalanced braces in successor set", line, 1);
    out.braced = true;
    out.targets = split_names(rhs.substr(lbrace + 1, rbrace - lbrace - 1));
  } else {
    out.braced = false;
    out.targets = split_names(rhs);
    if (out.targets.size() != 1)
      throw parse_error("expected a single target state after '->'", line, 1);
  }
  return out;
}

inline std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      out.push_back(cur), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  std::erase_if(out, [](const std::string& f) {
    return std::all_of(f.begin(), f.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
  });
  return out;
}

}  // namespace sysio_detail

inline System load_system(std::string_view text) {
  using namespace sysio_detail;
  auto lines = significant_lines(text);
  std::size_t at = 0;
  auto next_line = [&]() -> const Line& {
    if (at >= lines.size()) throw parse_error("unexpected end of input", lines.empty() ? 1 : lines.back().number, 1);
    return lines[at++];
  };

  std::string key, rest;
  const Line& kind_line = next_line();
  if (!key_value(kind_line.text, key, rest) || key != "kind")
    throw parse_error("expected 'kind: dfa' or 'kind: lts'", kind_line.number, 1);
  const std::string kind = rest;
  if (kind != "dfa" && kind != "lts")
    throw parse_error("unknown kind '" + kind + "'", kind_line.number, 1);

  const Line& labels_line = next_line();
  if (!key_value(labels_line.text, key, rest) || key != "labels")
    throw parse_error("expected 'labels: ...'", labels_line.number, 1);
  std::vector<std::string> labels = split_names(rest);
  if (labels.empty()) throw validation_error("empty alphabet");
  require_unique(labels, "label");
  IndexTable label_index(labels);

  // Accept both "tau: t" and "tau = t".
  std::optional<std::uint32_t> tau;
  if (at < lines.size()) {
    std::string line = lines[at].text;
    auto eq = line.find('=');
    if (eq != std::string::npos && line.find(':') == std::string::npos) line[eq] = ':';
    if (key_value(line, key, rest) && key == "tau") {
      auto names = split_names(rest);
      if (names.size() != 1) throw parse_error("expected a single tau label", lines[at].number, 1);
      tau = label_index.lookup(names[0], "label", lines[at].number);
      ++at;
    }
  }
  if (tau && kind == "dfa") throw validation_error("dfa: tau has no meaning here");

  const Line& states_line = next_line();
  if (!key_value(states_line.text, key, rest) || key != "states")
    throw parse_error("expected 'states: ...'", states_line.number, 1);
  std::vector<std::string> states = split_names(rest);
  if (states.empty()) throw validation_error("no states declared");
  require_unique(states, "state");
  IndexTable state_index(states);

  const std::size_t n = states.size();
  const std::size_t na = labels.size();

  if (kind == "dfa") {
    Dfa d;
    d.state_names = states;
    d.labels = labels;
    d.output.assign(n, 0);
    d.next_table.assign(n * na, 0);
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(na, false));
    std::vector<bool> seen_state(n, false);
    while (at < lines.size()) {
      const Line& row = lines[at++];
      if (!key_value(row.text, key, rest))
        throw parse_error("expected 'state: output; label -> state; ...'", row.number, 1);
      std::uint32_t x = state_index.lookup(key, "state", row.number);
      if (seen_state[x]) throw parse_error("state '" + key + "' defined twice", row.number, 1);
      seen_state[x] = true;
      auto fields = split_fields(rest);
      if (fields.empty()) throw parse_error("missing output bit", row.number, 1);
      auto bit = split_names(fields[0]);
      if (bit.size() != 1 || (bit[0] != "0" && bit[0] != "1"))
        throw parse_error("output must be 0 or 1", row.number, 1);
      d.output[x] = bit[0] == "1" ? 1 : 0;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        Arrow arrow = parse_arrow(fields[i], row.number);
        std::uint32_t a = label_index.lookup(arrow.label, "label", row.number);
        if (seen[x][a])
          throw parse_error("label '" + arrow.label + "' listed twice for this state",
                            row.number, 1);
        seen[x][a] = true;
        d.next_table[x * na + a] = state_index.lookup(arrow.targets[0], "state", row.number);
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (!seen_state[x]) throw validation_error("state '" + states[x] + "' has no row");
      for (std::size_t a = 0; a < na; ++a)
        if (!seen[x][a])
          throw validation_error("state '" + states[x] + "' misses label '" + labels[a] + "'");
    }
    validate(d);
    return d;
  }

  Lts l;
  l.state_names = states;
  l.labels = labels;
  l.tau = tau;
  l.succ_table.assign(n * na, {});
  std::vector<bool> seen_state(n, false);
  while (at < lines.size()) {
    const Line& row = lines[at++];
    if (!key_value(row.text, key, rest))
      throw parse_error("expected 'state: label -> {states}; ...'", row.number, 1);
    std::uint32_t x = state_index.lookup(key, "state", row.number);
    if (seen_state[x]) throw parse_error("state '" + key + "' defined twice", row.number, 1);
    seen_state[x] = true;
    for (const auto& field : split_fields(rest)) {
      Arrow arrow = parse_arrow(field, row.number);
      if (!arrow.braced)
        throw parse_error("lts successors must be a brace-enclosed set", row.number, 1);
      std::uint32_t a = label_index.lookup(arrow.label, "label", row.number);
      auto& set = l.succ_table[x * na + a];
      for (const auto& t : arrow.targets)
        set.push_back(state_index.lookup(t, "state", row.number));
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
    }
  }
  // States without a row simply have no transitions.
  validate(l);
  return l;
}

inline std::string to_text(const Dfa& d) {
  std::ostringstream out;
  out << "kind: dfa\nlabels:";
  for (const auto& a : d.labels) out << ' ' << a;
  out << "\nstates:";
  for (const auto& s : d.state_names) out << ' ' << s;
  out << '\n';
  for (std::size_t x = 0; x < d.size(); ++x) {
    out << d.state_names[x] << ": " << int(d.output[x]);
    for (std::size_t a = 0; a < d.alphabet_size(); ++a)
      out << "; " << d.labels[a] << " -> " << d.state_names[d.next(x, a)];
    out << '\n';
  }
  return out.str();
}

inline std::string to_text(const Lts& l) {
  std::ostringstream out;
  out << "kind: lts\nlabels:";
  for (const auto& a : l.labels) out << ' ' << a;
  out << '\n';
  if (l.tau) out << "tau: " << l.labels[*l.tau] << '\n';
  out << "states:";
  for (const auto& s : l.state_names) out << ' ' << s;
  out << '\n';
  for (std::size_t x = 0; x < l.size(); ++x) {
    out << l.state_names[x] << ":";
    bool first = true;
    for (std::size_t a = 0; a < l.alphabet_size(); ++a) {
      const auto& set = l.succ(x, a);
      if (set.empty()) continue;
      out << (first ? " " : "; ") << l.labels[a] << " -> {";
      for (std::size_t i = 0; i < set.size(); ++i)
        out << (i ? ", " : "") << l.state_names[set[i]];
      out << '}';
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace copred
