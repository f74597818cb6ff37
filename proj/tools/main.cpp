#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "copred/checker.hpp"
#include "copred/laws.hpp"
#include "copred/random.hpp"
#include "copred/stage_check.hpp"
#include "copred/system_io.hpp"

using namespace copred;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitVerdict = 3;

struct Output {
  bool structured = false;
  json doc;
  std::ostringstream text;

  void line(const std::string& s) { text << s << '\n'; }
  void emit() {
    if (structured)
      std::cout << doc.dump(2) << '\n';
    else
      std::cout << text.str();
  }
};

std::optional<std::pair<long long, long long>> parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::nullopt;
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den <= 0 || num <= 0 || num >= den) return std::nullopt;
    return std::make_pair(num, den);
  } catch (...) {
    return std::nullopt;
  }
}

std::string render_level(Level v, const std::optional<std::pair<long long, long long>>& c) {
  std::string out = DiscountLevel::render(v);
  if (c) {
    long double value = v.is_inf() ? 0.0L
                                   : std::pow(static_cast<long double>(c->first) /
                                                  static_cast<long double>(c->second),
                                              static_cast<long double>(v.exponent()));
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6Lf", value);
    out += "=" + std::string(buf);
  }
  return out;
}

System load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw validation_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_system(buf.str());
}

const std::vector<std::string>& names_of(const System& system) {
  if (const Dfa* d = std::get_if<Dfa>(&system)) return d->state_names;
  return std::get<Lts>(system).state_names;
}

template <ValueLattice L>
void print_fibre(Output& out, const Fibre<L>& f, const std::vector<std::string>& names,
                 const std::optional<std::pair<long long, long long>>& c, const std::string& key) {
  auto render = [&](typename L::value_type v) {
    if constexpr (std::is_same_v<L, DiscountLevel>)
      return render_level(v, c);
    else
      return L::render(v);
  };
  if (out.structured) {
    json rows = json::array();
    for (std::size_t x = 0; x < f.carrier(); ++x) {
      if (f.kind() == FibreKind::relation) {
        json row = json::object();
        for (std::size_t y = 0; y < f.carrier(); ++y) row[names[y]] = render(f.at(x, y));
        rows.push_back(json{{"state", names[x]}, {"row", row}});
      } else {
        rows.push_back(json{{"state", names[x]}, {"value", render(f.at(x))}});
      }
    }
    out.doc[key] = rows;
    return;
  }
  std::size_t width = 1;
  for (const auto& n : names) width = std::max(width, n.size());
  if (f.kind() == FibreKind::predicate) {
    for (std::size_t x = 0; x < f.carrier(); ++x)
      out.line("  " + names[x] + std::string(width - names[x].size() + 1, ' ') +
               render(f.at(x)));
    return;
  }
  std::size_t cell = width;
  for (std::size_t x = 0; x < f.carrier(); ++x)
    for (std::size_t y = 0; y < f.carrier(); ++y)
      cell = std::max(cell, render(f.at(x, y)).size());
  std::string header(width + 3, ' ');
  for (const auto& n : names) header += n + std::string(cell - n.size() + 1, ' ');
  out.line(header);
  for (std::size_t x = 0; x < f.carrier(); ++x) {
    std::string row = "  " + names[x] + std::string(width - names[x].size() + 1, ' ');
    for (std::size_t y = 0; y < f.carrier(); ++y) {
      std::string v = render(f.at(x, y));
      row += v + std::string(cell - v.size() + 1, ' ');
    }
    out.line(row);
  }
}

void print_witness(Output& out, const std::string& role, const Witness& w,
                   const std::vector<std::string>& names) {
  std::string where = w.is_pair ? "(" + names[w.x] + ", " + names[w.y] + ")" : names[w.x];
  std::string text = role + " fails at " + where;
  if (!w.formula.empty()) text += ", distinguishing formula: " + w.formula;
  if (w.separation_stage)
    text += ", separates at approximant stage " + std::to_string(w.separation_stage);
  if (!w.detail.empty()) text += " [" + w.detail + "]";
  out.line("  " + text);
  if (out.structured)
    out.doc["witnesses"].push_back(json{{"role", role},
                                        {"x", names[w.x]},
                                        {"y", w.is_pair ? names[w.y] : names[w.x]},
                                        {"formula", w.formula},
                                        {"separation_stage", w.separation_stage},
                                        {"detail", w.detail}});
}

// ---------------------------------------------------------------------------

int cmd_compute(const std::string& path, const std::string& lifting, std::size_t depth,
                bool trace, Output& out,
                const std::optional<std::pair<long long, long long>>& c) {
  System system = load_file(path);
  out.doc["command"] = "compute";
  out.doc["lifting"] = lifting;
  const auto& names = names_of(system);

  auto finish = [&](auto&& fix) {
    out.line("stabilized after " + std::to_string(fix.steps) + " steps");
    out.doc["steps"] = fix.steps;
    if (trace)
      for (std::size_t i = 0; i < fix.trace.size(); ++i) {
        out.line("approximant " + std::to_string(i) + ":");
        print_fibre(out, fix.trace[i], names, c, "approximant_" + std::to_string(i));
      }
    print_fibre(out, fix.value, names, c, "value");
  };

  GfpOptions opts;
  if (depth) opts.max_steps = depth;
  if (lifting == "sdw") {
    const Dfa* d = std::get_if<Dfa>(&system);
    if (!d) throw unsupported_error("sdw needs a dfa");
    finish(gfp(sdw_step(*d), LevelFibre::top(d->size(), FibreKind::relation), opts));
  } else if (lifting == "simulation" || lifting == "canonical") {
    const Lts* l = std::get_if<Lts>(&system);
    if (!l) throw unsupported_error(lifting + " needs an lts");
    auto step = lifting == "simulation" ? simulation_step(*l) : canonical_step(*l);
    finish(gfp(step, BoolFibre::top(l->size(), FibreKind::relation), opts));
  } else if (lifting == "divergence") {
    const Lts* l = std::get_if<Lts>(&system);
    if (!l) throw unsupported_error("divergence needs an lts");
    finish(gfp(divergence_step(*l), BoolFibre::top(l->size(), FibreKind::predicate), opts));
  } else {
    throw unsupported_error("unknown lifting '" + lifting + "'");
  }
  return kExitOk;
}

PipelineId pipeline_of(const std::string& name) {
  if (name == "sdw") return PipelineId::sdw;
  if (name == "divergence") return PipelineId::divergence;
  if (name == "similarity") return PipelineId::similarity;
  if (name == "bisimilarity" || name == "equality") return PipelineId::bisimilarity;
  throw unsupported_error("unknown pipeline '" + name + "'");
}

void print_stage_view(Output& out, const std::string& name, const StageView& view) {
  if (!view.ran) {
    out.line("  " + name + ": skipped (" + view.skip_reason + ")");
    out.doc[name] = json{{"skipped", view.skip_reason}};
    return;
  }
  auto dir = [&](const DirectionReport& d, const std::string& label) {
    std::string s = "    " + label + ": " + (d.holds ? "holds" : "FAILS");
    if (!d.holds) s += " (" + d.witness + ")";
    out.line(s);
  };
  out.line("  " + name + " (carrier " + std::to_string(view.carrier) + "):");
  dir(view.delta_below_lifting, "delta side below lifting side");
  dir(view.lifting_below_delta, "lifting side below delta side");
  out.doc[name] = json{{"carrier", view.carrier},
                       {"delta_below_lifting", view.delta_below_lifting.holds},
                       {"lifting_below_delta", view.lifting_below_delta.holds},
                       {"witness_delta_below", view.delta_below_lifting.witness},
                       {"witness_lifting_below", view.lifting_below_delta.witness}};
}

int cmd_check_stage(const std::string& pipeline, std::size_t stage, std::size_t alphabet,
                    Output& out) {
  out.doc["command"] = "check-stage";
  out.doc["pipeline"] = pipeline;
  out.doc["stage"] = stage;
  StageReport report = check_one_step_stage(pipeline_of(pipeline), alphabet, stage);
  out.line("one-step stage conditions, pipeline " + pipeline + ", stage " +
           std::to_string(stage) + ", alphabet " + std::to_string(alphabet));
  print_stage_view(out, "final-sequence view", report.sequence);
  print_stage_view(out, "component view", report.component);

  bool ok = true;
  switch (report.pipeline) {
    case PipelineId::sdw:
    case PipelineId::similarity:
      ok = report.sequence.ran && report.sequence.delta_below_lifting.holds &&
           report.sequence.lifting_below_delta.holds &&
           (!report.component.ran || (report.component.delta_below_lifting.holds &&
                                      report.component.lifting_below_delta.holds));
      break;
    case PipelineId::divergence:
      // The tau-tower formulas trail the trees by one unfolding, so only
      // the component condition is required two-sided (at stages >= 1).
      ok = report.sequence.ran && report.sequence.lifting_below_delta.holds &&
           (!report.component.ran || stage == 0 ||
            (report.component.delta_below_lifting.holds &&
             report.component.lifting_below_delta.holds));
      break;
    case PipelineId::bisimilarity:
      ok = true;  // informational: the semilattice logic has no injective delta
      break;
  }
  out.doc["ok"] = ok;
  out.line(ok ? "stage conditions hold" : "stage conditions FAIL");
  return ok ? kExitOk : kExitVerdict;
}

int cmd_check(const std::string& path, const std::string& pipeline, std::size_t depth,
              bool use_gfp, Output& out) {
  System system = load_file(path);
  out.doc["command"] = "check";
  out.doc["pipeline"] = pipeline;
  const auto& names = names_of(system);
  std::size_t n = names.size();
  std::size_t k = depth ? depth : n * n + 1;

  Verdict v = check(system, pipeline_of(pipeline), k, use_gfp);
  out.doc["depth"] = k;
  out.doc["adequacy"] = v.adequacy_holds;
  out.doc["expressiveness"] = v.expressiveness_holds;
  out.doc["stabilized"] = v.stabilized;
  out.doc["stabilization_steps"] = v.stabilization_steps;
  out.doc["witnesses"] = json::array();

  out.line("pipeline " + pipeline + " at depth " + std::to_string(k) + ":");
  out.line("  adequacy: " + std::string(v.adequacy_holds ? "holds" : "FAILS"));
  out.line("  expressiveness: " + std::string(v.expressiveness_holds ? "holds" : "FAILS"));
  out.line("  gfp stabilized after " + std::to_string(v.stabilization_steps) + " steps" +
           (v.stabilized ? "" : " — depth is below stabilization, verdict is depth-bounded"));
  if (v.gfp_requested_but_unstable)
    out.line("  note: exact gfp requested but depth " + std::to_string(k) +
             " is below stabilization");
  if (v.adequacy_witness) print_witness(out, "adequacy", *v.adequacy_witness, names);
  if (v.expressiveness_witness)
    print_witness(out, "expressiveness", *v.expressiveness_witness, names);
  bool ok = v.adequacy_holds && v.expressiveness_holds;
  if (ok && v.stabilized)
    out.line("  verdict: the logic characterizes the predicate on this system (depth " +
             std::to_string(k) + ", stabilized)");
  return ok ? kExitOk : kExitVerdict;
}

int cmd_laws(std::size_t max_carrier, std::size_t alphabet, Output& out) {
  out.doc["command"] = "laws";
  out.doc["laws"] = json::array();
  bool required_ok = true;

  auto law_line = [&](const std::string& name, const LawReport& r, bool required) {
    std::string s = name + ": " + (r.ok ? "pass" : "FAIL") + " (" +
                    std::to_string(r.instances) + " instances)";
    if (!r.ok) s += " counterexample: " + r.counterexample;
    out.line("  " + s);
    out.doc["laws"].push_back(json{{"name", name},
                                   {"ok", r.ok},
                                   {"instances", r.instances},
                                   {"counterexample", r.counterexample}});
    if (required) required_ok &= r.ok;
  };

  out.line("lax-extension clauses, canonical lifting (carriers <= " +
           std::to_string(max_carrier) + ", alphabet " + std::to_string(alphabet) + "):");
  LaxReport lax = check_lax_extension(het_canonical, max_carrier, alphabet);
  law_line("converse", lax.converse, true);
  law_line("monotonicity", lax.monotonicity, true);
  law_line("lax composition", lax.composition, true);
  law_line("graphs and diagonals", lax.graphs, true);

  out.line("lax-extension clauses, simulation lifting (directional):");
  LaxReport sim_lax = check_lax_extension(het_simulation, std::min<std::size_t>(max_carrier, 2),
                                          std::min<std::size_t>(alphabet, 1));
  law_line("converse (expected to fail)", sim_lax.converse, false);
  if (sim_lax.converse.ok) {
    out.line("  unexpected: the simulation converse clause held");
    required_ok = false;
  }

  out.line("fibration-map equation:");
  law_line("simulation lifting",
           check_fibration_map_lts(
               [](const BoolFibre& r, const std::vector<LtsBox>& b) { return raw_simulation(r, b); },
               FibreKind::relation, max_carrier, alphabet),
           true);
  law_line("canonical lifting",
           check_fibration_map_lts(
               [](const BoolFibre& r, const std::vector<LtsBox>& b) { return raw_canonical(r, b); },
               FibreKind::relation, max_carrier, alphabet),
           true);
  law_line("divergence lifting",
           check_fibration_map_lts(
               [](const BoolFibre& g, const std::vector<LtsBox>& b) { return raw_divergence(g, b, 0); },
               FibreKind::predicate, max_carrier, alphabet),
           true);
  law_line("sdw lifting",
           check_fibration_map_sdw(
               [](const LevelFibre& d, const std::vector<DfaBox>& b) { return raw_sdw(d, b); },
               max_carrier, alphabet),
           true);

  out.doc["ok"] = required_ok;
  out.line(required_ok ? "all required laws hold" : "law checks FAILED");
  return required_ok ? kExitOk : kExitVerdict;
}

int cmd_fuzz(std::uint64_t seed, std::size_t count, std::size_t max_states,
             std::size_t max_labels, Output& out) {
  out.doc["command"] = "fuzz";
  out.doc["seed"] = seed;
  std::mt19937_64 rng(seed);
  std::size_t checks = 0;

  auto fail_lts = [&](const Lts& l, std::size_t it, const std::string& what, auto&& failing) {
    Lts small = shrink_lts(l, failing);
    out.line("FAIL after " + std::to_string(it) + " transition systems: " + what);
    out.line("shrunken witness:");
    out.line(to_text(small));
    out.doc["failure"] =
        json{{"instance", it}, {"property", what}, {"witness", to_text(small)}};
    out.doc["ok"] = false;
  };

  for (std::size_t it = 0; it < count; ++it) {
    Lts l = random_lts(rng, max_states, max_labels, true);
    std::size_t k = l.size() * l.size() + 1;

    auto sim = gfp(simulation_step(l), BoolFibre::top(l.size(), FibreKind::relation)).value;
    if (sim != simulation_oracle(l)) {
      fail_lts(l, it, "simulation gfp vs worklist oracle", [](const Lts& s) {
        return gfp(simulation_step(s), BoolFibre::top(s.size(), FibreKind::relation)).value !=
               simulation_oracle(s);
      });
      return kExitVerdict;
    }
    auto div = gfp(divergence_step(l), BoolFibre::top(l.size(), FibreKind::predicate)).value;
    if (div != tau_divergence_oracle(l)) {
      fail_lts(l, it, "divergence gfp vs cycle-detection oracle", [](const Lts& s) {
        return !s.tau ||
               gfp(divergence_step(s), BoolFibre::top(s.size(), FibreKind::predicate)).value !=
                   tau_divergence_oracle(s);
      });
      return kExitVerdict;
    }
    auto can = gfp(canonical_step(l), BoolFibre::top(l.size(), FibreKind::relation)).value;
    if (can != bisimilarity_oracle(l)) {
      fail_lts(l, it, "canonical gfp vs partition refinement", [](const Lts& s) {
        return gfp(canonical_step(s), BoolFibre::top(s.size(), FibreKind::relation)).value !=
               bisimilarity_oracle(s);
      });
      return kExitVerdict;
    }
    if (comparison_inclusion(l, k) != sim) {
      fail_lts(l, it, "theory inclusion vs similarity gfp", [](const Lts& s) {
        return comparison_inclusion(s, s.size() * s.size() + 1) !=
               gfp(simulation_step(s), BoolFibre::top(s.size(), FibreKind::relation)).value;
      });
      return kExitVerdict;
    }
    if (comparison_totality(l, k) != div) {
      fail_lts(l, it, "tau-tower totality vs divergence gfp", [](const Lts& s) {
        return !s.tau ||
               comparison_totality(s, s.size() * s.size() + 1) !=
                   gfp(divergence_step(s), BoolFibre::top(s.size(), FibreKind::predicate)).value;
      });
      return kExitVerdict;
    }
    if (!fibre_leq(can, comparison_equality_hm(l, k))) {
      fail_lts(l, it, "bisimilarity inside logical equivalence", [](const Lts& s) {
        return !fibre_leq(
            gfp(canonical_step(s), BoolFibre::top(s.size(), FibreKind::relation)).value,
            comparison_equality_hm(s, s.size() * s.size() + 1));
      });
      return kExitVerdict;
    }
    checks += 6;

    Dfa d = random_dfa(rng, max_states + 2, max_labels);
    std::size_t kd = d.size() * d.size() + 1;
    auto sdw = gfp(sdw_step(d), LevelFibre::top(d.size(), FibreKind::relation)).value;
    bool sdw_ok = comparison_sup_distance(d, kd) == sdw;
    for (std::uint32_t x = 0; sdw_ok && x < d.size(); ++x)
      for (std::uint32_t y = 0; sdw_ok && y < d.size(); ++y)
        sdw_ok = sdw.at(x, y) == product_reachability(d, x, y);
    if (!sdw_ok) {
      Dfa small = shrink_dfa(d, [](const Dfa& s) {
        auto fix = gfp(sdw_step(s), LevelFibre::top(s.size(), FibreKind::relation)).value;
        if (comparison_sup_distance(s, s.size() * s.size() + 1) != fix) return true;
        for (std::uint32_t x = 0; x < s.size(); ++x)
          for (std::uint32_t y = 0; y < s.size(); ++y)
            if (fix.at(x, y) != product_reachability(s, x, y)) return true;
        return false;
      });
      out.line("FAIL after " + std::to_string(it) + " automata: sdw gfp vs product BFS");
      out.line("shrunken witness:");
      out.line(to_text(small));
      out.doc["failure"] = json{{"instance", it},
                                {"property", "sdw gfp vs product BFS"},
                                {"witness", to_text(small)}};
      out.doc["ok"] = false;
      return kExitVerdict;
    }
    checks += 2;
  }

  out.line("fuzz campaign passed: " + std::to_string(count) + " systems per kind, " +
           std::to_string(checks) + " checks, seed " + std::to_string(seed));
  out.doc["instances"] = count;
  out.doc["checks"] = checks;
  out.doc["ok"] = true;
  return kExitOk;
}

int cmd_enumerate(const std::string& what, const std::string& logic, const std::string& kind,
                  std::size_t depth, std::size_t alphabet, Output& out) {
  out.doc["command"] = "enumerate";
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < alphabet; ++a)
    labels.push_back(logic == "tau" && a == 0 ? "tau"
                                              : std::string(1, static_cast<char>('a' + a)));

  if (what == "formulas") {
    json items = json::array();
    auto add = [&](const std::string& s) {
      out.line(s);
      items.push_back(s);
    };
    if (logic == "words") {
      for (const auto& w : enumerate_words(alphabet, depth)) {
        std::string s;
        for (auto a : w.letters) s += labels[a];
        add(s.empty() ? "<empty word>" : s);
      }
    } else if (logic == "tau") {
      for (const auto& t : enumerate_tau(depth)) add("<tau>^" + std::to_string(t.depth) + " T");
    } else if (logic == "hm") {
      for (const auto& f : enumerate_hm(alphabet, depth)) add(f.render(labels));
    } else {
      throw unsupported_error("unknown logic '" + logic + "'");
    }
    out.doc["formulas"] = items;
    return kExitOk;
  }

  if (what != "stages") throw unsupported_error("enumerate needs 'formulas' or 'stages'");
  json stages = json::array();
  auto print_stages = [&](auto& st) {
    st.materialize_full(depth);
    for (std::size_t s = 0; s <= depth; ++s) {
      out.line("stage " + std::to_string(s) + ": " + std::to_string(st.stage_size(s)) +
               " trees");
      json nodes = json::array();
      for (std::uint32_t i = 0; i < st.stage_size(s); ++i) {
        std::string r = s == 0 ? "*" : st.render(s, i);
        out.line("  " + std::to_string(i) + " = " + r);
        nodes.push_back(r);
      }
      stages.push_back(json{{"stage", s}, {"size", st.stage_size(s)}, {"trees", nodes}});
    }
  };
  if (kind == "dfa") {
    DfaStages st(alphabet);
    print_stages(st);
  } else if (kind == "lts") {
    LtsStages st(alphabet);
    print_stages(st);
  } else {
    throw unsupported_error("unknown kind '" + kind + "'");
  }
  out.doc["stages"] = stages;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coinductive predicates, modal logics, and their comparison on finite systems"};
  app.require_subcommand(1);

  std::string format = "table";
  std::string file, lifting = "simulation", pipeline = "similarity";
  std::string logic = "hm", kind = "lts", what = "formulas", c_text;
  std::size_t depth = 0, stage = 0, alphabet = 1, max_carrier = 3;
  std::size_t count = 200, max_states = 6, max_labels = 2;
  std::uint64_t seed = 42;
  bool trace = false, use_gfp = false;

  auto* compute =
      app.add_subcommand("compute", "compute a coinductive predicate by gfp iteration");
  compute->add_option("file", file, "system file")->required();
  compute->add_option("--lifting", lifting, "sdw | simulation | canonical | divergence");
  compute->add_option("--depth,-k", depth, "iteration bound (default: theoretical)");
  compute->add_flag("--trace", trace, "print every approximant");
  compute->add_option("--c", c_text, "render levels numerically for this rational discount");
  compute->add_option("--format", format, "table | structured")
      ->check(CLI::IsMember({"table", "structured"}));

  auto* check_cmd = app.add_subcommand("check", "adequacy/expressiveness checks");
  check_cmd->add_option("file", file, "system file");
  check_cmd->add_option("--pipeline", pipeline, "sdw | divergence | similarity | bisimilarity");
  check_cmd->add_option("--depth,-k", depth, "comparison depth (default |X|^2+1)");
  check_cmd->add_flag("--use-gfp", use_gfp, "compare against the exact gfp");
  auto* stage_opt =
      check_cmd->add_option("--stage", stage, "run the one-step stage conditions at this stage");
  check_cmd->add_option("--alphabet", alphabet, "alphabet size for stage checks");
  check_cmd->add_option("--format", format, "table | structured")
      ->check(CLI::IsMember({"table", "structured"}));

  auto* laws_cmd = app.add_subcommand("laws", "lax-extension and fibration-map checks");
  laws_cmd->add_option("--max-carrier", max_carrier, "carrier bound (default 3)");
  laws_cmd->add_option("--alphabet", alphabet, "alphabet size (default 1)");
  laws_cmd->add_option("--format", format, "table | structured")
      ->check(CLI::IsMember({"table", "structured"}));

  auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized oracle-equivalence campaign");
  fuzz_cmd->add_option("--seed", seed, "rng seed (default 42)");
  fuzz_cmd->add_option("--count", count, "instances per kind (default 200)");
  fuzz_cmd->add_option("--max-states", max_states, "state bound (default 6)");
  fuzz_cmd->add_option("--max-labels", max_labels, "label bound (default 2)");
  fuzz_cmd->add_option("--format", format, "table | structured")
      ->check(CLI::IsMember({"table", "structured"}));

  auto* enum_cmd = app.add_subcommand("enumerate", "formula stages or final-sequence stages");
  enum_cmd->add_option("what", what, "formulas | stages")->required();
  enum_cmd->add_option("--logic", logic, "words | tau | hm");
  enum_cmd->add_option("--kind", kind, "dfa | lts");
  enum_cmd->add_option("--depth,-k,--stage", depth, "depth / stage index");
  enum_cmd->add_option("--alphabet", alphabet, "alphabet size (default 1)");
  enum_cmd->add_option("--format", format, "table | structured")
      ->check(CLI::IsMember({"table", "structured"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  Output out;
  out.structured = format == "structured";
  try {
    int code = kExitOk;
    std::optional<std::pair<long long, long long>> c;
    if (!c_text.empty()) {
      c = parse_rational(c_text);
      if (!c) throw unsupported_error("--c needs a rational in (0,1), like 1/2");
    }
    if (compute->parsed()) code = cmd_compute(file, lifting, depth, trace, out, c);
    if (check_cmd->parsed()) {
      if (stage_opt->count() > 0) {
        code = cmd_check_stage(pipeline, stage, alphabet, out);
      } else {
        if (file.empty()) throw unsupported_error("check needs a system file (or --stage)");
        code = cmd_check(file, pipeline, depth, use_gfp, out);
      }
    }
    if (laws_cmd->parsed()) code = cmd_laws(max_carrier, alphabet, out);
    if (fuzz_cmd->parsed()) code = cmd_fuzz(seed, count, max_states, max_labels, out);
    if (enum_cmd->parsed()) code = cmd_enumerate(what, logic, kind, depth, alphabet, out);
    out.doc["exit"] = code;
    out.emit();
    return code;
  } catch (const unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const stage_cap_error& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
