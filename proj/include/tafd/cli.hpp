#pragma once

// Command-line front end: argument parsing, report aggregation and serialization.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tafd/characters.hpp"
#include "tafd/curve.hpp"
#include "tafd/forms.hpp"
#include "tafd/hilbert.hpp"
#include "tafd/hyperbolic.hpp"
#include "tafd/quaternion.hpp"
#include "tafd/specseq.hpp"

namespace tafd::cli {

using nlohmann::ordered_json;

enum ExitCode { ok = 0, claim_failed = 1, usage = 2 };

struct RunConfig {
  std::string command;  // "verify", "intersections", "characters", "forms", "cohomology", "ss"
  std::string target;   // verify target, "basis", "run" or "chart"
  SSWindow window{-16, 64, 40};
  std::string variant = "plain";
  std::string format = "ascii";
  std::string action = "deck";
  int digits = 30;
  int s = 0;
  int t = 0;
  bool json = false;
  std::string out;
};

struct RunResult {
  int code = ok;
  std::string output;  // stdout payload, or empty when written to --out
  std::string error;   // usage and error messages
};

inline ordered_json to_json(const Report& r) {
  ordered_json claims = ordered_json::array();
  for (const auto& c : r.claims())
    claims.push_back({{"id", c.name}, {"anchor", c.anchor}, {"status", c.status()}, {"detail", c.detail}});
  return {{"title", r.title()},
          {"passed", r.all_passed()},
          {"failures", r.failures()},
          {"inconclusive", r.inconclusive()},
          {"claims", claims}};
}

inline ordered_json to_json(const SSClassRecord& c) {
  ordered_json j{{"s", c.s},
                 {"t", c.t},
                 {"monomial", (c.coefficient == 2 ? "2 " : "") + c.monomial()},
                 {"order", c.order()}};
  if (c.coefficient != 1) j["coefficient"] = c.coefficient;
  if (c.inconclusive) j["inconclusive"] = true;
  return j;
}

/// One object per stem: {"stem": n, "classes": [...]}.
inline ordered_json to_json(const ChartReport& chart) {
  ordered_json out = ordered_json::array();
  for (const auto& st : chart.stems) {
    ordered_json classes = ordered_json::array();
    for (const auto& c : st.classes) classes.push_back(to_json(c));
    out.push_back({{"stem", st.stem}, {"classes", classes}});
  }
  return out;
}

inline ordered_json to_json(const std::vector<IntersectionTable>& tables) {
  ordered_json out = ordered_json::array();
  for (const auto& t : tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json places = ordered_json::array();
      for (const auto& p : r.places) places.push_back(p.str());
      rows.push_back({{"m", r.m}, {"delta", r.delta.str()}, {"places", places}});
    }
    out.push_back({{"x", t.x_label},
                   {"y", t.y_label},
                   {"rows", rows},
                   {"verdict", t.verdict ? ordered_json(t.verdict->str()) : ordered_json("no intersection")}});
  }
  return out;
}

inline std::string intersections_text(const std::vector<IntersectionTable>& tables) {
  std::ostringstream os;
  for (const auto& t : tables) {
    os << t.x_label << " x " << t.y_label << "\n";
    for (const auto& r : t.rows) {
      std::string m;
      for (int v : r.m) m += (m.empty() ? "" : ", ") + std::to_string(v);
      os << "  m = " << m << "  Delta = " << r.delta.str() << "  places " << to_string(r.places) << "\n";
    }
    os << "  verdict: " << (t.verdict ? "may meet at " + t.verdict->str() : std::string("no intersection")) << "\n";
  }
  return os.str();
}

inline Report intersections_report(const std::vector<IntersectionTable>& tables) {
  Report r("intersections");
  for (const auto& t : tables) {
    bool agree = true;
    for (const auto& row : t.rows) agree = agree && row.symbols_agree;
    r.add(t.x_label + " x " + t.y_label + " symbols", "(Delta, d_x)_q = (Delta, d_y)_q", agree);
    r.add(t.x_label + " x " + t.y_label, "no row ramified at {p, inf, 3, 5}", !t.verdict,
          t.verdict ? "p = " + t.verdict->str() : "no intersection");
  }
  return r;
}

inline Report verify_target(const std::string& target, int digits) {
  if (target == "domain") return verify_domain(digits);
  if (target == "presentation") return verify_presentation();
  if (target == "identities") return verify_order_identities();
  if (target == "cm-table") return verify_cm_table();
  if (target == "units") return verify_unit_distinctness();
  if (target == "one-form") return verify_one_form();
  if (target == "f-derivation") return verify_f_derivation();
  throw std::invalid_argument("unknown verify target " + target);
}

inline Variant ss_variant(const std::string& v) {
  if (v == "plain") return Variant::plain;
  if (v == "loc-a1") return Variant::loc_a1;
  if (v == "loc-a3") return Variant::loc_a3;
  throw std::invalid_argument("no deck variant " + v);
}

/// Lists the classes that touch the edge of the truncation as inconclusive claims.
inline void add_edge_classes(Report& r, const ChartReport& chart) {
  std::vector<std::string> edge;
  for (const auto& st : chart.stems)
    for (const auto& c : st.classes)
      if (c.inconclusive) edge.push_back("(" + std::to_string(c.s) + ", " + std::to_string(c.stem) + ") " + c.label);
  if (!edge.empty())
    r.add_inconclusive("edge classes", "classes whose fate depends on degrees outside the window",
                       std::to_string(edge.size()) + " classes: " + detail::join(edge, 8));
}

inline ChartReport ss_chart(const std::string& variant, SSWindow w) {
  if (variant == "tau") {
    ChartReport chart;
    tau_ideal_ss(w, &chart);
    return chart;
  }
  if (variant == "w15") throw std::invalid_argument("the w15 sequence is charted by --variant tau (its kernel part)");
  return make_chart(compute_Einfty(w, ss_variant(variant)), variant);
}

inline Report ss_run(const std::string& variant, SSWindow w) {
  Report r("ss " + variant);
  if (variant == "plain") {
    r.append(verify_E2(w));
    r.append(verify_differentials(w));
    r.append(verify_RK_theorem({std::max(w.stem_min, 0), w.stem_max, w.fil_cap}));
  } else if (variant == "w15") {
    r.append(w15_page());
  } else if (variant == "tau") {
    r.append(tau_ideal_ss(w));
    r.append(final_comparison(w));
  } else {
    r.append(localize(w, ss_variant(variant)));
  }
  if (variant != "w15") add_edge_classes(r, ss_chart(variant, w));
  return r;
}

/// Appends the claims of part with ids qualified by its title.
inline void append_titled(Report& r, const Report& part) {
  for (const auto& c : part.claims()) {
    std::string id = part.title().empty() ? c.name : part.title() + ": " + c.name;
    if (c.inconclusive)
      r.add_inconclusive(id, c.anchor, c.detail);
    else
      r.add(id, c.anchor, c.passed, c.detail);
  }
}

inline Report verify_all(const RunConfig& c) {
  Report r("all");
  for (const char* t : {"domain", "presentation", "identities", "cm-table", "units", "one-form", "f-derivation"})
    append_titled(r, verify_target(t, c.digits));
  append_titled(r, intersections_report(intersection_tables()));
  append_titled(r, verify_characters());
  for (int t = -20; t <= 20; ++t) append_titled(r, serre_duality_check(t));
  for (const char* v : {"plain", "w15", "tau", "loc-a1", "loc-a3"}) append_titled(r, ss_run(v, c.window));
  return r;
}

inline SSWindow parse_window(const std::string& text, int fil_cap) {
  auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw CLI::ValidationError("--window", "expected STEM_MIN:STEM_MAX");
  SSWindow w;
  try {
    std::size_t a = 0, b = 0;
    w.stem_min = std::stoi(text.substr(0, colon), &a);
    w.stem_max = std::stoi(text.substr(colon + 1), &b);
    if (a != colon || b != text.size() - colon - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--window", "expected integers STEM_MIN:STEM_MAX");
  }
  w.fil_cap = fil_cap;
  if (w.stem_min > w.stem_max) throw CLI::ValidationError("--window", "empty window");
  return w;
}

/// Writes "--window A:B" as "--window=A:B" so that a negative A is not read as a flag.
inline std::vector<std::string> join_window(std::vector<std::string> args) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--window" && k + 1 < args.size()) {
      out.push_back("--window=" + args[k + 1]);
      ++k;
    } else {
      out.push_back(args[k]);
    }
  }
  return out;
}

inline std::string render(const Report& r, bool json) { return json ? to_json(r).dump(2) + "\n" : r.text(); }

/// Parses and runs one command line (without the program name).
inline RunResult run(const std::vector<std::string>& raw_args) {
  RunConfig c;
  std::string window_text = "-16:64";
  CLI::App app{"Exact verification of the discriminant-15 computations", "tafd"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  auto common = [&](CLI::App* a) {
    a->add_flag("--json", c.json, "JSON output");
    a->add_option("--out", c.out, "write the output to FILE");
  };

  auto* verify = app.add_subcommand("verify", "run a verification report");
  verify->add_option("target", c.target, "what to verify")
      ->required()
      ->check(CLI::IsMember({"domain", "presentation", "identities", "cm-table", "units", "one-form", "f-derivation",
                             "all"}));
  verify->add_option("--digits", c.digits, "decimal digits for numeric checks")->check(CLI::Range(10, 1000));
  verify->add_option("--window", window_text, "STEM_MIN:STEM_MAX for the spectral sequences");
  verify->add_option("--fil-cap", c.window.fil_cap, "filtration cap")->check(CLI::NonNegativeNumber);
  common(verify);

  auto* inter = app.add_subcommand("intersections", "CM intersection tables");
  common(inter);
  auto* chars = app.add_subcommand("characters", "level-structure characters");
  common(chars);

  auto* forms = app.add_subcommand("forms", "automorphic forms");
  auto* basis = forms->add_subcommand("basis", "monomial basis of a weight");
  basis->add_option("--weight", c.t, "weight")->required();
  common(basis);
  forms->require_subcommand(1);

  auto* coh = app.add_subcommand("cohomology", "C2 cohomology of the forms");
  coh->add_option("--s", c.s, "cohomological degree")->required()->check(CLI::NonNegativeNumber);
  coh->add_option("--t", c.t, "weight")->required();
  coh->add_option("--action", c.action, "deck, w15 or stack")->check(CLI::IsMember({"deck", "w15", "stack"}));
  common(coh);

  auto* ss = app.add_subcommand("ss", "spectral sequences");
  ss->require_subcommand(1);
  for (const char* name : {"run", "chart"}) {
    auto* sub = ss->add_subcommand(name, std::string(name) + " a spectral sequence");
    sub->add_option("--window", window_text, "STEM_MIN:STEM_MAX");
    sub->add_option("--fil-cap", c.window.fil_cap, "filtration cap")->check(CLI::NonNegativeNumber);
    sub->add_option("--variant", c.variant, "variant")
        ->check(CLI::IsMember({"plain", "w15", "tau", "loc-a1", "loc-a3"}));
    if (std::string(name) == "chart")
      sub->add_option("--format", c.format, "json or ascii")->check(CLI::IsMember({"json", "ascii"}));
    common(sub);
  }

  RunResult res;
  std::vector<std::string> args = join_window(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
    c.window = parse_window(window_text, c.window.fil_cap);
  } catch (const CLI::Success&) {
    res.output = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = usage;
    res.error = std::string(e.what()) + "\n" + app.help();
    return res;
  }

  std::string text;
  try {
    if (verify->parsed()) {
      Report r = c.target == "all" ? verify_all(c) : verify_target(c.target, c.digits);
      text = render(r, c.json);
      res.code = r.all_passed() ? ok : claim_failed;
    } else if (inter->parsed()) {
      auto tables = intersection_tables();
      Report r = intersections_report(tables);
      text = c.json ? to_json(tables).dump(2) + "\n" : intersections_text(tables) + r.text();
      res.code = r.all_passed() ? ok : claim_failed;
    } else if (chars->parsed()) {
      Report r = verify_characters();
      if (c.json) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : character_table())
          rows.push_back({{"g", row.label}, {"sigma2", row.sigma[0]}, {"sigma3", row.sigma[1]}, {"sigma5", row.sigma[2]}});
        text = ordered_json{{"table", rows}, {"report", to_json(r)}}.dump(2) + "\n";
      } else {
        text = "g       s2 s3 s5\n";
        for (const auto& row : character_table()) {
          std::string label = row.label + std::string(8 - std::min<std::size_t>(row.label.size(), 7), ' ');
          text += label + std::to_string(row.sigma[0]) + "  " + std::to_string(row.sigma[1]) + "  " +
                  std::to_string(row.sigma[2]) + "\n";
        }
        text += r.text();
      }
      res.code = r.all_passed() ? ok : claim_failed;
    } else if (basis->parsed()) {
      if (c.t < 0) throw std::invalid_argument("weight must be non-negative");
      WeightSlice slice(c.t);
      std::vector<std::string> names;
      for (const auto& m : slice.basis()) names.push_back(m.str());
      if (c.json) {
        text = ordered_json{{"weight", c.t}, {"basis", names}}.dump(2) + "\n";
      } else {
        text = "weight " + std::to_string(c.t) + ", rank " + std::to_string(names.size()) + "\n";
        for (const auto& n : names) text += "  " + n + "\n";
      }
    } else if (coh->parsed()) {
      CohomologyGroup g = c.action == "stack"  ? stack_cohomology(c.s, c.t)
                          : c.action == "w15" ? group_cohomology(Involution::w15, c.s, c.t)
                                              : group_cohomology(Involution::deck, c.s, c.t);
      if (c.json) {
        ordered_json torsion = ordered_json::array();
        for (const auto& [gen, n] : g.torsion_generators) torsion.push_back({{"generator", gen}, {"order", n.str()}});
        text = ordered_json{{"action", c.action}, {"s", c.s},           {"t", c.t},
                            {"free_rank", g.free_rank}, {"free", g.free_generators}, {"torsion", torsion}}
                   .dump(2) +
               "\n";
      } else {
        text = "H^" + std::to_string(c.s) + "(" + c.action + "; weight " + std::to_string(c.t) + ") = " + g.str() + "\n";
      }
    } else {
      auto* chart_cmd = ss->get_subcommand("chart");
      if (chart_cmd->parsed()) {
        ChartReport chart = ss_chart(c.variant, c.window);
        text = c.format == "json" || c.json ? to_json(chart).dump(2) + "\n" : chart.ascii();
      } else {
        Report r = ss_run(c.variant, c.window);
        text = render(r, c.json);
        res.code = r.all_passed() ? ok : claim_failed;
      }
    }
  } catch (const std::invalid_argument& e) {
    res.code = usage;
    res.error = std::string(e.what()) + "\n";
    return res;
  }

  if (c.out.empty()) {
    res.output = text;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      res.code = usage;
      res.error = "cannot write " + c.out + "\n";
      return res;
    }
    f << text;
  }
  return res;
}

}  // namespace tafd::cli
