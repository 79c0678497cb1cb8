#pragma once

// Command facade for the workbench binary. Every subcommand is a pure
// function from a RunConfig to a structured document rendered as text, JSON,
// or CSV; the binary only parses argv. Keeping the logic here lets tests
// drive commands in-process and makes byte-level determinism checkable.
//
// Exit codes: 0 success, 1 for a finding-with-witness (a negative result the
// run set out to detect, e.g. a collapse derivation or a closure failure),
// 2 for usage errors.

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bialgebra.hpp"
#include "oracle.hpp"
#include "presentations.hpp"
#include "repmod.hpp"
#include "rewrite.hpp"
#include "table.hpp"
#include "weyl.hpp"

namespace shapealg {

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  enum class Format { Text, Json, Csv };

  std::string command;
  std::vector<std::string> names;  // positional presentation names
  std::string file;                // presentation file instead of a name
  std::string expr;                // polynomial input for nf
  std::string by;                  // table selector: "multidegree" | "length"
  std::string check = "relations";  // modules: relations | span | r12
  int max_deg = 4;
  int max_len = 4;
  int slack = 2;
  std::optional<Rational> q_value;
  long long seed = 0;
  Format format = Format::Text;
};

inline Rational parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  const auto integer = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!integer(num) || !integer(den) || den == "0" || den == "-0")
    throw UsageError("cannot parse rational '" + s + "' (expected a or a/b)");
  return Rational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

namespace cli_detail {

using nlohmann::json;

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "sl3_shape_classical",      "sl3_shape_quantum",
      "g1_shape_classical",       "g1_shape_quantum_literal",
      "g1_shape_quantum_amended", "g0_shape_classical",
      "uq_sl3",                   "uq_g1",
      "uq_g0",
  };
  return names;
}

// Accumulated result of one command: renderable as text, JSON, or CSV.
struct Doc {
  std::string command;
  json config = json::object();
  std::vector<std::string> findings;
  std::vector<json> witnesses;
  std::vector<std::pair<std::string, DimTable>> tables;
  json data = json::object();  // command-specific structured extras
  std::ostringstream body;

  int exit_code() const { return findings.empty() ? 0 : 1; }

  void finding(const std::string& text, json witness = json()) {
    findings.push_back(text);
    if (!witness.is_null()) witnesses.push_back(std::move(witness));
  }
};

inline std::string format_name(RunConfig::Format f) {
  switch (f) {
    case RunConfig::Format::Json:
      return "json";
    case RunConfig::Format::Csv:
      return "csv";
    default:
      return "text";
  }
}

inline json config_json(const RunConfig& cfg) {
  return json{{"names", cfg.names},
              {"file", cfg.file},
              {"expr", cfg.expr},
              {"by", cfg.by},
              {"check", cfg.check},
              {"max_deg", cfg.max_deg},
              {"max_len", cfg.max_len},
              {"slack", cfg.slack},
              {"q_value", cfg.q_value ? json(rational_str(*cfg.q_value)) : json()},
              {"seed", cfg.seed},
              {"format", format_name(cfg.format)}};
}

inline json table_json(const std::string& label, const DimTable& t) {
  json rows = json::array();
  for (const DimRow& r : t.rows)
    rows.push_back(json{{"key", r.key}, {"count", r.count}, {"stable", r.stable}});
  return json{{"label", label},         {"name", t.name},   {"selector", selector_str(t.selector)},
              {"method", t.method},     {"bound", t.bound}, {"rows", std::move(rows)}};
}

inline std::string csv_key(const std::vector<int>& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ":";
    out += std::to_string(k[i]);
  }
  return out;
}

// Appends a table to the document (structured + text rendering).
inline void append_table(Doc& doc, const std::string& label, const DimTable& t) {
  doc.tables.emplace_back(label, t);
  doc.body << label << " [" << selector_str(t.selector) << " <= " << t.bound << ", "
           << t.method << "]\n";
  for (const DimRow& r : t.rows) {
    doc.body << "  " << key_str(r.key) << ": " << r.count;
    if (!r.stable) doc.body << "  [unstable]";
    doc.body << "\n";
  }
}

inline std::string render(const Doc& doc, RunConfig::Format format) {
  if (format == RunConfig::Format::Csv) {
    if (doc.tables.empty())
      throw UsageError("command '" + doc.command + "' produces no tables; csv not available");
    std::ostringstream os;
    os << "table,selector,key,count,stable\n";
    for (const auto& [label, t] : doc.tables)
      for (const DimRow& r : t.rows)
        os << label << "," << selector_str(t.selector) << "," << csv_key(r.key) << ","
           << r.count << "," << (r.stable ? 1 : 0) << "\n";
    return os.str();
  }
  if (format == RunConfig::Format::Json) {
    json j;
    j["command"] = doc.command;
    j["config"] = doc.config;
    j["findings"] = doc.findings;
    json tables = json::array();
    for (const auto& [label, t] : doc.tables) tables.push_back(table_json(label, t));
    j["tables"] = std::move(tables);
    j["witnesses"] = doc.witnesses;
    if (!doc.data.empty()) j["data"] = doc.data;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << doc.body.str();
  if (!doc.findings.empty()) {
    os << "findings:\n";
    for (const std::string& f : doc.findings) os << "  " << f << "\n";
  }
  return os.str();
}

// --- inputs ---------------------------------------------------------------

inline Presentation resolve_presentation(const RunConfig& cfg, std::size_t position) {
  if (!cfg.file.empty() && position == 0) {
    std::ifstream in(cfg.file);
    if (!in) throw UsageError("cannot read presentation file '" + cfg.file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
      return parse_presentation(text.str(), cfg.file);
    } catch (const Error& e) {
      throw UsageError("file '" + cfg.file + "': " + e.what());
    }
  }
  const std::size_t index = cfg.file.empty() ? position : position - 1;
  if (index >= cfg.names.size())
    throw UsageError("command '" + cfg.command + "' needs a presentation name");
  try {
    return builtin(cfg.names[index]);
  } catch (const UnknownPresentation&) {
    std::string hint;
    for (const std::string& n : builtin_names()) hint += (hint.empty() ? "" : ", ") + n;
    throw UsageError("unknown presentation '" + cfg.names[index] + "' (built in: " + hint + ")");
  }
}

inline Presentation maybe_specialize(Presentation p, const RunConfig& cfg) {
  if (!cfg.q_value) return p;
  return specialize_q(p, *cfg.q_value);
}

// --- shared computations ----------------------------------------------------

inline std::string status_str(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::Completed:
      return "completed";
    case CompletionStatus::Collapsed:
      return "collapsed";
    default:
      return "bound-exceeded";
  }
}

// Runs completion and narrates the outcome; a collapse becomes a finding
// with the replayable derivation as its witness.
inline CompletionReport complete_narrated(Doc& doc, const Presentation& p, int bound) {
  CompletionReport rep = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), bound);
  doc.body << p.name << ": completion " << status_str(rep.status) << ", certified degree "
           << rep.certified << ", rules " << rep.system.rules.size() << ", ambiguities resolved "
           << rep.ambiguities_resolved << ", skipped " << rep.ambiguities_skipped << "\n";
  if (rep.status == CompletionStatus::Collapsed && rep.collapse) {
    const CollapseInfo& c = *rep.collapse;
    doc.body << "collapse derivation:\n";
    for (const std::string& s : c.steps) doc.body << "  " << s << "\n";
    if (!c.zero_generators.empty()) {
      doc.body << "generators forced to zero:";
      for (const std::string& g : c.zero_generators) doc.body << " " << g;
      doc.body << "\n";
    }
    if (c.unit_zero) doc.body << "the unit reduces to zero: the algebra is trivial\n";
    std::string what = p.name + " collapses under completion";
    if (c.unit_zero) what += " (1 -> 0)";
    doc.finding(what, json{{"kind", "collapse"},
                           {"presentation", p.name},
                           {"steps", c.steps},
                           {"zero_generators", c.zero_generators},
                           {"unit_zero", c.unit_zero}});
  }
  return rep;
}

inline void compare_narrated(Doc& doc, const std::string& what, const DimTable& a,
                             const DimTable& b) {
  const CompareReport rep = compare(a, b);
  if (rep.equal()) {
    doc.body << what << ": tables agree\n";
    return;
  }
  doc.body << what << ": " << rep.mismatches.size() << " mismatched rows\n";
  for (const std::string& m : rep.mismatches) doc.body << "  " << m << "\n";
  doc.finding(what + ": counts differ",
              json{{"kind", "count-mismatch"}, {"check", what}, {"rows", rep.mismatches}});
}

// dimension-count comparison between a classical presentation and a deformed
// one, with an independent linear-algebra cross-check on the classical side
inline void flatness_check(Doc& doc, const Presentation& classical,
                           const Presentation& quantum, const std::string& by, int bound,
                           int slack) {
  const CompletionReport crep = complete_narrated(doc, classical, bound);
  const CompletionReport qrep = complete_narrated(doc, quantum, bound);
  if (crep.status != CompletionStatus::Completed) {
    if (crep.status == CompletionStatus::BoundExceeded)
      doc.finding(classical.name + ": completion exceeded the bound; no counts available");
    return;
  }
  if (qrep.status != CompletionStatus::Completed) {
    if (qrep.status == CompletionStatus::BoundExceeded)
      doc.finding(quantum.name + ": completion exceeded the bound; no counts available");
    return;
  }

  if (by == "multidegree") {
    const DimTable ct = count_irreducible_by_multidegree(crep, bound, classical.name);
    const DimTable qt = count_irreducible_by_multidegree(qrep, bound, quantum.name);
    append_table(doc, "classical " + classical.name, ct);
    append_table(doc, "deformed " + quantum.name, qt);
    compare_narrated(doc, "deformed vs classical dimensions", qt, ct);
    try {
      const DimTable oracle_t = commutative_dims(classical, bound);
      append_table(doc, "commutative oracle " + classical.name, oracle_t);
      compare_narrated(doc, "classical rewrite vs commutative oracle", ct, oracle_t);
    } catch (const Error& e) {
      doc.body << "commutative oracle not applicable: " << e.what() << "\n";
    }
  } else {
    const DimTable ct = count_irreducible_by_length(crep, bound, classical.name);
    const DimTable qt = count_irreducible_by_length(qrep, bound, quantum.name);
    append_table(doc, "classical " + classical.name, ct);
    append_table(doc, "deformed " + quantum.name, qt);
    compare_narrated(doc, "deformed vs classical word counts", qt, ct);
    try {
      const DimTable oracle_t = filtered_localized_counts(classical, bound, slack);
      const DimTable cum = cumulative_by_length(ct);
      append_table(doc, "windowed oracle " + classical.name, oracle_t);
      compare_narrated(doc, "classical cumulative counts vs windowed oracle", cum, oracle_t);
    } catch (const Error& e) {
      doc.body << "windowed oracle not applicable: " << e.what() << "\n";
    }
  }
}

inline void orthocell_census(Doc& doc) {
  int singles = 0, pairs = 0;
  json cells = json::array();
  for (const Orthocell& c : orthocells()) (c.members.size() == 1 ? singles : pairs)++;
  doc.body << orthocells().size() << " cells: " << singles << " singletons, " << pairs
           << " pairs\n";
  for (const Orthocell& c : orthocells()) {
    doc.body << "  " << c.name << ": {";
    json members = json::array();
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      if (i) doc.body << ", ";
      doc.body << perm_str(c.members[i]);
      members.push_back(perm_str(c.members[i]));
    }
    doc.body << "}";
    if (c.members.size() == 2)
      doc.body << "  [pair, root " << c.root << ", side " << c.side << "]";
    doc.body << "\n";
    cells.push_back(json{{"name", c.name},
                         {"members", std::move(members)},
                         {"root", c.root},
                         {"side", std::string(1, c.side)}});
  }
  doc.body << "spanning vectors by family:\n";
  json fams = json::array();
  for (const auto [l, r] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    const EffectivenessReport er = effectiveness(l, r);
    doc.body << "  (" << l << "," << r << "): " << er.span
             << " distinct vectors (singleton span " << er.trivial_span << "), closure rank "
             << er.closure << ", with complement " << er.supplemented << "; effective pairs:";
    for (const std::string& c : er.effective_pairs) doc.body << " " << c;
    doc.body << "\n";
    fams.push_back(json{{"family", {l, r}},
                        {"span", er.span},
                        {"trivial_span", er.trivial_span},
                        {"closure", er.closure},
                        {"supplemented", er.supplemented},
                        {"effective_pairs", er.effective_pairs}});
  }
  doc.data["cells"] = std::move(cells);
  doc.data["families"] = std::move(fams);
}

// pass/fail per defining relation on the standard modules
inline void relation_checks(Doc& doc, const std::optional<Rational>& q_value) {
  struct Target {
    std::string presentation;
    const Module* module;
  };
  static const Module v1v2 = tensor(module_v1(), module_v2());
  const std::vector<Target> targets = {{"uq_sl3", &module_v1()},
                                       {"uq_sl3", &module_v2()},
                                       {"uq_sl3", &v1v2},
                                       {"uq_g1", &module_vm1()}};
  json checks = json::array();
  for (const Target& t : targets) {
    const Presentation p = builtin(t.presentation);
    int failed = 0;
    for (const NCPoly& rel : p.relations) {
      bool ok;
      std::vector<std::string> defects;
      if (q_value) {
        const auto m = linalg::eval_at(matrix_of(*t.module, rel), *q_value);
        ok = true;
        for (std::size_t i = 0; i < m.size() && defects.size() < 4; ++i)
          for (std::size_t j = 0; j < m[i].size() && defects.size() < 4; ++j)
            if (m[i][j] != 0) {
              ok = false;
              defects.push_back("[" + t.module->basis[i] + "][" + t.module->basis[j] +
                                "] = " + rational_str(m[i][j]));
            }
      } else {
        const LMat m = matrix_of(*t.module, rel);
        ok = detail::mat_is_zero(m);
        if (!ok)
          for (std::size_t i = 0; i < m.size() && defects.size() < 4; ++i)
            for (std::size_t j = 0; j < m[i].size() && defects.size() < 4; ++j)
              if (!m[i][j].is_zero())
                defects.push_back("[" + t.module->basis[i] + "][" + t.module->basis[j] +
                                  "] = " + m[i][j].str());
      }
      if (!ok) {
        ++failed;
        doc.body << "  FAIL " << t.presentation << " on " << t.module->name << ": '"
                 << rel.str() << "' has nonzero action\n";
        for (const std::string& d : defects) doc.body << "    defect " << d << "\n";
        doc.finding("relation '" + rel.str() + "' does not annihilate " + t.module->name,
                    json{{"kind", "relation-defect"},
                         {"presentation", t.presentation},
                         {"module", t.module->name},
                         {"relation", rel.str()},
                         {"defects", defects}});
      }
      checks.push_back(json{{"presentation", t.presentation},
                            {"module", t.module->name},
                            {"relation", rel.str()},
                            {"pass", ok}});
    }
    doc.body << t.presentation << " on " << t.module->name << ": "
             << (p.relations.size() - failed) << "/" << p.relations.size()
             << " relations act as zero"
             << (q_value ? " at q = " + rational_str(*q_value) : std::string()) << "\n";
  }
  doc.data["relation_checks"] = std::move(checks);
}

inline void span_checks(Doc& doc) {
  json checks = json::array();
  for (const auto [l, r] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    const EffectivenessReport er = effectiveness(l, r);
    const int n1 = (l == 1 ? 1 : 0) + (r == 1 ? 1 : 0);
    const int n2 = (l == 2 ? 1 : 0) + (r == 2 ? 1 : 0);
    const long long expected = weyl_dim(n1, n2);
    const long long full = static_cast<long long>(family_module(l, r).dim());
    const bool span_ok = er.span == expected;
    const bool invariant = er.closure == er.span;
    const bool complement_ok = er.supplemented == full;
    doc.body << "(" << l << "," << r << "): span " << er.span << " (module dimension "
             << expected << (span_ok ? ", ok" : ", MISMATCH") << "), closure "
             << er.closure << (invariant ? " (invariant)" : " (NOT invariant)")
             << ", with complement " << er.supplemented << "/" << full
             << (complement_ok ? " (ok)" : " (MISMATCH)") << "\n";
    if (!span_ok)
      doc.finding("family (" + std::to_string(l) + "," + std::to_string(r) +
                  "): cell vectors span " + std::to_string(er.span) + " instead of " +
                  std::to_string(expected));
    if (!invariant)
      doc.finding("family (" + std::to_string(l) + "," + std::to_string(r) +
                  "): cell-vector span is not invariant under the action");
    if (!complement_ok)
      doc.finding("family (" + std::to_string(l) + "," + std::to_string(r) +
                  "): supplementary family does not complete the tensor square");
    checks.push_back(json{{"family", {l, r}},
                          {"span", er.span},
                          {"expected", expected},
                          {"closure", er.closure},
                          {"supplemented", er.supplemented},
                          {"full", full},
                          {"pass", span_ok && invariant && complement_ok}});
  }
  doc.data["span_checks"] = std::move(checks);
}

inline void r12_checks(Doc& doc, const std::optional<Rational>& q_value) {
  using linalg::Frac;
  const Intertwiner R = intertwiner_r12();
  const Module& src = family_module(1, 2);
  const Module& dst = family_module(2, 1);
  doc.body << "maps on the cell-vector span: " << R.hom_dim << "-dimensional\n";
  doc.body << "commutant of the full tensor square: " << R.full_hom_dim << "-dimensional\n";
  if (R.hom_dim != 1)
    doc.finding("intertwiner space on the cell span has dimension " +
                std::to_string(R.hom_dim) + ", not a line");
  json pairings = json::array();
  for (const Orthocell& c : orthocells()) {
    const Vec v12 = e_vector(c, 1, 2);
    FVec image = apply_matrix(R.matrix, v12);
    // only vectors in the cell span are paired; the complement maps to zero
    std::vector<Frac> row(v12.begin(), v12.end());
    const EffectivenessReport er = effectiveness(1, 2);
    const bool effective =
        c.members.size() == 1 ||
        std::find(er.effective_pairs.begin(), er.effective_pairs.end(), c.name) !=
            er.effective_pairs.end();
    if (!effective) {
      pairings.push_back(json{{"cell", c.name}, {"effective", false}});
      continue;
    }
    const Vec v21 = e_vector(c, 2, 1);
    bool ok = true;
    for (std::size_t i = 0; i < image.size(); ++i) {
      Frac d = image[i] - Frac(v21[i]);
      if (!d.is_zero()) ok = false;
    }
    doc.body << "  " << c.name << ": image of the (1,2) vector "
             << (ok ? "equals" : "DIFFERS from") << " the (2,1) vector\n";
    if (!ok) {
      std::string defect;
      for (std::size_t i = 0; i < image.size(); ++i) {
        Frac d = image[i] - Frac(v21[i]);
        if (!d.is_zero()) {
          defect = "component " + dst.basis[i] + ": " + d.str();
          break;
        }
      }
      doc.finding("pairing fails on cell " + c.name,
                  json{{"kind", "pairing-defect"}, {"cell", c.name}, {"defect", defect}});
    }
    pairings.push_back(json{{"cell", c.name}, {"effective", true}, {"pass", ok}});
  }
  const FVec comp = apply_matrix(R.matrix, supplementary_vector());
  doc.body << "invariant complement maps to " << (vec_is_zero(comp) ? "zero" : "NONZERO")
           << "\n";
  if (!vec_is_zero(comp)) doc.finding("the invariant complement is not annihilated");
  if (q_value) {
    // numeric spot check of the commutation R a = b R at the sample point
    const Rational r = *q_value;
    linalg::Mat<Rational> Rm(R.matrix.size());
    bool fraction_pole = false;
    for (std::size_t i = 0; i < R.matrix.size(); ++i)
      for (const Frac& x : R.matrix[i]) {
        const Rational dv = x.den.eval(r);
        if (dv == 0) {
          fraction_pole = true;
          break;
        }
        Rm[i].push_back(x.num.eval(r) / dv);
      }
    if (fraction_pole) {
      doc.body << "commutation spot check skipped: denominator vanishes at q = "
               << rational_str(r) << "\n";
    } else {
      bool all_ok = true;
      for (const auto& [g, a] : src.action) {
        const auto av = linalg::eval_at(a, r);
        const auto bv = linalg::eval_at(dst.matrix(g), r);
        const std::size_t n = Rm.size();
        for (std::size_t i = 0; i < n && all_ok; ++i)
          for (std::size_t j = 0; j < n && all_ok; ++j) {
            Rational lhs = 0, rhs = 0;
            for (std::size_t k = 0; k < n; ++k) {
              lhs += Rm[i][k] * av[k][j];
              rhs += bv[i][k] * Rm[k][j];
            }
            if (lhs != rhs) {
              all_ok = false;
              doc.finding("commutation with " + g + " fails at q = " + rational_str(r));
            }
          }
      }
      doc.body << "commutation with every generator at q = " << rational_str(r) << ": "
               << (all_ok ? "holds" : "FAILS") << "\n";
    }
  }
  doc.data["pairings"] = std::move(pairings);
}

inline void lemma1_checks(Doc& doc, const Rational& membership_point) {
  const auto report = [&doc](const std::string& name, const SubBialgebraReport& rep) {
    doc.body << name << ": " << rep.str() << "\n";
    if (!rep.pass) {
      json ws = json::array();
      for (const auto& [gen, involves] : rep.witnesses)
        ws.push_back(json{{"generator", gen}, {"involves", involves}});
      doc.finding(name + " generators are not closed under the coproduct",
                  json{{"kind", "sub-bialgebra-failure"},
                       {"presentation", name},
                       {"witnesses", std::move(ws)}});
    }
    doc.data[name] = rep.pass;
  };
  report("uq_g1", sub_bialgebra_check(builtin("uq_g1").gens));
  report("uq_g0", sub_bialgebra_check(builtin("uq_g0").gens));

  const Presentation sl3 = builtin("uq_sl3");
  const auto sweep = coproduct_relation_sweep(sl3);
  int zero = 0;
  for (const auto& r : sweep)
    if (r.zero)
      ++zero;
    else
      doc.finding("coproduct image of '" + r.relation + "' is nonzero on the check module");
  doc.body << "coproduct compatibility: " << zero << "/" << sweep.size()
           << " defining relations have zero coproduct image\n";
  doc.data["coproduct_zero"] = zero;
  doc.data["coproduct_total"] = sweep.size();

  std::vector<std::string> g0_names;
  const Gens g0 = builtin("uq_g0").gens;
  for (std::size_t g = 0; g < g0->size(); ++g) g0_names.push_back(g0->name(static_cast<int>(g)));
  const bool inside =
      matrix_membership_check("K2", g0_names, default_check_module(), membership_point);
  doc.body << "matrix membership at q = " << rational_str(membership_point)
           << ": K2 is " << (inside ? "inside" : "outside")
           << " the algebra generated by the uq_g0 images\n";
  doc.data["k2_membership"] =
      json{{"point", rational_str(membership_point)}, {"inside", inside}};
}

// deterministic polynomial sampler for the strategy-agreement probe
inline NCPoly random_poly(const Gens& gens, std::mt19937_64& rng, int max_len, int max_terms) {
  NCPoly p(gens);
  const int terms = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_terms));
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % gens->size()));
    const long long c = static_cast<long long>(rng() % 13) - 6;
    const int e = static_cast<int>(rng() % 5) - 2;
    if (c != 0) p.add_term(w, Laurent::term(Rational(c), e));
  }
  return p;
}

inline void determinism_probe(Doc& doc, long long seed, int trials) {
  const std::vector<std::string> presets = {"sl3_shape_classical", "sl3_shape_quantum",
                                            "g1_shape_classical", "g1_shape_quantum_amended",
                                            "g0_shape_classical"};
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  for (const std::string& name : presets) {
    const Presentation p = builtin(name);
    const CompletionReport rep =
        complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
    if (rep.status != CompletionStatus::Completed) {
      doc.body << "strategy agreement skipped for " << name << " (" << status_str(rep.status)
               << ")\n";
      continue;
    }
    int agree = 0;
    for (int t = 0; t < trials; ++t) {
      const NCPoly poly = random_poly(p.gens, rng, 4, 4);
      const NCPoly a = reduce(poly, rep.system, ReduceStrategy::LargestFirst);
      const NCPoly b = reduce(poly, rep.system, ReduceStrategy::SmallestFirst);
      if ((a - b).is_zero())
        ++agree;
      else
        doc.finding("normal forms under the two strategies differ for '" + poly.str() +
                    "' in " + name);
    }
    doc.body << "strategy agreement on " << name << ": " << agree << "/" << trials << "\n";
  }
}

inline void specialization_checks(Doc& doc) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"sl3_shape_quantum", "sl3_shape_classical"},
      {"g1_shape_quantum_literal", "g1_shape_classical"},
      {"g1_shape_quantum_amended", "g1_shape_classical"},
  };
  for (const auto& [qname, cname] : pairs) {
    const Presentation cp = builtin(cname);
    const Presentation qp1 = specialize_q(builtin(qname), 1);
    // bound 4: deep enough to rewrite the degree-<=3 relations decisively
    // (the localized systems only derive their exchange rules at degree 4)
    const CompletionReport crep =
        complete(cp.gens, cp.relations, MonomialOrder::deglex(cp.gens), 4);
    const CompletionReport qrep =
        complete(qp1.gens, qp1.relations, MonomialOrder::deglex(qp1.gens), 4);
    bool ok = crep.status == CompletionStatus::Completed &&
              qrep.status == CompletionStatus::Completed;
    if (ok)
      for (const NCPoly& r : qp1.relations)
        if (!reduce(r, crep.system).is_zero()) ok = false;
    if (ok)
      for (const NCPoly& r : cp.relations)
        if (!reduce(r, qrep.system).is_zero()) ok = false;
    doc.body << qname << " at q = 1 vs " << cname << ": "
             << (ok ? "same ideal (mutual reduction to zero)" : "IDEALS DIFFER") << "\n";
    if (!ok) doc.finding(qname + " at q = 1 does not match " + cname);
  }
}

// --- commands ---------------------------------------------------------------

inline Doc run_present(const RunConfig& cfg) {
  Doc doc;
  const Presentation p = maybe_specialize(resolve_presentation(cfg, 0), cfg);
  doc.body << print_presentation(p);
  const GradingReport rep = validate_grading(p);
  for (const std::string& w : rep.whitelisted) doc.body << "note: " << w << "\n";
  doc.body << "grading: "
           << (rep.ok() ? "every relation is homogeneous"
                        : std::to_string(rep.violations.size()) + " violations")
           << "\n";
  for (const std::string& v : rep.violations)
    doc.finding("grading violation: " + v,
                json{{"kind", "grading-violation"}, {"detail", v}});
  return doc;
}

inline Doc run_complete(const RunConfig& cfg) {
  Doc doc;
  const Presentation p = maybe_specialize(resolve_presentation(cfg, 0), cfg);
  const CompletionReport rep = complete_narrated(doc, p, cfg.max_deg);
  doc.body << "rules by lead degree:";
  for (const auto& [deg, n] : rep.rules_added_by_degree) doc.body << " " << deg << ":" << n;
  doc.body << "\n";
  json rules = json::array();
  for (const auto& [deg, n] : rep.rules_added_by_degree)
    rules.push_back(json{{"degree", deg}, {"rules", n}});
  doc.data["status"] = status_str(rep.status);
  doc.data["certified"] = rep.certified;
  doc.data["rules_by_degree"] = std::move(rules);
  return doc;
}

inline Doc run_nf(const RunConfig& cfg) {
  Doc doc;
  if (cfg.expr.empty()) throw UsageError("nf needs --expr \"<polynomial>\"");
  const Presentation p = maybe_specialize(resolve_presentation(cfg, 0), cfg);
  NCPoly poly = NCPoly::zero(p.gens);
  try {
    poly = NCPoly::parse(p.gens, cfg.expr);
  } catch (const Error& e) {
    throw UsageError("cannot parse --expr: " + std::string(e.what()));
  }
  const CompletionReport rep = complete_narrated(doc, p, cfg.max_deg);
  if (rep.status == CompletionStatus::Completed) {
    const NCPoly nf = reduce(poly, rep.system);
    doc.body << "normal form: " << nf.str() << "\n";
    doc.data["normal_form"] = nf.str();
  } else if (rep.status == CompletionStatus::BoundExceeded) {
    doc.finding(p.name + ": completion exceeded the bound; normal forms are not certified");
  }
  return doc;
}

inline Doc run_hilbert(const RunConfig& cfg) {
  Doc doc;
  const Presentation p = maybe_specialize(resolve_presentation(cfg, 0), cfg);
  const std::string by = cfg.by.empty() ? "multidegree" : cfg.by;
  const int bound = by == "multidegree" ? cfg.max_deg : cfg.max_len;
  const CompletionReport rep = complete_narrated(doc, p, bound);
  if (rep.status != CompletionStatus::Completed) {
    if (rep.status == CompletionStatus::BoundExceeded)
      doc.finding(p.name + ": completion exceeded the bound; no counts available");
    return doc;
  }
  if (by == "multidegree")
    append_table(doc, "rewrite " + p.name, count_irreducible_by_multidegree(rep, bound, p.name));
  else
    append_table(doc, "rewrite " + p.name, count_irreducible_by_length(rep, bound, p.name));
  return doc;
}

inline Doc run_flatness(const RunConfig& cfg) {
  Doc doc;
  const Presentation classical = maybe_specialize(resolve_presentation(cfg, 0), cfg);
  const Presentation quantum = maybe_specialize(resolve_presentation(cfg, 1), cfg);
  const std::string by = cfg.by.empty() ? "multidegree" : cfg.by;
  const int bound = by == "multidegree" ? cfg.max_deg : cfg.max_len;
  flatness_check(doc, classical, quantum, by, bound, cfg.slack);
  return doc;
}

inline Doc run_orthocells(const RunConfig&) {
  Doc doc;
  orthocell_census(doc);
  return doc;
}

inline Doc run_modules(const RunConfig& cfg) {
  Doc doc;
  if (cfg.check == "relations") {
    relation_checks(doc, cfg.q_value);
  } else if (cfg.check == "span") {
    if (cfg.q_value) doc.body << "span ranks are computed exactly; q-value ignored\n";
    span_checks(doc);
  } else if (cfg.check == "r12") {
    r12_checks(doc, cfg.q_value);
  } else {
    throw UsageError("unknown --check '" + cfg.check + "' (relations, span, r12)");
  }
  return doc;
}

inline Doc run_lemma1(const RunConfig& cfg) {
  Doc doc;
  lemma1_checks(doc, cfg.q_value.value_or(Rational(2)));
  return doc;
}

inline Doc run_report(const RunConfig& cfg) {
  Doc doc;
  const auto section = [&doc](const std::string& title) {
    doc.body << "\n== " << title << " ==\n";
  };
  doc.body << "workbench report\n";

  section("orthocell census");
  orthocell_census(doc);

  section("classical dimensions (three routes)");
  {
    const Presentation p = builtin("sl3_shape_classical");
    const CompletionReport rep = complete_narrated(doc, p, 6);
    const DimTable rt = count_irreducible_by_multidegree(rep, 6, p.name);
    const DimTable ot = commutative_dims(p, 6);
    DimTable wt;
    wt.selector = Selector::Multidegree;
    wt.name = "weyl_dim";
    wt.method = "dimension formula";
    wt.bound = 6;
    for (const DimRow& r : rt.rows) wt.rows.push_back({r.key, weyl_dim(r.key[0], r.key[1]), true});
    append_table(doc, "rewrite sl3_shape_classical", rt);
    compare_narrated(doc, "rewrite vs commutative oracle", rt, ot);
    compare_narrated(doc, "rewrite vs dimension formula", rt, wt);
  }

  section("deformed dimensions");
  flatness_check(doc, builtin("sl3_shape_classical"), builtin("sl3_shape_quantum"),
                 "multidegree", 5, cfg.slack);

  section("module relation checks");
  relation_checks(doc, std::nullopt);

  section("cell-vector spans");
  span_checks(doc);

  section("intertwiner");
  r12_checks(doc, std::nullopt);

  section("coproduct closure");
  lemma1_checks(doc, cfg.q_value.value_or(Rational(2)));

  section("localized counts");
  {
    const Presentation p = builtin("g1_shape_classical");
    const CompletionReport rep = complete_narrated(doc, p, 4);
    const DimTable rt = count_irreducible_by_length(rep, 4, p.name);
    const DimTable ot = filtered_localized_counts(p, 4, cfg.slack);
    append_table(doc, "rewrite g1_shape_classical", rt);
    append_table(doc, "windowed oracle g1_shape_classical", ot);
    compare_narrated(doc, "cumulative rewrite counts vs windowed oracle",
                     cumulative_by_length(rt), ot);
  }

  section("one-sided inverse collapse");
  complete_narrated(doc, builtin("g1_shape_quantum_literal"), 4);

  section("two-sided localization");
  flatness_check(doc, builtin("g1_shape_classical"), builtin("g1_shape_quantum_amended"),
                 "length", 4, cfg.slack);

  section("specialization at q = 1");
  specialization_checks(doc);

  section("strategy agreement");
  determinism_probe(doc, cfg.seed, 10);

  return doc;
}

}  // namespace cli_detail

// Validates the configuration, runs the command, and renders the outcome.
// Returns 0 (success), 1 (finding recorded), or 2 (usage error).
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  try {
    if (cfg.max_deg <= 0 || cfg.max_len <= 0 || cfg.slack < 0)
      throw UsageError("bounds must be positive");
    if (cfg.q_value && *cfg.q_value == 0) throw UsageError("--q-value must be nonzero");
    if (!cfg.by.empty() && cfg.by != "multidegree" && cfg.by != "length")
      throw UsageError("unknown --by '" + cfg.by + "' (multidegree, length)");

    Doc doc;
    if (cfg.command == "present")
      doc = run_present(cfg);
    else if (cfg.command == "nf")
      doc = run_nf(cfg);
    else if (cfg.command == "complete")
      doc = run_complete(cfg);
    else if (cfg.command == "hilbert")
      doc = run_hilbert(cfg);
    else if (cfg.command == "flatness")
      doc = run_flatness(cfg);
    else if (cfg.command == "orthocells")
      doc = run_orthocells(cfg);
    else if (cfg.command == "modules")
      doc = run_modules(cfg);
    else if (cfg.command == "lemma1")
      doc = run_lemma1(cfg);
    else if (cfg.command == "report")
      doc = run_report(cfg);
    else
      throw UsageError("unknown command '" + cfg.command + "'");

    doc.command = cfg.command;
    doc.config = config_json(cfg);
    out << render(doc, cfg.format);
    return doc.exit_code();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace shapealg
