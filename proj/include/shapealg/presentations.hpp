#pragma once

// Built-in presentation catalog, the presentation file format, grading
// validation, and specialization of the parameter q at rational values.

#include <set>
#include <sstream>

#include "freealg.hpp"

namespace shapealg {

struct UnknownPresentation : Error {
  explicit UnknownPresentation(const std::string& n)
      : Error("unknown presentation '" + n + "'") {}
};

struct PoleAtValue : Error {
  std::size_t relation_index;
  PoleAtValue(std::size_t idx, const std::string& what)
      : Error("relation #" + std::to_string(idx + 1) +
              " was stored scaled by a factor vanishing at the requested value (" + what + ")"),
        relation_index(idx) {}
};

struct Presentation {
  std::string name;
  Gens gens;
  std::vector<NCPoly> relations;
  std::vector<std::string> notes;        // provenance per relation
  std::vector<Laurent> cleared_factors;  // nonzero entry: relation stored scaled by it
  std::set<std::size_t> inhomogeneous_whitelist;

  void add(std::string_view expr, std::string note, Laurent cleared = Laurent()) {
    relations.push_back(NCPoly::parse(gens, expr));
    notes.push_back(std::move(note));
    cleared_factors.push_back(std::move(cleared));
  }
};

namespace detail {

inline Gens make_shape_gens(bool with_t) {
  std::vector<std::pair<std::string, MultiDegree>> g = {
      {"p1", {1, 0}}, {"p2", {1, 0}}, {"p3", {1, 0}},
      {"q1", {0, 1}}, {"q2", {0, 1}}, {"q3", {0, 1}},
  };
  if (with_t) g.push_back({"t", {0, -1}});
  return GeneratorSet::make(g);
}

inline Gens make_uq_gens(bool with_x2, bool with_k2) {
  std::vector<std::pair<std::string, MultiDegree>> g;
  g.push_back({"K1", {}});
  g.push_back({"K1i", {}});
  if (with_k2) {
    g.push_back({"K2", {}});
    g.push_back({"K2i", {}});
  }
  g.push_back({"X1", {}});
  if (with_x2) g.push_back({"X2", {}});
  g.push_back({"Y1", {}});
  g.push_back({"Y2", {}});
  return GeneratorSet::make(g);
}

// In the deformed case the two families carry the deformation on opposite sides:
// p_i p_j = q p_j p_i for i<j, but q_j q_i = q q_i q_j for i<j. This mirrors the
// column/minor calculus of the 3x3 quantum matrix algebra and is the only choice
// that keeps the graded dimensions equal to the classical ones.
inline void add_shape_common(Presentation& p, bool deformed) {
  const char* ij[3][2] = {{"1", "2"}, {"1", "3"}, {"2", "3"}};
  for (auto& pr : ij)
    p.add("p" + std::string(pr[0]) + "*p" + pr[1] + " - " + (deformed ? "q*" : "") + "p" +
              pr[1] + "*p" + pr[0],
          deformed ? "row commutations, upper pair (" + std::string(pr[0]) + "," + pr[1] + ")"
                   : "p-commutation (" + std::string(pr[0]) + "," + pr[1] + ")");
  for (auto& pr : ij) {
    if (deformed)
      p.add("q" + std::string(pr[1]) + "*q" + pr[0] + " - q*q" + pr[0] + "*q" + pr[1],
            "column commutations, upper pair (" + std::string(pr[0]) + "," + pr[1] + ")");
    else
      p.add("q" + std::string(pr[0]) + "*q" + pr[1] + " - q" + pr[1] + "*q" + pr[0],
            "q-commutation (" + std::string(pr[0]) + "," + pr[1] + ")");
  }
}

}  // namespace detail

inline Presentation builtin(const std::string& name);

namespace detail {

inline Presentation sl3_shape_classical() {
  Presentation p;
  p.name = "sl3_shape_classical";
  p.gens = make_shape_gens(false);
  add_shape_common(p, false);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      p.add("p" + std::to_string(i) + "*q" + std::to_string(j) + " - q" + std::to_string(j) +
                "*p" + std::to_string(i),
            "mixed commutation (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (int i = 1; i <= 3; ++i)
    p.add("p" + std::to_string(i) + "*q" + std::to_string(i) + " - q" + std::to_string(i) +
              "*p" + std::to_string(i),
          "mixed commutation (" + std::to_string(i) + "," + std::to_string(i) + ")");
  p.add("p1*q1 + p2*q2 + p3*q3", "row-column pairing vanishes");
  return p;
}

inline Presentation sl3_shape_quantum() {
  Presentation p;
  p.name = "sl3_shape_quantum";
  p.gens = make_shape_gens(false);
  add_shape_common(p, true);
  p.add("p2*q2 + q^-1*p1*q1 + q*p3*q3", "weighted pairing, pq order");
  p.add("q2*p2 + q*q1*p1 + q^-1*q3*p3", "weighted pairing, qp order");
  // Off-diagonal mixed pairs stay undeformed; a uniform q factor here fails the
  // graded-dimension cross-check at multidegree (1,2).
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      p.add("p" + std::to_string(i) + "*q" + std::to_string(j) + " - q" + std::to_string(j) +
                "*p" + std::to_string(i),
            "mixed commutation (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  p.add("p1*q1 - q*q1*p1", "mixed q-commutation (1,1)");
  p.add("p3*q3 - q^-1*q3*p3", "mixed q-commutation (3,3)");
  return p;
}

inline Presentation uq_sl3(bool with_x2, bool with_k2) {
  Presentation p;
  p.name = with_x2 ? "uq_sl3" : (with_k2 ? "uq_g1" : "uq_g0");
  p.gens = make_uq_gens(with_x2, with_k2);
  p.add("K1*K1i - 1", "K1 invertible");
  p.add("K1i*K1 - 1", "K1 invertible");
  if (with_k2) {
    p.add("K2*K2i - 1", "K2 invertible");
    p.add("K2i*K2 - 1", "K2 invertible");
    p.add("K1*K2 - K2*K1", "Cartan subgroup commutes");
  }
  p.add("K1*X1*K1i - q^2*X1", "K1 conjugation on X1");
  if (with_x2) p.add("K1*X2*K1i - q^-1*X2", "K1 conjugation on X2");
  if (with_k2) p.add("K2*X1*K2i - q^-1*X1", "K2 conjugation on X1");
  if (with_x2) p.add("K2*X2*K2i - q^2*X2", "K2 conjugation on X2");
  p.add("K1*Y1*K1i - q^-2*Y1", "K1 conjugation on Y1");
  p.add("K1*Y2*K1i - q*Y2", "K1 conjugation on Y2");
  if (with_k2) {
    p.add("K2*Y1*K2i - q*Y1", "K2 conjugation on Y1");
    p.add("K2*Y2*K2i - q^-2*Y2", "K2 conjugation on Y2");
  }
  const Laurent qdiff = Laurent::q() - Laurent::q(-1);
  p.add("(q - q^-1)*(X1*Y1 - Y1*X1) - K1 + K1i",
        "ladder commutator for index 1, scaled to clear denominators", qdiff);
  if (with_x2)
    p.add("(q - q^-1)*(X2*Y2 - Y2*X2) - K2 + K2i",
          "ladder commutator for index 2, scaled to clear denominators", qdiff);
  p.add("X1*Y2 - Y2*X1", "cross commutator (1,2)");
  if (with_x2) p.add("X2*Y1 - Y1*X2", "cross commutator (2,1)");
  if (with_x2) {
    p.add("X1*X1*X2 - (q + q^-1)*X1*X2*X1 + X2*X1*X1", "cubic relation on X, index 1");
    p.add("X2*X2*X1 - (q + q^-1)*X2*X1*X2 + X1*X2*X2", "cubic relation on X, index 2");
  }
  p.add("Y1*Y1*Y2 - (q + q^-1)*Y1*Y2*Y1 + Y2*Y1*Y1", "cubic relation on Y, index 1");
  p.add("Y2*Y2*Y1 - (q + q^-1)*Y2*Y1*Y2 + Y1*Y2*Y2", "cubic relation on Y, index 2");
  return p;
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  return {"sl3_shape_classical",      "sl3_shape_quantum",
          "g1_shape_classical",       "g1_shape_quantum_literal",
          "g1_shape_quantum_amended", "g0_shape_classical",
          "uq_sl3",                   "uq_g1",
          "uq_g0"};
}

inline Presentation builtin(const std::string& name) {
  if (name == "sl3_shape_classical") return detail::sl3_shape_classical();
  if (name == "sl3_shape_quantum") return detail::sl3_shape_quantum();
  if (name == "g1_shape_classical") {
    Presentation p = detail::sl3_shape_classical();
    p.name = "g1_shape_classical";
    p.gens = detail::make_shape_gens(true);
    for (auto& r : p.relations) r = NCPoly::parse(p.gens, r.str());
    p.add("t*q3 - 1", "t inverts q3 on the left");
    p.add("q3*t - 1", "t inverts q3 on the right");
    return p;
  }
  if (name == "g1_shape_quantum_literal") {
    Presentation p = detail::sl3_shape_quantum();
    p.name = "g1_shape_quantum_literal";
    p.gens = detail::make_shape_gens(true);
    for (auto& r : p.relations) r = NCPoly::parse(p.gens, r.str());
    p.add("t*q3 - 1", "t inverts q3 on the left");
    p.add("q3*t - q", "one-sided inverse weighted by q, as printed");
    return p;
  }
  if (name == "g1_shape_quantum_amended") {
    Presentation p = detail::sl3_shape_quantum();
    p.name = "g1_shape_quantum_amended";
    p.gens = detail::make_shape_gens(true);
    for (auto& r : p.relations) r = NCPoly::parse(p.gens, r.str());
    p.add("t*q3 - 1", "t inverts q3 on the left");
    p.add("q3*t - 1", "t inverts q3 on the right");
    p.add("t*p1 - p1*t", "t commutation with p1, forced by two-sided inverse");
    p.add("t*p2 - p2*t", "t commutation with p2, forced by two-sided inverse");
    p.add("t*p3 - q^-1*p3*t", "t commutation with p3, forced by two-sided inverse");
    p.add("t*q1 - q^-1*q1*t", "t commutation with q1, forced by two-sided inverse");
    p.add("t*q2 - q^-1*q2*t", "t commutation with q2, forced by two-sided inverse");
    return p;
  }
  if (name == "g0_shape_classical") {
    Presentation p = detail::sl3_shape_classical();
    p.name = "g0_shape_classical";
    p.add("q3 - 1", "restriction to the slice q3 = 1");
    p.inhomogeneous_whitelist.insert(p.relations.size() - 1);
    return p;
  }
  if (name == "uq_sl3") return detail::uq_sl3(true, true);
  if (name == "uq_g1") return detail::uq_sl3(false, true);
  if (name == "uq_g0") return detail::uq_sl3(false, false);
  throw UnknownPresentation(name);
}

inline Presentation specialize_q(const Presentation& p, const Rational& r) {
  if (r == 0) throw EvalAtZero();
  Presentation out;
  out.name = p.name + "|q=" + rational_str(r);
  out.gens = p.gens;
  out.inhomogeneous_whitelist = p.inhomogeneous_whitelist;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (!p.cleared_factors[i].is_zero() && p.cleared_factors[i].eval(r) == 0)
      throw PoleAtValue(i, "factor " + p.cleared_factors[i].str() + " at q = " + rational_str(r));
    out.relations.push_back(p.relations[i].map_coeffs(
        [&](const Laurent& c) { return Laurent(c.eval(r)); }));
    out.notes.push_back(p.notes[i]);
    out.cleared_factors.push_back(Laurent());
  }
  return out;
}

struct GradingReport {
  std::vector<std::string> violations;
  std::vector<std::string> whitelisted;
  bool ok() const { return violations.empty(); }
};

inline GradingReport validate_grading(const Presentation& p) {
  GradingReport rep;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const NCPoly& r = p.relations[i];
    if (r.is_homogeneous()) {
      // degree-compatible but mixing word lengths (e.g. a product equal to a
      // constant) is worth surfacing even though the grading is respected
      std::set<std::size_t> lens;
      for (const auto& [w, c] : r.terms()) lens.insert(w.size());
      if (lens.size() > 1)
        rep.whitelisted.push_back("relation #" + std::to_string(i + 1) + " (" + r.str() +
                                  "): homogeneous of mixed word length");
      continue;
    }
    if (p.inhomogeneous_whitelist.count(i)) {
      rep.whitelisted.push_back("relation #" + std::to_string(i + 1) + " (" + r.str() +
                                "): inhomogeneous, explicitly whitelisted");
      continue;
    }
    rep.violations.push_back("relation #" + std::to_string(i + 1) + " (" + r.str() +
                             ") is not homogeneous");
  }
  return rep;
}

// --- presentation file format -------------------------------------------
//
//   # comment
//   generators: p1(1,0) p2(1,0) q1(0,1) t(0,-1)
//   p1*q1 - q*q1*p1
//
// One relation per line in the expression grammar; blank lines ignored.

inline Presentation parse_presentation(const std::string& text, const std::string& name = "user") {
  Presentation p;
  p.name = name;
  std::vector<std::pair<std::string, MultiDegree>> gens;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line.substr(0, line.find('#'));
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = s.find_last_not_of(" \t\r");
    s = s.substr(a, b - a + 1);
    if (!have_gens) {
      const std::string prefix = "generators:";
      if (s.rfind(prefix, 0) != 0)
        throw Error("line " + std::to_string(lineno) + ": expected 'generators:' header");
      std::istringstream gs(s.substr(prefix.size()));
      std::string tok;
      while (gs >> tok) {
        std::size_t open = tok.find('(');
        if (open == std::string::npos || tok.back() != ')')
          throw Error("line " + std::to_string(lineno) + ": malformed generator '" + tok + "'");
        MultiDegree d;
        std::string body = tok.substr(open + 1, tok.size() - open - 2);
        if (!body.empty()) {
          std::istringstream ds(body);
          std::string num;
          while (std::getline(ds, num, ',')) d.push_back(std::stoi(num));
        }
        gens.emplace_back(tok.substr(0, open), d);
      }
      p.gens = GeneratorSet::make(gens);
      have_gens = true;
      continue;
    }
    try {
      p.add(s, "line " + std::to_string(lineno));
    } catch (const SyntaxError& e) {
      throw Error("line " + std::to_string(lineno) + ", offset " + std::to_string(e.pos) +
                  ": " + e.what());
    } catch (const UnknownGenerator& e) {
      throw Error("line " + std::to_string(lineno) + ", offset " + std::to_string(e.pos) +
                  ": " + e.what());
    }
  }
  if (!have_gens) throw Error("presentation file has no 'generators:' header");
  return p;
}

inline std::string print_presentation(const Presentation& p) {
  std::string out = "# " + p.name + "\ngenerators:";
  for (std::size_t g = 0; g < p.gens->size(); ++g) {
    out += " " + p.gens->name(static_cast<int>(g)) + "(";
    const MultiDegree& d = p.gens->grade(static_cast<int>(g));
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(d[i]);
    }
    out += ")";
  }
  out += "\n";
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    out += p.relations[i].str() + "  # " + p.notes[i] + "\n";
  return out;
}

}  // namespace shapealg
