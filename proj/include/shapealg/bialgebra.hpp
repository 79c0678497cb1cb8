#pragma once
// Comultiplication layer for the quantum enveloping algebra of sl3: the
// generator coproduct table, a syntactic closure check telling which generator
// subsets span sub-bialgebras, a representation-level membership oracle at
// rational parameter values, and an exact check that the comultiplication
// respects every defining relation on a tensor square of modules.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shapealg/presentations.hpp"
#include "shapealg/repmod.hpp"

namespace shapealg {

// One comultiplication term: coeff * (left word) tensor (right word). Words
// are spelled as generator-name sequences so they can be interpreted both
// syntactically and inside any module carrying the generator action.
struct CoprodTerm {
  Laurent coeff;
  std::vector<std::string> left;
  std::vector<std::string> right;
};

struct CoprodExpr {
  std::vector<CoprodTerm> terms;

  static std::string side_str(const std::vector<std::string>& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += "*";
      out += w[i];
    }
    return out;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) out += " + ";
      if (!(terms[i].coeff == Laurent(1))) out += "(" + terms[i].coeff.str() + ")*";
      out += side_str(terms[i].left) + "(x)" + side_str(terms[i].right);
    }
    return out;
  }
};

// The generator coproduct table: group-like torus elements, and skew
// primitives for the ladder operators (the raising family carries its torus
// element on the left leg, the lowering family carries the inverse on the
// right leg).
inline CoprodExpr coproduct(const std::string& g) {
  CoprodExpr d;
  if (g == "K1" || g == "K1i" || g == "K2" || g == "K2i") {
    d.terms.push_back({Laurent(1), {g}, {g}});
    return d;
  }
  if (g == "X1" || g == "X2") {
    const std::string k = (g == "X1") ? "K1" : "K2";
    d.terms.push_back({Laurent(1), {g}, {}});
    d.terms.push_back({Laurent(1), {k}, {g}});
    return d;
  }
  if (g == "Y1" || g == "Y2") {
    const std::string ki = (g == "Y1") ? "K1i" : "K2i";
    d.terms.push_back({Laurent(1), {g}, {ki}});
    d.terms.push_back({Laurent(1), {}, {g}});
    return d;
  }
  throw Error("no coproduct table entry for generator '" + g + "'");
}

// Does the span of a generator subset close under the coproduct? The check is
// syntactic: every symbol occurring in any tensor leg of any Delta(g) must
// itself belong to the subset. Witnesses list (generator, offending symbol).
struct SubBialgebraReport {
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> witnesses;

  std::string str() const {
    if (pass) return "closed under the coproduct";
    std::string out = "not closed under the coproduct:";
    for (const auto& [g, s] : witnesses)
      out += " Delta(" + g + ") involves " + s + ";";
    out.pop_back();
    return out;
  }
};

inline SubBialgebraReport sub_bialgebra_check(const std::vector<std::string>& gens) {
  const std::set<std::string> allowed(gens.begin(), gens.end());
  SubBialgebraReport rep;
  std::set<std::pair<std::string, std::string>> seen;
  for (const std::string& g : gens) {
    for (const CoprodTerm& t : coproduct(g).terms) {
      for (const auto* side : {&t.left, &t.right})
        for (const std::string& s : *side)
          if (!allowed.count(s) && seen.insert({g, s}).second) {
            rep.pass = false;
            rep.witnesses.emplace_back(g, s);
          }
    }
  }
  return rep;
}

inline SubBialgebraReport sub_bialgebra_check(const Gens& gens) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens->size(); ++i)
    names.push_back(gens->name(static_cast<int>(i)));
  return sub_bialgebra_check(names);
}

// Representation-level corroboration: evaluate the generator images of a
// module at a nonzero rational parameter value and close their unital span
// under multiplication; report whether the target generator's image lies in
// that matrix algebra. A negative answer certifies the target is not
// expressible in the subset on this module; a positive answer is only
// module-relative.
inline bool matrix_membership_check(const std::string& target,
                                    const std::vector<std::string>& gens,
                                    const Module& m, const Rational& r) {
  if (r == 0) throw EvalAtZero();
  const std::size_t n = m.dim();
  using RMat = linalg::Mat<Rational>;
  const auto flatten = [n](const RMat& a) {
    std::vector<Rational> v;
    v.reserve(n * n);
    for (const auto& row : a)
      for (const auto& x : row) v.push_back(x);
    return v;
  };
  const auto rat_mul = [n](const RMat& a, const RMat& b) {
    RMat c(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
      }
    return c;
  };

  std::vector<RMat> images;
  images.reserve(gens.size());
  for (const std::string& g : gens) images.push_back(linalg::eval_at(m.matrix(g), r));

  linalg::Mat<Rational> rows;  // kept in reduced echelon form
  std::vector<RMat> frontier;
  const auto add = [&](const RMat& cand, std::vector<RMat>& next) {
    auto ext = rows;
    ext.push_back(flatten(cand));
    auto ech = linalg::rref(ext);
    if (static_cast<int>(ech.rows.size()) > static_cast<int>(rows.size())) {
      rows = std::move(ech.rows);
      next.push_back(cand);
    }
  };

  RMat ident(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) ident[i][i] = 1;
  add(ident, frontier);
  for (const RMat& im : images) add(im, frontier);
  while (!frontier.empty()) {
    std::vector<RMat> next;
    for (const RMat& w : frontier)
      for (const RMat& im : images) add(rat_mul(w, im), next);
    frontier = std::move(next);
  }
  return linalg::in_row_span(rows, flatten(linalg::eval_at(m.matrix(target), r)));
}

// The module both relation-level checks default to: the direct sum of the two
// defining three-dimensional modules.
inline const Module& default_check_module() {
  static const Module m = direct_sum(module_v1(), module_v2());
  return m;
}

namespace detail {

// Image of Delta(g) on m (x) m as a matrix of size dim^2.
inline LMat coproduct_matrix(const std::string& g, const Module& m) {
  const std::size_t n = m.dim();
  LMat out = zero_mat(n * n);
  for (const CoprodTerm& t : coproduct(g).terms) {
    LMat l = unit_mat(n);
    for (const std::string& s : t.left) l = mat_mul(l, m.matrix(s));
    LMat r = unit_mat(n);
    for (const std::string& s : t.right) r = mat_mul(r, m.matrix(s));
    LMat k = kron(l, r);
    for (auto& row : k)
      for (auto& x : row) x = x * t.coeff;
    out = mat_add(std::move(out), k);
  }
  return out;
}

}  // namespace detail

struct CoprodRelationReport {
  bool zero = true;
  std::string relation;

  std::string str() const {
    return relation + (zero ? ": coproduct image vanishes" : ": coproduct image is NONZERO");
  }
};

// Apply the coproduct to a defining relation letter by letter and verify the
// resulting operator vanishes on m (x) m, exactly in the parameter. Passing
// for every defining relation certifies (on this module) that the coproduct
// table extends to an algebra morphism.
inline CoprodRelationReport coproduct_relation_check(const NCPoly& rel, const Module& m) {
  const std::size_t n = m.dim();
  std::map<std::string, LMat> table;  // memoized per-generator images on m (x) m
  const auto delta = [&](const std::string& g) -> const LMat& {
    auto it = table.find(g);
    if (it == table.end()) it = table.emplace(g, detail::coproduct_matrix(g, m)).first;
    return it->second;
  };

  LMat acc = detail::zero_mat(n * n);
  for (const auto& [w, c] : rel.terms()) {
    LMat term = detail::unit_mat(n * n);
    for (int g : w) term = detail::mat_mul(term, delta(rel.gens()->name(g)));
    for (auto& row : term)
      for (auto& x : row) x = x * c;
    acc = detail::mat_add(std::move(acc), term);
  }
  CoprodRelationReport rep;
  rep.zero = detail::mat_is_zero(acc);
  rep.relation = rel.str();
  return rep;
}

inline CoprodRelationReport coproduct_relation_check(const NCPoly& rel) {
  return coproduct_relation_check(rel, default_check_module());
}

// Convenience sweep used by the command-line surface and the acceptance
// checks: run the relation check across a whole presentation.
inline std::vector<CoprodRelationReport> coproduct_relation_sweep(const Presentation& p,
                                                                  const Module& m) {
  std::vector<CoprodRelationReport> out;
  out.reserve(p.relations.size());
  for (const NCPoly& rel : p.relations) out.push_back(coproduct_relation_check(rel, m));
  return out;
}

inline std::vector<CoprodRelationReport> coproduct_relation_sweep(const Presentation& p) {
  return coproduct_relation_sweep(p, default_check_module());
}

}  // namespace shapealg
