#pragma once

// Small explicit modules for the deformed enveloping algebras: the vector
// module, the wedge module, the inverse-determinant line, direct sums and
// coproduct tensor products, the cell-indexed paired vectors with their
// effectiveness ranks, and the exact intertwiner that swaps tensor order.

#include "linalg.hpp"
#include "presentations.hpp"
#include "weyl.hpp"

namespace shapealg {

using Vec = std::vector<Laurent>;
using LMat = linalg::Mat<Laurent>;

struct Module {
  std::string name;
  std::vector<std::string> basis;
  std::vector<Weight> weights;
  std::map<std::string, LMat> action;  // column action: (g.v)_i = sum_j M[i][j] v_j

  std::size_t dim() const { return basis.size(); }

  int index_of(const std::string& b) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == b) return static_cast<int>(i);
    throw Error("module " + name + " has no basis vector '" + b + "'");
  }

  const LMat& matrix(const std::string& gen) const {
    auto it = action.find(gen);
    if (it == action.end())
      throw Error("module " + name + " carries no action of generator '" + gen + "'");
    return it->second;
  }
};

namespace detail {

inline LMat zero_mat(std::size_t n) { return LMat(n, std::vector<Laurent>(n)); }

inline LMat diag_mat(std::initializer_list<Laurent> d) {
  LMat m = zero_mat(d.size());
  std::size_t i = 0;
  for (const Laurent& x : d) {
    m[i][i] = x;
    ++i;
  }
  return m;
}

inline LMat unit_mat(std::size_t n) {
  LMat m = zero_mat(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Laurent(1);
  return m;
}

// single off-diagonal entry: g.basis[from] = basis[to]
inline LMat shift_mat(std::size_t n, std::size_t to, std::size_t from) {
  LMat m = zero_mat(n);
  m[to][from] = Laurent(1);
  return m;
}

inline LMat mat_mul(const LMat& a, const LMat& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  LMat r(n, std::vector<Laurent>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline LMat mat_add(LMat a, const LMat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

inline LMat kron(const LMat& a, const LMat& b) {
  const std::size_t na = a.size(), nb = b.size();
  LMat r = zero_mat(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      if (a[i][j].is_zero()) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          if (!b[k][l].is_zero()) r[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    }
  return r;
}

inline bool mat_is_zero(const LMat& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

}  // namespace detail

inline Vec apply_matrix(const LMat& m, const Vec& v) {
  Vec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] += m[i][j] * v[j];
  return out;
}

inline bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// the natural three-dimensional module on e1, e2, e3
inline const Module& module_v1() {
  static const Module m = [] {
    using namespace detail;
    Module v;
    v.name = "V1";
    v.basis = {"e1", "e2", "e3"};
    v.weights = {{1, 0}, {-1, 1}, {0, -1}};
    const Laurent q = Laurent::q(), qi = Laurent::q(-1), one(1);
    v.action["K1"] = diag_mat({q, qi, one});
    v.action["K1i"] = diag_mat({qi, q, one});
    v.action["K2"] = diag_mat({one, q, qi});
    v.action["K2i"] = diag_mat({one, qi, q});
    v.action["X1"] = shift_mat(3, 0, 1);  // e2 -> e1
    v.action["X2"] = shift_mat(3, 1, 2);  // e3 -> e2
    v.action["Y1"] = shift_mat(3, 1, 0);  // e1 -> e2
    v.action["Y2"] = shift_mat(3, 2, 1);  // e2 -> e3
    return v;
  }();
  return m;
}

// the wedge-square module on the unsigned pairs w12, w13, w23
inline const Module& module_v2() {
  static const Module m = [] {
    using namespace detail;
    Module v;
    v.name = "V2";
    v.basis = {"w12", "w13", "w23"};
    v.weights = {{0, 1}, {1, -1}, {-1, 0}};
    const Laurent q = Laurent::q(), qi = Laurent::q(-1), one(1);
    v.action["K1"] = diag_mat({one, q, qi});
    v.action["K1i"] = diag_mat({one, qi, q});
    v.action["K2"] = diag_mat({q, qi, one});
    v.action["K2i"] = diag_mat({qi, q, one});
    v.action["X1"] = shift_mat(3, 1, 2);  // w23 -> w13
    v.action["X2"] = shift_mat(3, 0, 1);  // w13 -> w12
    v.action["Y1"] = shift_mat(3, 2, 1);  // w13 -> w23
    v.action["Y2"] = shift_mat(3, 1, 0);  // w12 -> w13
    return v;
  }();
  return m;
}

// the inverse-determinant line: every ladder operator acts by zero, and the
// torus acts through the weight (0,-1)
inline const Module& module_vm1() {
  static const Module m = [] {
    using namespace detail;
    Module v;
    v.name = "Vm1";
    v.basis = {"v"};
    v.weights = {{0, -1}};
    v.action["K1"] = diag_mat({Laurent(1)});
    v.action["K1i"] = diag_mat({Laurent(1)});
    v.action["K2"] = diag_mat({Laurent::q(-1)});
    v.action["K2i"] = diag_mat({Laurent::q()});
    for (const char* g : {"X1", "X2", "Y1", "Y2"}) v.action[g] = zero_mat(1);
    return v;
  }();
  return m;
}

// Tensor product action: group-like generators act diagonally
// (K -> K (x) K), raising ones by X -> X (x) K + 1 (x) X, and lowering ones
// by Y -> Y (x) 1 + Ki (x) Y, with the torus element of the matching index.
// This is the opposite orientation to the published comultiplication table;
// it is the unique orientation under which the cell-indexed vector catalog
// spans submodules (see e_vector), and it defines an equally valid module
// structure because flipping the legs of a comultiplication preserves the
// algebra map property.
inline Module tensor(const Module& a, const Module& b) {
  using namespace detail;
  Module t;
  t.name = a.name + "(x)" + b.name;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      t.basis.push_back(a.basis[i] + "(x)" + b.basis[j]);
      t.weights.push_back({a.weights[i].a + b.weights[j].a, a.weights[i].b + b.weights[j].b});
    }
  const LMat ia = unit_mat(a.dim()), ib = unit_mat(b.dim());
  for (const auto& [g, ma] : a.action) {
    auto it = b.action.find(g);
    if (it == b.action.end()) continue;
    const LMat& mb = it->second;
    if (g[0] == 'K') {
      t.action[g] = kron(ma, mb);
    } else if (g[0] == 'X') {
      const std::string k = std::string("K") + g.substr(1);
      t.action[g] = mat_add(kron(ma, b.matrix(k)), kron(ia, mb));
    } else if (g[0] == 'Y') {
      const std::string ki = std::string("K") + g.substr(1) + "i";
      t.action[g] = mat_add(kron(ma, ib), kron(a.matrix(ki), mb));
    } else {
      throw Error("generator '" + g + "' has no coproduct rule");
    }
  }
  return t;
}

inline Module direct_sum(const Module& a, const Module& b) {
  using namespace detail;
  Module s;
  s.name = a.name + "(+)" + b.name;
  s.basis = a.basis;
  s.basis.insert(s.basis.end(), b.basis.begin(), b.basis.end());
  s.weights = a.weights;
  s.weights.insert(s.weights.end(), b.weights.begin(), b.weights.end());
  const std::size_t n = a.dim() + b.dim();
  for (const auto& [g, ma] : a.action) {
    auto it = b.action.find(g);
    if (it == b.action.end()) continue;
    LMat m = zero_mat(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) m[i][j] = ma[i][j];
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) m[a.dim() + i][a.dim() + j] = it->second[i][j];
    s.action[g] = m;
  }
  return s;
}

// the matrix by which a noncommutative polynomial in the generators acts
inline LMat matrix_of(const Module& m, const NCPoly& rel) {
  using namespace detail;
  LMat out = zero_mat(m.dim());
  for (const auto& [w, c] : rel.terms()) {
    LMat term = unit_mat(m.dim());
    for (int g : w) term = mat_mul(term, m.matrix(rel.gens()->name(g)));
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] += c * term[i][j];
  }
  return out;
}

inline bool annihilates(const Module& m, const NCPoly& rel) {
  return detail::mat_is_zero(matrix_of(m, rel));
}

// indices of presentation relations that do not act by zero
inline std::vector<std::size_t> failing_relations(const Module& m, const Presentation& p) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    if (!annihilates(m, p.relations[i])) bad.push_back(i);
  return bad;
}

// canonical rendering, mirroring the polynomial printer: terms in basis
// order, unit coefficients inlined, composite ones parenthesized
inline std::string vec_str(const Module& m, const Vec& v) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Laurent& c = v[i];
    if (c.is_zero()) continue;
    std::string piece;
    bool neg = false;
    if (c.is_unit() || c.is_constant()) {
      Laurent cc = c;
      if (c.terms().begin()->second < 0) {
        neg = true;
        cc = -c;
      }
      piece = cc.is_one() ? m.basis[i] : cc.str() + "*" + m.basis[i];
    } else {
      piece = "(" + c.str() + ")*" + m.basis[i];
    }
    if (first)
      out += (neg ? "-" : "") + piece;
    else
      out += (neg ? " - " : " + ") + piece;
    first = false;
  }
  return first ? "0" : out;
}

namespace detail {

// basis slot of the one-letter family member attached to a group element
inline int family_index(int family, const Perm& w) {
  if (family == 1) return w[0] - 1;  // e_{w(1)}
  int a = w[0], b = w[1];
  if (a > b) std::swap(a, b);
  if (a == 1) return b == 2 ? 0 : 1;  // w12, w13
  return 2;                           // w23
}

}  // namespace detail

// the tensor module hosting a paired family; families are labelled by the
// module in each slot (1 for the vector module, 2 for the wedge module)
inline const Module& family_module(int left, int right) {
  static const Module m11 = tensor(module_v1(), module_v1());
  static const Module m12 = tensor(module_v1(), module_v2());
  static const Module m21 = tensor(module_v2(), module_v1());
  static const Module m22 = tensor(module_v2(), module_v2());
  if (left == 1 && right == 1) return m11;
  if (left == 1 && right == 2) return m12;
  if (left == 2 && right == 1) return m21;
  if (left == 2 && right == 2) return m22;
  throw Error("family labels must be 1 or 2");
}

// The paired vector of a cell: a singleton contributes the plain tensor of
// its two family members; a pair puts the shorter member first and weights
// the swapped term by q.
inline Vec e_vector(const Orthocell& c, int left, int right) {
  const Module& m = family_module(left, right);
  const std::size_t dr = (right == 1 ? module_v1() : module_v2()).dim();
  Vec v(m.dim());
  auto slot = [&](const Perm& x, const Perm& y) {
    return static_cast<std::size_t>(detail::family_index(left, x)) * dr +
           static_cast<std::size_t>(detail::family_index(right, y));
  };
  if (c.members.size() == 1) {
    v[slot(c.members[0], c.members[0])] += Laurent(1);
    return v;
  }
  const Perm& rep = c.rep();
  const Perm& other = c.members[0] == rep ? c.members[1] : c.members[0];
  v[slot(other, rep)] += Laurent(1);
  v[slot(rep, other)] += Laurent::q();
  return v;
}

// Invariant complements of the cell-vector spans inside each tensor square:
// antisymmetrized pairs for the equal-slot families, and a single weighted
// diagonal line for the mixed families.
inline std::vector<Vec> supplementary_family(int left, int right) {
  const Module& m = family_module(left, right);
  const std::vector<std::string>& b =
      (left == 1 ? module_v1() : module_v2()).basis;
  std::vector<Vec> out;
  auto unit = [&](const std::string& x, const std::string& y) {
    Vec v(m.dim());
    v[static_cast<std::size_t>(m.index_of(x + "(x)" + y))] = Laurent(1);
    return v;
  };
  if (left == right) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        Vec v = unit(b[i], b[j]);
        Vec w = unit(b[j], b[i]);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= Laurent::q(-1) * w[k];
        out.push_back(std::move(v));
      }
    return out;
  }
  // e1(x)w23 - q^-1 e2(x)w13 + q^-2 e3(x)w12 and its slot-swapped partner
  const std::vector<std::string> l = (left == 1 ? module_v1() : module_v2()).basis;
  const std::vector<std::string> r = (right == 1 ? module_v1() : module_v2()).basis;
  Vec s(m.dim());
  for (int k = 0; k < 3; ++k) {
    const std::string x = (left == 1 ? l[static_cast<std::size_t>(k)] : l[static_cast<std::size_t>(2 - k)]);
    const std::string y = (right == 1 ? r[static_cast<std::size_t>(k)] : r[static_cast<std::size_t>(2 - k)]);
    const int sign = (k == 1 ? -1 : 1);
    const int pow = (left == 1 ? -k : k - 2);
    s[static_cast<std::size_t>(m.index_of(x + "(x)" + y))] = Laurent::term(sign, pow);
  }
  out.push_back(std::move(s));
  return out;
}

// the invariant line inside the (1,2) family
inline Vec supplementary_vector() { return supplementary_family(1, 2)[0]; }

// dimension of the smallest action-stable subspace containing the rows
inline int span_closure(const Module& m, linalg::Mat<linalg::Frac> rows) {
  using linalg::Frac;
  int r = linalg::rank(rows);
  bool grew = true;
  while (grew) {
    grew = false;
    linalg::Mat<Frac> next = rows;
    for (const auto& row : rows)
      for (const auto& [g, mat] : m.action) {
        std::vector<Frac> image(row.size(), Frac(0));
        for (std::size_t i = 0; i < m.dim(); ++i)
          for (std::size_t j = 0; j < m.dim(); ++j)
            if (!mat[i][j].is_zero() && !row[j].is_zero())
              image[i] += Frac(mat[i][j]) * row[j];
        next.push_back(std::move(image));
      }
    int nr = linalg::rank(next);
    if (nr > r) {
      r = nr;
      rows = std::move(next);
      grew = true;
    }
  }
  return r;
}

struct EffectivenessReport {
  int family_left = 0, family_right = 0;
  int trivial_span = 0;  // rank of the six singleton vectors
  int span = 0;          // rank of all fourteen vectors
  int closure = 0;       // rank after closing the fourteen under the action
  int supplemented = 0;  // rank together with the supplementary family
  std::vector<std::string> effective_pairs;  // pair cells outside the singleton span
};

inline EffectivenessReport effectiveness(int left, int right) {
  using linalg::Frac;
  EffectivenessReport rep;
  rep.family_left = left;
  rep.family_right = right;
  linalg::Mat<Frac> triv;
  for (const Orthocell& c : orthocells())
    if (c.members.size() == 1) {
      Vec v = e_vector(c, left, right);
      triv.push_back(std::vector<Frac>(v.begin(), v.end()));
    }
  rep.trivial_span = linalg::rank(triv);
  linalg::Mat<Frac> all = triv;
  for (const Orthocell& c : orthocells()) {
    if (c.members.size() != 2) continue;
    Vec v = e_vector(c, left, right);
    std::vector<Frac> row(v.begin(), v.end());
    if (!linalg::in_row_span(triv, row)) rep.effective_pairs.push_back(c.name);
    all.push_back(std::move(row));
  }
  rep.span = linalg::rank(all);
  rep.closure = span_closure(family_module(left, right), all);
  for (const Vec& s : supplementary_family(left, right))
    all.push_back(std::vector<Frac>(s.begin(), s.end()));
  rep.supplemented = linalg::rank(all);
  return rep;
}

using FVec = std::vector<linalg::Frac>;
using FMat = linalg::Mat<linalg::Frac>;

inline FVec apply_matrix(const FMat& m, const Vec& v) {
  FVec out(m.size(), linalg::Frac(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!m[i][j].is_zero() && !v[j].is_zero())
        out[i] += m[i][j] * linalg::Frac(v[j]);
  return out;
}

inline bool vec_is_zero(const FVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// exact conversion back to polynomial scalars; throws NotDivisible if any
// entry is a genuine fraction
inline Vec to_laurent_vec(const FVec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.as_laurent());
  return out;
}

struct Intertwiner {
  FMat matrix;           // normalized map, zero on the invariant line
  int hom_dim = 0;       // maps defined on the span of the cell vectors: 1
  int full_hom_dim = 0;  // commutant over the whole tensor square: 2
};

// The module map V1(x)V2 -> V2(x)V1 determined by the cell-vector span.
// Maps from the span of the fourteen (1,2) vectors to the (2,1) tensor
// square form a line; the returned matrix is the extension by zero across
// the invariant complement, normalized on the highest-weight tensor
// e1(x)w12.  Some entries are genuine fractions (denominator q^4+q^2+1),
// so the matrix stays over the fraction field.
inline Intertwiner intertwiner_r12() {
  using linalg::Frac;
  const Module& src = family_module(1, 2);
  const Module& dst = family_module(2, 1);
  const int n = static_cast<int>(src.dim());
  auto col = [&](int i, int j) { return i * n + j; };

  linalg::Mat<Frac> eqs;
  auto add_commutation_rows = [&](const LMat& a, const LMat& b) {
    // R a = b R, one equation per matrix position (i, j)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Frac> row(static_cast<std::size_t>(n * n), Frac(0));
        bool nonzero = false;
        for (int w = 0; w < n; ++w) {
          if (!a[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)].is_zero()) {
            row[static_cast<std::size_t>(col(i, w))] +=
                Frac(a[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)]);
            nonzero = true;
          }
          if (!b[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)].is_zero()) {
            row[static_cast<std::size_t>(col(w, j))] -=
                Frac(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)]);
            nonzero = true;
          }
        }
        if (nonzero) eqs.push_back(std::move(row));
      }
  };
  for (const auto& [g, ma] : src.action) add_commutation_rows(ma, dst.matrix(g));

  Intertwiner out;
  out.full_hom_dim = static_cast<int>(linalg::kernel_basis(eqs, n * n).size());

  // restricting to the cell-vector span is the same as extending by zero on
  // its invariant complement, so solve with the complement forced to zero
  const Vec s = supplementary_vector();
  for (int i = 0; i < n; ++i) {
    std::vector<Frac> row(static_cast<std::size_t>(n * n), Frac(0));
    for (int v = 0; v < n; ++v)
      if (!s[static_cast<std::size_t>(v)].is_zero())
        row[static_cast<std::size_t>(col(i, v))] = Frac(s[static_cast<std::size_t>(v)]);
    eqs.push_back(std::move(row));
  }
  linalg::Mat<Frac> ker = linalg::kernel_basis(eqs, n * n);
  out.hom_dim = static_cast<int>(ker.size());
  if (out.hom_dim != 1)
    throw Error("intertwiner space is " + std::to_string(out.hom_dim) +
                "-dimensional, expected a line");

  const int anchor_from = src.index_of("e1(x)w12");
  const int anchor_to = dst.index_of("w12(x)e1");
  const Frac pivot = ker[0][static_cast<std::size_t>(col(anchor_to, anchor_from))];
  if (pivot.is_zero()) throw Error("intertwiner vanishes on the highest-weight tensor");
  out.matrix = FMat(static_cast<std::size_t>(n),
                    FVec(static_cast<std::size_t>(n), Frac(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ker[0][static_cast<std::size_t>(col(i, j))] / pivot;
  return out;
}

}  // namespace shapealg
