#pragma once

// Exact dense linear algebra used by the module, pairing, and counting
// layers: reduced fractions of Laurent polynomials, reduced row echelon
// form over any exact field, kernel bases, and denominator clearing.

#include <vector>

#include "scalars.hpp"

namespace shapealg {
namespace linalg {

namespace detail {

// coefficient vector of the shifted polynomial, constant term first
inline std::vector<Rational> to_vec(const Laurent& a) {
  std::vector<Rational> v(static_cast<std::size_t>(a.max_exp() - a.min_exp()) + 1);
  for (const auto& [k, c] : a.terms()) v[static_cast<std::size_t>(k - a.min_exp())] = c;
  return v;
}

inline void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// polynomial remainder a mod b; b nonzero, vectors trimmed
inline std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[a.size() - b.size() + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Laurent from_vec(const std::vector<Rational>& v) {
  Laurent out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out += Laurent::term(v[i], static_cast<int>(i));
  return out;
}

}  // namespace detail

// Divide out the unit part: the unique associate that is an ordinary
// polynomial with nonzero constant term and leading coefficient 1.
inline Laurent monic_associate(const Laurent& a) {
  if (a.is_zero()) return a;
  return a.exact_div(Laurent::term(a.terms().rbegin()->second, a.min_exp()));
}

// gcd in Q[q,q^-1], returned in monic-associate form; gcd(0,0) = 0
inline Laurent poly_gcd(const Laurent& a, const Laurent& b) {
  if (a.is_zero()) return monic_associate(b);
  if (b.is_zero()) return monic_associate(a);
  std::vector<Rational> x = detail::to_vec(a), y = detail::to_vec(b);
  while (!y.empty()) {
    std::vector<Rational> r = detail::poly_rem(std::move(x), y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic_associate(detail::from_vec(x));
}

inline Laurent poly_lcm(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return Laurent();
  return monic_associate(a * b.exact_div(poly_gcd(a, b)));
}

// Reduced fraction of Laurent polynomials; the denominator is kept in
// monic-associate form, so equal fractions have equal representations.
struct Frac {
  Laurent num;
  Laurent den{1};

  Frac() = default;
  Frac(int c) : num(c) {}
  Frac(Laurent n) : num(std::move(n)) {}
  Frac(const Laurent& n, const Laurent& d) {
    if (d.is_zero()) throw DivisionByZero();
    if (n.is_zero()) return;
    const Laurent g = poly_gcd(n, d);
    num = n.exact_div(g);
    Laurent dd = d.exact_div(g);
    const Laurent unit = Laurent::term(dd.terms().rbegin()->second, dd.min_exp());
    num = num.exact_div(unit);
    den = dd.exact_div(unit);
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_laurent() const { return den.is_one(); }

  Laurent as_laurent() const {
    if (den.is_one()) return num;
    return num.exact_div(den);  // throws NotDivisible when truly fractional
  }

  Frac operator-() const {
    Frac r = *this;
    r.num = -r.num;
    return r;
  }
  Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
  Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
  Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
  Frac operator/(const Frac& o) const {
    if (o.is_zero()) throw DivisionByZero();
    return Frac(num * o.den, den * o.num);
  }
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Frac& o) const { return !(*this == o); }

  std::string str() const {
    if (den.is_one()) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
  }
};

inline bool fzero(const Rational& x) { return x == 0; }
inline bool fzero(const Frac& x) { return x.is_zero(); }

template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
struct Echelon {
  Mat<F> rows;                 // nonzero rows of the reduced echelon form
  std::vector<int> pivot_col;  // one entry per row, strictly increasing
};

// Reduced row echelon form with deterministic pivoting (first nonzero row).
template <class F>
Echelon<F> rref(Mat<F> m) {
  const int R = static_cast<int>(m.size());
  const int C = R ? static_cast<int>(m[0].size()) : 0;
  Echelon<F> e;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int pr = -1;
    for (int i = r; i < R; ++i)
      if (!fzero(m[i][c])) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(pr)]);
    auto& row = m[static_cast<std::size_t>(r)];
    const F p = row[static_cast<std::size_t>(c)];
    for (int j = c; j < C; ++j) row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)] / p;
    for (int i = 0; i < R; ++i) {
      if (i == r) continue;
      const F f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (fzero(f)) continue;
      for (int j = c; j < C; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * row[static_cast<std::size_t>(j)];
    }
    e.pivot_col.push_back(c);
    ++r;
  }
  m.resize(static_cast<std::size_t>(r));
  e.rows = std::move(m);
  return e;
}

template <class F>
int rank(const Mat<F>& m) {
  return static_cast<int>(rref(m).pivot_col.size());
}

// true when v lies in the row span of m
template <class F>
bool in_row_span(const Mat<F>& m, const std::vector<F>& v) {
  Mat<F> ext = m;
  ext.push_back(v);
  return rank(m) == rank(ext);
}

// Right kernel basis, one vector per free column, in column order: the
// unique basis whose free-coordinate block is an identity matrix.
template <class F>
Mat<F> kernel_basis(const Mat<F>& m, int cols) {
  Echelon<F> e = rref(m);
  std::vector<int> pivot_of_col(static_cast<std::size_t>(cols), -1);
  for (std::size_t k = 0; k < e.pivot_col.size(); ++k)
    pivot_of_col[static_cast<std::size_t>(e.pivot_col[k])] = static_cast<int>(k);
  Mat<F> basis;
  for (int f = 0; f < cols; ++f) {
    if (pivot_of_col[static_cast<std::size_t>(f)] >= 0) continue;
    std::vector<F> x(static_cast<std::size_t>(cols), F(0));
    x[static_cast<std::size_t>(f)] = F(1);
    for (std::size_t k = 0; k < e.pivot_col.size(); ++k)
      x[static_cast<std::size_t>(e.pivot_col[k])] = -e.rows[k][static_cast<std::size_t>(f)];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Scale a fraction vector to a primitive Laurent vector: denominators are
// cleared, the entry gcd divided out, and the first nonzero entry made a
// monic associate, so the result is unique up to nothing at all.
inline std::vector<Laurent> primitive_laurent(const std::vector<Frac>& v) {
  Laurent l(1);
  for (const auto& x : v)
    if (!x.is_zero()) l = poly_lcm(l, x.den);
  std::vector<Laurent> out;
  out.reserve(v.size());
  for (const auto& x : v)
    out.push_back(x.num * l.exact_div(x.den));
  Laurent g;
  for (const auto& x : out) g = poly_gcd(g, x);
  if (g.is_zero()) return out;
  for (auto& x : out) x = x.exact_div(g);
  // shift the whole vector so the lowest exponent present is zero, then make
  // the first nonzero entry's top coefficient one
  bool any = false;
  int shift = 0;
  for (const auto& x : out)
    if (!x.is_zero()) {
      shift = any ? std::min(shift, x.min_exp()) : x.min_exp();
      any = true;
    }
  if (!any) return out;
  for (const auto& x : out) {
    if (x.is_zero()) continue;
    const Laurent unit = Laurent::term(x.terms().rbegin()->second, shift);
    for (auto& y : out) y = y.exact_div(unit);
    break;
  }
  return out;
}

inline Mat<Frac> to_fracs(const Mat<Laurent>& m) {
  Mat<Frac> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) out[i].emplace_back(x);
  }
  return out;
}

// Evaluate a Laurent matrix at a rational point (q = r, r != 0).
inline Mat<Rational> eval_at(const Mat<Laurent>& m, const Rational& r) {
  Mat<Rational> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) out[i].push_back(x.eval(r));
  }
  return out;
}

inline Mat<Rational> eval_at(const Mat<Frac>& m, const Rational& r) {
  Mat<Rational> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) {
      const Rational den = x.den.eval(r);
      if (den == 0) throw DivisionByZero();
      out[i].push_back(x.num.eval(r) / den);
    }
  }
  return out;
}

}  // namespace linalg
}  // namespace shapealg
