#pragma once

// The symmetric group on three letters acting on integral weights, the
// dimension polynomial, and the pinned catalog of orthogonality cells
// used to organize paired basis vectors.

#include <algorithm>
#include <array>

#include "scalars.hpp"

namespace shapealg {

struct NegativeWeight : Error {
  NegativeWeight() : Error("dimension requested for a weight outside the dominant cone") {}
};

// one-line notation: w[i-1] = w(i), entries 1..3
using Perm = std::array<int, 3>;

inline Perm identity_perm() { return {1, 2, 3}; }
inline Perm s1() { return {2, 1, 3}; }
inline Perm s2() { return {1, 3, 2}; }

// (v o w)(i) = v(w(i))
inline Perm compose(const Perm& v, const Perm& w) {
  return {v[static_cast<std::size_t>(w[0] - 1)], v[static_cast<std::size_t>(w[1] - 1)],
          v[static_cast<std::size_t>(w[2] - 1)]};
}

inline int perm_length(const Perm& w) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(j)]) ++inv;
  return inv;
}

inline std::string perm_str(const Perm& w) {
  std::string s;
  for (int x : w) s += static_cast<char>('0' + x);
  return s;
}

// all six elements in lexicographic one-line order
inline const std::vector<Perm>& weyl_elements() {
  static const std::vector<Perm> all = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                        {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  return all;
}

// weight a*f1 + b*f2 in fundamental-weight coordinates
struct Weight {
  int a = 0;
  int b = 0;
  bool operator==(const Weight& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// Reflection action: the weight is lifted to partition-style coordinates
// (a+b, b, 0), the permutation moves positions, and the differences come
// back.  The two simple reflections act by (a,b) -> (-a, a+b) and
// (a,b) -> (a+b, -b).
inline Weight act(const Perm& w, const Weight& l) {
  const int x[3] = {l.a + l.b, l.b, 0};
  int y[3];
  for (int i = 0; i < 3; ++i) y[w[static_cast<std::size_t>(i)] - 1] = x[i];
  return {y[0] - y[1], y[1] - y[2]};
}

// distinct orbit weights, in the order their first producers are listed
inline std::vector<Weight> orbit(const Weight& l) {
  std::vector<Weight> out;
  for (const Perm& w : weyl_elements()) {
    Weight m = act(w, l);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

// dimension of the simple module with highest weight n1*f1 + n2*f2
inline long long weyl_dim(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw NegativeWeight();
  return static_cast<long long>(n1 + 1) * (n2 + 1) * (n1 + n2 + 2) / 2;
}

// A cell is either a single group element or a pair relating an element
// with its product by one simple reflection, on the recorded side.
struct Orthocell {
  std::string name;
  std::vector<Perm> members;  // lexicographically sorted, size 1 or 2
  int root = 0;               // 0 for singletons, else 1 or 2
  char side = '-';            // 'L' or 'R' for pairs

  // the longer member carries the deformation parameter in paired vectors
  const Perm& rep() const {
    if (members.size() == 1) return members[0];
    return perm_length(members[0]) >= perm_length(members[1]) ? members[0] : members[1];
  }
};

inline const std::vector<Orthocell>& orthocells() {
  static const std::vector<Orthocell> cells = [] {
    std::vector<Orthocell> v;
    for (const Perm& w : weyl_elements()) v.push_back({"W" + perm_str(w), {w}, 0, '-'});
    auto pair = [&](const char* name, Perm x, Perm y, int root, char side) {
      if (perm_str(y) < perm_str(x)) std::swap(x, y);
      v.push_back({name, {x, y}, root, side});
    };
    pair("C1", {1, 2, 3}, {2, 1, 3}, 1, 'L');
    pair("C2", {1, 3, 2}, {2, 3, 1}, 1, 'L');
    pair("C3", {3, 1, 2}, {3, 2, 1}, 1, 'L');
    pair("C4", {1, 2, 3}, {1, 3, 2}, 2, 'L');
    pair("C5", {2, 1, 3}, {3, 1, 2}, 2, 'L');
    pair("C6", {2, 3, 1}, {3, 2, 1}, 2, 'L');
    pair("C7", {1, 3, 2}, {3, 1, 2}, 1, 'R');
    pair("C8", {2, 1, 3}, {2, 3, 1}, 2, 'R');
    return v;
  }();
  return cells;
}

inline const Orthocell& orthocell(const std::string& name) {
  for (const Orthocell& c : orthocells())
    if (c.name == name) return c;
  throw Error("unknown cell '" + name + "'");
}

}  // namespace shapealg
