#pragma once
// Brute-force dimension oracles, deliberately independent of the rewriting
// engine: graded dimensions of commutative quotients by exact rational rank,
// truncated filtered counts for localized inhomogeneous quotients, and table
// comparison. Two routes to the same numbers is the whole point, so nothing
// here may touch normal forms or completion.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapealg/linalg.hpp"
#include "shapealg/presentations.hpp"
#include "shapealg/table.hpp"

namespace shapealg {

struct NotClassical : Error {
  NotClassical() : Error("presentation coefficients involve the parameter q") {}
};

namespace oracle_detail {

using Expo = std::vector<int>;               // exponent vector over the generators
using CPoly = std::map<Expo, Rational>;      // commutative polynomial
using BigInt = boost::multiprecision::cpp_int;

// Forget the order of letters in every word; requires constant coefficients.
inline CPoly abelianize(const NCPoly& p) {
  CPoly out;
  for (const auto& [w, c] : p.terms()) {
    if (!c.is_constant()) throw NotClassical();
    Expo e(p.gens()->size(), 0);
    for (int g : w) e[static_cast<std::size_t>(g)]++;
    auto it = out.emplace(std::move(e), Rational(0)).first;
    it->second += c.constant_value();
    if (it->second == 0) out.erase(it);
  }
  return out;
}

inline MultiDegree expo_degree(const GeneratorSet& gs, const Expo& e) {
  MultiDegree d(gs.grading_dim(), 0);
  for (std::size_t g = 0; g < e.size(); ++g)
    for (int k = 0; k < e[g]; ++k) d = d + gs.grade(static_cast<int>(g));
  return d;
}

inline int expo_length(const Expo& e) {
  int n = 0;
  for (int k : e) n += k;
  return n;
}

inline bool leq_componentwise(const MultiDegree& a, const MultiDegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline MultiDegree degree_sub(MultiDegree a, const MultiDegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// All exponent vectors of exactly the target multidegree. Requires every
// generator grade to be componentwise nonnegative and nonzero, otherwise the
// enumeration would not terminate.
inline void enum_degree_rec(const GeneratorSet& gs, const MultiDegree& remaining, std::size_t g,
                            Expo& cur, std::vector<Expo>& out) {
  if (g == gs.size()) {
    if (std::all_of(remaining.begin(), remaining.end(), [](int x) { return x == 0; }))
      out.push_back(cur);
    return;
  }
  MultiDegree rem = remaining;
  const MultiDegree& grade = gs.grade(static_cast<int>(g));
  for (int k = 0;; ++k) {
    cur[g] = k;
    enum_degree_rec(gs, rem, g + 1, cur, out);
    rem = degree_sub(rem, grade);
    if (!std::all_of(rem.begin(), rem.end(), [](int x) { return x >= 0; })) break;
  }
  cur[g] = 0;
}

inline std::vector<Expo> monomials_of_degree(const GeneratorSet& gs, const MultiDegree& target) {
  std::vector<Expo> out;
  Expo cur(gs.size(), 0);
  enum_degree_rec(gs, target, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// All exponent vectors of total length exactly n.
inline void enum_length_rec(std::size_t gens, int remaining, std::size_t g, Expo& cur,
                            std::vector<Expo>& out) {
  if (g + 1 == gens) {
    cur[g] = remaining;
    out.push_back(cur);
    cur[g] = 0;
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[g] = k;
    enum_length_rec(gens, remaining - k, g + 1, cur, out);
  }
  cur[g] = 0;
}

inline std::vector<Expo> monomials_of_length(std::size_t gens, int n) {
  std::vector<Expo> out;
  Expo cur(gens, 0);
  enum_length_rec(gens, n, 0, cur, out);
  return out;
}

inline Expo expo_add(const Expo& a, const Expo& b) {
  Expo r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

// Fraction-free integer elimination (Bareiss), used as a second, independent
// rank method for the agreement property.
inline int bareiss_rank(std::vector<std::vector<BigInt>> m) {
  const std::size_t R = m.size();
  const std::size_t C = R ? m[0].size() : 0;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t pr = r;
    while (pr < R && m[pr][c] == 0) ++pr;
    if (pr == R) continue;
    std::swap(m[r], m[pr]);
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

// Incremental rank of a sparse rational matrix. Rows live as ordered
// column->value maps; each pivot row is normalized to leading coefficient 1
// and filed under its leading column. An incoming row is reduced against the
// pivots until it either exposes a fresh leading column (new pivot) or
// cancels to zero. Feeding rows in batches gives the rank of every prefix.
class SparseEliminator {
 public:
  using Row = std::map<std::size_t, Rational>;

  // Returns true when the row was independent of the pivots seen so far.
  bool add(Row row) {
    while (!row.empty()) {
      const std::size_t lead = row.begin()->first;
      const auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        const Rational inv = row.begin()->second;
        for (auto& [c, v] : row) v /= inv;
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      const Rational factor = row.begin()->second;
      for (const auto& [c, v] : it->second) {
        const auto jt = row.find(c);
        if (jt == row.end()) {
          row.emplace(c, -factor * v);
        } else {
          jt->second -= factor * v;
          if (jt->second == 0) row.erase(jt);
        }
      }
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, Row> pivots_;
};

inline std::vector<std::vector<BigInt>> integerize(const linalg::Mat<Rational>& m) {
  std::vector<std::vector<BigInt>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    BigInt l = 1;
    for (const Rational& x : row) l = lcm(l, denominator(x));
    std::vector<BigInt> irow;
    irow.reserve(row.size());
    for (const Rational& x : row)
      irow.push_back(numerator(x) * (l / denominator(x)));
    out.push_back(std::move(irow));
  }
  return out;
}

inline void require_enumerable_grading(const GeneratorSet& gs) {
  if (gs.grading_dim() == 0)
    throw Error("presentation has no grading to enumerate by");
  for (std::size_t g = 0; g < gs.size(); ++g) {
    const MultiDegree& d = gs.grade(static_cast<int>(g));
    bool nonzero = false;
    for (int x : d) {
      if (x < 0)
        throw Error("generator '" + gs.name(static_cast<int>(g)) +
                    "' has a negative grade; use the filtered length oracle");
      if (x > 0) nonzero = true;
    }
    if (!nonzero)
      throw Error("generator '" + gs.name(static_cast<int>(g)) +
                  "' has grade zero; degree enumeration would not terminate");
  }
}

}  // namespace oracle_detail

// Graded dimensions of the commutative quotient: for each multidegree within
// the total-degree bound, count monomials and subtract the exact rational
// rank of all relation multiples landing in that degree. Relations must be
// graded-homogeneous with constant coefficients.
inline DimTable commutative_dims(const Presentation& p, int max_total_deg) {
  using namespace oracle_detail;
  const GeneratorSet& gs = *p.gens;
  require_enumerable_grading(gs);

  std::vector<CPoly> rels;
  std::vector<MultiDegree> rel_deg;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    CPoly c = abelianize(p.relations[i]);
    if (c.empty()) continue;
    MultiDegree d = expo_degree(gs, c.begin()->first);
    for (const auto& [e, coef] : c)
      if (expo_degree(gs, e) != d)
        throw Error("relation " + std::to_string(i) +
                    " is not graded-homogeneous; use the filtered length oracle");
    rels.push_back(std::move(c));
    rel_deg.push_back(std::move(d));
  }

  DimTable t;
  t.selector = Selector::Multidegree;
  t.name = p.name;
  t.bound = max_total_deg;
  t.method = "commutative-rank";

  const std::size_t dim = gs.grading_dim();
  // enumerate all targets with nonnegative entries summing to <= bound
  std::vector<MultiDegree> targets;
  MultiDegree cur(dim, 0);
  const auto walk = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == dim) {
      targets.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
    cur[i] = 0;
  };
  walk(walk, 0, max_total_deg);

  for (const MultiDegree& target : targets) {
    const std::vector<Expo> basis = monomials_of_degree(gs, target);
    std::map<Expo, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    linalg::Mat<Rational> rows;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
      if (!leq_componentwise(rel_deg[ri], target)) continue;
      for (const Expo& m : monomials_of_degree(gs, degree_sub(target, rel_deg[ri]))) {
        std::vector<Rational> row(basis.size(), Rational(0));
        for (const auto& [e, coef] : rels[ri]) row[index.at(expo_add(m, e))] = coef;
        rows.push_back(std::move(row));
      }
    }
    t.rows.push_back({target, static_cast<long long>(basis.size()) - linalg::rank(rows), true});
  }
  return t;
}

// Truncated filtered counts for quotients with inhomogeneous relations (the
// localizations): the dimension of the image of the monomials of length <= L
// inside the quotient, approximated by quotienting with relation multiples
// that fit in a window of length L + slack. Each row carries a flag telling
// whether widening the window from slack-1 to slack still changed the count.
// An optional filter restricts everything to monomials with the given first
// grading component.
inline DimTable filtered_localized_counts(const Presentation& p, int max_len, int slack = 2,
                                          std::optional<int> first_degree = std::nullopt) {
  using namespace oracle_detail;
  const GeneratorSet& gs = *p.gens;

  std::vector<CPoly> rels;
  std::vector<int> rel_len;   // max term length
  std::vector<int> rel_fdeg;  // first grading component (when filtering)
  for (const NCPoly& r : p.relations) {
    CPoly c = abelianize(r);
    if (c.empty()) continue;
    int len = 0;
    for (const auto& [e, coef] : c) len = std::max(len, expo_length(e));
    int fdeg = 0;
    if (first_degree) {
      fdeg = expo_degree(gs, c.begin()->first).at(0);
      for (const auto& [e, coef] : c)
        if (expo_degree(gs, e).at(0) != fdeg)
          throw Error("relation '" + r.str() + "' mixes first-grade components; cannot filter");
    }
    rels.push_back(std::move(c));
    rel_len.push_back(len);
    rel_fdeg.push_back(fdeg);
  }

  const auto admitted = [&](const Expo& e) {
    return !first_degree || expo_degree(gs, e).at(0) == *first_degree;
  };

  // counts the image of monomials of length <= L using window L + s
  const auto windowed_count = [&](int L, int s) -> long long {
    const int window = L + s;
    std::vector<Expo> basis;
    for (int l = 0; l <= window; ++l)
      for (Expo& e : monomials_of_length(gs.size(), l))
        if (admitted(e)) basis.push_back(std::move(e));
    std::map<Expo, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    SparseEliminator elim;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
      for (int lm = 0; lm + rel_len[ri] <= window; ++lm) {
        for (const Expo& m : monomials_of_length(gs.size(), lm)) {
          SparseEliminator::Row row;
          bool keep = true;
          for (const auto& [e, coef] : rels[ri]) {
            const Expo prod = expo_add(m, e);
            if (!admitted(prod)) {
              keep = false;
              break;
            }
            row[index.at(prod)] = coef;
          }
          if (keep) elim.add(std::move(row));
        }
      }
    }
    const std::size_t ideal_rank = elim.rank();
    for (const Expo& e : basis)
      if (expo_length(e) <= L)
        elim.add({{index.at(e), Rational(1)}});
    return static_cast<long long>(elim.rank() - ideal_rank);
  };

  DimTable t;
  t.selector = Selector::Length;
  t.name = p.name;
  t.bound = max_len;
  t.method = first_degree
                 ? "windowed-rank, first grade " + std::to_string(*first_degree)
                 : std::string("windowed-rank");
  for (int L = 0; L <= max_len; ++L) {
    const long long at_slack = windowed_count(L, slack);
    const long long before = slack >= 1 ? windowed_count(L, slack - 1) : -1;
    t.rows.push_back({{L}, at_slack, slack >= 1 && at_slack == before});
  }
  return t;
}

// Row-by-row comparison of two tables over the same selector and bound. A row
// missing on one side counts as zero, so producers that skip empty degrees
// still compare equal to producers that emit them.
inline CompareReport compare(const DimTable& a, const DimTable& b) {
  if (a.selector != b.selector || a.bound != b.bound) throw SelectorMismatch();
  CompareReport rep;
  std::map<std::vector<int>, std::pair<long long, long long>> merged;
  for (const DimRow& r : a.rows) merged[r.key].first = r.count;
  for (const DimRow& r : b.rows) merged[r.key].second = r.count;
  for (const auto& [k, counts] : merged)
    if (counts.first != counts.second)
      rep.mismatches.push_back(key_str(k) + ": " + std::to_string(counts.first) + " vs " +
                               std::to_string(counts.second));
  return rep;
}

// Second rank routine for the agreement property: fraction-free integer
// elimination must give the same rank as the field elimination in linalg.
inline int fraction_free_rank(const linalg::Mat<Rational>& m) {
  return oracle_detail::bareiss_rank(oracle_detail::integerize(m));
}

}  // namespace shapealg
