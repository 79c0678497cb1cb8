#pragma once

// Dimension/count tables shared by the rewriting counters and the
// linear-algebra oracles, plus the comparison primitive.

#include <string>
#include <vector>

#include "scalars.hpp"

namespace shapealg {

enum class Selector { Length, Multidegree };

struct SelectorMismatch : Error {
  SelectorMismatch() : Error("tables use different selectors or bounds") {}
};

struct DimRow {
  std::vector<int> key;  // {L} for Selector::Length, {n1,n2} for Multidegree
  long long count = 0;
  bool stable = true;  // false when a filtered count did not stabilize
};

inline std::string key_str(const std::vector<int>& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(k[i]);
  }
  return out + ")";
}

struct DimTable {
  Selector selector = Selector::Length;
  std::vector<DimRow> rows;
  std::string name;    // presentation the table describes
  std::string method;  // producing algorithm, for reports
  int bound = 0;

  const DimRow* find(const std::vector<int>& key) const {
    for (const auto& r : rows)
      if (r.key == key) return &r;
    return nullptr;
  }
  long long at(const std::vector<int>& key) const {
    const DimRow* r = find(key);
    if (!r) throw Error("table " + name + " has no row for requested key");
    return r->count;
  }
};

struct CompareReport {
  std::vector<std::string> mismatches;
  bool equal() const { return mismatches.empty(); }
};

// Running totals of a by-length table, for comparing a per-length counter
// against a producer that reports all words up to each length.
inline DimTable cumulative_by_length(const DimTable& t) {
  if (t.selector != Selector::Length) throw SelectorMismatch();
  DimTable out = t;
  out.method = t.method + ", cumulative";
  long long running = 0;
  for (DimRow& r : out.rows) {
    running += r.count;
    r.count = running;
  }
  return out;
}

inline std::string selector_str(Selector s) {
  return s == Selector::Length ? "length" : "multidegree";
}

}  // namespace shapealg
