#pragma once

// Degree-bounded noncommutative rewriting: monomial orders, rule
// orientation, normal-form reduction, overlap completion with collapse
// witnesses, and irreducible-word counting.

#include <deque>
#include <queue>
#include <set>
#include <sstream>

#include "freealg.hpp"
#include "table.hpp"

namespace shapealg {

struct NonInvertibleLead : Error {
  NonInvertibleLead()
      : Error("leading coefficient is not invertible and does not divide the relation") {}
};

struct NotConfluent : Error {
  explicit NotConfluent(const std::string& why) : Error("not confluent: " + why) {}
};

// Degree-lexicographic order: total length first, then letterwise precedence.
// Compatible with concatenation, well-founded on bounded length.
class MonomialOrder {
 public:
  static MonomialOrder deglex(Gens gens) {
    MonomialOrder o;
    o.gens_ = std::move(gens);
    o.rank_.resize(o.gens_->size());
    for (std::size_t i = 0; i < o.rank_.size(); ++i) o.rank_[i] = static_cast<int>(i);
    return o;
  }

  static MonomialOrder deglex(Gens gens, const std::vector<std::string>& precedence) {
    if (precedence.size() != gens->size())
      throw Error("precedence list must name every generator exactly once");
    MonomialOrder o;
    o.gens_ = std::move(gens);
    o.rank_.assign(o.gens_->size(), -1);
    int r = 0;
    for (const auto& name : precedence) {
      auto g = o.gens_->index_of(name);
      if (!g || o.rank_[static_cast<std::size_t>(*g)] != -1)
        throw Error("precedence list must name every generator exactly once");
      o.rank_[static_cast<std::size_t>(*g)] = r++;
    }
    return o;
  }

  const Gens& gens() const { return gens_; }

  int compare(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      int ra = rank_[static_cast<std::size_t>(a[i])];
      int rb = rank_[static_cast<std::size_t>(b[i])];
      if (ra != rb) return ra < rb ? -1 : 1;
    }
    return 0;
  }
  bool less(const Word& a, const Word& b) const { return compare(a, b) < 0; }

  // largest word of a polynomial, or nullptr for 0
  const Word* max_word(const NCPoly& p) const {
    const Word* best = nullptr;
    for (const auto& [w, c] : p.terms())
      if (!best || less(*best, w)) best = &w;
    return best;
  }

 private:
  Gens gens_;
  std::vector<int> rank_;
};

struct RewriteRule {
  int id = 0;
  Word lead;
  NCPoly tail;          // relation is lead - tail; every tail word < lead
  std::string origin;   // human-readable derivation note

  NCPoly as_poly(const Gens& gens) const {
    return NCPoly::monomial(gens, lead, Laurent(1)) - tail;
  }
};

// Orient rel as a monic rule lead -> tail.  A unit leading coefficient is
// divided through; a non-unit one is only accepted when it divides every
// coefficient of the relation (the quotient rule then generates the ideal's
// saturation — recorded via *scaled).
inline RewriteRule orient(const NCPoly& rel, const MonomialOrder& ord, int id = 0,
                          std::string origin = "input", Laurent* scaled = nullptr) {
  if (rel.is_zero()) throw Error("cannot orient the zero relation");
  const Word* lead = ord.max_word(rel);
  const Laurent c = rel.coeff(*lead);
  RewriteRule r;
  r.id = id;
  r.lead = *lead;
  r.origin = std::move(origin);
  NCPoly tail(rel.gens());
  if (c.is_unit()) {
    const Laurent inv = c.unit_inverse();
    for (const auto& [w, cw] : rel.terms())
      if (w != *lead) tail.add_term(w, -(cw * inv));
  } else {
    try {
      for (const auto& [w, cw] : rel.terms())
        if (w != *lead) tail.add_term(w, -cw.exact_div(c));
    } catch (const NotDivisible&) {
      throw NonInvertibleLead();
    }
    if (scaled) *scaled = c;
  }
  r.tail = std::move(tail);
  return r;
}

enum class ReduceStrategy { LargestFirst, SmallestFirst };

struct RewriteSystem {
  Gens gens;
  MonomialOrder order;
  std::vector<RewriteRule> rules;  // leads form an antichain after completion

  bool word_irreducible(const Word& w) const {
    for (const auto& r : rules)
      if (find_subword(w, r.lead) >= 0) return false;
    return true;
  }
};

struct ReduceStep {
  int rule_id;
  std::size_t pos;
  Word word;
};

// One-sided rewriting to normal form.  The strategy only affects the route;
// on a confluent system both strategies give the same result.
inline NCPoly reduce(const NCPoly& p, const RewriteSystem& sys,
                     ReduceStrategy strat = ReduceStrategy::LargestFirst,
                     std::vector<ReduceStep>* trace = nullptr) {
  for (const auto& r : sys.rules)
    if (r.lead.empty()) return NCPoly::zero(p.gens());  // 1 -> 0: zero algebra
  NCPoly cur = p;
  for (;;) {
    const Word* target = nullptr;
    const RewriteRule* rule = nullptr;
    int pos = -1;
    for (const auto& [w, c] : cur.terms()) {
      if (target) {
        bool better = strat == ReduceStrategy::LargestFirst ? sys.order.less(*target, w)
                                                            : sys.order.less(w, *target);
        if (!better) continue;
      }
      for (const auto& r : sys.rules) {
        int at = strat == ReduceStrategy::LargestFirst ? find_subword(w, r.lead) : -1;
        if (strat == ReduceStrategy::SmallestFirst) {
          // rightmost occurrence of the last matching rule
          for (int from = 0;;) {
            int hit = find_subword(w, r.lead, static_cast<std::size_t>(from));
            if (hit < 0) break;
            at = hit;
            from = hit + 1;
          }
        }
        if (at >= 0) {
          target = &w;
          rule = &r;
          pos = at;
          if (strat == ReduceStrategy::LargestFirst) break;  // first rule wins
        }
      }
    }
    if (!target) return cur;
    const Word w = *target;
    const Laurent c = cur.coeff(w);
    if (trace) trace->push_back({rule->id, static_cast<std::size_t>(pos), w});
    Word left(w.begin(), w.begin() + pos);
    Word right(w.begin() + pos + static_cast<long>(rule->lead.size()), w.end());
    cur.add_term(w, -c);
    cur += c * rule->tail.sandwich(left, right);
  }
}

enum class CompletionStatus { Completed, Collapsed, BoundExceeded };

struct CollapseInfo {
  std::vector<std::string> steps;            // replayable derivation log
  std::vector<std::string> zero_generators;  // generators rewritten to 0
  bool unit_zero = false;                    // 1 -> 0 derived
};

struct CompletionReport {
  RewriteSystem system;  // active rules only
  CompletionStatus status = CompletionStatus::Completed;
  int bound = 0;      // requested superposition bound
  int certified = 0;  // all ambiguities of superposition degree <= certified resolve
  long long ambiguities_resolved = 0;
  long long ambiguities_skipped = 0;  // superposition beyond bound
  std::map<int, int> rules_added_by_degree;
  std::optional<CollapseInfo> collapse;
  std::vector<std::string> events;
};

namespace detail {

struct Ambiguity {
  int deg;
  long long seq;
  int r1, r2;   // indices into the rule arena
  int overlap;  // lead(r1) = A·B, lead(r2) = B·C with |B| = overlap
  bool operator>(const Ambiguity& o) const {
    if (deg != o.deg) return deg > o.deg;
    return seq > o.seq;
  }
};

class Completer {
 public:
  Completer(Gens gens, const std::vector<NCPoly>& relations, MonomialOrder order,
            int max_deg)
      : gens_(std::move(gens)), order_(std::move(order)) {
    rep_.bound = max_deg;
    for (std::size_t i = 0; i < relations.size(); ++i)
      pending_.push_back({relations[i], "input relation #" + std::to_string(i + 1), false});
  }

  CompletionReport run() {
    while (!done_) {
      if (!pending_.empty()) {
        Pending p = std::move(pending_.front());
        pending_.pop_front();
        process(p);
        continue;
      }
      if (pairs_.empty()) break;
      Ambiguity a = pairs_.top();
      pairs_.pop();
      if (!active_[static_cast<std::size_t>(a.r1)] || !active_[static_cast<std::size_t>(a.r2)])
        continue;
      if (a.deg > rep_.bound) {
        ++rep_.ambiguities_skipped;
        continue;
      }
      const RewriteRule& r1 = arena_[static_cast<std::size_t>(a.r1)];
      const RewriteRule& r2 = arena_[static_cast<std::size_t>(a.r2)];
      Word A(r1.lead.begin(), r1.lead.end() - a.overlap);
      Word C(r2.lead.begin() + a.overlap, r2.lead.end());
      NCPoly s = r1.tail.sandwich({}, C) - r2.tail.sandwich(A, {});
      Word super = concat(A, r2.lead);
      pending_.push_back(
          {std::move(s),
           "overlap " + word_str(*gens_, super) + " of rule #" + std::to_string(r1.id) +
               " and rule #" + std::to_string(r2.id),
           true});
      if (++steps_ > 500000) {
        rep_.status = CompletionStatus::BoundExceeded;
        rep_.certified = 0;
        note("completion aborted: step limit reached");
        done_ = true;
      }
    }
    if (rep_.status == CompletionStatus::Completed) rep_.certified = rep_.bound;
    rep_.system.gens = gens_;
    rep_.system.order = order_;
    for (std::size_t i = 0; i < arena_.size(); ++i)
      if (active_[i]) rep_.system.rules.push_back(arena_[i]);
    return std::move(rep_);
  }

 private:
  struct Pending {
    NCPoly poly;
    std::string origin;
    bool from_pair;
  };

  void note(std::string s) { rep_.events.push_back(std::move(s)); }

  RewriteSystem active_system() const {
    RewriteSystem sys{gens_, order_, {}};
    for (std::size_t i = 0; i < arena_.size(); ++i)
      if (active_[i]) sys.rules.push_back(arena_[i]);
    return sys;
  }

  void process(const Pending& p) {
    NCPoly nf = reduce(p.poly, active_system());
    if (nf.is_zero()) {
      if (p.from_pair) ++rep_.ambiguities_resolved;
      return;
    }
    // a nonzero constant means c·1 lies in the ideal: the algebra collapses
    if (nf.term_count() == 1 && nf.terms().begin()->first.empty()) {
      note("derived constant " + nf.str() + " = 0 (" + p.origin + "); collapse: 1 -> 0");
      declare_collapse();
      return;
    }
    note("derived " + nf.str() + " = 0 (" + p.origin + ")");
    add_rule(nf, p.origin);
  }

  void declare_collapse() {
    CollapseInfo info;
    info.steps = rep_.events;
    info.zero_generators = zero_gens_;
    info.unit_zero = true;
    RewriteRule unit_rule;
    unit_rule.id = next_id_++;
    unit_rule.tail = NCPoly::zero(gens_);
    unit_rule.origin = "collapse";
    arena_.push_back(std::move(unit_rule));
    active_.push_back(true);
    rep_.collapse = std::move(info);
    rep_.status = CompletionStatus::Collapsed;
    rep_.certified = 0;
    done_ = true;
  }

  void add_rule(const NCPoly& rel, const std::string& origin) {
    Laurent scale;
    RewriteRule r;
    try {
      r = orient(rel, order_, next_id_, origin, &scale);
    } catch (const NonInvertibleLead&) {
      rep_.status = CompletionStatus::BoundExceeded;
      rep_.certified = 0;
      note("cannot orient " + rel.str() + " = 0: leading coefficient not invertible");
      done_ = true;
      return;
    }
    ++next_id_;
    std::ostringstream msg;
    msg << "rule #" << r.id << ": " << word_str(*gens_, r.lead) << " -> " << r.tail.str();
    if (!scale.is_zero()) msg << " (scaled by (" << scale.str() << ")^-1)";
    note(msg.str());
    if (r.lead.empty()) {  // oriented 1 -> tail; only reachable as 1 -> 0
      note("collapse: 1 -> 0");
      declare_collapse();
      return;
    }
    if (r.lead.size() == 1 && r.tail.is_zero()) {
      const std::string& g = gens_->name(r.lead[0]);
      zero_gens_.push_back(g);
      note("generator " + g + " rewrites to 0");
    }
    const int my = static_cast<int>(arena_.size());
    arena_.push_back(r);
    active_.push_back(true);
    rep_.rules_added_by_degree[static_cast<int>(r.lead.size())]++;

    // interreduce: rules whose lead contains the new lead are re-queued;
    // other tails are normalized against the enlarged system
    for (std::size_t i = 0; i + 1 < arena_.size(); ++i) {
      if (!active_[i]) continue;
      if (find_subword(arena_[i].lead, r.lead) >= 0) {
        active_[i] = false;
        note("rule #" + std::to_string(arena_[i].id) + " (" +
             word_str(*gens_, arena_[i].lead) + " -> " + arena_[i].tail.str() +
             ") re-queued: lead reducible by rule #" + std::to_string(r.id));
        pending_.push_back({arena_[i].as_poly(gens_),
                            "re-queued rule #" + std::to_string(arena_[i].id), false});
      }
    }
    RewriteSystem sys = active_system();
    for (std::size_t i = 0; i + 1 < arena_.size(); ++i) {
      if (!active_[i]) continue;
      NCPoly t = reduce(arena_[i].tail, sys);
      if (t != arena_[i].tail) arena_[i].tail = std::move(t);
    }

    // ambiguities of the new rule with every active rule (itself included);
    // for ids i < j the (i, j) overlap is enqueued before (j, i)
    for (std::size_t i = 0; i < arena_.size(); ++i) {
      if (!active_[i]) continue;
      if (static_cast<int>(i) != my) {
        enqueue_overlaps(static_cast<int>(i), my);
        enqueue_overlaps(my, static_cast<int>(i));
      }
    }
    enqueue_overlaps(my, my);
    if (arena_.size() > 5000) {
      rep_.status = CompletionStatus::BoundExceeded;
      rep_.certified = 0;
      note("completion aborted: rule limit reached");
      done_ = true;
    }
  }

  void enqueue_overlaps(int i, int j) {
    const Word& l1 = arena_[static_cast<std::size_t>(i)].lead;
    const Word& l2 = arena_[static_cast<std::size_t>(j)].lead;
    const int m = static_cast<int>(std::min(l1.size(), l2.size()));
    for (int b = 1; b < m; ++b) {
      if (!std::equal(l1.end() - b, l1.end(), l2.begin())) continue;
      const int deg = static_cast<int>(l1.size() + l2.size()) - b;
      pairs_.push({deg, seq_++, i, j, b});
    }
    // inclusion ambiguities cannot arise: new relations are reduced before
    // orientation and rules containing a new lead are re-queued, so active
    // leads always form an antichain
  }

  Gens gens_;
  MonomialOrder order_;
  std::vector<RewriteRule> arena_;
  std::vector<bool> active_;
  std::deque<Pending> pending_;
  std::priority_queue<Ambiguity, std::vector<Ambiguity>, std::greater<Ambiguity>> pairs_;
  std::vector<std::string> zero_gens_;
  CompletionReport rep_;
  long long seq_ = 0;
  long long steps_ = 0;
  int next_id_ = 1;
  bool done_ = false;
};

}  // namespace detail

inline CompletionReport complete(const Gens& gens, const std::vector<NCPoly>& relations,
                                 const MonomialOrder& order, int max_deg) {
  return detail::Completer(gens, relations, order, max_deg).run();
}

namespace detail {

// depth-first enumeration of words avoiding every rule lead; a freshly
// extended word can only become reducible at a suffix ending in its last letter
template <typename Visit>
void walk_irreducible(const RewriteSystem& sys, int max_len, Word& w, const Visit& visit) {
  visit(w);
  if (static_cast<int>(w.size()) >= max_len) return;
  for (int g = 0; g < static_cast<int>(sys.gens->size()); ++g) {
    w.push_back(g);
    bool ok = true;
    for (const auto& r : sys.rules) {
      if (r.lead.size() > w.size() || r.lead.empty()) continue;
      if (std::equal(r.lead.begin(), r.lead.end(), w.end() - static_cast<long>(r.lead.size()))) {
        ok = false;
        break;
      }
    }
    if (ok) walk_irreducible(sys, max_len, w, visit);
    w.pop_back();
  }
}

inline void require_certified(const CompletionReport& rep, int needed) {
  if (rep.status == CompletionStatus::Collapsed)
    throw NotConfluent("presentation collapsed; counting is undefined");
  if (rep.status == CompletionStatus::BoundExceeded)
    throw NotConfluent("completion did not stabilize at the requested bound");
  if (needed > rep.certified)
    throw NotConfluent("requested bound " + std::to_string(needed) +
                       " exceeds certified degree " + std::to_string(rep.certified));
}

}  // namespace detail

inline std::vector<Word> irreducible_words(const CompletionReport& rep, int max_len) {
  detail::require_certified(rep, max_len);
  std::vector<Word> out;
  Word w;
  detail::walk_irreducible(rep.system, max_len, w, [&](const Word& u) { out.push_back(u); });
  return out;
}

inline DimTable count_irreducible_by_length(const CompletionReport& rep, int max_len,
                                            const std::string& name = "") {
  detail::require_certified(rep, max_len);
  std::vector<long long> counts(static_cast<std::size_t>(max_len) + 1, 0);
  Word w;
  detail::walk_irreducible(rep.system, max_len, w,
                           [&](const Word& u) { ++counts[u.size()]; });
  DimTable t;
  t.selector = Selector::Length;
  t.name = name;
  t.method = "rewrite";
  t.bound = max_len;
  for (int l = 0; l <= max_len; ++l) t.rows.push_back({{l}, counts[static_cast<std::size_t>(l)], true});
  return t;
}

inline DimTable count_irreducible_by_multidegree(const CompletionReport& rep, int max_total,
                                                 const std::string& name = "") {
  detail::require_certified(rep, max_total);
  std::map<std::vector<int>, long long> buckets;
  Word w;
  detail::walk_irreducible(rep.system, max_total, w, [&](const Word& u) {
    MultiDegree d = word_multidegree(*rep.system.gens, u);
    int total = 0;
    for (int x : d) total += x < 0 ? -x : x;
    if (total <= max_total) ++buckets[d];
  });
  DimTable t;
  t.selector = Selector::Multidegree;
  t.name = name;
  t.method = "rewrite";
  t.bound = max_total;
  for (const auto& [k, v] : buckets) t.rows.push_back({k, v, true});
  return t;
}

}  // namespace shapealg
