#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "shapealg/presentations.hpp"
#include "shapealg/rewrite.hpp"

using namespace shapealg;

namespace {

Word wd(const Gens& g, std::initializer_list<const char*> letters) {
  Word w;
  for (const char* n : letters) {
    auto i = g->index_of(n);
    if (!i) throw Error(std::string("no generator ") + n);
    w.push_back(*i);
  }
  return w;
}

const Presentation& quantum_pres() {
  static const Presentation p = builtin("sl3_shape_quantum");
  return p;
}

const CompletionReport& quantum4() {
  static const CompletionReport rep = [] {
    const Presentation& p = quantum_pres();
    return complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
  }();
  return rep;
}

const CompletionReport& classical4() {
  static const CompletionReport rep = [] {
    const Presentation p = builtin("sl3_shape_classical");
    return complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
  }();
  return rep;
}

std::vector<std::string> lead_strings(const CompletionReport& rep, int len = -1) {
  std::vector<std::string> out;
  for (const auto& r : rep.system.rules)
    if (len < 0 || static_cast<int>(r.lead.size()) == len)
      out.push_back(word_str(*rep.system.gens, r.lead));
  std::sort(out.begin(), out.end());
  return out;
}

NCPoly random_poly(const Gens& gens, std::mt19937& rng, int max_len = 4, int terms = 4) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(gens->size()) - 1);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> power(-2, 2);
  NCPoly f(gens);
  for (int t = 0; t < terms; ++t) {
    Word w;
    int L = len(rng);
    for (int i = 0; i < L; ++i) w.push_back(letter(rng));
    int c = coeff(rng);
    if (c == 0) c = 1;
    f += NCPoly::monomial(gens, w, Laurent::term(c, power(rng)));
  }
  return f;
}

}  // namespace

TEST(rewrite, deglex_order_basics) {
  const Gens& g = quantum_pres().gens;
  MonomialOrder ord = MonomialOrder::deglex(g);
  EXPECT_TRUE(ord.less(wd(g, {"p3"}), wd(g, {"p1", "p1"})));  // length dominates
  EXPECT_TRUE(ord.less(wd(g, {"p1", "p2"}), wd(g, {"p2", "p1"})));
  EXPECT_TRUE(ord.less(wd(g, {"p3", "q3"}), wd(g, {"q1", "p1"})));  // p's precede q's
  EXPECT_EQ(ord.compare(wd(g, {"q2", "p1"}), wd(g, {"q2", "p1"})), 0);

  // compatibility with concatenation on a sample of triples
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(g->size()) - 1);
  for (int it = 0; it < 200; ++it) {
    auto make = [&](int n) {
      Word w;
      for (int i = 0; i < n; ++i) w.push_back(letter(rng));
      return w;
    };
    Word u = make(2), v = make(2), a = make(1), b = make(2);
    if (ord.less(u, v))
      EXPECT_TRUE(ord.less(concat(concat(a, u), b), concat(concat(a, v), b)));
  }

  // custom precedence reverses letterwise comparisons
  MonomialOrder rev =
      MonomialOrder::deglex(g, {"q3", "q2", "q1", "p3", "p2", "p1"});
  EXPECT_TRUE(rev.less(wd(g, {"q3", "p1"}), wd(g, {"p1", "q3"})));
  EXPECT_THROW(MonomialOrder::deglex(g, {"q3", "q3", "q1", "p3", "p2", "p1"}), Error);
}

TEST(rewrite, orient_examples) {
  const Gens& g = quantum_pres().gens;
  MonomialOrder ord = MonomialOrder::deglex(g);

  RewriteRule r1 = orient(NCPoly::parse(g, "p1*p2 - q*p2*p1"), ord);
  EXPECT_EQ(r1.lead, wd(g, {"p2", "p1"}));
  EXPECT_EQ(r1.tail, NCPoly::parse(g, "q^-1*p1*p2"));

  RewriteRule r2 = orient(NCPoly::parse(g, "p2*q2 + q^-1*p1*q1 + q*p3*q3"), ord);
  EXPECT_EQ(r2.lead, wd(g, {"p3", "q3"}));
  EXPECT_EQ(r2.tail, NCPoly::parse(g, "-q^-1*p2*q2 - q^-2*p1*q1"));

  // unit monomial coefficients divide through exactly
  RewriteRule r3 = orient(NCPoly::parse(g, "2*q^3*p2*p1 - p1*p2"), ord);
  EXPECT_EQ(r3.lead, wd(g, {"p2", "p1"}));
  EXPECT_EQ(r3.tail, NCPoly::parse(g, "1/2*q^-3*p1*p2"));

  const Gens gt = builtin("g1_shape_classical").gens;
  MonomialOrder ordt = MonomialOrder::deglex(gt);
  RewriteRule r4 = orient(NCPoly::parse(gt, "t*q3 - 1"), ordt);
  EXPECT_EQ(r4.lead, wd(gt, {"t", "q3"}));
  EXPECT_EQ(r4.tail, NCPoly::one(gt));

  // a non-unit leading coefficient must divide the whole relation ...
  EXPECT_THROW(orient(NCPoly::parse(g, "(q + 1)*p2 + p1"), ord), NonInvertibleLead);

  // ... and when it does, the quotient rule is produced and the scale recorded
  Laurent scale;
  RewriteRule r5 = orient(NCPoly::parse(g, "(q + 1)*p2 + (q + 1)*p1"), ord, 9, "x", &scale);
  EXPECT_EQ(r5.lead, wd(g, {"p2"}));
  EXPECT_EQ(r5.tail, NCPoly::parse(g, "-p1"));
  EXPECT_EQ(scale.str(), "q + 1");

  EXPECT_THROW(orient(NCPoly::zero(g), ord), Error);
}

TEST(rewrite, quantum_completion_certifies) {
  const CompletionReport& rep = quantum4();
  EXPECT_EQ(rep.status, CompletionStatus::Completed);
  EXPECT_EQ(rep.certified, 4);
  EXPECT_FALSE(rep.collapse.has_value());

  std::vector<std::string> expected = {
      "p2*p1", "p3*p1", "p3*p2", "p3*q3", "q1*p1", "q1*p2", "q1*p3", "q2*p1",
      "q2*p2", "q2*p3", "q2*q1", "q3*p1", "q3*p2", "q3*p3", "q3*q1", "q3*q2"};
  EXPECT_EQ(lead_strings(rep, 2), expected);
}

TEST(rewrite, quantum_and_classical_share_all_leads) {
  // The deformation leaves every irreducible word in place: the completed
  // systems have identical lead sets through the certified bound.
  EXPECT_EQ(lead_strings(quantum4()), lead_strings(classical4()));
  std::vector<std::string> cubic = lead_strings(quantum4(), 3);
  std::vector<std::string> expected3 = {"p3*q1*q3", "p3*q2*q3"};
  EXPECT_EQ(cubic, expected3);
}

TEST(rewrite, quantum_counts_match_classical_dimensions) {
  DimTable by_len = count_irreducible_by_length(quantum4(), 2, "sl3_shape_quantum");
  EXPECT_EQ(by_len.at({0}), 1);
  EXPECT_EQ(by_len.at({1}), 6);
  EXPECT_EQ(by_len.at({2}), 20);  // 36 words minus 16 quadratic leads

  DimTable by_deg = count_irreducible_by_multidegree(quantum4(), 4, "sl3_shape_quantum");
  auto dim = [](int a, int b) {
    return static_cast<long long>((a + 1) * (b + 1) * (a + b + 2) / 2);
  };
  for (int a = 0; a + 0 <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      EXPECT_EQ(by_deg.at({a, b}), dim(a, b)) << "multidegree (" << a << "," << b << ")";
}

TEST(rewrite, classical_counts_to_degree_six) {
  const Presentation p = builtin("sl3_shape_classical");
  CompletionReport rep = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 6);
  ASSERT_EQ(rep.status, CompletionStatus::Completed);
  DimTable by_deg = count_irreducible_by_multidegree(rep, 6, p.name);
  auto dim = [](int a, int b) {
    return static_cast<long long>((a + 1) * (b + 1) * (a + b + 2) / 2);
  };
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b)
      EXPECT_EQ(by_deg.at({a, b}), dim(a, b)) << "multidegree (" << a << "," << b << ")";
}

TEST(rewrite, reduce_normal_forms) {
  const RewriteSystem& sys = quantum4().system;
  const Gens& g = sys.gens;

  EXPECT_EQ(reduce(NCPoly::parse(g, "p2*p1"), sys), NCPoly::parse(g, "q^-1*p1*p2"));
  EXPECT_EQ(reduce(NCPoly::parse(g, "p1"), sys), NCPoly::parse(g, "p1"));

  NCPoly nf = reduce(NCPoly::parse(g, "q2*p2"), sys);
  EXPECT_EQ(nf, NCPoly::parse(g, "q^-1*p2*q2 + (q^-2 - 1)*p1*q1"));
  EXPECT_EQ(nf.str(), "(-1 + q^-2)*p1*q1 + q^-1*p2*q2");

  // a shorter expression congruent to q2*p2 modulo the ideal
  EXPECT_TRUE(reduce(NCPoly::parse(g, "q2*p2 + p1*q1 + p3*q3"), sys).is_zero());

  EXPECT_EQ(reduce(NCPoly::parse(g, "q3*p3"), sys),
            NCPoly::parse(g, "-p2*q2 - q^-1*p1*q1"));

  std::vector<ReduceStep> trace;
  reduce(NCPoly::parse(g, "p2*p1"), sys, ReduceStrategy::LargestFirst, &trace);
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].pos, 0u);
  EXPECT_EQ(trace[0].word, wd(g, {"p2", "p1"}));

  // every input relation reduces to zero under the completed system
  for (const NCPoly& rel : quantum_pres().relations)
    EXPECT_TRUE(reduce(rel, sys).is_zero());
}

TEST(rewrite, reduce_is_linear) {
  const RewriteSystem& sys = quantum4().system;
  const Gens& g = sys.gens;
  std::mt19937 rng(11);
  const Laurent c = Laurent::term(Rational(2, 3), -1);
  for (int it = 0; it < 30; ++it) {
    NCPoly f = random_poly(g, rng), h = random_poly(g, rng);
    EXPECT_EQ(reduce(f + h, sys), reduce(f, sys) + reduce(h, sys));
    EXPECT_EQ(reduce(c * f, sys), c * reduce(f, sys));
  }
}

TEST(rewrite, strategies_agree_after_completion) {
  std::mt19937 rng(23);
  for (const char* name : {"sl3_shape_classical", "sl3_shape_quantum"}) {
    const Presentation p = builtin(name);
    CompletionReport rep = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
    ASSERT_EQ(rep.status, CompletionStatus::Completed);
    for (int it = 0; it < 40; ++it) {
      NCPoly f = random_poly(p.gens, rng);
      NCPoly a = reduce(f, rep.system, ReduceStrategy::LargestFirst);
      NCPoly b = reduce(f, rep.system, ReduceStrategy::SmallestFirst);
      EXPECT_EQ(a, b) << name << ": strategies disagree on " << f.str();
      EXPECT_TRUE(reduce(f - a, rep.system).is_zero());
    }
  }
}

TEST(rewrite, g1_literal_collapses_with_witness) {
  const Presentation p = builtin("g1_shape_quantum_literal");
  CompletionReport rep = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
  ASSERT_EQ(rep.status, CompletionStatus::Collapsed);
  ASSERT_TRUE(rep.collapse.has_value());
  const CollapseInfo& c = *rep.collapse;
  EXPECT_TRUE(c.unit_zero);
  EXPECT_EQ(c.zero_generators, std::vector<std::string>{"t"});

  auto has = [&](const std::string& needle) {
    for (const auto& s : c.steps)
      if (s.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(has("t*q3*t"));       // the critical superposition
  EXPECT_TRUE(has("(-q + 1)*t"));   // its nonzero resolution
  EXPECT_TRUE(has("t -> 0"));       // the generator is killed
  EXPECT_TRUE(has("1 -> 0"));       // and the unit follows

  // once collapsed, everything rewrites to zero
  EXPECT_TRUE(reduce(NCPoly::parse(p.gens, "p1*q2 + 3"), rep.system).is_zero());
  EXPECT_THROW(count_irreducible_by_length(rep, 2), NotConfluent);
}

TEST(rewrite, g1_classical_and_amended_agree) {
  const Presentation pc = builtin("g1_shape_classical");
  CompletionReport rc = complete(pc.gens, pc.relations, MonomialOrder::deglex(pc.gens), 4);
  ASSERT_EQ(rc.status, CompletionStatus::Completed);
  DimTable tc = count_irreducible_by_length(rc, 4, pc.name);
  EXPECT_EQ(tc.at({1}), 7);
  EXPECT_EQ(tc.at({2}), 26);

  const Presentation pa = builtin("g1_shape_quantum_amended");
  CompletionReport ra = complete(pa.gens, pa.relations, MonomialOrder::deglex(pa.gens), 4);
  ASSERT_EQ(ra.status, CompletionStatus::Completed);
  DimTable ta = count_irreducible_by_length(ra, 4, pa.name);
  for (int l = 0; l <= 4; ++l)
    EXPECT_EQ(ta.at({l}), tc.at({l})) << "length " << l;
}

TEST(rewrite, uq_presets_hit_nonorientable_relations) {
  const Presentation p = builtin("uq_g0");
  CompletionReport rep = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 3);
  EXPECT_EQ(rep.status, CompletionStatus::BoundExceeded);
  bool saw = false;
  for (const auto& e : rep.events)
    if (e.find("cannot orient") != std::string::npos) saw = true;
  EXPECT_TRUE(saw);
  EXPECT_THROW(count_irreducible_by_length(rep, 2), NotConfluent);
}

TEST(rewrite, counting_needs_certificate) {
  const Presentation p = quantum_pres();
  CompletionReport rep = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 3);
  ASSERT_EQ(rep.status, CompletionStatus::Completed);
  EXPECT_EQ(rep.certified, 3);
  EXPECT_NO_THROW(count_irreducible_by_length(rep, 3));
  EXPECT_THROW(count_irreducible_by_length(rep, 4), NotConfluent);
  EXPECT_THROW(irreducible_words(rep, 4), NotConfluent);
}

TEST(rewrite, irreducible_word_enumeration) {
  std::vector<Word> words = irreducible_words(quantum4(), 2);
  EXPECT_EQ(words.size(), 1u + 6u + 20u);
  const Gens& g = quantum4().system.gens;
  auto contains = [&](std::initializer_list<const char*> w) {
    return std::find(words.begin(), words.end(), wd(g, w)) != words.end();
  };
  EXPECT_TRUE(contains({}));
  EXPECT_TRUE(contains({"p1", "p2"}));
  EXPECT_FALSE(contains({"p2", "p1"}));
  EXPECT_TRUE(contains({"p2", "q2"}));
  EXPECT_FALSE(contains({"p3", "q3"}));
  EXPECT_FALSE(contains({"q1", "p1"}));
  for (const Word& w : words) EXPECT_TRUE(quantum4().system.word_irreducible(w));
}

TEST(rewrite, empty_and_tiny_presentations) {
  const Gens& g = quantum_pres().gens;
  CompletionReport free3 = complete(g, {}, MonomialOrder::deglex(g), 3);
  EXPECT_EQ(free3.status, CompletionStatus::Completed);
  DimTable t = count_irreducible_by_length(free3, 2);
  EXPECT_EQ(t.at({1}), 6);
  EXPECT_EQ(t.at({2}), 36);

  CompletionReport one_gen_dead =
      complete(g, {NCPoly::parse(g, "p1")}, MonomialOrder::deglex(g), 3);
  EXPECT_EQ(one_gen_dead.status, CompletionStatus::Completed);
  EXPECT_EQ(count_irreducible_by_length(one_gen_dead, 1).at({1}), 5);
}

TEST(rewrite, completion_is_deterministic) {
  const Presentation p = builtin("g1_shape_classical");
  CompletionReport a = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
  CompletionReport b = complete(p.gens, p.relations, MonomialOrder::deglex(p.gens), 4);
  EXPECT_EQ(a.events, b.events);
  ASSERT_EQ(a.system.rules.size(), b.system.rules.size());
  for (std::size_t i = 0; i < a.system.rules.size(); ++i) {
    EXPECT_EQ(a.system.rules[i].lead, b.system.rules[i].lead);
    EXPECT_EQ(a.system.rules[i].tail, b.system.rules[i].tail);
  }
}

TEST(rewrite, reduction_commutes_with_evaluation) {
  const CompletionReport& rep = quantum4();
  const Gens& g = rep.system.gens;
  const Rational r(5, 3);
  auto eval_poly = [&](const NCPoly& f) {
    return f.map_coeffs([&](const Laurent& c) { return Laurent(c.eval(r)); });
  };
  RewriteSystem spec{g, rep.system.order, {}};
  for (const RewriteRule& rule : rep.system.rules) {
    RewriteRule s = rule;
    s.tail = eval_poly(rule.tail);
    spec.rules.push_back(std::move(s));
  }
  std::mt19937 rng(31);
  for (int it = 0; it < 30; ++it) {
    NCPoly f = random_poly(g, rng);
    EXPECT_EQ(eval_poly(reduce(f, rep.system)), reduce(eval_poly(f), spec));
  }
}
