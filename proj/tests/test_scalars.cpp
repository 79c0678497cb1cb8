#include <shapealg/scalars.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace shapealg;

namespace {

// deterministic generator for property tests
Laurent random_laurent(std::mt19937_64& rng, int max_terms = 4) {
  Laurent r;
  int n = static_cast<int>(rng() % static_cast<unsigned>(max_terms + 1));
  for (int i = 0; i < n; ++i) {
    int k = static_cast<int>(rng() % 9) - 4;
    long num = static_cast<long>(rng() % 19) - 9;
    long den = 1 + static_cast<long>(rng() % 4);
    r += Laurent::term(Rational(num, den), k);
  }
  return r;
}

Rational random_nonzero_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 13) - 6;
  if (num == 0) num = 7;
  long den = 1 + static_cast<long>(rng() % 5);
  return Rational(num, den);
}

}  // namespace

TEST(scalars, unit_times_inverse_is_one) {
  EXPECT_EQ(Laurent::q(1) * Laurent::q(-1), Laurent(1));
  EXPECT_TRUE((Laurent::q(1) * Laurent::q(-1)).is_one());
}

TEST(scalars, difference_of_squares) {
  Laurent a = Laurent::q(1) + Laurent::q(-1);
  Laurent b = Laurent::q(1) - Laurent::q(-1);
  EXPECT_EQ(a * b, Laurent::q(2) - Laurent::q(-2));
  EXPECT_EQ((a * b).str(), "q^2 - q^-2");
}

TEST(scalars, exact_div_polynomial) {
  Laurent num = Laurent::q(2) - Laurent(1);
  Laurent den = Laurent::q(1) - Laurent(1);
  EXPECT_EQ(num.exact_div(den), Laurent::q(1) + Laurent(1));
}

TEST(scalars, exact_div_by_unit) {
  Laurent num = Laurent::q(1) + Laurent(1);
  EXPECT_EQ(num.exact_div(Laurent::q(1)), Laurent(1) + Laurent::q(-1));
}

TEST(scalars, exact_div_failure_modes) {
  Laurent num = Laurent::q(1) + Laurent(1);
  Laurent den = Laurent::q(1) - Laurent(1);
  EXPECT_THROW((void)num.exact_div(den), NotDivisible);
  EXPECT_THROW((void)num.exact_div(Laurent()), DivisionByZero);
  EXPECT_EQ(Laurent().exact_div(den), Laurent());
}

TEST(scalars, exact_div_round_trips_products) {
  std::mt19937_64 rng(20260814);
  for (int i = 0; i < 300; ++i) {
    Laurent a = random_laurent(rng);
    Laurent b = random_laurent(rng);
    if (b.is_zero()) continue;
    EXPECT_EQ((a * b).exact_div(b), a);
  }
}

TEST(scalars, units_and_inverses) {
  Laurent u = Laurent::term(Rational(-3, 2), 5);
  ASSERT_TRUE(u.is_unit());
  EXPECT_TRUE((u * u.unit_inverse()).is_one());
  EXPECT_FALSE((Laurent::q(1) + Laurent(1)).is_unit());
  EXPECT_THROW((void)(Laurent::q(1) + Laurent(1)).unit_inverse(), Error);
  EXPECT_FALSE(Laurent().is_unit());
}

TEST(scalars, eval_examples) {
  Laurent a = Laurent::q(1) + Laurent::q(-1);
  EXPECT_EQ(a.eval(1), Rational(2));
  EXPECT_EQ(a.eval(2), Rational(5, 2));
  EXPECT_EQ(a.eval(Rational(-1)), Rational(-2));
}

TEST(scalars, eval_at_zero_rejected_even_for_constants) {
  EXPECT_THROW((void)(Laurent::q(1) + Laurent::q(-1)).eval(0), EvalAtZero);
  EXPECT_THROW((void)Laurent(7).eval(0), EvalAtZero);
  EXPECT_THROW((void)Laurent().eval(0), EvalAtZero);
}

TEST(scalars, ring_axioms_on_samples) {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 200; ++i) {
    Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + Laurent(), a);
    EXPECT_EQ(a * Laurent(1), a);
    EXPECT_EQ(a - a, Laurent());
  }
}

TEST(scalars, eval_is_a_ring_morphism) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 200; ++i) {
    Laurent a = random_laurent(rng), b = random_laurent(rng);
    Rational r = random_nonzero_rational(rng);
    EXPECT_EQ((a + b).eval(r), a.eval(r) + b.eval(r));
    EXPECT_EQ((a * b).eval(r), a.eval(r) * b.eval(r));
  }
  EXPECT_EQ(Laurent(1).eval(Rational(5, 3)), Rational(1));
}

TEST(scalars, parse_basic_forms) {
  EXPECT_EQ(Laurent::parse("q"), Laurent::q(1));
  EXPECT_EQ(Laurent::parse("q^-1"), Laurent::q(-1));
  EXPECT_EQ(Laurent::parse("q^3"), Laurent::q(3));
  EXPECT_EQ(Laurent::parse("3/2"), Laurent(Rational(3, 2)));
  EXPECT_EQ(Laurent::parse("-5"), Laurent(-5));
  EXPECT_EQ(Laurent::parse("q + q^-1"), Laurent::q(1) + Laurent::q(-1));
  EXPECT_EQ(Laurent::parse("(q + 1)*(q - 1)"), Laurent::q(2) - Laurent(1));
  EXPECT_EQ(Laurent::parse("-(q + q^-1)"), -(Laurent::q(1) + Laurent::q(-1)));
  EXPECT_EQ(Laurent::parse("2*q^2 - 1/2"), Laurent::term(2, 2) - Laurent(Rational(1, 2)));
}

TEST(scalars, parse_rejects_garbage_with_position) {
  try {
    (void)Laurent::parse("q + )");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.pos, 4u);
  }
  EXPECT_THROW((void)Laurent::parse(""), SyntaxError);
  EXPECT_THROW((void)Laurent::parse("q1"), SyntaxError);
  EXPECT_THROW((void)Laurent::parse("q^"), SyntaxError);
  EXPECT_THROW((void)Laurent::parse("1/0"), DivisionByZero);
}

TEST(scalars, print_parse_round_trip) {
  std::mt19937_64 rng(555);
  for (int i = 0; i < 300; ++i) {
    Laurent a = random_laurent(rng, 6);
    EXPECT_EQ(Laurent::parse(a.str()), a) << a.str();
  }
  EXPECT_EQ(Laurent().str(), "0");
  EXPECT_EQ(Laurent::parse("0"), Laurent());
}

TEST(scalars, degree_bounds) {
  Laurent a = Laurent::q(3) + Laurent::q(-2);
  EXPECT_EQ(a.min_exp(), -2);
  EXPECT_EQ(a.max_exp(), 3);
  EXPECT_THROW((void)Laurent().min_exp(), Error);
}
