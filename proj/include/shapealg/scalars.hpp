#pragma once

// Exact scalar arithmetic over Q[q, q^-1]: Laurent polynomials in one
// parameter q with rational coefficients.  Everything here is exact; no
// floating point is used anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shapealg {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct NotDivisible : Error {
  NotDivisible() : Error("exact division failed: not divisible in Q[q,q^-1]") {}
};

// Evaluation at q = 0 is rejected for every input, even constants; q = 0 is
// outside the parameter domain and allowing constants would make eval's
// domain depend on the value rather than the type.
struct EvalAtZero : Error {
  EvalAtZero() : Error("evaluation at q = 0 is not defined") {}
};

struct SyntaxError : Error {
  std::size_t pos;
  SyntaxError(const std::string& what, std::size_t at)
      : Error(what + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

inline std::string rational_str(const Rational& r) { return r.str(); }

inline Rational rational_pow(const Rational& r, long e) {
  if (e < 0) {
    if (r == 0) throw DivisionByZero();
    return Rational(1) / rational_pow(r, -e);
  }
  Rational acc(1), base(r);
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

// Element of Q[q, q^-1], stored sparsely as exponent -> nonzero coefficient.
class Laurent {
 public:
  Laurent() = default;
  Laurent(int c) { *this = Laurent(Rational(c)); }
  Laurent(const Rational& c) {
    if (c != 0) t_[0] = c;
  }

  // c * q^k
  static Laurent term(const Rational& c, int k) {
    Laurent r;
    if (c != 0) r.t_[k] = c;
    return r;
  }
  static Laurent q(int k = 1) { return term(1, k); }

  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return is_constant() && constant_value() == 1; }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0);
  }
  Rational constant_value() const {
    if (t_.empty()) return 0;
    if (!is_constant()) throw Error("scalar is not constant in q");
    return t_.begin()->second;
  }
  // a unit of Q[q,q^-1] is a single term c*q^k with c != 0
  bool is_unit() const { return t_.size() == 1; }

  int min_exp() const {
    if (is_zero()) throw Error("zero scalar has no degree bounds");
    return t_.begin()->first;
  }
  int max_exp() const {
    if (is_zero()) throw Error("zero scalar has no degree bounds");
    return t_.rbegin()->first;
  }

  const std::map<int, Rational>& terms() const { return t_; }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [k, c] : o.t_) add_term(k, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  Laurent operator-() const {
    Laurent r(*this);
    for (auto& [k, c] : r.t_) c = -c;
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  bool operator==(const Laurent& o) const { return t_ == o.t_; }
  bool operator!=(const Laurent& o) const { return t_ != o.t_; }
  // arbitrary total ordering, used only for canonical container ordering
  bool operator<(const Laurent& o) const { return t_ < o.t_; }

  // precondition: is_unit()
  Laurent unit_inverse() const {
    if (!is_unit()) throw Error("not a unit of Q[q,q^-1]");
    const auto& [k, c] = *t_.begin();
    return term(Rational(1) / c, -k);
  }

  // Exact division in Q[q,q^-1]; throws NotDivisible when the quotient does
  // not lie in the ring, DivisionByZero when d == 0.
  Laurent exact_div(const Laurent& d) const {
    if (d.is_zero()) throw DivisionByZero();
    if (is_zero()) return Laurent();
    // Shift both operands to ordinary polynomials with nonzero constant
    // term; q is a unit, so divisibility is unaffected.
    const int la = min_exp(), lb = d.min_exp();
    std::vector<Rational> A(static_cast<std::size_t>(max_exp() - la) + 1);
    for (const auto& [k, c] : t_) A[static_cast<std::size_t>(k - la)] = c;
    std::vector<Rational> B(static_cast<std::size_t>(d.max_exp() - lb) + 1);
    for (const auto& [k, c] : d.t_) B[static_cast<std::size_t>(k - lb)] = c;
    const std::size_t degA = A.size() - 1, degB = B.size() - 1;
    if (degA < degB) throw NotDivisible();
    std::vector<Rational> quot(degA - degB + 1);
    for (std::size_t k = degA - degB + 1; k-- > 0;) {
      Rational c = A[k + degB] / B[degB];
      if (c == 0) continue;
      quot[k] = c;
      for (std::size_t i = 0; i <= degB; ++i) A[k + i] -= c * B[i];
    }
    for (const auto& r : A)
      if (r != 0) throw NotDivisible();
    Laurent res;
    for (std::size_t k = 0; k < quot.size(); ++k)
      if (quot[k] != 0) res.t_[static_cast<int>(k) + la - lb] = quot[k];
    return res;
  }

  bool divides(const Laurent& num) const {
    try {
      (void)num.exact_div(*this);
      return true;
    } catch (const NotDivisible&) {
      return false;
    }
  }

  Rational eval(const Rational& r) const {
    if (r == 0) throw EvalAtZero();
    Rational acc(0);
    for (const auto& [k, c] : t_) acc += c * rational_pow(r, k);
    return acc;
  }

  // Canonical rendering: terms by descending exponent, e.g. "q^2 - q^-2",
  // "-1/2*q + 3".  parse(str()) round-trips.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const int k = it->first;
      Rational c = it->second;
      const bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      std::string mag = c.str();
      if (k == 0) {
        out += mag;
      } else {
        if (c != 1) out += mag + "*";
        out += (k == 1) ? "q" : "q^" + std::to_string(k);
      }
      first = false;
    }
    return out;
  }

  static Laurent parse(std::string_view text);

 private:
  void add_term(int k, const Rational& c) {
    auto it = t_.find(k);
    if (it == t_.end()) {
      if (c != 0) t_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }

  std::map<int, Rational> t_;
};

namespace detail {

// Recursive-descent parser for the scalar grammar: integers, rationals a/b,
// q, q^k with k possibly negative, +, -, *, parentheses.
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Laurent parse() {
    Laurent v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return v;
  }

 private:
  Laurent expr() {
    skip_ws();
    bool neg = consume('-');
    Laurent acc = product();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      if (consume('+'))
        acc += product();
      else if (consume('-'))
        acc -= product();
      else
        return acc;
    }
  }

  Laurent product() {
    Laurent acc = atom();
    for (;;) {
      skip_ws();
      if (!consume('*')) return acc;
      acc *= atom();
    }
  }

  Laurent atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("expected scalar atom", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Laurent v = expr();
      skip_ws();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (c == 'q') {
      // the parameter, possibly with an exponent; reject identifiers like q1
      if (pos_ + 1 < s_.size() && is_ident_char(s_[pos_ + 1]))
        throw SyntaxError("unknown symbol in scalar context", pos_);
      ++pos_;
      int k = 1;
      if (consume('^')) k = parse_int();
      return Laurent::q(k);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = parse_uint();
      if (consume('/')) {
        skip_ws();
        Int den = parse_uint();
        if (den == 0) throw DivisionByZero();
        return Laurent(Rational(num, den));
      }
      return Laurent(Rational(num));
    }
    throw SyntaxError("expected scalar atom", pos_);
  }

  int parse_int() {
    skip_ws();
    bool neg = consume('-');
    Int v = parse_uint();
    if (v > 1000000) throw SyntaxError("exponent too large", pos_);
    int r = v.convert_to<int>();
    return neg ? -r : r;
  }

  Int parse_uint() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw SyntaxError("expected number", pos_);
    Int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Laurent Laurent::parse(std::string_view text) {
  return detail::ScalarParser(text).parse();
}

}  // namespace shapealg
