#pragma once

// Free associative algebra over the Laurent scalars: generator sets with a
// Z^k multigrading, words, noncommutative polynomials, and the expression
// grammar shared by the CLI and the presentation file format.

#include "scalars.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>

namespace shapealg {

struct GeneratorSetMismatch : Error {
  GeneratorSetMismatch() : Error("operands belong to different generator sets") {}
};

struct UnknownGenerator : Error {
  std::size_t pos;
  UnknownGenerator(const std::string& name, std::size_t at)
      : Error("unknown generator '" + name + "' (at offset " + std::to_string(at) + ")"),
        pos(at) {}
};

struct NotHomogeneous : Error {
  NotHomogeneous() : Error("polynomial is not multigraded-homogeneous") {}
};

using MultiDegree = std::vector<int>;

inline MultiDegree operator+(MultiDegree a, const MultiDegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Immutable list of named generators with a common-dimension multigrading.
// The listing order doubles as the default precedence for monomial orders.
class GeneratorSet {
 public:
  static std::shared_ptr<const GeneratorSet> make(
      std::vector<std::pair<std::string, MultiDegree>> gens) {
    auto gs = std::shared_ptr<GeneratorSet>(new GeneratorSet());
    std::size_t dim = gens.empty() ? 0 : gens.front().second.size();
    for (auto& [name, grade] : gens) {
      if (name == "q") throw Error("generator name 'q' is reserved for the parameter");
      if (!valid_identifier(name)) throw Error("generator name '" + name + "' is not an identifier");
      if (grade.size() != dim) throw Error("generator gradings have mixed dimensions");
      if (gs->index_.count(name)) throw Error("duplicate generator name '" + name + "'");
      gs->index_.emplace(name, static_cast<int>(gs->names_.size()));
      gs->names_.push_back(std::move(name));
      gs->grades_.push_back(std::move(grade));
    }
    gs->grading_dim_ = dim;
    return gs;
  }

  std::size_t size() const { return names_.size(); }
  std::size_t grading_dim() const { return grading_dim_; }
  const std::string& name(int g) const { return names_.at(static_cast<std::size_t>(g)); }
  const MultiDegree& grade(int g) const { return grades_.at(static_cast<std::size_t>(g)); }
  std::optional<int> index_of(std::string_view n) const {
    auto it = index_.find(std::string(n));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const GeneratorSet& o) const {
    return names_ == o.names_ && grades_ == o.grades_;
  }

  static bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
  }

 private:
  GeneratorSet() = default;
  std::vector<std::string> names_;
  std::vector<MultiDegree> grades_;
  std::map<std::string, int> index_;
  std::size_t grading_dim_ = 0;
};

using Gens = std::shared_ptr<const GeneratorSet>;

inline bool same_gens(const Gens& a, const Gens& b) {
  return a == b || (a && b && *a == *b);
}

// A word is a sequence of generator indices; the empty word is the unit.
using Word = std::vector<int>;

inline MultiDegree word_multidegree(const GeneratorSet& gs, const Word& w) {
  MultiDegree d(gs.grading_dim(), 0);
  for (int g : w) d = d + gs.grade(g);
  return d;
}

inline std::string word_str(const GeneratorSet& gs, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += gs.name(w[i]);
  }
  return out;
}

// subword search: first occurrence of pat in w at position >= from, or -1
inline int find_subword(const Word& w, const Word& pat, std::size_t from = 0) {
  if (pat.empty() || pat.size() > w.size()) return pat.empty() ? 0 : -1;
  for (std::size_t i = from; i + pat.size() <= w.size(); ++i)
    if (std::equal(pat.begin(), pat.end(), w.begin() + static_cast<long>(i)))
      return static_cast<int>(i);
  return -1;
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Noncommutative polynomial: finitely many words with nonzero Laurent
// coefficients, tied to a generator set.
class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(Gens gens) : gens_(std::move(gens)) {}

  static NCPoly zero(Gens gens) { return NCPoly(std::move(gens)); }
  static NCPoly one(Gens gens) { return monomial(std::move(gens), {}, Laurent(1)); }
  static NCPoly monomial(Gens gens, Word w, Laurent c) {
    NCPoly p(std::move(gens));
    if (!c.is_zero()) p.t_.emplace(std::move(w), std::move(c));
    return p;
  }
  static NCPoly scalar(Gens gens, Laurent c) { return monomial(std::move(gens), {}, std::move(c)); }
  static NCPoly generator(Gens gens, int g) { return monomial(std::move(gens), {g}, Laurent(1)); }

  const Gens& gens() const { return gens_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<Word, Laurent>& terms() const { return t_; }

  Laurent coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Laurent() : it->second;
  }

  void add_term(const Word& w, const Laurent& c) {
    if (c.is_zero()) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_.emplace(w, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  NCPoly& operator+=(const NCPoly& o) {
    check(o);
    for (const auto& [w, c] : o.t_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    check(o);
    for (const auto& [w, c] : o.t_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  NCPoly operator-() const {
    NCPoly r(gens_);
    for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
    return r;
  }

  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    a.check(b);
    NCPoly r(a.gens_ ? a.gens_ : b.gens_);
    for (const auto& [wa, ca] : a.t_)
      for (const auto& [wb, cb] : b.t_) r.add_term(concat(wa, wb), ca * cb);
    return r;
  }
  NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }

  friend NCPoly operator*(const Laurent& c, const NCPoly& p) {
    NCPoly r(p.gens_);
    if (c.is_zero()) return r;
    for (const auto& [w, pc] : p.t_) r.t_.emplace(w, c * pc);
    return r;
  }

  bool operator==(const NCPoly& o) const { return same_gens(gens_, o.gens_) && t_ == o.t_; }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

  // a*x*b for words a, b (cheaper than building monomial polynomials)
  NCPoly sandwich(const Word& a, const Word& b) const {
    NCPoly r(gens_);
    for (const auto& [w, c] : t_) r.add_term(concat(a, concat(w, b)), c);
    return r;
  }

  NCPoly map_coeffs(const std::function<Laurent(const Laurent&)>& f) const {
    NCPoly r(gens_);
    for (const auto& [w, c] : t_) r.add_term(w, f(c));
    return r;
  }

  // common multidegree of all words; throws NotHomogeneous otherwise
  MultiDegree multidegree() const {
    if (t_.empty()) throw NotHomogeneous();
    std::optional<MultiDegree> d;
    for (const auto& [w, c] : t_) {
      MultiDegree wd = word_multidegree(*gens_, w);
      if (!d)
        d = wd;
      else if (*d != wd)
        throw NotHomogeneous();
    }
    return *d;
  }

  bool is_homogeneous() const {
    try {
      if (t_.empty()) return true;
      (void)multidegree();
      return true;
    } catch (const NotHomogeneous&) {
      return false;
    }
  }

  int max_word_length() const {
    int m = 0;
    for (const auto& [w, c] : t_) m = std::max<int>(m, static_cast<int>(w.size()));
    return m;
  }

  // Canonical rendering: terms in ascending degree-lexicographic order of the
  // word (listing order as precedence); coefficients in scalar syntax.
  std::string str() const {
    if (t_.empty()) return "0";
    std::vector<const std::pair<const Word, Laurent>*> ts;
    for (const auto& kv : t_) ts.push_back(&kv);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
      if (a->first.size() != b->first.size()) return a->first.size() < b->first.size();
      return a->first < b->first;
    });
    std::string out;
    bool first = true;
    for (auto* kv : ts) {
      const Word& w = kv->first;
      const Laurent& c = kv->second;
      std::string piece;
      bool neg = false;
      if (c.is_unit() || c.is_constant()) {
        Laurent cc = c;
        if (c.terms().begin()->second < 0) {
          neg = true;
          cc = -c;
        }
        if (w.empty())
          piece = cc.str();
        else if (cc.is_one())
          piece = word_str(*gens_, w);
        else
          piece = cc.str() + "*" + word_str(*gens_, w);
      } else {
        piece = "(" + c.str() + ")";
        if (!w.empty()) piece += "*" + word_str(*gens_, w);
      }
      if (first)
        out += (neg ? "-" : "") + piece;
      else
        out += (neg ? " - " : " + ") + piece;
      first = false;
    }
    return out;
  }

  static NCPoly parse(const Gens& gens, std::string_view text);

 private:
  void check(const NCPoly& o) const {
    if (gens_ && o.gens_ && !same_gens(gens_, o.gens_)) throw GeneratorSetMismatch();
  }

  Gens gens_;
  std::map<Word, Laurent> t_;
};

namespace detail {

// Expression grammar over a generator set.  Superset of the scalar grammar:
// atoms are numbers, rationals, q-powers, generator names, or parenthesized
// subexpressions; '*' is (noncommutative) multiplication.
class ExprParser {
 public:
  ExprParser(const Gens& gens, std::string_view s) : gens_(gens), s_(s) {}

  NCPoly parse() {
    NCPoly v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return v;
  }

 private:
  NCPoly expr() {
    skip_ws();
    bool neg = consume('-');
    NCPoly acc = product();
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

  NCPoly product() {
    NCPoly acc = atom();
    for (;;) {
      skip_ws();
      if (!consume('*')) return acc;
      acc *= atom();
    }
  }

  NCPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("expected expression atom", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NCPoly v = expr();
      skip_ws();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = parse_uint();
      Rational v(num);
      if (consume('/')) {
        skip_ws();
        Int den = parse_uint();
        if (den == 0) throw DivisionByZero();
        v = Rational(num, den);
      }
      return NCPoly::scalar(gens_, Laurent(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      std::string ident;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ident += s_[pos_++];
      if (ident == "q") {
        int k = 1;
        if (consume('^')) k = parse_int();
        return NCPoly::scalar(gens_, Laurent::q(k));
      }
      if (auto g = gens_->index_of(ident)) return NCPoly::generator(gens_, *g);
      throw UnknownGenerator(ident, start);
    }
    throw SyntaxError("expected expression atom", pos_);
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

  Gens gens_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NCPoly NCPoly::parse(const Gens& gens, std::string_view text) {
  return detail::ExprParser(gens, text).parse();
}

}  // namespace shapealg
