#pragma once

/**
 * @file parse.hpp
 * @brief Recursive-descent parser for the descriptor grammar.
 *
 *   spec     := ring ':' summand ('+' summand)*
 *   ring     := 'Z' | 'Zi' | 'Fp[t]' 'p=' int | 'F' 'q=' card
 *             | 'local' 'residue=' card ['label=' name]
 *             | 'dedekind' '{' [name ':' card (',' name ':' card)*] '}' 'min=' card ['spectrum=' ('finite'|'infinite')]
 *   summand  := 'R/(' expr ')' mult | 'R' mult | 'Q' mult | 'Pruefer(' expr ')' mult
 *             | 'sum over primes p <=' int | 'sum over all primes' | '0'
 *   mult     := ['^' card]
 *   card     := int | 'aleph0' | 'uncountable'
 *   expr     := term (('+'|'-') term)*,  term := power ([*] power)*,  power := unary ['^' int]
 *   unary    := '-' unary | int | 'i' | 't' | name | '(' expr ')'
 */

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "covercalc/monoids.hpp"
#include "covercalc/smith.hpp"

namespace covercalc::cli {

namespace detail {

struct Expr {
  enum class Op { Int, Name, Add, Sub, Mul, Pow, Neg };
  Op op = Op::Int;
  std::int64_t value = 0;
  std::string name;
  std::vector<Expr> kids;
  std::size_t pos = 0;
};

/// Product of label powers, or the zero ideal.
struct SymbolicProduct {
  bool zero = false;
  std::map<std::string, unsigned> factors;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  std::size_t pos() const { return i_; }

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    ws();
    return i_ >= s_.size();
  }
  char peek() {
    ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    ws();
    if (s_.substr(i_, w.size()) != w) return false;
    const std::size_t end = i_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end])) && std::isalnum(static_cast<unsigned char>(w.back()))) {
      return false;
    }
    i_ = end;
    return true;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) error("expected '" + std::string(w) + "'");
  }
  void expect_end() {
    if (!at_end()) error("unexpected trailing input");
  }

  [[noreturn]] void error(const std::string& what) const { throw SyntaxError(i_, what); }

  std::string name() {
    ws();
    const std::size_t start = i_;
    if (i_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) error("expected a name");
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  std::uint64_t integer() {
    ws();
    const std::size_t start = i_;
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(s_[i_] - '0');
      if (v > (static_cast<std::uint64_t>(INT64_MAX) - digit) / 10) {
        i_ = start;
        error("integer literal too large");
      }
      v = v * 10 + digit;
      ++i_;
    }
    if (i_ == start) error("expected an integer");
    return v;
  }

  Cardinal cardinal() {
    if (accept_word("aleph0")) return Cardinal::aleph0();
    if (accept_word("uncountable")) return Cardinal::uncountable();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected an integer, 'aleph0' or 'uncountable'");
    return Cardinal(integer());
  }

  // ---- expressions --------------------------------------------------------

  Expr expr() {
    Expr lhs = term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t p = i_++;
      Expr node{c == '+' ? Expr::Op::Add : Expr::Op::Sub, 0, {}, {std::move(lhs), term()}, p};
      lhs = std::move(node);
    }
  }

  Expr term() {
    Expr lhs = power();
    while (true) {
      const char c = peek();
      const std::size_t p = i_;
      if (c == '*') {
        ++i_;
      } else if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_')) {
        return lhs;
      }
      Expr node{Expr::Op::Mul, 0, {}, {std::move(lhs), power()}, p};
      lhs = std::move(node);
    }
  }

  Expr power() {
    Expr base = unary();
    if (peek() == '^') {
      const std::size_t p = i_++;
      Expr e{Expr::Op::Int, static_cast<std::int64_t>(integer()), {}, {}, p};
      return Expr{Expr::Op::Pow, 0, {}, {std::move(base), std::move(e)}, p};
    }
    return base;
  }

  Expr unary() {
    const char c = peek();
    const std::size_t p = i_;
    if (c == '-') {
      ++i_;
      return Expr{Expr::Op::Neg, 0, {}, {unary()}, p};
    }
    if (c == '(') {
      ++i_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr{Expr::Op::Int, static_cast<std::int64_t>(integer()), {}, {}, p};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string n = name();
      return Expr{Expr::Op::Name, 0, std::move(n), {}, p};
    }
    error("expected an element expression");
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

inline RingElement evaluate(const RingHandle& ring, const Expr& e) {
  auto fail_at = [&](const std::string& what) -> RingElement { throw SyntaxError(e.pos, what); };
  switch (e.op) {
    case Expr::Op::Int: return ring_integer(ring, e.value);
    case Expr::Op::Name:
      if (ring.kind() == RingKind::GaussianIntegers && e.name == "i") return GaussianInt{0, 1};
      if (ring.kind() == RingKind::PolyOverPrimeField && e.name == "t") return FpPoly::monomial(ring.characteristic_p(), 1);
      return fail_at("unknown symbol '" + e.name + "' in " + ring.to_string());
    case Expr::Op::Add: return element::add(evaluate(ring, e.kids[0]), evaluate(ring, e.kids[1]));
    case Expr::Op::Sub: return element::sub(evaluate(ring, e.kids[0]), evaluate(ring, e.kids[1]));
    case Expr::Op::Mul: return element::mul(evaluate(ring, e.kids[0]), evaluate(ring, e.kids[1]));
    case Expr::Op::Neg: return element::sub(ring_zero(ring), evaluate(ring, e.kids[0]));
    case Expr::Op::Pow: {
      if (e.kids[1].value > 64) return fail_at("exponent too large");
      return element::pow(evaluate(ring, e.kids[0]), static_cast<unsigned>(e.kids[1].value), ring_one(ring));
    }
  }
  return fail_at("bad expression");
}

inline SymbolicProduct evaluate_symbolic(const Expr& e) {
  auto fail_at = [&](const std::string& what) -> SymbolicProduct {
    throw CoverError(ErrorCode::SemanticError, what + " at position " + std::to_string(e.pos));
  };
  switch (e.op) {
    case Expr::Op::Int:
      if (e.value == 0) return {true, {}};
      if (e.value == 1) return {};
      return fail_at("abstract rings take products of prime labels, not integers");
    case Expr::Op::Name: return {false, {{e.name, 1}}};
    case Expr::Op::Mul: {
      SymbolicProduct a = evaluate_symbolic(e.kids[0]);
      const SymbolicProduct b = evaluate_symbolic(e.kids[1]);
      if (a.zero || b.zero) return {true, {}};
      for (const auto& [k, v] : b.factors) a.factors[k] += v;
      return a;
    }
    case Expr::Op::Pow: {
      SymbolicProduct a = evaluate_symbolic(e.kids[0]);
      const auto n = static_cast<unsigned>(e.kids[1].value);
      if (n == 0) return {};
      for (auto& [k, v] : a.factors) v *= n;
      return a;
    }
    default: return fail_at("abstract rings take products of prime labels only");
  }
}

inline RingHandle ring(Parser& p) {
  const std::size_t start = p.pos();
  const std::string head = p.name();
  if (head == "Z") return RingHandle::integers();
  if (head == "Zi") return RingHandle::gaussian_integers();
  if (head == "Fp" || (head.size() > 1 && head[0] == 'F' && std::all_of(head.begin() + 1, head.end(), ::isdigit))) {
    p.expect('[');
    p.expect_word("t");
    p.expect(']');
    std::uint64_t prime = 0;
    if (head == "Fp") {
      p.expect_word("p");
      p.expect('=');
      prime = p.integer();
    } else {
      prime = std::stoull(head.substr(1));
    }
    if (!arith::is_prime(prime)) throw SyntaxError(start, "Fp[t] needs a prime p, got " + std::to_string(prime));
    return RingHandle::poly_over_prime_field(prime);
  }
  if (head == "F") {
    p.expect_word("q");
    p.expect('=');
    const Cardinal q = p.cardinal();
    if (q.is_finite() && (q.value() < 2 || arith::prime_power(q.value()).first == 0)) {
      throw SyntaxError(start, "field size must be a prime power, got " + q.to_string());
    }
    return RingHandle::field(q);
  }
  if (head == "local") {
    p.expect_word("residue");
    p.expect('=');
    const Cardinal r = p.cardinal();
    std::string label = "m";
    if (p.accept_word("label")) {
      p.expect('=');
      label = p.name();
    }
    if (r.is_finite() && r.value() < 2) throw SyntaxError(start, "residue field has at least 2 elements");
    return RingHandle::abstract_local(r, label);
  }
  if (head == "dedekind") {
    p.expect('{');
    std::vector<DeclaredPrime> primes;
    if (!p.accept('}')) {
      do {
        std::string label = p.name();
        p.expect(':');
        primes.push_back({std::move(label), p.cardinal()});
      } while (p.accept(','));
      p.expect('}');
    }
    p.expect_word("min");
    p.expect('=');
    const Cardinal min = p.cardinal();
    bool infinite = true;
    if (p.accept_word("spectrum")) {
      p.expect('=');
      if (p.accept_word("finite")) {
        infinite = false;
      } else {
        p.expect_word("infinite");
      }
    }
    try {
      return RingHandle::abstract_dedekind(std::move(primes), min, infinite);
    } catch (const CoverError& e) {
      throw SyntaxError(start, e.what());
    }
  }
  throw SyntaxError(start, "unknown ring '" + head + "'");
}

inline FactoredIdeal ideal_literal(const RingHandle& r, const Expr& e) {
  if (r.is_field()) throw CoverError(ErrorCode::SemanticError, "a field has no proper nonzero ideals");
  if (r.is_concrete()) return factor_ideal(r, evaluate(r, e));
  const SymbolicProduct sp = evaluate_symbolic(e);
  if (sp.zero) return FactoredIdeal::zero();
  std::vector<FactoredIdeal::Factor> factors;
  for (const auto& [label, n] : sp.factors) {
    if (n > 0) factors.emplace_back(MaximalIdealId::label(label), n);
  }
  if (factors.empty()) return FactoredIdeal::unit();
  return factor_ideal(r, FactoredIdeal::from_factors(std::move(factors)));
}

inline Cardinal multiplicity(Parser& p) {
  if (p.accept('^')) return p.cardinal();
  return Cardinal(1);
}

inline void summand(Parser& p, ModuleDescriptor& d) {
  const std::size_t start = p.pos();
  if (p.peek() == '0') {
    p.integer();
    return;
  }
  const std::string head = p.name();
  if (head == "R") {
    if (p.accept('/')) {
      p.expect('(');
      const Expr e = p.expr();
      p.expect(')');
      const Cardinal k = multiplicity(p);
      const FactoredIdeal ideal = ideal_literal(d.ring, e);
      if (ideal.is_zero()) {
        d.free_rank = d.free_rank + k;
      } else if (!ideal.is_unit()) {
        d.torsion.push_back({ideal, k});
      }
      return;
    }
    d.free_rank = d.free_rank + multiplicity(p);
    return;
  }
  if (head == "Q") {
    d.field_copies = d.field_copies + multiplicity(p);
    return;
  }
  if (head == "Pruefer") {
    p.expect('(');
    const Expr e = p.expr();
    p.expect(')');
    const Cardinal k = multiplicity(p);
    const FactoredIdeal ideal = ideal_literal(d.ring, e);
    if (!ideal.is_proper_nonzero() || ideal.factors().size() != 1 || ideal.factors().front().second != 1) {
      throw SyntaxError(start, "Pruefer(...) takes a maximal ideal");
    }
    d.pruefer.emplace_back(ideal.factors().front().first, k);
    return;
  }
  if (head == "sum") {
    p.expect_word("over");
    if (p.accept_word("all")) {
      p.expect_word("primes");
      d.prime_family = true;
      return;
    }
    p.expect_word("primes");
    p.expect_word("p");
    p.expect('<');
    p.expect('=');
    const std::uint64_t n = p.integer();
    for (const auto& m : maximal_ideals_with_residue_at_most(d.ring, n)) {
      d.torsion.push_back({FactoredIdeal::prime_power(m, 1), Cardinal(1)});
    }
    return;
  }
  throw SyntaxError(start, "unknown summand '" + head + "'");
}

}  // namespace detail

/// `<ring>: <summand> (+ <summand>)*` into a validated descriptor.
inline ModuleDescriptor parse_spec(std::string_view text) {
  detail::Parser p(text);
  ModuleDescriptor d(detail::ring(p));
  p.expect(':');
  detail::summand(p, d);
  while (p.accept('+')) detail::summand(p, d);
  p.expect_end();
  try {
    validate(d);
  } catch (const CoverError& e) {
    if (e.code() == ErrorCode::SemanticError) throw;
    throw CoverError(ErrorCode::SemanticError, e.what());
  }
  return d;
}

inline RingHandle parse_ring(std::string_view text) {
  detail::Parser p(text);
  RingHandle r = detail::ring(p);
  p.expect_end();
  return r;
}

/// An element literal of a concrete ring, e.g. `2+i` or `t^2+1`.
inline RingElement parse_element(const RingHandle& ring, std::string_view text) {
  if (!ring.is_concrete()) throw CoverError(ErrorCode::UnsupportedLiteral, ring.to_string() + " has no element literals");
  detail::Parser p(text);
  const detail::Expr e = p.expr();
  p.expect_end();
  return detail::evaluate(ring, e);
}

struct ParsedMatrix {
  RingHandle ring;
  Matrix<RingElement> rows;
};

/// `<ring>: [[a, b], [c, d]]`.
inline ParsedMatrix parse_matrix_spec(std::string_view text) {
  detail::Parser p(text);
  ParsedMatrix out{detail::ring(p), {}};
  p.expect(':');
  if (!out.ring.is_concrete()) p.error("matrix entries need a concrete ring");
  p.expect('[');
  do {
    p.expect('[');
    std::vector<RingElement> row;
    do {
      row.push_back(detail::evaluate(out.ring, p.expr()));
    } while (p.accept(','));
    p.expect(']');
    if (!out.rows.empty() && row.size() != out.rows.front().size()) p.error("rows have different lengths");
    out.rows.push_back(std::move(row));
  } while (p.accept(','));
  p.expect(']');
  p.expect_end();
  return out;
}

/// `N + C(2,3), C(0,4)`: summands separated by '+' or ','.
inline MonoidDescriptor parse_monoid(std::string_view text) {
  detail::Parser p(text);
  MonoidDescriptor d;
  if (p.at_end()) throw CoverError(ErrorCode::EmptyDescriptor, "a monoid descriptor needs at least one summand");
  do {
    const std::size_t start = p.pos();
    const std::string head = p.name();
    if (head == "N") {
      d.summands.push_back(CyclicMonoid::naturals());
    } else if (head == "C") {
      p.expect('(');
      const std::uint64_t r = p.integer();
      p.expect(',');
      const std::uint64_t n = p.integer();
      p.expect(')');
      if (n == 0) throw SyntaxError(start, "period must be at least 1");
      d.summands.push_back(CyclicMonoid::finite(r, n));
    } else {
      throw SyntaxError(start, "expected N or C(r,n)");
    }
  } while (p.accept('+') || p.accept(','));
  p.expect_end();
  return d;
}

}  // namespace covercalc::cli
