#pragma once

// A small expression language for fields x(t, z0..z{n-1}) that are entire in
// the state variables. The grammar only admits holomorphic building blocks:
//
//   list   := expr (',' expr)*
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*        divisor must be state-free
//   factor := ('+' | '-') factor | base ('^' ['-'] integer)?
//   base   := number | 'i' | 't' | 'z' index | '(' expr ')' | func '(' expr ')'
//   func   := 'exp' | 'sin' | 'cos'
//   number := decimal literal, optionally suffixed with 'i'
//
// Negative powers are accepted only for state-free bases. '#' starts a
// comment that runs to the end of the line.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holocurve/lincomplex.hpp"

namespace holocurve {

enum class Function { Exp, Sin, Cos };

/// Immutable expression tree node handle; copies share structure.
class Expr {
 public:
  static Expr literal(Complex value);
  static Expr time();
  static Expr state(std::size_t index);
  static Expr negate(Expr operand);
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  /// Throws ParameterError when the divisor depends on a state variable.
  static Expr div(Expr lhs, Expr rhs);
  /// Throws ParameterError for a negative exponent on a state-dependent base.
  static Expr power(Expr base, int exponent);
  static Expr call(Function fn, Expr argument);

  Complex evaluate(double t, std::span<const Complex> state) const;
  bool depends_on_state() const noexcept;
  /// Largest state index used, or -1 for state-free expressions.
  long max_state_index() const noexcept;
  /// Fully parenthesized text that parses back to an equivalent tree.
  std::string to_string() const;

 struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// One expression per output coordinate; output dimension equals the state dimension.
class FieldExpr {
 public:
  FieldExpr(std::vector<Expr> coords, std::size_t dim);

  static FieldExpr zero(std::size_t dim);
  /// a*lhs + b*rhs, coordinatewise.
  static FieldExpr combine(Complex a, const FieldExpr& lhs, Complex b, const FieldExpr& rhs);

  std::size_t dimension() const noexcept { return dim_; }
  const Expr& operator[](std::size_t i) const { return coords_[i]; }
  CVector evaluate(double t, const CVector& state) const;
  std::string to_string() const;

 private:
  std::vector<Expr> coords_;
  std::size_t dim_;
};

/// Parses a comma-separated coordinate list in n state variables.
/// Throws ParseError (with line:column) for syntax errors, forbidden
/// primitives (conj, abs, re, im, ...), state variables in denominators,
/// unknown identifiers and arity mismatches.
FieldExpr parse_field(std::string_view source, std::size_t n);

/// Parses a state- and time-free expression such as "0.5-2i".
Complex parse_constant(std::string_view source);

/// A field expression together with the box it is defined on.
class Field {
 public:
  Field(FieldExpr expr, Box domain);

  /// Convenience: parse `source` in domain.dimension() variables.
  static Field parse(std::string_view source, const Box& domain);
  static Field zero(const Box& domain);

  const FieldExpr& expr() const noexcept { return expr_; }
  const Box& domain() const noexcept { return domain_; }
  std::size_t dimension() const noexcept { return expr_.dimension(); }

  /// a*lhs + b*rhs on lhs's domain.
  static Field combine(Complex a, const Field& lhs, Complex b, const Field& rhs);

 private:
  FieldExpr expr_;
  Box domain_;
};

/// x(t, xi) after checking (t, xi) against the closed domain; throws
/// DomainError carrying t and the distance outside, or EvaluationError when
/// the expression yields a non-finite value.
CVector eval_field(const Field& f, double t, const CVector& xi);

/// Field file: a coordinate list followed by
///   domain { t0 = ..., A = ..., center = [...], radius = ..., p = ... }
/// (p optional, default 2). The dimension is the length of `center`.
Field parse_field_file(std::string_view text);

}  // namespace holocurve
