#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace biharm {

using cplx = std::complex<double>;

// Closed-form complex expressions in z, conj(z) (spelled `zb`) and the
// boundary angle t.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' ['-'|'+'] int)?
//   atom   := number | 'i' | 'z' | 'zb' | 't' | func '(' expr ')' | '(' expr ')'
//   func   := abs | re | im | conj | exp | log | sin | cos | arg
//
// There is no implicit multiplication.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string subexpression);
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

enum class Var : std::uint8_t { z, zb, t };
enum class Func : std::uint8_t { abs, re, im, conj, exp, log, sin, cos, arg };
enum class NodeKind : std::uint8_t { literal, var, neg, add, sub, mul, div, pow, call };

struct ExprNode {
  NodeKind kind{};
  cplx value{};  // literal
  Var var{};
  Func func{};
  int exponent = 0;  // pow
  std::shared_ptr<const ExprNode> lhs;  // also the sole operand of neg/pow/call
  std::shared_ptr<const ExprNode> rhs;
};

bool structurally_equal(const ExprNode& a, const ExprNode& b);

namespace var_mask {
inline constexpr unsigned z = 1u;
inline constexpr unsigned zb = 2u;
inline constexpr unsigned t = 4u;
}  // namespace var_mask

// Immutable parsed expression. Copies share the tree.
class Expr {
 public:
  Expr();  // the constant 0

  const ExprNode& root() const { return *root_; }
  unsigned free_vars() const { return free_vars_; }
  bool uses(Var v) const;
  const std::string& source() const { return source_; }

  // Evaluates with zb bound to conj(z). Throws EvalError if t is used but unbound.
  cplx operator()(cplx z, std::optional<double> t = std::nullopt) const;

  // Boundary data: z = e^{it}, zb = e^{-it}.
  cplx on_circle(double t) const;

  // Constant value if the tree is a bare literal.
  std::optional<cplx> as_literal() const;

  friend bool operator==(const Expr& a, const Expr& b) {
    return structurally_equal(a.root(), b.root());
  }

 private:
  friend Expr parse(std::string_view text);
  friend Expr from_tree(std::shared_ptr<const ExprNode> root);

  explicit Expr(std::shared_ptr<const ExprNode> root);

  struct Instr {
    NodeKind kind;
    cplx value;
    Var var;
    Func func;
    int exponent;
    const ExprNode* node;  // for error messages
  };

  void compile(const ExprNode& node);

  std::shared_ptr<const ExprNode> root_;
  std::vector<Instr> program_;  // postfix
  std::size_t max_stack_ = 0;
  unsigned free_vars_ = 0;
  std::string source_;
};

Expr parse(std::string_view text);
Expr from_tree(std::shared_ptr<const ExprNode> root);

// Fully parenthesized text that reparses to a structurally identical tree.
std::string to_string(const ExprNode& node);
inline std::string to_string(const Expr& e) { return to_string(e.root()); }

// Shortest round-tripping decimal for a double.
std::string format_double(double x);

// "(re+im*i)" style literal text for a complex coefficient, parseable by `parse`.
std::string format_complex(cplx c);

cplx evaluate(const Expr& expr, cplx z, std::optional<double> t = std::nullopt);

}  // namespace biharm
