#include "biharm/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace biharm {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

EvalError::EvalError(const std::string& what, std::string subexpression)
    : std::runtime_error(what + " in `" + subexpression + "`"),
      subexpression_(std::move(subexpression)) {}

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_literal(cplx v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::literal;
  n->value = v;
  return n;
}

NodePtr make_var(Var v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::var;
  n->var = v;
  return n;
}

NodePtr make_unary(NodeKind k, NodePtr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

struct FuncName {
  std::string_view name;
  Func func;
};

constexpr std::array<FuncName, 9> kFuncs{{
    {"abs", Func::abs},
    {"re", Func::re},
    {"im", Func::im},
    {"conj", Func::conj},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"arg", Func::arg},
}};

std::string_view func_name(Func f) {
  for (const auto& fn : kFuncs)
    if (fn.func == f) return fn.name;
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    auto e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void unexpected() const {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_binary(NodeKind::add, lhs, term());
      else if (accept('-'))
        lhs = make_binary(NodeKind::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make_binary(NodeKind::mul, lhs, factor());
      else if (accept('/'))
        lhs = make_binary(NodeKind::div, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    if (accept('-')) return make_unary(NodeKind::neg, factor());
    auto base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      if (pos_ < text_.size() && text_[pos_] == '.')
        throw ParseError("non-integer exponent", start);
      throw ParseError("exponent must be an integer literal", start);
    }
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      throw ParseError("non-integer exponent", start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    if (ec != std::errc{} || value > 4096) throw ParseError("exponent out of range", start);
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::pow;
    n->exponent = negative ? -value : value;
    n->lhs = std::move(base);
    return n;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) unexpected();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')')) unexpected();
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    unexpected();
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(value))
      throw ParseError("malformed number", start);
    return make_literal(cplx(value, 0.0));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    if (id == "i") return make_literal(cplx(0.0, 1.0));
    if (id == "z") return make_var(Var::z);
    if (id == "zb") return make_var(Var::zb);
    if (id == "t") return make_var(Var::t);
    for (const auto& fn : kFuncs) {
      if (fn.name != id) continue;
      if (!accept('(')) throw ParseError("expected '(' after " + std::string(id), pos_);
      auto arg = expr();
      if (!accept(')')) unexpected();
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::call;
      n->func = fn.func;
      n->lhs = std::move(arg);
      return n;
    }
    throw ParseError("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

unsigned collect_vars(const ExprNode& n) {
  unsigned mask = 0;
  if (n.kind == NodeKind::var) {
    switch (n.var) {
      case Var::z: mask |= var_mask::z; break;
      case Var::zb: mask |= var_mask::zb; break;
      case Var::t: mask |= var_mask::t; break;
    }
  }
  if (n.lhs) mask |= collect_vars(*n.lhs);
  if (n.rhs) mask |= collect_vars(*n.rhs);
  return mask;
}

cplx int_pow(cplx base, int n) {
  cplx result(1.0, 0.0);
  unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

bool is_zero(cplx c) { return c.real() == 0.0 && c.imag() == 0.0; }

}  // namespace

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::literal:
      return a.value == b.value;
    case NodeKind::var:
      return a.var == b.var;
    case NodeKind::pow:
      if (a.exponent != b.exponent) return false;
      break;
    case NodeKind::call:
      if (a.func != b.func) return false;
      break;
    default:
      break;
  }
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

Expr::Expr() : Expr(make_literal(cplx(0.0, 0.0))) {}

bool Expr::uses(Var v) const {
  switch (v) {
    case Var::z: return (free_vars_ & var_mask::z) != 0;
    case Var::zb: return (free_vars_ & var_mask::zb) != 0;
    case Var::t: return (free_vars_ & var_mask::t) != 0;
  }
  return false;
}

void Expr::compile(const ExprNode& node) {
  if (node.lhs) compile(*node.lhs);
  if (node.rhs) compile(*node.rhs);
  program_.push_back({node.kind, node.value, node.var, node.func, node.exponent, &node});
}

Expr::Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {
  compile(*root_);
  std::size_t depth = 0;
  for (const auto& ins : program_) {
    switch (ins.kind) {
      case NodeKind::literal:
      case NodeKind::var:
        ++depth;
        break;
      case NodeKind::add:
      case NodeKind::sub:
      case NodeKind::mul:
      case NodeKind::div:
        --depth;
        break;
      default:
        break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
  free_vars_ = collect_vars(*root_);
  source_ = to_string(*root_);
}

Expr from_tree(std::shared_ptr<const ExprNode> root) { return Expr(std::move(root)); }

Expr parse(std::string_view text) {
  Parser p(text);
  Expr e(p.run());
  e.source_ = std::string(text);
  return e;
}

std::optional<cplx> Expr::as_literal() const {
  if (root_->kind == NodeKind::literal) return root_->value;
  return std::nullopt;
}

cplx Expr::operator()(cplx z, std::optional<double> t) const {
  constexpr std::size_t kInline = 32;
  std::array<cplx, kInline> small{};
  std::vector<cplx> large;
  cplx* stack = small.data();
  if (max_stack_ > kInline) {
    large.resize(max_stack_);
    stack = large.data();
  }
  std::size_t sp = 0;
  const cplx zb = std::conj(z);
  for (const Instr& ins : program_) {
    switch (ins.kind) {
      case NodeKind::literal:
        stack[sp++] = ins.value;
        break;
      case NodeKind::var:
        switch (ins.var) {
          case Var::z: stack[sp++] = z; break;
          case Var::zb: stack[sp++] = zb; break;
          case Var::t:
            if (!t) throw EvalError("unbound variable t", to_string(*ins.node));
            stack[sp++] = cplx(*t, 0.0);
            break;
        }
        break;
      case NodeKind::neg:
        stack[sp - 1] = -stack[sp - 1];
        break;
      case NodeKind::add:
        --sp;
        stack[sp - 1] += stack[sp];
        break;
      case NodeKind::sub:
        --sp;
        stack[sp - 1] -= stack[sp];
        break;
      case NodeKind::mul:
        --sp;
        stack[sp - 1] *= stack[sp];
        break;
      case NodeKind::div:
        --sp;
        if (is_zero(stack[sp])) throw EvalError("division by zero", to_string(*ins.node));
        stack[sp - 1] /= stack[sp];
        break;
      case NodeKind::pow: {
        cplx& b = stack[sp - 1];
        if (ins.exponent < 0) {
          if (is_zero(b)) throw EvalError("division by zero", to_string(*ins.node));
          b = cplx(1.0, 0.0) / int_pow(b, ins.exponent);
        } else {
          b = int_pow(b, ins.exponent);
        }
        break;
      }
      case NodeKind::call: {
        cplx& a = stack[sp - 1];
        switch (ins.func) {
          case Func::abs: a = cplx(std::abs(a), 0.0); break;
          case Func::re: a = cplx(a.real(), 0.0); break;
          case Func::im: a = cplx(a.imag(), 0.0); break;
          case Func::conj: a = std::conj(a); break;
          case Func::exp: a = std::exp(a); break;
          case Func::log:
            if (is_zero(a)) throw EvalError("logarithm of zero", to_string(*ins.node));
            a = std::log(a);
            break;
          case Func::sin: a = std::sin(a); break;
          case Func::cos: a = std::cos(a); break;
          case Func::arg: a = cplx(std::arg(a), 0.0); break;
        }
        break;
      }
    }
  }
  return stack[0];
}

cplx Expr::on_circle(double t) const {
  return (*this)(cplx(std::cos(t), std::sin(t)), t);
}

cplx evaluate(const Expr& expr, cplx z, std::optional<double> t) { return expr(z, t); }

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string format_complex(cplx c) {
  std::string out = "(" + format_double(c.real());
  if (std::signbit(c.imag()))
    out += "-" + format_double(-c.imag());
  else
    out += "+" + format_double(c.imag());
  return out + "*i)";
}

std::string to_string(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::literal:
      if (n.value.imag() == 0.0 && !std::signbit(n.value.real())) return format_double(n.value.real());
      if (n.value == cplx(0.0, 1.0)) return "i";
      return format_complex(n.value);
    case NodeKind::var:
      switch (n.var) {
        case Var::z: return "z";
        case Var::zb: return "zb";
        case Var::t: return "t";
      }
      return "?";
    case NodeKind::neg:
      return "(-" + to_string(*n.lhs) + ")";
    case NodeKind::add:
      return "(" + to_string(*n.lhs) + " + " + to_string(*n.rhs) + ")";
    case NodeKind::sub:
      return "(" + to_string(*n.lhs) + " - " + to_string(*n.rhs) + ")";
    case NodeKind::mul:
      return "(" + to_string(*n.lhs) + " * " + to_string(*n.rhs) + ")";
    case NodeKind::div:
      return "(" + to_string(*n.lhs) + " / " + to_string(*n.rhs) + ")";
    case NodeKind::pow:
      return "(" + to_string(*n.lhs) + "^" + std::to_string(n.exponent) + ")";
    case NodeKind::call:
      return std::string(func_name(n.func)) + "(" + to_string(*n.lhs) + ")";
  }
  return "?";
}

}  // namespace biharm
