#include "minkhelix/expression.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <utility>

namespace minkhelix {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const std::vector<std::string>& variables,
                   const std::map<std::string, double>& constants, Expression& out)
      : text_(text), variables_(variables), constants_(constants), out_(out) {}

  int parse() {
    const int root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw BadExpression("in '" + text_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Expression::Node node) {
    out_.nodes_.push_back(node);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }
  int binary(Op op, int lhs, int rhs) { return add({op, 0.0, -1, lhs, rhs}); }
  int number(double v) { return add({Op::Number, v, -1, -1, -1}); }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return add({Op::Neg, 0.0, -1, parse_unary(), -1});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  // Integer-valued literal exponents (possibly negated) become PowInt so
  // that negative bases are allowed.
  std::optional<int> integer_literal(int index) const {
    const auto& n = out_.nodes_[static_cast<std::size_t>(index)];
    if (n.op == Op::Number && n.number == std::round(n.number) && std::abs(n.number) <= 64) {
      return static_cast<int>(n.number);
    }
    if (n.op == Op::Neg) {
      if (auto inner = integer_literal(n.lhs)) return -*inner;
    }
    return std::nullopt;
  }

  int parse_power() {
    const int base = parse_primary();
    if (!accept('^')) return base;
    const int expo = parse_unary();
    if (auto k = integer_literal(expo)) return add({Op::PowInt, static_cast<double>(*k), -1, base, -1});
    return binary(Op::Pow, base, expo);
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return number(v);
  }

  int parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = text_.substr(start, pos_ - start);
    if (accept('(')) {
      const Op op = function_op(name);
      const int arg = parse_expr();
      if (!accept(')')) fail("expected ')' after argument of " + name);
      return add({op, 0.0, -1, arg, -1});
    }
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i] == name) return add({Op::Variable, 0.0, static_cast<int>(i), -1, -1});
    }
    if (auto it = constants_.find(name); it != constants_.end()) return number(it->second);
    if (name == "pi") return number(std::numbers::pi);
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  Op function_op(const std::string& name) const {
    static const std::map<std::string, Op> table = {
        {"sqrt", Op::Sqrt}, {"exp", Op::Exp},   {"log", Op::Log},   {"sin", Op::Sin},
        {"cos", Op::Cos},   {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"tanh", Op::Tanh},
    };
    auto it = table.find(name);
    if (it == table.end()) fail("unknown function '" + name + "'");
    return it->second;
  }

  const std::string& text_;
  const std::vector<std::string>& variables_;
  const std::map<std::string, double>& constants_;
  Expression& out_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text, std::vector<std::string> variables,
                             const std::map<std::string, double>& constants) {
  Expression e;
  e.text_ = text;
  e.variables_ = std::move(variables);
  ExpressionParser parser(e.text_, e.variables_, constants, e);
  e.root_ = parser.parse();
  return e;
}

Jet eval_jet(const Expression& e, double at, int order) {
  if (order < 0 || order > 6) throw OrderError("jet order must lie in [0, 6]");
  if (e.variables().size() != 1) throw DomainError("eval_jet needs a univariate expression");
  const Jet arg[1] = {Jet::variable(at, order)};
  return e.eval<Jet>(arg).truncated(order);
}

}  // namespace minkhelix
