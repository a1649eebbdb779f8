#pragma once

// Small infix expression language used for curve components and scalar
// fields.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// Functions: sqrt exp log sin cos sinh cosh tanh.  Names resolve to the
// declared variables, then to caller-supplied constants, then to `pi`.
// Anything else is rejected at parse time.

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "minkhelix/errors.hpp"
#include "minkhelix/jet.hpp"

namespace minkhelix {

class Expression {
 public:
  enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, PowInt, Pow, Sqrt, Exp, Log, Sin, Cos, Sinh, Cosh, Tanh };

  struct Node {
    Op op = Op::Number;
    double number = 0.0;  // literal value, or integer exponent for PowInt
    int variable = -1;
    int lhs = -1;
    int rhs = -1;
  };

  Expression() = default;

  /// Parses `text`.  `variables` fixes the argument order of eval();
  /// `constants` are substituted as literals.  Throws BadExpression.
  static Expression parse(const std::string& text, std::vector<std::string> variables,
                          const std::map<std::string, double>& constants = {});

  const std::string& text() const { return text_; }
  const std::vector<std::string>& variables() const { return variables_; }
  bool empty() const { return nodes_.empty(); }

  /// Evaluates with variables bound positionally.  Works for double and Jet.
  template <typename T>
  T eval(std::span<const T> args) const {
    if (args.size() != variables_.size()) throw DomainError("wrong number of expression arguments");
    return eval_node(root_, args);
  }

  double operator()(double v) const {
    const double a[1] = {v};
    return eval<double>(a);
  }
  double operator()(double x, double y, double z) const {
    const double a[3] = {x, y, z};
    return eval<double>(a);
  }

 private:
  template <typename T>
  T eval_node(int index, std::span<const T> args) const;

  std::string text_;
  std::vector<std::string> variables_;
  std::vector<Node> nodes_;
  int root_ = -1;

  friend class ExpressionParser;
};

/// Taylor jet of a univariate expression at `at`; order <= 6.
Jet eval_jet(const Expression& e, double at, int order);

namespace detail {

inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}
inline const Jet& checked(const Jet& v, const char* what) {
  for (int k = 0; k <= v.order(); ++k)
    if (!std::isfinite(v.coeff(k))) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

inline double value_of(double v) { return v; }
inline double value_of(const Jet& v) { return v.value(); }

inline double ipow(double a, int n) {
  if (n < 0) return 1.0 / ipow(a, -n);
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= a;
    n >>= 1;
    if (n > 0) a *= a;
  }
  return r;
}
inline Jet ipow(const Jet& a, int n) { return pow(a, n); }

}  // namespace detail

template <typename T>
T Expression::eval_node(int index, std::span<const T> args) const {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::pow;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tanh;

  const Node& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.op) {
    case Op::Number:
      if constexpr (std::is_same_v<T, Jet>) {
        // Literals carry the maximum order; mixing truncates to the argument order.
        return Jet(n.number, Jet::kMaxOrder);
      } else {
        return T(n.number);
      }
    case Op::Variable:
      return args[static_cast<std::size_t>(n.variable)];
    case Op::Neg:
      return -eval_node(n.lhs, args);
    case Op::Add:
      return eval_node(n.lhs, args) + eval_node(n.rhs, args);
    case Op::Sub:
      return eval_node(n.lhs, args) - eval_node(n.rhs, args);
    case Op::Mul:
      return eval_node(n.lhs, args) * eval_node(n.rhs, args);
    case Op::Div: {
      T num = eval_node(n.lhs, args);
      T den = eval_node(n.rhs, args);
      if (detail::value_of(den) == 0.0) throw DomainError("division by zero");
      return detail::checked(T(num / den), "division");
    }
    case Op::PowInt: {
      T base = eval_node(n.lhs, args);
      const int e = static_cast<int>(n.number);
      if (e < 0 && detail::value_of(base) == 0.0) throw DomainError("negative power of zero");
      return detail::checked(detail::ipow(base, e), "power");
    }
    case Op::Pow: {
      T base = eval_node(n.lhs, args);
      T expo = eval_node(n.rhs, args);
      if (!(detail::value_of(base) > 0.0)) throw DomainError("real power of non-positive base");
      return detail::checked(T(pow(base, expo)), "power");
    }
    case Op::Sqrt: {
      T a = eval_node(n.lhs, args);
      if (detail::value_of(a) < 0.0) throw DomainError("sqrt of negative value");
      return detail::checked(T(sqrt(a)), "sqrt");
    }
    case Op::Exp:
      return detail::checked(T(exp(eval_node(n.lhs, args))), "exp");
    case Op::Log: {
      T a = eval_node(n.lhs, args);
      if (!(detail::value_of(a) > 0.0)) throw DomainError("log of non-positive value");
      return detail::checked(T(log(a)), "log");
    }
    case Op::Sin:
      return sin(eval_node(n.lhs, args));
    case Op::Cos:
      return cos(eval_node(n.lhs, args));
    case Op::Sinh:
      return detail::checked(T(sinh(eval_node(n.lhs, args))), "sinh");
    case Op::Cosh:
      return detail::checked(T(cosh(eval_node(n.lhs, args))), "cosh");
    case Op::Tanh:
      return tanh(eval_node(n.lhs, args));
  }
  throw DomainError("corrupt expression tree");
}

}  // namespace minkhelix
