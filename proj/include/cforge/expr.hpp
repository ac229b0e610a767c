#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cforge/curve.hpp"
#include "cforge/rational.hpp"

namespace cforge::expr {

enum class Op { number, variable, neg, add, sub, mul, div, pow, exp, ln, sqrt, abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression tree node. Numbers keep their source spelling so
/// that printing round-trips exactly.
struct Node {
  Op op = Op::number;
  std::string text;  // literal spelling (number) or identifier name (variable)
  NodePtr lhs;       // operand of unary ops and functions
  NodePtr rhs;
};

bool equal(const NodePtr& a, const NodePtr& b);

/// Parses the cost-curve grammar. Syntax errors throw InputError whose
/// message contains the 1-based column.
NodePtr parse(std::string_view text);

/// Canonical form with minimal parentheses.
std::string print(const NodePtr& node);

std::set<std::string> identifiers(const NodePtr& node);

using Bindings = std::map<std::string, double, std::less<>>;
using ExactBindings = std::map<std::string, Rational, std::less<>>;

/// IEEE double evaluation. DomainError for ln of a non-positive value, sqrt of
/// a negative value, a fractional power of a negative base, division by zero
/// and non-finite results; InputError for unbound identifiers.
double evaluate(const NodePtr& node, const Bindings& bindings);

/// Exact evaluation; nullopt when an irrational operation (function or
/// non-integer power) is reached.
std::optional<Rational> evaluate_exact(const NodePtr& node, const ExactBindings& bindings);

/// Postfix form of a tree with every parameter folded into a constant; the
/// only free variable left is `variable`. Much faster than walking the tree.
class Program {
 public:
  static constexpr std::size_t kMaxStack = 64;

  Program() = default;
  static Program compile(const NodePtr& node, const Bindings& params,
                         std::string_view variable = "x");

  double run(double x) const;

 private:
  struct Instruction {
    Op op;
    double value;
  };
  std::vector<Instruction> code_;
};

}  // namespace cforge::expr

namespace cforge {

/// A function of the single free variable x with named parameters.
class CostCurve {
 public:
  /// Parses `source` and binds every identifier other than x from `params`.
  /// Unknown identifiers are an InputError. Unless `validate` is false, the
  /// curve is evaluated on a 1001-point grid of [0,1] and any domain error or
  /// non-finite value becomes an InputError.
  static CostCurve parse(std::string_view source,
                         std::map<std::string, Rational, std::less<>> params = {},
                         bool validate = true);

  const std::string& source() const { return source_; }
  const expr::NodePtr& ast() const { return ast_; }
  const std::map<std::string, Rational, std::less<>>& params() const { return params_; }

  double operator()(double x) const;
  /// Exact value when the expression evaluates rationally at `x`, otherwise
  /// the double value rounded to `digits` significant digits.
  Rational exact(const Rational& x, int digits = 12) const;

  Curve as_curve() const;

 private:
  std::string source_;
  expr::NodePtr ast_;
  std::map<std::string, Rational, std::less<>> params_;
  expr::Program program_;
};

}  // namespace cforge
