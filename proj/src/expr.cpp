#include "cforge/expr.hpp"

#include <cctype>
#include <cmath>

#include "cforge/error.hpp"

namespace cforge::expr {
namespace {

NodePtr make(Op op, std::string text = {}, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{op, std::move(text), std::move(lhs), std::move(rhs)});
}

std::optional<Op> function_op(std::string_view name) {
  if (name == "exp") return Op::exp;
  if (name == "ln") return Op::ln;
  if (name == "sqrt") return Op::sqrt;
  if (name == "abs") return Op::abs;
  return std::nullopt;
}

std::string_view function_name(Op op) {
  switch (op) {
    case Op::exp: return "exp";
    case Op::ln: return "ln";
    case Op::sqrt: return "sqrt";
    case Op::abs: return "abs";
    default: return "";
  }
}

bool is_function(Op op) { return !function_name(op).empty(); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    NodePtr node = expression();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw InputError("expression syntax error at column " + std::to_string(pos_ + 1) + ": " +
                     message + " in \"" + std::string(text_) + "\"");
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

  NodePtr expression() {
    NodePtr node = term();
    while (true) {
      if (accept('+')) node = make(Op::add, {}, node, term());
      else if (accept('-')) node = make(Op::sub, {}, node, term());
      else return node;
    }
  }

  NodePtr term() {
    NodePtr node = unary();
    while (true) {
      if (accept('*')) node = make(Op::mul, {}, node, unary());
      else if (accept('/')) node = make(Op::div, {}, node, unary());
      else return node;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, {}, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base_node = base();
    if (accept('^')) return make(Op::pow, {}, base_node, unary());
    return base_node;
  }

  NodePtr base() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (auto op = function_op(name)) {
        if (!accept('(')) fail("expected '(' after " + name);
        NodePtr arg = expression();
        if (!accept(')')) fail("expected ')'");
        return make(*op, {}, arg);
      }
      return make(Op::variable, std::move(name));
    }
    if (accept('(')) {
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;  // "2e" is 2 followed by identifier e
    }
    return make(Op::number, std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
  }
}

void print_into(const NodePtr& node, std::string& out);

void print_operand(const NodePtr& node, int min_precedence, std::string& out) {
  if (precedence(node->op) < min_precedence) {
    out += '(';
    print_into(node, out);
    out += ')';
  } else {
    print_into(node, out);
  }
}

void print_into(const NodePtr& node, std::string& out) {
  const Op op = node->op;
  switch (op) {
    case Op::number:
    case Op::variable: out += node->text; return;
    case Op::neg:
      out += '-';
      print_operand(node->lhs, 3, out);
      return;
    case Op::pow:
      print_operand(node->lhs, 5, out);
      out += '^';
      print_operand(node->rhs, 3, out);
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const int p = precedence(op);
      print_operand(node->lhs, p, out);
      out += op == Op::add ? " + " : op == Op::sub ? " - " : op == Op::mul ? " * " : " / ";
      print_operand(node->rhs, p + 1, out);
      return;
    }
    default:
      out += function_name(op);
      out += '(';
      print_into(node->lhs, out);
      out += ')';
  }
}

void collect(const NodePtr& node, std::set<std::string>& out) {
  if (!node) return;
  if (node->op == Op::variable) out.insert(node->text);
  collect(node->lhs, out);
  collect(node->rhs, out);
}

double checked(double value, const char* what) {
  if (!std::isfinite(value)) throw DomainError(std::string("non-finite result of ") + what);
  return value;
}

double apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::add: return checked(a + b, "addition");
    case Op::sub: return checked(a - b, "subtraction");
    case Op::mul: return checked(a * b, "multiplication");
    case Op::div:
      if (b == 0.0) throw DomainError("division by zero");
      return checked(a / b, "division");
    case Op::pow:
      if (a < 0.0 && std::trunc(b) != b) {
        throw DomainError("fractional power of a negative base");
      }
      if (a == 0.0 && b < 0.0) throw DomainError("negative power of zero");
      return checked(std::pow(a, b), "power");
    default: return 0.0;
  }
}

double apply_unary(Op op, double a) {
  switch (op) {
    case Op::neg: return -a;
    case Op::exp: return checked(std::exp(a), "exp");
    case Op::ln:
      if (a <= 0.0) throw DomainError("ln of a non-positive value");
      return std::log(a);
    case Op::sqrt:
      if (a < 0.0) throw DomainError("sqrt of a negative value");
      return std::sqrt(a);
    case Op::abs: return std::fabs(a);
    default: return a;
  }
}

double number_value(const std::string& text) {
  return std::strtod(text.c_str(), nullptr);
}

std::size_t stack_need(const NodePtr& node) {
  if (!node->lhs) return 1;
  if (!node->rhs) return stack_need(node->lhs);
  return std::max(stack_need(node->lhs), stack_need(node->rhs) + 1);
}

}  // namespace

bool equal(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  return a->op == b->op && a->text == b->text && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

NodePtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const NodePtr& node) {
  std::string out;
  print_into(node, out);
  return out;
}

std::set<std::string> identifiers(const NodePtr& node) {
  std::set<std::string> out;
  collect(node, out);
  return out;
}

double evaluate(const NodePtr& node, const Bindings& bindings) {
  switch (node->op) {
    case Op::number: return number_value(node->text);
    case Op::variable: {
      auto it = bindings.find(node->text);
      if (it == bindings.end()) throw InputError("unknown identifier '" + node->text + "'");
      return it->second;
    }
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow:
      return apply_binary(node->op, evaluate(node->lhs, bindings), evaluate(node->rhs, bindings));
    default: return apply_unary(node->op, evaluate(node->lhs, bindings));
  }
}

std::optional<Rational> evaluate_exact(const NodePtr& node, const ExactBindings& bindings) {
  if (is_function(node->op)) {
    if (node->op != Op::abs) return std::nullopt;
    auto a = evaluate_exact(node->lhs, bindings);
    if (!a) return std::nullopt;
    return Rational(abs(*a));
  }
  switch (node->op) {
    case Op::number: return parse_rational(node->text);
    case Op::variable: {
      auto it = bindings.find(node->text);
      if (it == bindings.end()) throw InputError("unknown identifier '" + node->text + "'");
      return it->second;
    }
    case Op::neg: {
      auto a = evaluate_exact(node->lhs, bindings);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    default: break;
  }
  auto a = evaluate_exact(node->lhs, bindings);
  if (!a) return std::nullopt;
  auto b = evaluate_exact(node->rhs, bindings);
  if (!b) return std::nullopt;
  switch (node->op) {
    case Op::add: return Rational(*a + *b);
    case Op::sub: return Rational(*a - *b);
    case Op::mul: return Rational(*a * *b);
    case Op::div:
      if (*b == 0) throw DomainError("division by zero");
      return Rational(*a / *b);
    case Op::pow: {
      if (b->get_den() != 1 || abs(b->get_num()) > 4096) return std::nullopt;
      const long e = b->get_num().get_si();
      if (*a == 0 && e < 0) throw DomainError("negative power of zero");
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), a->get_num_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
      mpz_pow_ui(den.get_mpz_t(), a->get_den_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
      Rational out = e < 0 ? Rational(den, num) : Rational(num, den);
      out.canonicalize();
      return out;
    }
    default: return std::nullopt;
  }
}

Program Program::compile(const NodePtr& node, const Bindings& params, std::string_view variable) {
  if (stack_need(node) > kMaxStack) throw InputError("expression is nested too deeply");
  Program program;
  auto emit = [&](auto&& self, const NodePtr& n) -> void {
    if (n->op == Op::number) {
      program.code_.push_back({Op::number, number_value(n->text)});
      return;
    }
    if (n->op == Op::variable) {
      if (n->text == variable) {
        program.code_.push_back({Op::variable, 0.0});
        return;
      }
      auto it = params.find(n->text);
      if (it == params.end()) throw InputError("unknown identifier '" + n->text + "'");
      program.code_.push_back({Op::number, it->second});
      return;
    }
    self(self, n->lhs);
    if (n->rhs) self(self, n->rhs);
    program.code_.push_back({n->op, 0.0});
  };
  emit(emit, node);
  return program;
}

double Program::run(double x) const {
  double stack[kMaxStack];
  std::size_t top = 0;
  for (const Instruction& ins : code_) {
    switch (ins.op) {
      case Op::number: stack[top++] = ins.value; break;
      case Op::variable: stack[top++] = x; break;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
      case Op::pow:
        --top;
        stack[top - 1] = apply_binary(ins.op, stack[top - 1], stack[top]);
        break;
      default: stack[top - 1] = apply_unary(ins.op, stack[top - 1]);
    }
  }
  return stack[0];
}

}  // namespace cforge::expr

namespace cforge {

CostCurve CostCurve::parse(std::string_view source, std::map<std::string, Rational, std::less<>> params,
                           bool validate) {
  CostCurve curve;
  curve.source_ = std::string(source);
  curve.ast_ = expr::parse(source);
  curve.params_ = std::move(params);
  expr::Bindings numeric;
  for (const auto& [name, value] : curve.params_) numeric.emplace(name, value.get_d());
  curve.program_ = expr::Program::compile(curve.ast_, numeric);
  if (validate) {
    for (int k = 0; k <= 1000; ++k) {
      const double x = k / 1000.0;
      try {
        curve(x);
      } catch (const DomainError& e) {
        throw InputError("cost curve \"" + curve.source_ + "\" is undefined at x = " +
                         format_double(x) + ": " + e.what());
      }
    }
  }
  return curve;
}

double CostCurve::operator()(double x) const { return program_.run(x); }

Rational CostCurve::exact(const Rational& x, int digits) const {
  expr::ExactBindings bindings(params_.begin(), params_.end());
  bindings.insert_or_assign("x", x);
  if (auto value = expr::evaluate_exact(ast_, bindings)) return *value;
  return rational_from_double_rounded((*this)(x.get_d()), digits);
}

Curve CostCurve::as_curve() const {
  auto program = program_;
  return Curve(source_, [program](double x) { return program.run(x); });
}

}  // namespace cforge
