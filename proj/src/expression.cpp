#include "nilgauss/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numbers>

namespace nilgauss {

ExpressionTree ExpressionTree::constant(double v) {
  Node n{Op::Const};
  n.value = v;
  return ExpressionTree({n}, std::to_string(v));
}

int ExpressionTree::arity() const {
  int a = 0;
  for (const auto& n : nodes_)
    if (n.op == Op::Param) a = std::max(a, n.index + 1);
  return a;
}

namespace {

constexpr int kMaxDepth = 200;

class Parser {
 public:
  Parser(const std::string& text, const VariableMap& vars) : s_(text), vars_(vars) {}

  ExpressionTree run() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
    const int root = expr(0);
    skip_ws();
    if (pos_ < s_.size()) {
      throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
    }
    // Reorder so the root is last; children are already earlier.
    if (root != static_cast<int>(nodes_.size()) - 1) {
      throw ParseError(pos_, "internal parser error");
    }
    return ExpressionTree(std::move(nodes_), s_);
  }

 private:
  using Op = ExpressionTree::Op;

  int push(ExpressionTree::Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }
  int binary(Op op, int lhs, int rhs) {
    ExpressionTree::Node n{op};
    n.lhs = lhs;
    n.rhs = rhs;
    return push(n);
  }
  int unary(Op op, int arg, int index = 0) {
    ExpressionTree::Node n{op};
    n.lhs = arg;
    n.index = index;
    return push(n);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void enter(int depth) const {
    if (depth > kMaxDepth) throw ParseError(pos_, "expression nested too deeply");
  }

  int expr(int depth) {
    enter(depth);
    int lhs = term(depth + 1);
    for (;;) {
      if (accept('+')) lhs = binary(Op::Add, lhs, term(depth + 1));
      else if (accept('-')) lhs = binary(Op::Sub, lhs, term(depth + 1));
      else return lhs;
    }
  }

  int term(int depth) {
    enter(depth);
    int lhs = signed_factor(depth + 1);
    for (;;) {
      if (accept('*')) lhs = binary(Op::Mul, lhs, signed_factor(depth + 1));
      else if (accept('/')) lhs = binary(Op::Div, lhs, signed_factor(depth + 1));
      else return lhs;
    }
  }

  int signed_factor(int depth) {
    enter(depth);
    if (accept('-')) return unary(Op::Neg, signed_factor(depth + 1));
    if (accept('+')) return signed_factor(depth + 1);
    return power(depth + 1);
  }

  int power(int depth) {
    enter(depth);
    const int base = primary(depth + 1);
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (accept('-')) negative = true;
    bool parens = accept('(');
    if (parens && accept('-')) negative = !negative;
    skip_ws();
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) throw ParseError(pos_ < s_.size() ? pos_ : s_.size(), "expected integer exponent");
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, exponent);
    if (ec != std::errc() || exponent > 1024) throw ParseError(digits, "exponent out of range");
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      throw ParseError(start, "exponent must be an integer");
    }
    if (parens && !accept(')')) throw ParseError(pos_, "expected ')'");
    return unary(Op::Pow, base, negative ? -exponent : exponent);
  }

  int primary(int depth) {
    enter(depth);
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of expression");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      const int inner = expr(depth + 1);
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return identifier(depth);
    throw ParseError(pos_, std::string("unexpected character '") + ch + "'");
  }

  int number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < s_.size() && (s_[look] == '+' || s_[look] == '-')) ++look;
      if (look < s_.size() && std::isdigit(static_cast<unsigned char>(s_[look]))) {
        pos_ = look;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) throw ParseError(start, "malformed number");
    ExpressionTree::Node n{Op::Const};
    n.value = v;
    return push(n);
  }

  int identifier(int depth) {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    skip_ws();
    const bool call = pos_ < s_.size() && s_[pos_] == '(';
    static const std::map<std::string, Op> functions = {
        {"sin", Op::Sin}, {"cos", Op::Cos}, {"exp", Op::Exp}, {"sqrt", Op::Sqrt}};
    if (auto f = functions.find(name); f != functions.end()) {
      if (!call) throw ParseError(pos_, "function '" + name + "' needs an argument list");
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        throw ParseError(pos_, "arity mismatch: '" + name + "' takes 1 argument, got 0");
      }
      const int arg = expr(depth + 1);
      if (accept(',')) {
        throw ParseError(pos_ - 1, "arity mismatch: '" + name + "' takes 1 argument");
      }
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return unary(f->second, arg);
    }
    if (call) throw ParseError(start, "unknown function '" + name + "'");
    if (name == "pi") {
      ExpressionTree::Node n{Op::Const};
      n.value = std::numbers::pi;
      return push(n);
    }
    if (auto v = vars_.find(name); v != vars_.end()) return param(v->second);
    if (vars_.empty() && name.size() > 1 && name[0] == 'u' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec == std::errc() && idx >= 1 && idx <= 64) return param(idx - 1);
    }
    throw ParseError(start, "unknown identifier '" + name + "'");
  }

  int param(int index) {
    ExpressionTree::Node n{Op::Param};
    n.index = index;
    return push(n);
  }

  const std::string& s_;
  const VariableMap& vars_;
  std::size_t pos_ = 0;
  std::vector<ExpressionTree::Node> nodes_;
};

}  // namespace

ExpressionTree parse_expression(const std::string& text, const VariableMap& variables) {
  return Parser(text, variables).run();
}

}  // namespace nilgauss
