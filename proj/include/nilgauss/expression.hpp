#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nilgauss/dual.hpp"
#include "nilgauss/error.hpp"

namespace nilgauss {

// Parsed scalar expression over parameters u1..un. Nodes live in a flat
// array; children always precede their parent, so evaluation is a single
// forward pass.
class ExpressionTree {
 public:
  enum class Op { Const, Param, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Sqrt };

  struct Node {
    Op op;
    double value = 0.0;  // Const
    int index = 0;       // Param index, or integer exponent for Pow
    int lhs = -1;
    int rhs = -1;
  };

  ExpressionTree() = default;
  ExpressionTree(std::vector<Node> nodes, std::string source)
      : nodes_(std::move(nodes)), source_(std::move(source)) {}

  static ExpressionTree constant(double v);

  template <class T>
  T evaluate(std::span<const T> params) const {
    std::vector<T> vals(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      switch (n.op) {
        case Op::Const: vals[i] = T(n.value); break;
        case Op::Param:
          if (static_cast<std::size_t>(n.index) >= params.size()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "expression references u" + std::to_string(n.index + 1) + " but only " +
                            std::to_string(params.size()) + " parameters were given");
          }
          vals[i] = params[n.index];
          break;
        case Op::Add: vals[i] = vals[n.lhs] + vals[n.rhs]; break;
        case Op::Sub: vals[i] = vals[n.lhs] - vals[n.rhs]; break;
        case Op::Mul: vals[i] = vals[n.lhs] * vals[n.rhs]; break;
        case Op::Div: vals[i] = vals[n.lhs] / vals[n.rhs]; break;
        case Op::Neg: vals[i] = -vals[n.lhs]; break;
        case Op::Pow: vals[i] = ipow(vals[n.lhs], n.index); break;
        case Op::Sin: { using std::sin; vals[i] = sin(vals[n.lhs]); break; }
        case Op::Cos: { using std::cos; vals[i] = cos(vals[n.lhs]); break; }
        case Op::Exp: { using std::exp; vals[i] = exp(vals[n.lhs]); break; }
        case Op::Sqrt: { using std::sqrt; vals[i] = sqrt(vals[n.lhs]); break; }
      }
    }
    if (vals.empty()) return T(0.0);
    return vals.back();
  }

  double operator()(std::span<const double> params) const { return evaluate<double>(params); }

  // Highest parameter index referenced, plus one.
  int arity() const;
  const std::string& source() const { return source_; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
  std::string source_;
};

// Variable names resolved to parameter indices. The default accepts
// u1, u2, ... (any positive index).
using VariableMap = std::map<std::string, int>;

// Precedence: ^ (integer exponent) > unary minus > * / > + -. Functions:
// sin, cos, exp, sqrt. Constant: pi. Throws ParseError with the character
// offset of the failure.
ExpressionTree parse_expression(const std::string& text, const VariableMap& variables = {});

}  // namespace nilgauss
