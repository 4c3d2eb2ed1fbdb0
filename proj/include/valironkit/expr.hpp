#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valironkit/types.hpp"

// Symbolic expression trees for analytic maps.
//
// Every node evaluates to a complex vector. Scalar primitives (arithmetic,
// powers, sqrt, log, Mobius) take and produce length-1 vectors; the vector
// primitives (Siegel translation/dilation, unitary, Psi, Cayley) act on a
// whole point. `compose(outer, inner)` evaluates `outer` with its variables
// bound to the output of `inner`.

namespace valironkit::expr {

enum class Op {
  Constant,
  Variable,
  Identity,
  Add,
  Subtract,
  Multiply,
  Divide,
  Power,
  Sqrt,
  Log,
  Mobius,
  Compose,
  Vector,
  SiegelTranslation,
  SiegelDilation,
  Unitary,
  Psi,
  Cayley,
  InverseCayley,
};

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);

class Expr;

struct Node {
  Op op = Op::Constant;
  std::vector<Expr> args;

  cplx value{};             // Constant
  int index = 0;            // Variable index, Power exponent
  cplx mobius[4] = {};      // (a z + b) / (c z + d)
  double scale = 1.0;       // SiegelDilation A, Psi A
  CVec vec;                 // SiegelTranslation b, Psi a
  CMat mat;                 // Unitary U, Psi U
};

class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  Op op() const { return node_->op; }
  const std::vector<Expr>& args() const { return node_->args; }
  explicit operator bool() const { return static_cast<bool>(node_); }

 private:
  std::shared_ptr<const Node> node_;
};

struct Dual {
  CVec value;
  CVec tangent;
};

/// Length of the output vector for an input of length input_dim.
/// Throws ConfigError when the tree is malformed.
int output_dim(const Expr& e, int input_dim);

/// Checks where the branch-cut primitives (sqrt, log) and the Siegel-domain
/// primitives appear. They are legal only when their argument lives in an
/// unbounded chart (H or the Siegel domain). Cayley switches a bounded chart
/// to an unbounded one and its inverse switches back. Returns whether the
/// output is in an unbounded chart.
bool check_charts(const Expr& e, bool unbounded_input);

CVec evaluate(const Expr& e, const CVec& x);
/// Value and directional derivative J(x) t by forward-mode chain rule.
Dual evaluate_dual(const Expr& e, const CVec& x, const CVec& t);

bool contains_op(const Expr& e, Op op);

// Builders.

Expr constant(cplx c);
Expr variable(int index = 0);
Expr identity();
Expr sqrt(Expr a);
Expr log(Expr a);
Expr pow(Expr a, int n);
Expr mobius(cplx a, cplx b, cplx c, cplx d, Expr arg = variable(0));
Expr compose(Expr outer, Expr inner);
Expr vector(std::vector<Expr> components);
Expr siegel_translation(const CVec& b, Expr arg = identity());
Expr siegel_dilation(double A, Expr arg = identity());
/// U acts on the trailing U.rows() coordinates of its argument.
Expr unitary(const CMat& U, Expr arg = identity());
/// Psi(z) = (A z1 + Re a1 + i|a'|^2 + 2i sqrt(A) <U z', a'>, sqrt(A) U z' + a').
Expr psi(double A, const CVec& a, const CMat& U, Expr arg = identity());
Expr cayley(Expr arg = identity());
Expr inverse_cayley(Expr arg = identity());

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator+(Expr a, cplx b);
Expr operator+(cplx a, Expr b);
Expr operator-(Expr a, cplx b);
Expr operator*(cplx a, Expr b);
Expr operator*(Expr a, cplx b);
Expr operator/(Expr a, cplx b);

/// Siegel height Im w1 - |w'|^2.
double siegel_height(const CVec& w);

}  // namespace valironkit::expr
