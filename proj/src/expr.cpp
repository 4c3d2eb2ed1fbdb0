#include "valironkit/expr.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "valironkit/errors.hpp"

namespace valironkit::expr {
namespace {

struct OpName {
  Op op;
  std::string_view name;
};

constexpr std::array<OpName, 19> kNames = {{
    {Op::Constant, "constant"},
    {Op::Variable, "variable"},
    {Op::Identity, "identity"},
    {Op::Add, "add"},
    {Op::Subtract, "subtract"},
    {Op::Multiply, "multiply"},
    {Op::Divide, "divide"},
    {Op::Power, "power"},
    {Op::Sqrt, "sqrt"},
    {Op::Log, "log"},
    {Op::Mobius, "mobius"},
    {Op::Compose, "compose"},
    {Op::Vector, "vector"},
    {Op::SiegelTranslation, "siegel_translation"},
    {Op::SiegelDilation, "siegel_dilation"},
    {Op::Unitary, "unitary"},
    {Op::Psi, "psi"},
    {Op::Cayley, "cayley"},
    {Op::InverseCayley, "inverse_cayley"},
}};

Expr make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr unary(Op op, Expr a) {
  Node n;
  n.op = op;
  n.args = {std::move(a)};
  return make(std::move(n));
}

Expr binary(Op op, Expr a, Expr b) {
  Node n;
  n.op = op;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

bool is_scalar_op(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Subtract:
    case Op::Multiply:
    case Op::Divide:
    case Op::Power:
    case Op::Sqrt:
    case Op::Log:
    case Op::Mobius:
      return true;
    default:
      return false;
  }
}

std::size_t expected_arity(Op op) {
  switch (op) {
    case Op::Constant:
    case Op::Variable:
    case Op::Identity:
      return 0;
    case Op::Add:
    case Op::Subtract:
    case Op::Multiply:
    case Op::Divide:
    case Op::Compose:
      return 2;
    case Op::Vector:
      return static_cast<std::size_t>(-1);
    default:
      return 1;
  }
}

bool on_cut(cplx a) { return a.imag() == 0.0 && a.real() <= 0.0; }

// <x, y> = sum x_j conj(y_j)
cplx inner(const CVec& x, const CVec& y) { return (y.adjoint() * x)(0); }

void check_unitary(const CMat& U) {
  if (U.rows() != U.cols()) throw ConfigError("unitary matrix must be square");
  if (U.rows() == 0) return;
  const double dev = (U.adjoint() * U - CMat::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw ConfigError("matrix is not unitary (deviation " + std::to_string(dev) + ")");
}

template <bool WithTangent>
struct Eval {
  static Dual run(const Node& n, const CVec& x, const CVec& t) {
    auto scalar = [](cplx v, cplx d) {
      Dual out{CVec(1), CVec()};
      out.value(0) = v;
      if constexpr (WithTangent) {
        out.tangent = CVec(1);
        out.tangent(0) = d;
      }
      return out;
    };
    auto arg = [&](std::size_t i) { return run(n.args[i].node(), x, t); };
    auto d0 = [](const Dual& a) -> cplx {
      if constexpr (WithTangent) return a.tangent(0);
      return cplx{};
    };

    switch (n.op) {
      case Op::Constant:
        return scalar(n.value, 0.0);
      case Op::Variable: {
        if (n.index >= x.size()) throw ConfigError("variable index out of range");
        return scalar(x(n.index), WithTangent ? t(n.index) : cplx{});
      }
      case Op::Identity:
        return Dual{x, WithTangent ? t : CVec()};
      case Op::Add: {
        const Dual a = arg(0), b = arg(1);
        return scalar(a.value(0) + b.value(0), d0(a) + d0(b));
      }
      case Op::Subtract: {
        const Dual a = arg(0), b = arg(1);
        return scalar(a.value(0) - b.value(0), d0(a) - d0(b));
      }
      case Op::Multiply: {
        const Dual a = arg(0), b = arg(1);
        return scalar(a.value(0) * b.value(0), d0(a) * b.value(0) + a.value(0) * d0(b));
      }
      case Op::Divide: {
        const Dual a = arg(0), b = arg(1);
        const cplx bv = b.value(0);
        return scalar(a.value(0) / bv, (d0(a) * bv - a.value(0) * d0(b)) / (bv * bv));
      }
      case Op::Power: {
        const Dual a = arg(0);
        const cplx av = a.value(0);
        if (n.index == 0) return scalar(1.0, 0.0);
        cplx below = 1.0;  // av^(|k| - 1)
        const int m = std::abs(n.index);
        for (int k = 1; k < m; ++k) below *= av;
        if (n.index > 0) return scalar(below * av, static_cast<double>(n.index) * below * d0(a));
        const cplx v = 1.0 / (below * av);
        return scalar(v, static_cast<double>(n.index) * v / av * d0(a));
      }
      case Op::Sqrt: {
        const Dual a = arg(0);
        const cplx v = std::sqrt(a.value(0));
        if constexpr (WithTangent) {
          if (on_cut(a.value(0))) throw BranchError("sqrt differentiated on its branch cut");
        }
        return scalar(v, d0(a) / (2.0 * v));
      }
      case Op::Log: {
        const Dual a = arg(0);
        if constexpr (WithTangent) {
          if (on_cut(a.value(0))) throw BranchError("log differentiated on its branch cut");
        }
        return scalar(std::log(a.value(0)), d0(a) / a.value(0));
      }
      case Op::Mobius: {
        const Dual a = arg(0);
        const cplx z = a.value(0);
        const cplx den = n.mobius[2] * z + n.mobius[3];
        const cplx det = n.mobius[0] * n.mobius[3] - n.mobius[1] * n.mobius[2];
        return scalar((n.mobius[0] * z + n.mobius[1]) / den, det / (den * den) * d0(a));
      }
      case Op::Compose: {
        const Dual inner = arg(1);
        return run(n.args[0].node(), inner.value, inner.tangent);
      }
      case Op::Vector: {
        std::vector<Dual> parts;
        parts.reserve(n.args.size());
        Eigen::Index total = 0;
        for (std::size_t i = 0; i < n.args.size(); ++i) {
          parts.push_back(arg(i));
          total += parts.back().value.size();
        }
        Dual out{CVec(total), WithTangent ? CVec(total) : CVec()};
        Eigen::Index at = 0;
        for (const auto& p : parts) {
          out.value.segment(at, p.value.size()) = p.value;
          if constexpr (WithTangent) out.tangent.segment(at, p.value.size()) = p.tangent;
          at += p.value.size();
        }
        return out;
      }
      case Op::SiegelTranslation: {
        const Dual a = arg(0);
        const auto m = a.value.size() - 1;
        const CVec bp = n.vec.tail(m);
        Dual out{a.value, a.tangent};
        out.value(0) += n.vec(0) + 2.0 * kI * inner(a.value.tail(m), bp);
        out.value.tail(m) += bp;
        if constexpr (WithTangent) out.tangent(0) += 2.0 * kI * inner(a.tangent.tail(m), bp);
        return out;
      }
      case Op::SiegelDilation: {
        const Dual a = arg(0);
        const auto m = a.value.size() - 1;
        const double s = std::sqrt(n.scale);
        Dual out{a.value, a.tangent};
        out.value(0) *= n.scale;
        out.value.tail(m) *= s;
        if constexpr (WithTangent) {
          out.tangent(0) *= n.scale;
          out.tangent.tail(m) *= s;
        }
        return out;
      }
      case Op::Unitary: {
        const Dual a = arg(0);
        const auto m = n.mat.rows();
        Dual out{a.value, a.tangent};
        out.value.tail(m) = n.mat * a.value.tail(m);
        if constexpr (WithTangent) out.tangent.tail(m) = n.mat * a.tangent.tail(m);
        return out;
      }
      case Op::Psi: {
        const Dual a = arg(0);
        const auto m = a.value.size() - 1;
        const double sA = std::sqrt(n.scale);
        const CVec ap = n.vec.tail(m);
        const CVec uz = n.mat * a.value.tail(m);
        Dual out{CVec(m + 1), WithTangent ? CVec(m + 1) : CVec()};
        out.value(0) = n.scale * a.value(0) + n.vec(0).real() + kI * ap.squaredNorm() + 2.0 * kI * sA * inner(uz, ap);
        out.value.tail(m) = sA * uz + ap;
        if constexpr (WithTangent) {
          const CVec ud = n.mat * a.tangent.tail(m);
          out.tangent(0) = n.scale * a.tangent(0) + 2.0 * kI * sA * inner(ud, ap);
          out.tangent.tail(m) = sA * ud;
        }
        return out;
      }
      case Op::Cayley: {
        const Dual a = arg(0);
        const auto m = a.value.size() - 1;
        const cplx z1 = a.value(0);
        const cplx om = 1.0 - z1;
        Dual out{CVec(m + 1), WithTangent ? CVec(m + 1) : CVec()};
        out.value(0) = kI * (1.0 + z1) / om;
        out.value.tail(m) = a.value.tail(m) / om;
        if constexpr (WithTangent) {
          out.tangent(0) = 2.0 * kI * a.tangent(0) / (om * om);
          out.tangent.tail(m) = a.tangent.tail(m) / om + a.value.tail(m) * (a.tangent(0) / (om * om));
        }
        return out;
      }
      case Op::InverseCayley: {
        const Dual a = arg(0);
        const auto m = a.value.size() - 1;
        const cplx w1 = a.value(0);
        const cplx den = w1 + kI;
        Dual out{CVec(m + 1), WithTangent ? CVec(m + 1) : CVec()};
        out.value(0) = (w1 - kI) / den;
        out.value.tail(m) = a.value.tail(m) * (2.0 * kI / den);
        if constexpr (WithTangent) {
          out.tangent(0) = 2.0 * kI * a.tangent(0) / (den * den);
          out.tangent.tail(m) =
              a.tangent.tail(m) * (2.0 * kI / den) - a.value.tail(m) * (2.0 * kI * a.tangent(0) / (den * den));
        }
        return out;
      }
    }
    throw ConfigError("unknown expression node");
  }
};

}  // namespace

std::string_view op_name(Op op) {
  for (const auto& e : kNames)
    if (e.op == op) return e.name;
  return "?";
}

std::optional<Op> op_from_name(std::string_view name) {
  for (const auto& e : kNames)
    if (e.name == name) return e.op;
  return std::nullopt;
}

int output_dim(const Expr& e, int input_dim) {
  if (!e) throw ConfigError("empty expression");
  const Node& n = e.node();
  const std::size_t arity = expected_arity(n.op);
  if (arity != static_cast<std::size_t>(-1) && n.args.size() != arity)
    throw ConfigError(std::string(op_name(n.op)) + ": expected " + std::to_string(arity) + " argument(s)");

  if (is_scalar_op(n.op)) {
    for (const auto& a : n.args)
      if (output_dim(a, input_dim) != 1) throw ConfigError(std::string(op_name(n.op)) + ": arguments must be scalar");
    return 1;
  }
  switch (n.op) {
    case Op::Constant:
      return 1;
    case Op::Variable:
      if (n.index < 0 || n.index >= input_dim) throw ConfigError("variable index out of range");
      return 1;
    case Op::Identity:
      return input_dim;
    case Op::Compose:
      return output_dim(n.args[0], output_dim(n.args[1], input_dim));
    case Op::Vector: {
      if (n.args.empty()) throw ConfigError("vector: needs at least one component");
      int total = 0;
      for (const auto& a : n.args) total += output_dim(a, input_dim);
      return total;
    }
    case Op::SiegelTranslation:
    case Op::Psi: {
      const int d = output_dim(n.args[0], input_dim);
      if (n.vec.size() != d) throw ConfigError(std::string(op_name(n.op)) + ": parameter length does not match point");
      if (n.op == Op::Psi && n.mat.rows() != d - 1) throw ConfigError("psi: U must act on the N-1 trailing coordinates");
      return d;
    }
    case Op::Unitary: {
      const int d = output_dim(n.args[0], input_dim);
      if (n.mat.rows() > d) throw ConfigError("unitary: matrix larger than the point");
      return d;
    }
    case Op::SiegelDilation:
    case Op::Cayley:
    case Op::InverseCayley:
      return output_dim(n.args[0], input_dim);
    default:
      break;
  }
  throw ConfigError("unknown expression node");
}

bool check_charts(const Expr& e, bool unbounded_input) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Compose:
      return check_charts(n.args[0], check_charts(n.args[1], unbounded_input));
    case Op::Cayley:
      if (check_charts(n.args[0], unbounded_input)) throw ConfigError("cayley applied to an unbounded chart");
      return true;
    case Op::InverseCayley:
      if (!check_charts(n.args[0], unbounded_input)) throw ConfigError("inverse_cayley applied to a bounded chart");
      return false;
    case Op::Sqrt:
    case Op::Log:
    case Op::SiegelTranslation:
    case Op::SiegelDilation:
    case Op::Psi:
      if (!check_charts(n.args[0], unbounded_input))
        throw ConfigError(std::string(op_name(n.op)) + " is only allowed on the half-plane / Siegel charts");
      return unbounded_input;
    default:
      for (const auto& a : n.args) check_charts(a, unbounded_input);
      return unbounded_input;
  }
}

CVec evaluate(const Expr& e, const CVec& x) { return Eval<false>::run(e.node(), x, CVec()).value; }

Dual evaluate_dual(const Expr& e, const CVec& x, const CVec& t) { return Eval<true>::run(e.node(), x, t); }

bool contains_op(const Expr& e, Op op) {
  if (e.op() == op) return true;
  for (const auto& a : e.args())
    if (contains_op(a, op)) return true;
  return false;
}

double siegel_height(const CVec& w) { return w(0).imag() - w.tail(w.size() - 1).squaredNorm(); }

Expr constant(cplx c) {
  Node n;
  n.op = Op::Constant;
  n.value = c;
  return make(std::move(n));
}

Expr variable(int index) {
  Node n;
  n.op = Op::Variable;
  n.index = index;
  return make(std::move(n));
}

Expr identity() {
  Node n;
  n.op = Op::Identity;
  return make(std::move(n));
}

Expr sqrt(Expr a) { return unary(Op::Sqrt, std::move(a)); }
Expr log(Expr a) { return unary(Op::Log, std::move(a)); }

Expr pow(Expr a, int k) {
  Node n;
  n.op = Op::Power;
  n.index = k;
  n.args = {std::move(a)};
  return make(std::move(n));
}

Expr mobius(cplx a, cplx b, cplx c, cplx d, Expr arg) {
  if (std::abs(a * d - b * c) == 0.0) throw ConfigError("mobius: degenerate coefficients (ad - bc = 0)");
  Node n;
  n.op = Op::Mobius;
  n.mobius[0] = a;
  n.mobius[1] = b;
  n.mobius[2] = c;
  n.mobius[3] = d;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Expr compose(Expr outer, Expr inner) { return binary(Op::Compose, std::move(outer), std::move(inner)); }

Expr vector(std::vector<Expr> components) {
  Node n;
  n.op = Op::Vector;
  n.args = std::move(components);
  return make(std::move(n));
}

Expr siegel_translation(const CVec& b, Expr arg) {
  if (b.size() < 1) throw ConfigError("siegel_translation: empty parameter");
  if (std::abs(siegel_height(b)) > 1e-12) throw ConfigError("siegel_translation: b must lie on the Siegel boundary");
  Node n;
  n.op = Op::SiegelTranslation;
  n.vec = b;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Expr siegel_dilation(double A, Expr arg) {
  if (!(A > 0.0)) throw ConfigError("siegel_dilation: A must be positive");
  Node n;
  n.op = Op::SiegelDilation;
  n.scale = A;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Expr unitary(const CMat& U, Expr arg) {
  check_unitary(U);
  Node n;
  n.op = Op::Unitary;
  n.mat = U;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Expr psi(double A, const CVec& a, const CMat& U, Expr arg) {
  if (!(A > 1.0)) throw ConfigError("psi: A must exceed 1");
  if (a.size() < 1 || U.rows() != a.size() - 1) throw ConfigError("psi: U must act on the N-1 trailing coordinates");
  if (std::abs(siegel_height(a) - A) > 1e-10) throw ConfigError("psi: height of a does not match A");
  check_unitary(U);
  Node n;
  n.op = Op::Psi;
  n.scale = A;
  n.vec = a;
  n.mat = U;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Expr cayley(Expr arg) { return unary(Op::Cayley, std::move(arg)); }
Expr inverse_cayley(Expr arg) { return unary(Op::InverseCayley, std::move(arg)); }

Expr operator+(Expr a, Expr b) { return binary(Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return binary(Op::Subtract, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return binary(Op::Multiply, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return binary(Op::Divide, std::move(a), std::move(b)); }
Expr operator+(Expr a, cplx b) { return std::move(a) + constant(b); }
Expr operator+(cplx a, Expr b) { return constant(a) + std::move(b); }
Expr operator-(Expr a, cplx b) { return std::move(a) - constant(b); }
Expr operator*(cplx a, Expr b) { return constant(a) * std::move(b); }
Expr operator*(Expr a, cplx b) { return std::move(a) * constant(b); }
Expr operator/(Expr a, cplx b) { return std::move(a) / constant(b); }

}  // namespace valironkit::expr
