#include <cmath>
#include <string>

#include "valironkit/errors.hpp"
#include "valironkit/maps.hpp"

namespace valironkit::maps {

using expr::Expr;
using expr::Op;
using nlohmann::json;

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re")) return {j.at("re").get<double>(), j.value("im", 0.0)};
  throw ConfigError("expected a complex number {\"re\": r, \"im\": s}");
}

namespace {

CVec vec_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of complex numbers");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

json vec_to_json(const CVec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

// Row-major: an array of rows.
CMat mat_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a matrix as an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  CMat m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) throw ConfigError("matrix must be square");
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json mat_to_json(const CMat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Expr node_from_json(const json& j) {
  if (!j.is_object() || !j.contains("op")) throw ConfigError("expression node needs an \"op\" field");
  const std::string name = j.at("op").get<std::string>();
  const auto op = expr::op_from_name(name);
  if (!op) throw ConfigError("unknown primitive '" + name + "'");
  std::vector<Expr> args;
  if (j.contains("args")) {
    if (!j.at("args").is_array()) throw ConfigError("\"args\" must be an array");
    for (const auto& a : j.at("args")) args.push_back(node_from_json(a));
  }
  const json params = j.value("params", json::object());
  auto arg0 = [&]() -> Expr {
    if (args.empty()) return expr::identity();
    if (args.size() != 1) throw ConfigError(name + ": expected one argument");
    return args[0];
  };
  auto two = [&]() {
    if (args.size() != 2) throw ConfigError(name + ": expected two arguments");
  };
  auto one_scalar = [&]() -> Expr {
    if (args.empty()) return expr::variable(0);
    if (args.size() != 1) throw ConfigError(name + ": expected one argument");
    return args[0];
  };
  auto need = [&](const char* key) -> const json& {
    if (!params.contains(key)) throw ConfigError(name + ": missing parameter '" + key + "'");
    return params.at(key);
  };

  switch (*op) {
    case Op::Constant:
      return expr::constant(complex_from_json(need("value")));
    case Op::Variable:
      return expr::variable(params.value("index", 0));
    case Op::Identity:
      return expr::identity();
    case Op::Add:
      two();
      return args[0] + args[1];
    case Op::Subtract:
      two();
      return args[0] - args[1];
    case Op::Multiply:
      two();
      return args[0] * args[1];
    case Op::Divide:
      two();
      return args[0] / args[1];
    case Op::Power:
      return expr::pow(one_scalar(), need("n").get<int>());
    case Op::Sqrt:
      return expr::sqrt(one_scalar());
    case Op::Log:
      return expr::log(one_scalar());
    case Op::Mobius:
      return expr::mobius(complex_from_json(need("a")), complex_from_json(need("b")), complex_from_json(need("c")),
                          complex_from_json(need("d")), one_scalar());
    case Op::Compose:
      two();
      return expr::compose(args[0], args[1]);
    case Op::Vector:
      return expr::vector(args);
    case Op::SiegelTranslation:
      return expr::siegel_translation(vec_from_json(need("b")), arg0());
    case Op::SiegelDilation:
      return expr::siegel_dilation(need("A").get<double>(), arg0());
    case Op::Unitary:
      return expr::unitary(mat_from_json(need("U")), arg0());
    case Op::Psi: {
      const CVec a = vec_from_json(need("a"));
      const CMat U = params.contains("U") ? mat_from_json(params.at("U")) : CMat::Identity(a.size() - 1, a.size() - 1);
      const double A = params.contains("A") ? params.at("A").get<double>() : expr::siegel_height(a);
      return expr::psi(A, a, U, arg0());
    }
    case Op::Cayley:
      return expr::cayley(arg0());
    case Op::InverseCayley:
      return expr::inverse_cayley(arg0());
  }
  throw ConfigError("unknown primitive '" + name + "'");
}

json node_to_json(const Expr& e) {
  const auto& n = e.node();
  json j;
  j["op"] = std::string(expr::op_name(n.op));
  if (!n.args.empty()) {
    json args = json::array();
    for (const auto& a : n.args) args.push_back(node_to_json(a));
    j["args"] = args;
  }
  json params = json::object();
  switch (n.op) {
    case Op::Constant:
      params["value"] = complex_to_json(n.value);
      break;
    case Op::Variable:
      params["index"] = n.index;
      break;
    case Op::Power:
      params["n"] = n.index;
      break;
    case Op::Mobius:
      params["a"] = complex_to_json(n.mobius[0]);
      params["b"] = complex_to_json(n.mobius[1]);
      params["c"] = complex_to_json(n.mobius[2]);
      params["d"] = complex_to_json(n.mobius[3]);
      break;
    case Op::SiegelTranslation:
      params["b"] = vec_to_json(n.vec);
      break;
    case Op::SiegelDilation:
      params["A"] = n.scale;
      break;
    case Op::Unitary:
      params["U"] = mat_to_json(n.mat);
      break;
    case Op::Psi:
      params["A"] = n.scale;
      params["a"] = vec_to_json(n.vec);
      params["U"] = mat_to_json(n.mat);
      break;
    default:
      break;
  }
  if (!params.empty()) j["params"] = params;
  return j;
}

DomainKind domain_from_name(const std::string& s) {
  if (s == "disk") return DomainKind::Disk;
  if (s == "halfplane") return DomainKind::HalfPlane;
  if (s == "ball") return DomainKind::Ball;
  if (s == "siegel") return DomainKind::Siegel;
  throw ConfigError("unknown domain '" + s + "'");
}

}  // namespace

MapDescriptor from_json(const json& j) {
  try {
    if (!j.is_object()) throw ConfigError("map descriptor must be a JSON object");
    const DomainKind kind = domain_from_name(j.at("domain").get<std::string>());
    const int n = j.value("N", 1);
    return MapDescriptor(kind, n, node_from_json(j.at("expr")));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed map descriptor: ") + e.what());
  }
}

json to_json(const MapDescriptor& m) {
  return json{{"domain", to_string(m.domain())}, {"N", m.dim()}, {"expr", node_to_json(m.expr())}};
}

}  // namespace valironkit::maps
