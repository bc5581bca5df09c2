#include "subordkit/fncat.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

constexpr double kDiskTolerance = 1e-12;

bool is_exact_zero(Complex w) { return w.real() == 0.0 && w.imag() == 0.0; }

/// Principal-branch cut: the open negative real axis. The endpoint 0 is a
/// branch point and is handled separately per constructor.
bool on_cut(Complex w) { return w.imag() == 0.0 && w.real() < 0.0; }

/// Chain rule for g evaluated on the inner jet u.
Jet chain(const Jet& g_at_u, const Jet& u) {
  return Jet{g_at_u.f, g_at_u.df * u.df,
             g_at_u.d2f * u.df * u.df + g_at_u.df * u.d2f};
}

}  // namespace

struct AnalyticMap::Node {
  enum class Kind {
    Constant,
    Identity,
    Affine,
    Moebius,
    Exp,
    Sqrt1p,
    Power,
    Sigmoid,
    Sine1p,
    Crescent,
    Polynomial,
    Sum,
    Product,
    Quotient,
    Scale,
  };

  Kind kind;
  std::vector<std::shared_ptr<const Node>> children;
  std::vector<Complex> coeffs;  ///< constructor parameters, meaning per kind
  double exponent = 0.0;
};

namespace {

using Node = AnalyticMap::Node;
using Kind = Node::Kind;

std::shared_ptr<const Node> make_node(Kind kind,
                                      std::vector<std::shared_ptr<const Node>> children = {},
                                      std::vector<Complex> coeffs = {},
                                      double exponent = 0.0) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = std::move(children);
  node->coeffs = std::move(coeffs);
  node->exponent = exponent;
  return node;
}

Jet eval_node(const Node& node, Complex z);

/// Jet of the one-argument catalog function at the inner value u.f; the
/// chain rule is applied by the caller.
Jet outer_jet(const Node& node, Complex u) {
  switch (node.kind) {
    case Kind::Moebius: {
      const Complex a = node.coeffs[0];
      const Complex b = node.coeffs[1];
      const Complex den = 1.0 + b * u;
      if (is_exact_zero(den))
        throw EvalError(ErrorKind::Pole, "moebius denominator vanishes");
      const Complex k = a - b;
      return Jet{(1.0 + a * u) / den, k / (den * den),
                 -2.0 * b * k / (den * den * den)};
    }
    case Kind::Exp: {
      const Complex e = std::exp(u);
      return Jet{e, e, e};
    }
    case Kind::Sqrt1p: {
      const Complex w = 1.0 + u;
      if (on_cut(w))
        throw EvalError(ErrorKind::BranchCut, "sqrt argument on the cut");
      if (is_exact_zero(w))
        throw EvalError(ErrorKind::BranchCut,
                        "sqrt branch point: derivative is singular");
      const Complex s = std::sqrt(w);
      return Jet{s, 0.5 / s, -0.25 / (s * w)};
    }
    case Kind::Power: {
      const double g = node.exponent;
      if (on_cut(u))
        throw EvalError(ErrorKind::BranchCut, "power base on the cut");
      if (is_exact_zero(u))
        throw EvalError(ErrorKind::BranchCut,
                        "power branch point: derivative is singular");
      const Complex w = std::pow(u, g);
      return Jet{w, g * w / u, g * (g - 1.0) * w / (u * u)};
    }
    case Kind::Sigmoid: {
      const Complex e = std::exp(-u);
      const Complex den = 1.0 + e;
      if (is_exact_zero(den))
        throw EvalError(ErrorKind::Pole, "sigmoid denominator vanishes");
      return Jet{2.0 / den, 2.0 * e / (den * den),
                 2.0 * e * (e - 1.0) / (den * den * den)};
    }
    case Kind::Sine1p:
      return Jet{1.0 + std::sin(u), std::cos(u), -std::sin(u)};
    case Kind::Crescent: {
      const Complex q = 1.0 + u * u;
      if (on_cut(q))
        throw EvalError(ErrorKind::BranchCut, "crescent radicand on the cut");
      if (is_exact_zero(q))
        throw EvalError(ErrorKind::BranchCut,
                        "crescent branch point: derivative is singular");
      const Complex s = std::sqrt(q);
      return Jet{u + s, 1.0 + u / s, 1.0 / (s * s * s)};
    }
    default:
      throw EvalError(ErrorKind::Runtime, "outer_jet: not a unary constructor");
  }
}

Jet eval_node(const Node& node, Complex z) {
  switch (node.kind) {
    case Kind::Constant:
      return Jet{node.coeffs[0], 0.0, 0.0};
    case Kind::Identity:
      return Jet{z, 1.0, 0.0};
    case Kind::Affine:
      return Jet{node.coeffs[0] + node.coeffs[1] * z, node.coeffs[1], 0.0};
    case Kind::Polynomial: {
      Complex p = 0.0, dp = 0.0, d2p = 0.0;
      for (auto it = node.coeffs.rbegin(); it != node.coeffs.rend(); ++it) {
        d2p = d2p * z + dp;
        dp = dp * z + p;
        p = p * z + *it;
      }
      return Jet{p, dp, 2.0 * d2p};
    }
    case Kind::Sum: {
      const Jet a = eval_node(*node.children[0], z);
      const Jet b = eval_node(*node.children[1], z);
      return Jet{a.f + b.f, a.df + b.df, a.d2f + b.d2f};
    }
    case Kind::Product: {
      const Jet a = eval_node(*node.children[0], z);
      const Jet b = eval_node(*node.children[1], z);
      return Jet{a.f * b.f, a.df * b.f + a.f * b.df,
                 a.d2f * b.f + 2.0 * a.df * b.df + a.f * b.d2f};
    }
    case Kind::Quotient: {
      const Jet n = eval_node(*node.children[0], z);
      const Jet d = eval_node(*node.children[1], z);
      if (is_exact_zero(d.f))
        throw EvalError(ErrorKind::Pole, "quotient denominator vanishes");
      const Complex d2 = d.f * d.f;
      return Jet{n.f / d.f, (n.df * d.f - n.f * d.df) / d2,
                 (n.d2f * d2 - n.f * d.f * d.d2f - 2.0 * n.df * d.df * d.f +
                  2.0 * n.f * d.df * d.df) /
                     (d2 * d.f)};
    }
    case Kind::Scale: {
      const Complex c = node.coeffs[0];
      const Jet v = eval_node(*node.children[0], c * z);
      return Jet{v.f, c * v.df, c * c * v.d2f};
    }
    default: {
      const Jet u = eval_node(*node.children[0], z);
      return chain(outer_jet(node, u.f), u);
    }
  }
}

/// Value-only recursion with continuous boundary extension at branch points
/// where the map itself (not its derivative) remains continuous.
Complex value_node(const Node& node, Complex z) {
  switch (node.kind) {
    case Kind::Constant:
      return node.coeffs[0];
    case Kind::Identity:
      return z;
    case Kind::Affine:
      return node.coeffs[0] + node.coeffs[1] * z;
    case Kind::Polynomial: {
      Complex p = 0.0;
      for (auto it = node.coeffs.rbegin(); it != node.coeffs.rend(); ++it)
        p = p * z + *it;
      return p;
    }
    case Kind::Sum:
      return value_node(*node.children[0], z) + value_node(*node.children[1], z);
    case Kind::Product:
      return value_node(*node.children[0], z) * value_node(*node.children[1], z);
    case Kind::Quotient: {
      const Complex n = value_node(*node.children[0], z);
      const Complex d = value_node(*node.children[1], z);
      if (is_exact_zero(d))
        throw EvalError(ErrorKind::Pole, "quotient denominator vanishes");
      return n / d;
    }
    case Kind::Scale:
      return value_node(*node.children[0], node.coeffs[0] * z);
    case Kind::Sqrt1p: {
      const Complex w = 1.0 + value_node(*node.children[0], z);
      if (on_cut(w))
        throw EvalError(ErrorKind::BranchCut, "sqrt argument on the cut");
      return std::sqrt(w);  // w == 0 extends continuously to 0
    }
    case Kind::Power: {
      const Complex u = value_node(*node.children[0], z);
      if (on_cut(u))
        throw EvalError(ErrorKind::BranchCut, "power base on the cut");
      if (is_exact_zero(u)) {
        if (node.exponent > 0.0) return 0.0;  // continuous extension
        throw EvalError(ErrorKind::Pole, "zero base with non-positive power");
      }
      return std::pow(u, node.exponent);
    }
    case Kind::Crescent: {
      const Complex u = value_node(*node.children[0], z);
      const Complex q = 1.0 + u * u;
      if (on_cut(q))
        throw EvalError(ErrorKind::BranchCut, "crescent radicand on the cut");
      return u + std::sqrt(q);  // q == 0 extends continuously to u
    }
    default: {
      const Complex u = value_node(*node.children[0], z);
      return outer_jet(node, u).f;
    }
  }
}

bool node_is_zero(const Node& node) {
  switch (node.kind) {
    case Kind::Constant:
      return is_exact_zero(node.coeffs[0]);
    case Kind::Affine:
      return is_exact_zero(node.coeffs[0]) && is_exact_zero(node.coeffs[1]);
    case Kind::Polynomial: {
      for (const Complex& c : node.coeffs)
        if (!is_exact_zero(c)) return false;
      return true;
    }
    case Kind::Sum:
      return node_is_zero(*node.children[0]) && node_is_zero(*node.children[1]);
    case Kind::Product:
      return node_is_zero(*node.children[0]) || node_is_zero(*node.children[1]);
    case Kind::Quotient:
      return node_is_zero(*node.children[0]);
    case Kind::Scale:
      return node_is_zero(*node.children[0]);
    default:
      return false;
  }
}

const char* op_name(Kind kind) {
  switch (kind) {
    case Kind::Constant: return "constant";
    case Kind::Identity: return "identity";
    case Kind::Affine: return "affine";
    case Kind::Moebius: return "moebius";
    case Kind::Exp: return "exp";
    case Kind::Sqrt1p: return "sqrt1p";
    case Kind::Power: return "power";
    case Kind::Sigmoid: return "sigmoid";
    case Kind::Sine1p: return "sine1p";
    case Kind::Crescent: return "crescent";
    case Kind::Polynomial: return "polynomial";
    case Kind::Sum: return "sum";
    case Kind::Product: return "product";
    case Kind::Quotient: return "quotient";
    case Kind::Scale: return "scale";
  }
  return "unknown";
}

nlohmann::json complex_to_json(Complex c) {
  return nlohmann::json::array({c.real(), c.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw EvalError(ErrorKind::Config, "complex literal must be [re, im]");
}

nlohmann::json node_to_json(const Node& node) {
  nlohmann::json out;
  out["op"] = op_name(node.kind);
  nlohmann::json args = nlohmann::json::array();
  for (const auto& child : node.children) args.push_back(node_to_json(*child));
  out["args"] = std::move(args);
  nlohmann::json params = nlohmann::json::object();
  switch (node.kind) {
    case Kind::Constant:
      params["value"] = complex_to_json(node.coeffs[0]);
      break;
    case Kind::Affine:
      params["a"] = complex_to_json(node.coeffs[0]);
      params["b"] = complex_to_json(node.coeffs[1]);
      break;
    case Kind::Moebius:
      params["A"] = complex_to_json(node.coeffs[0]);
      params["B"] = complex_to_json(node.coeffs[1]);
      break;
    case Kind::Power:
      params["exponent"] = node.exponent;
      break;
    case Kind::Polynomial: {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const Complex& c : node.coeffs) coeffs.push_back(complex_to_json(c));
      params["coeffs"] = std::move(coeffs);
      break;
    }
    case Kind::Scale:
      params["c"] = complex_to_json(node.coeffs[0]);
      break;
    default:
      break;
  }
  out["params"] = std::move(params);
  return out;
}

}  // namespace

AnalyticMap::AnalyticMap(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

AnalyticMap AnalyticMap::constant(Complex c) {
  return AnalyticMap(make_node(Kind::Constant, {}, {c}));
}

AnalyticMap AnalyticMap::identity() {
  return AnalyticMap(make_node(Kind::Identity));
}

AnalyticMap AnalyticMap::affine(Complex a, Complex b) {
  return AnalyticMap(make_node(Kind::Affine, {}, {a, b}));
}

AnalyticMap AnalyticMap::moebius(Complex a, Complex b) {
  return moebius(a, b, identity());
}

AnalyticMap AnalyticMap::moebius(Complex a, Complex b, AnalyticMap inner) {
  return AnalyticMap(make_node(Kind::Moebius, {std::move(inner.node_)}, {a, b}));
}

AnalyticMap AnalyticMap::exp_map() { return exp_map(identity()); }

AnalyticMap AnalyticMap::exp_map(AnalyticMap inner) {
  return AnalyticMap(make_node(Kind::Exp, {std::move(inner.node_)}));
}

AnalyticMap AnalyticMap::sqrt1p() { return sqrt1p(identity()); }

AnalyticMap AnalyticMap::sqrt1p(AnalyticMap inner) {
  return AnalyticMap(make_node(Kind::Sqrt1p, {std::move(inner.node_)}));
}

AnalyticMap AnalyticMap::power(AnalyticMap base, double exponent) {
  if (!std::isfinite(exponent))
    throw EvalError(ErrorKind::DomainParam, "power exponent must be finite");
  return AnalyticMap(
      make_node(Kind::Power, {std::move(base.node_)}, {}, exponent));
}

AnalyticMap AnalyticMap::sigmoid() { return sigmoid(identity()); }

AnalyticMap AnalyticMap::sigmoid(AnalyticMap inner) {
  return AnalyticMap(make_node(Kind::Sigmoid, {std::move(inner.node_)}));
}

AnalyticMap AnalyticMap::sine1p() { return sine1p(identity()); }

AnalyticMap AnalyticMap::sine1p(AnalyticMap inner) {
  return AnalyticMap(make_node(Kind::Sine1p, {std::move(inner.node_)}));
}

AnalyticMap AnalyticMap::crescent() { return crescent(identity()); }

AnalyticMap AnalyticMap::crescent(AnalyticMap inner) {
  return AnalyticMap(make_node(Kind::Crescent, {std::move(inner.node_)}));
}

AnalyticMap AnalyticMap::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty())
    throw EvalError(ErrorKind::Config, "polynomial needs at least one coefficient");
  return AnalyticMap(make_node(Kind::Polynomial, {}, std::move(coeffs)));
}

AnalyticMap AnalyticMap::sum(AnalyticMap lhs, AnalyticMap rhs) {
  return AnalyticMap(
      make_node(Kind::Sum, {std::move(lhs.node_), std::move(rhs.node_)}));
}

AnalyticMap AnalyticMap::product(AnalyticMap lhs, AnalyticMap rhs) {
  return AnalyticMap(
      make_node(Kind::Product, {std::move(lhs.node_), std::move(rhs.node_)}));
}

AnalyticMap AnalyticMap::quotient(AnalyticMap num, AnalyticMap den) {
  return AnalyticMap(
      make_node(Kind::Quotient, {std::move(num.node_), std::move(den.node_)}));
}

AnalyticMap AnalyticMap::scale(AnalyticMap inner, Complex c) {
  if (std::abs(c) > 1.0 + kDiskTolerance)
    throw EvalError(ErrorKind::DomainParam, "scale factor must satisfy |c| <= 1");
  return AnalyticMap(make_node(Kind::Scale, {std::move(inner.node_)}, {c}));
}

Jet AnalyticMap::eval(Complex z) const {
  if (std::abs(z) > 1.0 + kDiskTolerance)
    throw EvalError(ErrorKind::OutsideDisk, "evaluation point outside closed disk");
  return eval_node(*node_, z);
}

Complex AnalyticMap::value(Complex z) const {
  if (std::abs(z) > 1.0 + kDiskTolerance)
    throw EvalError(ErrorKind::OutsideDisk, "evaluation point outside closed disk");
  return value_node(*node_, z);
}

bool AnalyticMap::is_zero() const { return node_is_zero(*node_); }

std::string AnalyticMap::op() const { return op_name(node_->kind); }

nlohmann::json AnalyticMap::to_json() const { return node_to_json(*node_); }

AnalyticMap AnalyticMap::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("op") || !spec["op"].is_string())
    throw EvalError(ErrorKind::Config, "expression node needs an \"op\" string");
  const std::string op = spec["op"].get<std::string>();
  const nlohmann::json args =
      spec.contains("args") ? spec["args"] : nlohmann::json::array();
  const nlohmann::json params =
      spec.contains("params") ? spec["params"] : nlohmann::json::object();
  if (!args.is_array())
    throw EvalError(ErrorKind::Config, "\"args\" must be an array");

  auto arg = [&](std::size_t i) -> AnalyticMap {
    if (i >= args.size())
      throw EvalError(ErrorKind::Config, "missing argument for op '" + op + "'");
    return from_json(args[i]);
  };
  auto unary_arg = [&]() -> AnalyticMap {
    return args.empty() ? identity() : arg(0);
  };
  auto param = [&](const char* name) -> const nlohmann::json& {
    if (!params.contains(name))
      throw EvalError(ErrorKind::Config,
                      "op '" + op + "' needs param '" + name + "'");
    return params[name];
  };

  if (op == "constant") return constant(complex_from_json(param("value")));
  if (op == "identity") return identity();
  if (op == "affine")
    return affine(complex_from_json(param("a")), complex_from_json(param("b")));
  if (op == "moebius")
    return moebius(complex_from_json(param("A")), complex_from_json(param("B")),
                   unary_arg());
  if (op == "exp") return exp_map(unary_arg());
  if (op == "sqrt1p") return sqrt1p(unary_arg());
  if (op == "power") {
    const nlohmann::json& e = param("exponent");
    if (!e.is_number())
      throw EvalError(ErrorKind::Config, "power exponent must be a number");
    return power(arg(0), e.get<double>());
  }
  if (op == "sigmoid") return sigmoid(unary_arg());
  if (op == "sine1p") return sine1p(unary_arg());
  if (op == "crescent") return crescent(unary_arg());
  if (op == "polynomial") {
    const nlohmann::json& cs = param("coeffs");
    if (!cs.is_array())
      throw EvalError(ErrorKind::Config, "polynomial coeffs must be an array");
    std::vector<Complex> coeffs;
    coeffs.reserve(cs.size());
    for (const auto& c : cs) coeffs.push_back(complex_from_json(c));
    return polynomial(std::move(coeffs));
  }
  if (op == "sum") return sum(arg(0), arg(1));
  if (op == "product") return product(arg(0), arg(1));
  if (op == "quotient") return quotient(arg(0), arg(1));
  if (op == "scale") return scale(arg(0), complex_from_json(param("c")));
  throw EvalError(ErrorKind::Config, "unknown op '" + op + "'");
}

double fd_residual(const AnalyticMap& map, Complex z, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw EvalError(ErrorKind::DomainParam, "finite-difference step must be positive");
  const Complex step_re(h, 0.0);
  const Complex step_im(0.0, h);
  if (z + step_re == z || z + step_im == z)
    throw EvalError(ErrorKind::StepUnderflow,
                    "step vanished at working precision");

  const Jet base = map.eval(z);
  const Jet pr = map.eval(z + step_re);
  const Jet mr = map.eval(z - step_re);
  const Jet pi = map.eval(z + step_im);
  const Jet mi = map.eval(z - step_im);

  const Complex two_h(2.0 * h, 0.0);
  const Complex two_ih(0.0, 2.0 * h);
  const auto rel = [](Complex approx, Complex exact) {
    return std::abs(approx - exact) / std::max(1.0, std::abs(exact));
  };

  double residual = rel((pr.f - mr.f) / two_h, base.df);
  residual = std::max(residual, rel((pi.f - mi.f) / two_ih, base.df));
  residual = std::max(residual, rel((pr.df - mr.df) / two_h, base.d2f));
  residual = std::max(residual, rel((pi.df - mi.df) / two_ih, base.d2f));
  return residual;
}

std::vector<Complex> boundary_samples(const AnalyticMap& map, std::size_t n,
                                      const std::vector<double>& corner_angles) {
  if (n < 4)
    throw EvalError(ErrorKind::Config, "boundary sampling needs n >= 4");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto near_corner = [&](double theta) {
    for (double corner : corner_angles) {
      double d = std::fmod(std::abs(theta - corner), two_pi);
      if (d > std::numbers::pi) d = two_pi - d;
      if (d < 1e-9) return true;
    }
    return false;
  };

  std::vector<Complex> points;
  points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = two_pi * static_cast<double>(k) / static_cast<double>(n);
    if (near_corner(theta)) continue;
    points.push_back(map.value(std::polar(1.0, theta)));
  }
  return points;
}

}  // namespace subordkit
