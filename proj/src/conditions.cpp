#include "conditions.hpp"

#include "call_expr.hpp"
#include "errors.hpp"

#include <cmath>

#include "json.hpp"

namespace fpl {

using nlohmann::ordered_json;

struct TestFunction::Impl {
  Evaluator fn;
  DeclaredClass cls;
  std::string label;
};

namespace {

TestFunction::Evaluator require(TestFunction::Evaluator fn) {
  if (!fn) throw ParamError("empty test function");
  return fn;
}

}  // namespace

TestFunction TestFunction::shrinking_phi(Evaluator fn, std::string label) {
  return TestFunction(std::make_shared<const Impl>(
      Impl{require(std::move(fn)), DeclaredClass::ShrinkingPhi, std::move(label)}));
}

TestFunction TestFunction::unit_range(Evaluator fn, std::string label) {
  return TestFunction(std::make_shared<const Impl>(
      Impl{require(std::move(fn)), DeclaredClass::UnitRange, std::move(label)}));
}

TestFunction TestFunction::empirical(Evaluator fn, std::string label) {
  return TestFunction(std::make_shared<const Impl>(
      Impl{require(std::move(fn)), DeclaredClass::Empirical, std::move(label)}));
}

Scalar TestFunction::operator()(const Scalar& s) const {
  Scalar out = impl_->fn(s);
  // codomain gates use raw backend comparisons: a declared-class breach is a
  // mathematical fact about the function, not a tolerance question
  const Scalar zero{0}, one{1};
  switch (impl_->cls) {
    case DeclaredClass::ShrinkingPhi:
      if (out.raw_cmp(zero) < 0 || (s.raw_cmp(zero) > 0 && out.raw_cmp(s) >= 0))
        throw TestFunctionError(impl_->label + "(" + s.str() + ") = " + out.str() +
                                " leaves [0, s)");
      break;
    case DeclaredClass::UnitRange:
      if (out.raw_cmp(zero) < 0 || out.raw_cmp(one) > 0)
        throw TestFunctionError(impl_->label + "(" + s.str() + ") = " + out.str() +
                                " leaves [0, 1]");
      break;
    case DeclaredClass::Empirical:
      break;
  }
  return out;
}

TestFunction::DeclaredClass TestFunction::declared_class() const { return impl_->cls; }

const std::string& TestFunction::label() const { return impl_->label; }

namespace {

void check_unit_interval_param(const Scalar& r, const char* what) {
  const Scalar zero{0}, one{1};
  if (r.raw_cmp(zero) < 0 || r.raw_cmp(one) >= 0)
    throw ParamError(std::string(what) + " must lie in [0, 1), got " + r.str());
}

std::string param_text(const Scalar& v) { return v.str(); }

}  // namespace

ConditionKind ConditionKind::banach(Scalar r) {
  check_unit_interval_param(r, "contraction constant");
  ConditionKind c(Tag::BanachContraction);
  c.params_text_ = {{"r", param_text(r)}};
  c.param_ = std::move(r);
  return c;
}

ConditionKind ConditionKind::boyd_wong(TestFunction phi) {
  if (phi.declared_class() != TestFunction::DeclaredClass::ShrinkingPhi)
    throw ParamError("boyd_wong requires a shrinking test function");
  ConditionKind c(Tag::BoydWong);
  c.params_text_ = {{"phi", phi.label()}};
  c.fn_ = std::move(phi);
  return c;
}

ConditionKind ConditionKind::suzuki_theta(Scalar r) {
  check_unit_interval_param(r, "contraction constant");
  ConditionKind c(Tag::SuzukiTheta);
  c.params_text_ = {{"r", param_text(r)}};
  c.param_ = std::move(r);
  return c;
}

ConditionKind ConditionKind::contractive() { return ConditionKind(Tag::Contractive); }

ConditionKind ConditionKind::suzuki_half_strict() {
  return ConditionKind(Tag::SuzukiHalfStrict);
}

ConditionKind ConditionKind::weak_contractive() {
  return ConditionKind(Tag::WeakContractive);
}

ConditionKind ConditionKind::half_nonstrict() {
  return ConditionKind(Tag::HalfNonstrict);
}

ConditionKind ConditionKind::eta_nonstrict(Scalar eta) {
  if (eta.raw_cmp(Scalar::exact(Rational(1, 2))) <= 0)
    throw ParamError("eta must exceed 1/2, got " + eta.str());
  ConditionKind c(Tag::EtaNonstrict);
  c.params_text_ = {{"eta", param_text(eta)}};
  c.param_ = std::move(eta);
  return c;
}

ConditionKind ConditionKind::eta_strict(Scalar eta) {
  if (eta.raw_cmp(Scalar{0}) <= 0 || eta.raw_cmp(Scalar::exact(Rational(1, 2))) > 0)
    throw ParamError("eta must lie in (0, 1/2], got " + eta.str());
  ConditionKind c(Tag::EtaStrict);
  c.params_text_ = {{"eta", param_text(eta)}};
  c.param_ = std::move(eta);
  return c;
}

ConditionKind ConditionKind::global_psi_half(TestFunction psi) {
  if (psi.declared_class() != TestFunction::DeclaredClass::UnitRange)
    throw ParamError("global_psi_half requires a unit-range test function");
  ConditionKind c(Tag::GlobalPsiHalf);
  c.params_text_ = {{"psi", psi.label()}};
  c.fn_ = std::move(psi);
  return c;
}

const Scalar& ConditionKind::param() const {
  if (!param_) throw DomainError(name() + " has no scalar parameter");
  return *param_;
}

const TestFunction& ConditionKind::fn() const {
  if (!fn_) throw DomainError(name() + " has no test function");
  return *fn_;
}

std::string ConditionKind::name() const {
  switch (tag_) {
    case Tag::BanachContraction: return "banach";
    case Tag::BoydWong: return "boyd_wong";
    case Tag::SuzukiTheta: return "suzuki_theta";
    case Tag::Contractive: return "contractive";
    case Tag::SuzukiHalfStrict: return "suzuki_half_strict";
    case Tag::WeakContractive: return "weak_contractive";
    case Tag::HalfNonstrict: return "half_nonstrict";
    case Tag::EtaNonstrict: return "eta_nonstrict";
    case Tag::EtaStrict: return "eta_strict";
    case Tag::GlobalPsiHalf: return "global_psi_half";
  }
  throw DomainError("bad tag");
}

double theta_branch(int branch, double r) {
  switch (branch) {
    case 1: return 1.0;
    case 2: return (1.0 - r) / (r * r);
    case 3: return 1.0 / (1.0 + r);
  }
  throw ParamError("branch must be 1, 2, or 3");
}

Scalar theta(const Scalar& r) {
  const Scalar zero{0}, one{1};
  if (r.raw_cmp(zero) < 0 || r.raw_cmp(one) >= 0)
    throw DomainError("theta is defined on [0, 1), got " + r.str());
  if (r.is_rational()) {
    const Rational& q = r.rational();
    // breakpoints are irrational, so the squared proxies decide the branch
    // exactly: r <= (sqrt(5)-1)/2 iff r^2 + r <= 1; r <= 1/sqrt(2) iff r^2 <= 1/2
    if (q * q + q <= 1) return Scalar::exact(Rational(1));
    if (q * q <= Rational(1, 2)) return Scalar::exact((1 - q) / (q * q));
    return Scalar::exact(Rational(1) / (1 + q));
  }
  double v = r.as_double();
  static const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  int branch = v <= kGolden ? 1 : (v <= kInvSqrt2 ? 2 : 3);
  return Scalar::floating(theta_branch(branch, v), r.eps());
}

Scope Scope::sampled(std::uint64_t seed, std::uint64_t count) {
  if (count < 1) throw ParamError("sampled scope needs count >= 1");
  Scope s;
  s.kind = Kind::Sampled;
  s.seed = seed;
  s.count = count;
  return s;
}

namespace {

struct PairEval {
  bool premise = false;
  Scalar premise_lhs{0};
  Scalar premise_rhs{0};
  bool conclusion = false;
  Scalar conclusion_lhs{0};
  Scalar conclusion_rhs{0};
};

PairEval evaluate_pair(const MetricSpace& space, const SelfMap& map,
                       const ConditionKind& cond, const Point& x, const Point& y) {
  PairEval ev;
  Point tx = map.apply(space, x);
  Point ty = map.apply(space, y);
  Scalar dxy = space.distance(x, y);
  Scalar dtxty = space.distance(tx, ty);
  ev.conclusion_lhs = dtxty;
  using Tag = ConditionKind::Tag;
  switch (cond.tag()) {
    case Tag::BanachContraction:
      ev.premise = true;
      ev.conclusion_rhs = cond.param() * dxy;
      ev.conclusion = dtxty.le(ev.conclusion_rhs);
      break;
    case Tag::BoydWong:
      ev.premise = true;
      ev.conclusion_rhs = cond.fn()(dxy);
      ev.conclusion = dtxty.le(ev.conclusion_rhs);
      break;
    case Tag::SuzukiTheta: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = theta(cond.param()) * dxtx;
      ev.premise_rhs = dxy;
      ev.premise = ev.premise_lhs.le(dxy);
      ev.conclusion_rhs = cond.param() * dxy;
      ev.conclusion = dtxty.le(ev.conclusion_rhs);
      break;
    }
    case Tag::Contractive:
      ev.premise_lhs = dxy;
      ev.premise = !(x == y);
      ev.conclusion_rhs = dxy;
      ev.conclusion = dtxty.lt(dxy);
      break;
    case Tag::SuzukiHalfStrict: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = dxtx / Scalar{2};
      ev.premise_rhs = dxy;
      ev.premise = ev.premise_lhs.lt(dxy);
      ev.conclusion_rhs = dxy;
      ev.conclusion = dtxty.lt(dxy);
      break;
    }
    case Tag::WeakContractive: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = dxtx;
      ev.premise_rhs = dxy;
      ev.premise = !(x == y) && dxtx.le(dxy);
      ev.conclusion_rhs = dxy;
      ev.conclusion = dtxty.lt(dxy);
      break;
    }
    case Tag::HalfNonstrict: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = dxtx / Scalar{2};
      ev.premise_rhs = dxy;
      ev.premise = ev.premise_lhs.le(dxy);
      ev.conclusion_rhs = dxy;
      ev.conclusion = dtxty.le(dxy);
      break;
    }
    case Tag::EtaNonstrict: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = cond.param() * dxtx;
      ev.premise_rhs = dxy;
      ev.premise = ev.premise_lhs.le(dxy);
      ev.conclusion_rhs = dxy;
      ev.conclusion = dtxty.lt(dxy);
      break;
    }
    case Tag::EtaStrict: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = cond.param() * dxtx;
      ev.premise_rhs = dxy;
      ev.premise = ev.premise_lhs.lt(dxy);
      ev.conclusion_rhs = dxy;
      ev.conclusion = dtxty.lt(dxy);
      break;
    }
    case Tag::GlobalPsiHalf: {
      Scalar dxtx = space.distance(x, tx);
      ev.premise_lhs = dxtx / Scalar{2};
      ev.premise_rhs = dxy;
      ev.premise = ev.premise_lhs.lt(dxy);
      ev.conclusion_rhs = cond.fn()(dxy) * dxy;
      ev.conclusion = dtxty.lt(ev.conclusion_rhs);
      break;
    }
  }
  return ev;
}

Certificate run_pairs(const MetricSpace& space, const SelfMap& map,
                      const ConditionKind& cond, Scope scope,
                      const std::function<std::optional<std::pair<Point, Point>>()>& next) {
  Certificate cert;
  cert.condition = cond.name();
  cert.params = cond.params();
  cert.scope = scope;
  while (auto pair = next()) {
    const auto& [x, y] = *pair;
    ++cert.pairs_checked;
    PairEval ev = evaluate_pair(space, map, cond, x, y);
    if (ev.premise && !ev.conclusion && !cert.witness) {
      cert.verdict = Certificate::Verdict::Violated;
      cert.witness = Witness{space.id_of(x),     space.id_of(y),
                             ev.premise_lhs,     ev.premise_rhs,
                             ev.conclusion_lhs,  ev.conclusion_rhs};
    }
  }
  return cert;
}

}  // namespace

Certificate certify(const MetricSpace& space, const SelfMap& map,
                    const ConditionKind& condition, const Scope& scope) {
  if (scope.kind == Scope::Kind::Exhaustive) {
    auto domain = map.certification_domain(space);
    if (!domain)
      throw DomainError("exhaustive scope needs an enumerable certification domain");
    std::size_t i = 0, j = 0;
    const auto& pts = *domain;
    auto next = [&]() -> std::optional<std::pair<Point, Point>> {
      if (i >= pts.size()) return std::nullopt;
      auto out = std::make_pair(pts[i], pts[j]);
      if (++j == pts.size()) { j = 0; ++i; }
      return out;
    };
    Certificate cert = run_pairs(space, map, condition, scope, next);
    cert.scope.count = cert.pairs_checked;
    return cert;
  }
  std::mt19937_64 rng(scope.seed);
  std::optional<std::vector<Point>> domain = map.certification_domain(space);
  auto draw = [&]() -> Point {
    if (domain) return (*domain)[static_cast<std::size_t>(rng() % domain->size())];
    return space.sample(rng);
  };
  std::uint64_t remaining = scope.count;
  auto next = [&]() -> std::optional<std::pair<Point, Point>> {
    if (remaining == 0) return std::nullopt;
    --remaining;
    Point x = draw();
    Point y = draw();
    return std::make_pair(std::move(x), std::move(y));
  };
  return run_pairs(space, map, condition, scope, next);
}

Certificate certify_pairs(const MetricSpace& space, const SelfMap& map,
                          const ConditionKind& condition,
                          std::span<const std::pair<Point, Point>> pairs) {
  std::size_t i = 0;
  auto next = [&]() -> std::optional<std::pair<Point, Point>> {
    if (i >= pairs.size()) return std::nullopt;
    return pairs[i++];
  };
  Certificate cert = run_pairs(space, map, condition, Scope::exhaustive(), next);
  cert.scope.count = cert.pairs_checked;
  return cert;
}

Scalar minimal_lipschitz(const MetricSpace& space, const SelfMap& map) {
  auto domain = map.certification_domain(space);
  if (!domain || domain->size() < 2)
    throw DegenerateInputError("need at least two certifiable points");
  const auto& pts = *domain;
  std::optional<Scalar> best;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Scalar dxy = space.distance(pts[i], pts[j]);
      if (dxy.raw_zero()) continue;
      Scalar ratio =
          space.distance(map.apply(space, pts[i]), map.apply(space, pts[j])) / dxy;
      if (!best || best->lt(ratio)) best = ratio;
    }
  if (!best) throw DegenerateInputError("no separated pair in the domain");
  return *best;
}

bool implication_expected(const ConditionKind& a, const ConditionKind& b) {
  using Tag = ConditionKind::Tag;
  auto rank = [](Tag t) -> int {
    // chain position; -1 for tags outside the chain
    switch (t) {
      case Tag::BanachContraction: return 0;
      case Tag::Contractive: return 1;
      case Tag::SuzukiHalfStrict: return 2;
      case Tag::WeakContractive: return 3;
      default: return -1;
    }
  };
  if (a.tag() == b.tag()) {
    switch (a.tag()) {
      case Tag::EtaStrict:
      case Tag::BanachContraction:
      case Tag::EtaNonstrict:
        // smaller parameter is the stronger condition for all three
        return a.param().raw_cmp(b.param()) <= 0;
      case Tag::SuzukiTheta:
        return a.param().raw_cmp(b.param()) == 0;
      case Tag::BoydWong:
      case Tag::GlobalPsiHalf:
        return a.fn().same_as(b.fn());
      default:
        return true;
    }
  }
  int ra = rank(a.tag()), rb = rank(b.tag());
  return ra >= 0 && rb >= 0 && ra < rb;
}

ConditionKind parse_condition(std::string_view text) {
  CallExpr expr = parse_call_expr(text);
  auto rational_arg = [&](const char* key, bool required) -> std::optional<Scalar> {
    std::string v = expr.arg(key, true);
    if (v.empty()) {
      if (required)
        throw ParseError(expr.name + " needs a " + key + " parameter");
      return std::nullopt;
    }
    return Scalar::exact(parse_rational(v));
  };
  auto no_args = [&]() {
    if (!expr.args.empty())
      throw ParseError(expr.name + " takes no parameters");
  };
  if (expr.name == "banach") return ConditionKind::banach(*rational_arg("r", true));
  if (expr.name == "suzuki_theta")
    return ConditionKind::suzuki_theta(*rational_arg("r", true));
  if (expr.name == "eta_nonstrict")
    return ConditionKind::eta_nonstrict(*rational_arg("eta", true));
  if (expr.name == "eta_strict")
    return ConditionKind::eta_strict(*rational_arg("eta", true));
  if (expr.name == "boyd_wong") {
    Scalar scale = *rational_arg("scale", true);
    check_unit_interval_param(scale, "scale");
    return ConditionKind::boyd_wong(TestFunction::shrinking_phi(
        [scale](const Scalar& s) { return scale * s; },
        "scale=" + scale.str()));
  }
  if (expr.name == "global_psi_half") {
    Scalar c = *rational_arg("const", true);
    if (c.raw_cmp(Scalar{0}) < 0 || c.raw_cmp(Scalar{1}) > 0)
      throw ParseError("const must lie in [0, 1], got " + c.str());
    return ConditionKind::global_psi_half(TestFunction::unit_range(
        [c](const Scalar&) { return c; }, "const=" + c.str()));
  }
  if (expr.name == "contractive") { no_args(); return ConditionKind::contractive(); }
  if (expr.name == "suzuki_half_strict") {
    no_args();
    return ConditionKind::suzuki_half_strict();
  }
  if (expr.name == "weak_contractive") {
    no_args();
    return ConditionKind::weak_contractive();
  }
  if (expr.name == "half_nonstrict") {
    no_args();
    return ConditionKind::half_nonstrict();
  }
  throw ParseError("unknown condition: " + expr.name);
}

std::string to_json_text(const Certificate& cert) {
  ordered_json j;
  j["condition"] = cert.condition;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : cert.params) params[k] = v;
  j["params"] = std::move(params);
  j["verdict"] = cert.satisfied() ? "satisfied" : "violated";
  j["scope"] = cert.scope.kind == Scope::Kind::Exhaustive ? "exhaustive" : "sampled";
  if (cert.scope.kind == Scope::Kind::Sampled)
    j["seed"] = cert.scope.seed;
  else
    j["seed"] = nullptr;
  j["pairs_checked"] = cert.pairs_checked;
  if (cert.witness) {
    ordered_json w;
    w["x"] = cert.witness->x;
    w["y"] = cert.witness->y;
    w["premise_lhs"] = cert.witness->premise_lhs.str();
    w["premise_rhs"] = cert.witness->premise_rhs.str();
    w["conclusion_lhs"] = cert.witness->conclusion_lhs.str();
    w["conclusion_rhs"] = cert.witness->conclusion_rhs.str();
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace fpl
