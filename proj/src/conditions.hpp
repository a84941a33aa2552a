#pragma once

#include "self_map.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fpl {

// A scalar test function with a declared class whose codomain constraints are
// enforced at every evaluation:
//
//   ShrinkingPhi  f(s) in [0, s) for s > 0 (the Boyd-Wong hypothesis that is
//                 checkable pointwise; right-continuity is not enforced)
//   UnitRange     f maps into [0, 1]; the limit property "values near 1 only
//                 near 0" is only falsifiable, never verified, so it is
//                 accepted as declared
//   Empirical     no constraint
//
// A constraint breach raises TestFunctionError; certify propagates it as an
// aborted run, never as a Violated verdict.
class TestFunction {
public:
  enum class DeclaredClass { ShrinkingPhi, UnitRange, Empirical };
  using Evaluator = std::function<Scalar(const Scalar&)>;

  static TestFunction shrinking_phi(Evaluator fn, std::string label);
  static TestFunction unit_range(Evaluator fn, std::string label);
  static TestFunction empirical(Evaluator fn, std::string label);

  Scalar operator()(const Scalar& s) const;
  DeclaredClass declared_class() const;
  const std::string& label() const;
  bool same_as(const TestFunction& other) const { return impl_ == other.impl_; }

private:
  struct Impl;
  explicit TestFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// One contractive-type condition: a universally quantified implication
// premise(x,y) => conclusion(x,y) over ordered carrier pairs. Factories
// validate parameter ranges. The forms:
//
//   banach(r)             true                    =>  d(Tx,Ty) <= r d(x,y),  r in [0,1)
//   boyd_wong(phi)        true                    =>  d(Tx,Ty) <= phi(d(x,y))
//   suzuki_theta(r)       theta(r) d(x,Tx) <= d   =>  d(Tx,Ty) <= r d(x,y),  r in [0,1)
//   contractive           x != y                  =>  d(Tx,Ty) < d(x,y)
//   suzuki_half_strict    d(x,Tx)/2 < d(x,y)      =>  d(Tx,Ty) < d(x,y)
//   weak_contractive      x != y, d(x,Tx) <= d    =>  d(Tx,Ty) < d(x,y)
//   half_nonstrict        d(x,Tx)/2 <= d(x,y)     =>  d(Tx,Ty) <= d(x,y)
//   eta_nonstrict(eta)    eta d(x,Tx) <= d(x,y)   =>  d(Tx,Ty) < d(x,y),  eta > 1/2
//   eta_strict(eta)       eta d(x,Tx) < d(x,y)    =>  d(Tx,Ty) < d(x,y),  eta in (0,1/2]
//   global_psi_half(psi)  d(x,Tx)/2 < d(x,y)      =>  d(Tx,Ty) < psi(d) d
class ConditionKind {
public:
  enum class Tag {
    BanachContraction,
    BoydWong,
    SuzukiTheta,
    Contractive,
    SuzukiHalfStrict,
    WeakContractive,
    HalfNonstrict,
    EtaNonstrict,
    EtaStrict,
    GlobalPsiHalf,
  };

  static ConditionKind banach(Scalar r);
  static ConditionKind boyd_wong(TestFunction phi);
  static ConditionKind suzuki_theta(Scalar r);
  static ConditionKind contractive();
  static ConditionKind suzuki_half_strict();
  static ConditionKind weak_contractive();
  static ConditionKind half_nonstrict();
  static ConditionKind eta_nonstrict(Scalar eta);
  static ConditionKind eta_strict(Scalar eta);
  static ConditionKind global_psi_half(TestFunction psi);

  Tag tag() const { return tag_; }
  const Scalar& param() const;        // r or eta
  const TestFunction& fn() const;     // phi or psi
  std::string name() const;           // snake_case tag name
  const std::vector<std::pair<std::string, std::string>>& params() const {
    return params_text_;
  }

private:
  ConditionKind(Tag tag) : tag_(tag) {}
  Tag tag_;
  std::optional<Scalar> param_;
  std::optional<TestFunction> fn_;
  std::vector<std::pair<std::string, std::string>> params_text_;
};

// Suzuki's breakpoint function on [0,1) into (1/2,1]. Exact rational inputs
// select their branch by the algebraic proxies r^2+r <= 1 and r^2 <= 1/2, so
// the value is an exact rational; floating inputs use floating breakpoints.
Scalar theta(const Scalar& r);

// Closed form of one branch (1, 2, or 3) evaluated in doubles, exposed so the
// breakpoint-agreement checks exercise the same formulas theta uses.
double theta_branch(int branch, double r);

struct Scope {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;  // Sampled pair count

  static Scope exhaustive() { return {}; }
  static Scope sampled(std::uint64_t seed, std::uint64_t count);
};

struct Witness {
  std::string x;
  std::string y;
  Scalar premise_lhs{0};
  Scalar premise_rhs{0};
  Scalar conclusion_lhs{0};
  Scalar conclusion_rhs{0};
};

struct Certificate {
  enum class Verdict { Satisfied, Violated };
  std::string condition;
  std::vector<std::pair<std::string, std::string>> params;
  Verdict verdict = Verdict::Satisfied;
  Scope scope;
  std::uint64_t pairs_checked = 0;
  std::optional<Witness> witness;  // first violating pair in scan order

  bool satisfied() const { return verdict == Verdict::Satisfied; }
};

// Evaluates the condition over ordered pairs (x,y) of the map's
// certification domain (Exhaustive) or over seeded random pairs (Sampled).
// The scan always completes; the witness is the first violation in scan
// order. Exhaustive scope on a lazily materialized carrier is a domain error.
Certificate certify(const MetricSpace& space, const SelfMap& map,
                    const ConditionKind& condition, const Scope& scope);

// Same check restricted to an explicit pair list (used for witness replay).
Certificate certify_pairs(const MetricSpace& space, const SelfMap& map,
                          const ConditionKind& condition,
                          std::span<const std::pair<Point, Point>> pairs);

// Smallest admissible contraction constant over the certification domain:
// max of d(Tx,Ty)/d(x,y) over pairs with d(x,y) > 0.
Scalar minimal_lipschitz(const MetricSpace& space, const SelfMap& map);

// The provable implication chain used by the enumerator audit, hardcoded:
// banach(r) => contractive => suzuki_half_strict => weak_contractive
// (transitively); within one parameterized family, the smaller parameter
// implies the larger for banach, eta_strict, and eta_nonstrict; and
// reflexivity.
bool implication_expected(const ConditionKind& a, const ConditionKind& b);

// Parses "banach(3/4)", "contractive", "eta_nonstrict(eta=3/5)",
// "boyd_wong(scale=9/10)" (phi(s) = scale*s), "global_psi_half(const=9/10)"
// (constant psi), "suzuki_theta(3/4)", "eta_strict(1/4)", and the
// parameterless names. Parameters are exact rational strings.
ConditionKind parse_condition(std::string_view text);

std::string to_json_text(const Certificate& cert);

}  // namespace fpl
