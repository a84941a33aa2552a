#include "metric_space.hpp"

#include "errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace fpl {

using nlohmann::ordered_json;

std::size_t Point::index() const {
  if (!is_index()) throw DomainError("point is not index-addressed");
  return std::get<std::size_t>(rep_);
}

const Scalar& Point::coordinate() const {
  if (is_index()) throw DomainError("point is not coordinate-addressed");
  return std::get<Scalar>(rep_);
}

bool operator==(const Point& a, const Point& b) {
  if (a.is_index() != b.is_index()) return false;
  if (a.is_index()) return a.index() == b.index();
  return a.coordinate().identical(b.coordinate());
}

MetricSpace MetricSpace::finite_explicit(std::string label,
                                         std::vector<std::string> ids,
                                         std::vector<Scalar> matrix_row_major) {
  if (ids.empty()) throw DegenerateInputError("empty carrier");
  if (matrix_row_major.size() != ids.size() * ids.size())
    throw ParamError("distance matrix is not n-by-n");
  std::set<std::string_view> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw ParamError("duplicate point id");
  MetricSpace s;
  s.kind_ = Kind::FiniteExplicit;
  s.label_ = std::move(label);
  s.ids_ = std::move(ids);
  s.matrix_ = std::move(matrix_row_major);
  return s;
}

MetricSpace MetricSpace::line_embedded(std::string label,
                                       std::vector<std::string> ids,
                                       std::vector<Scalar> coords) {
  if (ids.empty()) throw DegenerateInputError("empty carrier");
  if (coords.size() != ids.size()) throw ParamError("one coordinate per id required");
  std::set<std::string_view> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw ParamError("duplicate point id");
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = i + 1; j < coords.size(); ++j)
      if (coords[i].identical(coords[j]))
        throw ParamError("coordinates must be distinct: " + ids[i] + ", " + ids[j]);
  MetricSpace s;
  s.kind_ = Kind::LineEmbedded;
  s.label_ = std::move(label);
  s.ids_ = std::move(ids);
  s.coords_ = std::move(coords);
  return s;
}

MetricSpace MetricSpace::line_lazy(std::string label, Membership member,
                                   Sampler sampler, bool float_convertible) {
  if (!member || !sampler) throw ParamError("lazy carrier needs membership and sampler");
  MetricSpace s;
  s.kind_ = Kind::LineLazy;
  s.label_ = std::move(label);
  s.member_ = std::move(member);
  s.sampler_ = std::move(sampler);
  s.float_convertible_ = float_convertible;
  return s;
}

std::size_t MetricSpace::size() const {
  if (!is_finite()) throw DomainError("lazy carrier has no enumerable size");
  return ids_.size();
}

const std::vector<std::string>& MetricSpace::ids() const {
  if (!is_finite()) throw DomainError("lazy carrier has no id list");
  return ids_;
}

std::size_t MetricSpace::index_of(std::string_view id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end())
    throw DomainError("unknown point id: " + std::string(id));
  return static_cast<std::size_t>(it - ids_.begin());
}

Point MetricSpace::point(std::string_view id) const {
  if (is_finite()) return Point::at(index_of(id));
  Scalar c = float_backend_
                 ? Scalar::floating(static_cast<double>(parse_rational(id)), eps_)
                 : Scalar::exact(parse_rational(id));
  if (!member_(c)) throw DomainError("coordinate outside carrier: " + std::string(id));
  return Point::coord(std::move(c));
}

std::string MetricSpace::id_of(const Point& p) const {
  check_point(p);
  if (p.is_index()) return ids_[p.index()];
  return p.coordinate().str();
}

bool MetricSpace::contains(const Point& p) const {
  if (is_finite()) return p.is_index() && p.index() < ids_.size();
  return !p.is_index() && member_(p.coordinate());
}

void MetricSpace::check_point(const Point& p) const {
  if (!contains(p)) throw DomainError("point is not in the carrier");
}

Scalar MetricSpace::coordinate(const Point& p) const {
  check_point(p);
  switch (kind_) {
    case Kind::FiniteExplicit:
      throw DomainError("explicit-matrix carrier has no coordinates");
    case Kind::LineEmbedded:
      return coords_[p.index()];
    case Kind::LineLazy:
      return p.coordinate();
  }
  throw DomainError("bad kind");
}

Scalar MetricSpace::distance(const Point& x, const Point& y) const {
  check_point(x);
  check_point(y);
  if (kind_ == Kind::FiniteExplicit)
    return matrix_[x.index() * ids_.size() + y.index()];
  return (coordinate(x) - coordinate(y)).abs();
}

Point MetricSpace::sample(std::mt19937_64& rng) const {
  if (is_finite()) return Point::at(static_cast<std::size_t>(rng() % ids_.size()));
  Scalar c = sampler_(rng);
  if (float_backend_) c = Scalar::floating(c.as_double(), eps_);
  if (!member_(c)) throw DomainError("sampler produced a point outside the carrier");
  return Point::coord(std::move(c));
}

MetricSpace MetricSpace::to_float(double eps) const {
  if (eps < 0) throw ParamError("negative tolerance");
  MetricSpace s = *this;
  s.float_backend_ = true;
  s.eps_ = eps;
  auto demote = [eps](Scalar& v) { v = Scalar::floating(v.as_double(), eps); };
  switch (kind_) {
    case Kind::FiniteExplicit:
      for (auto& v : s.matrix_) demote(v);
      break;
    case Kind::LineEmbedded:
      for (auto& v : s.coords_) demote(v);
      break;
    case Kind::LineLazy:
      if (!float_convertible_)
        throw DomainError("carrier requires exact arithmetic");
      break;
  }
  return s;
}

MetricSpace MetricSpace::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad space JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points"))
    throw ParseError("space JSON needs a points array");
  std::string label = j.value("label", "space");
  std::vector<std::string> ids = j.at("points").get<std::vector<std::string>>();

  auto scalar_of = [](const ordered_json& v) {
    if (v.is_string()) return Scalar::exact(v.get<std::string>());
    if (v.is_number_integer()) return Scalar::exact(Rational(v.get<long long>()));
    if (v.is_number_float()) return Scalar::floating(v.get<double>(), 0.0);
    throw ParseError("matrix entries must be rational strings or numbers");
  };

  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != ids.size())
      throw ParseError("matrix must have one row per point");
    std::vector<Scalar> flat;
    flat.reserve(ids.size() * ids.size());
    for (const auto& row : m) {
      if (!row.is_array() || row.size() != ids.size())
        throw ParseError("matrix rows must have one entry per point");
      for (const auto& v : row) flat.push_back(scalar_of(v));
    }
    return finite_explicit(std::move(label), std::move(ids), std::move(flat));
  }
  if (j.contains("coordinates")) {
    const auto& c = j.at("coordinates");
    if (!c.is_array() || c.size() != ids.size())
      throw ParseError("coordinates must have one entry per point");
    std::vector<Scalar> coords;
    coords.reserve(ids.size());
    for (const auto& v : c) coords.push_back(scalar_of(v));
    return line_embedded(std::move(label), std::move(ids), std::move(coords));
  }
  throw ParseError("space JSON needs matrix or coordinates");
}

std::string MetricSpace::to_json_text() const {
  if (!is_finite()) throw DomainError("lazy carrier has no serialized form");
  ordered_json j;
  j["label"] = label_;
  j["points"] = ids_;
  if (kind_ == Kind::FiniteExplicit) {
    ordered_json m = ordered_json::array();
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t k = 0; k < ids_.size(); ++k)
        row.push_back(matrix_[i * ids_.size() + k].str());
      m.push_back(std::move(row));
    }
    j["matrix"] = std::move(m);
  } else {
    ordered_json c = ordered_json::array();
    for (const auto& v : coords_) c.push_back(v.str());
    j["coordinates"] = std::move(c);
  }
  return j.dump(2);
}

namespace {

// When every cached distance is an exact rational, rescaling to the common
// denominator turns the whole sweep into integer adds and compares, which is
// what makes exhaustive triangle checks on deep truncations affordable.
std::optional<std::vector<BigInt>> rescale_to_common_denominator(
    const std::vector<Scalar>& dist, BigInt& lcm_out) {
  BigInt lcm = 1;
  for (const Scalar& d : dist) {
    if (!d.is_rational()) return std::nullopt;
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(d.rational()));
    if (boost::multiprecision::msb(lcm) > 1u << 14) return std::nullopt;
  }
  std::vector<BigInt> scaled;
  scaled.reserve(dist.size());
  for (const Scalar& d : dist) {
    const Rational& q = d.rational();
    scaled.push_back(boost::multiprecision::numerator(q) *
                     (lcm / boost::multiprecision::denominator(q)));
  }
  lcm_out = std::move(lcm);
  return scaled;
}

}  // namespace

AxiomReport verify_metric_axioms(const MetricSpace& space,
                                 std::span<const Point> subset,
                                 std::size_t max_violations) {
  AxiomReport report;
  auto add = [&](std::string axiom, std::vector<std::string> witness,
                 Scalar lhs, Scalar rhs) {
    report.passed = false;
    if (report.violations.size() < max_violations)
      report.violations.push_back(
          {std::move(axiom), std::move(witness), std::move(lhs), std::move(rhs)});
  };
  const std::size_t n = subset.size();
  std::vector<Scalar> dist;
  dist.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      dist.push_back(space.distance(subset[i], subset[k]));
  auto id = [&](std::size_t i) { return space.id_of(subset[i]); };

  BigInt lcm = 1;
  std::optional<std::vector<BigInt>> scaled;
  if (space.comparison_eps() == 0.0)
    scaled = rescale_to_common_denominator(dist, lcm);

  if (scaled) {
    auto as_scalar = [&](const BigInt& v) { return Scalar::exact(Rational(v, lcm)); };
    const auto& m = *scaled;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i; k < n; ++k) {
        ++report.pairs_checked;
        const BigInt &dik = m[i * n + k], &dki = m[k * n + i];
        if (i == k) {
          if (dik != 0) add("identity", {id(i)}, as_scalar(dik), Scalar{0});
          continue;
        }
        if (dik != dki) add("symmetry", {id(i), id(k)}, as_scalar(dik), as_scalar(dki));
        if (dik <= 0) add("positivity", {id(i), id(k)}, as_scalar(dik), Scalar{0});
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < n; ++t) {
          if (i == k || k == t || i == t) continue;
          ++report.triples_checked;
          if (m[i * n + t] > m[i * n + k] + m[k * n + t])
            add("triangle", {id(i), id(k), id(t)}, as_scalar(m[i * n + t]),
                as_scalar(m[i * n + k] + m[k * n + t]));
        }
    return report;
  }

  const Scalar zero{0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i; k < n; ++k) {
      ++report.pairs_checked;
      const Scalar &dik = dist[i * n + k], &dki = dist[k * n + i];
      if (i == k) {
        if (!dik.eq(zero)) add("identity", {id(i)}, dik, zero);
        continue;
      }
      if (!dik.eq(dki)) add("symmetry", {id(i), id(k)}, dik, dki);
      if (!dik.gt(zero)) add("positivity", {id(i), id(k)}, dik, zero);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t t = 0; t < n; ++t) {
        if (i == k || k == t || i == t) continue;
        ++report.triples_checked;
        Scalar rhs = dist[i * n + k] + dist[k * n + t];
        if (!dist[i * n + t].le(rhs))
          add("triangle", {id(i), id(k), id(t)}, dist[i * n + t], rhs);
      }
  return report;
}

AxiomReport verify_metric_axioms(const MetricSpace& space,
                                 std::size_t max_violations) {
  std::vector<Point> pts;
  pts.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) pts.push_back(Point::at(i));
  return verify_metric_axioms(space, pts, max_violations);
}

std::string to_json_text(const AxiomReport& report) {
  ordered_json j;
  j["passed"] = report.passed;
  j["pairs_checked"] = report.pairs_checked;
  j["triples_checked"] = report.triples_checked;
  ordered_json v = ordered_json::array();
  for (const auto& viol : report.violations) {
    ordered_json w;
    w["axiom"] = viol.axiom;
    w["witness"] = viol.witness;
    w["lhs"] = viol.lhs.str();
    w["rhs"] = viol.rhs.str();
    v.push_back(std::move(w));
  }
  j["violations"] = std::move(v);
  return j.dump(2);
}

}  // namespace fpl
