#include "self_map.hpp"

#include "errors.hpp"

#include <algorithm>

#include "json.hpp"

namespace fpl {

using nlohmann::ordered_json;

SelfMap SelfMap::table(const MetricSpace& space, std::vector<std::size_t> images,
                       std::string label) {
  if (!space.is_finite()) throw ParamError("table maps require a finite carrier");
  if (images.size() != space.size())
    throw ParamError("table must give one image per point");
  bool any = false;
  for (std::size_t img : images) {
    if (img == kNoImage) continue;
    if (img >= space.size()) throw ParamError("image index out of range");
    any = true;
  }
  if (!any) throw ParamError("table has no images at all");
  SelfMap m;
  m.label_ = std::move(label);
  m.images_ = std::move(images);
  return m;
}

SelfMap SelfMap::rule(const MetricSpace& space, Rule fn, std::string label) {
  if (space.kind() == MetricSpace::Kind::FiniteExplicit)
    throw ParamError("rule maps require a line carrier");
  if (!fn) throw ParamError("empty rule");
  SelfMap m;
  m.label_ = std::move(label);
  m.rule_ = std::move(fn);
  return m;
}

Point SelfMap::apply(const MetricSpace& space, const Point& x) const {
  if (!space.contains(x)) throw BoundaryError("point is outside the carrier");
  if (is_table()) {
    std::size_t img = images_[x.index()];
    if (img == kNoImage)
      throw BoundaryError("image of " + space.id_of(x) + " lies past the truncation");
    return Point::at(img);
  }
  Scalar image = rule_(space.coordinate(x));
  Point y = Point::coord(std::move(image));
  if (space.kind() == MetricSpace::Kind::LineEmbedded) {
    // embed back as an index so identity stays index-based
    for (std::size_t i = 0; i < space.size(); ++i) {
      Point cand = Point::at(i);
      if (space.coordinate(cand).identical(y.coordinate())) return cand;
    }
    throw BoundaryError("rule image left the carrier");
  }
  if (!space.contains(y)) throw BoundaryError("rule image left the carrier");
  return y;
}

std::optional<std::vector<Point>> SelfMap::certification_domain(
    const MetricSpace& space) const {
  if (!space.is_finite()) return std::nullopt;
  std::vector<Point> pts;
  if (certified_) {
    pts.reserve(certified_->size());
    for (std::size_t i : *certified_) pts.push_back(Point::at(i));
  } else {
    pts.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
      if (!is_table() || images_[i] != kNoImage) pts.push_back(Point::at(i));
  }
  return pts;
}

void SelfMap::restrict_certification(std::vector<std::size_t> kept_indices) {
  std::sort(kept_indices.begin(), kept_indices.end());
  kept_indices.erase(std::unique(kept_indices.begin(), kept_indices.end()),
                     kept_indices.end());
  if (is_table())
    for (std::size_t i : kept_indices)
      if (i >= images_.size() || images_[i] == kNoImage)
        throw ParamError("certification domain includes an imageless point");
  certified_ = std::move(kept_indices);
}

SelfMap SelfMap::from_json_text(const MetricSpace& space, const std::string& text) {
  if (!space.is_finite()) throw ParamError("map JSON requires a finite carrier");
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad map JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("images") || !j.at("images").is_object())
    throw ParseError("map JSON needs an images object");
  std::vector<std::size_t> images(space.size(), space.size());
  for (const auto& [from, to] : j.at("images").items()) {
    if (!to.is_string()) throw ParseError("image values must be point ids");
    images.at(space.point(from).index()) =
        space.point(to.get<std::string>()).index();
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] >= space.size())
      throw ParseError("missing image for point " + space.ids()[i]);
  return table(space, std::move(images), j.value("label", "map"));
}

std::string SelfMap::to_json_text(const MetricSpace& space) const {
  if (!is_table()) throw DomainError("rule maps have no serialized form");
  ordered_json images;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != kNoImage)
      images[space.ids()[i]] = space.ids()[images_[i]];
  ordered_json j;
  j["label"] = label_;
  j["images"] = std::move(images);
  return j.dump(2);
}

}  // namespace fpl
