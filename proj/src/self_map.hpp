#pragma once

#include "metric_space.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fpl {

// A self-map T of a metric space carrier. Two representations:
//
//   table  images[i] is the index of T(point i); finite carriers only
//   rule   a coordinate function Scalar -> Scalar; line carriers only
//
// A table entry may be the sentinel kNoImage: the point is carrier-only,
// outside the map's certification domain (truncated carriers leave their
// last point imageless because its true image lies past the cut). Applying
// the map there, outside the carrier, or to a rule image that leaves the
// carrier raises BoundaryError.
class SelfMap {
public:
  using Rule = std::function<Scalar(const Scalar&)>;
  static constexpr std::size_t kNoImage = static_cast<std::size_t>(-1);

  static SelfMap table(const MetricSpace& space, std::vector<std::size_t> images,
                       std::string label = "map");
  static SelfMap rule(const MetricSpace& space, Rule fn, std::string label = "map");

  const std::string& label() const { return label_; }
  bool is_table() const { return static_cast<bool>(!rule_); }
  const std::vector<std::size_t>& images() const { return images_; }

  Point apply(const MetricSpace& space, const Point& x) const;

  // Points on which certification quantifies: the explicit restriction if
  // one was set, else every point that has an image. Lazy carriers have no
  // enumerable domain and return nullopt.
  std::optional<std::vector<Point>> certification_domain(const MetricSpace& space) const;
  void restrict_certification(std::vector<std::size_t> kept_indices);

  // {"label": ..., "images": {"a": "b", ...}} over a named finite carrier.
  static SelfMap from_json_text(const MetricSpace& space, const std::string& text);
  std::string to_json_text(const MetricSpace& space) const;

private:
  SelfMap() = default;

  std::string label_;
  std::vector<std::size_t> images_;
  Rule rule_;
  std::optional<std::vector<std::size_t>> certified_;
};

}  // namespace fpl
