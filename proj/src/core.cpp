// SPDX-License-Identifier: Apache-2.0
#include "geoplan/core.hpp"

namespace geoplan {

std::pair<Point, Point> endpoints(const GeodesicSegment& g) {
  return {g.curve(0.0), g.curve(1.0)};
}

Point evaluate(const GeodesicSegment& g, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("evaluate: t outside [0,1]");
  return g.curve(t);
}

std::pair<int, GeodesicSegment> plan(const PlannerAtlas& atlas, const Point& p,
                                     const Point& q) {
  for (std::size_t i = 0; i < atlas.domains.size(); ++i) {
    if (atlas.domains[i].membership(p, q))
      return {static_cast<int>(i), atlas.domains[i].plan(p, q)};
  }
  throw CoverageError("plan: no atlas domain contains the pair (" +
                      atlas.manifold + ")");
}

}  // namespace geoplan
