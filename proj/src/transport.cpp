// SPDX-License-Identifier: Apache-2.0
#include "geoplan/transport.hpp"

namespace geoplan {

PlannerDomain shift_planner(const IsometrySection& s, const Point& base,
                            const PlannerDomain& sigma_B,
                            const std::string& label) {
  PlannerDomain out;
  out.label = label;
  out.membership = [s, base, sigma_B](const Point& x, const Point& y) {
    if (!s.domain(x)) return false;
    return sigma_B.membership(base, s.apply_inverse(x, y));
  };
  out.plan = [s, base, sigma_B](const Point& x, const Point& y) {
    const GeodesicSegment g = sigma_B.plan(base, s.apply_inverse(x, y));
    return s.apply_to_path(x, g);
  };
  return out;
}

std::vector<PlannerDomain> product_domains(
    const std::vector<IsometrySection>& sections, const Point& base,
    const std::vector<PlannerDomain>& base_domains,
    const std::vector<std::pair<Point, Point>>& validation_samples) {
  std::vector<PlannerDomain> out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    for (std::size_t j = 0; j < base_domains.size(); ++j) {
      const std::string label = "F[" + sections[i].label + "," +
                                base_domains[j].label + "]";
      out.push_back(shift_planner(sections[i], base, base_domains[j], label));
    }
  }
  for (const auto& [x, y] : validation_samples) {
    int hits = 0;
    for (const auto& d : out) hits += d.membership(x, y) ? 1 : 0;
    if (hits > 1)
      throw std::logic_error("product_domains: assembled domains overlap");
  }
  return out;
}

}  // namespace geoplan
