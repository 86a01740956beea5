#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geoplan/transport.hpp"

#include <cmath>

using namespace geoplan;

namespace {

Point pt(double x, double y) {
  Vec v(2);
  v << x, y;
  return Point{v};
}

GeodesicSegment line_segment(const Point& start, const Vec& velocity) {
  GeodesicSegment g;
  g.manifold = "plane";
  g.start = start;
  g.velocity = velocity;
  g.length = velocity.norm();
  g.curve = [start, velocity](double t) {
    return Point{Vec(start.coords + t * velocity)};
  };
  return g;
}

// translation of the plane: everything in this file happens on R^2, where
// translations are isometries and geodesics are straight lines
IsometrySection translation_section() {
  IsometrySection s;
  s.label = "translate";
  s.domain = [](const Point&) { return true; };
  s.apply = [](const Point& x, const Point& p) {
    return Point{Vec(p.coords + x.coords)};
  };
  s.apply_inverse = [](const Point& x, const Point& p) {
    return Point{Vec(p.coords - x.coords)};
  };
  s.apply_to_path = [](const Point& x, const GeodesicSegment& g) {
    GeodesicSegment out = g;
    out.start = Point{Vec(g.start.coords + x.coords)};
    const auto base = g.curve;
    const Vec shift = x.coords;
    out.curve = [base, shift](double t) {
      return Point{Vec(base(t).coords + shift)};
    };
    return out;
  };
  return s;
}

PlannerDomain base_domain(const std::string& label, bool upper) {
  PlannerDomain d;
  d.label = label;
  d.membership = [upper](const Point& p, const Point& q) {
    return p.coords.norm() < 1e-12 && (upper ? q.coords[1] >= 0.0
                                             : q.coords[1] < 0.0);
  };
  d.plan = [](const Point& p, const Point& q) {
    return line_segment(p, Vec(q.coords - p.coords));
  };
  return d;
}

}  // namespace

TEST_CASE("shift_planner conjugates a base planner by the section") {
  const auto s = translation_section();
  const Point base = pt(0, 0);
  const auto shifted =
      shift_planner(s, base, base_domain("upper", true), "moved");

  CHECK(shifted.label == "moved");

  // (x, y) with y in the shifted copy of the base domain
  CHECK(shifted.membership(pt(2, 3), pt(4, 3.5)));
  CHECK_FALSE(shifted.membership(pt(2, 3), pt(4, 2.5)));

  const auto g = shifted.plan(pt(2, 3), pt(4, 7));
  CHECK(g.length == doctest::Approx(std::sqrt(4.0 + 16.0)));
  CHECK(evaluate(g, 0.0).coords[0] == doctest::Approx(2.0));
  CHECK(evaluate(g, 1.0).coords[0] == doctest::Approx(4.0));
  CHECK(evaluate(g, 1.0).coords[1] == doctest::Approx(7.0));

  // the plan is the conjugated base plan, so it is translation equivariant
  const auto g0 = base_domain("upper", true).plan(pt(0, 0), pt(2, 4));
  CHECK(g.length == doctest::Approx(g0.length));
}

TEST_CASE("product_domains assembles sections times base domains") {
  const auto s = translation_section();
  const Point base = pt(0, 0);
  const auto domains = product_domains(
      {s}, base, {base_domain("upper", true), base_domain("lower", false)});

  REQUIRE(domains.size() == 2);

  // disjoint and covering: each pair matches exactly one assembled domain
  for (const auto& q : {pt(1, 5), pt(1, -5), pt(0.3, 0)}) {
    int hits = 0;
    for (const auto& d : domains)
      if (d.membership(pt(1, 1), q)) ++hits;
    CHECK(hits == 1);
  }

  const auto g = domains[1].plan(pt(1, 1), pt(0, -1));
  CHECK(g.length == doctest::Approx(std::sqrt(1.0 + 4.0)));
  CHECK(evaluate(g, 1.0).coords[1] == doctest::Approx(-1.0));
}

TEST_CASE("overlapping assemblies are rejected when sampled") {
  const auto s = translation_section();
  const Point base = pt(0, 0);

  // both base domains claim the upper half plane
  const std::vector<PlannerDomain> overlapping = {base_domain("a", true),
                                                  base_domain("b", true)};
  const std::vector<std::pair<Point, Point>> samples = {{pt(0, 0), pt(1, 2)}};
  CHECK_THROWS_AS(product_domains({s}, base, overlapping, samples),
                  std::logic_error);

  // disjoint base domains pass the same validation
  const std::vector<PlannerDomain> fine = {base_domain("a", true),
                                           base_domain("b", false)};
  CHECK_NOTHROW(product_domains({s}, base, fine, samples));
}
