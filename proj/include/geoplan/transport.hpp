// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/core.hpp"

namespace geoplan {

// A continuous choice of isometry s(x) moving the base point to x, defined
// for x in a domain A. Isometries are represented operationally (apply,
// inverse, action on geodesics) so the same combinator serves lattice
// translations and left quaternion multiplication alike.
struct IsometrySection {
  std::string label;
  std::function<bool(const Point&)> domain;  // membership in A
  std::function<Point(const Point& x, const Point& p)> apply;
  std::function<Point(const Point& x, const Point& p)> apply_inverse;
  std::function<GeodesicSegment(const Point& x, const GeodesicSegment& g)>
      apply_to_path;
};

// Turns a planner sigma_B on {base} x B into a planner on
// F = {(x,y) | x in A, y in s(x)(B)} by sigma(x,y) =
// s(x) . sigma_B(base, s(x)^{-1}(y)). Lengths are preserved because s(x)
// is an isometry.
PlannerDomain shift_planner(const IsometrySection& s, const Point& base,
                            const PlannerDomain& sigma_B,
                            const std::string& label);

// Assembles the k*r transported domains F_{i,j} = {(x,y) | x in A_i,
// y in s_i(x)(B_j)} from k sections over pairwise disjoint A_i and r
// pairwise disjoint base domains B_j. If validation samples are given,
// any pair matching two assembled domains raises an assembly error.
std::vector<PlannerDomain> product_domains(
    const std::vector<IsometrySection>& sections, const Point& base,
    const std::vector<PlannerDomain>& base_domains,
    const std::vector<std::pair<Point, Point>>& validation_samples = {});

}  // namespace geoplan
