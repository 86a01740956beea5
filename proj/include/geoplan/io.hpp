// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// Serializers for CLI output. Every function returns the finished text;
// numbers are formatted with a fixed "%.12g" so identical inputs always
// produce identical bytes (SVG output is diffable across runs).
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/berger.hpp"
#include "geoplan/core.hpp"
#include "geoplan/flat_torus.hpp"
#include "geoplan/verify.hpp"

#include <string>

namespace geoplan {

std::string fmt_g12(double x);

// {"domain": i, "manifold": ..., "start": [...], "velocity": [...],
//  "length": x, "end": [...]}; polyline > 0 adds "polyline", an array of
// polyline+1 curve samples at t = k/polyline
std::string plan_json(int domain, const GeodesicSegment& g, int polyline = 0);

// CSV polyline "t,c0,c1,..." with samples+1 rows at t = k/samples.
std::string polyline_csv(const GeodesicSegment& g, int samples = 128);

// {"certificate": n, "expected": m, "match": bool, "manifold": ...}
// A certificate only counts when the structural suite backs it, so match
// requires both the expected domain count and a passing suite. A failing
// suite's full report lands at report_path.
std::string certificate_json(const PlannerAtlas& atlas, int expected,
                              bool suite_passed = true,
                              const std::string& report_path = "");

std::string suite_json(const SuiteReport& rep);

// Tangent cut locus of a flat torus. 2-D: cell polygon with edge pairing
// and vertex classes. Standard n-D: stratum/component/sheet inventory.
std::string cutlocus_json(const FlatTorus& T);

// 2-D cells only; throws std::invalid_argument otherwise.
std::string cutlocus_svg(const FlatTorus& T);

// CSV "beta,t_cut,w,x1,x2,x3": cut time profile over the polar angle plus
// the cut point of the phi = 0 meridian direction.
std::string berger_cutlocus_csv(const BergerModel& model);

// Slice of the cut locus in the (w, |(x2,x3)|) half-plane.
std::string berger_cutlocus_svg(const BergerModel& model);

std::string oracle_json(const std::string& manifold, double distance,
                        double resolution);

}  // namespace geoplan
