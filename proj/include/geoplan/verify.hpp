// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// Machine checks for the structural properties the planner atlases are
// built on: the domains partition M x M, planner outputs are minimal
// geodesics with the right endpoints, each domain's planner is continuous,
// strata behave as declared (depth, incidence, trivial covering), and the
// local inconsistency condition holds at sampled cut points. Negative
// controls corrupt a property on purpose and require the corresponding
// check to fail, so a silently weakened check fails the suite.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/berger.hpp"
#include "geoplan/core.hpp"
#include "geoplan/flat_torus.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace geoplan {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string manifold;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// A sequence of start/goal pairs converging inside one planner domain,
// together with its limit pair. Continuity of the domain's planner is
// observed as a Cauchy velocity tail.
struct PairSequence {
  std::vector<std::pair<Point, Point>> steps;
  std::pair<Point, Point> limit;
};

using PointDistance = std::function<double(const Point&, const Point&)>;

// Every pair must be accepted by exactly one domain.
CheckResult check_partition(const PlannerAtlas& atlas,
                            const std::vector<std::pair<Point, Point>>& pairs);

// plan(p,q) must run from p to q up to tol under the supplied distance.
CheckResult check_endpoints(const PlannerAtlas& atlas,
                            const std::vector<std::pair<Point, Point>>& pairs,
                            const PointDistance& dist, double tol);

// Planned lengths must match an independent reference distance up to tol.
CheckResult check_minimality(const PlannerAtlas& atlas,
                             const std::vector<std::pair<Point, Point>>& pairs,
                             const PointDistance& ref_distance, double tol);

// Along each sequence the planned velocities must stay in one domain and
// have final Cauchy gap and limit gap below tol.
CheckResult check_continuity(const PlannerAtlas& atlas,
                             const std::vector<PairSequence>& sequences,
                             double tol);

// Strata act as declared: sheet samples land in their stratum and
// component with the multiplicity table of the cell, pushing a sheet
// parameter to its boundary lands one stratum deeper, and those deeper
// points are limits of the component (incidence / approximability).
CheckResult check_stratification(const FlatTorus& T, int samples,
                                 std::uint64_t seed);

// On each stratum component the lifts of a point hit the sheets
// bijectively, with exactly one canonical sheet.
CheckResult check_trivially_covered(const FlatTorus& T, int samples,
                                    std::uint64_t seed);

// The local two-sided / germ condition at representative cut points of
// every stratum: the closure preimages of the neighboring shallower
// components have empty total intersection.
CheckResult check_inconsistency(const FlatTorus& T);

// The planner's selected lift is separated from every rejected lift by at
// least half the shortest nonzero lattice vector, so a sheet-selection
// mistake cannot hide below the continuity tolerance.
CheckResult check_sheet_selection_gap(const FlatTorus& T, int samples,
                                      std::uint64_t seed);

// Corrupted-geometry probes: merged sheets must break the covering check,
// and a sheet-alternating sequence must break the continuity check.
CheckResult check_negative_controls(const FlatTorus& T);

std::vector<std::pair<Point, Point>> random_torus_pairs(const FlatTorus& T,
                                                        int count,
                                                        std::uint64_t seed);

std::vector<PairSequence> torus_domain_sequences(const FlatTorus& T,
                                                 int per_domain,
                                                 std::uint64_t seed);

std::vector<std::pair<Point, Point>> random_berger_pairs(
    const BergerModel& model, int count, std::uint64_t seed,
    bool exclude_flagged = false);

std::vector<PairSequence> berger_domain_sequences(const BergerModel& model,
                                                  int per_domain,
                                                  std::uint64_t seed);

// The cut point of a direction with r != 0 is reached again by the
// mirrored direction, exactly, and by the plain r-flip up to the fiber
// conjugation gauge; both residuals must stay below tol.
CheckResult check_berger_reflection(const BergerModel& model, int n_dirs,
                                    std::uint64_t seed, double tol);

// Fiber-direction cut time against the closed form pi*sin(alpha).
CheckResult check_berger_fiber_cut(const BergerModel& model, double tol);

// Round-sphere specialization (alpha = pi/2): every direction cuts at pi.
CheckResult check_berger_round_limit(const BergerModel& model, int n_dirs,
                                     std::uint64_t seed, double tol);

SuiteReport run_torus_suite(const FlatTorus& T, int samples = 300,
                            std::uint64_t seed = 12345);

SuiteReport run_berger_suite(const BergerModel& model, int samples = 150,
                             std::uint64_t seed = 12345);

}  // namespace geoplan
