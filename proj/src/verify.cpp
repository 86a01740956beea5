// SPDX-License-Identifier: Apache-2.0
#include "geoplan/verify.hpp"

#include "geoplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace geoplan {

bool SuiteReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

constexpr int kSeqSteps = 26;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double urand(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

Vec rand_vec(std::mt19937_64& rng, int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * urand(rng);
  return v;
}

Quat random_unit_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Quat q(nd(rng), nd(rng), nd(rng), nd(rng));
  return q / q.norm();
}

Eigen::Vector3d random_unit_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::Vector3d v(nd(rng), nd(rng), nd(rng));
  return v / v.norm();
}

Point random_torus_point(const FlatTorus& T, std::mt19937_64& rng) {
  return Point{Vec(T.basis.B * rand_vec(rng, T.dim(), 0.0, 1.0))};
}

int count_sheets(const FlatTorus& T) {
  int n = 0;
  for (const auto& st : T.strata.strata)
    for (const auto& c : st.components) n += static_cast<int>(c.sheets.size());
  return n;
}

int expected_multiplicity(const FlatTorus& T, int stratum_index) {
  if (T.cube) return 1 << stratum_index;
  if (stratum_index == 1) return 2;
  return T.cell2d->shape == VoronoiCell2D::Shape::hexagon ? 3 : 4;
}

}  // namespace

CheckResult check_partition(const PlannerAtlas& atlas,
                            const std::vector<std::pair<Point, Point>>& pairs) {
  CheckResult r{"partition", true, ""};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int hits = 0;
    for (const auto& d : atlas.domains)
      if (d.membership(pairs[i].first, pairs[i].second)) ++hits;
    if (hits != 1) {
      r.passed = false;
      r.detail = "pair " + std::to_string(i) + " accepted by " +
                 std::to_string(hits) + " domains";
      return r;
    }
  }
  r.detail = std::to_string(pairs.size()) + " pairs, each in exactly one of " +
             std::to_string(atlas.domains.size()) + " domains";
  return r;
}

CheckResult check_endpoints(const PlannerAtlas& atlas,
                            const std::vector<std::pair<Point, Point>>& pairs,
                            const PointDistance& dist, double tol) {
  CheckResult r{"endpoints", true, ""};
  double worst = 0.0;
  for (const auto& pq : pairs) {
    try {
      const auto got = plan(atlas, pq.first, pq.second);
      const auto ends = endpoints(got.second);
      worst = std::max(worst, dist(ends.first, pq.first));
      worst = std::max(worst, dist(ends.second, pq.second));
    } catch (const std::exception& e) {
      return {"endpoints", false, std::string("plan threw: ") + e.what()};
    }
  }
  r.passed = worst <= tol;
  r.detail = "worst endpoint error " + fmt(worst) + " (tol " + fmt(tol) + ")";
  return r;
}

CheckResult check_minimality(const PlannerAtlas& atlas,
                             const std::vector<std::pair<Point, Point>>& pairs,
                             const PointDistance& ref_distance, double tol) {
  CheckResult r{"minimality", true, ""};
  double worst = 0.0;
  for (const auto& pq : pairs) {
    try {
      const auto got = plan(atlas, pq.first, pq.second);
      worst = std::max(
          worst, std::abs(got.second.length - ref_distance(pq.first, pq.second)));
    } catch (const std::exception& e) {
      return {"minimality", false, std::string("plan threw: ") + e.what()};
    }
  }
  r.passed = worst <= tol;
  r.detail = "worst |length - reference| " + fmt(worst) + " over " +
             std::to_string(pairs.size()) + " pairs (tol " + fmt(tol) + ")";
  return r;
}

CheckResult check_continuity(const PlannerAtlas& atlas,
                             const std::vector<PairSequence>& sequences,
                             double tol) {
  CheckResult r{"continuity", true, ""};
  double worst_tail = 0.0;
  double worst_limit = 0.0;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    try {
      const auto lim = plan(atlas, seq.limit.first, seq.limit.second);
      Vec prev;
      Vec last;
      double tail = 0.0;
      for (std::size_t j = 0; j < seq.steps.size(); ++j) {
        const auto got = plan(atlas, seq.steps[j].first, seq.steps[j].second);
        if (got.first != lim.first) {
          return {"continuity", false,
                  "sequence " + std::to_string(s) + " step " +
                      std::to_string(j) + " left domain " +
                      std::to_string(lim.first)};
        }
        if (j + 1 == seq.steps.size()) tail = (got.second.velocity - prev).norm();
        prev = got.second.velocity;
        last = got.second.velocity;
      }
      worst_tail = std::max(worst_tail, tail);
      worst_limit = std::max(worst_limit, (last - lim.second.velocity).norm());
    } catch (const std::exception& e) {
      return {"continuity", false, std::string("plan threw: ") + e.what()};
    }
  }
  r.passed = worst_tail < tol && worst_limit < tol;
  r.detail = "worst Cauchy tail " + fmt(worst_tail) + ", worst limit gap " +
             fmt(worst_limit) + " over " + std::to_string(sequences.size()) +
             " sequences (tol " + fmt(tol) + ")";
  return r;
}

CheckResult check_stratification(const FlatTorus& T, int samples,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = T.dim();

  const int interior = std::max(10, samples / 5);
  for (int i = 0; i < interior; ++i) {
    const Vec u = torus_reduce_cell(T, T.basis.B * rand_vec(rng, n, 0.0, 1.0));
    const auto loc = locate(T, u);
    if (loc.minimizers.size() == 1 && loc.index != 0)
      return {"stratification", false, "unique lift not classified interior"};
  }

  const int per = std::max(3, samples / std::max(1, count_sheets(T)));
  for (int k = 1; k <= T.strata.depth(); ++k) {
    const auto& st = T.strata.strata[k - 1];
    for (std::size_t ci = 0; ci < st.components.size(); ++ci) {
      const auto& comp = st.components[ci];
      const int mult = expected_multiplicity(T, k);
      for (const auto& sh : comp.sheets) {
        const int reps = comp.dim == 0 ? 1 : per;
        for (int s = 0; s < reps; ++s) {
          const Vec par = rand_vec(rng, comp.dim, 0.1, 0.9);
          const Vec u = sh.sample(par);
          const auto loc = locate(T, u);
          if (loc.index != k || loc.component != static_cast<int>(ci))
            return {"stratification", false,
                    "sheet sample of " + comp.label + "/" + sh.label +
                        " located in stratum " + std::to_string(loc.index) +
                        " component " + std::to_string(loc.component)};
          if (static_cast<int>(loc.minimizers.size()) != mult)
            return {"stratification", false,
                    comp.label + ": multiplicity " +
                        std::to_string(loc.minimizers.size()) + ", expected " +
                        std::to_string(mult)};
        }
        if (comp.dim > 0) {
          // push one parameter to its boundary: lands exactly one stratum
          // deeper, and is approximable from inside the component
          Vec par = rand_vec(rng, comp.dim, 0.1, 0.9);
          const int axis =
              std::min(comp.dim - 1,
                       static_cast<int>(urand(rng) * comp.dim));
          par[axis] = 1.0;
          const Vec ub = sh.sample(par);
          const auto locb = locate(T, ub);
          if (locb.index != k + 1)
            return {"stratification", false,
                    comp.label + "/" + sh.label +
                        ": boundary sample landed in stratum " +
                        std::to_string(locb.index) + ", expected " +
                        std::to_string(k + 1)};
          Vec par_j = par;
          double dist = std::numeric_limits<double>::infinity();
          for (int j = 0; j < kSeqSteps; ++j) {
            par_j[axis] = 1.0 - 0.9 * std::pow(0.5, j);
            const Vec uj = sh.sample(par_j);
            if (locate(T, uj).index != k)
              return {"stratification", false,
                      comp.label + ": approach sample left the stratum"};
            dist = (uj - ub).norm();
          }
          if (dist > 1e-6)
            return {"stratification", false,
                    comp.label + ": approach stalled at distance " + fmt(dist)};
        }
      }
    }
  }
  return {"stratification", true,
          std::to_string(T.strata.depth()) + " strata, " +
              std::to_string(count_sheets(T)) + " sheets, interior/sheet/"
              "boundary/approach samples all consistent"};
}

CheckResult check_trivially_covered(const FlatTorus& T, int samples,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int per = std::max(5, samples / std::max(1, count_sheets(T)));
  for (int k = 1; k <= T.strata.depth(); ++k) {
    for (const auto& comp : T.strata.strata[k - 1].components) {
      if (comp.canonical < 0 ||
          comp.canonical >= static_cast<int>(comp.sheets.size()))
        return {"trivial-covering", false,
                comp.label + ": canonical sheet index out of range"};
      for (std::size_t si = 0; si < comp.sheets.size(); ++si) {
        if (static_cast<int>(si) == comp.canonical) continue;
        const Vec& c0 = comp.sheets[comp.canonical].centroid;
        const Vec& ci = comp.sheets[si].centroid;
        bool less = false;
        for (int d = 0; d < c0.size(); ++d) {
          if (ci[d] < c0[d] - 1e-12) {
            less = true;
            break;
          }
          if (ci[d] > c0[d] + 1e-12) break;
        }
        if (!less)
          return {"trivial-covering", false,
                  comp.label + ": canonical centroid is not lex-maximal"};
      }
      for (int s = 0; s < per; ++s) {
        const auto& sh =
            comp.sheets[static_cast<std::size_t>(urand(rng) * comp.sheets.size()) %
                        comp.sheets.size()];
        const Vec u = sh.sample(rand_vec(rng, comp.dim, 0.05, 0.95));
        const auto ms = closest_lattice_points(T.basis, u);
        if (ms.size() != comp.sheets.size())
          return {"trivial-covering", false,
                  comp.label + ": " + std::to_string(ms.size()) +
                      " lifts vs " + std::to_string(comp.sheets.size()) +
                      " sheets"};
        for (const auto& sh2 : comp.sheets) {
          int cnt = 0;
          for (const auto& m : ms)
            if (sh2.contains(u - m.v)) ++cnt;
          if (cnt != 1)
            return {"trivial-covering", false,
                    comp.label + "/" + sh2.label + ": contains " +
                        std::to_string(cnt) + " lifts of one point"};
        }
        for (const auto& m : ms) {
          int cnt = 0;
          for (const auto& sh2 : comp.sheets)
            if (sh2.contains(u - m.v)) ++cnt;
          if (cnt != 1)
            return {"trivial-covering", false,
                    comp.label + ": a lift lies in " + std::to_string(cnt) +
                        " sheets"};
        }
      }
    }
  }
  return {"trivial-covering", true,
          "per component: lifts <-> sheets bijective, unique lex-max "
          "canonical sheet"};
}

CheckResult check_inconsistency(const FlatTorus& T) {
  int base_cases = 0, definitions = 0, vacuous = 0;
  for (int k = 1; k <= T.strata.depth(); ++k) {
    for (const auto& comp : T.strata.strata[k - 1].components) {
      const auto& sh = comp.sheets[comp.canonical];
      const Vec u = sh.sample(Vec::Constant(comp.dim, 0.5));
      const auto rep = check_inconsistency_at(T, Point{u});
      if (!rep.total_intersection_empty)
        return {"inconsistency", false,
                comp.label + ": closure preimages intersect"};
      const char* want = T.strata.depth() == 1 ? "vacuous"
                         : k == 1              ? "base-case"
                                               : "definition";
      if (rep.mode != want)
        return {"inconsistency", false,
                comp.label + ": mode " + rep.mode + ", expected " + want};
      if (rep.mode == "definition") {
        for (const auto& cs : rep.closure_sets)
          if (cs.empty() || cs.size() >= rep.lift_labels.size())
            return {"inconsistency", false,
                    comp.label + ": degenerate closure preimage"};
        ++definitions;
      } else if (rep.mode == "base-case") {
        ++base_cases;
      } else {
        ++vacuous;
      }
    }
  }
  return {"inconsistency", true,
          "empty total intersection at every component representative (" +
              std::to_string(base_cases) + " base-case, " +
              std::to_string(definitions) + " definition, " +
              std::to_string(vacuous) + " vacuous)"};
}

CheckResult check_sheet_selection_gap(const FlatTorus& T, int samples,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double lambda1 = std::numeric_limits<double>::infinity();
  for (int j = 0; j < T.dim(); ++j)
    lambda1 = std::min(lambda1, T.basis.B.col(j).norm());
  double worst = std::numeric_limits<double>::infinity();
  const int per = std::max(5, samples / std::max(1, count_sheets(T)));
  for (int k = 1; k <= T.strata.depth(); ++k) {
    for (const auto& comp : T.strata.strata[k - 1].components) {
      for (const auto& sh : comp.sheets) {
        for (int s = 0; s < (comp.dim == 0 ? 1 : per); ++s) {
          const Vec u = sh.sample(rand_vec(rng, comp.dim, 0.05, 0.95));
          const auto gs = minimal_geodesics(T, torus_origin(T), Point{u});
          for (std::size_t i = 1; i < gs.size(); ++i)
            worst =
                std::min(worst, (gs[0].velocity - gs[i].velocity).norm());
        }
      }
    }
  }
  const bool ok = worst >= 0.5 * lambda1;
  return {"selection-gap", ok,
          "smallest selected-vs-rejected velocity gap " + fmt(worst) +
              ", required >= " + fmt(0.5 * lambda1)};
}

CheckResult check_negative_controls(const FlatTorus& T) {
  const auto& comp = T.strata.strata[0].components.front();
  if (comp.sheets.size() < 2)
    return {"negative-controls", false, "stratum 1 has a single sheet"};

  // merged sheets must break the one-lift-per-sheet property
  {
    const auto& s0 = comp.sheets[0];
    const auto& s1 = comp.sheets[1];
    const Vec u = s0.sample(Vec::Constant(comp.dim, 0.5));
    const auto ms = closest_lattice_points(T.basis, u);
    int cnt = 0;
    for (const auto& m : ms)
      if (s0.contains(u - m.v) || s1.contains(u - m.v)) ++cnt;
    if (cnt == 1)
      return {"negative-controls", false,
              "merged sheets were not detected as over-covering"};
  }

  // a selection rule that switches sheets mid-component must fail the
  // continuity check; a 0-dimensional stratum 1 (the circle) has no room
  // to move inside a sheet, so alternate across the cut point instead
  if (comp.dim == 0) {
    auto Tp = std::make_shared<const FlatTorus>(T);
    PlannerDomain wrong;
    wrong.label = "across-cut";
    wrong.membership = [](const Point&, const Point&) { return true; };
    wrong.plan = [Tp](const Point& p, const Point& q) {
      return minimal_geodesics(*Tp, p, q).front();
    };
    PlannerAtlas bad;
    bad.manifold = T.id;
    bad.domains.push_back(wrong);

    PairSequence seq;
    const Point o = torus_origin(T);
    const Vec ustar = torus_reduce_cell(T, comp.sheets[0].centroid);
    for (int j = 0; j < kSeqSteps; ++j) {
      const double scale = 1.0 + (j % 2 ? 0.2 : -0.2) * std::pow(0.5, j / 2);
      seq.steps.push_back({o, Point{Vec(ustar * scale)}});
    }
    seq.limit = {o, Point{ustar}};
    const auto res = check_continuity(bad, {seq}, 1e-6);
    if (res.passed)
      return {"negative-controls", false,
              "single-chart planner slipped past the continuity check"};
    return {"negative-controls", true,
            "merged sheets and the cut-crossing jump are both detected"};
  }
  {
    const auto& sh = comp.sheets[0];
    const Vec mid = sh.sample(Vec::Constant(comp.dim, 0.5));
    const Vec a = sh.sample(Vec::Constant(comp.dim, 0.2));
    const Vec b = sh.sample(Vec::Constant(comp.dim, 0.8));
    int k = 0;
    (b - a).cwiseAbs().maxCoeff(&k);
    const double c = torus_reduce_cell(T, mid)[k];

    auto Tp = std::make_shared<const FlatTorus>(T);
    PlannerDomain wrong;
    wrong.label = "sheet-switching";
    wrong.membership = [](const Point&, const Point&) { return true; };
    wrong.plan = [Tp, k, c](const Point& p, const Point& q) {
      const auto gs = minimal_geodesics(*Tp, p, q);
      const Vec u = torus_reduce_cell(*Tp, q.coords - p.coords);
      return u[k] > c ? gs.front() : gs.back();
    };
    PlannerAtlas bad;
    bad.manifold = T.id;
    bad.domains.push_back(wrong);

    PairSequence seq;
    const Point o = torus_origin(T);
    Vec par = Vec::Constant(comp.dim, 0.5);
    for (int j = 0; j < kSeqSteps; ++j) {
      par[0] = 0.5 + (j % 2 ? 0.3 : -0.3) * std::pow(0.5, j / 2);
      seq.steps.push_back({o, Point{sh.sample(par)}});
    }
    seq.limit = {o, Point{mid}};
    const auto res = check_continuity(bad, {seq}, 1e-6);
    if (res.passed)
      return {"negative-controls", false,
              "sheet-switching planner slipped past the continuity check"};
  }

  return {"negative-controls", true,
          "merged sheets and sheet-switching selection are both detected"};
}

std::vector<std::pair<Point, Point>> random_torus_pairs(const FlatTorus& T,
                                                        int count,
                                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Point, Point>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back({random_torus_point(T, rng), random_torus_point(T, rng)});
  return out;
}

std::vector<PairSequence> torus_domain_sequences(const FlatTorus& T,
                                                 int per_domain,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PairSequence> out;
  const int n = T.dim();
  for (int d = 0; d <= T.strata.depth(); ++d) {
    for (int s = 0; s < per_domain; ++s) {
      PairSequence seq;
      const Point p0 = random_torus_point(T, rng);
      const Vec shift = T.basis.B * rand_vec(rng, n, -0.05, 0.05);
      if (d == 0) {
        const Vec u =
            0.9 * torus_reduce_cell(T, T.basis.B * rand_vec(rng, n, 0.0, 1.0));
        for (int j = 0; j < kSeqSteps; ++j) {
          const double w = std::pow(0.5, j);
          const Point pj{Vec(p0.coords + shift * w)};
          seq.steps.push_back({pj, Point{Vec(pj.coords + u * (1.0 - 0.2 * w))}});
        }
        seq.limit = {p0, Point{Vec(p0.coords + u)}};
      } else {
        const auto& st = T.strata.strata[d - 1];
        const auto& comp =
            st.components[static_cast<std::size_t>(urand(rng) *
                                                   st.components.size()) %
                          st.components.size()];
        const auto& sh =
            comp.sheets[static_cast<std::size_t>(urand(rng) *
                                                 comp.sheets.size()) %
                        comp.sheets.size()];
        const Vec par0 = rand_vec(rng, comp.dim, 0.3, 0.7);
        const Vec dpar = rand_vec(rng, comp.dim, -0.15, 0.15);
        for (int j = 0; j < kSeqSteps; ++j) {
          const double w = std::pow(0.5, j);
          const Point pj{Vec(p0.coords + shift * w)};
          seq.steps.push_back(
              {pj, Point{Vec(pj.coords + sh.sample(par0 + dpar * w))}});
        }
        seq.limit = {p0, Point{Vec(p0.coords + sh.sample(par0))}};
      }
      out.push_back(std::move(seq));
    }
  }
  return out;
}

std::vector<std::pair<Point, Point>> random_berger_pairs(
    const BergerModel& model, int count, std::uint64_t seed,
    bool exclude_flagged) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Point, Point>> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const Quat p = random_unit_quat(rng);
    Quat q;
    if (urand(rng) < 0.6) {
      q = random_unit_quat(rng);
    } else {
      // bias toward the cut locus, where the domain boundary lives
      const Eigen::Vector3d v = random_unit_dir(rng);
      const double t = model.cut.t_cut_of(v) * (0.9 + 0.100001 * urand(rng));
      q = quat_mul(p, berger_exp(model.alpha, v, t));
    }
    if (exclude_flagged &&
        berger_classify(model, p, q).cls == PointClass::flagged)
      continue;
    out.push_back({Point{Vec(p)}, Point{Vec(q)}});
  }
  return out;
}

std::vector<PairSequence> berger_domain_sequences(const BergerModel& model,
                                                  int per_domain,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PairSequence> out;
  const double alpha = model.alpha;
  const double tol = std::max(1e-6, 3.0 * model.oracle.resolution());

  for (int s = 0; s < per_domain; ++s) {
    PairSequence seq;
    const Quat p = random_unit_quat(rng);
    const Eigen::Vector3d w = random_unit_dir(rng);
    const Eigen::Vector3d v = random_unit_dir(rng);
    const double tstar =
        0.85 * model.cut.t_cut_of(v) * (0.3 + 0.6 * urand(rng));
    const double dt = 0.1 * tstar;
    for (int j = 0; j < kSeqSteps; ++j) {
      const double f = std::pow(0.5, j);
      const Quat pj = quat_mul(p, berger_exp(alpha, w, 0.01 * f));
      seq.steps.push_back(
          {Point{Vec(pj)},
           Point{Vec(quat_mul(pj, berger_exp(alpha, v, tstar + dt * f)))}});
    }
    seq.limit = {Point{Vec(p)},
                 Point{Vec(quat_mul(p, berger_exp(alpha, v, tstar)))}};
    out.push_back(std::move(seq));
  }

  for (int s = 0; s < per_domain; ++s) {
    PairSequence seq;
    const Quat p = random_unit_quat(rng);
    const double beta0 = 0.25 + 0.9 * urand(rng);
    const double phi0 = 2.0 * M_PI * urand(rng);
    const double dbeta = 0.08 * (urand(rng) - 0.5);
    const double dphi = 0.2 * (urand(rng) - 0.5);
    auto cut_pair = [&](double beta, double phi) {
      const Eigen::Vector3d vb(std::sin(beta), std::cos(beta) * std::cos(phi),
                               std::cos(beta) * std::sin(phi));
      const double tc = cut_time(model.oracle, vb, tol);
      return Point{Vec(quat_mul(p, berger_exp(alpha, vb, tc)))};
    };
    for (int j = 0; j < kSeqSteps; ++j) {
      const double f = std::pow(0.5, j);
      seq.steps.push_back(
          {Point{Vec(p)}, cut_pair(beta0 + dbeta * f, phi0 + dphi * f)});
    }
    seq.limit = {Point{Vec(p)}, cut_pair(beta0, phi0)};
    out.push_back(std::move(seq));
  }
  return out;
}

CheckResult check_berger_reflection(const BergerModel& model, int n_dirs,
                                    std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst_gauge = 0.0, worst_mirror = 0.0, worst_literal = 0.0;
  for (int i = 0; i < n_dirs; ++i) {
    Eigen::Vector3d v = random_unit_dir(rng);
    while (std::abs(v[0]) < 0.1) v = random_unit_dir(rng);
    const auto rc = reflection_identity_check(model, v);
    worst_gauge = std::max(worst_gauge, rc.gauge_residual);
    worst_mirror = std::max(worst_mirror, rc.mirror_residual);
    worst_literal = std::max(worst_literal, rc.literal_residual);
  }
  const bool ok = worst_gauge <= tol && worst_mirror <= tol;
  return {"reflection", ok,
          "worst gauge residual " + fmt(worst_gauge) + ", mirrored-direction "
          "residual " + fmt(worst_mirror) + ", plain r-flip residual " +
              fmt(worst_literal) + " over " + std::to_string(n_dirs) +
              " directions (tol " + fmt(tol) + ")"};
}

CheckResult check_berger_fiber_cut(const BergerModel& model, double tol) {
  const double tc =
      cut_time(model.oracle, Eigen::Vector3d(1, 0, 0),
               std::max(1e-6, 3.0 * model.oracle.resolution()));
  const double want = M_PI * std::sin(model.alpha);
  const double err = std::abs(tc - want);
  return {"fiber-cut", err <= tol,
          "fiber cut time " + fmt(tc) + " vs pi*sin(alpha) " + fmt(want) +
              ", error " + fmt(err) + " (tol " + fmt(tol) + ")"};
}

CheckResult check_berger_round_limit(const BergerModel& model, int n_dirs,
                                     std::uint64_t seed, double tol) {
  if (std::abs(model.alpha - M_PI / 2) > 1e-9)
    return {"round-limit", false, "only meaningful at alpha = pi/2"};
  std::mt19937_64 rng(seed);
  const double t = std::max(1e-6, 3.0 * model.oracle.resolution());
  double worst = 0.0;
  for (int i = 0; i < n_dirs; ++i) {
    const double tc = cut_time(model.oracle, random_unit_dir(rng), t);
    worst = std::max(worst, std::abs(tc - M_PI));
  }
  return {"round-limit", worst <= tol,
          "worst |cut time - pi| = " + fmt(worst) + " over " +
              std::to_string(n_dirs) + " directions (tol " + fmt(tol) + ")"};
}

SuiteReport run_torus_suite(const FlatTorus& T, int samples,
                            std::uint64_t seed) {
  SuiteReport rep;
  rep.manifold = T.id;
  const PlannerAtlas atlas = build_atlas(T);
  const auto pairs = random_torus_pairs(T, samples, seed);
  const auto seqs = torus_domain_sequences(T, 10, seed + 1);
  const PointDistance dist = [&T](const Point& a, const Point& b) {
    return torus_distance(T, a, b);
  };
  const PointDistance ref = [&T](const Point& a, const Point& b) {
    const Vec x = b.coords - a.coords;
    return torus_distance_bruteforce(T.basis, x, x.norm() + 1e-9);
  };
  rep.checks.push_back(check_partition(atlas, pairs));
  rep.checks.push_back(check_endpoints(atlas, pairs, dist, 1e-9));
  rep.checks.push_back(check_minimality(atlas, pairs, ref, 1e-9));
  rep.checks.push_back(check_continuity(atlas, seqs, 1e-6));
  rep.checks.push_back(check_stratification(T, samples, seed + 2));
  rep.checks.push_back(check_trivially_covered(T, samples, seed + 3));
  rep.checks.push_back(check_inconsistency(T));
  rep.checks.push_back(check_sheet_selection_gap(T, samples, seed + 4));
  rep.checks.push_back(check_negative_controls(T));
  return rep;
}

SuiteReport run_berger_suite(const BergerModel& model, int samples,
                             std::uint64_t seed) {
  SuiteReport rep;
  rep.manifold = model.id;
  const PlannerAtlas atlas = berger_atlas(model);
  const auto pairs = random_berger_pairs(model, samples, seed);
  const auto pairs_min = random_berger_pairs(model, samples, seed + 5, true);
  const auto seqs = berger_domain_sequences(model, 10, seed + 1);
  const PointDistance dist = [](const Point& a, const Point& b) {
    return (a.coords - b.coords).norm();
  };
  const PointDistance ref = [&model](const Point& a, const Point& b) {
    return model.oracle.distance(Quat(a.coords), Quat(b.coords));
  };
  rep.checks.push_back(check_partition(atlas, pairs));
  rep.checks.push_back(check_endpoints(atlas, pairs, dist, 1e-9));
  rep.checks.push_back(
      check_minimality(atlas, pairs_min, ref, 3.0 * model.oracle.resolution()));
  rep.checks.push_back(check_continuity(atlas, seqs, 1e-6));
  rep.checks.push_back(check_berger_reflection(model, 20, seed + 2, 1e-4));
  rep.checks.push_back(check_berger_fiber_cut(model, 1e-3));
  if (std::abs(model.alpha - M_PI / 2) < 1e-9)
    rep.checks.push_back(check_berger_round_limit(model, 20, seed + 3, 1e-3));
  return rep;
}

}  // namespace geoplan
