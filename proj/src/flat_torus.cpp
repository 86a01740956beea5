// SPDX-License-Identifier: Apache-2.0
#include "geoplan/flat_torus.hpp"

#include "geoplan/transport.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>

namespace geoplan {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

Vec reduce_rep_basis(const Eigen::MatrixXd& B, const Vec& x) {
  Vec c = B.colPivHouseholderQr().solve(x);
  for (int i = 0; i < c.size(); ++i) {
    c[i] -= std::floor(c[i]);
    if (c[i] >= 1.0) c[i] -= 1.0;  // guard against floor rounding at 1-eps
  }
  return B * c;
}

std::string format_basis_id(const Eigen::MatrixXd& B) {
  std::ostringstream os;
  os.precision(17);
  os << "torus:basis=";
  for (int j = 0; j < B.cols(); ++j) {
    if (j) os << ";";
    for (int i = 0; i < B.rows(); ++i) {
      if (i) os << ",";
      os << B(i, j);
    }
  }
  return os.str();
}

}  // namespace

FlatTorus make_flat_torus(const LatticeBasis& basis) {
  FlatTorus T;
  T.basis = gauss_reduce(basis);
  T.cell2d = voronoi_cell_2d(T.basis);
  T.strata = cell_strata(*T.cell2d);
  T.id = format_basis_id(T.basis.B);
  return T;
}

FlatTorus make_standard_torus(int n) {
  if (n < 1) throw std::invalid_argument("make_standard_torus: n >= 1");
  FlatTorus T;
  T.basis.B = 2.0 * Eigen::MatrixXd::Identity(n, n);
  T.cube = CubeCellND{n};
  T.strata = cell_strata(*T.cube);
  T.id = "torus:std:n=" + std::to_string(n);
  return T;
}

Point torus_origin(const FlatTorus& T) { return Point{Vec::Zero(T.dim())}; }

Vec torus_reduce_rep(const FlatTorus& T, const Vec& x) {
  return reduce_rep_basis(T.basis.B, x);
}

Vec torus_reduce_cell(const FlatTorus& T, const Vec& x) {
  const auto ms = closest_lattice_points(T.basis, x);
  return x - ms.front().v;
}

bool torus_equal(const FlatTorus& T, const Point& p, const Point& q) {
  return torus_reduce_cell(T, q.coords - p.coords).norm() <= 1e-12;
}

Point torus_exp(const FlatTorus& T, const Point& p, const TangentVector& v) {
  return Point{torus_reduce_rep(T, p.coords + v.components)};
}

double torus_distance(const FlatTorus& T, const Point& p, const Point& q) {
  return torus_reduce_cell(T, q.coords - p.coords).norm();
}

namespace {

GeodesicSegment straight_segment(const FlatTorus& T, const Point& p,
                                 const Vec& u) {
  GeodesicSegment g;
  g.manifold = T.id;
  g.start = p;
  g.velocity = u;
  g.length = u.norm();
  const Eigen::MatrixXd B = T.basis.B;
  const Vec p0 = p.coords;
  g.curve = [B, p0, u](double t) {
    return Point{reduce_rep_basis(B, p0 + t * u)};
  };
  return g;
}

std::vector<Vec> lifts_of(const Vec& diff,
                          const std::vector<LatticeVector>& ms) {
  std::vector<Vec> lifts;
  lifts.reserve(ms.size());
  for (const auto& m : ms) lifts.push_back(diff - m.v);
  return lifts;
}

Vec lexmax_lift(const std::vector<Vec>& lifts) {
  Vec best = lifts.front();
  for (const auto& u : lifts)
    if (lex_less(best, u)) best = u;
  return best;
}

}  // namespace

std::vector<GeodesicSegment> minimal_geodesics(const FlatTorus& T,
                                               const Point& p,
                                               const Point& q) {
  const Vec diff = q.coords - p.coords;
  const auto ms = closest_lattice_points(T.basis, diff);
  auto lifts = lifts_of(diff, ms);
  std::sort(lifts.begin(), lifts.end(),
            [](const Vec& a, const Vec& b) { return lex_less(b, a); });
  std::vector<GeodesicSegment> out;
  out.reserve(lifts.size());
  for (const auto& u : lifts) out.push_back(straight_segment(T, p, u));
  return out;
}

StratumLocation locate(const FlatTorus& T, const Vec& diff) {
  StratumLocation loc;
  loc.minimizers = closest_lattice_points(T.basis, diff);
  const int mult = static_cast<int>(loc.minimizers.size());
  if (mult == 1) return loc;

  int index = 0;
  if (T.cube) {
    int k = 0;
    while ((1 << k) < mult) ++k;
    if ((1 << k) != mult)
      throw std::logic_error("locate: cube multiplicity is not a power of 2");
    index = k;
  } else {
    const bool hex = T.cell2d->shape == VoronoiCell2D::Shape::hexagon;
    if (mult == 2)
      index = 1;
    else if ((hex && mult == 3) || (!hex && mult == 4))
      index = 2;
    else
      throw std::logic_error("locate: unexpected lift multiplicity");
  }
  loc.index = index;

  const Vec u = diff - loc.minimizers.front().v;
  const Stratum& s = T.strata.strata[index - 1];
  for (int c = 0; c < static_cast<int>(s.components.size()); ++c) {
    for (const auto& sh : s.components[c].sheets) {
      if (sh.contains(u)) {
        loc.component = c;
        return loc;
      }
    }
  }
  throw std::logic_error("locate: lift not on any sheet of its stratum");
}

PlannerAtlas build_atlas(const FlatTorus& T) {
  auto Tp = std::make_shared<const FlatTorus>(T);
  const Point o = torus_origin(T);

  auto base_plan = [Tp](const Point& p, const Point& q) {
    const Vec diff = q.coords - p.coords;
    const auto ms = closest_lattice_points(Tp->basis, diff);
    return straight_segment(*Tp, p, lexmax_lift(lifts_of(diff, ms)));
  };

  std::vector<PlannerDomain> base;
  {
    PlannerDomain d0;
    d0.label = "unique";
    d0.membership = [Tp](const Point& p, const Point& q) {
      if (!torus_equal(*Tp, p, torus_origin(*Tp))) return false;
      return locate(*Tp, q.coords - p.coords).index == 0;
    };
    d0.plan = base_plan;
    base.push_back(d0);
  }
  for (int k = 1; k <= T.strata.depth(); ++k) {
    PlannerDomain dk;
    dk.label = "stratum" + std::to_string(k);
    dk.membership = [Tp, k](const Point& p, const Point& q) {
      if (!torus_equal(*Tp, p, torus_origin(*Tp))) return false;
      return locate(*Tp, q.coords - p.coords).index == k;
    };
    dk.plan = base_plan;
    base.push_back(dk);
  }

  IsometrySection s;
  s.label = "translation";
  s.domain = [](const Point&) { return true; };
  s.apply = [Tp](const Point& x, const Point& p) {
    return Point{torus_reduce_rep(*Tp, x.coords + p.coords)};
  };
  s.apply_inverse = [](const Point& x, const Point& p) {
    return Point{Vec(p.coords - x.coords)};
  };
  s.apply_to_path = [Tp](const Point& x, const GeodesicSegment& g) {
    GeodesicSegment out = g;
    out.start = Point{torus_reduce_rep(*Tp, x.coords + g.start.coords)};
    const auto inner = g.curve;
    const Vec xc = x.coords;
    const Eigen::MatrixXd B = Tp->basis.B;
    out.curve = [inner, xc, B](double t) {
      return Point{reduce_rep_basis(B, xc + inner(t).coords)};
    };
    return out;
  };

  PlannerAtlas atlas;
  atlas.manifold = T.id;
  atlas.domains = product_domains({s}, o, base);
  return atlas;
}

namespace {

using Label = Eigen::VectorXi;

struct LabelLess {
  bool operator()(const Label& a, const Label& b) const {
    for (int i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};
using LabelSet = std::set<Label, LabelLess>;

std::string label_str(const Label& c) {
  std::string s = "(";
  for (int i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

bool total_intersection_empty(const std::vector<LabelSet>& sets) {
  if (sets.empty()) return true;
  LabelSet acc = sets.front();
  for (std::size_t i = 1; i < sets.size() && !acc.empty(); ++i) {
    LabelSet next;
    for (const auto& l : acc)
      if (sets[i].count(l)) next.insert(l);
    acc = std::move(next);
  }
  return acc.empty();
}

double cell_safe_eps(const FlatTorus& T) {
  if (T.cube) return 0.5;
  const auto& cell = *T.cell2d;
  const int m = static_cast<int>(cell.vertices.size());
  double sep = std::numeric_limits<double>::infinity();
  for (int e = 0; e < m; ++e) {
    const Vec& va = cell.vertices[e];
    const Vec& vb = cell.vertices[(e + 1) % m];
    sep = std::min(sep, (vb - va).norm());
    for (int v = 0; v < m; ++v) {
      if (v == e || v == (e + 1) % m) continue;
      const Vec d = vb - va;
      const double t =
          std::clamp(d.dot(cell.vertices[v] - va) / d.squaredNorm(), 0.0, 1.0);
      sep = std::min(sep, (cell.vertices[v] - (va + t * d)).norm());
    }
  }
  return 0.25 * sep;
}

}  // namespace

InconsistencyReport check_inconsistency_at(const FlatTorus& T, const Point& x,
                                           double eps) {
  const double safe = cell_safe_eps(T);
  if (eps < 0.0) eps = safe;
  if (eps > safe) {
    std::ostringstream os;
    os << "check_inconsistency_at: eps too large; the neighborhood could "
          "meet non-incident components. Use eps <= "
       << safe;
    throw std::invalid_argument(os.str());
  }

  const Vec d = torus_reduce_cell(T, x.coords);
  const auto ms = closest_lattice_points(T.basis, d);
  if (ms.size() < 2)
    throw std::invalid_argument(
        "check_inconsistency_at: x is not a cut point of the origin");

  InconsistencyReport rep;
  rep.eps = eps;
  const StratumLocation loc = locate(T, d);
  rep.stratum_index = loc.index;
  for (const auto& m : ms) rep.lift_labels.push_back(m.coeffs);

  std::vector<LabelSet> sets;

  if (T.strata.depth() == 1) {
    rep.mode = "vacuous";
    rep.total_intersection_empty = true;
    return rep;
  }

  if (loc.index == 1) {
    // Two minimizing lifts; the two sides of the cut hypersurface at x are
    // the components, and each side's closure preimage meets exp^{-1}(x) in
    // exactly one lift.
    rep.mode = "base-case";
    for (const auto& m : ms) {
      rep.component_labels.push_back("side" + label_str(m.coeffs));
      rep.closure_sets.push_back({m.coeffs});
      sets.push_back(LabelSet{m.coeffs});
    }
    rep.total_intersection_empty = total_intersection_empty(sets);
    return rep;
  }

  rep.mode = "definition";
  const bool hex_vertex =
      T.cell2d && T.cell2d->shape == VoronoiCell2D::Shape::hexagon;

  if (hex_vertex) {
    // Components of the punctured neighborhood in the next-shallower
    // stratum: one arc germ per edge class; its closure preimage collects
    // the class edges' endpoints that are lifts of x.
    const auto& cell = *T.cell2d;
    const int m = static_cast<int>(cell.vertices.size());
    const auto lift_vecs = lifts_of(d, ms);
    for (const auto& comp : T.strata.strata[0].components) {
      LabelSet set;
      for (const auto& sh : comp.sheets) {
        // recover the edge index from the sheet label "edge<i>"
        const int e = std::stoi(sh.label.substr(4));
        for (const Vec& endpoint :
             {cell.vertices[e], cell.vertices[(e + 1) % m]}) {
          for (std::size_t li = 0; li < lift_vecs.size(); ++li) {
            if ((lift_vecs[li] - endpoint).norm() <= 1e-9)
              set.insert(ms[li].coeffs);
          }
        }
      }
      rep.component_labels.push_back(comp.label);
      rep.closure_sets.emplace_back(set.begin(), set.end());
      sets.push_back(std::move(set));
    }
  } else {
    // Axis rule (rectangle and cube cells): for each axis i pinned at x and
    // each sign, the shallower-stratum germ that varies coordinate i toward
    // that sign has closure preimage {lifts with coordinate i at that sign}.
    const auto lift_vecs = lifts_of(d, ms);
    const int n = T.dim();
    std::vector<int> pinned;
    for (int i = 0; i < n; ++i) {
      for (const auto& mm : ms) {
        if (mm.coeffs[i] != ms.front().coeffs[i]) {
          pinned.push_back(i);
          break;
        }
      }
    }
    for (int i : pinned) {
      for (int s = +1; s >= -1; s -= 2) {
        LabelSet set;
        for (std::size_t li = 0; li < lift_vecs.size(); ++li)
          if ((s > 0) == (lift_vecs[li][i] > 0.0)) set.insert(ms[li].coeffs);
        rep.component_labels.push_back(
            "axis" + std::to_string(i + 1) + (s > 0 ? "->+" : "->-"));
        rep.closure_sets.emplace_back(set.begin(), set.end());
        sets.push_back(std::move(set));
      }
    }
  }

  rep.total_intersection_empty = total_intersection_empty(sets);
  return rep;
}

}  // namespace geoplan
