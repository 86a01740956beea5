// SPDX-License-Identifier: Apache-2.0
#include "geoplan/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace geoplan {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

bool coeff_lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool is_diagonal(const Eigen::MatrixXd& B) {
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j)
      if (i != j && B(i, j) != 0.0) return false;
  return true;
}

}  // namespace

LatticeBasis gauss_reduce(const LatticeBasis& basis) {
  if (basis.dim() != 2)
    throw std::invalid_argument("gauss_reduce: only 2-D bases are supported");
  Eigen::Vector2d a1 = basis.B.col(0), a2 = basis.B.col(1);
  if (std::abs(a1.x() * a2.y() - a1.y() * a2.x()) <= 1e-12)
    throw std::invalid_argument("gauss_reduce: degenerate basis");
  if (a1.squaredNorm() > a2.squaredNorm()) std::swap(a1, a2);
  // Lagrange's algorithm: shorten a2 against a1 until stable.
  for (;;) {
    const double mu = std::round(a1.dot(a2) / a1.squaredNorm());
    a2 -= mu * a1;
    if (a2.squaredNorm() < a1.squaredNorm())
      std::swap(a1, a2);
    else
      break;
  }
  if (a1.dot(a2) < 0.0) a2 = -a2;
  LatticeBasis out;
  out.B.resize(2, 2);
  out.B.col(0) = a1;
  out.B.col(1) = a2;
  return out;
}

std::vector<LatticeVector> closest_lattice_points(const LatticeBasis& basis,
                                                  const Vec& x, double tol) {
  const int n = basis.dim();
  std::vector<LatticeVector> out;

  if (is_diagonal(basis.B)) {
    // Exact per-axis minimization: the squared distance separates.
    std::vector<std::vector<int>> axis_choices(n);
    for (int i = 0; i < n; ++i) {
      const double s = basis.B(i, i);
      const double c = x[i] / s;
      const int c0 = static_cast<int>(std::floor(c));
      double best = std::abs(x[i] - s * c0);
      for (int k = c0 + 1; k <= c0 + 1; ++k)
        best = std::min(best, std::abs(x[i] - s * k));
      for (int k = c0; k <= c0 + 1; ++k)
        if (std::abs(x[i] - s * k) <= best + tol) axis_choices[i].push_back(k);
    }
    std::vector<int> idx(n, 0);
    for (;;) {
      LatticeVector lv;
      lv.coeffs.resize(n);
      for (int i = 0; i < n; ++i) lv.coeffs[i] = axis_choices[i][idx[i]];
      lv.v = basis.B * lv.coeffs.cast<double>();
      out.push_back(lv);
      int i = n - 1;
      while (i >= 0 && ++idx[i] == static_cast<int>(axis_choices[i].size()))
        idx[i--] = 0;
      if (i < 0) break;
    }
  } else {
    if (n != 2)
      throw std::invalid_argument(
          "closest_lattice_points: non-diagonal bases only in 2-D");
    // Bounded window enumeration; the radius covers every candidate that
    // can tie the minimum for x anywhere within the window of interest.
    double colsum = 0.0;
    for (int j = 0; j < n; ++j) colsum += basis.B.col(j).norm();
    const double R = 2.0 * colsum + x.norm();
    const Eigen::MatrixXd Binv = basis.B.inverse();
    std::vector<int> K(n);
    for (int i = 0; i < n; ++i)
      K[i] = static_cast<int>(std::ceil(Binv.row(i).norm() * R)) + 1;
    Eigen::Vector2i center =
        (Binv * x).array().round().cast<int>().matrix();
    double dmin = std::numeric_limits<double>::infinity();
    std::vector<LatticeVector> cand;
    for (int c0 = center[0] - K[0]; c0 <= center[0] + K[0]; ++c0) {
      for (int c1 = center[1] - K[1]; c1 <= center[1] + K[1]; ++c1) {
        LatticeVector lv;
        lv.coeffs.resize(2);
        lv.coeffs << c0, c1;
        lv.v = basis.B * lv.coeffs.cast<double>();
        const double d = (x - lv.v).norm();
        if (d < dmin) dmin = d;
        if (d <= dmin + tol) cand.push_back(std::move(lv));
      }
    }
    for (auto& lv : cand)
      if ((x - lv.v).norm() <= dmin + tol) out.push_back(std::move(lv));
  }

  // keep only true minimizers and order deterministically
  double dmin = std::numeric_limits<double>::infinity();
  for (const auto& lv : out) dmin = std::min(dmin, (x - lv.v).norm());
  std::vector<LatticeVector> res;
  for (auto& lv : out)
    if ((x - lv.v).norm() <= dmin + tol) res.push_back(std::move(lv));
  std::sort(res.begin(), res.end(),
            [](const LatticeVector& a, const LatticeVector& b) {
              return coeff_lex_less(a.coeffs, b.coeffs);
            });
  return res;
}

namespace {

// Intersection of the perpendicular bisectors of g1 and g2.
Eigen::Vector2d bisector_meet(const Eigen::Vector2d& g1,
                              const Eigen::Vector2d& g2) {
  Eigen::Matrix2d A;
  A.row(0) = g1.transpose();
  A.row(1) = g2.transpose();
  Eigen::Vector2d rhs(0.5 * g1.squaredNorm(), 0.5 * g2.squaredNorm());
  return A.colPivHouseholderQr().solve(rhs);
}

bool on_bisector(const Eigen::Vector2d& v, const Eigen::Vector2d& g) {
  return std::abs(v.dot(g) - 0.5 * g.squaredNorm()) <= 1e-9 * (1.0 + g.norm());
}

}  // namespace

VoronoiCell2D voronoi_cell_2d(const LatticeBasis& reduced) {
  const Eigen::Vector2d a1 = reduced.B.col(0), a2 = reduced.B.col(1);
  VoronoiCell2D cell;
  cell.basis = reduced;

  const double ip = a1.dot(a2);
  if (ip < -1e-10 * a1.norm() * a2.norm())
    throw std::invalid_argument("voronoi_cell_2d: basis is not reduced");
  const bool rectangular = std::abs(ip) <= 1e-10 * a1.norm() * a2.norm();

  struct Normal {
    Eigen::Vector2d g;
    Eigen::Vector2i c;
  };
  std::vector<Normal> normals;
  if (rectangular) {
    cell.shape = VoronoiCell2D::Shape::rectangle;
    normals = {{a1, {1, 0}}, {a2, {0, 1}}, {-a1, {-1, 0}}, {-a2, {0, -1}}};
  } else {
    cell.shape = VoronoiCell2D::Shape::hexagon;
    normals = {{a1, {1, 0}},        {a2, {0, 1}},   {a2 - a1, {-1, 1}},
               {-a1, {-1, 0}},      {-a2, {0, -1}}, {a1 - a2, {1, -1}}};
  }
  std::sort(normals.begin(), normals.end(), [](const Normal& x, const Normal& y) {
    return std::atan2(x.g.y(), x.g.x()) < std::atan2(y.g.y(), y.g.x());
  });

  const int m = static_cast<int>(normals.size());
  for (int i = 0; i < m; ++i) {
    Eigen::Vector2d v = bisector_meet(normals[i].g, normals[(i + 1) % m].g);
    Vec vv(2);
    vv << v.x(), v.y();
    cell.vertices.push_back(vv);
  }
  // edge i = [v_i, v_{i+1}] lies on the bisector shared by both endpoints
  for (int i = 0; i < m; ++i) {
    const Normal& nn = normals[(i + 1) % m];
    Eigen::Vector2d va(cell.vertices[i][0], cell.vertices[i][1]);
    Eigen::Vector2d vb(cell.vertices[(i + 1) % m][0],
                       cell.vertices[(i + 1) % m][1]);
    if (!on_bisector(va, nn.g) || !on_bisector(vb, nn.g))
      throw std::logic_error("voronoi_cell_2d: edge/bisector bookkeeping");
    Vec g(2);
    g << nn.g.x(), nn.g.y();
    cell.edge_normals.push_back(g);
    Eigen::VectorXi c(2);
    c << nn.c.x(), nn.c.y();
    cell.edge_normal_coeffs.push_back(c);
  }
  // opposite edge carries the opposite normal
  cell.edge_partner.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if ((cell.edge_normals[i] + cell.edge_normals[j]).norm() <= 1e-9) {
        cell.edge_partner[i] = j;
        break;
      }
    }
    if (cell.edge_partner[i] < 0)
      throw std::logic_error("voronoi_cell_2d: unpaired edge");
  }
  // vertex classes: orbits under lattice translation
  const Eigen::Matrix2d Binv = Eigen::Matrix2d(reduced.B).inverse();
  std::vector<int> cls(m, -1);
  int ncls = 0;
  for (int i = 0; i < m; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = ncls;
    for (int j = i + 1; j < m; ++j) {
      if (cls[j] >= 0) continue;
      Eigen::Vector2d d(cell.vertices[i][0] - cell.vertices[j][0],
                        cell.vertices[i][1] - cell.vertices[j][1]);
      Eigen::Vector2d c = Binv * d;
      if ((c - c.array().round().matrix()).norm() <= 1e-9) cls[j] = ncls;
    }
    ++ncls;
  }
  cell.vertex_classes.assign(ncls, {});
  for (int i = 0; i < m; ++i) cell.vertex_classes[cls[i]].push_back(i);
  const std::size_t want = rectangular ? 4u : 3u;
  if (cell.vertex_classes.size() != (rectangular ? 1u : 2u))
    throw std::logic_error("voronoi_cell_2d: unexpected vertex class count");
  for (const auto& vc : cell.vertex_classes)
    if (vc.size() != want)
      throw std::logic_error("voronoi_cell_2d: unexpected vertex class size");
  return cell;
}

namespace {

Sheet edge_sheet(const VoronoiCell2D& cell, int e) {
  const int m = static_cast<int>(cell.vertices.size());
  const Vec va = cell.vertices[e], vb = cell.vertices[(e + 1) % m];
  Sheet s;
  s.label = "edge" + std::to_string(e);
  s.centroid = 0.5 * (va + vb);
  s.contains = [va, vb](const Vec& u) {
    const Vec d = vb - va;
    const double t = d.dot(u - va) / d.squaredNorm();
    const double tc = std::clamp(t, 0.0, 1.0);
    return (u - (va + tc * d)).norm() <= 1e-9;
  };
  s.sample = [va, vb](const Vec& par) { return Vec(va + par[0] * (vb - va)); };
  return s;
}

Sheet vertex_sheet(const Vec& v, const std::string& label) {
  Sheet s;
  s.label = label;
  s.centroid = v;
  s.contains = [v](const Vec& u) { return (u - v).norm() <= 1e-9; };
  s.sample = [v](const Vec&) { return v; };
  return s;
}

int lexmax_centroid(const std::vector<Sheet>& sheets) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(sheets.size()); ++i)
    if (lex_less(sheets[best].centroid, sheets[i].centroid)) best = i;
  return best;
}

}  // namespace

Stratification cell_strata(const VoronoiCell2D& cell) {
  const int m = static_cast<int>(cell.vertices.size());
  Stratification st;

  // top stratum: open edge classes, doubly covered
  Stratum s1;
  std::vector<bool> used(m, false);
  int cls_idx = 0;
  for (int e = 0; e < m; ++e) {
    if (used[e]) continue;
    used[e] = used[cell.edge_partner[e]] = true;
    StratumComponent comp;
    comp.label = "A" + std::to_string(++cls_idx);
    comp.dim = 1;
    comp.sheets.push_back(edge_sheet(cell, e));
    comp.sheets.push_back(edge_sheet(cell, cell.edge_partner[e]));
    comp.canonical = lexmax_centroid(comp.sheets);
    s1.components.push_back(std::move(comp));
  }
  st.strata.push_back(std::move(s1));

  // deepest stratum: vertex classes
  Stratum s2;
  // the class containing the lexicographically maximal vertex is named "p"
  int pmax = 0;
  for (int i = 1; i < m; ++i)
    if (lex_less(cell.vertices[pmax], cell.vertices[i])) pmax = i;
  std::vector<std::vector<int>> classes = cell.vertex_classes;
  std::stable_sort(classes.begin(), classes.end(),
                   [&](const std::vector<int>& a, const std::vector<int>& b) {
                     const bool ap = std::count(a.begin(), a.end(), pmax) > 0;
                     const bool bp = std::count(b.begin(), b.end(), pmax) > 0;
                     return ap > bp;
                   });
  const char* names[2] = {"p", "q"};
  for (std::size_t k = 0; k < classes.size(); ++k) {
    StratumComponent comp;
    comp.label = classes.size() == 1 ? "c" : names[k];
    comp.dim = 0;
    int idx = 0;
    for (int vi : classes[k])
      comp.sheets.push_back(vertex_sheet(
          cell.vertices[vi], comp.label + std::to_string(++idx)));
    comp.canonical = lexmax_centroid(comp.sheets);
    s2.components.push_back(std::move(comp));
  }
  st.strata.push_back(std::move(s2));
  return st;
}

Stratification cell_strata(const CubeCellND& cell) {
  const int n = cell.n;
  Stratification st;
  // subsets of {0,..,n-1} of size k, in lexicographic order
  std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)>
      gen = [&](int start, int k, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
        if (k == 0) {
          out.push_back(cur);
          return;
        }
        for (int i = start; i <= n - k; ++i) {
          cur.push_back(i);
          gen(i + 1, k - 1, cur, out);
          cur.pop_back();
        }
      };

  for (int k = 1; k <= n; ++k) {
    Stratum sk;
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    gen(0, k, cur, subsets);
    for (const auto& I : subsets) {
      StratumComponent comp;
      comp.dim = n - k;
      {
        std::string lab = "B";
        for (int i : I) lab += "_" + std::to_string(i + 1);
        comp.label = lab;
      }
      // sign patterns, canonical (all +1) first by construction of ordering
      const int npat = 1 << k;
      for (int mask = 0; mask < npat; ++mask) {
        std::vector<int> signs(k);
        for (int b = 0; b < k; ++b) signs[b] = (mask >> b) & 1 ? -1 : 1;
        Sheet s;
        {
          std::string lab = comp.label + ":";
          for (int b = 0; b < k; ++b) lab += signs[b] > 0 ? "+" : "-";
          s.label = lab;
        }
        Vec c = Vec::Zero(n);
        for (int b = 0; b < k; ++b) c[I[b]] = signs[b];
        s.centroid = c;
        std::vector<int> Icopy = I;
        s.contains = [Icopy, signs, n](const Vec& u) {
          if (u.size() != n) return false;
          std::size_t b = 0;
          for (int i = 0; i < n; ++i) {
            const bool pinned =
                b < Icopy.size() && Icopy[b] == i;
            if (pinned) {
              if (std::abs(u[i] - signs[b]) > 1e-9) return false;
              ++b;
            } else {
              if (std::abs(u[i]) > 1.0 + 1e-9) return false;
            }
          }
          return true;
        };
        s.sample = [Icopy, signs, n](const Vec& par) {
          Vec u(n);
          std::size_t b = 0;
          int f = 0;
          for (int i = 0; i < n; ++i) {
            if (b < Icopy.size() && Icopy[b] == i) {
              u[i] = signs[b++];
            } else {
              u[i] = -1.0 + 2.0 * par[f++];
            }
          }
          return u;
        };
        comp.sheets.push_back(std::move(s));
      }
      comp.canonical = lexmax_centroid(comp.sheets);
      sk.components.push_back(std::move(comp));
    }
    st.strata.push_back(std::move(sk));
  }
  return st;
}

}  // namespace geoplan
