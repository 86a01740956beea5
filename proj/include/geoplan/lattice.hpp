// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/core.hpp"

#include <array>

namespace geoplan {

// Columns of B are the basis vectors of a rank-n lattice in R^n.
struct LatticeBasis {
  Eigen::MatrixXd B;
  int dim() const { return static_cast<int>(B.cols()); }
};

// Lagrange-Gauss reduction, 2-D only. Output (a1,a2) satisfies
// |a1| <= |a2| <= |a2 +- a1| and <a1,a2> >= 0, and generates the same
// lattice (the transform is unimodular). Degenerate input throws.
LatticeBasis gauss_reduce(const LatticeBasis& basis);

// A lattice vector together with its integer coordinates in the basis.
// The integer label is what downstream set arithmetic relies on; the
// floating vector is derived data.
struct LatticeVector {
  Eigen::VectorXi coeffs;
  Vec v;
};

// All lattice vectors gamma with |x - gamma| within tol of the minimum,
// by bounded enumeration (window radius derived from the basis norms).
// Sorted by coefficient vector, lexicographically, for determinism.
// Valid for reduced 2-D bases and for diagonal n-D bases.
std::vector<LatticeVector> closest_lattice_points(const LatticeBasis& basis,
                                                  const Vec& x,
                                                  double tol = 1e-12);

// The Voronoi cell of the origin for a reduced 2-D basis: a hexagon when
// the basis vectors are not orthogonal, a rectangle otherwise. The cell
// boundary is the tangent cut locus of the corresponding flat torus.
struct VoronoiCell2D {
  enum class Shape { hexagon, rectangle };
  Shape shape;
  LatticeBasis basis;  // reduced basis the cell was built from

  // vertices in counterclockwise cyclic order; edge i = [v_i, v_{i+1 mod m}]
  std::vector<Vec> vertices;
  // edge i lies on the perpendicular bisector of edge_normals[i]
  std::vector<Vec> edge_normals;
  std::vector<Eigen::VectorXi> edge_normal_coeffs;
  // edge i is identified with edge_partner[i] by translation by
  // edge_normals[i] (opposite edges of the cell)
  std::vector<int> edge_partner;
  // orbits of vertex indices under lattice translation: two classes of
  // three for the hexagon, one class of four for the rectangle
  std::vector<std::vector<int>> vertex_classes;

  int edge(int i) const { return i % static_cast<int>(vertices.size()); }
};

// Orthogonality threshold: |<a1,a2>| <= 1e-10 |a1| |a2| is treated as
// rectangular (below this the hexagon's short edges degenerate).
VoronoiCell2D voronoi_cell_2d(const LatticeBasis& reduced);

// The cell [-1,1]^n of the lattice (2Z)^n; boundary strata are indexed by
// an axis subset (which coordinates sit at +-1) and a sign pattern.
struct CubeCellND {
  int n;
};

// One boundary piece mapping homeomorphically onto its stratum component
// under the quotient projection.
struct Sheet {
  std::string label;
  Vec centroid;  // interior representative; canonical choice is by centroid
  // closed membership test in the tangent cell boundary
  std::function<bool(const Vec&)> contains;
  // [0,1]^d -> sheet point; d = component dimension; the closure of the
  // image over the closed parameter cube is the closed sheet
  std::function<Vec(const Vec&)> sample;
};

struct StratumComponent {
  std::string label;
  int dim;
  std::vector<Sheet> sheets;
  int canonical = 0;  // index of the sheet with lexicographically maximal centroid
};

struct Stratum {
  std::vector<StratumComponent> components;
};

// Ordered strata of a cut locus: strata[0] is the top-dimensional stratum,
// the last entry the deepest. Closures grow toward the back of the list.
struct Stratification {
  std::vector<Stratum> strata;
  int depth() const { return static_cast<int>(strata.size()); }
};

Stratification cell_strata(const VoronoiCell2D& cell);
Stratification cell_strata(const CubeCellND& cell);

}  // namespace geoplan
