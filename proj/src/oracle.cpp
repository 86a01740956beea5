// SPDX-License-Identifier: Apache-2.0
#include "geoplan/oracle.hpp"

#include "geoplan/berger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace geoplan {

namespace {

double default_radius(const LatticeBasis& basis, const Vec& x) {
  double s = 0.0;
  for (int j = 0; j < basis.B.cols(); ++j) s += basis.B.col(j).norm();
  return 2.0 * s + x.norm();
}

// Visit every lattice coefficient vector whose point can lie within radius
// of x, calling f(coeffs, point).
template <class F>
void scan_box(const LatticeBasis& basis, const Vec& x, double radius, F&& f) {
  const int n = basis.dim();
  const Eigen::MatrixXd Binv = basis.B.inverse();
  const Vec c0 = Binv * x;
  Eigen::VectorXi lo(n), hi(n), c(n);
  for (int i = 0; i < n; ++i) {
    const double k = Binv.row(i).norm() * radius;
    lo[i] = static_cast<int>(std::floor(c0[i] - k)) - 1;
    hi[i] = static_cast<int>(std::ceil(c0[i] + k)) + 1;
  }
  c = lo;
  while (true) {
    f(c, Vec(basis.B * c.cast<double>()));
    int i = 0;
    while (i < n && c[i] == hi[i]) {
      c[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++c[i];
  }
}

}  // namespace

double torus_distance_bruteforce(const LatticeBasis& basis, const Vec& x,
                                 double radius) {
  if (radius < 0.0) radius = default_radius(basis, x);
  double best = std::numeric_limits<double>::infinity();
  scan_box(basis, x, radius, [&](const Eigen::VectorXi&, const Vec& g) {
    best = std::min(best, (x - g).norm());
  });
  return best;
}

std::vector<Eigen::VectorXi> torus_minimizers_bruteforce(
    const LatticeBasis& basis, const Vec& x, double tie_tol, double radius) {
  if (radius < 0.0) radius = default_radius(basis, x);
  const double best = torus_distance_bruteforce(basis, x, radius);
  std::vector<Eigen::VectorXi> out;
  scan_box(basis, x, radius, [&](const Eigen::VectorXi& c, const Vec& g) {
    if ((x - g).norm() <= best + tie_tol) out.push_back(c);
  });
  std::sort(out.begin(), out.end(),
            [](const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
              for (int i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i];
              return false;
            });
  return out;
}

namespace {

constexpr double kTMax = M_PI + 0.3;

Eigen::Vector3d fibonacci_dir(int i, int n) {
  const double z = 1.0 - (2.0 * i + 1.0) / n;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double theta = M_PI * (3.0 - std::sqrt(5.0)) * i;
  return {z, rho * std::cos(theta), rho * std::sin(theta)};
}

void orthonormal_complement(const Eigen::Vector3d& u, Eigen::Vector3d& e1,
                            Eigen::Vector3d& e2) {
  const Eigen::Vector3d probe =
      std::abs(u[0]) < 0.9 ? Eigen::Vector3d(1, 0, 0) : Eigen::Vector3d(0, 1, 0);
  e1 = u.cross(probe).normalized();
  e2 = u.cross(e1);
}

}  // namespace

BergerOracle::BergerOracle(double alpha, int n_dir, int n_t)
    : alpha_(alpha), n_dir_(n_dir), n_t_(n_t) {
  if (!(alpha > 0.0 && alpha <= M_PI / 2 + 1e-12))
    throw std::invalid_argument("BergerOracle: alpha must lie in (0, pi/2]");
  if (n_dir < 16 || n_t < 16)
    throw std::invalid_argument("BergerOracle: grid too coarse");
  resolution_ =
      std::max(1e-9, 1e-7 * (200.0 / n_dir + 400.0 / n_t) / 2.0);
  dirs_.reserve(n_dir);
  for (int i = 0; i < n_dir; ++i) dirs_.push_back(fibonacci_dir(i, n_dir));
  times_.reserve(n_t);
  for (int j = 0; j < n_t; ++j) times_.push_back(kTMax * (j + 1) / n_t);
  table_.resize(static_cast<std::size_t>(n_dir) * n_t);
  for (int i = 0; i < n_dir; ++i)
    for (int j = 0; j < n_t; ++j)
      table_[static_cast<std::size_t>(i) * n_t + j] =
          berger_exp(alpha_, dirs_[i], times_[j]);
}

std::vector<BergerOracle::Minimizer> BergerOracle::refine_candidates(
    const Eigen::Vector4d& q) const {
  std::vector<Minimizer> out;
  if ((q - quat_identity()).norm() < 1e-12) {
    out.push_back({Eigen::Vector3d(1, 0, 0), 0.0, 0.0});
    return out;
  }

  // best cell per direction, so a basin with a shallow error cannot be
  // crowded out of the candidate list by many cells of another basin
  struct Cell {
    double err;
    int i, j;
  };
  std::vector<Cell> best(n_dir_);
  for (int i = 0; i < n_dir_; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * n_t_;
    Cell c{std::numeric_limits<double>::infinity(), i, 0};
    for (int j = 0; j < n_t_; ++j) {
      const double err = (table_[row + j] - q).squaredNorm();
      if (err < c.err) {
        c.err = err;
        c.j = j;
      }
    }
    best[i] = c;
  }
  std::sort(best.begin(), best.end(),
            [](const Cell& a, const Cell& b) { return a.err < b.err; });

  // two seed policies, both needed: angular suppression keeps coverage of
  // remote basins when one branch floods the error ranking, and the raw top
  // list keeps distinct basins that sit closer together than the suppression
  // radius (the branch structure tightens as alpha decreases)
  std::vector<Cell> seeds;
  auto push_cell = [&seeds](const Cell& c) {
    for (const auto& s : seeds)
      if (s.i == c.i && s.j == c.j) return;
    seeds.push_back(c);
  };
  {
    std::vector<Cell> spread;
    for (const auto& c : best) {
      bool near = false;
      for (const auto& s : spread) {
        if (dirs_[c.i].dot(dirs_[s.i]) > std::cos(0.35)) {
          near = true;
          break;
        }
      }
      if (!near) spread.push_back(c);
      if (spread.size() >= 16) break;
    }
    for (const auto& c : spread) push_cell(c);
    for (std::size_t k = 0; k < best.size() && k < 40; ++k) push_cell(best[k]);
  }

  auto refine = [this, &q](Eigen::Vector3d xi, double t) {
    Eigen::Vector4d R = berger_exp(alpha_, xi, t) - q;
    double lam = 0.0;
    const double h = 1e-6;
    for (int iter = 0; iter < 60 && R.norm() > 1e-13; ++iter) {
      Eigen::Vector3d e1, e2;
      orthonormal_complement(xi, e1, e2);
      Eigen::Matrix<double, 4, 3> J;
      J.col(0) =
          (berger_exp(alpha_, (xi + h * e1).normalized(), t) - q - R) / h;
      J.col(1) =
          (berger_exp(alpha_, (xi + h * e2).normalized(), t) - q - R) / h;
      J.col(2) = (berger_exp(alpha_, xi, t + h) - q - R) / h;
      bool stepped = false;
      for (int inner = 0; inner < 6; ++inner) {
        const Eigen::Matrix3d A =
            J.transpose() * J + lam * Eigen::Matrix3d::Identity();
        const Eigen::Vector3d d = A.ldlt().solve(-J.transpose() * R);
        const Eigen::Vector3d xi_t = (xi + d[0] * e1 + d[1] * e2).normalized();
        const double t_t = std::max(1e-9, t + d[2]);
        const Eigen::Vector4d R_t = berger_exp(alpha_, xi_t, t_t) - q;
        if (R_t.norm() < R.norm()) {
          xi = xi_t;
          t = t_t;
          R = R_t;
          lam *= 0.3;
          stepped = true;
          break;
        }
        lam = lam * 10.0 + 1e-12;
      }
      if (!stepped) break;
    }
    return Minimizer{xi, t, R.norm()};
  };
  auto merge = [&out](const Minimizer& m) {
    for (auto& k : out) {
      if ((k.xi - m.xi).norm() <= 1e-4 && std::abs(k.t - m.t) <= 1e-4) {
        if (m.residual < k.residual) k = m;
        return;
      }
    }
    out.push_back(m);
  };

  for (const auto& s : seeds) merge(refine(dirs_[s.i], times_[s.j]));

  // a minimizer's reflected partner (fiber component negated, transverse
  // part counter-rotated by the accumulated phase) lands in the basin of the
  // second shortest geodesic near the cut, so seed it directly
  {
    const double ca = std::cos(alpha_);
    const double rate = ca * ca / std::sin(alpha_);
    std::vector<Minimizer> found;
    for (const auto& m : out)
      if (m.residual <= 1e-10 && m.t > 1e-9) found.push_back(m);
    for (const auto& m : found) {
      const double r = m.xi[0], a = m.xi[1], b = m.xi[2];
      const double two_phi = 2.0 * m.t * r * rate;
      const double c2 = std::cos(two_phi), s2 = std::sin(two_phi);
      const Eigen::Vector3d mir(-r, a * c2 + b * s2, -a * s2 + b * c2);
      bool known = false;
      for (const auto& k : out)
        if (k.residual <= 1e-10 && (k.xi - mir).norm() <= 1e-3 &&
            std::abs(k.t - m.t) <= 1e-3) {
          known = true;
          break;
        }
      if (!known) merge(refine(mir, m.t));
    }
  }

  std::vector<Minimizer> good;
  for (const auto& m : out)
    if (m.residual <= 1e-10) good.push_back(m);
  if (good.empty() && !seeds.empty()) {
    // refinement failed everywhere; fall back to the best raw cell
    good.push_back({dirs_[seeds.front().i], times_[seeds.front().j],
                    std::sqrt(seeds.front().err)});
  }
  std::sort(good.begin(), good.end(), [](const Minimizer& a, const Minimizer& b) {
    return a.t < b.t;
  });
  return good;
}

double BergerOracle::distance(const Eigen::Vector4d& p,
                              const Eigen::Vector4d& q) const {
  const auto ms = refine_candidates(quat_mul(quat_conj(p), q));
  return ms.front().t;
}

std::vector<BergerOracle::Minimizer> BergerOracle::minimizers(
    const Eigen::Vector4d& p, const Eigen::Vector4d& q, double window) const {
  auto ms = refine_candidates(quat_mul(quat_conj(p), q));
  const double t0 = ms.front().t;
  std::vector<Minimizer> out;
  for (const auto& m : ms)
    if (m.t <= t0 + window) out.push_back(m);
  return out;
}

std::pair<double, double> berger_distance_grid(double alpha,
                                               const Eigen::Vector4d& p,
                                               const Eigen::Vector4d& q,
                                               int n_dir, int n_t) {
  using Key = std::tuple<double, int, int>;
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<BergerOracle>> cache;
  const BergerOracle* oracle = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[Key{alpha, n_dir, n_t}];
    if (!slot) slot = std::make_unique<BergerOracle>(alpha, n_dir, n_t);
    oracle = slot.get();
  }
  return {oracle->distance(p, q), oracle->resolution()};
}

}  // namespace geoplan
