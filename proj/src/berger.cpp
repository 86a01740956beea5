// SPDX-License-Identifier: Apache-2.0
#include "geoplan/berger.hpp"

#include "geoplan/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace geoplan {

Quat quat_identity() { return Quat(1, 0, 0, 0); }

Quat quat_mul(const Quat& a, const Quat& b) {
  return Quat(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
              a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
              a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
              a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]);
}

Quat quat_conj(const Quat& a) { return Quat(a[0], -a[1], -a[2], -a[3]); }

// Geodesics of the left-invariant metric are a one-parameter rotation
// composed with a fiber phase: with u = r*sin(alpha) and
// w = |(u, a, b)|, exp(t*(r,a,b)) = core(t) * phase(t) where core rotates
// by t*w around the axis (u,a,b)/w and phase rotates the fiber by
// t*r*cos^2(alpha)/sin(alpha).
Quat berger_exp(double alpha, const Eigen::Vector3d& xi, double t) {
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  const double u = xi[0] * sa;
  const double w = std::sqrt(u * u + xi[1] * xi[1] + xi[2] * xi[2]);
  const double theta = t * w;
  const double s_over_w = w > 1e-12 ? std::sin(theta) / w : t;
  const Quat core(std::cos(theta), s_over_w * u, s_over_w * xi[1],
                  s_over_w * xi[2]);
  const double phi = t * xi[0] * ca * ca / sa;
  const Quat phase(std::cos(phi), std::sin(phi), 0, 0);
  return quat_mul(core, phase);
}

double cut_time(const BergerOracle& oracle, const Eigen::Vector3d& xi,
                double tol) {
  const Eigen::Vector3d v = xi.normalized();
  const double slack = 3.0 * oracle.resolution();
  if (tol < slack) {
    const double f = slack / tol;
    std::ostringstream os;
    os << "cut_time: tol " << tol << " is below the oracle floor " << slack
       << "; rebuild the oracle with n_dir >= "
       << static_cast<int>(std::ceil(oracle.n_dir() * f)) << ", n_t >= "
       << static_cast<int>(std::ceil(oracle.n_t() * f));
    throw std::invalid_argument(os.str());
  }
  const Quat e = quat_identity();
  const double alpha = oracle.alpha();
  auto past = [&](double t) {
    return oracle.distance(e, berger_exp(alpha, v, t)) < t - slack;
  };
  double lo = 1e-3;
  double hi = M_PI + 0.2;
  if (past(lo))
    throw std::logic_error("cut_time: geodesic already non-minimal at t=1e-3");
  if (!past(hi))
    throw std::logic_error("cut_time: geodesic still minimal at t=pi+0.2");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (past(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double CutModel::t_cut_of(const Eigen::Vector3d& xi) const {
  const double n = xi.norm();
  const double beta = std::asin(std::min(1.0, std::abs(xi[0]) / n));
  const double pos =
      beta / (M_PI / 2) * static_cast<double>(betas.size() - 1);
  const int i0 = std::min(static_cast<int>(pos),
                          static_cast<int>(betas.size()) - 2);
  const double w = pos - i0;
  return (1.0 - w) * tcuts[i0] + w * tcuts[i0 + 1];
}

CutModel make_cut_model(const BergerOracle& oracle, int n_beta) {
  if (n_beta < 2) throw std::invalid_argument("make_cut_model: n_beta >= 2");
  CutModel cm;
  cm.alpha = oracle.alpha();
  const double tol = std::max(1e-6, 3.0 * oracle.resolution());
  for (int k = 0; k < n_beta; ++k) {
    const double beta = (M_PI / 2) * k / (n_beta - 1);
    cm.betas.push_back(beta);
    if (k == n_beta - 1) {
      // fiber direction: first conjugate point, and the reversed fiber
      // geodesic returns there with the same length
      cm.tcuts.push_back(M_PI * std::sin(cm.alpha));
    } else {
      const Eigen::Vector3d v(std::sin(beta), std::cos(beta), 0.0);
      cm.tcuts.push_back(cut_time(oracle, v, tol));
    }
  }
  return cm;
}

BergerModel make_berger_model(double alpha, int n_dir, int n_t, int n_beta) {
  BergerModel m{alpha, BergerOracle(alpha, n_dir, n_t), CutModel{}, 0.0, ""};
  m.cut = make_cut_model(m.oracle, n_beta);
  m.delta = 10.0 * m.oracle.resolution();
  std::ostringstream os;
  os.precision(17);
  os << "berger:alpha=" << alpha;
  m.id = os.str();
  return m;
}

namespace {

double gauge_residual(const Quat& q1, const Quat& q2) {
  const double dw = q1[0] - q2[0];
  const double dx1 = q1[1] - q2[1];
  const double r1 = std::hypot(q1[2], q1[3]);
  const double r2 = std::hypot(q2[2], q2[3]);
  return std::sqrt(dw * dw + dx1 * dx1 + (r1 - r2) * (r1 - r2));
}

}  // namespace

ReflectionCheck reflection_identity_check(const BergerModel& model,
                                          const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  if (std::abs(u[0]) < 1e-9)
    throw std::invalid_argument(
        "reflection_identity_check: direction needs r != 0");
  ReflectionCheck rc;
  rc.v = u;
  const double alpha = model.alpha;
  rc.t_cut = cut_time(model.oracle, u,
                      std::max(1e-6, 3.0 * model.oracle.resolution()));
  const double phi_c =
      rc.t_cut * u[0] * std::cos(alpha) * std::cos(alpha) / std::sin(alpha);
  const double c = std::cos(-2.0 * phi_c);
  const double s = std::sin(-2.0 * phi_c);
  rc.mirrored =
      Eigen::Vector3d(-u[0], c * u[1] - s * u[2], s * u[1] + c * u[2]);
  const Quat q1 = berger_exp(alpha, u, rc.t_cut);
  const Quat q_flip =
      berger_exp(alpha, Eigen::Vector3d(-u[0], u[1], u[2]), rc.t_cut);
  const Quat q_mirror = berger_exp(alpha, rc.mirrored, rc.t_cut);
  rc.literal_residual = (q1 - q_flip).norm();
  rc.gauge_residual = gauge_residual(q1, q_flip);
  rc.mirror_residual = (q1 - q_mirror).norm();
  return rc;
}

BergerClassification berger_classify(const BergerModel& model, const Quat& p,
                                     const Quat& q) {
  BergerClassification bc;
  bc.minimizers = model.oracle.minimizers(p, q, std::max(2e-5, 2.0 * model.delta));
  bc.gap = std::numeric_limits<double>::infinity();
  const auto& ms = bc.minimizers;
  if (ms.size() < 2 || ms.front().t < 1e-9) return bc;
  const BergerOracle::Minimizer* second = nullptr;
  for (std::size_t i = 1; i < ms.size(); ++i) {
    if ((ms[i].xi - ms[0].xi).norm() > 1e-4) {
      second = &ms[i];
      break;
    }
  }
  if (!second) return bc;
  bc.gap = second->t - ms[0].t;
  if (bc.gap < model.delta) {
    bc.cls = ms[0].xi[0] * second->xi[0] < 0.0 ? PointClass::ocut
                                               : PointClass::flagged;
  } else if (bc.gap < 10.0 * model.delta) {
    bc.cls = PointClass::flagged;
  }
  return bc;
}

namespace {

GeodesicSegment berger_segment(const std::string& id, double alpha,
                               const Quat& p, const Eigen::Vector3d& xi_unit,
                               double t) {
  GeodesicSegment g;
  g.manifold = id;
  g.start = Point{Vec(p)};
  g.velocity = Vec(xi_unit * t);
  g.length = t * xi_unit.norm();
  g.curve = [alpha, p, xi_unit, t](double s) {
    return Point{Vec(quat_mul(p, berger_exp(alpha, xi_unit, s * t)))};
  };
  return g;
}

Quat to_quat(const Point& p) {
  if (p.coords.size() != 4)
    throw std::invalid_argument("expected a 4-component unit quaternion");
  Quat q = p.coords;
  const double n = q.norm();
  if (std::abs(n - 1.0) > 1e-6)
    throw std::invalid_argument("expected a unit quaternion");
  return q / n;
}

}  // namespace

GeodesicSegment ocut_planner(const BergerModel& model, const Quat& p,
                             const Quat& q) {
  const Quat target = quat_mul(quat_conj(p), q);
  const double alpha = model.alpha;

  struct Seed {
    double err, beta, phi, t;
  };
  std::vector<Seed> seeds;
  if (std::abs(alpha - M_PI / 2) < 1e-12 &&
      (target + quat_identity()).norm() < 1e-9) {
    // round-sphere antipode: every direction works, pick one
    seeds.push_back({0.0, M_PI / 4, 0.0, M_PI});
  }
  {
    std::vector<Seed> grid;
    constexpr int n_phi = 96, n_beta = 48;
    for (int kb = 1; kb <= n_beta; ++kb) {
      const double beta = (M_PI / 2) * kb / n_beta;
      for (int kp = 0; kp < n_phi; ++kp) {
        const double phi = 2.0 * M_PI * kp / n_phi;
        const Eigen::Vector3d v(std::sin(beta), std::cos(beta) * std::cos(phi),
                                std::cos(beta) * std::sin(phi));
        const double t = model.cut.t_cut_of(v);
        const double err = (berger_exp(alpha, v, t) - target).squaredNorm();
        grid.push_back({err, beta, phi, t});
      }
    }
    std::sort(grid.begin(), grid.end(),
              [](const Seed& a, const Seed& b) { return a.err < b.err; });
    for (const auto& g : grid) {
      bool near = false;
      for (const auto& s : seeds) {
        const double dphi =
            std::abs(std::remainder(g.phi - s.phi, 2.0 * M_PI));
        if (dphi < 0.4 && std::abs(g.beta - s.beta) < 0.25) {
          near = true;
          break;
        }
      }
      if (!near) seeds.push_back(g);
      if (seeds.size() >= 6) break;
    }
  }

  double best_residual = std::numeric_limits<double>::infinity();
  for (const auto& seed : seeds) {
    Eigen::Vector3d x(seed.beta, seed.phi, seed.t);
    auto value = [&](const Eigen::Vector3d& y) {
      const Eigen::Vector3d v(std::sin(y[0]), std::cos(y[0]) * std::cos(y[1]),
                              std::cos(y[0]) * std::sin(y[1]));
      return Eigen::Vector4d(berger_exp(alpha, v, y[2]) - target);
    };
    Eigen::Vector4d R = value(x);
    double lam = 0.0;
    const double h = 1e-7;
    for (int iter = 0; iter < 60 && R.norm() > 1e-12; ++iter) {
      Eigen::Matrix<double, 4, 3> J;
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d xh = x;
        xh[k] += h;
        J.col(k) = (value(xh) - R) / h;
      }
      bool stepped = false;
      for (int inner = 0; inner < 6; ++inner) {
        const Eigen::Matrix3d A =
            J.transpose() * J + lam * Eigen::Matrix3d::Identity();
        Eigen::Vector3d xt = x + Eigen::Vector3d(A.ldlt().solve(-J.transpose() * R));
        xt[0] = std::clamp(xt[0], 1e-6, M_PI / 2);
        xt[2] = std::max(1e-6, xt[2]);
        const Eigen::Vector4d Rt = value(xt);
        if (Rt.norm() < R.norm()) {
          x = xt;
          R = Rt;
          lam *= 0.3;
          stepped = true;
          break;
        }
        lam = lam * 10.0 + 1e-12;
      }
      if (!stepped) break;
    }
    best_residual = std::min(best_residual, R.norm());
    if (R.norm() <= 1e-9) {
      const Eigen::Vector3d v(std::sin(x[0]), std::cos(x[0]) * std::cos(x[1]),
                              std::cos(x[0]) * std::sin(x[1]));
      return berger_segment(model.id, alpha, p, v, x[2]);
    }
  }
  throw ConvergenceError("ocut_planner: no seed converged", best_residual);
}

PlannerAtlas berger_atlas(const BergerModel& model) {
  auto Mp = std::make_shared<const BergerModel>(model);
  const Quat e = quat_identity();

  std::vector<PlannerDomain> base;
  {
    PlannerDomain d0;
    d0.label = "shortest";
    d0.membership = [Mp, e](const Point& p, const Point& q) {
      if ((to_quat(p) - e).norm() > 1e-9) return false;
      return berger_classify(*Mp, e, to_quat(q)).cls != PointClass::ocut;
    };
    d0.plan = [Mp](const Point& p, const Point& q) {
      const Quat pq = to_quat(p);
      const auto ms = Mp->oracle.minimizers(pq, to_quat(q));
      const auto& m = ms.front();
      if (m.residual > 1e-8)
        throw ConvergenceError("shortest-geodesic refinement did not converge",
                               m.residual);
      return berger_segment(Mp->id, Mp->alpha, pq, m.xi, m.t);
    };
    base.push_back(d0);
  }
  {
    PlannerDomain d1;
    d1.label = "two-geodesic";
    d1.membership = [Mp, e](const Point& p, const Point& q) {
      if ((to_quat(p) - e).norm() > 1e-9) return false;
      return berger_classify(*Mp, e, to_quat(q)).cls == PointClass::ocut;
    };
    d1.plan = [Mp](const Point& p, const Point& q) {
      return ocut_planner(*Mp, to_quat(p), to_quat(q));
    };
    base.push_back(d1);
  }

  IsometrySection s;
  s.label = "left-translation";
  s.domain = [](const Point&) { return true; };
  s.apply = [](const Point& x, const Point& p) {
    return Point{Vec(quat_mul(to_quat(x), to_quat(p)))};
  };
  s.apply_inverse = [](const Point& x, const Point& p) {
    return Point{Vec(quat_mul(quat_conj(to_quat(x)), to_quat(p)))};
  };
  s.apply_to_path = [](const Point& x, const GeodesicSegment& g) {
    GeodesicSegment out = g;
    const Quat xq = to_quat(x);
    out.start = Point{Vec(quat_mul(xq, Quat(g.start.coords)))};
    const auto inner = g.curve;
    out.curve = [inner, xq](double t) {
      return Point{Vec(quat_mul(xq, Quat(inner(t).coords)))};
    };
    return out;
  };

  PlannerAtlas atlas;
  atlas.manifold = model.id;
  atlas.domains = product_domains({s}, Point{Vec(e)}, base);
  return atlas;
}

}  // namespace geoplan
