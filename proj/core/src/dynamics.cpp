#include "rovtrack/dynamics.hpp"

namespace rovtrack {

namespace {

Mat3 euler_rotation(double phi, double theta, double psi) {
  const double sph = std::sin(phi), cph = std::cos(phi);
  const double sth = std::sin(theta), cth = std::cos(theta);
  const double sps = std::sin(psi), cps = std::cos(psi);
  Mat3 r;
  r << cps * cth, -sps * cph + cps * sth * sph, sps * sph + cps * cph * sth,
       sps * cth,  cps * cph + sph * sth * sps, -cps * sph + sth * sps * cph,
       -sth,       cth * sph,                    cth * cph;
  return r;
}

Mat3 euler_rate_matrix(double phi, double theta) {
  const double sph = std::sin(phi), cph = std::cos(phi);
  const double cth = std::cos(theta), tth = std::tan(theta);
  Mat3 r;
  r << 1.0, sph * tth, cph * tth,
       0.0, cph,       -sph,
       0.0, sph / cth, cph / cth;
  return r;
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

}  // namespace

Mat6 kinematic_transform(const Vec6& eta, double margin) {
  check_attitude(eta, margin);
  Mat6 j = Mat6::Zero();
  j.topLeftCorner<3, 3>() = euler_rotation(eta[3], eta[4], eta[5]);
  j.bottomRightCorner<3, 3>() = euler_rate_matrix(eta[3], eta[4]);
  return j;
}

Mat6 transform_rate(const Vec6& eta, const Vec6& nu, double margin) {
  check_attitude(eta, margin);
  const double phi = eta[3], theta = eta[4];
  const double sph = std::sin(phi), cph = std::cos(phi);
  const double sth = std::sin(theta), cth = std::cos(theta);
  const double tth = sth / cth;

  const Mat3 jr = euler_rate_matrix(phi, theta);
  const Vec3 euler_rate = jr * nu.tail<3>();
  const double phid = euler_rate[0];
  const double thd = euler_rate[1];

  Mat6 jd = Mat6::Zero();
  // Rdot = R S(omega) for the body angular rate omega.
  jd.topLeftCorner<3, 3>() = euler_rotation(phi, theta, eta[5]) * skew(nu.tail<3>());

  Mat3 djr_dphi;
  djr_dphi << 0.0, cph * tth, -sph * tth,
              0.0, -sph,      -cph,
              0.0, cph / cth, -sph / cth;
  Mat3 djr_dtheta;
  const double cth2 = cth * cth;
  djr_dtheta << 0.0, sph / cth2,        cph / cth2,
                0.0, 0.0,               0.0,
                0.0, sph * sth / cth2,  cph * sth / cth2;
  jd.bottomRightCorner<3, 3>() = djr_dphi * phid + djr_dtheta * thd;
  return jd;
}

Mat6 mass_matrix(const VehicleParams& p) {
  const double m = p.mass;
  const double xg = p.cog.x(), yg = p.cog.y(), zg = p.cog.z();
  const double ixy = p.inertia_products[0];
  const double iyz = p.inertia_products[1];
  const double izx = p.inertia_products[2];

  Mat6 mr = Mat6::Zero();
  mr(0, 0) = mr(1, 1) = mr(2, 2) = m;
  mr(0, 4) = m * zg;  mr(0, 5) = -m * yg;
  mr(1, 3) = -m * zg; mr(1, 5) = m * xg;
  mr(2, 3) = m * yg;  mr(2, 4) = -m * xg;
  mr(3, 1) = -m * zg; mr(3, 2) = m * yg;
  mr(4, 0) = m * zg;  mr(4, 2) = -m * xg;
  mr(5, 0) = -m * yg; mr(5, 1) = m * xg;
  mr(3, 3) = p.inertia.x();
  mr(4, 4) = p.inertia.y();
  mr(5, 5) = p.inertia.z();
  mr(3, 4) = mr(4, 3) = -ixy;
  mr(4, 5) = mr(5, 4) = -iyz;
  mr(3, 5) = mr(5, 3) = -izx;

  return mr + Mat6(p.added_mass.asDiagonal());
}

Mat6 coriolis_matrix(const VehicleParams& p, const Vec6& nu) {
  const double m = p.mass;
  const double u = nu[0], v = nu[1], w = nu[2];
  const double pr = nu[3], q = nu[4], r = nu[5];
  const double ix = p.inertia.x(), iy = p.inertia.y(), iz = p.inertia.z();

  Mat6 c = Mat6::Zero();
  c(0, 4) = m * w;   c(0, 5) = -m * v;
  c(1, 3) = -m * w;  c(1, 5) = m * u;
  c(2, 3) = m * v;   c(2, 4) = -m * u;
  c(3, 1) = m * w;   c(3, 2) = -m * v;
  c(4, 0) = -m * w;  c(4, 2) = m * u;
  c(5, 0) = m * v;   c(5, 1) = -m * u;
  c(3, 4) = iz * r;  c(3, 5) = -iy * q;
  c(4, 3) = -iz * r; c(4, 5) = ix * pr;
  c(5, 3) = iy * q;  c(5, 4) = -ix * pr;

  const double xu = p.added_mass[0] * u;
  const double yv = p.added_mass[1] * v;
  const double zw = p.added_mass[2] * w;
  const double kp = p.added_mass[3] * pr;
  const double mq = p.added_mass[4] * q;
  const double nr = p.added_mass[5] * r;

  Mat6 ca = Mat6::Zero();
  ca(0, 4) = -zw; ca(0, 5) = yv;
  ca(1, 3) = zw;  ca(1, 5) = -xu;
  ca(2, 3) = -yv; ca(2, 4) = xu;
  ca(3, 1) = -zw; ca(3, 2) = yv;
  ca(4, 0) = zw;  ca(4, 2) = -xu;
  ca(5, 0) = -yv; ca(5, 1) = xu;
  ca(3, 4) = -nr; ca(3, 5) = mq;
  ca(4, 3) = nr;  ca(4, 5) = -kp;
  ca(5, 3) = -mq; ca(5, 4) = kp;

  return c + ca;
}

Mat6 damping_matrix(const VehicleParams& p, const Vec6& nu) {
  return Mat6((p.d_lin.array() + p.d_quad.array() * nu.array().abs()).matrix().asDiagonal());
}

Vec6 restoring_vector(const VehicleParams& p, const Vec6& eta) {
  const double wgt = p.weight();
  const double buo = p.buoyancy();
  const double xg = p.cog.x(), yg = p.cog.y(), zg = p.cog.z();
  const double xb = p.cob.x(), yb = p.cob.y(), zb = p.cob.z();
  const double sph = std::sin(eta[3]), cph = std::cos(eta[3]);
  const double sth = std::sin(eta[4]), cth = std::cos(eta[4]);

  Vec6 g;
  g[0] = (wgt - buo) * sth;
  g[1] = -(wgt - buo) * cth * sph;
  g[2] = -(wgt - buo) * cth * cph;
  g[3] = -(yg * wgt - yb * buo) * cth * cph + (zg * wgt - zb * buo) * cth * sph;
  g[4] = (zg * wgt - zb * buo) * sth + (xg * wgt - xb * buo) * cth * cph;
  g[5] = -(xg * wgt - xb * buo) * cth * sph - (yg * wgt - yb * buo) * sth;
  return g;
}

StateDerivative state_derivative(const VehicleParams& p, const Vec6& eta, const Vec6& nu,
                                 const Vec6& tau, const Vec6& tau_d, double margin) {
  const Mat6 j = kinematic_transform(eta, margin);
  const Vec6 rhs = tau + tau_d - coriolis_matrix(p, nu) * nu - damping_matrix(p, nu) * nu -
                   restoring_vector(p, eta);
  StateDerivative d;
  d.eta_dot = j * nu;
  d.nu_dot = mass_matrix(p).ldlt().solve(rhs);
  return d;
}

VehicleModel::VehicleModel(const VehicleParams& p) : params_(p) {
  params_.validate();
  mass_ = mass_matrix(params_);
  mass_inv_ = mass_.inverse();
}

StateDerivative VehicleModel::state_derivative(const Vec6& eta, const Vec6& nu, const Vec6& tau,
                                               const Vec6& tau_d, double margin) const {
  const Mat6 j = kinematic_transform(eta, margin);
  const Vec6 rhs = tau + tau_d - coriolis_matrix(params_, nu) * nu -
                   damping_matrix(params_, nu) * nu - restoring_vector(params_, eta);
  StateDerivative d;
  d.eta_dot = j * nu;
  d.nu_dot = mass_inv_ * rhs;
  return d;
}

namespace detail {

Mat6 kinematic_transform_inverse(const Vec6& eta, double margin) {
  check_attitude(eta, margin);
  const double sph = std::sin(eta[3]), cph = std::cos(eta[3]);
  const double sth = std::sin(eta[4]), cth = std::cos(eta[4]);
  Mat6 jinv = Mat6::Zero();
  jinv.topLeftCorner<3, 3>() = euler_rotation(eta[3], eta[4], eta[5]).transpose();
  Mat3 jr_inv;
  jr_inv << 1.0, 0.0, -sth,
            0.0, cph, sph * cth,
            0.0, -sph, cph * cth;
  jinv.bottomRightCorner<3, 3>() = jr_inv;
  return jinv;
}

}  // namespace detail

}  // namespace rovtrack
