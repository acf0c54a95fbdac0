#include "rovtrack/vehicle.hpp"

namespace rovtrack {

void VehicleParams::validate() const {
  auto fail = [](const std::string& what) { throw InvalidConfig("vehicle: " + what); };
  if (!(mass > 0.0)) fail("mass must be > 0");
  if (!(volume > 0.0)) fail("volume must be > 0");
  if (!(inertia.array() > 0.0).all()) fail("Ix, Iy, Iz must be > 0");
  if (!(added_mass.array() >= 0.0).all()) fail("added-mass coefficients must be >= 0");
  if (!(d_lin.array() >= 0.0).all()) fail("linear damping coefficients must be >= 0");
  if (!(d_quad.array() >= 0.0).all()) fail("quadratic damping coefficients must be >= 0");
  if (!(rho > 0.0)) fail("rho must be > 0");
  if (!(g0 > 0.0)) fail("g0 must be > 0");
  if (!cog.allFinite() || !cob.allFinite() || !inertia_products.allFinite())
    fail("non-finite entry");
}

VehicleParams VehicleParams::bluerov2_heavy() {
  VehicleParams p;
  p.mass = 13.5;
  p.volume = 0.0135;
  p.inertia = Vec3(0.26, 0.23, 0.37);
  p.inertia_products = Vec3::Zero();
  p.cog = Vec3::Zero();
  p.cob = Vec3(0.0, 0.0, -0.01);
  p.added_mass << 6.357, 7.121, 18.69, 0.1858, 0.1348, 0.2215;
  p.d_lin << 13.7, 0.0, 33.0, 0.0, 0.8, 0.0;
  p.d_quad << 141.0, 217.0, 190.0, 1.192, 0.47, 1.5;
  p.rho = 1000.0;
  p.g0 = 9.81;
  return p;
}

}  // namespace rovtrack
