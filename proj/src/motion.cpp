// Copyright 2026 The uavtrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uavtrack/motion.hpp"

#include <cmath>
#include <complex>

namespace uavtrack
{

namespace
{

using Complex = std::complex<double>;

// Integral over [0, T] of (v0 + a*tau) * exp(i*(alpha0 + k*tau)).
//
// For a non-degenerate rate this is the bracket
//   [ v(tau) sin(alpha)/k + a cos(alpha)/k^2 ]_0^T   (real part)
//   [ -v(tau) cos(alpha)/k + a sin(alpha)/k^2 ]_0^T  (imaginary part)
// factored through h = k*T, which cancels the 1/k and 1/k^2 terms
// analytically:
//   T * e^{i alpha0} * (v0 * E1(h) + a*T * E2(h)),
//   E1(h) = int_0^1 e^{ihu} du,  E2(h) = int_0^1 u e^{ihu} du.
// The degenerate rate is the k -> 0 limit, E1 = 1 and E2 = 1/2.
Complex spiral_integral(double v0, double a, double alpha0, double k, double T, bool degenerate)
{
  const Complex heading = std::polar(1.0, alpha0);
  if (degenerate)
  {
    return heading * (v0 * T + 0.5 * a * T * T);
  }
  const double h = k * T;
  const double half = 0.5 * h;
  const double sinc_half = std::sin(half) / half;
  const Complex e1 = std::polar(sinc_half, half);
  const double sin_h = std::sin(h);
  const double cos_h = std::cos(h);
  const double sin_half = std::sin(half);
  const Complex e2(sin_h / h - 2.0 * sin_half * sin_half / (h * h), (sin_h - h * cos_h) / (h * h));
  return heading * T * (v0 * e1 + a * T * e2);
}

// Duration over which the speed stays non-negative. A stopped vehicle holds
// its position for the remainder of the step.
double moving_time(double v0, double a, double dt)
{
  if (v0 + a * dt >= 0.0)
  {
    return dt;
  }
  if (v0 > 0.0 && a < 0.0)
  {
    return -v0 / a;
  }
  return 0.0;
}

void advance_speed(UavState& out, double v0, double a, double dt)
{
  const double v1 = v0 + a * dt;
  if (v1 < 0.0)
  {
    out.v = 0.0;
    out.a = 0.0;
  }
  else
  {
    out.v = v1;
  }
}

}  // namespace

Velocity velocity_components(const UavState& s)
{
  const double horizontal = s.v * std::cos(s.phi);
  return {horizontal * std::cos(s.theta), horizontal * std::sin(s.theta), s.v * std::sin(s.phi)};
}

RegimeClass classify_regime(double omega, double psi, double eps_rate)
{
  const bool omega_zero = std::abs(omega) < eps_rate;
  const bool psi_zero = std::abs(psi) < eps_rate;
  if (omega_zero && psi_zero)
  {
    return RegimeClass::BothZero;
  }
  if (psi_zero)
  {
    return RegimeClass::PsiZero;
  }
  if (std::abs(omega - psi) < eps_rate)
  {
    return RegimeClass::OmegaEqPsi;
  }
  if (std::abs(omega + psi) < eps_rate)
  {
    return RegimeClass::OmegaEqNegPsi;
  }
  return RegimeClass::Generic;
}

UavState propagate_dr(const UavState& s, double dt)
{
  if (dt == 0.0)
  {
    return s;
  }
  const Velocity vel = velocity_components(s);
  UavState out = s;
  out.x += vel.vx * dt;
  out.y += vel.vy * dt;
  out.z += vel.vz * dt;
  return normalize(out);
}

UavState propagate_ctra_plus(const UavState& s, double dt, double eps_rate)
{
  if (dt == 0.0)
  {
    return s;
  }
  const double T = moving_time(s.v, s.a, dt);
  UavState out = s;
  const Complex horizontal =
      spiral_integral(s.v, s.a, s.theta, s.omega, T, std::abs(s.omega) < eps_rate);
  const double cos_phi = std::cos(s.phi);
  out.x += cos_phi * horizontal.real();
  out.y += cos_phi * horizontal.imag();
  out.z += std::sin(s.phi) * (s.v * T + 0.5 * s.a * T * T);
  out.theta = s.theta + s.omega * dt;
  advance_speed(out, s.v, s.a, dt);
  out.theta = wrap_angle(out.theta);
  return out;
}

UavState propagate_3dctra(const UavState& s, double dt, double eps_rate)
{
  if (dt == 0.0)
  {
    return s;
  }
  const RegimeClass regime = classify_regime(s.omega, s.psi, eps_rate);
  if (regime == RegimeClass::PsiZero)
  {
    UavState out = propagate_ctra_plus(s, dt, eps_rate);
    out.phi = s.phi + s.psi * dt;
    return normalize(out);
  }

  const double T = moving_time(s.v, s.a, dt);
  UavState out = s;
  if (regime == RegimeClass::BothZero)
  {
    const double distance = s.v * T + 0.5 * s.a * T * T;
    const double cos_phi = std::cos(s.phi);
    out.x += distance * cos_phi * std::cos(s.theta);
    out.y += distance * cos_phi * std::sin(s.theta);
    out.z += distance * std::sin(s.phi);
  }
  else
  {
    // cos(theta)cos(phi) and sin(theta)cos(phi) split into the sum and
    // difference angles, each rotating at omega + psi and omega - psi.
    const double sum_rate = s.omega + s.psi;
    const double diff_rate = s.omega - s.psi;
    const Complex sum_term = spiral_integral(s.v, s.a, s.theta + s.phi, sum_rate, T,
                                             regime == RegimeClass::OmegaEqNegPsi);
    const Complex diff_term = spiral_integral(s.v, s.a, s.theta - s.phi, diff_rate, T,
                                              regime == RegimeClass::OmegaEqPsi);
    const Complex vertical = spiral_integral(s.v, s.a, s.phi, s.psi, T, false);
    out.x += 0.5 * (sum_term.real() + diff_term.real());
    out.y += 0.5 * (sum_term.imag() + diff_term.imag());
    out.z += vertical.imag();
  }
  out.theta = s.theta + s.omega * dt;
  out.phi = s.phi + s.psi * dt;
  advance_speed(out, s.v, s.a, dt);
  return normalize(out);
}

UavState propagate(ModelKind model, const UavState& s, double dt, double eps_rate)
{
  switch (model)
  {
    case ModelKind::DR:
      return propagate_dr(s, dt);
    case ModelKind::CtraPlus:
      return propagate_ctra_plus(s, dt, eps_rate);
    case ModelKind::Ctra3D:
      return propagate_3dctra(s, dt, eps_rate);
  }
  return s;
}

UavState apply_tilt_decay(const UavState& s, double eta)
{
  UavState out = s;
  out.psi = eta * s.psi;
  return out;
}

}  // namespace uavtrack
