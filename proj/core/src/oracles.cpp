#include "effham/oracles.hpp"

#include <cmath>
#include <string>

namespace effham {
namespace oracles {

namespace {

void check_denominator(double value, const char* route) {
  if (value == 0.0) {
    throw ResonantDenominator(std::string("zero denominator in ") + route, -1, -1, 0.0);
  }
}

}  // namespace

ThreeLevelParams three_level_la_4th(double omega1, double omega2, double omega_c, double g1,
                                    double g2) {
  const double d1 = omega1 - omega_c;
  const double d2 = omega2 - omega_c;
  if (d1 == 0.0 || d2 == 0.0) {
    throw ZeroDetuning("three_level_la_4th: qubit-coupler detuning vanishes");
  }
  ThreeLevelParams out;
  out.g_tilde = 0.5 * g1 * g2 *
                ((1.0 / d1 + 1.0 / d2) -
                 (g1 * g1 / d1 + g2 * g2 / d2) * (1.0 / (d1 * d1) + 1.0 / (d2 * d2)));
  out.omega1_tilde = omega1 + g1 * g1 / d1 - std::pow(g1, 4) / std::pow(d1, 3) -
                     g1 * g1 * g2 * g2 / (d1 * d1 * d2);
  out.omega2_tilde = omega2 + g2 * g2 / d2 - std::pow(g2, 4) / std::pow(d2, 3) -
                     g1 * g1 * g2 * g2 / (d1 * d2 * d2);
  out.lambda = omega_c - g1 * g1 / d1 - g2 * g2 / d2 +
               (g1 * g1 / (d1 * d1) + g2 * g2 / (d2 * d2)) * (g1 * g1 / d1 + g2 * g2 / d2);
  return out;
}

ThreeLevelParams three_level_swt_4th(double omega1, double omega2, double omega_c, double g1,
                                     double g2) {
  const double d1 = omega1 - omega_c;
  const double d2 = omega2 - omega_c;
  if (d1 == 0.0 || d2 == 0.0) {
    throw ZeroDetuning("three_level_swt_4th: qubit-coupler detuning vanishes");
  }
  ThreeLevelParams out;
  const double second = 0.5 * g1 * g2 * (1.0 / d1 + 1.0 / d2);
  const double fourth =
      (g1 * std::pow(g2, 3) * d1 * (5.0 * d1 * d1 - d1 * d2 + 4.0 * d2 * d2) +
       std::pow(g1, 3) * g2 * d2 * (4.0 * d1 * d1 - d1 * d2 + 5.0 * d2 * d2)) /
      (-8.0 * std::pow(d1, 3) * std::pow(d2, 3));
  out.g_tilde = second + fourth;
  out.omega1_tilde = omega1 + g1 * g1 / d1 - std::pow(g1, 4) / std::pow(d1, 3) -
                     g1 * g1 * g2 * g2 * (d1 + 3.0 * d2) / (4.0 * d1 * d1 * d2 * d2);
  out.omega2_tilde = omega2 + g2 * g2 / d2 - std::pow(g2, 4) / std::pow(d2, 3) -
                     g1 * g1 * g2 * g2 * (3.0 * d1 + d2) / (4.0 * d1 * d1 * d2 * d2);
  out.lambda = 0.0;
  return out;
}

FftSymmetric fft_symmetric_identity(double delta, double g) {
  if (delta == 0.0) {
    throw ZeroDetuning("fft_symmetric_identity: needs a nonzero coupler detuning");
  }
  const double x = std::sqrt(8.0 * g * g + delta * delta);
  FftSymmetric out;
  if (delta > 0.0) {
    out.lambda1 = 0.5 * (delta + x);
    out.lambda2 = 0.5 * (delta - x);
  } else {
    out.lambda1 = 0.5 * (delta - x);
    out.lambda2 = 0.5 * (delta + x);
  }
  out.lambda3 = 0.0;
  out.g_tilde = out.lambda1 != 0.0 ? -g * g / out.lambda1 : 0.0;
  return out;
}

FftDetuned fft_detuned_expansion(double delta, double g, double eps) {
  if (delta == 0.0) {
    throw ZeroDetuning("fft_detuned_expansion: needs a nonzero coupler detuning");
  }
  const double x = std::sqrt(8.0 * g * g + delta * delta);
  const double dp = delta + x;
  const double dm = delta - x;
  check_denominator(dp, "fft_detuned_expansion");
  check_denominator(dm, "fft_detuned_expansion");
  FftDetuned out;
  out.alpha1_sq = 4.0 * g * g / (dp * dp + 8.0 * g * g);
  out.alpha2_sq = 4.0 * g * g / (dm * dm + 8.0 * g * g);
  const double a1 = out.alpha1_sq;
  const double a2 = out.alpha2_sq;
  out.lambda1 = 0.5 * dp + a1 * eps + (a1 * a2 / x + a1 / dp) * eps * eps;
  out.lambda2 = 0.5 * dm + a2 * eps + (-a1 * a2 / x + a2 / dm) * eps * eps;
  out.lambda3 = 0.5 * eps - (a1 / dp + a2 / dm) * eps * eps;
  const double eps2_term = -a1 * a2 / x + a2 / dm + a1 / dp + a2 / dm;
  out.two_g_tilde = (out.lambda2 - out.lambda3) + 4.0 * g * g / (dp * dp) * (2.0 * a1 - 1.0) * eps -
                    (a2 - 0.5) * eps - eps2_term * eps * eps;
  return out;
}

double zx_second_order(double omega_drive, double j, double delta_0d, double delta_01,
                       double beta0) {
  for (double denom : {delta_0d, delta_01, delta_0d + beta0, delta_01 + beta0}) {
    check_denominator(denom, "zx_second_order");
  }
  return 0.5 * omega_drive * j *
         (-1.0 / delta_0d - 1.0 / delta_01 + 1.0 / (delta_0d + beta0) +
          1.0 / (delta_01 + beta0));
}

ZxFourthOrder zx_fourth_order(double omega_drive, double j, const CrDetunings& det, double alpha0,
                              double alpha1) {
  const double w = omega_drive;
  const double d0d = det.delta_0d;
  const double d1d = det.delta_1d;
  const double d01 = det.delta_01;
  const double s01 = det.sigma_01;
  const double a0 = alpha0;
  const double a1 = alpha1;

  auto route = [&](double value, const char* name, std::initializer_list<double> denoms) {
    for (double denom : denoms) {
      if (denom == 0.0) {
        throw ResonantDenominator(std::string("zx_fourth_order: zero denominator in route ") + name,
                                  -1, -1, 0.0);
      }
    }
    return value;
  };

  ZxFourthOrder out;
  // |00> <-> |01| block, five routes.
  out.h1_routes[0] = route(
      w * std::pow(j, 3) / (4.0 * d01) * (1.0 / (d0d * d0d) + 1.0 / (d01 * d01)),
      "H1:1", {d01, d0d});
  out.h1_routes[1] = route(
      std::pow(w, 3) * j / (16.0 * d0d) * (1.0 / (d0d * s01) + 1.0 / (d01 * d01)),
      "H1:2", {d0d, s01, d01});
  out.h1_routes[2] = route(
      -std::pow(w, 3) * j / (8.0 * d0d) *
          (1.0 / (s01 * (2.0 * d0d + a0)) + 1.0 / (d01 * (d0d + d01 + a0))),
      "H1:3", {d0d, s01, 2.0 * d0d + a0, d01, d0d + d01 + a0});
  out.h1_routes[3] = route(
      -std::pow(w, 3) * j / 8.0 *
          (1.0 / (d0d * d0d * (2.0 * d0d + a0)) + 1.0 / (d01 * d01 * (d0d + d01 + a0))),
      "H1:4", {d0d, 2.0 * d0d + a0, d01, d0d + d01 + a0});
  out.h1_routes[4] = route(
      std::pow(w, 3) * j / (16.0 * d0d) * (1.0 / (d0d * d0d) + 1.0 / (d01 * d01)),
      "H1:5", {d0d, d01});

  // |10> <-> |11| block, twelve routes.
  out.h2_routes[0] = route(
      -w * std::pow(j, 3) / (4.0 * d01) * (1.0 / (d0d * d0d) + 1.0 / (d01 * d01)),
      "H2:1", {d01, d0d});
  out.h2_routes[1] = route(
      w * std::pow(j, 3) / (2.0 * d01) *
          (1.0 / (d0d * (d01 + a0)) - 1.0 / ((d0d + a0) * (d0d + a0))),
      "H2:2", {d01, d0d, d01 + a0, d0d + a0});
  out.h2_routes[2] = route(
      w * std::pow(j, 3) / (2.0 * (d01 + a0)) *
          (1.0 / (d0d * d0d) - 1.0 / (d01 * (d0d + a0))),
      "H2:3", {d01 + a0, d0d, d01, d0d + a0});
  out.h2_routes[3] = route(
      w * std::pow(j, 3) / (2.0 * (d01 - a1)) *
          (1.0 / (d01 * (d1d + a1 - d01)) - 1.0 / (d0d * d0d)),
      "H2:4", {d01 - a1, d01, d1d + a1 - d01, d0d});
  out.h2_routes[4] = route(
      -std::pow(w, 3) * j / (16.0 * d0d) * (1.0 / (d01 * d01) + 1.0 / (d0d * s01)),
      "H2:5", {d0d, d01, s01});
  out.h2_routes[5] = route(
      std::pow(w, 3) * j / (8.0 * d0d) *
          (1.0 / (s01 * (d01 + a0)) - 1.0 / ((d0d + a0) * (d0d + a0))),
      "H2:6", {d0d, s01, d01 + a0, d0d + a0});
  out.h2_routes[6] = route(
      w * std::pow(j, 3) / (d01 + a0) *
          (1.0 / ((d0d + a0) * (d0d + a0)) + 1.0 / ((d01 + a0) * (d01 + a0))),
      "H2:7", {d01 + a0, d0d + a0});
  out.h2_routes[7] = route(
      -w * std::pow(j, 3) / (d01 - a1) *
          (1.0 / ((d0d + a0) * (d1d + a1 - d01)) + 1.0 / ((d01 + a0) * (d01 + a0))),
      "H2:8", {d01 - a1, d0d + a0, d1d + a1 - d01, d01 + a0});
  out.h2_routes[8] = route(
      -3.0 * std::pow(w, 3) * j / (8.0 * (d0d + a0)) *
          (1.0 / ((2.0 * d0d + 3.0 * a0) * (s01 + a0)) +
           1.0 / ((d01 + a0) * (2.0 * d0d + 3.0 * a0 - d1d))),
      "H2:9", {d0d + a0, 2.0 * d0d + 3.0 * a0, s01 + a0, d01 + a0, 2.0 * d0d + 3.0 * a0 - d1d});
  out.h2_routes[9] = route(
      -3.0 * std::pow(w, 3) * j / 8.0 *
          (1.0 / ((d0d + a0) * (d0d + a0) * (2.0 * d0d + 3.0 * a0)) +
           1.0 / ((d01 + a0) * (d01 + a0) * (2.0 * d0d + 3.0 * a0 - d1d))),
      "H2:10", {d0d + a0, 2.0 * d0d + 3.0 * a0, d01 + a0, 2.0 * d0d + 3.0 * a0 - d1d});
  out.h2_routes[10] = route(
      3.0 * std::pow(w, 3) * j / (8.0 * (d0d + a0)) *
          (1.0 / (d01 * d01) - 1.0 / (d0d * (d01 + a0))),
      "H2:11", {d0d + a0, d01, d0d, d01 + a0});
  out.h2_routes[11] = route(
      3.0 * std::pow(w, 3) * j / (4.0 * (d0d + a0)) *
          (1.0 / ((d0d + a0) * (d0d + a0)) + 1.0 / ((d01 + a0) * (d01 + a0))),
      "H2:12", {d0d + a0, d01 + a0});

  for (double r : out.h1_routes) out.h1_sum += r;
  for (double r : out.h2_routes) out.h2_sum += r;
  out.nu_zx_4 = out.h1_sum - out.h2_sum;
  return out;
}

namespace {

TwoSiteIntermediates two_site_intermediates(double omega1, double beta1, double omega_c,
                                            double beta_c, double g1, double g12) {
  const double g2 = g1;  // symmetric chain
  const double s1c = omega1 + omega_c;
  const double s12 = omega1 + omega1;
  for (double denom : {s1c, s12, s1c + beta1, s12 + beta1, s1c + beta_c, s12 + 2.0 * beta1,
                       s1c + beta1 + beta_c}) {
    check_denominator(denom, "two_site intermediates");
  }

  TwoSiteIntermediates mid;
  mid.e000 = -2.0 * g1 * g1 / s1c - g12 * g12 / s12;
  mid.e100 = omega1 - g1 * g1 / (s1c + beta1) - g2 * g2 / s1c - g12 * g12 / (s12 + beta1);
  mid.e010 = omega_c - g1 * g1 / (s1c + beta_c) - g2 * g2 / (s1c + beta_c) - g12 * g12 / s12;
  mid.g1c = g1 - 0.5 * g2 * g12 * (1.0 / s1c + 1.0 / s12);
  mid.g12c = g12 - g1 * g2 / s1c;

  mid.e200 = 2.0 * omega1 + beta1 - g1 * g1 / s1c;
  mid.e101 = 2.0 * omega1 - 2.0 * g1 * g1 / (s1c + beta1) - 2.0 * g2 * g2 / (s1c + beta1) -
             4.0 * g12 * g12 / (s12 + 2.0 * beta1) + g12 * g12 / s12;
  mid.e110 = omega1 + omega_c - 4.0 * g1 * g1 / (s1c + beta1 + beta_c) -
             2.0 * g2 * g2 / (s1c + beta_c) - 2.0 * g12 * g12 / (s12 + beta1) + g1 * g1 / s1c;
  mid.e020 = 2.0 * omega_c + beta_c - g12 * g12 / s12;

  mid.k0 = g12 + g1 * g2 / s1c - 2.0 * g1 * g2 / (s1c + beta_c);
  mid.k1 = std::sqrt(2.0) * g12 -
           0.5 * std::sqrt(2.0) * g1 * g2 * (1.0 / (s1c + beta1) + 1.0 / s1c);
  mid.j0 = g1 - g1 * g12 * (1.0 / (s1c + beta1) + 1.0 / (s12 + beta1)) +
           0.5 * g1 * g12 * (1.0 / s12 + 1.0 / s1c);
  mid.j1 = std::sqrt(2.0) * g1 - 0.5 * std::sqrt(2.0) * g1 * g12 * (1.0 / s1c + 1.0 / (s12 + beta1));
  mid.j1c = std::sqrt(2.0) * g1 -
            0.5 * std::sqrt(2.0) * g1 * g12 * (1.0 / (s1c + beta_c) + 1.0 / s12);

  mid.delta_1c = mid.e100 - mid.e010;
  mid.delta_1p = mid.e101 - mid.e110;
  check_denominator(mid.delta_1c, "two_site Delta_1c^C");
  check_denominator(mid.delta_1p, "two_site Delta_1'");
  return mid;
}

}  // namespace

TwoSiteZz two_site_zz(double omega1, double beta1, double omega_c, double beta_c, double g1,
                      double g12) {
  const TwoSiteIntermediates mid = two_site_intermediates(omega1, beta1, omega_c, beta_c, g1, g12);
  const double s1c = omega1 + omega_c;
  const double s12 = omega1 + omega1;
  check_denominator(mid.e200 - mid.e110, "two_site E200-E110");
  check_denominator(mid.e101 - mid.e020, "two_site E101-E020");

  TwoSiteZz out;
  out.mid = mid;
  out.zeta2 = -2.0 * g1 * g1 / (s1c + beta1) - 2.0 * g12 * g12 / (s12 + 2.0 * beta1) +
              2.0 * mid.j0 * mid.j0 / mid.delta_1p - 2.0 * mid.g1c * mid.g1c / mid.delta_1c;
  out.zeta3 = 2.0 * mid.j0 * mid.j0 * mid.k0 / (mid.delta_1p * mid.delta_1p) +
              2.0 * mid.g1c * mid.g1c * mid.g12c / (mid.delta_1c * mid.delta_1c) -
              2.0 * mid.j0 * mid.j1 * mid.k1 / (mid.delta_1p * (mid.e200 - mid.e110));
  out.zeta4 = 4.0 * mid.j0 * mid.j0 * mid.j1c * mid.j1c /
                  (mid.delta_1p * mid.delta_1p * (mid.e101 - mid.e020)) -
              2.0 * mid.j0 * mid.j0 * mid.j1 * mid.j1 /
                  (mid.delta_1p * mid.delta_1p * (mid.e200 - mid.e110)) +
              4.0 * std::pow(mid.g1c, 4) / std::pow(mid.delta_1c, 3);
  out.zeta = out.zeta2 + out.zeta3 + out.zeta4;

  out.resonance_beta1 = -beta1 + 2.0 * g1 * g1 / s1c - 4.0 * g1 * g1 / (s1c + beta1 + beta_c) -
                        2.0 * g1 * g1 / (s1c + beta_c) - 2.0 * g12 * g12 / (s12 + beta1);
  out.resonance_beta_c = 0.5 * beta_c + 2.0 * g1 * g1 / (s1c + beta1) +
                         2.0 * g12 * g12 / (s12 + 2.0 * beta1) - g12 * g12 / s12;
  return out;
}

TwoSiteHopping two_site_hopping(double omega1, double beta1, double omega_c, double beta_c,
                                double g1, double g12) {
  const TwoSiteIntermediates mid = two_site_intermediates(omega1, beta1, omega_c, beta_c, g1, g12);
  const double g2 = g1;
  const double s1c = omega1 + omega_c;

  TwoSiteHopping out;
  out.mid = mid;
  out.g_tilde_2 = g12 + mid.g1c * mid.g1c / mid.delta_1c - g1 * g2 / s1c;
  out.g_tilde_4 = out.g_tilde_2 - mid.g1c * mid.g1c * g12 / (mid.delta_1c * mid.delta_1c) -
                  2.0 * std::pow(mid.g1c, 4) / std::pow(mid.delta_1c, 3);
  out.e10_dressed = mid.e100 + mid.g1c * mid.g1c / mid.delta_1c -
                    mid.g1c * mid.g1c * mid.g12c / (mid.delta_1c * mid.delta_1c) -
                    2.0 * std::pow(mid.g1c, 4) / std::pow(mid.delta_1c, 3);
  out.e00_dressed = mid.e000;
  return out;
}

KappaAnalytic kappa_analytic(double g12, double g1, double delta_12, double delta_1c,
                             double delta_2c, double beta2) {
  for (double denom : {delta_12 - beta2, delta_12, delta_1c, delta_2c, delta_1c + delta_2c}) {
    check_denominator(denom, "kappa_analytic");
  }
  KappaAnalytic out;
  out.kappa110 =
      2.0 * g12 * g12 / (delta_12 - beta2) +
      g12 * g1 * g1 *
          (4.0 / ((delta_12 - beta2) * delta_1c) + 3.0 / (2.0 * delta_1c * delta_2c)) +
      std::pow(g1, 4) *
          (1.0 / (delta_1c + delta_2c) * std::pow(1.0 / delta_1c + 1.0 / delta_2c, 2) +
           2.0 / (delta_1c * delta_1c * (delta_12 - beta2)) - 1.0 / (delta_1c * delta_2c * delta_2c));
  out.kappa100 = g12 * g12 / delta_12 - g1 * g1 * g12 / (delta_1c * delta_2c) -
                 std::pow(g1, 4) / (delta_1c * delta_1c * delta_2c);
  out.kappa = out.kappa110 - out.kappa100;
  return out;
}

}  // namespace oracles
}  // namespace effham
