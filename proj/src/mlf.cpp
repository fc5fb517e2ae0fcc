#include "mildsol/mlf.hpp"

#include "mildsol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mildsol {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
using CLD = std::complex<long double>;

// 1/Gamma(y) for real y, entire, via reflection for the left half-line.
long double rgamma(long double y) {
  if (y > 0.5L) {
    if (y > 1.0e4L) return 0.0L;  // underflow region
    return std::exp(-std::lgamma(y));
  }
  // 1/Gamma(y) = sin(pi y) Gamma(1-y) / pi
  const long double s = std::sin(kPi * y);
  if (s == 0.0L) return 0.0L;
  const long double lg = std::lgamma(1.0L - y);
  if (lg > 11000.0L) return std::numeric_limits<long double>::infinity();
  return s / kPi * std::exp(lg);
}

// Taylor series in extended precision. Stops on an absolute threshold past the
// largest term; a max-term-relative cutoff would abort before cancellation
// completes.
CLD taylor_series(double alpha, CLD z, bool& converged) {
  CLD sum(1.0L, 0.0L);
  CLD pow_z(1.0L, 0.0L);
  long double max_mag = 1.0L;
  converged = false;
  for (int k = 1; k < 2000; ++k) {
    pow_z *= z;
    const long double coeff =
        rgamma(static_cast<long double>(alpha) * k + 1.0L);
    const CLD term = pow_z * coeff;
    sum += term;
    const long double mag = std::abs(term);
    max_mag = std::max(max_mag, mag);
    if (mag < 1.0e-25L * std::max(1.0L, std::abs(sum)) && mag < max_mag) {
      converged = true;
      break;
    }
    if (!std::isfinite(mag)) break;
  }
  return sum;
}

// Exponential-plus-algebraic expansion for large |z|.
// E_a(z) ~ (1/a) sum_{branches} exp(z^{1/a} e^{2 pi i n / a})
//          - sum_{k>=1} z^{-k} / Gamma(1 - a k),
// branch n included when (arg z + 2 pi n)/a lies in (-pi, pi].
CLD asymptotic_series(double alpha, CLD z) {
  const long double a = alpha;
  CLD result(0.0L, 0.0L);

  const long double r = std::abs(z);
  const long double phi = std::arg(z);
  const long double root_mag = std::pow(r, 1.0L / a);
  for (int n = -2; n <= 2; ++n) {
    const long double branch = (phi + 2.0L * kPi * n) / a;
    if (branch > -kPi && branch <= kPi) {
      const CLD w = root_mag * CLD(std::cos(branch), std::sin(branch));
      result += std::exp(w) / a;
    }
  }

  // Algebraic part, truncated at the smallest term. The growth test uses the
  // smooth envelope Gamma(a k)/(pi |z|^k); the sin factor in 1/Gamma(1-a k)
  // has zeros that would trip a test on raw term magnitudes.
  CLD inv_z = CLD(1.0L, 0.0L) / z;
  CLD pow_inv = inv_z;
  const long double log_r = std::log(r);
  long double prev_env = std::numeric_limits<long double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const long double env =
        std::exp(std::lgamma(a * k) - k * log_r) / kPi;
    if (env > prev_env) break;  // divergent regime of the asymptotic series
    result -= pow_inv * rgamma(1.0L - a * k);
    if (env < 1.0e-25L) break;
    prev_env = env;
    pow_inv *= inv_z;
  }
  return result;
}

}  // namespace

MlResult ml_eval_detail(double alpha, std::complex<double> z) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::domain_error("ml_eval: alpha must lie in (0, 2]");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("ml_eval: non-finite argument");

  MlResult out;
  if (z == std::complex<double>(0.0, 0.0)) {
    out.value = 1.0;
    return out;
  }

  const CLD zl(z.real(), z.imag());
  // Scale variable governing both the Taylor cancellation (~exp(+s)) and the
  // optimally truncated asymptotic remainder (~exp(-s)).
  const double s = std::pow(std::abs(z), 1.0 / alpha);
  constexpr double kSwitch = 20.0;
  constexpr double kBandHalfWidth = 2.5;

  const bool want_taylor = s <= kSwitch;
  const bool in_band = std::abs(s - kSwitch) <= kBandHalfWidth;

  CLD value;
  if (want_taylor) {
    bool ok = false;
    value = taylor_series(alpha, zl, ok);
    if (!ok)
      throw std::runtime_error(
          "ml_eval: Taylor series failed to converge (alpha=" +
          std::to_string(alpha) + ", |z|=" + std::to_string(std::abs(z)) + ")");
    out.regime = MlResult::Regime::taylor;
  } else {
    value = asymptotic_series(alpha, zl);
    out.regime = MlResult::Regime::asymptotic;
  }

  if (in_band) {
    const CLD other = want_taylor ? asymptotic_series(alpha, zl)
                                  : [&] {
                                      bool ok = false;
                                      return taylor_series(alpha, zl, ok);
                                    }();
    out.crossover_discrepancy = static_cast<double>(std::abs(value - other));
  }

  out.value = std::complex<double>(static_cast<double>(value.real()),
                                   static_cast<double>(value.imag()));
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw std::runtime_error("ml_eval: evaluation produced non-finite value");
  return out;
}

std::complex<double> ml_eval(double alpha, std::complex<double> z) {
  return ml_eval_detail(alpha, z).value;
}

double ml_eval(double alpha, double z) {
  return ml_eval_detail(alpha, std::complex<double>(z, 0.0)).value.real();
}

std::complex<double> contour_eval(double alpha, double mu, double t,
                                  const ContourParams& params) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::domain_error("contour_eval: alpha must lie in (0, 2]");
  if (!(t > 0.0)) throw std::domain_error("contour_eval: t must be > 0");
  if (mu > 0.0)
    throw std::domain_error("contour_eval: mu must be <= 0");

  // Half-angle offset: asymptotic contour direction is pi/2 + delta. Poles of
  // the symbol sit at |mu|^{1/alpha} e^{+-i pi/alpha}; for alpha > 1 they must
  // stay left of the contour.
  double delta = params.delta;
  if (delta < 0.0) {
    if (alpha > 1.0) {
      const double psi = M_PI / alpha - M_PI / 2.0;  // 0 at alpha=2
      delta = std::clamp(0.8 * psi, 0.02, 0.5);
    } else {
      delta = 0.5;
    }
  }
  if (delta <= 0.0 || delta >= M_PI / 2.0)
    throw std::invalid_argument("contour_eval: delta out of range");

  double sigma = params.sigma_scale / t;

  if (mu < 0.0 && alpha > 1.0) {
    // Clearance check at the pole height; grow sigma if the hyperbola would
    // pass left of a pole (possible only near alpha = 2).
    const double rp = std::pow(-mu, 1.0 / alpha);
    const std::complex<double> pole(rp * std::cos(M_PI / alpha),
                                    rp * std::sin(M_PI / alpha));
    bool clear = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      const double sh = pole.imag() / (sigma * std::cos(delta));
      const double ch = std::sqrt(1.0 + sh * sh);
      const double re_c = sigma * (1.0 - std::sin(delta) * ch);
      if (re_c > pole.real() + 1e-12) {
        clear = true;
        break;
      }
      sigma *= 1.5;
    }
    if (!clear)
      throw std::invalid_argument(
          "contour_eval: contour cannot clear the symbol poles "
          "(sector too wide for this geometry)");
    if (sigma * t > 60.0)
      throw std::invalid_argument(
          "contour_eval: required contour scale loses all precision "
          "(sigma*t too large)");
  }

  // Truncation half-width: e^{Re lambda t} down to ~1e-16 of the crest.
  const double ch_max = (1.0 + 40.0 / (sigma * t)) / std::sin(delta);
  const double a_half = std::acosh(std::max(ch_max, 2.0));

  int n_nodes = params.n_nodes;
  if (n_nodes <= 0) {
    // Trapezoid accuracy is set by the analyticity strip (~delta); keep the
    // step below delta/4.
    const double h_req = std::min(delta, 0.4) / 4.0;
    n_nodes = std::max(400, static_cast<int>(std::ceil(2.0 * a_half / h_req)));
  }
  const double h = 2.0 * a_half / (n_nodes - 1);

  using C = std::complex<double>;
  const C i_unit(0.0, 1.0);
  C sum(0.0, 0.0);
  for (int j = 0; j < n_nodes; ++j) {
    const double u = -a_half + j * h;
    const C arg = C(delta, -u);
    const C lambda = sigma * (1.0 - std::sin(arg));
    const C dlambda = i_unit * sigma * std::cos(arg);
    const C lam_am1 = std::pow(lambda, alpha - 1.0);
    const C denom = lam_am1 * lambda - mu;  // lambda^alpha - mu
    C integrand = std::exp(lambda * t) * lam_am1 / denom * dlambda;
    if (j == 0 || j == n_nodes - 1) integrand *= 0.5;
    sum += integrand;
  }
  return sum * h / (2.0 * M_PI * i_unit);
}

double resolvent_symbol(double alpha, double mu, double t) {
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::domain_error("resolvent_symbol: alpha must lie in (1, 2)");
  if (mu > 0.0)
    throw std::domain_error("resolvent_symbol: mu must be <= 0");
  if (t < 0.0) throw std::domain_error("resolvent_symbol: t must be >= 0");
  if (t == 0.0 || mu == 0.0) return 1.0;
  return ml_eval(alpha, mu * std::pow(t, alpha));
}

DecayCertificate decay_certificate(double alpha, double mu, double t_max,
                                   int n_samples) {
  if (!(mu < 0.0)) throw std::domain_error("decay_certificate: mu must be < 0");
  if (n_samples < 2)
    throw std::invalid_argument("decay_certificate: need n_samples >= 2");
  if (!((-mu) * std::pow(t_max, alpha) >= 1e3))
    throw std::invalid_argument(
        "decay_certificate: t_max too small (|mu| t_max^alpha < 1e3)");

  const double t_min = t_max * 1e-6;
  const double ratio = std::log(t_max / t_min);
  double c = 1.0;  // symbol equals 1 at t = 0, denominator 1
  for (int j = 0; j < n_samples; ++j) {
    const double t =
        t_min * std::exp(ratio * static_cast<double>(j) / (n_samples - 1));
    const double sym = ml_eval(alpha, mu * std::pow(t, alpha));
    if (!std::isfinite(sym))
      throw std::runtime_error("decay_certificate: non-finite symbol value");
    c = std::max(c, (1.0 + (-mu) * std::pow(t, alpha)) * std::abs(sym));
  }
  DecayCertificate cert;
  cert.alpha = alpha;
  cert.mu = mu;
  cert.c_est = c;
  cert.t_max = t_max;
  cert.grid_points = n_samples;
  return cert;
}

double kernel_integral_identity(double alpha, double omega) {
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::domain_error(
        "kernel_integral_identity: alpha must lie strictly in (1, 2)");
  if (!(omega < 0.0))
    throw std::domain_error("kernel_integral_identity: omega must be < 0");
  return std::pow(-omega, -1.0 / alpha) * M_PI /
         (alpha * std::sin(M_PI / alpha));
}

double cuesta_kernel_tail(double alpha, double omega, double T) {
  if (T < 0.0) throw std::domain_error("cuesta_kernel_tail: T must be >= 0");
  const double w = -omega;
  const double full = kernel_integral_identity(alpha, omega);
  if (T == 0.0) return full;
  const double wTa = w * std::pow(T, alpha);
  if (wTa >= 10.0) {
    // 1/(1+w t^a) = sum (-1)^{m+1} (w t^a)^{-m}; integrate termwise.
    double tail = 0.0;
    double sign = 1.0;
    for (int m = 1; m <= 60; ++m) {
      const double term =
          std::pow(w, -m) * std::pow(T, 1.0 - m * alpha) / (m * alpha - 1.0);
      tail += sign * term;
      if (term < 1e-16 * std::abs(tail)) break;
      sign = -sign;
    }
    return tail;
  }
  const double partial = quad::adaptive_simpson(
      [&](double s) { return 1.0 / (1.0 + w * std::pow(s, alpha)); }, 0.0, T,
      1e-12);
  return std::max(full - partial, 0.0);
}

}  // namespace mildsol
