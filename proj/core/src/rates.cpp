#include "lisdev/rates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lisdev/error.hpp"

namespace lisdev {

namespace {

// acosh(1 + x) for x >= 0 without cancellation near 0.
double acosh1p(double x) { return std::log1p(x + std::sqrt(x * (x + 2.0))); }

double u0_value(double c) {
  if (c == 0.0) return 0.0;
  if (c < 1e-4) {
    // Integral of U0'(c) = 2 acosh(1 + c/2) = 2 sqrt(c) (1 - c/24 + 3c^2/640 - ...).
    const double r = std::sqrt(c);
    return c * r * (4.0 / 3.0 - c / 30.0 + 3.0 * c * c / 1120.0);
  }
  return 2.0 * (2.0 + c) * acosh1p(c / 2.0) - 2.0 * std::sqrt(c * c + 4.0 * c);
}

}  // namespace

RateValue h0(double c) {
  if (!(c > -2.0 && c <= 0.0)) throw ValidationError("h0 needs -2 < c <= 0");
  RateValue out{RateKind::h0, c, 0.0, std::nullopt};
  if (c == 0.0) return out;
  const double s = 2.0 + c;
  const double q = c * (c + 4.0);  // s^2 - 4
  double value = q / 8.0 + std::log1p(c / 2.0) - (1.0 + s * s / 4.0) * std::log1p(q / (4.0 + s * s));
  out.value = value < 0.0 ? 0.0 : value;
  return out;
}

double b0(double c) {
  if (!(c > -2.0 && c <= 0.0)) throw ValidationError("b0 needs -2 < c <= 0");
  const double s = 2.0 + c;
  const double value = 1.0 / s - s / 4.0 + std::sqrt(2.0 + s * s / 2.0);
  if (!std::isfinite(value)) throw std::overflow_error("b0 diverges as c approaches -2");
  return value;
}

RateValue u0(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("u0 needs finite c >= 0");
  return {RateKind::u0, c, u0_value(c), std::nullopt};
}

RateValue u_mu(double c, double jbar) {
  if (!(jbar > 0.0)) throw ValidationError("u_mu needs jbar > 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("u_mu needs finite c >= 0");
  return {RateKind::u_mu, c, jbar * u0_value(c / jbar), jbar};
}

CertificateResult entropy_certificate(const Density& nu, const Density& mu, double d, const SolverConfig& config) {
  if (!(d > 0.0)) throw ValidationError("certificate needs d > 0");
  const VariationalResult solved = solve_jbar(nu, config);
  CertificateResult out;
  out.j_low = solved.j_low;
  out.j_high = solved.j_high;
  if (2.0 * solved.j_high > d) {
    out.reason = "2 J(nu) may exceed d: bracket [" + std::to_string(2.0 * solved.j_low) + ", " +
                 std::to_string(2.0 * solved.j_high) + "]";
    return out;
  }
  const EntropyValue entropy = relative_entropy(nu, mu);
  if (entropy.infinite) {
    out.reason = "H(nu | mu) is infinite";
    return out;
  }
  out.certificate = RateValue{RateKind::entropy_certificate, d, entropy.value, solved.j_high};
  return out;
}

}  // namespace lisdev
