#pragma once

// Closed-form rate functions of the lower and upper tails of the LIS, and
// relative-entropy certificates for the lower tail of a general density.

#include <optional>
#include <string>

#include "lisdev/model.hpp"
#include "lisdev/variational.hpp"

namespace lisdev {

enum class RateKind { h0, u0, u_mu, entropy_certificate };

struct RateValue {
  RateKind which = RateKind::h0;
  double argument = 0.0;  // c, or d for certificates
  double value = 0.0;
  std::optional<double> jbar;
};

/// Lower-tail rate for -2 < c <= 0:
/// H0(c) = -1/2 + (2+c)^2/8 + log((2+c)/2) - (1 + (2+c)^2/4) log(2(2+c)^2 / (4 + (2+c)^2)),
/// evaluated in a form free of cancellation near c = 0.
RateValue h0(double c);

/// Support 1/(2+c) - (2+c)/4 + sqrt(2 + (2+c)^2/2) of the constrained limit
/// shape. Throws std::overflow_error when the value is not finite.
double b0(double c);

/// Upper-tail rate U0(c) = 2(2+c) acosh(1 + c/2) - 2 sqrt(c^2 + 4c), c >= 0.
RateValue u0(double c);

/// jbar U0(c / jbar).
RateValue u_mu(double c, double jbar);

struct CertificateResult {
  std::optional<RateValue> certificate;  // H(nu | mu) when 2 j_high(nu) <= d
  double j_low = 0.0;                    // bracket of J(nu)
  double j_high = 0.0;
  std::string reason;                    // why no certificate was issued
};

/// Solves for J(nu); when the upper bracket of 2 J(nu) is at most d, the
/// relative entropy H(nu | mu) bounds I_mu(d) from above and is returned as
/// the certificate. Otherwise the bracket is returned without one.
CertificateResult entropy_certificate(const Density& nu, const Density& mu, double d, const SolverConfig& config = {});

}  // namespace lisdev
