#pragma once

namespace subdiff::special {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms), extended to
/// x < 1/2 by reflection.  Throws std::domain_error at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// log|Gamma(x)|.  If `sign` is non-null it receives the sign of Gamma(x),
/// or 0 at a pole (where +infinity is returned).
double log_abs_gamma(double x, int* sign = nullptr);

/// Euler beta B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0.
double beta_fn(double x, double y);

}  // namespace subdiff::special
