#pragma once

namespace subdiff::ml {

struct MLParams {
    double alpha = 1.0;  // must be positive
    double beta = 1.0;
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) by direct Taylor
/// series with compensated summation.  The series is truncated once a term
/// falls below 1e-16 of the running sum (hard cap 400 terms).
///
/// Domain: |z| <= 30.  Within that window the series always terminates for
/// alpha near 1; for small alpha the usable range is narrower because the
/// terms peak before they decay (the peak magnitude limits the attainable
/// absolute accuracy in double precision).  Out-of-domain arguments and
/// non-convergence raise errors rather than returning garbage.
double ml(const MLParams& p, double z);
double ml(double alpha, double beta, double z);

}  // namespace subdiff::ml
