#pragma once

namespace recordlab {

double norm_pdf(double x);
double norm_cdf(double x);
// Upper tail 1 - Phi(x), accurate for large x.
double norm_sf(double x);
double norm_quantile(double p);

// P(X > h, Y > k) for a standard bivariate normal with correlation r.
// Drezner-Wesolowsky/Genz one-dimensional Gauss-Legendre integration,
// absolute accuracy ~1e-15.
double bvn_upper(double h, double k, double r);

// P(X <= x, Y <= y); infinite arguments allowed.
double bvn_cdf(double x, double y, double r);

// P(a1 < X <= b1, a2 < Y <= b2).
double bvn_rect(double a1, double b1, double a2, double b2, double r);

}  // namespace recordlab
