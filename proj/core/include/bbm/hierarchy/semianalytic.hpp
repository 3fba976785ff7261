#pragma once

namespace bbm::hierarchy {

// g_2(t, x; y1, y2) reduced to a single time integral.
//
// The z-integral of p_{t-s}(x - z) p_s(z - y1) p_s(z - y2) is Gaussian:
// p_s(z - y1) p_s(z - y2) = p_{2s}(y1 - y2) p_{s/2}(z - (y1 + y2)/2), hence
//   g_2 = int_0^t e^{-(t+s)} p_{2s}(y1 - y2) p_{t - s/2}(x - (y1 + y2)/2) ds.
// The s = 0 end is singular when y1 = y2; substituting s = u^2 removes it and
// the u-integral is done by adaptive Gauss-Kronrod.
// domain_error for t <= 0.
double g2_semianalytic(double t, double x, double y1, double y2);

}  // namespace bbm::hierarchy
