#pragma once

#include "ellcf/generator.hpp"

#include <functional>
#include <limits>

namespace ellcf::quad {

struct QuadratureControl {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_panels = 400;
    // Envelope threshold below which the remaining tail is dropped.
    double tail_cutoff = 1e-16;
};

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    int panels_used = 0;
    double tail_bound = 0.0;
};

using Envelope = std::function<double(double)>;

struct OscillatoryOptions {
    // The envelope vanishes beyond this radius.
    double support = std::numeric_limits<double>::infinity();
    // Length scale of the envelope; long panels are pre-split on a geometric
    // grid built from it so narrow features near the origin are not missed.
    double scale = 1.0;
};

/// int_0^inf f(r) J_nu(omega r) dr for an envelope f that is eventually
/// monotone decreasing.
///
/// The axis is split at the scaled zeros j_{nu,k}/omega, each panel is
/// integrated with adaptive G7-K15, and once the envelope decreases
/// monotonically the alternating panel sums are accelerated by iterated
/// Euler averaging of their partial sums. Throws ConvergenceError when the
/// envelope does not decay within max_panels.
QuadResult integrate_bessel_oscillatory(const Envelope& f, double nu, double omega,
                                        const QuadratureControl& ctl = {}, const OscillatoryOptions& opt = {});

/// int_0^inf f(r) cos(omega r) dr, same machinery with panels at the zeros
/// of the cosine.
QuadResult integrate_cosine_oscillatory(const Envelope& f, double omega, const QuadratureControl& ctl = {},
                                        const OscillatoryOptions& opt = {});

/// int_0^inf v^power g(v^2) dv. Power-law tails get an analytic tail
/// correction from tail_power(); divergence throws MomentDoesNotExist.
QuadResult radial_integral(const DensityGenerator& g, double power, const QuadratureControl& ctl = {});

/// int_0^inf z^{n/2-1} g(z) dz computed by quadrature (n = g.dim()).
QuadResult moment_integral(const DensityGenerator& g, const QuadratureControl& ctl = {});

/// E[R^{2k}] under the radial density h_R of g.
double radial_moment(const DensityGenerator& g, int k, const QuadratureControl& ctl = {});

/// Characteristic generator phi(u^2) by the Hankel-type integral
/// phi(u^2) = c_n (2 pi)^{n/2} u^{-(n-2)/2} int_0^inf r^{n/2} J_{(n-2)/2}(r u) g(r^2) dr.
///
/// Below u = 1e-3 the moment series is used when every radial moment
/// exists; n = 1 integrates against cos(r u) directly.
QuadResult phi_hankel(const DensityGenerator& g, double u, const QuadratureControl& ctl = {});

/// The oscillatory route alone, for any u > 0.
QuadResult phi_hankel_oscillatory(const DensityGenerator& g, double u, const QuadratureControl& ctl = {});

/// sum_k (-u^2/4)^k E[R^{2k}] / ((n/2)_k k!). Throws MomentDoesNotExist when
/// a required moment diverges.
QuadResult phi_hankel_series(const DensityGenerator& g, double u, const QuadratureControl& ctl = {});

inline constexpr double kSeriesSwitch = 1e-3;

}  // namespace ellcf::quad
