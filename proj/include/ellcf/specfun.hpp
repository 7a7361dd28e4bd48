#pragma once

#include <complex>
#include <vector>

namespace ellcf::specfun {

// Truncation policy shared by every power series in this module.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 500;
};

template <class T>
struct SpecialValue {
    T value{};
    int terms_used = 0;
    bool converged = false;
};

/// Gamma function. Throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// log|Gamma(x)|; usable far beyond the overflow point of gamma_fn.
double log_gamma(double x);

/// Pochhammer symbol (a)_k = a (a+1) ... (a+k-1).
double pochhammer(double a, int k);

/// Bessel function of the first kind J_nu(x) for nu > -1 and x >= 0.
///
/// Three regimes: the ascending power series while x is small relative to
/// sqrt(nu+1), Steed's continued-fraction method in the transition zone, and
/// the Hankel asymptotic expansion once x >= 25 + nu^2/2. The asymptotic
/// series terminates for half-integer orders, so it is exact there.
double bessel_j(double nu, double x);

/// J_nu and Y_nu together for nu >= 0 and x >= 2 (Steed's method).
void bessel_jy_steed(double nu, double x, double& j, double& y);

/// Modified Bessel function of the third kind K_nu(x), x > 0.
///
/// Half-integer orders use the closed form for K_{1/2} plus upward recurrence.
/// Everything else integrates K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
/// with the trapezoidal rule, which converges geometrically for this entire
/// integrand.
double bessel_k(double nu, double x);

/// The trapezoidal-integral route of bessel_k, valid for every order.
double bessel_k_integral(double nu, double x);

/// 0F1(;gamma;z). Direct summation unless z < -12, where the Bessel
/// identity 0F1(gamma; -x^2/4) = Gamma(gamma) (x/2)^{1-gamma} J_{gamma-1}(x)
/// avoids catastrophic cancellation.
double hyp0f1(double gamma, double z, const SeriesControl& ctl = {});

/// Raw 0F1 series with term accounting.
SpecialValue<double> hyp0f1_series(double gamma, double z, const SeriesControl& ctl = {});

/// Kummer's function 1F1(a;c;z). For z < -1 the Kummer transformation
/// exp(z) 1F1(c-a;c;-z) keeps all partial sums cancellation-free.
double hyp1f1(double a, double c, double z, const SeriesControl& ctl = {});

/// Raw Kummer series with term accounting.
SpecialValue<double> hyp1f1_series(double a, double c, double z, const SeriesControl& ctl = {});

/// Dawson's integral D(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

/// The standard normal CDF at a purely imaginary point, Phi(iy).
///
/// Phi(iy) = 1/2 + i exp(y^2/2) D(y/sqrt 2)/sqrt(pi). The growing factor is
/// kept apart as log_scale so callers can cancel it against a decaying one.
struct ScaledPhi {
    double real = 0.5;
    double imag_mantissa = 0.0;
    double log_scale = 0.0;
    bool overflow = false;

    // Imaginary part without the scale factor removed.
    double imag() const;
    std::complex<double> value() const;
    // exp(log_shift) * (Phi(iy) - 1/2) computed without forming exp(log_scale).
    std::complex<double> centered_times_exp(double log_shift) const;
};

ScaledPhi phi_imag(double y);

/// k-th positive zero of J_nu (k >= 1, nu >= -1/2).
double bessel_j_zero(double nu, int k);

/// The first `count` positive zeros of J_nu, increasing.
std::vector<double> bessel_j_zeros(double nu, int count);

/// Incremental zero finder: each call to next() brackets the following sign
/// change of J_nu and bisects it to full precision.
class BesselZeroSequence {
public:
    explicit BesselZeroSequence(double nu);
    double next();
    int count() const { return count_; }

private:
    double nu_;
    double last_ = 0.0;
    int count_ = 0;
};

}  // namespace ellcf::specfun
