#pragma once

#include "ellcf/generator.hpp"
#include "ellcf/linalg.hpp"
#include "ellcf/quadrature.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>

namespace ellcf {

enum class Method { ClosedForm, Hankel, MonteCarlo };

std::string to_string(Method m);

/// A characteristic-function value. abs_err carries a quadrature or
/// statistical error estimate when the route provides one.
struct ComplexCF {
    std::complex<double> value{1.0, 0.0};
    std::optional<double> abs_err;
    Method method = Method::ClosedForm;

    double re() const { return value.real(); }
    double im() const { return value.imag(); }
};

/// Route selection for characteristic generators. Auto prefers the closed
/// form and falls back to the Hankel integral.
enum class Route { Auto, ClosedForm, Hankel };

/// Elliptical law ELL_n(mu, Sigma, g).
class EllipticalSpec {
public:
    EllipticalSpec(Vector mu, Matrix sigma, DensityGenerator generator);

    int dim() const { return static_cast<int>(mu_.size()); }
    const Vector& mu() const { return mu_; }
    const Matrix& sigma() const { return sigma_; }
    const DensityGenerator& generator() const { return generator_; }
    const MatrixRoots& roots() const { return roots_; }
    int rank() const { return roots_.rank; }
    bool full_rank() const { return roots_.rank == dim(); }

    /// t' Sigma t, clamped at zero.
    double quadratic_form(const Vector& t) const;

private:
    Vector mu_;
    Matrix sigma_;
    DensityGenerator generator_;
    MatrixRoots roots_;
};

/// Schoenberg's Omega_n(s), the characteristic function of the uniform law
/// on the unit sphere in R^n evaluated at s = |t|^2.
double omega_n(int n, double s);

/// c_n = Gamma(n/2) pi^{-n/2} / int_0^inf z^{n/2-1} g(z) dz.
double normalizing_constant(const DensityGenerator& g);

/// Density of the generating variate R at v >= 0.
double radial_density(const DensityGenerator& g, double v);
/// Same, for a spec; rejects rank-deficient dispersion.
double radial_density(const EllipticalSpec& spec, double v);

/// Closed-form characteristic generator phi(Q), Q = t' Sigma t >= 0.
/// std::nullopt means the family/parameter combination has no closed form
/// and the Hankel route must be used.
std::optional<double> phi_closed(const DensityGenerator& g, double Q);

/// phi(Q) by the requested route.
double phi(const DensityGenerator& g, double Q, Route route = Route::Auto,
           const quad::QuadratureControl& ctl = {});

/// phi(Q) with its quadrature error (zero for closed forms).
quad::QuadResult phi_with_error(const DensityGenerator& g, double Q, Route route = Route::Auto,
                                const quad::QuadratureControl& ctl = {});

using CharacteristicGenerator = std::function<double(double)>;

/// Bind a generator and a route into a callable Q -> phi(Q).
CharacteristicGenerator make_characteristic_generator(const DensityGenerator& g, Route route = Route::Auto,
                                                      const quad::QuadratureControl& ctl = {});

/// e^{i t'mu} phi(t' Sigma t).
ComplexCF cf(const EllipticalSpec& spec, const Vector& t, Route route = Route::Auto,
             const quad::QuadratureControl& ctl = {});

namespace closed {

// Individual closed forms, exposed so their algebraic variants can be
// checked against each other.
double normal(double Q);
double uniform_ball(int n, double Q);          // 0F1(n/2+1; -Q/4)
double uniform_ball_bessel(int n, double Q);   // 2^{n/2} Gamma(n/2+1) |t|^{-n/2} J_{n/2}(|t|)
double generalized_t(double s, double m, double Q);
double cauchy(double Q);                        // exp(-sqrt(Q))
double pearson_ii_hyp(int n, double m, double Q);     // 0F1 form
double pearson_ii_bessel(int n, double m, double Q);  // J form
double pearson_vii(int n, double N, double s, double Q);
double kotz_s1(int n, double N, double r, double Q);
/// Kotz with s = 1/2, as printed; only a characteristic generator when N = 1.
double kotz_s_half(int n, double N, double r, double Q);
/// Two-dimensional Kotz s = 1/2, N = 1: r^3 / (r^2 + Q)^{3/2}.
double kotz_s_half_2d(double r, double Q);
double bessel(int n, double a, double beta, double Q);

}  // namespace closed

}  // namespace ellcf
