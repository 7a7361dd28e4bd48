#include "ellcf/elliptical.hpp"

#include "ellcf/errors.hpp"
#include "ellcf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ellcf {

std::string to_string(Method m)
{
    switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::Hankel: return "hankel";
    case Method::MonteCarlo: return "mc";
    }
    return "unknown";
}

EllipticalSpec::EllipticalSpec(Vector mu, Matrix sigma, DensityGenerator generator)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), generator_(std::move(generator))
{
    const auto n = mu_.size();
    if (n < 1) throw DomainError("location vector is empty");
    if (!mu_.allFinite()) throw DomainError("location vector has non-finite entries");
    if (sigma_.rows() != n || sigma_.cols() != n) throw DomainError("dispersion matrix does not match dimension");
    if (generator_.dim() != n) throw DomainError("generator dimension does not match location vector");
    roots_ = matrix_roots(sigma_);
}

double EllipticalSpec::quadratic_form(const Vector& t) const
{
    if (t.size() != dim()) throw DomainError("argument dimension does not match spec");
    return std::max(0.0, t.dot(sigma_ * t));
}

double omega_n(int n, double s)
{
    if (n < 1) throw DomainError("omega_n: n must be >= 1");
    if (!(s >= 0.0)) throw DomainError("omega_n: s must be >= 0");
    if (s == 0.0) return 1.0;
    const double x = std::sqrt(s);
    if (x < 1e-3) return specfun::hyp0f1(0.5 * n, -0.25 * s);
    const double nu = 0.5 * (n - 2);
    const double logc = std::lgamma(0.5 * n) + nu * (std::numbers::ln2 - std::log(x));
    return std::exp(logc) * specfun::bessel_j(nu, x);
}

double normalizing_constant(const DensityGenerator& g)
{
    const double h = 0.5 * g.dim();
    return std::exp(std::lgamma(h) - h * std::log(std::numbers::pi)) / g.moment_integral_value();
}

double radial_density(const DensityGenerator& g, double v)
{
    if (!(v >= 0.0)) return 0.0;
    if (v > g.support_radius()) return 0.0;
    const int n = g.dim();
    const double gv = g(v * v);
    if (gv == 0.0) return 0.0;
    if (v == 0.0 && n > 1) return std::isfinite(gv) ? 0.0 : gv;
    // c_n 2 pi^{n/2} / Gamma(n/2) collapses to 2 / moment_integral.
    return 2.0 * std::pow(v, n - 1) * gv / g.moment_integral_value();
}

double radial_density(const EllipticalSpec& spec, double v)
{
    if (!spec.full_rank()) throw DomainError("radial density requires a full-rank dispersion matrix");
    return radial_density(spec.generator(), v);
}

quad::QuadResult phi_with_error(const DensityGenerator& g, double Q, Route route, const quad::QuadratureControl& ctl)
{
    if (std::isnan(Q)) throw DomainError("phi: Q is NaN");
    Q = std::max(Q, 0.0);
    if (Q == 0.0) return {1.0, 0.0, 0, 0.0};
    if (route != Route::Hankel) {
        if (auto v = phi_closed(g, Q)) return {*v, 0.0, 0, 0.0};
        if (route == Route::ClosedForm) {
            throw DomainError("no closed form for " + g.describe() + "; use the Hankel route");
        }
    }
    return quad::phi_hankel(g, std::sqrt(Q), ctl);
}

double phi(const DensityGenerator& g, double Q, Route route, const quad::QuadratureControl& ctl)
{
    return phi_with_error(g, Q, route, ctl).value;
}

CharacteristicGenerator make_characteristic_generator(const DensityGenerator& g, Route route,
                                                      const quad::QuadratureControl& ctl)
{
    return [g, route, ctl](double Q) { return phi(g, Q, route, ctl); };
}

ComplexCF cf(const EllipticalSpec& spec, const Vector& t, Route route, const quad::QuadratureControl& ctl)
{
    const double Q = spec.quadratic_form(t);
    const bool closed = route != Route::Hankel && phi_closed(spec.generator(), Q).has_value();
    if (route == Route::ClosedForm && !closed) {
        throw DomainError("no closed form for " + spec.generator().describe() + "; use the Hankel route");
    }
    const auto r = phi_with_error(spec.generator(), Q, closed ? Route::ClosedForm : Route::Hankel, ctl);
    ComplexCF out;
    out.method = closed ? Method::ClosedForm : Method::Hankel;
    const double phase = t.dot(spec.mu());
    out.value = {r.value * std::cos(phase), r.value * std::sin(phase)};
    if (!closed) out.abs_err = r.err_est;
    return out;
}

}  // namespace ellcf
