#include "ellcf/errors.hpp"
#include "ellcf/skewmix.hpp"

#include <cmath>
#include <numbers>

namespace ellcf::skew {

void check_star_unimodal(const DensityGenerator& g)
{
    if (!g.has_derivative()) throw DomainError(g.describe() + " has no derivative; star unimodality cannot be checked");
    const double R = g.support_radius();
    bool any_negative = false;
    auto probe = [&](double r) {
        const double z = r * r;
        const double d = g.derivative(z);
        if (d > 0.0) throw DomainError(g.describe() + " is not star unimodal: g'(" + std::to_string(z) + ") > 0");
        if (d < 0.0) any_negative = true;
    };
    if (std::isfinite(R)) {
        for (int i = 1; i < 200; ++i) probe(R * i / 200.0);
    } else {
        const double s = g.scale();
        for (int k = -64; k <= 64; ++k) probe(s * std::pow(10.0, k / 16.0));
    }
    if (!any_negative) throw DomainError(g.describe() + " has g' = 0 on its support; no star-unimodal representation");
}

double smu_density(const DensityGenerator& g, double w)
{
    check_star_unimodal(g);
    if (!(w > 0.0) || w > g.support_radius()) return 0.0;
    const int n = g.dim();
    const double d = g.derivative(w * w);
    if (d == 0.0) return 0.0;
    // c_n 4 pi^{n/2} / (n Gamma(n/2)) collapses to 4 / (n M).
    return -4.0 * std::pow(w, n + 1) * d / (n * g.moment_integral_value());
}

quad::QuadResult phi_smu(const DensityGenerator& g, double u, const quad::QuadratureControl& ctl)
{
    check_star_unimodal(g);
    if (!(u >= 0.0)) throw DomainError("phi_smu: u must be >= 0");
    if (u == 0.0) return {1.0, 0.0, 0, 0.0};
    if (u < quad::kSeriesSwitch && !g.tail_power()) {
        // W V^{(n)} has the law of R U^{(n)}, so the moment series is shared.
        try {
            return quad::phi_hankel_series(g, u, ctl);
        } catch (const ConvergenceError&) {
        }
    }
    const int n = g.dim();
    const double h = 0.5 * n;
    const double pref =
        2.0 * std::exp(std::lgamma(h) + h * std::numbers::ln2 - h * std::log(u)) / g.moment_integral_value();
    quad::QuadratureControl inner = ctl;
    inner.abs_tol = ctl.abs_tol / pref;
    quad::OscillatoryOptions opt;
    opt.support = g.support_radius();
    opt.scale = g.scale();
    auto r = quad::integrate_bessel_oscillatory(
        [&](double w) {
            const double d = g.derivative(w * w);
            return d == 0.0 ? 0.0 : std::pow(w, h + 1.0) * d;
        },
        h, u, inner, opt);
    r.value *= -pref;
    r.err_est *= pref;
    r.tail_bound *= pref;
    return r;
}

ComplexCF cf_smu(const DensityGenerator& g, const Vector& t, const quad::QuadratureControl& ctl)
{
    if (t.size() != g.dim()) throw DomainError("argument dimension does not match generator");
    ComplexCF out;
    out.method = Method::Hankel;
    const double u = t.norm();
    const auto r = phi_smu(g, u, ctl);
    out.value = {r.value, 0.0};
    out.abs_err = r.err_est;
    return out;
}

}  // namespace ellcf::skew
