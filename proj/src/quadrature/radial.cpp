#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ellcf::quad {
namespace {

constexpr int kMaxDoublings = 2000;
constexpr int kSeriesTerms = 60;

// Breakpoints on [0, edge] that refine geometrically toward 0.
std::vector<double> core_breaks(double edge)
{
    std::vector<double> b{0.0};
    for (int j = 40; j >= 1; --j) b.push_back(std::ldexp(edge, -j));
    b.push_back(edge);
    return b;
}

}  // namespace

QuadResult radial_integral(const DensityGenerator& g, double power, const QuadratureControl& ctl)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto f = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double gv = g(v * v);
        return gv == 0.0 ? 0.0 : std::pow(v, power) * gv;
    };
    const AdaptiveOptions aopt{0.01 * ctl.abs_tol, 0.01 * ctl.rel_tol, 4000};
    const double R = g.support_radius();
    const bool compact = std::isfinite(R);
    const double edge = compact ? R : g.scale();

    const auto tail_power = g.tail_power();
    if (!compact && tail_power && 2.0 * *tail_power - power - 1.0 <= 0.0) {
        throw MomentDoesNotExist("radial integral diverges for " + g.describe());
    }

    const auto breaks = core_breaks(compact ? 0.5 * edge : edge);
    auto core = integrate_adaptive<double>(f, std::span<const double>(breaks), aopt);
    if (compact) {
        const auto e = integrate_to_edge<double>(f, 0.5 * edge, edge, aopt);
        core.value += e.value;
        core.error += e.error;
        core.abs_integral += e.abs_integral;
        core.intervals += e.intervals;
    }
    if (!std::isfinite(core.value)) throw MomentDoesNotExist("radial integral is not finite for " + g.describe());
    QuadResult out{core.value, core.error, core.intervals, 0.0};
    double abs_sum = core.abs_integral;
    if (compact) {
        out.err_est += 10.0 * eps * abs_sum;
        return out;
    }

    double V = edge;
    double prev_total = std::numeric_limits<double>::quiet_NaN();
    double prev_piece = std::numeric_limits<double>::infinity();
    int growing = 0;
    for (int d = 0;; ++d) {
        if (d >= kMaxDoublings || !std::isfinite(2.0 * V)) {
            throw ConvergenceError("radial integral: tail did not settle for " + g.describe());
        }
        const auto r = integrate_adaptive<double>(f, V, 2.0 * V, aopt);
        V *= 2.0;
        out.value += r.value;
        out.err_est += r.error;
        abs_sum += r.abs_integral;
        out.panels_used += r.intervals;
        if (!std::isfinite(out.value)) throw MomentDoesNotExist("radial integral is not finite for " + g.describe());
        const double target = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(out.value));
        if (tail_power) {
            const double e = 2.0 * *tail_power - power - 1.0;
            const double tail = f(V) * V / e;
            const double total = out.value + tail;
            if (d >= 3 && std::abs(total - prev_total) <= 0.01 * target) {
                out.tail_bound = std::abs(total - prev_total);
                out.value = total;
                break;
            }
            prev_total = total;
        } else {
            const double piece = std::abs(r.value);
            if (d >= 3 && piece <= 1e-3 * target && f(V) * V <= 1e-3 * target) {
                out.tail_bound = f(V) * V;
                break;
            }
            growing = (piece >= prev_piece && piece > 0.0) ? growing + 1 : 0;
            if (growing >= 8) throw MomentDoesNotExist("radial integral diverges for " + g.describe());
            prev_piece = piece;
        }
    }
    out.err_est += out.tail_bound + 10.0 * eps * abs_sum;
    return out;
}

QuadResult moment_integral(const DensityGenerator& g, const QuadratureControl& ctl)
{
    auto r = radial_integral(g, g.dim() - 1.0, ctl);
    r.value *= 2.0;
    r.err_est *= 2.0;
    r.tail_bound *= 2.0;
    return r;
}

double radial_moment(const DensityGenerator& g, int k, const QuadratureControl& ctl)
{
    if (k < 0) throw DomainError("radial_moment: k must be >= 0");
    if (k == 0) return 1.0;
    const auto r = radial_integral(g, 2.0 * k + g.dim() - 1.0, ctl);
    return 2.0 * r.value / g.moment_integral_value();
}

QuadResult phi_hankel_series(const DensityGenerator& g, double u, const QuadratureControl& ctl)
{
    if (!(u >= 0.0)) throw DomainError("phi_hankel_series: u must be >= 0");
    if (g.tail_power()) throw MomentDoesNotExist("power-law tail: not every radial moment exists");
    const double h = 0.5 * g.dim();
    const double x = -0.25 * u * u;
    QuadResult out{1.0, 0.0, 0, 0.0};
    if (u == 0.0) return out;
    double coeff = 1.0;
    double prev_term = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= kSeriesTerms; ++k) {
        coeff *= x / ((h + k - 1.0) * k);
        const double term = coeff * radial_moment(g, k, ctl);
        out.value += term;
        out.err_est += std::abs(term) * 10.0 * ctl.rel_tol;
        out.panels_used = k;
        if (std::abs(term) <= 1e-17 * std::abs(out.value)) {
            out.err_est += std::abs(term);
            return out;
        }
        if (k > 2 && std::abs(term) > std::abs(prev_term)) {
            throw ConvergenceError("moment series diverges at u = " + std::to_string(u));
        }
        prev_term = term;
    }
    throw ConvergenceError("moment series did not converge at u = " + std::to_string(u));
}

QuadResult phi_hankel_oscillatory(const DensityGenerator& g, double u, const QuadratureControl& ctl)
{
    if (!(u > 0.0)) throw DomainError("phi_hankel_oscillatory: u must be > 0");
    const int n = g.dim();
    const double h = 0.5 * n;
    const double M = g.moment_integral_value();
    // c_n (2 pi)^{n/2} = Gamma(n/2) 2^{n/2} / M.
    const double base = std::exp(std::lgamma(h) + h * std::numbers::ln2) / M;
    OscillatoryOptions opt;
    opt.support = g.support_radius();
    opt.scale = g.scale();

    QuadResult r;
    double pref;
    QuadratureControl inner = ctl;
    if (n == 1) {
        pref = 2.0 / M;
        inner.abs_tol = ctl.abs_tol / pref;
        r = integrate_cosine_oscillatory([&](double v) { return g(v * v); }, u, inner, opt);
    } else {
        pref = base * std::pow(u, -(h - 1.0));
        inner.abs_tol = ctl.abs_tol / pref;
        r = integrate_bessel_oscillatory(
            [&](double v) {
                const double gv = g(v * v);
                return gv == 0.0 ? 0.0 : std::pow(v, h) * gv;
            },
            h - 1.0, u, inner, opt);
    }
    r.value *= pref;
    r.err_est *= pref;
    r.tail_bound *= pref;
    return r;
}

QuadResult phi_hankel(const DensityGenerator& g, double u, const QuadratureControl& ctl)
{
    if (!(u >= 0.0)) throw DomainError("phi_hankel: u must be >= 0");
    if (u == 0.0) return {1.0, 0.0, 0, 0.0};
    if (u < kSeriesSwitch && !g.tail_power()) {
        try {
            return phi_hankel_series(g, u, ctl);
        } catch (const MomentDoesNotExist&) {
        } catch (const ConvergenceError&) {
        }
    }
    return phi_hankel_oscillatory(g, u, ctl);
}

}  // namespace ellcf::quad
