#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/quadrature.hpp"
#include "ellcf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace ellcf::quad {
namespace {

constexpr int kMaxWindow = 20;

// Iterated averaging of consecutive partial sums (the Euler transform of
// the underlying alternating series).
double iterated_average(std::vector<double> s)
{
    while (s.size() > 1) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
        s.pop_back();
    }
    return s.front();
}

template <class Kernel, class NextBoundary>
QuadResult panel_sum(const Envelope& f, Kernel&& kernel, NextBoundary&& next_boundary, const QuadratureControl& ctl,
                     const OscillatoryOptions& opt)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!(ctl.abs_tol > 0.0) || !(ctl.rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    const AdaptiveOptions aopt{0.01 * ctl.abs_tol, 0.01 * ctl.rel_tol, 2000};
    auto integrand = [&](double r) {
        const double e = f(r);
        return e == 0.0 ? 0.0 : e * kernel(r);
    };

    std::vector<double> partial;
    double sum = 0.0;
    double gk_err = 0.0;
    double abs_sum = 0.0;
    double prev_env = std::numeric_limits<double>::infinity();
    double prev_b = 0.0;
    int monotone = 0;
    // Previous two accelerated estimates; NaN when not yet available.
    double acc1 = std::nan(""), acc2 = std::nan("");
    double accel_diff = 0.0;

    QuadResult out;
    double a = 0.0;
    bool done = false;
    while (!done) {
        if (out.panels_used >= ctl.max_panels) {
            throw ConvergenceError("oscillatory quadrature: envelope did not decay within " +
                                   std::to_string(ctl.max_panels) + " panels");
        }
        double b = next_boundary();
        bool last = false;
        if (b >= opt.support) {
            b = opt.support;
            last = true;
        }
        // Compact support often comes with an endpoint singularity, so the
        // final panel ends with an edge-adapted substitution.
        const double split = last ? a + 0.5 * (b - a) : b;
        std::vector<double> breaks{a};
        for (double p = std::ldexp(opt.scale, -40); p < split; p *= 2.0) {
            if (p > a) breaks.push_back(p);
        }
        breaks.push_back(split);
        auto r = integrate_adaptive<double>(integrand, std::span<const double>(breaks), aopt);
        if (last) {
            const auto e = integrate_to_edge<double>(integrand, split, b, aopt);
            r.value += e.value;
            r.error += e.error;
            r.abs_integral += e.abs_integral;
        }
        sum += r.value;
        gk_err += r.error;
        abs_sum += r.abs_integral;
        partial.push_back(sum);
        ++out.panels_used;
        const double width = b - prev_b;
        prev_b = b;
        a = b;
        if (last) {
            out.value = sum;
            break;
        }

        const double env = std::abs(f(b));
        const double ratio = env / prev_env;
        monotone = env < prev_env ? monotone + 1 : 0;
        prev_env = env;
        const double target = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(sum));
        const double tail_est = env * width;
        if (tail_est <= ctl.tail_cutoff * std::max(1.0, abs_sum) || (monotone >= 2 && tail_est <= 0.01 * target)) {
            out.value = sum;
            out.tail_bound = tail_est;
            break;
        }
        if (!std::isfinite(opt.support) && monotone >= 4 && ratio > 0.3) {
            const int m = std::min({kMaxWindow, monotone, static_cast<int>(partial.size())});
            const double acc = iterated_average(std::vector<double>(partial.end() - m, partial.end()));
            if (std::abs(acc - acc1) <= 0.25 * target && std::abs(acc1 - acc2) <= target) {
                out.value = acc;
                accel_diff = std::abs(acc - acc1);
                done = true;
            }
            acc2 = acc1;
            acc1 = acc;
        } else {
            acc1 = acc2 = std::nan("");
        }
    }
    out.err_est = gk_err + accel_diff + out.tail_bound + 10.0 * eps * abs_sum;
    if (!std::isfinite(out.value)) throw ConvergenceError("oscillatory quadrature produced a non-finite value");
    if (out.err_est > ctl.abs_tol + ctl.rel_tol * std::abs(out.value)) {
        throw ConvergenceError("oscillatory quadrature: error estimate " + std::to_string(out.err_est) +
                               " exceeds tolerance");
    }
    return out;
}

}  // namespace

QuadResult integrate_bessel_oscillatory(const Envelope& f, double nu, double omega, const QuadratureControl& ctl,
                                        const OscillatoryOptions& opt)
{
    if (!(omega > 0.0)) throw DomainError("integrate_bessel_oscillatory: omega must be > 0");
    if (nu < -0.5) throw DomainError("integrate_bessel_oscillatory: nu must be >= -1/2");
    specfun::BesselZeroSequence zeros(nu);
    return panel_sum(
        f, [&](double r) { return specfun::bessel_j(nu, omega * r); }, [&] { return zeros.next() / omega; }, ctl,
        opt);
}

QuadResult integrate_cosine_oscillatory(const Envelope& f, double omega, const QuadratureControl& ctl,
                                        const OscillatoryOptions& opt)
{
    if (!(omega > 0.0)) throw DomainError("integrate_cosine_oscillatory: omega must be > 0");
    int k = 0;
    return panel_sum(
        f, [&](double r) { return std::cos(omega * r); },
        [&] {
            ++k;
            return (k - 0.5) * std::numbers::pi / omega;
        },
        ctl, opt);
}

}  // namespace ellcf::quad
