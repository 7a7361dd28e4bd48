#include "ellcf/errors.hpp"
#include "ellcf/specfun.hpp"

#include <cmath>
#include <string>

namespace ellcf::specfun {
namespace {

void require_not_pole(double c, const char* who)
{
    if (c <= 0.0 && c == std::floor(c)) {
        throw DomainError(std::string(who) + ": lower parameter is a non-positive integer");
    }
}

double unwrap(const SpecialValue<double>& v, const char* who)
{
    if (!v.converged) {
        throw ConvergenceError(std::string(who) + ": series did not converge after " +
                               std::to_string(v.terms_used) + " terms");
    }
    return v.value;
}

}  // namespace

SpecialValue<double> hyp0f1_series(double gamma, double z, const SeriesControl& ctl)
{
    require_not_pole(gamma, "hyp0f1");
    SpecialValue<double> out{1.0, 1, false};
    double term = 1.0;
    for (int k = 1; k < ctl.max_terms; ++k) {
        term *= z / ((gamma + k - 1) * k);
        out.value += term;
        out.terms_used = k + 1;
        // Only stop once terms are shrinking for good.
        const bool past_peak = std::abs((gamma + k) * (k + 1)) > std::abs(z);
        if (past_peak && std::abs(term) <= ctl.rel_tol * std::abs(out.value)) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

double hyp0f1(double gamma, double z, const SeriesControl& ctl)
{
    require_not_pole(gamma, "hyp0f1");
    if (z == 0.0) {
        return 1.0;
    }
    if (z < -12.0 && gamma > 0.0) {
        const double x = 2.0 * std::sqrt(-z);
        const double log_pref = std::lgamma(gamma) + (1.0 - gamma) * std::log(0.5 * x);
        return std::exp(log_pref) * bessel_j(gamma - 1.0, x);
    }
    return unwrap(hyp0f1_series(gamma, z, ctl), "hyp0f1");
}

SpecialValue<double> hyp1f1_series(double a, double c, double z, const SeriesControl& ctl)
{
    require_not_pole(c, "hyp1f1");
    SpecialValue<double> out{1.0, 1, false};
    double term = 1.0;
    for (int k = 1; k < ctl.max_terms; ++k) {
        term *= (a + k - 1) * z / ((c + k - 1) * k);
        out.value += term;
        out.terms_used = k + 1;
        if (term == 0.0) {
            out.converged = true;  // terminating polynomial
            return out;
        }
        const bool past_peak = std::abs((a + k) * z) < std::abs((c + k) * (k + 1));
        if (past_peak && std::abs(term) <= ctl.rel_tol * std::abs(out.value)) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

double hyp1f1(double a, double c, double z, const SeriesControl& ctl)
{
    require_not_pole(c, "hyp1f1");
    if (z == 0.0) {
        return 1.0;
    }
    const bool a_polynomial = a <= 0.0 && a == std::floor(a);
    if (z < -1.0 && !a_polynomial) {
        return std::exp(z) * unwrap(hyp1f1_series(c - a, c, -z, ctl), "hyp1f1");
    }
    return unwrap(hyp1f1_series(a, c, z, ctl), "hyp1f1");
}

}  // namespace ellcf::specfun
