#include "ellcf/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ellcf::specfun {

double dawson(double x)
{
    const double ax = std::abs(x);
    if (ax < 0.2) {
        // D(x) = sum_k (-1)^k 2^k x^{2k+1} / (2k+1)!!
        const double x2 = x * x;
        double term = x;
        double sum = x;
        for (int k = 1; k < 30; ++k) {
            term *= -2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    // Rybicki's sampling formula D(x) = lim_{h->0} pi^{-1/2} sum_{n odd} exp(-(x-nh)^2)/n.
    // With h = 0.2 the discretisation error is below exp(-(pi/2h)^2) ~ 1e-27.
    constexpr double h = 0.2;
    const long lo = static_cast<long>(std::floor((ax - 7.0) / h)) - 1;
    const long hi = static_cast<long>(std::ceil((ax + 7.0) / h)) + 1;
    double sum = 0.0;
    for (long n = lo; n <= hi; ++n) {
        if (n % 2 == 0) continue;
        const double d = ax - n * h;
        sum += std::exp(-d * d) / static_cast<double>(n);
    }
    const double d = sum / std::sqrt(std::numbers::pi);
    return x < 0.0 ? -d : d;
}

double ScaledPhi::imag() const
{
    if (imag_mantissa == 0.0) return 0.0;
    return imag_mantissa * std::exp(log_scale);
}

std::complex<double> ScaledPhi::value() const { return {real, imag()}; }

std::complex<double> ScaledPhi::centered_times_exp(double log_shift) const
{
    if (imag_mantissa == 0.0) return {0.0, 0.0};
    return {0.0, imag_mantissa * std::exp(log_scale + log_shift)};
}

ScaledPhi phi_imag(double y)
{
    ScaledPhi out;
    out.real = 0.5;
    out.imag_mantissa = dawson(y / std::numbers::sqrt2) / std::sqrt(std::numbers::pi);
    out.log_scale = 0.5 * y * y;
    out.overflow = !std::isfinite(out.log_scale);
    return out;
}

}  // namespace ellcf::specfun
