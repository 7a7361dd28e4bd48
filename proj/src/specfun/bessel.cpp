#include "ellcf/errors.hpp"
#include "ellcf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ellcf::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double j_series(double nu, double x)
{
    const double z = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    int k = 1;
    for (; k < 1000; ++k) {
        term *= z / (k * (nu + k));
        sum += term;
        if (std::abs(term) <= 0.25 * kEps * std::abs(sum) && k * (nu + k) > -z) {
            break;
        }
    }
    if (k == 1000) {
        throw ConvergenceError("bessel_j: power series did not converge");
    }
    return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0)) * sum;
}

// Hankel expansion. Returns false if the terms start growing before the
// requested accuracy is reached.
bool j_asymptotic(double nu, double x, double& out)
{
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (term == 0.0) {
            converged = true;
            break;
        }
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1) {
            q += sign * term;
        } else {
            p += sign * term;
        }
        const double mag = std::abs(term);
        if (mag <= 0.25 * kEps * std::max(std::abs(p), std::abs(q))) {
            converged = true;
            break;
        }
        if (mag > prev) {
            break;
        }
        prev = mag;
    }
    if (!converged) {
        return false;
    }
    // cos(x - phase) expanded so that x itself gets exact argument reduction.
    const double phase = (0.5 * nu + 0.25) * kPi;
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double cp = std::cos(phase);
    const double sp = std::sin(phase);
    const double cos_chi = cx * cp + sx * sp;
    const double sin_chi = sx * cp - cx * sp;
    out = std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
    return true;
}

double k_half_integer(double nu, double x)
{
    // nu = j + 1/2 with j >= 0.
    double km = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);  // K_{-1/2} = K_{1/2}
    double k = km;
    for (double v = 0.5; v < nu - 0.25; v += 1.0) {
        const double next = km + (2.0 * v / x) * k;
        km = k;
        k = next;
    }
    return k;
}

double log_cosh(double y)
{
    y = std::abs(y);
    return y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2;
}

}  // namespace

void bessel_jy_steed(double nu, double x, double& j, double& y)
{
    if (nu < 0.0 || x < 2.0) {
        throw DomainError("bessel_jy_steed: requires nu >= 0 and x >= 2");
    }
    constexpr int kMaxIt = 200000;
    constexpr double kTiny = 1e-300;
    constexpr double kTol = 1e-16;

    const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / kPi;

    // CF1: J'_nu / J_nu by the modified Lentz method.
    int isign = 1;
    double h = std::max(nu * xi, kTiny);
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int it = 0;
    for (; it < kMaxIt; ++it) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kTol) break;
    }
    if (it == kMaxIt) {
        throw ConvergenceError("bessel_jy_steed: CF1 did not converge, x=" + std::to_string(x));
    }

    double rjl = isign * kTiny;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double tmp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * tmp - rjl;
        rjl = tmp;
    }
    if (rjl == 0.0) rjl = kTol;
    const double f = rjpl / rjl;

    // CF2: p + iq = (J' + iY')/(J + iY) at order xmu.
    double a = 0.25 - xmu2;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    fact = a * xi / (p * p + q * q);
    double cr = br + q * fact;
    double ci = bi + p * fact;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double tmp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = tmp;
    for (it = 1; it < kMaxIt; ++it) {
        a += 2 * it;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        tmp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = tmp;
        if (std::abs(dlr - 1.0) + std::abs(dli) <= kTol) break;
    }
    if (it == kMaxIt) {
        throw ConvergenceError("bessel_jy_steed: CF2 did not converge, x=" + std::to_string(x));
    }

    const double gam = (p - f) / q;
    double rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    double rymu = rjmu * gam;
    const double rymup = rymu * (p + q / gam);
    double ry1 = xmu * xi * rymu - rymup;

    j = rjl1 * (rjmu / rjl);
    for (int i = 1; i <= nl; ++i) {
        const double next = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = next;
    }
    y = rymu;
}

double bessel_j(double nu, double x)
{
    if (!(nu > -1.0) || !std::isfinite(nu)) {
        throw DomainError("bessel_j: order must satisfy nu > -1, got " + std::to_string(nu));
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
    }
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (x * x <= 4.0 * std::max(1.0, nu + 1.0)) {
        return j_series(nu, x);
    }
    if (x >= 25.0 + 0.5 * nu * nu) {
        double v = 0.0;
        if (j_asymptotic(nu, x, v)) {
            return v;
        }
    }
    double j = 0.0;
    double y = 0.0;
    if (nu >= 0.0) {
        bessel_jy_steed(nu, x, j, y);
        return j;
    }
    // J_{-mu} = cos(mu pi) J_mu - sin(mu pi) Y_mu.
    const double mu = -nu;
    bessel_jy_steed(mu, x, j, y);
    return std::cos(mu * kPi) * j - std::sin(mu * kPi) * y;
}

double bessel_k_integral(double nu, double x)
{
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: argument must be > 0, got " + std::to_string(x));
    }
    nu = std::abs(nu);
    // Step size tied to the width of the integrand's peak; the trapezoidal
    // error decays like exp(-c/h) for this entire function.
    const double h = 0.5 * std::min(0.1, 0.5 / std::sqrt(x));
    double sum = 0.5;  // t = 0 term of exp(-x (cosh t - 1)) cosh(nu t)
    double prev = sum;
    for (int k = 1; k < 1000000; ++k) {
        const double t = k * h;
        const double term = std::exp(-x * (std::cosh(t) - 1.0) + log_cosh(nu * t));
        sum += term;
        if (term <= 1e-18 * sum && term <= prev) {
            return h * sum * std::exp(-x);
        }
        prev = term;
    }
    throw ConvergenceError("bessel_k: trapezoidal sum did not converge");
}

double bessel_k(double nu, double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("bessel_k: argument must be > 0, got " + std::to_string(x));
    }
    if (!std::isfinite(nu)) {
        throw DomainError("bessel_k: non-finite order");
    }
    nu = std::abs(nu);
    const double twice = 2.0 * nu;
    if (twice == std::floor(twice) && std::fmod(twice, 2.0) == 1.0 && nu < 60.0) {
        return k_half_integer(nu, x);
    }
    return bessel_k_integral(nu, x);
}

BesselZeroSequence::BesselZeroSequence(double nu) : nu_(nu)
{
    if (!(nu >= -0.5)) {
        throw DomainError("bessel_j_zero: order must be >= -1/2");
    }
}

double BesselZeroSequence::next()
{
    constexpr double kStep = 0.5;
    double a = count_ == 0 ? std::max(nu_, 0.25) : last_ + 1.0;
    double fa = bessel_j(nu_, a);
    double b = a;
    double fb = fa;
    int steps = 0;
    while (true) {
        b = a + kStep;
        fb = bessel_j(nu_, b);
        if ((fa > 0.0) != (fb > 0.0) || fb == 0.0) break;
        a = b;
        fa = fb;
        if (++steps > 100000) {
            throw ConvergenceError("bessel_j_zero: failed to bracket a sign change");
        }
    }
    if (fb != 0.0) {
        for (int it = 0; it < 200 && (b - a) > 2.0 * kEps * b; ++it) {
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;
            const double fm = bessel_j(nu_, m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
    }
    last_ = 0.5 * (a + b);
    ++count_;
    return last_;
}

std::vector<double> bessel_j_zeros(double nu, int count)
{
    BesselZeroSequence seq(nu);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
        out.push_back(seq.next());
    }
    return out;
}

double bessel_j_zero(double nu, int k)
{
    if (k < 1) {
        throw DomainError("bessel_j_zero: index must be >= 1");
    }
    return bessel_j_zeros(nu, k).back();
}

}  // namespace ellcf::specfun
