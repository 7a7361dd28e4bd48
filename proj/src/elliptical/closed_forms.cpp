#include "ellcf/elliptical.hpp"
#include "ellcf/errors.hpp"
#include "ellcf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ellcf::closed {
namespace {

// x^a K_a(x) / (2^{a-1} Gamma(a)), which is 1 at x = 0 for a > 0.
double scaled_k(double a, double x)
{
    if (x == 0.0) return 1.0;
    if (x > 745.0) return 0.0;
    const double logv = a * std::log(x) - (a - 1.0) * std::numbers::ln2 - std::lgamma(a);
    return std::exp(logv) * specfun::bessel_k(a, x);
}

// 2^b Gamma(b+1) x^{-b} J_b(x), which is 1 at x = 0.
double scaled_j(double b, double x)
{
    if (x == 0.0) return 1.0;
    const double logc = b * std::numbers::ln2 + std::lgamma(b + 1.0) - b * std::log(x);
    return std::exp(logc) * specfun::bessel_j(b, x);
}

}  // namespace

double normal(double Q) { return std::exp(-0.5 * Q); }

double uniform_ball(int n, double Q) { return specfun::hyp0f1(0.5 * n + 1.0, -0.25 * Q); }

double uniform_ball_bessel(int n, double Q) { return scaled_j(0.5 * n, std::sqrt(Q)); }

double generalized_t(double s, double m, double Q) { return scaled_k(0.5 * m, std::sqrt(s * Q)); }

double cauchy(double Q) { return std::exp(-std::sqrt(Q)); }

double pearson_ii_hyp(int n, double m, double Q) { return specfun::hyp0f1(0.5 * n + m + 1.0, -0.25 * Q); }

double pearson_ii_bessel(int n, double m, double Q) { return scaled_j(0.5 * n + m, std::sqrt(Q)); }

double pearson_vii(int n, double N, double s, double Q) { return scaled_k(N - 0.5 * n, std::sqrt(s * Q)); }

double kotz_s1(int n, double N, double r, double Q)
{
    return specfun::hyp1f1(0.5 * n + N - 1.0, 0.5 * n, -Q / (4.0 * r));
}

double kotz_s_half(int n, double N, double r, double Q)
{
    const double logc = (n - 1.0) * std::numbers::ln2 + std::lgamma(0.5 * n) + std::lgamma(0.5 * (n + 1.0)) +
                        (2.0 * N + n - 1.0) * std::log(r) - 0.5 * std::log(std::numbers::pi) -
                        std::lgamma(2.0 * N + n - 2.0);
    return std::exp(logc - 0.5 * (n + 1.0) * std::log(r * r + Q));
}

double kotz_s_half_2d(double r, double Q) { return r * r * r / std::pow(r * r + Q, 1.5); }

double bessel(int n, double a, double beta, double Q) { return std::pow(1.0 + beta * beta * Q, -(0.5 * n + a)); }

}  // namespace ellcf::closed

namespace ellcf {

std::optional<double> phi_closed(const DensityGenerator& g, double Q)
{
    if (std::isnan(Q)) throw DomainError("phi_closed: Q is NaN");
    Q = std::max(Q, 0.0);
    const int n = g.dim();
    const auto& p = g.params();
    std::optional<double> out;
    switch (g.family()) {
    case Family::Normal: out = closed::normal(Q); break;
    case Family::UniformBall: out = closed::uniform_ball(n, Q); break;
    case Family::GeneralizedT: {
        const auto& q = std::get<family::GeneralizedT>(p);
        out = closed::generalized_t(q.s, q.m, Q);
        break;
    }
    case Family::PearsonII: out = closed::pearson_ii_hyp(n, std::get<family::PearsonII>(p).m, Q); break;
    case Family::PearsonVII: {
        const auto& q = std::get<family::PearsonVII>(p);
        out = closed::pearson_vii(n, q.N, q.s, Q);
        break;
    }
    case Family::Kotz: {
        const auto& q = std::get<family::Kotz>(p);
        if (q.s == 1.0) {
            out = closed::kotz_s1(n, q.N, q.r, Q);
        } else if (q.s == 0.5 && q.N == 1.0) {
            out = closed::kotz_s_half(n, q.N, q.r, Q);
        }
        break;
    }
    case Family::Bessel: {
        const auto& q = std::get<family::Bessel>(p);
        out = closed::bessel(n, q.a, q.beta, Q);
        break;
    }
    case Family::Custom: break;
    }
    if (out && Q == 0.0) out = 1.0;
    return out;
}

}  // namespace ellcf
