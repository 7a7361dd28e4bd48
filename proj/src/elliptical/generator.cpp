#include "ellcf/generator.hpp"

#include "ellcf/errors.hpp"
#include "ellcf/quadrature.hpp"
#include "ellcf/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace ellcf {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg)
{
    if (!ok) throw DomainError(msg);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double bessel_generator(const family::Bessel& p, double z)
{
    const double w = std::sqrt(z) / p.beta;
    if (w == 0.0) {
        if (p.a > 0.0) return std::exp((p.a - 1.0) * std::numbers::ln2 + std::lgamma(p.a));
        return std::numeric_limits<double>::infinity();
    }
    if (w > 740.0) return 0.0;
    return std::pow(w, p.a) * specfun::bessel_k(p.a, w);
}

}  // namespace

std::string to_string(Family f)
{
    switch (f) {
    case Family::Normal: return "normal";
    case Family::UniformBall: return "uniform_ball";
    case Family::GeneralizedT: return "generalized_t";
    case Family::PearsonII: return "pearson_ii";
    case Family::PearsonVII: return "pearson_vii";
    case Family::Kotz: return "kotz";
    case Family::Bessel: return "bessel";
    case Family::Custom: return "custom";
    }
    return "unknown";
}

DensityGenerator::DensityGenerator(int n, FamilyParams p) : n_(n), params_(std::move(p))
{
    require(n >= 1, "density generator: dimension must be >= 1");
}

DensityGenerator DensityGenerator::normal(int n)
{
    DensityGenerator g(n, family::Normal{});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::uniform_ball(int n)
{
    DensityGenerator g(n, family::UniformBall{});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::generalized_t(int n, double s, double m)
{
    require(s > 0.0, "generalized_t: scale s must be > 0");
    require(m >= 1.0 && m == std::floor(m), "generalized_t: m must be a positive integer");
    DensityGenerator g(n, family::GeneralizedT{s, m});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::pearson_ii(int n, double m)
{
    require(m > -1.0, "pearson_ii: m must be > -1");
    DensityGenerator g(n, family::PearsonII{m});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::pearson_vii(int n, double N, double s)
{
    require(s > 0.0, "pearson_vii: s must be > 0");
    require(N > 0.5 * n, "pearson_vii: N must exceed n/2");
    DensityGenerator g(n, family::PearsonVII{N, s});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::kotz(int n, double N, double r, double s)
{
    require(r > 0.0, "kotz: r must be > 0");
    require(s > 0.0, "kotz: s must be > 0");
    require(2.0 * N + n > 2.0, "kotz: requires 2N + n > 2");
    DensityGenerator g(n, family::Kotz{N, r, s});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::bessel(int n, double a, double beta)
{
    require(beta > 0.0, "bessel: beta must be > 0");
    require(a > -0.5 * n, "bessel: a must exceed -n/2");
    DensityGenerator g(n, family::Bessel{a, beta});
    g.init_moment();
    return g;
}

DensityGenerator DensityGenerator::custom(int n, family::Custom def)
{
    require(static_cast<bool>(def.g), "custom generator: g is empty");
    require(def.support_radius > 0.0, "custom generator: support radius must be > 0");
    require(def.scale > 0.0 && std::isfinite(def.scale), "custom generator: scale must be finite and > 0");
    DensityGenerator g(n, std::move(def));
    g.init_moment();
    return g;
}

Family DensityGenerator::family() const { return static_cast<Family>(params_.index()); }

void DensityGenerator::init_moment()
{
    const double h = 0.5 * n_;
    const double lg_h = std::lgamma(h);
    moment_ = std::visit(
        Overloaded{
            [&](const family::Normal&) { return std::exp(h * std::numbers::ln2 + lg_h); },
            [&](const family::UniformBall&) { return 2.0 / n_; },
            [&](const family::GeneralizedT& p) {
                return std::exp(h * std::log(p.s) + lg_h + std::lgamma(0.5 * p.m) - std::lgamma(0.5 * (n_ + p.m)));
            },
            [&](const family::PearsonII& p) {
                return std::exp(lg_h + std::lgamma(p.m + 1.0) - std::lgamma(h + p.m + 1.0));
            },
            [&](const family::PearsonVII& p) {
                return std::exp(h * std::log(p.s) + lg_h + std::lgamma(p.N - h) - std::lgamma(p.N));
            },
            [&](const family::Kotz& p) {
                const double e = (2.0 * p.N + n_ - 2.0) / (2.0 * p.s);
                return std::exp(std::lgamma(e) - e * std::log(p.r)) / p.s;
            },
            [&](const family::Bessel& p) {
                return std::exp((n_ + p.a - 1.0) * std::numbers::ln2 + n_ * std::log(p.beta) + lg_h +
                                std::lgamma(h + p.a));
            },
            [&](const family::Custom&) {
                const auto res = quad::moment_integral(*this);
                if (!(res.value > 0.0) || !std::isfinite(res.value)) {
                    throw DomainError("custom generator: moment integral is not finite and positive");
                }
                return res.value;
            },
        },
        params_);
}

double DensityGenerator::operator()(double z) const
{
    if (z < 0.0) return 0.0;
    return std::visit(
        Overloaded{
            [&](const family::Normal&) { return std::exp(-0.5 * z); },
            [&](const family::UniformBall&) { return z <= 1.0 ? 1.0 : 0.0; },
            [&](const family::GeneralizedT& p) { return std::pow(1.0 + z / p.s, -0.5 * (n_ + p.m)); },
            [&](const family::PearsonII& p) {
                if (z < 1.0) return std::pow(1.0 - z, p.m);
                return (z == 1.0 && p.m == 0.0) ? 1.0 : 0.0;
            },
            [&](const family::PearsonVII& p) { return std::pow(1.0 + z / p.s, -p.N); },
            [&](const family::Kotz& p) {
                if (z == 0.0) {
                    if (p.N == 1.0) return 1.0;
                    return p.N > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
                }
                return std::exp((p.N - 1.0) * std::log(z) - p.r * std::pow(z, p.s));
            },
            [&](const family::Bessel& p) { return bessel_generator(p, z); },
            [&](const family::Custom& p) {
                if (std::sqrt(z) > p.support_radius) return 0.0;
                return p.g(z);
            },
        },
        params_);
}

bool DensityGenerator::has_derivative() const
{
    if (const auto* c = std::get_if<family::Custom>(&params_)) {
        return static_cast<bool>(c->g_prime);
    }
    return true;
}

double DensityGenerator::derivative(double z) const
{
    if (z < 0.0) return 0.0;
    return std::visit(
        Overloaded{
            [&](const family::Normal&) { return -0.5 * std::exp(-0.5 * z); },
            [&](const family::UniformBall&) { return 0.0; },
            [&](const family::GeneralizedT& p) {
                const double N = 0.5 * (n_ + p.m);
                return -(N / p.s) * std::pow(1.0 + z / p.s, -N - 1.0);
            },
            [&](const family::PearsonII& p) {
                if (z >= 1.0 || p.m == 0.0) return 0.0;
                return -p.m * std::pow(1.0 - z, p.m - 1.0);
            },
            [&](const family::PearsonVII& p) { return -(p.N / p.s) * std::pow(1.0 + z / p.s, -p.N - 1.0); },
            [&](const family::Kotz& p) {
                if (z == 0.0) {
                    if (p.N == 2.0) return 1.0;
                    if (p.N == 1.0) return p.s == 1.0 ? -p.r : (p.s > 1.0 ? 0.0 : -std::numeric_limits<double>::infinity());
                    return p.N > 2.0 ? 0.0 : std::numeric_limits<double>::infinity() * (p.N > 1.0 ? 1.0 : -1.0);
                }
                const double zs = std::pow(z, p.s);
                return std::exp((p.N - 2.0) * std::log(z) - p.r * zs) * ((p.N - 1.0) - p.r * p.s * zs);
            },
            [&](const family::Bessel& p) {
                // d/dz (w^a K_a(w)) with w = sqrt(z)/beta equals -w^{a-1} K_{a-1}(w) / (2 beta^2).
                const double w = std::sqrt(z) / p.beta;
                if (w > 740.0) return 0.0;
                if (w == 0.0) {
                    if (p.a > 1.0) {
                        return -std::exp((p.a - 2.0) * std::numbers::ln2 + std::lgamma(p.a - 1.0)) /
                               (2.0 * p.beta * p.beta);
                    }
                    return -std::numeric_limits<double>::infinity();
                }
                return -std::pow(w, p.a - 1.0) * specfun::bessel_k(p.a - 1.0, w) / (2.0 * p.beta * p.beta);
            },
            [&](const family::Custom& p) {
                if (!p.g_prime) throw DomainError("custom generator has no derivative");
                if (std::sqrt(z) > p.support_radius) return 0.0;
                return p.g_prime(z);
            },
        },
        params_);
}

double DensityGenerator::support_radius() const
{
    switch (family()) {
    case Family::UniformBall:
    case Family::PearsonII: return 1.0;
    case Family::Custom: return std::get<family::Custom>(params_).support_radius;
    default: return std::numeric_limits<double>::infinity();
    }
}

double DensityGenerator::scale() const
{
    return std::visit(Overloaded{
                          [](const family::GeneralizedT& p) { return std::sqrt(p.s); },
                          [](const family::PearsonVII& p) { return std::sqrt(p.s); },
                          [](const family::Kotz& p) { return std::pow(p.r, -0.5 / p.s); },
                          [](const family::Bessel& p) { return p.beta; },
                          [](const family::Custom& p) { return p.scale; },
                          [](const auto&) { return 1.0; },
                      },
                      params_);
}

std::optional<double> DensityGenerator::tail_power() const
{
    return std::visit(Overloaded{
                          [&](const family::GeneralizedT& p) -> std::optional<double> { return 0.5 * (n_ + p.m); },
                          [](const family::PearsonVII& p) -> std::optional<double> { return p.N; },
                          [](const family::Custom& p) { return p.tail_power; },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      params_);
}

std::string DensityGenerator::describe() const
{
    const std::string head = to_string(family()) + "[n=" + std::to_string(n_);
    return std::visit(Overloaded{
                          [&](const family::GeneralizedT& p) { return head + ",s=" + fmt(p.s) + ",m=" + fmt(p.m) + "]"; },
                          [&](const family::PearsonII& p) { return head + ",m=" + fmt(p.m) + "]"; },
                          [&](const family::PearsonVII& p) { return head + ",N=" + fmt(p.N) + ",s=" + fmt(p.s) + "]"; },
                          [&](const family::Kotz& p) {
                              return head + ",N=" + fmt(p.N) + ",r=" + fmt(p.r) + ",s=" + fmt(p.s) + "]";
                          },
                          [&](const family::Bessel& p) { return head + ",a=" + fmt(p.a) + ",beta=" + fmt(p.beta) + "]"; },
                          [&](const family::Custom& p) { return head + ",name=" + p.name + "]"; },
                          [&](const auto&) { return head + "]"; },
                      },
                      params_);
}

}  // namespace ellcf
