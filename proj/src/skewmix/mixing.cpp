#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/skewmix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace ellcf::skew {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// f(x) h(x) and h(x) integrated together on the same panels.
struct Pair {
    std::complex<double> f{};
    double w = 0.0;

    Pair& operator+=(const Pair& o)
    {
        f += o.f;
        w += o.w;
        return *this;
    }
    friend Pair operator+(Pair a, const Pair& b) { return a += b; }
    friend Pair operator-(const Pair& a, const Pair& b) { return {a.f - b.f, a.w - b.w}; }
    friend Pair operator*(const Pair& a, double s) { return {a.f * s, a.w * s}; }
    double magnitude() const { return std::abs(f.real()) + std::abs(f.imag()) + std::abs(w); }
};

constexpr quad::AdaptiveOptions kMixOpts{1e-8, 1e-10, 4000};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class Density>
quad::AdaptiveResult<Pair> integrate_law(const Density& h, double lo, double hi, double scale,
                                         const std::function<std::complex<double>(double)>& f)
{
    auto integrand = [&](double x) -> Pair {
        const double d = h(x);
        if (d == 0.0) return {};
        return {f(x) * d, d};
    };
    if (std::isfinite(hi)) {
        std::vector<double> breaks{lo};
        for (int j = 30; j >= 1; --j) breaks.push_back(lo + std::ldexp(hi - lo, -j));
        breaks.push_back(hi);
        return quad::integrate_adaptive<Pair>(integrand, std::span<const double>(breaks), kMixOpts);
    }
    auto scaled = [&](double y) -> Pair { return integrand(lo + scale * y) * scale; };
    return quad::integrate_semi_infinite<Pair>(scaled, 0.0, kMixOpts);
}

double inverse_gamma_density(const mixing::InverseGamma& p, double x)
{
    if (x <= 0.0) return 0.0;
    const double lx = std::log(x);
    return std::exp(p.shape * std::log(p.scale) - std::lgamma(p.shape) - (p.shape + 1.0) * lx - p.scale / x);
}

void validate(const MixingKind& kind)
{
    std::visit(Overloaded{
                   [](const mixing::Degenerate& d) {
                       if (!(d.v0 >= 0.0) || !std::isfinite(d.v0)) {
                           throw DomainError("degenerate mixing: v0 must be finite and >= 0");
                       }
                   },
                   [](const mixing::FiniteDiscrete& d) {
                       if (d.points.empty() || d.points.size() != d.weights.size()) {
                           throw DomainError("finite_discrete mixing: points and weights must be non-empty and of equal length");
                       }
                       for (std::size_t i = 0; i < d.points.size(); ++i) {
                           if (!(d.points[i] >= 0.0) || !std::isfinite(d.points[i])) {
                               throw DomainError("finite_discrete mixing: points must be finite and >= 0");
                           }
                           if (!(d.weights[i] >= 0.0)) throw DomainError("finite_discrete mixing: weights must be >= 0");
                       }
                       const double total = std::accumulate(d.weights.begin(), d.weights.end(), 0.0);
                       if (std::abs(total - 1.0) > 1e-12) {
                           throw DomainError("finite_discrete mixing: weights sum to " + fmt(total) + ", not 1");
                       }
                   },
                   [](const mixing::InverseGamma& d) {
                       if (!(d.shape > 0.0) || !(d.scale > 0.0)) {
                           throw DomainError("inverse_gamma mixing: shape and scale must be > 0");
                       }
                   },
                   [](const mixing::CustomDensity& d) {
                       if (!d.h) throw DomainError("custom mixing density is empty");
                       if (!(d.lo >= 0.0) || !(d.hi > d.lo) || !(d.scale > 0.0)) {
                           throw DomainError("custom mixing density: need 0 <= lo < hi and scale > 0");
                       }
                       const auto r = integrate_law(d.h, d.lo, d.hi, d.scale, [](double) { return 1.0; });
                       if (!r.converged || std::abs(r.value.w - 1.0) > 1e-8) {
                           throw DomainError("custom mixing density integrates to " + fmt(r.value.w) + ", not 1");
                       }
                   },
               },
               kind);
}

}  // namespace

MixingLaw::MixingLaw(MixingKind kind, std::function<double(double)> weight)
    : kind_(std::move(kind)), weight_(std::move(weight))
{
    validate(kind_);
    if (weight_) {
        if (const auto* d = std::get_if<mixing::FiniteDiscrete>(&kind_)) {
            for (double p : d->points) {
                if (!(weight_(p) > 0.0)) throw DomainError("mixing weight function must be positive on the support");
            }
        } else if (const auto* d = std::get_if<mixing::Degenerate>(&kind_)) {
            if (!(weight_(d->v0) > 0.0)) throw DomainError("mixing weight function must be positive on the support");
        }
    }
}

MixingLaw MixingLaw::degenerate(double v0) { return MixingLaw(mixing::Degenerate{v0}); }

MixingLaw MixingLaw::finite_discrete(std::vector<double> points, std::vector<double> weights)
{
    return MixingLaw(mixing::FiniteDiscrete{std::move(points), std::move(weights)});
}

MixingLaw MixingLaw::inverse_gamma(double shape, double scale)
{
    return MixingLaw(mixing::InverseGamma{shape, scale});
}

MixingLaw MixingLaw::custom_density(std::function<double(double)> h, double lo, double hi, double scale)
{
    return MixingLaw(mixing::CustomDensity{std::move(h), lo, hi, scale});
}

MixingLaw MixingLaw::with_weight(std::function<double(double)> weight) const { return MixingLaw(kind_, std::move(weight)); }

double MixingLaw::lower_bound() const
{
    return std::visit(Overloaded{
                          [](const mixing::Degenerate& d) { return d.v0; },
                          [](const mixing::FiniteDiscrete& d) { return *std::min_element(d.points.begin(), d.points.end()); },
                          [](const mixing::InverseGamma&) { return 0.0; },
                          [](const mixing::CustomDensity& d) { return d.lo; },
                      },
                      kind_);
}

Expectation MixingLaw::expect(const std::function<std::complex<double>(double)>& f) const
{
    return std::visit(
        Overloaded{
            [&](const mixing::Degenerate& d) { return Expectation{f(d.v0), 0.0}; },
            [&](const mixing::FiniteDiscrete& d) {
                std::complex<double> sum{};
                double mass = 0.0;
                for (std::size_t i = 0; i < d.points.size(); ++i) {
                    if (d.weights[i] == 0.0) continue;
                    sum += d.weights[i] * f(d.points[i]);
                    mass += d.weights[i];
                }
                return Expectation{sum / mass, 0.0};
            },
            [&](const mixing::InverseGamma& d) {
                const auto r = integrate_law([&](double x) { return inverse_gamma_density(d, x); }, 0.0,
                                             std::numeric_limits<double>::infinity(), d.scale / (d.shape + 1.0), f);
                if (!r.converged) throw ConvergenceError("mixing quadrature did not converge for " + describe());
                return Expectation{r.value.f / r.value.w, r.error};
            },
            [&](const mixing::CustomDensity& d) {
                const auto r = integrate_law(d.h, d.lo, d.hi, d.scale, f);
                if (!r.converged) throw ConvergenceError("mixing quadrature did not converge for " + describe());
                return Expectation{r.value.f / r.value.w, r.error};
            },
        },
        kind_);
}

std::string MixingLaw::describe() const
{
    return std::visit(Overloaded{
                          [](const mixing::Degenerate& d) { return "degenerate(" + fmt(d.v0) + ")"; },
                          [](const mixing::FiniteDiscrete& d) {
                              std::string s = "finite_discrete(";
                              for (std::size_t i = 0; i < d.points.size(); ++i) {
                                  if (i) s += ",";
                                  s += fmt(d.points[i]) + ":" + fmt(d.weights[i]);
                              }
                              return s + ")";
                          },
                          [](const mixing::InverseGamma& d) {
                              return "inverse_gamma(" + fmt(d.shape) + "," + fmt(d.scale) + ")";
                          },
                          [](const mixing::CustomDensity& d) {
                              return "custom_density[" + fmt(d.lo) + "," + fmt(d.hi) + ")";
                          },
                      },
                      kind_);
}

}  // namespace ellcf::skew
