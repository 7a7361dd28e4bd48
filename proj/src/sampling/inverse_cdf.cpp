#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace ellcf::sampling {
namespace {

constexpr double kTailMass = 1e-10;
constexpr double kInterpTol = 1e-11;
constexpr int kMaxDepth = 40;
constexpr quad::AdaptiveOptions kPieceOpts{1e-14, 1e-12, 200};

}  // namespace

TabulatedInverse::TabulatedInverse(std::function<double(double)> h, double lo, double hi, double scale)
{
    if (!h) throw DomainError("tabulated inverse: density is empty");
    if (!(hi > lo) || !(scale > 0.0)) throw DomainError("tabulated inverse: need lo < hi and scale > 0");
    auto dens = [&](double x) {
        const double v = h(x);
        return std::isfinite(v) ? v : 0.0;
    };
    auto mass = [&](double a, double b) { return quad::integrate_adaptive<double>(dens, a, b, kPieceOpts).value; };

    std::vector<double> grid{lo};
    double tail = 0.0;
    if (std::isfinite(hi)) {
        for (int j = 30; j >= 1; --j) grid.push_back(lo + std::ldexp(hi - lo, -j));
        for (int j = 2; j <= 30; ++j) grid.push_back(hi - std::ldexp(hi - lo, -j));
        grid.push_back(hi);
    } else {
        for (int j = -30; j <= 0; ++j) grid.push_back(lo + std::ldexp(scale, j));
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) acc += mass(grid[i], grid[i + 1]);
        for (int j = 1;; ++j) {
            const double x = lo + std::ldexp(scale, j);
            acc += mass(grid.back(), x);
            grid.push_back(x);
            const double X = x;
            tail = quad::integrate_semi_infinite<double>([&](double y) { return dens(X + (X - lo) * y) * (X - lo); },
                                                         0.0, quad::AdaptiveOptions{1e-15, 1e-10, 400})
                       .value;
            if (tail <= kTailMass * (acc + tail)) break;
            if (j > 1000) throw ConvergenceError("tabulated inverse: upper tail does not vanish");
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Refine each interval until the Hermite interpolant matches the CDF at the midpoint.
    struct Node {
        double x, F, f;
    };
    std::vector<Node> nodes{{grid[0], 0.0, dens(grid[0])}};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        struct Job {
            double a, b;
            int depth;
        };
        // Jobs complete left to right, so the last node is always the left end.
        std::vector<Job> stack{{grid[i], grid[i + 1], 0}};
        while (!stack.empty()) {
            const Job j = stack.back();
            stack.pop_back();
            const double Fa = nodes.back().F;
            const double fa = nodes.back().f;
            const double m = 0.5 * (j.a + j.b);
            const double left = mass(j.a, m);
            const double Fb = Fa + left + mass(m, j.b);
            const double fb = dens(j.b);
            double sa = fa;
            double sb = fb;
            const double secant = (Fb - Fa) / (j.b - j.a);
            if (!std::isfinite(sa)) sa = secant;
            if (!std::isfinite(sb)) sb = secant;
            const double hw = j.b - j.a;
            // Hermite at the midpoint: (Fa + Fb)/2 + hw (sa - sb)/8.
            const double interp = 0.5 * (Fa + Fb) + hw * (sa - sb) / 8.0;
            if (std::abs(interp - (Fa + left)) > kInterpTol && j.depth < kMaxDepth && m > j.a && m < j.b) {
                // Process the left half first so nodes come out in order.
                stack.push_back({m, j.b, j.depth + 1});
                stack.push_back({j.a, m, j.depth + 1});
                continue;
            }
            nodes.push_back({j.b, Fb, fb});
        }
    }
    const double total = nodes.back().F + tail;
    if (!(total > 0.0) || !std::isfinite(total)) throw DomainError("tabulated inverse: density has no mass");
    truncation_ = tail / total;
    for (const auto& nd : nodes) {
        x_.push_back(nd.x);
        F_.push_back(nd.F / total);
        f_.push_back(nd.f / total);
    }
}

double TabulatedInverse::hermite(std::size_t i, double x) const
{
    const double a = x_[i];
    const double b = x_[i + 1];
    const double hw = b - a;
    const double s = (x - a) / hw;
    const double secant = (F_[i + 1] - F_[i]) / hw;
    const double fa = std::isfinite(f_[i]) ? f_[i] : secant;
    const double fb = std::isfinite(f_[i + 1]) ? f_[i + 1] : secant;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * F_[i] + (s3 - 2 * s2 + s) * hw * fa + (-2 * s3 + 3 * s2) * F_[i + 1] +
           (s3 - s2) * hw * fb;
}

double TabulatedInverse::cdf(double x) const
{
    if (x <= x_.front()) return 0.0;
    if (x >= x_.back()) return F_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::clamp(hermite(i, x), F_[i], F_[i + 1]);
}

double TabulatedInverse::quantile(double p) const
{
    if (!(p > 0.0)) return x_.front();
    if (p >= F_.back()) return x_.back();
    const auto it = std::upper_bound(F_.begin(), F_.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - F_.begin()) - 1;
    double a = x_[i];
    double b = x_[i + 1];
    for (int k = 0; k < 80; ++k) {
        const double m = 0.5 * (a + b);
        if (!(m > a && m < b)) break;
        if (hermite(i, m) < p) {
            a = m;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace ellcf::sampling
