#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace ellcf::quad {

namespace detail {

// Kronrod 15-point extension of the 7-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v.real()) + std::abs(v.imag()); }
// Any other value type provides its own l1-style magnitude().
template <class T>
double magnitude(const T& v)
    requires requires { v.magnitude(); }
{
    return v.magnitude();
}

}  // namespace detail

template <class T>
struct GKEstimate {
    T value{};
    double error = 0.0;
    double abs_integral = 0.0;  // integral of |f|, used for roundoff floors
};

/// One application of the G7-K15 pair on [a, b], with the QUADPACK error
/// heuristic.
template <class T, class F>
GKEstimate<T> gauss_kronrod15(F&& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T fc = f(center);
    T kronrod = fc * detail::kWgk[7];
    T gauss = fc * detail::kWg[3];
    double resabs = detail::magnitude(fc) * detail::kWgk[7];
    std::array<T, 7> f1{};
    std::array<T, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * detail::kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const T pair = f1[j] + f2[j];
        kronrod += pair * detail::kWgk[j];
        resabs += detail::kWgk[j] * (detail::magnitude(f1[j]) + detail::magnitude(f2[j]));
        if (j % 2 == 1) {
            gauss += pair * detail::kWg[j / 2];
        }
    }
    const T mean = kronrod * 0.5;
    double resasc = detail::kWgk[7] * detail::magnitude(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        resasc += detail::kWgk[j] * (detail::magnitude(f1[j] - mean) + detail::magnitude(f2[j] - mean));
    }
    const double ah = std::abs(half);
    resabs *= ah;
    resasc *= ah;
    double err = detail::magnitude((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {kronrod * half, err, resabs};
}

struct AdaptiveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 1000;
};

template <class T>
struct AdaptiveResult {
    T value{};
    double error = 0.0;
    double abs_integral = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive G7-K15 integration over [breaks.front(), breaks.back()],
/// starting from the given partition and always bisecting the interval with
/// the largest error estimate.
template <class T, class F>
AdaptiveResult<T> integrate_adaptive(F&& f, std::span<const double> breaks, const AdaptiveOptions& opt = {})
{
    struct Piece {
        double a, b;
        GKEstimate<T> est;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) {
            pieces.push_back({breaks[i], breaks[i + 1], gauss_kronrod15<T>(f, breaks[i], breaks[i + 1])});
        }
    }
    auto totals = [&](T& value, double& err, double& abs_int) {
        value = T{};
        err = 0.0;
        abs_int = 0.0;
        for (const auto& p : pieces) {
            value += p.est.value;
            err += p.est.error;
            abs_int += p.est.abs_integral;
        }
    };
    AdaptiveResult<T> out;
    totals(out.value, out.error, out.abs_integral);
    while (true) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(out.value));
        if (out.error <= target) {
            out.converged = true;
            break;
        }
        if (static_cast<int>(pieces.size()) >= opt.max_intervals) {
            break;
        }
        auto worst = std::max_element(pieces.begin(), pieces.end(),
                                      [](const Piece& x, const Piece& y) { return x.est.error < y.est.error; });
        const double a = worst->a;
        const double b = worst->b;
        const double m = 0.5 * (a + b);
        if (!(m > a && m < b)) {
            break;  // interval exhausted at machine resolution
        }
        const auto left = gauss_kronrod15<T>(f, a, m);
        const auto right = gauss_kronrod15<T>(f, m, b);
        *worst = {a, m, left};
        pieces.push_back({m, b, right});
        totals(out.value, out.error, out.abs_integral);
    }
    out.intervals = static_cast<int>(pieces.size());
    return out;
}

template <class T, class F>
AdaptiveResult<T> integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {})
{
    const std::array<double, 2> breaks{a, b};
    return integrate_adaptive<T>(std::forward<F>(f), std::span<const double>(breaks), opt);
}

/// Integral over [a, inf) through x = a + s/(1-s), s in (0, 1).
template <class T, class F>
AdaptiveResult<T> integrate_semi_infinite(F&& f, double a, const AdaptiveOptions& opt = {})
{
    auto mapped = [&](double s) -> T {
        const double one_minus = 1.0 - s;
        const double x = a + s / one_minus;
        const T v = f(x);
        if (detail::magnitude(v) == 0.0) return T{};
        return v * (1.0 / (one_minus * one_minus));
    };
    // A few fixed breakpoints keep the bulk of the mass near s = 1/2 resolved.
    const std::array<double, 6> breaks{0.0, 0.25, 0.5, 0.75, 0.9, 1.0};
    return integrate_adaptive<T>(mapped, std::span<const double>(breaks), opt);
}

/// Integral over [a, b] through x = b - (b - a) w^2, which removes inverse
/// square-root singularities at b and weakens stronger ones.
template <class T, class F>
AdaptiveResult<T> integrate_to_edge(F&& f, double a, double b, const AdaptiveOptions& opt = {})
{
    const double len = b - a;
    auto mapped = [&](double w) -> T {
        const double x = b - len * w * w;
        if (x >= b) return T{};
        const T v = f(x);
        if (detail::magnitude(v) == 0.0) return T{};
        return v * (2.0 * len * w);
    };
    std::vector<double> breaks{0.0};
    for (int j = 30; j >= 1; --j) breaks.push_back(std::ldexp(1.0, -j));
    breaks.push_back(1.0);
    auto out = integrate_adaptive<T>(mapped, std::span<const double>(breaks), opt);
    // Below w_c the abscissa rounds to b, so that sliver is invisible to
    // the rule; charge its likely mass to the error estimate.
    const double wc = std::sqrt(2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(b), len) / len);
    if (wc < 1.0) out.error += 2.0 * wc * detail::magnitude(mapped(std::min(1.0, 2.0 * wc)));
    return out;
}

}  // namespace ellcf::quad
