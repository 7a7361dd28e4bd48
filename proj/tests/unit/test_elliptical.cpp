#include "ellcf/elliptical.hpp"
#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace ellcf;

namespace {

const double kPi = std::acos(-1.0);

double integrate_radial(const DensityGenerator& g)
{
    const double R = g.support_radius();
    auto h = [&](double v) { return radial_density(g, v); };
    if (std::isfinite(R)) {
        const std::array<double, 3> br{0.0, R / 2, R};
        return quad::integrate_adaptive<double>(h, std::span<const double>(br), {1e-12, 1e-12, 4000}).value;
    }
    return quad::integrate_semi_infinite<double>(h, 0.0, {1e-12, 1e-12, 4000}).value;
}

std::vector<DensityGenerator> named(int n)
{
    return {DensityGenerator::normal(n),
            DensityGenerator::uniform_ball(n),
            DensityGenerator::cauchy(n),
            DensityGenerator::generalized_t(n, 2.0, 3.0),
            DensityGenerator::pearson_ii(n, 1.0),
            DensityGenerator::pearson_ii(n, 0.0),
            DensityGenerator::pearson_vii(n, n / 2.0 + 1.0, 2.0),
            DensityGenerator::kotz(n, 2.0, 0.5, 1.0),
            DensityGenerator::kotz(n, 1.0, 1.0, 0.5),
            DensityGenerator::kotz(n, 1.5, 0.7, 2.0),
            DensityGenerator::bessel(n, 0.5, 1.0),
            DensityGenerator::bessel(n, -0.25, 0.8)};
}

Matrix random_psd(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> z;
    Matrix A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = z(rng);
    }
    Matrix S = A * A.transpose();
    return 0.5 * (S + S.transpose());
}

}  // namespace

TEST_CASE("generator parameter validation")
{
    CHECK_THROWS_AS(DensityGenerator::pearson_ii(2, -1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::pearson_vii(2, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::pearson_vii(2, 2.0, -1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::generalized_t(2, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(DensityGenerator::generalized_t(2, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::kotz(1, 0.5, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::kotz(2, 1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::bessel(2, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::bessel(2, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(DensityGenerator::normal(0), DomainError);
    CHECK(DensityGenerator::generalized_t(2, 1.0, 3.0).describe() == "generalized_t[n=2,s=1,m=3]");
}

TEST_CASE("normalizing constants")
{
    for (int n : {1, 2, 3, 5}) {
        CHECK(std::abs(normalizing_constant(DensityGenerator::normal(n)) / std::pow(2 * kPi, -n / 2.0) - 1) < 1e-13);
        const double ball = n * std::tgamma(n / 2.0) / (2 * std::pow(kPi, n / 2.0));
        CHECK(std::abs(normalizing_constant(DensityGenerator::uniform_ball(n)) / ball - 1) < 1e-13);
        const double N = 1.5, r = 0.7, s = 2.0;
        const double kotz = s * std::tgamma(n / 2.0) * std::pow(r, (2 * N + n - 2) / (2 * s)) /
                            (std::pow(kPi, n / 2.0) * std::tgamma((2 * N + n - 2) / (2 * s)));
        CHECK(std::abs(normalizing_constant(DensityGenerator::kotz(n, N, r, s)) / kotz - 1) < 1e-13);
    }
}

TEST_CASE("radial densities")
{
    const auto g1 = DensityGenerator::normal(1);
    for (double v : {0.0, 0.5, 2.0}) {
        CHECK(std::abs(radial_density(g1, v) - std::sqrt(2 / kPi) * std::exp(-v * v / 2)) < 1e-15);
    }
    for (int n : {1, 2, 3, 5}) {
        const auto ball = DensityGenerator::uniform_ball(n);
        CHECK(std::abs(radial_density(ball, 0.6) - n * std::pow(0.6, n - 1)) < 1e-13);
        CHECK(radial_density(ball, 1.2) == 0.0);
        for (const auto& g : named(n)) {
            INFO(g.describe());
            CHECK(std::abs(integrate_radial(g) - 1.0) < 1e-8);
        }
    }
    Matrix singular = Matrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    const EllipticalSpec spec(Vector::Zero(2), singular, DensityGenerator::normal(2));
    CHECK(spec.rank() == 1);
    CHECK_THROWS_AS(radial_density(spec, 1.0), DomainError);
}

TEST_CASE("omega_n")
{
    for (int n = 1; n <= 10; ++n) CHECK(omega_n(n, 0.0) == 1.0);
    CHECK(std::abs(omega_n(3, 1.0) - std::sin(1.0)) < 1e-15);
    CHECK(std::abs(omega_n(2, 2.404825557695773 * 2.404825557695773)) < 1e-12);
    for (int n = 1; n <= 10; ++n) {
        for (double s : {1e-8, 0.3, 4.0, 100.0, 900.0, 2500.0}) {
            CHECK(std::abs(omega_n(n, s) - specfun::hyp0f1(n / 2.0, -s / 4)) < 1e-11);
        }
    }
}

TEST_CASE("closed forms at reference points")
{
    CHECK(std::abs(*phi_closed(DensityGenerator::cauchy(2), 4.0) - 0.1353352832366127) < 1e-15);
    CHECK(std::abs(*phi_closed(DensityGenerator::normal(3), 1.0) - 0.6065306597126334) < 1e-15);
    CHECK(std::abs(*phi_closed(DensityGenerator::generalized_t(2, 1, 1), 1.0) - std::exp(-1.0)) < 1e-14);
    for (int n : {1, 2, 3}) {
        for (double Q : {0.1, 1.0, 9.0}) {
            const double m = 3, s = 2;
            CHECK(std::abs(*phi_closed(DensityGenerator::pearson_vii(n, (n + m) / 2, s), Q) -
                           *phi_closed(DensityGenerator::generalized_t(n, s, m), Q)) < 1e-12);
        }
        CHECK(*phi_closed(DensityGenerator::bessel(n, 0.5, 2.0), 0.0) == 1.0);
        for (const auto& g : named(n)) {
            if (const auto v = phi_closed(g, 0.0)) CHECK(*v == 1.0);
        }
    }
    // Generalised-t through K_{3/2}: (1 + x) e^{-x} at m = 3.
    const double x = std::sqrt(2.0 * 1.7);
    CHECK(std::abs(*phi_closed(DensityGenerator::generalized_t(2, 2.0, 3.0), 1.7) - (1 + x) * std::exp(-x)) < 1e-14);
    // Pearson II through the Boost J oracle.
    const double Q = 6.25, u = 2.5, b = 2 / 2.0 + 1.0;
    const double ref = std::pow(2.0, b) * std::tgamma(b + 1) * std::pow(u, -b) * boost::math::cyl_bessel_j(b, u);
    CHECK(std::abs(*phi_closed(DensityGenerator::pearson_ii(2, 1.0), Q) - ref) < 1e-13);
    CHECK_FALSE(phi_closed(DensityGenerator::kotz(2, 2.0, 1.0, 0.5), 1.0).has_value());
    CHECK_THROWS_AS(phi(DensityGenerator::kotz(2, 2.0, 1.0, 0.5), 1.0, Route::ClosedForm), DomainError);
}

TEST_CASE("closed forms agree with the Hankel route")
{
    const double Qs[] = {0.01, 0.1, 1.0, 4.0, 25.0};
    for (int n : {1, 2, 3, 5}) {
        for (const auto& g : named(n)) {
            if (!phi_closed(g, 1.0)) continue;
            for (double Q : Qs) {
                INFO(g.describe() << " Q=" << Q);
                CHECK(std::abs(phi(g, Q, Route::ClosedForm) - phi(g, Q, Route::Hankel)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("Pearson II with a negative exponent needs a looser tolerance")
{
    const auto g = DensityGenerator::pearson_ii(2, -0.5);
    CHECK_THROWS_AS(phi_with_error(g, 4.0, Route::Hankel), ConvergenceError);
    quad::QuadratureControl loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 1e-6;
    const auto r = phi_with_error(g, 4.0, Route::Hankel, loose);
    CHECK(std::abs(r.value - *phi_closed(g, 4.0)) <= 1e-6);
}

TEST_CASE("custom generator reproduces the normal family")
{
    family::Custom c;
    c.g = [](double z) { return std::exp(-z / 2); };
    c.g_prime = [](double z) { return -0.5 * std::exp(-z / 2); };
    c.name = "gauss";
    for (int n : {1, 3}) {
        const auto g = DensityGenerator::custom(n, c);
        CHECK_FALSE(phi_closed(g, 1.0).has_value());
        CHECK(std::abs(g.moment_integral_value() - std::pow(2.0, n / 2.0) * std::tgamma(n / 2.0)) < 1e-9);
        for (double Q : {0.5, 3.0}) CHECK(std::abs(phi(g, Q) - std::exp(-Q / 2)) < 1e-8);
    }
}

TEST_CASE("matrix roots")
{
    const auto r3 = matrix_roots(Matrix::Identity(3, 3));
    CHECK(r3.cholesky_factor.isApprox(Matrix::Identity(3, 3)));
    CHECK(r3.symmetric_root.isApprox(Matrix::Identity(3, 3)));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4;
    d(1, 1) = 9;
    const auto rd = matrix_roots(d);
    CHECK(std::abs(rd.symmetric_root(0, 0) - 2) < 1e-14);
    CHECK(std::abs(rd.symmetric_root(1, 1) - 3) < 1e-14);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix S = random_psd(5, rng);
        const auto r = matrix_roots(S);
        CHECK((r.cholesky_factor.transpose() * r.cholesky_factor - S).norm() < 1e-10);
        CHECK((r.symmetric_root * r.symmetric_root - S).norm() < 1e-10);
        CHECK(r.rank == 5);
    }
    Matrix asym = Matrix::Identity(2, 2);
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(matrix_roots(asym), DomainError);
    Matrix neg = Matrix::Identity(2, 2);
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(matrix_roots(neg), DomainError);
}

TEST_CASE("cf assembly and universal properties")
{
    Vector mu(2);
    mu << 1.0, 0.0;
    const EllipticalSpec spec(mu, Matrix::Identity(2, 2), DensityGenerator::normal(2));
    Vector t(2);
    t << 1.0, 0.0;
    const auto v = cf(spec, t);
    const auto ref = std::exp(std::complex<double>(-0.5, 1.0));
    CHECK(std::abs(v.value - ref) < 1e-15);
    CHECK(v.method == Method::ClosedForm);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    for (int n : {1, 2, 3}) {
        Vector m(n);
        for (int i = 0; i < n; ++i) m(i) = z(rng);
        const Matrix S = random_psd(n, rng) + Matrix::Identity(n, n);
        for (const auto& g : named(n)) {
            const EllipticalSpec sp(m, S, g);
            const EllipticalSpec centred(Vector::Zero(n), S, g);
            for (auto route : {Route::Auto, Route::Hankel}) {
                CHECK(cf(sp, Vector::Zero(n), route).value == std::complex<double>(1.0, 0.0));
                for (int k = 0; k < 4; ++k) {
                    Vector tt(n);
                    for (int i = 0; i < n; ++i) tt(i) = 2 * z(rng);
                    const auto a = cf(sp, tt, route).value;
                    const auto b = cf(sp, Vector(-tt), route).value;
                    CHECK(std::abs(a - std::conj(b)) <= 1e-12);
                    CHECK(std::abs(a) <= 1 + 1e-12);
                    CHECK(std::abs(cf(centred, tt, route).im()) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("special-case reductions")
{
    for (int n : {1, 2, 3, 5}) {
        for (double Q : {0.01, 0.1, 1.0, 4.0, 25.0}) {
            CHECK(std::abs(*phi_closed(DensityGenerator::kotz(n, 1.0, 0.5, 1.0), Q) - std::exp(-Q / 2)) < 1e-10);
            CHECK(std::abs(closed::pearson_ii_hyp(n, 1.5, Q) - closed::pearson_ii_bessel(n, 1.5, Q)) < 1e-10);
            CHECK(std::abs(closed::uniform_ball(n, Q) - closed::uniform_ball_bessel(n, Q)) < 1e-10);
        }
    }
    for (double r : {0.5, 1.0, 2.0}) {
        for (double Q : {0.01, 1.0, 25.0}) {
            CHECK(std::abs(closed::kotz_s_half(2, 1.0, r, Q) - closed::kotz_s_half_2d(r, Q)) < 1e-10);
        }
    }
}
