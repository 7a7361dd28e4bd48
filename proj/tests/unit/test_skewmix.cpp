#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/skewmix.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ellcf;
using namespace ellcf::skew;

namespace {

const double kPi = std::acos(-1.0);

Matrix random_pd(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> z;
    Matrix A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = z(rng);
    }
    Matrix S = A * A.transpose() + 0.5 * Matrix::Identity(n, n);
    return 0.5 * (S + S.transpose());
}

Vector random_vec(int n, std::mt19937_64& rng, double scale = 1.0)
{
    std::normal_distribution<double> z;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = scale * z(rng);
    return v;
}

// Imaginary part of Phi(iy) by Simpson's rule on exp(s^2/2).
double phi_imag_oracle(double y)
{
    const int m = 4000;
    double sum = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double s = y * i / m;
        const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
        sum += w * std::exp(s * s / 2);
    }
    return sum * y / (3.0 * m) / std::sqrt(2 * kPi);
}

}  // namespace

TEST_CASE("mixing law validation")
{
    CHECK_THROWS_AS(MixingLaw::finite_discrete({1.0, 2.0}, {0.5, 0.4}), DomainError);
    CHECK_THROWS_AS(MixingLaw::finite_discrete({-1.0, 2.0}, {0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(MixingLaw::inverse_gamma(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(MixingLaw::custom_density([](double) { return 2.0; }, 0.0, 1.0), DomainError);
    const auto ok = MixingLaw::custom_density([](double x) { return 2.0 * x; }, 0.0, 1.0);
    CHECK(std::abs(ok.expect([](double v) { return std::complex<double>(v, 0.0); }).value.real() - 2.0 / 3.0) < 1e-9);
    const auto ig = MixingLaw::inverse_gamma(3.0, 2.0);
    CHECK(std::abs(ig.expect([](double v) { return std::complex<double>(v, 0.0); }).value.real() - 1.0) < 1e-8);
}

TEST_CASE("location-scale mixtures")
{
    const auto g = DensityGenerator::normal(2);
    Vector t(2);
    t << 1.0, 0.0;
    const LSMixtureSpec two(g, Vector::Zero(2), Vector::Zero(2), Matrix::Identity(2, 2),
                            MixingLaw::finite_discrete({1.0, 4.0}, {0.5, 0.5}));
    const double hand = (std::exp(-0.5) + std::exp(-2.0)) / 2;
    CHECK(std::abs(cf_lsm(two, t).value - std::complex<double>(hand, 0.0)) <= 1e-12);
    CHECK(cf_lsm(two, Vector::Zero(2)).value == std::complex<double>(1.0, 0.0));

    std::mt19937_64 rng(3);
    const Vector mu = random_vec(2, rng);
    const Matrix S = random_pd(2, rng);
    const LSMixtureSpec deg(g, mu, Vector::Zero(2), S, MixingLaw::degenerate(1.0));
    const EllipticalSpec base(mu, S, g);
    for (int k = 0; k < 10; ++k) {
        const Vector tt = random_vec(2, rng);
        CHECK(std::abs(cf_lsm(deg, tt).value - cf(base, tt).value) <= 1e-15);
    }

    // V ~ InvGamma(1/2, 1/2) turns the normal into the Cauchy law.
    const LSMixtureSpec cauchy(g, Vector::Zero(2), Vector::Zero(2), Matrix::Identity(2, 2),
                               MixingLaw::inverse_gamma(0.5, 0.5));
    for (double r : {0.1, 0.7, 2.0}) {
        Vector tt(2);
        tt << r, 0.0;
        CHECK(std::abs(cf_lsm(cauchy, tt).value.real() - std::exp(-r)) < 1e-8);
    }

    // Non-zero gamma: V = v0 gives e^{i v0 t'gamma} phi(v0 Q).
    Vector gamma(2);
    gamma << 0.3, -0.7;
    const LSMixtureSpec shifted(g, Vector::Zero(2), gamma, Matrix::Identity(2, 2), MixingLaw::degenerate(2.0));
    Vector tt(2);
    tt << 0.4, 1.1;
    const double Q = tt.squaredNorm();
    const auto expect = std::exp(std::complex<double>(-Q, 2.0 * tt.dot(gamma)));
    CHECK(std::abs(cf_lsm(shifted, tt).value - expect) <= 1e-14);

    for (int k = 0; k < 20; ++k) {
        const Vector x = random_vec(2, rng, 2.0);
        const LSMixtureSpec ig(DensityGenerator::generalized_t(2, 1.0, 3.0), mu, gamma, S, MixingLaw::inverse_gamma(2.0, 1.5));
        const auto a = cf_lsm(ig, x).value;
        const auto b = cf_lsm(ig, Vector(-x)).value;
        CHECK(std::abs(a - std::conj(b)) <= 1e-12);
        CHECK(std::abs(a) <= 1 + 1e-12);
    }
    CHECK_THROWS_AS(cf_lsm(LSMixtureSpec(DensityGenerator::kotz(2, 2.0, 1.0, 0.5), mu, gamma, S, MixingLaw::degenerate(1.0)),
                           tt, Route::ClosedForm),
                    DomainError);
}

TEST_CASE("star-unimodal representation")
{
    // Normal generator, n = 1: W has the chi(3) density.
    const auto g1 = DensityGenerator::normal(1);
    for (double w : {0.2, 1.0, 2.5}) {
        CHECK(std::abs(smu_density(g1, w) - std::sqrt(2 / kPi) * w * w * std::exp(-w * w / 2)) < 1e-14);
    }
    for (int n : {2, 3}) {
        for (double s : {0.5, 1.0, 2.0}) {
            const auto g = DensityGenerator::kotz(n, 1.0, 0.5, s);
            const auto mass = quad::integrate_semi_infinite<double>([&](double w) { return smu_density(g, w); }, 0.0,
                                                                    {1e-12, 1e-12, 4000});
            INFO("n=" << n << " s=" << s);
            CHECK(std::abs(mass.value - 1.0) <= 1e-8);
        }
    }
    CHECK_THROWS_AS(check_star_unimodal(DensityGenerator::uniform_ball(2)), DomainError);
    CHECK_THROWS_AS(check_star_unimodal(DensityGenerator::kotz(2, 2.0, 0.5, 1.0)), DomainError);
    CHECK_NOTHROW(check_star_unimodal(DensityGenerator::cauchy(2)));

    for (int n : {1, 2, 3}) {
        const auto g = DensityGenerator::normal(n);
        for (double r : {0.0, 1e-4, 0.5, 1.0, 2.0, 3.5, 5.0}) {
            Vector t = Vector::Zero(n);
            t(0) = r;
            const auto v = cf_smu(g, t);
            CHECK(std::abs(v.value - std::complex<double>(std::exp(-r * r / 2), 0.0)) <= 1e-7);
        }
    }
    const auto gc = DensityGenerator::generalized_t(3, 2.0, 3.0);
    for (double r : {0.3, 1.0, 4.0}) {
        Vector t = Vector::Zero(3);
        t(1) = r;
        CHECK(std::abs(cf_smu(gc, t).re() - *phi_closed(gc, r * r)) <= 1e-7);
    }
}

TEST_CASE("skew-normal k function")
{
    std::mt19937_64 rng(17);
    for (int n : {1, 2, 3}) {
        const Vector a = random_vec(n, rng, 3.0);
        const auto k = skew_normal_k(a);
        for (int i = 0; i < 1000; ++i) {
            const Vector t = random_vec(n, rng, 2.0);
            CHECK(std::abs(k(t) + k(Vector(-t)) - 1.0) <= 1e-12);
        }
    }
    CHECK(std::abs(tau_from_k({0.5, 0.2}) - std::complex<double>(0.0, -0.4)) < 1e-16);
}

TEST_CASE("skew-normal characteristic function")
{
    // SN(0, 1, alpha) in one dimension: 2 e^{-t^2/2} Phi(i delta t).
    const double alpha = 5.0;
    const double delta = alpha / std::sqrt(1 + alpha * alpha);
    const SkewNormalSpec sn(Vector::Zero(1), Matrix::Identity(1, 1), Vector::Constant(1, alpha), Parametrization::HalfRoot);
    for (double t : {-3.0, -0.5, 0.25, 1.0, 2.0}) {
        Vector tt(1);
        tt << t;
        const auto v = cf_skew_normal(sn, tt).value;
        CHECK(std::abs(v.real() - std::exp(-t * t / 2)) < 1e-14);
        CHECK(std::abs(v.imag() - 2 * std::exp(-t * t / 2) * phi_imag_oracle(delta * t)) < 1e-12);
    }

    std::mt19937_64 rng(23);
    for (int n : {1, 2, 3}) {
        const Vector mu = random_vec(n, rng);
        const Matrix S = random_pd(n, rng);
        for (auto p : {Parametrization::HalfRoot, Parametrization::FullSigma}) {
            const SkewNormalSpec spec(mu, S, random_vec(n, rng, 2.0), p);
            const auto gse = skew_normal_as_gse(spec);
            const SkewNormalSpec flat(mu, S, Vector::Zero(n), p);
            const EllipticalSpec normal(mu, S, DensityGenerator::normal(n));
            CHECK(cf_skew_normal(spec, Vector::Zero(n)).value == std::complex<double>(1.0, 0.0));
            CHECK(cf_gse(gse, Vector::Zero(n)).value == std::complex<double>(1.0, 0.0));
            for (int k = 0; k < 20; ++k) {
                const Vector t = random_vec(n, rng, 1.5);
                const auto a = cf_skew_normal(spec, t).value;
                CHECK(std::abs(a - cf_gse(gse, t).value) <= 1e-12);
                CHECK(std::abs(a - std::conj(cf_skew_normal(spec, Vector(-t)).value)) <= 1e-12);
                CHECK(std::abs(a) <= 1 + 1e-12);
                CHECK(std::abs(cf_skew_normal(flat, t).value - cf(normal, t).value) <= 1e-14);
            }
        }
    }
}

TEST_CASE("GSE construction and affine closure")
{
    const auto psi = [](double Q) { return std::exp(-Q / 2); };
    const KFunction bad = [](const Vector& t) { return std::complex<double>(0.5 + 0.1 * t.squaredNorm(), 0.0); };
    CHECK_THROWS_AS(GSESpec::from_kn(Vector::Zero(2), Matrix::Identity(2, 2), psi, bad), DomainError);
    const KFunction off = [](const Vector&) { return std::complex<double>(0.6, 0.0); };
    CHECK_THROWS_AS(GSESpec::from_kn(Vector::Zero(2), Matrix::Identity(2, 2), psi, off), DomainError);

    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> rows(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3;
        const SkewNormalSpec sn(random_vec(n, rng), random_pd(n, rng), random_vec(n, rng, 2.0), Parametrization::FullSigma);
        const auto spec = skew_normal_as_gse(sn);
        const int m = rows(rng);
        Matrix B(m, n);
        for (int i = 0; i < m; ++i) B.row(i) = random_vec(n, rng).transpose();
        const Vector a = random_vec(m, rng);
        const auto image = gse_affine(spec, a, B);
        const Vector t = random_vec(m, rng);
        const Vector Bt = B.transpose() * t;
        const auto lhs = cf_gse(image, t).value;
        const auto rhs = std::exp(std::complex<double>(0.0, t.dot(a))) * cf_gse(spec, Bt).value;
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
    const SkewNormalSpec sn(Vector::Zero(2), Matrix::Identity(2, 2), Vector::Ones(2), Parametrization::HalfRoot);
    Matrix rank_def(2, 2);
    rank_def << 1, 2, 2, 4;
    CHECK_THROWS_AS(gse_affine(skew_normal_as_gse(sn), Vector::Zero(2), rank_def), DomainError);
    CHECK_THROWS_AS(gse_affine(skew_normal_as_gse(sn), Vector::Zero(1), Matrix::Ones(1, 3)), DomainError);
}

TEST_CASE("scale mixtures of skew-normals")
{
    std::mt19937_64 rng(31);
    const int n = 2;
    const Vector mu = random_vec(n, rng);
    const Matrix S = random_pd(n, rng);
    const SkewNormalSpec base(mu, S, random_vec(n, rng, 2.0), Parametrization::HalfRoot);

    const SMSNSpec deg{base, MixingLaw::degenerate(1.0)};
    const SMSNSpec two{base, MixingLaw::finite_discrete({0.5, 3.0}, {0.3, 0.7})};
    const SMSNSpec inv{base, MixingLaw::finite_discrete({0.5, 3.0}, {0.3, 0.7}).with_weight([](double v) { return 1 / v; })};
    const SMSNSpec st{base, MixingLaw::inverse_gamma(2.0, 2.0)};

    for (int k = 0; k < 20; ++k) {
        const Vector t = random_vec(n, rng, 1.5);
        CHECK(std::abs(cf_smsn(deg, t).value - cf_skew_normal(base, t).value) <= 1e-14);

        // Hand sum over the two components.
        std::complex<double> hand = 0.0;
        const double pts[] = {0.5, 3.0};
        const double wts[] = {0.3, 0.7};
        for (int j = 0; j < 2; ++j) {
            const SkewNormalSpec scaled(mu, pts[j] * S, base.alpha(), Parametrization::HalfRoot);
            hand += wts[j] * cf_skew_normal(scaled, t).value;
        }
        CHECK(std::abs(cf_smsn(two, t).value - hand) <= 1e-12);

        for (const auto* s : {&two, &inv, &st}) {
            const auto direct = cf_smsn(*s, t).value;
            const auto split = smsn_split(*s, t);
            CHECK(std::abs(split.assembled - direct) <= 1e-9);
            CHECK(std::abs(split.kn + smsn_split(*s, Vector(-t)).kn - 1.0) <= 1e-12);
            CHECK(std::abs(direct - std::conj(cf_smsn(*s, Vector(-t)).value)) <= 1e-12);
            CHECK(std::abs(direct) <= 1 + 1e-12);
        }
    }
    CHECK(cf_smsn(st, Vector::Zero(n)).value == std::complex<double>(1.0, 0.0));
}
