#include "ellcf/errors.hpp"
#include "ellcf/gauss_kronrod.hpp"
#include "ellcf/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace ellcf;
using namespace ellcf::sampling;

namespace {

// Kolmogorov-Smirnov distance of a sample against the CDF of radial_density.
double ks_radius(const DensityGenerator& g, Vector r)
{
    std::sort(r.data(), r.data() + r.size());
    const auto h = [&](double v) { return radial_density(g, v); };
    const double N = static_cast<double>(r.size());
    double F = 0.0;
    double prev = 0.0;
    double d = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        if (r(i) > prev) F += quad::integrate_adaptive<double>(h, prev, r(i), {1e-13, 1e-12, 200}).value;
        prev = r(i);
        d = std::max({d, std::abs(F - i / N), std::abs(F - (i + 1) / N)});
    }
    return d;
}

std::string csv(const SampleBatch& b)
{
    std::ostringstream os;
    write_csv(b, os);
    return os.str();
}

}  // namespace

TEST_CASE("Philox4x32-10 known answers")
{
    using B = Philox4x32::Block;
    CHECK(Philox4x32::bijection(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::bijection(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::bijection(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("engine streams")
{
    Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    std::set<std::uint32_t> seen;
    bool diff_stream = false, diff_seed = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a();
        CHECK(x == b());
        diff_stream |= x != c();
        diff_seed |= x != d();
        seen.insert(x);
    }
    CHECK(diff_stream);
    CHECK(diff_seed);
    CHECK(seen.size() > 990);
    Philox4x32 u(1, 2);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double x = u.uniform01();
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
        mean += x;
    }
    CHECK(std::abs(mean / 100000 - 0.5) < 0.005);
}

TEST_CASE("chunked runs do not depend on the worker count")
{
    const int count = 3 * kChunkRows + 17;
    std::vector<double> one(count), many(count);
    run_chunks(count, {9, 0, 1}, [&](Philox4x32& e, int lo, int hi) {
        for (int i = lo; i < hi; ++i) one[i] = e.uniform01();
    });
    run_chunks(count, {9, 0, 5}, [&](Philox4x32& e, int lo, int hi) {
        for (int i = lo; i < hi; ++i) many[i] = e.uniform01();
    });
    CHECK(one == many);
    CHECK_THROWS_AS(run_chunks(count, {9, 0, 3}, [](Philox4x32&, int lo, int) {
                        if (lo > 0) throw DomainError("boom");
                    }),
                    DomainError);
}

TEST_CASE("tabulated inverse")
{
    const TabulatedInverse tab([](double x) { return std::exp(-x); }, 0.0, std::numeric_limits<double>::infinity(), 1.0);
    for (double p : {1e-6, 0.1, 0.5, 0.9, 0.999}) {
        CHECK(std::abs(tab.quantile(p) + std::log1p(-p)) < 1e-8 * std::max(1.0, -std::log1p(-p)));
    }
    for (double x : {0.01, 1.0, 5.0}) CHECK(std::abs(tab.cdf(x) - (1 - std::exp(-x))) < 1e-10);
    CHECK(tab.truncation_mass() < 1e-9);
}

TEST_CASE("radius samplers match the radial law")
{
    const int N = 20000;
    // Twenty KS tests at a family-wise 1% level: per-test 5e-4, K = sqrt(ln(2/5e-4)/2).
    const double crit = std::sqrt(std::log(2.0 / 5e-4) / 2.0) / std::sqrt(static_cast<double>(N));
    family::Custom c;
    c.g = [](double z) { return std::exp(-z * z); };
    c.name = "quartic";
    for (int n : {1, 3}) {
        const std::vector<DensityGenerator> gens = {
            DensityGenerator::normal(n),           DensityGenerator::uniform_ball(n),
            DensityGenerator::cauchy(n),           DensityGenerator::generalized_t(n, 2.0, 3.0),
            DensityGenerator::pearson_ii(n, 1.0),  DensityGenerator::pearson_vii(n, n / 2.0 + 1.0, 2.0),
            DensityGenerator::kotz(n, 2.0, 0.5, 1.0), DensityGenerator::kotz(n, 1.5, 1.0, 0.5),
            DensityGenerator::bessel(n, 0.5, 1.0), DensityGenerator::custom(n, c)};
        std::uint64_t seed = 100 + 50 * static_cast<std::uint64_t>(n);
        for (const auto& g : gens) {
            const auto r = sample_radius(g, N, {seed++, 0, 1});
            INFO(g.describe());
            CHECK((r.array() >= 0).all());
            CHECK(ks_radius(g, r) <= crit);
        }
    }
}

TEST_CASE("sphere and ball")
{
    const auto s = sample_sphere(4, 5000, {1, 0, 1});
    CHECK(((s.data.rowwise().norm().array() - 1.0).abs() < 1e-14).all());
    const auto b = sample_ball(3, 5000, {2, 0, 1});
    CHECK((b.data.rowwise().norm().array() <= 1.0).all());
    CHECK(s.data.colwise().mean().norm() < 0.05);
}

TEST_CASE("elliptical, mixture and skew samplers")
{
    const int N = 200000;
    const double band = 4.0 / std::sqrt(static_cast<double>(N));
    Vector mu(2);
    mu << 0.5, -1.0;
    Matrix S(2, 2);
    S << 2.0, 0.6, 0.6, 1.0;
    const EllipticalSpec normal(mu, S, DensityGenerator::normal(2));
    const auto x = sample_elliptical(normal, N, {7, 0, 2});
    CHECK((x.data.colwise().mean().transpose() - mu).norm() < 0.02);
    const Matrix centred = x.data.rowwise() - x.data.colwise().mean();
    CHECK(((centred.transpose() * centred) / N - S).norm() < 0.05);

    Vector t(2);
    t << 0.7, -0.4;
    const auto e = empirical_cf(x, t);
    CHECK(e.method == Method::MonteCarlo);
    CHECK(std::abs(e.re() - cf(normal, t).re()) < band);
    CHECK(std::abs(e.im() - cf(normal, t).im()) < band);
    CHECK(*e.abs_err >= 3.0 / std::sqrt(static_cast<double>(N)));
    CHECK(empirical_cf(x, Vector::Zero(2)).value == std::complex<double>(1.0, 0.0));

    Vector gamma(2);
    gamma << 0.2, 0.3;
    const skew::LSMixtureSpec lsm(DensityGenerator::normal(2), mu, gamma, S, skew::MixingLaw::inverse_gamma(3.0, 2.0));
    const auto y = sample_lsm(lsm, N, {8, 0, 2});
    const auto ey = empirical_cf(y, t);
    const auto ay = skew::cf_lsm(lsm, t);
    CHECK(std::abs(ey.re() - ay.re()) < band);
    CHECK(std::abs(ey.im() - ay.im()) < band);

    const skew::SkewNormalSpec sn(Vector::Zero(1), Matrix::Identity(1, 1), Vector::Constant(1, 5.0),
                                  skew::Parametrization::HalfRoot);
    const auto z = sample_skew_normal(sn, N, {9, 0, 2});
    const double m1 = z.data.mean();
    const double delta = 5.0 / std::sqrt(26.0);
    CHECK(std::abs(m1 - delta * std::sqrt(2 / std::acos(-1.0))) < 0.01);
    const auto c = (z.data.array() - m1).matrix();
    CHECK(c.array().cube().mean() > 0.0);

    const skew::SMSNSpec smsn{skew::SkewNormalSpec(mu, S, Vector::Constant(2, 1.5), skew::Parametrization::FullSigma),
                              skew::MixingLaw::finite_discrete({0.5, 2.0}, {0.4, 0.6})};
    const auto w = sample_smsn(smsn, N, {10, 0, 2});
    const auto ew = empirical_cf(w, t);
    const auto aw = skew::cf_smsn(smsn, t);
    CHECK(std::abs(ew.re() - aw.re()) < band);
    CHECK(std::abs(ew.im() - aw.im()) < band);

    Matrix singular = Matrix::Zero(2, 2);
    singular(0, 0) = 1;
    CHECK_THROWS_AS(sample_elliptical(EllipticalSpec(mu, singular, DensityGenerator::normal(2)), 10, {}), DomainError);
}

TEST_CASE("reproducible output")
{
    const EllipticalSpec spec(Vector::Zero(3), Matrix::Identity(3, 3), DensityGenerator::cauchy(3));
    const auto a = sample_elliptical(spec, 10000, {5, 0, 1});
    const auto b = sample_elliptical(spec, 10000, {5, 0, 6});
    const auto c = sample_elliptical(spec, 10000, {6, 0, 1});
    CHECK(csv(a) == csv(b));
    CHECK(csv(a) != csv(c));
    Vector t = Vector::Constant(3, 0.3);
    CHECK(empirical_cf(a, t, 1).value == empirical_cf(a, t, 4).value);

    const std::string text = csv(a);
    CHECK(text.rfind("# provenance:", 0) == 0);
    CHECK(text.find("# seed: 5\n") != std::string::npos);
    CHECK(text.find("x1,x2,x3\n") != std::string::npos);
}
