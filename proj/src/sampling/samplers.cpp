#include "ellcf/errors.hpp"
#include "ellcf/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace ellcf::sampling {
namespace {

double gamma_draw(double shape, double scale, Philox4x32& eng)
{
    return std::gamma_distribution<double>(shape, scale)(eng);
}

double normal_draw(Philox4x32& eng)
{
    return std::normal_distribution<double>()(eng);
}

std::string tag(const char* what, std::uint64_t seed)
{
    return std::string(what) + " seed=" + std::to_string(seed);
}

}  // namespace

void run_chunks(int count, const SamplingOptions& opt, const std::function<void(Philox4x32&, int, int)>& fill)
{
    if (count < 0) throw DomainError("sample count must be >= 0");
    const int chunks = (count + kChunkRows - 1) / kChunkRows;
    const int workers = std::clamp(opt.workers, 1, std::max(1, chunks));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (int c = next++; c < chunks; c = next++) {
                Philox4x32 eng(opt.seed, opt.stream_base + static_cast<std::uint64_t>(c));
                fill(eng, c * kChunkRows, std::min(count, (c + 1) * kChunkRows));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

RadiusSampler::RadiusSampler(const DensityGenerator& g) : g_(g)
{
    if (g_.family() == Family::Custom) {
        const DensityGenerator gen = g_;
        table_ = std::make_shared<TabulatedInverse>([gen](double v) { return radial_density(gen, v); }, 0.0,
                                                    gen.support_radius(), gen.scale());
    }
}

double RadiusSampler::truncation_mass() const { return table_ ? table_->truncation_mass() : 0.0; }

double RadiusSampler::operator()(Philox4x32& eng) const
{
    const double n = g_.dim();
    const double h = 0.5 * n;
    const auto& p = g_.params();
    switch (g_.family()) {
    case Family::Normal: return std::sqrt(gamma_draw(h, 2.0, eng));
    case Family::UniformBall: return std::pow(eng.uniform01(), 1.0 / n);
    case Family::GeneralizedT: {
        const auto& q = std::get<family::GeneralizedT>(p);
        return std::sqrt(q.s * gamma_draw(h, 1.0, eng) / gamma_draw(0.5 * q.m, 1.0, eng));
    }
    case Family::PearsonII: {
        const auto& q = std::get<family::PearsonII>(p);
        const double x = gamma_draw(h, 1.0, eng);
        const double y = gamma_draw(q.m + 1.0, 1.0, eng);
        return std::sqrt(x / (x + y));
    }
    case Family::PearsonVII: {
        const auto& q = std::get<family::PearsonVII>(p);
        return std::sqrt(q.s * gamma_draw(h, 1.0, eng) / gamma_draw(q.N - h, 1.0, eng));
    }
    case Family::Kotz: {
        const auto& q = std::get<family::Kotz>(p);
        const double w = gamma_draw((2.0 * q.N + n - 2.0) / (2.0 * q.s), 1.0, eng);
        return std::sqrt(std::pow(w / q.r, 1.0 / q.s));
    }
    case Family::Bessel: {
        const auto& q = std::get<family::Bessel>(p);
        const double v = gamma_draw(h + q.a, 2.0, eng);
        const double chi = std::sqrt(gamma_draw(h, 2.0, eng));
        return q.beta * std::sqrt(v) * chi;
    }
    case Family::Custom: return table_->quantile(eng.uniform01());
    }
    throw DomainError("unknown generator family");
}

MixingSampler::MixingSampler(const skew::MixingLaw& law) : law_(law)
{
    if (const auto* d = std::get_if<skew::mixing::FiniteDiscrete>(&law_.kind())) {
        double acc = 0.0;
        for (double w : d->weights) cumulative_.push_back(acc += w);
    } else if (const auto* d = std::get_if<skew::mixing::CustomDensity>(&law_.kind())) {
        table_ = std::make_shared<TabulatedInverse>(d->h, d->lo, d->hi, d->scale);
    }
}

double MixingSampler::truncation_mass() const { return table_ ? table_->truncation_mass() : 0.0; }

double MixingSampler::operator()(Philox4x32& eng) const
{
    const auto& kind = law_.kind();
    if (const auto* d = std::get_if<skew::mixing::Degenerate>(&kind)) return d->v0;
    if (const auto* d = std::get_if<skew::mixing::FiniteDiscrete>(&kind)) {
        const double u = eng.uniform01() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), d->points.size() - 1);
        return d->points[i];
    }
    if (const auto* d = std::get_if<skew::mixing::InverseGamma>(&kind)) {
        return d->scale / gamma_draw(d->shape, 1.0, eng);
    }
    return table_->quantile(eng.uniform01());
}

Vector draw_sphere(int n, Philox4x32& eng)
{
    Vector z(n);
    while (true) {
        for (int i = 0; i < n; ++i) z(i) = normal_draw(eng);
        const double norm = z.norm();
        if (norm > 0.0) return z / norm;
    }
}

SampleBatch sample_sphere(int n, int count, const SamplingOptions& opt)
{
    if (n < 1) throw DomainError("dimension must be >= 1");
    SampleBatch b{n, Matrix(count, n), tag("sphere", opt.seed), opt.seed, 0.0};
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) b.data.row(i) = draw_sphere(n, eng).transpose();
    });
    return b;
}

SampleBatch sample_ball(int n, int count, const SamplingOptions& opt)
{
    if (n < 1) throw DomainError("dimension must be >= 1");
    SampleBatch b{n, Matrix(count, n), tag("ball", opt.seed), opt.seed, 0.0};
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const double r = std::pow(eng.uniform01(), 1.0 / n);
            b.data.row(i) = r * draw_sphere(n, eng).transpose();
        }
    });
    return b;
}

Vector sample_radius(const DensityGenerator& g, int count, const SamplingOptions& opt)
{
    const RadiusSampler draw(g);
    Vector out(count);
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) out(i) = draw(eng);
    });
    return out;
}

Vector sample_radius(const EllipticalSpec& spec, int count, const SamplingOptions& opt)
{
    if (!spec.full_rank()) throw DomainError("sampling requires a full-rank dispersion matrix");
    return sample_radius(spec.generator(), count, opt);
}

SampleBatch sample_elliptical(const EllipticalSpec& spec, int count, const SamplingOptions& opt)
{
    if (!spec.full_rank()) throw DomainError("sampling requires a full-rank dispersion matrix");
    const int n = spec.dim();
    const RadiusSampler draw(spec.generator());
    const Matrix L = spec.roots().cholesky_factor.transpose();
    SampleBatch b{n, Matrix(count, n), tag("elliptical", opt.seed), opt.seed, draw.truncation_mass()};
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const double r = draw(eng);
            const Vector u = draw_sphere(n, eng);
            b.data.row(i) = (spec.mu() + r * (L * u)).transpose();
        }
    });
    return b;
}

SampleBatch sample_lsm(const skew::LSMixtureSpec& spec, int count, const SamplingOptions& opt)
{
    const int n = spec.dim();
    const RadiusSampler radius(spec.base());
    const MixingSampler mix(spec.mixing());
    const Matrix& S = spec.roots().symmetric_root;
    SampleBatch b{n, Matrix(count, n), tag("lsm", opt.seed), opt.seed,
                  radius.truncation_mass() + mix.truncation_mass()};
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const double v = mix(eng);
            const double r = radius(eng);
            const Vector z = r * draw_sphere(n, eng);
            b.data.row(i) = (spec.mu() + v * spec.gamma() + std::sqrt(v) * (S * z)).transpose();
        }
    });
    return b;
}

namespace {

// Z with density 2 phi(z) Phi(a'z), by conditioning on the sign of a
// correlated N(0, 1) coordinate.
struct SkewNormalCore {
    Vector delta;
    Matrix L;

    explicit SkewNormalCore(const skew::SkewNormalSpec& spec) : delta(spec.delta())
    {
        const int n = spec.dim();
        const Matrix C = Matrix::Identity(n, n) - delta * delta.transpose();
        Eigen::LLT<Matrix> llt(C);
        if (llt.info() != Eigen::Success) throw DomainError("skew-normal: 1 - delta'delta is not positive");
        L = llt.matrixL();
    }

    Vector draw(Philox4x32& eng) const
    {
        const auto n = delta.size();
        Vector eps(n);
        while (true) {
            const double z0 = normal_draw(eng);
            for (Eigen::Index k = 0; k < n; ++k) eps(k) = normal_draw(eng);
            if (z0 > 0.0) return delta * z0 + L * eps;
        }
    }
};

}  // namespace

SampleBatch sample_skew_normal(const skew::SkewNormalSpec& spec, int count, const SamplingOptions& opt)
{
    const int n = spec.dim();
    const SkewNormalCore core(spec);
    const Matrix& S = spec.roots().symmetric_root;
    SampleBatch b{n, Matrix(count, n), tag("skew_normal", opt.seed), opt.seed, 0.0};
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) b.data.row(i) = (spec.mu() + S * core.draw(eng)).transpose();
    });
    return b;
}

SampleBatch sample_smsn(const skew::SMSNSpec& spec, int count, const SamplingOptions& opt)
{
    const auto& sn = spec.base;
    const int n = sn.dim();
    const SkewNormalCore core(sn);
    const MixingSampler mix(spec.mixing);
    const Matrix& S = sn.roots().symmetric_root;
    SampleBatch b{n, Matrix(count, n), tag("smsn", opt.seed), opt.seed, mix.truncation_mass()};
    run_chunks(count, opt, [&](Philox4x32& eng, int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const double k = spec.mixing.weight(mix(eng));
            b.data.row(i) = (sn.mu() + std::sqrt(k) * (S * core.draw(eng))).transpose();
        }
    });
    return b;
}

}  // namespace ellcf::sampling
