#pragma once

#include "ellcf/elliptical.hpp"
#include "ellcf/rng.hpp"
#include "ellcf/skewmix.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace ellcf::sampling {

/// Rows are produced in fixed chunks; chunk c draws from stream
/// stream_base + c, so the output does not depend on the worker count.
inline constexpr int kChunkRows = 4096;

struct SamplingOptions {
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;
    int workers = 1;
};

struct SampleBatch {
    int n = 0;
    Matrix data;  // count x n
    std::string provenance;
    std::uint64_t seed = 0;
    // Probability mass cut off by tabulated inversion, if any.
    double truncation_mass = 0.0;

    int count() const { return static_cast<int>(data.rows()); }
};

/// Runs fill(engine, first_row, end_row) over fixed chunks of kChunkRows.
void run_chunks(int count, const SamplingOptions& opt, const std::function<void(Philox4x32&, int, int)>& fill);

/// Monotone inverse of a tabulated CDF.
///
/// The CDF of a density h is tabulated on an adaptively refined grid
/// (G7-K15 increments, cubic Hermite interpolation with h as slope) out to
/// the 1 - 1e-10 quantile; quantiles are found by bisection on the
/// interpolant.
class TabulatedInverse {
public:
    TabulatedInverse(std::function<double(double)> h, double lo, double hi, double scale);

    double quantile(double p) const;
    double cdf(double x) const;
    double truncation_mass() const { return truncation_; }
    std::size_t nodes() const { return x_.size(); }

private:
    double hermite(std::size_t i, double x) const;

    std::vector<double> x_;
    std::vector<double> F_;
    std::vector<double> f_;
    double truncation_ = 0.0;
};

/// Draws of the generating variate R of a density generator.
class RadiusSampler {
public:
    explicit RadiusSampler(const DensityGenerator& g);

    double operator()(Philox4x32& eng) const;
    double truncation_mass() const;
    const DensityGenerator& generator() const { return g_; }

private:
    DensityGenerator g_;
    std::shared_ptr<const TabulatedInverse> table_;
};

/// Draws of a mixing variable.
class MixingSampler {
public:
    explicit MixingSampler(const skew::MixingLaw& law);

    double operator()(Philox4x32& eng) const;
    double truncation_mass() const;

private:
    skew::MixingLaw law_;
    std::vector<double> cumulative_;
    std::shared_ptr<const TabulatedInverse> table_;
};

/// Standard normal vector of length n normalised to unit length.
Vector draw_sphere(int n, Philox4x32& eng);

SampleBatch sample_sphere(int n, int count, const SamplingOptions& opt);
SampleBatch sample_ball(int n, int count, const SamplingOptions& opt);
Vector sample_radius(const DensityGenerator& g, int count, const SamplingOptions& opt);
/// Rejects rank-deficient dispersion.
Vector sample_radius(const EllipticalSpec& spec, int count, const SamplingOptions& opt);
SampleBatch sample_elliptical(const EllipticalSpec& spec, int count, const SamplingOptions& opt);
SampleBatch sample_lsm(const skew::LSMixtureSpec& spec, int count, const SamplingOptions& opt);
SampleBatch sample_skew_normal(const skew::SkewNormalSpec& spec, int count, const SamplingOptions& opt);
SampleBatch sample_smsn(const skew::SMSNSpec& spec, int count, const SamplingOptions& opt);

/// (1/N) sum_j exp(i t'X_j), abs_err = 3/sqrt(N) plus any truncation mass.
/// Partial sums are formed per chunk and combined in chunk order.
ComplexCF empirical_cf(const SampleBatch& batch, const Vector& t, int workers = 1);

/// CSV with `#` provenance comments and a header x1..xn.
void write_csv(const SampleBatch& batch, std::ostream& os);

}  // namespace ellcf::sampling
