#include "ellcf/errors.hpp"
#include "ellcf/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <thread>

namespace ellcf::sampling {

ComplexCF empirical_cf(const SampleBatch& batch, const Vector& t, int workers)
{
    if (t.size() != batch.n) throw DomainError("argument dimension does not match batch");
    const int N = batch.count();
    if (N < 1) throw DomainError("empty sample batch");
    ComplexCF out;
    out.method = Method::MonteCarlo;
    out.abs_err = 3.0 / std::sqrt(static_cast<double>(N)) + 2.0 * batch.truncation_mass;
    if (t.isZero(0.0)) return out;

    const int chunks = (N + kChunkRows - 1) / kChunkRows;
    std::vector<double> re(chunks, 0.0), im(chunks, 0.0);
    auto chunk_sum = [&](int c) {
        double sr = 0.0, si = 0.0;
        const int hi = std::min(N, (c + 1) * kChunkRows);
        for (int i = c * kChunkRows; i < hi; ++i) {
            double phase = 0.0;
            for (int k = 0; k < batch.n; ++k) phase += t(k) * batch.data(i, k);
            sr += std::cos(phase);
            si += std::sin(phase);
        }
        re[c] = sr;
        im[c] = si;
    };
    const int w = std::clamp(workers, 1, chunks);
    if (w == 1) {
        for (int c = 0; c < chunks; ++c) chunk_sum(c);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int k = 0; k < w; ++k) {
            pool.emplace_back([&] {
                for (int c = next++; c < chunks; c = next++) chunk_sum(c);
            });
        }
        for (auto& th : pool) th.join();
    }
    double sr = 0.0, si = 0.0;
    for (int c = 0; c < chunks; ++c) {
        sr += re[c];
        si += im[c];
    }
    out.value = {sr / N, si / N};
    return out;
}

void write_csv(const SampleBatch& batch, std::ostream& os)
{
    char buf[64];
    os << "# provenance: " << batch.provenance << "\n";
    std::snprintf(buf, sizeof buf, "# seed: %" PRIu64 "\n", batch.seed);
    os << buf;
    os << "# count: " << batch.count() << "\n";
    for (int k = 0; k < batch.n; ++k) os << (k ? ",x" : "x") << (k + 1);
    os << "\n";
    for (int i = 0; i < batch.count(); ++i) {
        for (int k = 0; k < batch.n; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", batch.data(i, k));
            if (k) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace ellcf::sampling
