#include "ellcf/cli.hpp"
#include "ellcf/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace ellcf::cli {
namespace {

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string hex(std::uint64_t h)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string point_text(const Vector& t)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < t.size(); ++i) s += (i ? ", " : "") + fmt(t(i));
    return s + ")";
}

// Failure at one grid point, carrying the exit code it maps to.
struct PointFailure {
    int code = kNumericFailure;
    std::string message;
};

struct GridFailure {
    int index = 0;
    PointFailure failure;
};

void parallel_for(int count, int workers, const std::function<void(int)>& body)
{
    std::vector<std::optional<PointFailure>> failures(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (const DomainError& e) {
                failures[static_cast<std::size_t>(i)] = PointFailure{kSpecError, e.what()};
            } catch (const std::exception& e) {
                failures[static_cast<std::size_t>(i)] = PointFailure{kNumericFailure, e.what()};
            }
        }
    };
    const int threads = std::max(1, std::min(workers, count));
    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (int i = 0; i < count; ++i) {
        if (failures[static_cast<std::size_t>(i)]) throw GridFailure{i, *failures[static_cast<std::size_t>(i)]};
    }
}

class Evaluator {
public:
    Evaluator(const ParsedSpec& spec, const RunConfig& cfg) : spec_(spec), cfg_(cfg)
    {
        if (spec.generator && (spec.kind == SpecKind::Elliptical || spec.kind == SpecKind::SMU)) {
            ell_.emplace(spec.mu, spec.sigma, *spec.generator);
        }
        if (spec.kind == SpecKind::GSESkewNormal) gse_.emplace(skew::skew_normal_as_gse(*spec.skew_normal));
    }

    // Empty when the route is available for this spec.
    std::string unavailable(RouteKind r) const
    {
        const bool has_base = spec_.kind == SpecKind::Elliptical || spec_.kind == SpecKind::SMU ||
                              spec_.kind == SpecKind::LSM;
        switch (r) {
        case RouteKind::Closed:
            if (has_base && !phi_closed(*spec_.generator, 1.0)) {
                return "no closed form for " + spec_.generator->describe();
            }
            return {};
        case RouteKind::Hankel:
            if (!has_base) return "kind " + to_string(spec_.kind) + " has no Hankel route";
            return {};
        case RouteKind::MC: return {};
        }
        return "unknown route";
    }

    void prepare_mc()
    {
        const sampling::SamplingOptions opt{cfg_.seed, 0, cfg_.workers};
        batch_ = draw(cfg_.mc_count, opt);
    }

    sampling::SampleBatch draw(int count, const sampling::SamplingOptions& opt) const
    {
        switch (spec_.kind) {
        case SpecKind::Elliptical:
        case SpecKind::SMU: return sampling::sample_elliptical(*ell_, count, opt);
        case SpecKind::LSM: return sampling::sample_lsm(*spec_.lsm, count, opt);
        case SpecKind::SkewNormal:
        case SpecKind::GSESkewNormal: return sampling::sample_skew_normal(*spec_.skew_normal, count, opt);
        case SpecKind::SMSN: return sampling::sample_smsn(*spec_.smsn, count, opt);
        }
        throw DomainError("unsamplable kind");
    }

    ComplexCF at(RouteKind r, const Vector& t) const
    {
        if (r == RouteKind::MC) return sampling::empirical_cf(*batch_, t, 1);
        ComplexCF out = r == RouteKind::Closed ? closed(t) : hankel(t);
        if (r == RouteKind::Closed) out.value += cfg_.inject_closed_bias;
        return out;
    }

private:
    ComplexCF closed(const Vector& t) const
    {
        switch (spec_.kind) {
        case SpecKind::Elliptical:
        case SpecKind::SMU: return cf(*ell_, t, Route::ClosedForm);
        case SpecKind::LSM: return skew::cf_lsm(*spec_.lsm, t, Route::ClosedForm);
        case SpecKind::SkewNormal: return skew::cf_skew_normal(*spec_.skew_normal, t);
        case SpecKind::GSESkewNormal: return skew::cf_gse(*gse_, t);
        case SpecKind::SMSN: return skew::cf_smsn(*spec_.smsn, t);
        }
        throw DomainError("unknown kind");
    }

    ComplexCF hankel(const Vector& t) const
    {
        switch (spec_.kind) {
        case SpecKind::Elliptical: return cf(*ell_, t, Route::Hankel);
        case SpecKind::LSM: return skew::cf_lsm(*spec_.lsm, t, Route::Hankel);
        case SpecKind::SMU: {
            ComplexCF out;
            out.method = Method::Hankel;
            if (t.isZero(0.0)) return out;
            const auto r = skew::phi_smu(*spec_.generator, std::sqrt(ell_->quadratic_form(t)));
            const double phase = t.dot(spec_.mu);
            out.value = {r.value * std::cos(phase), r.value * std::sin(phase)};
            out.abs_err = r.err_est;
            return out;
        }
        default: throw DomainError("kind " + to_string(spec_.kind) + " has no Hankel route");
        }
    }

    const ParsedSpec& spec_;
    const RunConfig& cfg_;
    std::optional<EllipticalSpec> ell_;
    std::optional<skew::GSESpec> gse_;
    std::optional<sampling::SampleBatch> batch_;
};

std::string route_list(const std::vector<RouteKind>& routes)
{
    std::string s;
    for (auto r : routes) s += (s.empty() ? "" : ",") + to_string(r);
    return s;
}

bool uses_mc(const std::vector<RouteKind>& routes)
{
    return std::find(routes.begin(), routes.end(), RouteKind::MC) != routes.end();
}

void write_preamble(std::ostream& os, const char* command, const ParsedSpec& spec, const RunConfig& cfg)
{
    os << "# ellcf " << command << "\n";
    os << "# spec_hash: " << hex(spec.hash) << "\n";
    os << "# kind: " << to_string(spec.kind) << "\n";
    if (spec.generator) os << "# generator: " << spec.generator->describe() << "\n";
    if (cfg.command != Command::Sample) os << "# routes: " << route_list(cfg.routes) << "\n";
    if (cfg.command == Command::Sample || uses_mc(cfg.routes)) {
        os << "# seed: " << cfg.seed << "\n";
        os << "# mc_count: " << cfg.mc_count << "\n";
    }
}

std::string t_header(int n)
{
    std::string s;
    for (int i = 1; i <= n; ++i) s += "t" + std::to_string(i) + ",";
    return s;
}

std::string t_fields(const Vector& t)
{
    std::string s;
    for (Eigen::Index i = 0; i < t.size(); ++i) s += fmt(t(i)) + ",";
    return s;
}

// Values per route (outer) and grid point (inner).
std::vector<std::vector<ComplexCF>> evaluate(Evaluator& ev, const std::vector<Vector>& grid, const RunConfig& cfg)
{
    for (auto r : cfg.routes) {
        const auto why = ev.unavailable(r);
        if (!why.empty()) throw SpecError("route '" + to_string(r) + "' unavailable: " + why);
    }
    if (uses_mc(cfg.routes)) {
        if (cfg.mc_count < 1000) throw SpecError("--mc-count must be at least 1000 for the mc route");
        ev.prepare_mc();
    }
    std::vector<std::vector<ComplexCF>> values(cfg.routes.size(), std::vector<ComplexCF>(grid.size()));
    for (std::size_t k = 0; k < cfg.routes.size(); ++k) {
        try {
            parallel_for(static_cast<int>(grid.size()), cfg.workers,
                         [&](int i) { values[k][static_cast<std::size_t>(i)] = ev.at(cfg.routes[k], grid[static_cast<std::size_t>(i)]); });
        } catch (GridFailure& f) {
            f.failure.message = "route " + to_string(cfg.routes[k]) + " failed at t = " +
                                point_text(grid[static_cast<std::size_t>(f.index)]) + ": " + f.failure.message;
            throw;
        }
    }
    return values;
}

int run_eval(const ParsedSpec& spec, const RunConfig& cfg, std::ostream& os)
{
    const auto grid = parse_grid(cfg.grid, spec.n);
    Evaluator ev(spec, cfg);
    const auto values = evaluate(ev, grid, cfg);
    write_preamble(os, "eval", spec, cfg);
    os << t_header(spec.n) << "re,im,abs_err,method\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < cfg.routes.size(); ++k) {
            const auto& v = values[k][i];
            os << t_fields(grid[i]) << fmt(v.re()) << "," << fmt(v.im()) << "," << fmt(v.abs_err.value_or(0.0)) << ","
               << to_string(cfg.routes[k]) << "\n";
        }
    }
    return kOk;
}

int run_compare(const ParsedSpec& spec, const RunConfig& cfg, std::ostream& os)
{
    if (cfg.routes.size() < 2) throw SpecError("compare needs at least two routes");
    if (!(cfg.tol > 0.0) || !(cfg.band_factor > 0.0)) throw SpecError("--tol and --band-factor must be positive");
    const auto grid = parse_grid(cfg.grid, spec.n);
    Evaluator ev(spec, cfg);
    const auto values = evaluate(ev, grid, cfg);
    write_preamble(os, "compare", spec, cfg);
    os << "# tol: " << fmt(cfg.tol) << "\n";
    if (uses_mc(cfg.routes)) os << "# band_factor: " << fmt(cfg.band_factor) << "\n";
    os << t_header(spec.n) << "route_a,route_b,dev_re,dev_im,band,status\n";

    const double mc_band = cfg.band_factor / std::sqrt(static_cast<double>(cfg.mc_count));
    double max_dev = 0.0;
    double max_ratio = 0.0;
    int exceedances = 0;
    int pairs = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t a = 0; a < cfg.routes.size(); ++a) {
            for (std::size_t b = a + 1; b < cfg.routes.size(); ++b) {
                const auto d = values[a][i].value - values[b][i].value;
                const double dre = std::abs(d.real());
                const double dim = std::abs(d.imag());
                const bool mc = cfg.routes[a] == RouteKind::MC || cfg.routes[b] == RouteKind::MC;
                const double band = mc ? mc_band : cfg.tol;
                const double dev = std::max(dre, dim);
                const bool ok = dev <= band;
                max_dev = std::max(max_dev, dev);
                max_ratio = std::max(max_ratio, dev / band);
                exceedances += ok ? 0 : 1;
                ++pairs;
                os << t_fields(grid[i]) << to_string(cfg.routes[a]) << "," << to_string(cfg.routes[b]) << ","
                   << fmt(dre) << "," << fmt(dim) << "," << fmt(band) << "," << (ok ? "ok" : "exceeded") << "\n";
            }
        }
    }
    os << "# summary: points=" << grid.size() << " comparisons=" << pairs << "\n";
    os << "# max_deviation: " << fmt(max_dev) << "\n";
    os << "# max_deviation_over_band: " << fmt(max_ratio) << "\n";
    os << "# band_exceedances: " << exceedances << "\n";
    os << "# result: " << (exceedances == 0 ? "pass" : "fail") << "\n";
    return exceedances == 0 ? kOk : kToleranceExceeded;
}

int run_sample(const ParsedSpec& spec, const RunConfig& cfg, std::ostream& os)
{
    if (cfg.mc_count < 1) throw SpecError("--mc-count must be positive");
    Evaluator ev(spec, cfg);
    auto batch = ev.draw(cfg.mc_count, sampling::SamplingOptions{cfg.seed, 0, cfg.workers});
    batch.provenance = "ellcf sample kind=" + to_string(spec.kind) + " spec_hash=" + hex(spec.hash);
    sampling::write_csv(batch, os);
    return kOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::ostringstream buf;
    int code = kOk;
    try {
        if (cfg.workers < 1) throw SpecError("--workers must be at least 1");
        const ParsedSpec spec = cfg.spec_text.empty() ? load_spec(cfg.spec_path)
                                                      : parse_spec(cfg.spec_text, cfg.spec_path.empty() ? "<spec>" : cfg.spec_path);
        switch (cfg.command) {
        case Command::Eval: code = run_eval(spec, cfg, buf); break;
        case Command::Compare: code = run_compare(spec, cfg, buf); break;
        case Command::Sample: code = run_sample(spec, cfg, buf); break;
        }
    } catch (const GridFailure& f) {
        err << "error: " << f.failure.message << "\n";
        return f.failure.code;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kSpecError;
    } catch (const std::exception& e) {
        err << "error: numeric failure: " << e.what() << "\n";
        return kNumericFailure;
    }
    if (cfg.out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot open output file " << cfg.out_path << "\n";
            return kSpecError;
        }
        f << buf.str();
    }
    if (code == kToleranceExceeded) err << "error: deviations exceed the declared tolerance\n";
    return code;
}

}  // namespace ellcf::cli
