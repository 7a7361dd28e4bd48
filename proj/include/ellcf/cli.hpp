#pragma once

#include "ellcf/elliptical.hpp"
#include "ellcf/errors.hpp"
#include "ellcf/skewmix.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ellcf::cli {

enum class Command { Eval, Compare, Sample };
enum class RouteKind { Closed, Hankel, MC };

std::string to_string(RouteKind r);

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kSpecError = 2, kNumericFailure = 3, kToleranceExceeded = 4 };

/// A specification or usage problem; maps to exit code 2.
class SpecError : public DomainError {
public:
    using DomainError::DomainError;
};

struct RunConfig {
    Command command = Command::Eval;
    std::string spec_path;
    std::string spec_text;  // used instead of reading spec_path when non-empty
    std::string grid;
    std::vector<RouteKind> routes{RouteKind::Closed};
    int mc_count = 100000;
    std::uint64_t seed = 0;
    std::string out_path;  // empty: write to the output stream given to run()
    int workers = 1;
    double tol = 1e-6;          // deterministic-route agreement tolerance
    double band_factor = 4.0;   // Monte-Carlo band is band_factor / sqrt(N)
    double inject_closed_bias = 0.0;  // test hook: perturbs the closed route
};

enum class SpecKind { Elliptical, LSM, GSESkewNormal, SkewNormal, SMSN, SMU };

std::string to_string(SpecKind k);

/// A validated distribution specification.
struct ParsedSpec {
    SpecKind kind = SpecKind::Elliptical;
    int n = 0;
    Vector mu;
    Matrix sigma;
    std::optional<DensityGenerator> generator;
    std::optional<skew::LSMixtureSpec> lsm;
    std::optional<skew::SkewNormalSpec> skew_normal;
    std::optional<skew::SMSNSpec> smsn;
    std::string canonical;  // normalised JSON text
    std::uint64_t hash = 0; // FNV-1a of canonical
};

/// Parses and validates a JSON spec. Errors carry "PATH:LINE: field 'x': ...".
ParsedSpec parse_spec(const std::string& text, const std::string& path = "<spec>");
ParsedSpec load_spec(const std::string& path);

/// Grid forms: "axis:DIM:START:STOP:COUNT" (DIM 1-based, other coordinates
/// zero) and "list:a,b;c,d" (explicit vectors separated by ';').
std::vector<Vector> parse_grid(const std::string& text, int n);

std::vector<RouteKind> parse_routes(const std::string& text);

/// Runs a command, writing CSV to cfg.out_path or `out`, diagnostics to
/// `err`; returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ellcf::cli
