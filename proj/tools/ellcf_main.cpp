#include "ellcf/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* sub, ellcf::cli::RunConfig& cfg, std::string& routes, bool with_grid)
{
    sub->add_option("--spec", cfg.spec_path, "distribution spec (JSON)")->required();
    if (with_grid) {
        sub->add_option("--grid", cfg.grid, "axis:DIM:START:STOP:COUNT or list:a,b;c,d")->required();
        sub->add_option("--routes", routes, "comma-separated subset of closed,hankel,mc");
    }
    sub->add_option("--mc-count", cfg.mc_count, "Monte-Carlo sample size");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out_path, "output CSV (default: stdout)");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv)
{
    using ellcf::cli::Command;
    CLI::App app{"Characteristic functions of elliptical and skew-elliptical laws"};
    app.require_subcommand(1);

    ellcf::cli::RunConfig cfg;
    std::string routes = "closed";

    auto* eval = app.add_subcommand("eval", "evaluate the CF on a grid");
    add_common(eval, cfg, routes, true);

    auto* compare = app.add_subcommand("compare", "compare evaluation routes on a grid");
    routes = "closed,hankel";
    add_common(compare, cfg, routes, true);
    compare->add_option("--tol", cfg.tol, "tolerance for deterministic routes");
    compare->add_option("--band-factor", cfg.band_factor, "Monte-Carlo band is FACTOR/sqrt(N)");
    compare->add_option("--inject-closed-bias", cfg.inject_closed_bias)->group("");

    auto* sample = app.add_subcommand("sample", "draw a sample");
    add_common(sample, cfg, routes, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ellcf::cli::kSpecError;
    }

    if (eval->parsed()) {
        cfg.command = Command::Eval;
        if (eval->count("--routes") == 0) routes = "closed";
    } else if (compare->parsed()) {
        cfg.command = Command::Compare;
    } else {
        cfg.command = Command::Sample;
    }
    try {
        if (cfg.command != Command::Sample) cfg.routes = ellcf::cli::parse_routes(routes);
    } catch (const ellcf::cli::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ellcf::cli::kSpecError;
    }
    return ellcf::cli::run(cfg, std::cout, std::cerr);
}
