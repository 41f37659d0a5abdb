// gaugelab <kind> --config <file> [--out <dir>] [--format csv,json] [--tolerance <x>]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gaugelab/cli/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Gauge-transformation verification scenarios"};
    gaugelab::cli::RunRequest req;
    std::string config, out, formats;
    double tolerance = 0.0;

    app.add_option("kind", req.kind, "classical-demo | gauge-transform | volkov | unitarity-check | keldysh-map")->required();
    app.add_option("--config", config, "scenario JSON file")->required();
    auto* out_opt = app.add_option("--out", out, "output directory (overrides the config)");
    auto* fmt_opt = app.add_option("--format", formats, "comma-separated subset of csv,json");
    auto* tol_opt = app.add_option("--tolerance", tolerance, "invariance tolerance override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    req.config = config;
    if (*out_opt) req.out = out;
    if (*fmt_opt) req.formats = formats;
    if (*tol_opt) req.tolerance = tolerance;
    return gaugelab::cli::run_cli(req, std::cout, std::cerr);
}
