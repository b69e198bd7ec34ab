#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "maxsurf/jobconfig.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal space-like surfaces in the neutral 4-space"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";

    const char* names[] = {"invariants", "verify", "build", "transform", "correspond"};
    const char* descs[] = {
        "invariant fields (E, K, kappa, nu, mu) as CSV plus a summary",
        "finite-difference residuals of the differential identities",
        "surface patch from the holomorphic data",
        "apply a motion / homothety / associated-family / coordinate change",
        "split a surface into its two Minkowski 3-space factors and cross-check",
    };
    for (int k = 0; k < 5; ++k) {
        CLI::App* sub = app.add_subcommand(names[k], descs[k]);
        sub->add_option("--config", config_path, "job config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (default: .)");
    }

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    std::string config;
    try {
        config = read_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::string log;
    int rc = maxsurf::run_job(command, config, out_dir, &log);
    if (!log.empty()) (rc == 0 ? std::cout : std::cerr) << log;
    return rc;
}
