// Command-line front end; everything goes through the shared-library C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "lipharm/lipharm.h"

namespace {

int fail_status(lph_status status) {
    std::fprintf(stderr, "lipharm: %s: %s\n", lph_status_message(status),
                 lph_last_error());
    return 2;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

int write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::fprintf(stderr, "lipharm: cannot write '%s'\n", path.c_str());
        return 2;
    }
    return 0;
}

// Takes ownership of the C string.
int write_owned(char* text, const std::string& path) {
    std::string copy(text ? text : "");
    lph_string_free(text);
    return write_text(copy, path);
}

struct RunArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int workers = 0;

    lph_run_options options() const {
        lph_run_options o{};
        o.has_seed = seed.has_value() ? 1 : 0;
        o.seed = seed.value_or(0);
        o.workers = workers;
        return o;
    }
};

void add_run_flags(CLI::App* cmd, RunArgs& args) {
    cmd->add_option("--config", args.config, "Scenario configuration (JSON)")
        ->required();
    cmd->add_option("--out", args.out, "Write the JSON report here instead of stdout");
    cmd->add_option("--seed", args.seed, "Override every seed in the config");
    cmd->add_option("--workers", args.workers,
                    "Cap worker threads (0 = library default)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for Hoelder estimates of bounded "
                 "harmonic functions on Lipschitz epigraphs"};
    app.require_subcommand(1);

    int dim = 2;
    double alpha = 0.5, lip = 0.0, c_vertical = 1.0;
    std::string constants_out;
    CLI::App* constants = app.add_subcommand(
        "constants", "Derive the estimate constants from (dim, alpha, lip, c)");
    constants->add_option("--dim", dim, "Ambient dimension (>= 2)")->required();
    constants->add_option("--alpha", alpha, "Hoelder exponent in (0,1)")->required();
    constants->add_option("--lip", lip, "Lipschitz bound of the graph")->required();
    constants->add_option("--c", c_vertical, "Vertical hypothesis constant")
        ->required();
    constants->add_option("--out", constants_out,
                          "Write the JSON bundle here instead of stdout");

    RunArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run the full estimate chain on a scenario; exit 0 iff every "
                  "inequality holds");
    add_run_flags(verify, verify_args);

    RunArgs seminorm_args;
    std::string mode = "global";
    CLI::App* seminorm =
        app.add_subcommand("seminorm", "Estimate one Hoelder seminorm");
    add_run_flags(seminorm, seminorm_args);
    seminorm->add_option("--mode", mode, "vertical | global | local");

    RunArgs extension_args;
    std::string csv_path;
    CLI::App* extension = app.add_subcommand(
        "extension", "Cigar-curve extension-domain check with per-decade ratios");
    add_run_flags(extension, extension_args);
    extension->add_option("--csv", csv_path, "Write the per-decade table here");

    RunArgs wos_args;
    CLI::App* wos = app.add_subcommand(
        "wos-eval", "Walk-on-spheres estimate at the configured point");
    add_run_flags(wos, wos_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (constants->parsed()) {
        char* text = nullptr;
        lph_status status = lph_run_constants(dim, alpha, lip, c_vertical, &text);
        if (status != LPH_OK) return fail_status(status);
        return write_owned(text, constants_out);
    }

    auto load = [](const RunArgs& args, std::string& config) {
        if (!read_file(args.config, config)) {
            std::fprintf(stderr, "lipharm: cannot read '%s'\n", args.config.c_str());
            return false;
        }
        return true;
    };

    if (verify->parsed()) {
        std::string config;
        if (!load(verify_args, config)) return 2;
        lph_run_options options = verify_args.options();
        char* text = nullptr;
        int32_t all_pass = 0;
        lph_status status =
            lph_run_verify(config.c_str(), &options, &text, &all_pass);
        if (status != LPH_OK) return fail_status(status);
        int rc = write_owned(text, verify_args.out);
        if (rc != 0) return rc;
        return all_pass ? 0 : 1;
    }

    if (seminorm->parsed()) {
        std::string config;
        if (!load(seminorm_args, config)) return 2;
        lph_run_options options = seminorm_args.options();
        char* text = nullptr;
        lph_status status =
            lph_run_seminorm(config.c_str(), mode.c_str(), &options, &text);
        if (status != LPH_OK) return fail_status(status);
        return write_owned(text, seminorm_args.out);
    }

    if (extension->parsed()) {
        std::string config;
        if (!load(extension_args, config)) return 2;
        lph_run_options options = extension_args.options();
        char* text = nullptr;
        char* csv = nullptr;
        lph_status status =
            lph_run_extension(config.c_str(), &options, &text, &csv);
        if (status != LPH_OK) return fail_status(status);
        if (!csv_path.empty()) {
            int rc = write_owned(csv, csv_path);
            if (rc != 0) {
                lph_string_free(text);
                return rc;
            }
        } else {
            lph_string_free(csv);
        }
        return write_owned(text, extension_args.out);
    }

    if (wos->parsed()) {
        std::string config;
        if (!load(wos_args, config)) return 2;
        lph_run_options options = wos_args.options();
        char* text = nullptr;
        lph_status status = lph_run_wos(config.c_str(), &options, &text);
        if (status != LPH_OK) return fail_status(status);
        return write_owned(text, wos_args.out);
    }

    return 2;
}
