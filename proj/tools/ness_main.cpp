#include "ness/config.hpp"
#include "ness/errors.hpp"
#include "ness/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

int default_workers() {
    if (const char* env = std::getenv("NESS_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
        throw ness::Error(ness::ErrorKind::config, std::string("NESS_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ness::Error(ness::ErrorKind::config, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail(const ness::Error& e) {
    const int code = ness::exit_code(e.kind());
    std::cerr << ness::error_json(ness::to_string(e.kind()), e.what(), code) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state fidelity metric for quadratic open fermion chains"};
    std::string task, config_path, out_path, format;
    std::vector<std::string> params;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    bool version = false;

    app.add_option("task", task, "steady-state | metric | gap | scaling | phase-diagram | oracle-check");
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", workers, "worker threads (default: NESS_WORKERS or hardware)")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--param", params, "override a config entry, key=value")->take_all();
    app.add_flag("--version", version, "print artifact and schema versions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ness::exit_code(ness::ErrorKind::config);
    }

    if (version) {
        std::cout << "ness " << ness::artifact_version << " (schema " << ness::schema_version << ")\n";
        return 0;
    }

    try {
        ness::ConfigEntries entries = config_path.empty() ? ness::ConfigEntries{} : ness::parse_entries(read_file(config_path));
        for (const auto& p : params) ness::apply_override(entries, p);
        if (!task.empty()) entries["task"] = {task, 0};
        if (!format.empty()) entries["format"] = {format, 0};
        if (!out_path.empty()) entries["output"] = {out_path, 0};
        if (seed) entries["seed"] = {std::to_string(*seed), 0};
        if (workers) entries["workers"] = {std::to_string(*workers), 0};
        const ness::RunConfig cfg = ness::build_config(entries);

        const int nworkers = cfg.workers ? *cfg.workers : default_workers();
        const ness::RunRecord rec = ness::run(cfg, nworkers);
        if (cfg.output_path.empty()) {
            std::cout << rec.output;
        } else {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) throw ness::Error(ness::ErrorKind::config, "cannot write '" + cfg.output_path + "'");
            out << rec.output;
        }
        std::cerr << "wall_time_seconds=" << rec.wall_seconds << '\n';
        return rec.exit_code;
    } catch (const ness::Error& e) {
        return fail(e);
    }
}
