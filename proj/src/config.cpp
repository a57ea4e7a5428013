#include "ness/config.hpp"
#include "ness/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace ness {

const char* to_string(Task t) {
    switch (t) {
        case Task::steady_state: return "steady-state";
        case Task::metric: return "metric";
        case Task::gap: return "gap";
        case Task::scaling: return "scaling";
        case Task::phase_diagram: return "phase-diagram";
        case Task::oracle_check: return "oracle-check";
    }
    return "?";
}

Task task_from_string(const std::string& s) {
    for (Task t : {Task::steady_state, Task::metric, Task::gap, Task::scaling, Task::phase_diagram,
                   Task::oracle_check})
        if (s == to_string(t)) return t;
    throw Error(ErrorKind::config, "unknown task '" + s + "'");
}

const char* to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

OutputFormat format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw Error(ErrorKind::config, "unknown format '" + s + "'");
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "model",   "task",      "n",         "ns",        "h",           "gamma",       "gl_plus",
        "gl_minus", "gr_plus",  "gr_minus",  "mu",        "nu",          "epsilon",     "h_min",
        "h_max",   "h_steps",   "gamma_min", "gamma_max", "gamma_steps", "output",      "format",
        "seed",    "workers",
    };
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw Error(ErrorKind::config, os.str());
}

bool is_known(const std::string& key) {
    const auto& k = known_keys();
    return std::find(k.begin(), k.end(), key) != k.end();
}

std::pair<std::string, std::string> split_assignment(const std::string& raw, int line) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value, got '" + raw + "'");
    std::string key = trim(raw.substr(0, eq));
    std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (!is_known(key)) fail(line, "unknown key: " + key);
    if (value.empty()) fail(line, "key '" + key + "' has an empty value");
    return {key, value};
}

class Reader {
public:
    explicit Reader(const ConfigEntries& e) : e_(e) {}

    bool has(const std::string& key) const { return e_.count(key) > 0; }

    const ConfigEntry& require(const std::string& key) const {
        const auto it = e_.find(key);
        if (it == e_.end()) fail(0, "missing required key: " + key);
        return it->second;
    }

    std::string text(const std::string& key) const { return require(key).value; }

    double real(const std::string& key) const {
        const ConfigEntry& c = require(key);
        double v = 0.0;
        const char* end = c.value.data() + c.value.size();
        const auto [ptr, ec] = std::from_chars(c.value.data(), end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v))
            fail(c.line, "key '" + key + "': expected a finite real number, got '" + c.value + "'");
        return v;
    }

    double real_or(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

    double nonneg(const std::string& key) const {
        const double v = real(key);
        if (v < 0.0) fail(require(key).line, "key '" + key + "': must be >= 0");
        return v;
    }

    long long integer(const std::string& key, long long min_value) const {
        const ConfigEntry& c = require(key);
        return parse_int(key, c.value, c.line, min_value);
    }

    std::vector<int> int_list(const std::string& key, long long min_value) const {
        const ConfigEntry& c = require(key);
        std::vector<int> out;
        std::stringstream ss(c.value);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(parse_int(key, trim(item), c.line, min_value)));
        return out;
    }

    int line(const std::string& key) const { return require(key).line; }

private:
    static long long parse_int(const std::string& key, const std::string& s, int line, long long min_value) {
        long long v = 0;
        const char* end = s.data() + s.size();
        const auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || ptr != end)
            fail(line, "key '" + key + "': expected an integer, got '" + s + "'");
        if (v < min_value) {
            std::ostringstream os;
            os << "key '" << key << "': value " << v << " below minimum " << min_value;
            fail(line, os.str());
        }
        return v;
    }

    const ConfigEntries& e_;
};

}  // namespace

ConfigEntries parse_entries(const std::string& text) {
    ConfigEntries out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        auto [key, value] = split_assignment(raw, line);
        if (out.count(key)) {
            std::ostringstream os;
            os << "duplicate key '" << key << "' (first on line " << out[key].line << ")";
            fail(line, os.str());
        }
        out[key] = {value, line};
    }
    return out;
}

void apply_override(ConfigEntries& entries, const std::string& assignment) {
    auto [key, value] = split_assignment(trim(assignment), 0);
    entries[key] = {value, 0};
}

namespace {

// Type-checks every present key before completeness is looked at, so a bad
// value is reported on its own line even when other keys are missing.
void check_types(const Reader& r, const ConfigEntries& entries) {
    static const std::vector<std::string> reals{"h", "gamma", "gl_plus", "gl_minus", "gr_plus", "gr_minus",
                                                "mu", "nu", "epsilon", "h_min", "h_max", "gamma_min", "gamma_max"};
    static const std::vector<std::pair<std::string, long long>> ints{
        {"n", 2}, {"h_steps", 1}, {"gamma_steps", 1}, {"seed", 0}, {"workers", 1}};
    for (const auto& key : reals)
        if (entries.count(key)) r.real(key);
    for (const auto& [key, min_value] : ints)
        if (entries.count(key)) r.integer(key, min_value);
    if (entries.count("ns")) r.int_list("ns", 2);
}

}  // namespace

RunConfig build_config(const ConfigEntries& entries) {
    const Reader r(entries);
    check_types(r, entries);
    RunConfig cfg;
    const std::string model = r.text("model");
    try {
        cfg.family.kind = model_kind_from_string(model);
    } catch (const Error&) {
        fail(r.line("model"), "key 'model': expected xy_boundary, ring_numeric or ring_analytic, got '" + model + "'");
    }
    const std::string task = r.text("task");
    try {
        cfg.task = task_from_string(task);
    } catch (const Error&) {
        fail(r.line("task"), "key 'task': unknown task '" + task + "'");
    }

    if (cfg.family.kind == ModelKind::xy_boundary) {
        cfg.family.xy.gl_plus = r.nonneg("gl_plus");
        cfg.family.xy.gl_minus = r.nonneg("gl_minus");
        cfg.family.xy.gr_plus = r.nonneg("gr_plus");
        cfg.family.xy.gr_minus = r.nonneg("gr_minus");
    } else {
        cfg.family.ring.mu = r.real("mu");
        cfg.family.ring.nu = r.real("nu");
        cfg.family.ring.epsilon = r.real_or("epsilon", 1e-3);
        if (!(cfg.family.ring.epsilon > 0.0)) fail(r.line("epsilon"), "key 'epsilon': must be > 0");
    }

    if (cfg.task == Task::phase_diagram) {
        cfg.grid.h_min = r.real("h_min");
        cfg.grid.h_max = r.real("h_max");
        cfg.grid.h_steps = static_cast<int>(r.integer("h_steps", 1));
        cfg.grid.gamma_min = r.real("gamma_min");
        cfg.grid.gamma_max = r.real("gamma_max");
        cfg.grid.gamma_steps = static_cast<int>(r.integer("gamma_steps", 1));
        try {
            cfg.grid.validate();
        } catch (const Error& e) {
            fail(r.line("h_steps"), e.what());
        }
    } else {
        cfg.h = r.real("h");
        cfg.gamma = r.real("gamma");
    }

    if (cfg.task == Task::scaling) {
        cfg.ns = r.has("ns") ? r.int_list("ns", 2) : default_sizes();
        if (cfg.ns.size() < 4) fail(r.has("ns") ? r.line("ns") : 0, "key 'ns': scaling needs at least 4 sizes");
        for (std::size_t i = 1; i < cfg.ns.size(); ++i)
            if (cfg.ns[i] <= cfg.ns[i - 1]) fail(r.line("ns"), "key 'ns': sizes must be strictly increasing");
    } else {
        cfg.n = static_cast<int>(r.integer("n", 2));
    }

    cfg.format = cfg.task == Task::phase_diagram ? OutputFormat::csv : OutputFormat::json;
    if (r.has("format")) {
        try {
            cfg.format = format_from_string(r.text("format"));
        } catch (const Error&) {
            fail(r.line("format"), "key 'format': expected csv or json, got '" + r.text("format") + "'");
        }
    }
    if (r.has("output")) cfg.output_path = r.text("output");
    if (r.has("seed")) cfg.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
    if (r.has("workers")) cfg.workers = static_cast<int>(r.integer("workers", 1));

    for (const auto& [key, entry] : entries)
        if (key != "workers" && key != "output") cfg.echo[key] = entry.value;
    return cfg;
}

RunConfig parse_config(const std::string& text) {
    return build_config(parse_entries(text));
}

}  // namespace ness
