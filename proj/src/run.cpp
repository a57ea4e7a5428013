#include "ness/run.hpp"
#include "ness/bures.hpp"
#include "ness/errors.hpp"
#include "ness/oracle.hpp"
#include "ness/sylvester.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace ness {

using json = nlohmann::ordered_json;

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string error_json(const std::string& kind, const std::string& message, int exit_code) {
    json j;
    j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", exit_code}};
    return j.dump();
}

namespace {

json matrix_json(const MatrixR& m) {
    std::vector<double> data;
    data.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

json fit_json(const ScalingFit& f) {
    return {{"exponent", f.exponent},   {"intercept", f.intercept},        {"r_squared", f.r_squared},
            {"quality", to_string(f.quality)}, {"n_values", f.n_values}, {"values", f.values}};
}

json point_json(const PhasePoint& p) {
    json j = {{"h", p.h},         {"gamma", p.gamma}, {"n", p.n},         {"g_max", p.g_max},
              {"g_hh", p.g_hh},   {"g_gg", p.g_gg},   {"g_hg", p.g_hg},   {"delta", p.delta},
              {"purity", p.purity}, {"status", p.status}};
    if (!p.ok()) j["message"] = p.message;
    if (p.bounds_checked)
        j["bounds"] = {{"cs_ratio", p.cs_ratio}, {"gap_ratio", p.gap_ratio}, {"satisfied", p.bounds_ok}};
    return j;
}

std::string point_csv_row(const PhasePoint& p) {
    std::ostringstream os;
    os << format_real(p.h) << ',' << format_real(p.gamma) << ',' << p.n << ',' << format_real(p.g_max) << ','
       << format_real(p.g_hh) << ',' << format_real(p.g_gg) << ',' << format_real(p.g_hg) << ','
       << format_real(p.delta) << ',' << format_real(p.purity) << ',' << p.status << '\n';
    return os.str();
}

std::string points_csv(const std::vector<PhasePoint>& points) {
    std::string out = std::string(phase_csv_header) + '\n';
    for (const auto& p : points) out += point_csv_row(p);
    return out;
}

json envelope(const RunConfig& cfg) {
    json j;
    j["schema"] = schema_version;
    j["version"] = artifact_version;
    j["task"] = to_string(cfg.task);
    j["config"] = cfg.echo;
    return j;
}

ParametrizedModel build_numeric(const RunConfig& cfg) {
    if (cfg.family.kind == ModelKind::xy_boundary) {
        XYBoundaryConfig x = cfg.family.xy;
        x.n = cfg.n;
        x.h = cfg.h;
        x.gamma = cfg.gamma;
        return build_xy_boundary(x);
    }
    RingConfig r = cfg.family.ring;
    r.n = cfg.n;
    r.h = cfg.h;
    r.gamma = cfg.gamma;
    return build_ring_numeric(r);
}

std::string key_value_csv(const std::vector<std::pair<std::string, double>>& rows) {
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows) out += k + ',' + format_real(v) + '\n';
    return out;
}

RunRecord steady_state_task(const RunConfig& cfg) {
    const ParametrizedModel pm = build_numeric(cfg);
    const StructureMatrices s = build_structure(pm.model);
    const SylvesterSolution sol = solve_steady(s);
    const MatrixR c_imag = sol.c.matrix().imag();
    RunRecord rec;
    if (cfg.format == OutputFormat::csv) {
        std::ostringstream os;
        os << "i,j,c_imag\n";
        for (Eigen::Index i = 0; i < c_imag.rows(); ++i)
            for (Eigen::Index j = 0; j < c_imag.cols(); ++j)
                os << i << ',' << j << ',' << format_real(c_imag(i, j)) << '\n';
        rec.output = os.str();
        return rec;
    }
    const int n = sol.c.modes();
    std::vector<double> sz;
    MatrixR zz(n, n);
    for (int i = 1; i <= n; ++i) {
        sz.push_back(sz_expectation(sol.c, i));
        for (int j = 1; j <= n; ++j) zz(i - 1, j - 1) = zz_correlator(sol.c, i, j);
    }
    json j = envelope(cfg);
    j["payload"] = {{"modes", n},
                    {"method", to_string(sol.method)},
                    {"residual", sol.residual},
                    {"delta", gap(s).delta},
                    {"purity", purity(sol.c)},
                    {"correlation_imag", matrix_json(c_imag)},
                    {"sz", sz},
                    {"zz", matrix_json(zz)}};
    rec.output = j.dump(2) + '\n';
    return rec;
}

RunRecord metric_task(const RunConfig& cfg) {
    const PhasePoint p = evaluate_point(cfg.family, cfg.h, cfg.gamma, cfg.n);
    if (p.error) throw Error(*p.error, p.message);
    RunRecord rec;
    if (cfg.format == OutputFormat::csv) {
        rec.output = std::string(phase_csv_header) + '\n' + point_csv_row(p);
        return rec;
    }
    json j = envelope(cfg);
    MatrixR g(2, 2);
    g << p.g_hh, p.g_hg, p.g_hg, p.g_gg;
    j["payload"] = point_json(p);
    j["payload"]["axes"] = {"h", "gamma"};
    j["payload"]["g"] = matrix_json(g);
    rec.output = j.dump(2) + '\n';
    return rec;
}

RunRecord gap_task(const RunConfig& cfg) {
    const ParametrizedModel pm = build_numeric(cfg);
    const StructureMatrices s = build_structure(pm.model);
    const GapReport g = gap(s);
    std::vector<cplx> spec = liouvillean_spectrum(g.x_spectrum, 2);
    std::sort(spec.begin(), spec.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() < b.imag();
    });
    if (spec.size() > 16) spec.resize(16);
    RunRecord rec;
    std::vector<std::pair<std::string, double>> rows{{"delta", g.delta},
                                                     {"stable", g.stable ? 1.0 : 0.0},
                                                     {"eigenvector_condition", g.eigenvector_condition}};
    GapIdentityReport p1;
    const bool have_p1 = g.stable;
    if (have_p1) {
        p1 = gap_identity_check(g);
        rows.push_back({"delta_l", p1.delta_l});
        rows.push_back({"delta_xhat", p1.delta_xhat});
        rows.push_back({"gap_identity_discrepancy", p1.max_discrepancy});
    }
    if (cfg.format == OutputFormat::csv) {
        rec.output = key_value_csv(rows);
        return rec;
    }
    const auto complex_list = [](const std::vector<cplx>& v) {
        json arr = json::array();
        for (cplx z : v) arr.push_back({z.real(), z.imag()});
        return arr;
    };
    json j = envelope(cfg);
    j["payload"] = {{"delta", g.delta},
                    {"stable", g.stable},
                    {"diagonalizable_hint", g.diagonalizable_hint},
                    {"eigenvector_condition", g.eigenvector_condition},
                    {"x_spectrum", complex_list(g.x_spectrum)},
                    {"slowest_liouvillean_eigenvalues", complex_list(spec)}};
    if (have_p1)
        j["payload"]["gap_identity"] = {{"delta", p1.delta},
                                 {"delta_l", p1.delta_l},
                                 {"delta_xhat", p1.delta_xhat},
                                 {"max_discrepancy", p1.max_discrepancy}};
    rec.output = j.dump(2) + '\n';
    return rec;
}

RunRecord scaling_task(const RunConfig& cfg, int workers) {
    const std::vector<PhasePoint> points = sweep_sizes(cfg.family, cfg.h, cfg.gamma, cfg.ns, workers);
    RunRecord rec;
    if (cfg.format == OutputFormat::csv) {
        rec.output = points_csv(points);
        return rec;
    }
    json j = envelope(cfg);
    json pts = json::array();
    for (const auto& p : points) pts.push_back(point_json(p));
    j["payload"]["points"] = pts;
    const SizeFits fits = fit_sizes(points);
    j["payload"]["fits"] = {{"gap", fit_json(fits.gap)},
                            {"g_max", fit_json(fits.g_max)},
                            {"g_hh", fit_json(fits.g_hh)},
                            {"g_gg", fit_json(fits.g_gg)}};
    if (cfg.family.kind == ModelKind::xy_boundary) {
        const PhaseReport r = classify_phase(fits, cfg.h, cfg.gamma);
        j["payload"]["classification"] = {{"row", r.row},
                                          {"g_series", r.g_series},
                                          {"expected_gap_exponent", r.expected_gap_exponent},
                                          {"expected_g_exponent", r.expected_g_exponent},
                                          {"agrees", r.agrees},
                                          {"notes", r.notes}};
    }
    rec.output = j.dump(2) + '\n';
    return rec;
}

RunRecord phase_diagram_task(const RunConfig& cfg, int workers) {
    const std::vector<PhasePoint> points = sweep_grid(cfg.family, cfg.grid, cfg.n, workers);
    RunRecord rec;
    if (cfg.format == OutputFormat::csv) {
        rec.output = points_csv(points);
        return rec;
    }
    json j = envelope(cfg);
    json pts = json::array();
    for (const auto& p : points) pts.push_back(point_json(p));
    j["payload"]["points"] = pts;
    rec.output = j.dump(2) + '\n';
    return rec;
}

constexpr double oracle_tolerance = 1e-8;

RunRecord oracle_check_task(const RunConfig& cfg) {
    if (cfg.n > 3) {
        std::ostringstream os;
        os << "oracle-check runs at n <= 3, got n = " << cfg.n;
        throw Error(ErrorKind::size_cap, os.str());
    }
    const ParametrizedModel pm = build_numeric(cfg);
    const SylvesterSolution sol = solve_steady(build_structure(pm.model));
    std::vector<oracle::DenseState> states{oracle::steady_state_dense(oracle::dense_liouvillean(pm.model))};
    if (cfg.family.kind == ModelKind::xy_boundary) {
        XYBoundaryConfig x = cfg.family.xy;
        x.n = cfg.n;
        x.h = cfg.h;
        x.gamma = cfg.gamma;
        states.push_back(oracle::steady_state_dense(oracle::xy_boundary_spin_liouvillean(x)));
    }
    double dev_c = 0.0, dev_purity = 0.0, dev_sz = 0.0, dev_zz = 0.0;
    for (const auto& st : states) {
        dev_c = std::max(dev_c, (oracle::correlations_from_state(st) - sol.c.matrix()).cwiseAbs().maxCoeff());
        dev_purity = std::max(dev_purity, std::abs(oracle::dense_purity(st) - purity(sol.c)));
        for (int i = 1; i <= cfg.n; ++i) {
            dev_sz = std::max(dev_sz, std::abs(oracle::dense_sz(st, i) - sz_expectation(sol.c, i)));
            for (int k = 1; k <= cfg.n; ++k)
                dev_zz = std::max(dev_zz, std::abs(oracle::dense_zz(st, i, k) - zz_correlator(sol.c, i, k)));
        }
    }
    const oracle::CarReport car = oracle::car_superoperator_check(cfg.n);
    double trace_defect = oracle::trace_preservation_defect(oracle::dense_liouvillean(pm.model));
    double normal_defect = oracle::normal_form_defect(pm.model);
    for (int k = 0; k < 3; ++k) {
        const QuadraticLindbladian m = oracle::random_model(cfg.n, 2, cfg.seed + k);
        trace_defect = std::max(trace_defect, oracle::trace_preservation_defect(oracle::dense_liouvillean(m)));
        normal_defect = std::max(normal_defect, oracle::normal_form_defect(m));
    }
    const bool pass = std::max({dev_c, dev_purity, dev_sz, dev_zz}) < oracle_tolerance &&
                      std::max({car.max_anticommutator_violation, car.max_vacuum_violation, trace_defect,
                                normal_defect}) < 1e-10;
    RunRecord rec;
    rec.exit_code = pass ? 0 : exit_code(ErrorKind::convergence);
    std::vector<std::pair<std::string, double>> rows{{"max_correlation_deviation", dev_c},
                                                     {"max_purity_deviation", dev_purity},
                                                     {"max_sz_deviation", dev_sz},
                                                     {"max_zz_deviation", dev_zz},
                                                     {"max_car_violation", car.max_anticommutator_violation},
                                                     {"max_vacuum_violation", car.max_vacuum_violation},
                                                     {"max_trace_preservation_defect", trace_defect},
                                                     {"max_normal_form_defect", normal_defect},
                                                     {"pass", pass ? 1.0 : 0.0}};
    if (cfg.format == OutputFormat::csv) {
        rec.output = key_value_csv(rows);
        return rec;
    }
    json j = envelope(cfg);
    for (const auto& [k, v] : rows)
        if (k != "pass") j["payload"][k] = v;
    j["payload"]["dense_models"] = states.size();
    j["payload"]["pass"] = pass;
    rec.output = j.dump(2) + '\n';
    return rec;
}

}  // namespace

RunRecord run(const RunConfig& config, int workers) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    switch (config.task) {
        case Task::steady_state: rec = steady_state_task(config); break;
        case Task::metric: rec = metric_task(config); break;
        case Task::gap: rec = gap_task(config); break;
        case Task::scaling: rec = scaling_task(config, workers); break;
        case Task::phase_diagram: rec = phase_diagram_task(config, workers); break;
        case Task::oracle_check: rec = oracle_check_task(config); break;
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace ness
