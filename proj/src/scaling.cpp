#include "ness/scaling.hpp"
#include "ness/bures.hpp"
#include "ness/errors.hpp"
#include "ness/sylvester.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace ness {

const char* to_string(FitQuality q) {
    switch (q) {
        case FitQuality::good: return "good";
        case FitQuality::average: return "average";
        case FitQuality::bad: return "bad";
    }
    return "?";
}

ScalingFit fit_powerlaw(const std::vector<double>& ns, const std::vector<double>& values) {
    if (ns.size() != values.size() || ns.size() < 4)
        throw Error(ErrorKind::domain, "fit_powerlaw: need at least 4 (n, value) pairs of equal length");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(ns[i] > 0.0) || (i > 0 && !(ns[i] > ns[i - 1])))
            throw Error(ErrorKind::domain, "fit_powerlaw: sizes must be positive and strictly increasing");
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            std::ostringstream os;
            os << "fit_powerlaw: value " << values[i] << " at n = " << ns[i] << " is not positive";
            throw Error(ErrorKind::domain, os.str());
        }
    }
    const std::size_t m = ns.size();
    std::vector<double> x(m), y(m);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = std::log(ns[i]);
        y[i] = std::log(values[i]);
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    ScalingFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    fit.r_squared = syy > 0.0 ? std::min(1.0, sxy * sxy / (sxx * syy)) : 1.0;
    fit.n_values = ns;
    fit.values = values;
    fit.quality = fit.r_squared >= 0.995 ? FitQuality::good
                  : fit.r_squared >= 0.95 ? FitQuality::average
                                          : FitQuality::bad;
    return fit;
}

const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::xy_boundary: return "xy_boundary";
        case ModelKind::ring_numeric: return "ring_numeric";
        case ModelKind::ring_analytic: return "ring_analytic";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "xy_boundary") return ModelKind::xy_boundary;
    if (s == "ring_numeric") return ModelKind::ring_numeric;
    if (s == "ring_analytic") return ModelKind::ring_analytic;
    throw Error(ErrorKind::config, "unknown model '" + s + "'");
}

namespace {

void fill_metric(PhasePoint& p, const MetricTensor& g) {
    p.g_max = g.largest_eigenvalue();
    p.g_hh = g.at("h", "h");
    p.g_gg = g.at("gamma", "gamma");
    p.g_hg = g.at("h", "gamma");
}

void numeric_pipeline(PhasePoint& p, const ParametrizedModel& pm) {
    const StructureMatrices s = build_structure(pm.model);
    const SylvesterSolver solver(s.x);
    const SylvesterSolution sol = solve_steady(s, solver);
    const std::vector<StructureDerivative> ds = pm.structure_derivatives();
    const DerivativeSet dcs = solve_derivatives(solver, pm.axes(), ds, sol.c);
    fill_metric(p, metric_tensor(sol.c, dcs));
    p.delta = gap(s).delta;
    p.purity = purity(sol.c);
    p.bounds_checked = true;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        const BoundReport b = bound_report(s, ds[a], sol.c, dcs.dc[a]);
        if (b.cs_bound > 0.0) p.cs_ratio = std::max(p.cs_ratio, b.ds2 / b.cs_bound);
        if (b.gap_bound_defined && b.gap_bound > 0.0) p.gap_ratio = std::max(p.gap_ratio, b.ds2_per_n / b.gap_bound);
        p.bounds_ok = p.bounds_ok && b.cs_satisfied && b.gap_satisfied;
    }
}

void analytic_pipeline(PhasePoint& p, const RingConfig& cfg) {
    fill_metric(p, ring_metric_analytic(cfg));
    const double lam = cfg.lambda();
    double log_purity = 0.0;
    for (const auto& m : ring_modes(cfg.n, cfg.h, cfg.gamma)) {
        const double c = lam * std::cos(0.5 * m.q);
        log_purity += std::log(0.5 * (1.0 + c * c));
    }
    p.purity = std::exp(log_purity);
    p.delta = ring_gap(cfg);
}

}  // namespace

PhasePoint evaluate_point(const ModelFamily& family, double h, double gamma, int n) {
    PhasePoint p;
    p.h = h;
    p.gamma = gamma;
    p.n = n;
    try {
        switch (family.kind) {
            case ModelKind::xy_boundary: {
                XYBoundaryConfig cfg = family.xy;
                cfg.n = n;
                cfg.h = h;
                cfg.gamma = gamma;
                numeric_pipeline(p, build_xy_boundary(cfg));
                break;
            }
            case ModelKind::ring_numeric:
            case ModelKind::ring_analytic: {
                RingConfig cfg = family.ring;
                cfg.n = n;
                cfg.h = h;
                cfg.gamma = gamma;
                if (family.kind == ModelKind::ring_numeric)
                    numeric_pipeline(p, build_ring_numeric(cfg));
                else
                    analytic_pipeline(p, cfg);
                break;
            }
        }
    } catch (const Error& e) {
        p.status = to_string(e.kind());
        p.message = e.what();
        p.error = e.kind();
    }
    return p;
}

void GridSpec::validate() const {
    const auto axis = [](double lo, double hi, int steps, const char* name) {
        std::ostringstream os;
        if (steps < 1 || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo || (steps == 1 && hi != lo)) {
            os << "grid: " << name << " axis needs steps >= 2 over [min, max], or steps = 1 with min = max";
            throw Error(ErrorKind::config, os.str());
        }
    };
    axis(h_min, h_max, h_steps, "h");
    axis(gamma_min, gamma_max, gamma_steps, "gamma");
}

double GridSpec::h_at(int i) const {
    return h_steps == 1 ? h_min : h_min + (h_max - h_min) * i / (h_steps - 1);
}

double GridSpec::gamma_at(int j) const {
    return gamma_steps == 1 ? gamma_min : gamma_min + (gamma_max - gamma_min) * j / (gamma_steps - 1);
}

namespace {

template <class Task>
void run_parallel(std::size_t count, int workers, Task&& task) {
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<PhasePoint> sweep_grid(const ModelFamily& family, const GridSpec& grid, int n, int workers) {
    grid.validate();
    const std::size_t count = static_cast<std::size_t>(grid.h_steps) * grid.gamma_steps;
    std::vector<PhasePoint> out(count);
    run_parallel(count, workers, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / grid.gamma_steps);
        const int j = static_cast<int>(idx % grid.gamma_steps);
        out[idx] = evaluate_point(family, grid.h_at(i), grid.gamma_at(j), n);
    });
    return out;
}

std::vector<PhasePoint> sweep_sizes(const ModelFamily& family, double h, double gamma,
                                    const std::vector<int>& ns, int workers) {
    std::vector<PhasePoint> out(ns.size());
    run_parallel(ns.size(), workers, [&](std::size_t i) { out[i] = evaluate_point(family, h, gamma, ns[i]); });
    return out;
}

SizeFits fit_sizes(const std::vector<PhasePoint>& points) {
    std::vector<double> ns, gaps, gmax, ghh, ggg;
    for (const auto& p : points) {
        if (!p.ok()) {
            std::ostringstream os;
            os << "fit_sizes: point n = " << p.n << " failed (" << p.status << ")";
            throw Error(ErrorKind::domain, os.str());
        }
        ns.push_back(p.n);
        gaps.push_back(p.delta);
        gmax.push_back(p.g_max);
        ghh.push_back(p.g_hh);
        ggg.push_back(p.g_gg);
    }
    return {fit_powerlaw(ns, gaps), fit_powerlaw(ns, gmax), fit_powerlaw(ns, ghh), fit_powerlaw(ns, ggg)};
}

PhaseReport classify_phase(const SizeFits& fits, double h, double gamma) {
    const PhaseDiagnostics d = phase_diagnostics(h, gamma);
    PhaseReport r;
    const double ah = std::abs(h);
    const ScalingFit* g = &fits.g_max;
    r.g_series = "g_max";
    if (h == 0.0) {
        r.row = "Critical (*) h = 0";
        r.expected_gap_exponent = -3.0;
        r.expected_g_exponent = 6.0;
        g = &fits.g_hh;
        r.g_series = "g_hh";
    } else if (gamma == 0.0 && ah < d.h_c) {
        r.row = "Critical (*) gamma = 0";
        r.expected_gap_exponent = -3.0;
        r.expected_g_exponent = 2.0;
        g = &fits.g_gg;
        r.g_series = "g_gg";
    } else if (d.label == PhaseLabel::critical_line) {
        r.row = "Critical";
        r.expected_gap_exponent = -5.0;
        r.expected_g_exponent = 6.0;
    } else if (ah < d.h_c) {
        r.row = "Long-range";
        r.expected_gap_exponent = -3.0;
        r.expected_g_exponent = 3.0;
    } else {
        r.row = "Short-range";
        r.expected_gap_exponent = -3.0;
        r.expected_g_exponent = 1.0;
    }
    const auto compare = [&](const char* what, double fitted, double expected) {
        if (std::abs(fitted - expected) > table_tolerance) {
            std::ostringstream os;
            os << what << " exponent " << fitted << " differs from " << expected << " by more than "
               << table_tolerance;
            r.notes.push_back(os.str());
            r.agrees = false;
        }
    };
    compare("gap", fits.gap.exponent, r.expected_gap_exponent);
    compare(r.g_series.c_str(), g->exponent, r.expected_g_exponent);
    return r;
}

std::vector<int> default_sizes() {
    return {20, 32, 48, 64, 88, 120};
}

}  // namespace ness
