#pragma once

#include "ness/errors.hpp"
#include "ness/models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ness {

enum class FitQuality { good, average, bad };
const char* to_string(FitQuality q);

/// log value = exponent * log n + intercept, least squares.
struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> n_values;
    std::vector<double> values;
    FitQuality quality = FitQuality::bad;
};

/// Requires at least 4 strictly increasing sizes and positive values
/// (domain error otherwise). Quality: good for r^2 >= 0.995, average for
/// r^2 >= 0.95.
ScalingFit fit_powerlaw(const std::vector<double>& ns, const std::vector<double>& values);

enum class ModelKind { xy_boundary, ring_numeric, ring_analytic };
const char* to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// Fixed model parameters; h, gamma and n are supplied per evaluation.
struct ModelFamily {
    ModelKind kind = ModelKind::xy_boundary;
    XYBoundaryConfig xy;
    RingConfig ring;
};

struct PhasePoint {
    double h = 0.0;
    double gamma = 0.0;
    int n = 0;
    double g_max = 0.0;
    double g_hh = 0.0;
    double g_gg = 0.0;
    double g_hg = 0.0;
    double delta = 0.0;
    double purity = 0.0;
    /// "ok", or the error kind that stopped the pipeline at this point.
    std::string status = "ok";
    std::string message;
    std::optional<ErrorKind> error;
    /// max over axes of ds^2 / (2 n P_C |dC|^2) and (ds^2/n) / gap bound;
    /// only filled by the numeric pipelines.
    double cs_ratio = 0.0;
    double gap_ratio = 0.0;
    bool bounds_checked = false;
    bool bounds_ok = true;

    bool ok() const { return !error.has_value(); }
};

/// build -> solve_steady -> solve_derivatives -> metric_tensor -> gap, plus
/// the two upper bounds along each axis. Errors are caught into status.
PhasePoint evaluate_point(const ModelFamily& family, double h, double gamma, int n);

struct GridSpec {
    double h_min = 0.0, h_max = 0.0;
    int h_steps = 1;
    double gamma_min = 0.0, gamma_max = 0.0;
    int gamma_steps = 1;

    void validate() const;
    double h_at(int i) const;
    double gamma_at(int j) const;
};

/// Evaluates the grid with `workers` threads. Rows come out with h as the
/// outer index and gamma as the inner one, independent of scheduling.
std::vector<PhasePoint> sweep_grid(const ModelFamily& family, const GridSpec& grid, int n, int workers);

/// The same pipeline over a list of sizes at fixed (h, gamma).
std::vector<PhasePoint> sweep_sizes(const ModelFamily& family, double h, double gamma,
                                    const std::vector<int>& ns, int workers);

struct SizeFits {
    ScalingFit gap;
    ScalingFit g_max;
    ScalingFit g_hh;
    ScalingFit g_gg;
};

/// Fits every series of a size sweep; throws domain if any point failed.
SizeFits fit_sizes(const std::vector<PhasePoint>& points);

struct PhaseReport {
    std::string row;
    double expected_gap_exponent = 0.0;
    double expected_g_exponent = 0.0;
    /// Which fit the |g| row refers to: "g_max", "g_hh" or "g_gg".
    std::string g_series;
    bool agrees = true;
    std::vector<std::string> notes;
};

inline constexpr double table_tolerance = 0.5;

/// Picks the table row for (h, gamma) and compares the fitted exponents to
/// it within +-0.5. Disagreements are reported in notes.
PhaseReport classify_phase(const SizeFits& fits, double h, double gamma);

/// Default size grid for scaling runs.
std::vector<int> default_sizes();

}  // namespace ness
