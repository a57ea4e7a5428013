#pragma once

#include "ness/config.hpp"

#include <string>

namespace ness {

inline constexpr const char* artifact_version = "1.0.0";
inline constexpr const char* schema_version = "ness.run/1";

inline constexpr const char* phase_csv_header = "h,gamma,n,g_max,g_hh,g_gg,g_hg,delta,purity,status";

/// Result of one task. `output` is the serialized payload; wall time is
/// kept out of it so that identical configs give identical bytes.
struct RunRecord {
    std::string output;
    double wall_seconds = 0.0;
    int exit_code = 0;
};

/// Runs the configured task with the given worker count. Module errors
/// propagate as ness::Error.
RunRecord run(const RunConfig& config, int workers);

/// One-line JSON error object for stderr.
std::string error_json(const std::string& kind, const std::string& message, int exit_code);

/// %.17g formatting used for every CSV real.
std::string format_real(double x);

}  // namespace ness
