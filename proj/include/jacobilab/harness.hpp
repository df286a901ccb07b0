#ifndef JACOBILAB_HARNESS_HPP
#define JACOBILAB_HARNESS_HPP

#include "jacobilab/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jlab {

/// One verification experiment. kind selects the check; unused fields keep
/// their defaults. Every flag of the CLI maps onto one field here.
struct ExperimentConfig {
    std::string kind; // coeffs | zeros | martingale | charpoly | eigen | stationary | ode

    int n_particles = 3;
    double kappa = 2.0; // kInfiniteKappa allowed
    double p = 5.0;
    double q = 5.0;
    std::optional<MultiplicityParams> k; // overrides (kappa, p, q) when set

    double dt = 0.0; // 0 -> min(1e-3, 0.1/(p+q))
    std::vector<double> t_grid = {0.25, 0.5, 1.0};
    std::vector<double> y_grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
    std::size_t n_paths = 20'000;
    std::size_t n_draws = 100'000;
    int n_points = 100; // random points for the eigen check
    double ode_h = 1e-4;
    double t_max = 1.0;
    std::uint64_t seed = 1;
    int n_threads = 1;

    double deterministic_tol = 1e-9;
    double z_max = 3.0;
    double moment_abs_floor = 0.01; // absolute floor on the MC moment check
    bool compare_printed = false;
};

/// One observable row. For deterministic checks stderr is 0 and tolerance
/// carries the absolute bound; zscore = (estimate - predicted) /
/// max(stderr, tolerance / z_max), so pass is uniformly |zscore| <= z_max.
struct ReportRow {
    std::string name;
    double t = 0.0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double predicted = 0.0;
    double tolerance = 0.0;
    double zscore = 0.0;
    bool informational = false; // excluded from the pass decision
};

struct VerificationReport {
    std::vector<ReportRow> rows;
    double max_abs_z = 0.0; // over non-informational rows
    bool pass = false;
    double wall_time_s = 0.0;
    ExperimentConfig config;
};

ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& config);

/// Executes the experiment. Throws std::invalid_argument for an unusable
/// config and std::runtime_error on numeric breakdown.
VerificationReport run(const ExperimentConfig& config);

/// Deterministic serializations (identical input -> identical bytes).
std::string report_render_csv(const VerificationReport& report);
std::string report_render_json(const VerificationReport& report);

/// Effective (kappa, p, q) of a config, applying the k-override.
Params effective_params(const ExperimentConfig& config);

/// Finishes a row: fills zscore from estimate/predicted/stderr/tolerance.
ReportRow make_row(std::string name, double t, double estimate, double stderr_,
                   double predicted, double tolerance, double z_max,
                   bool informational = false);

} // namespace jlab

#endif
