#pragma once

#include "transformloc/simulator.hpp"

#include <span>
#include <utility>
#include <vector>

namespace transformloc {

struct SuccessRate {
    double accuracy = 0.0;
    int time_limit = 0;
    double rate = 0.0;
};

struct MetricsSummary {
    /// ate[t][i] = |y_i(t) - yhat_i(t)|.
    std::vector<std::vector<double>> ate;
    /// (value, fraction of samples <= value), value ascending.
    std::vector<std::pair<double, double>> ate_cdf;
    double ate_mean = 0.0;
    double ate_p50 = 0.0;
    double ate_p95 = 0.0;
    std::vector<SuccessRate> success;
    /// Sum over records and BMAVs of tr(Sigma).
    double xi_T = 0.0;
};

struct MetricsOptions {
    std::vector<double> accuracies;
    std::vector<int> time_limits;
    double cdf_max = 5.0;
    double cdf_step = 0.05;
};

MetricsOptions metrics_options(const ScenarioConfig &config);

/// Record t is the state after t + 1 steps, i.e. at time (t + 1) dt. A BMAV
/// counts as a success for (eps, tau) when its true position is within eps of
/// its destination at its start (time 0) or at some record no later than tau.
MetricsSummary compute_metrics(const SimTrace &trace, const MetricsOptions &options);

/// Linear-interpolation percentile (q in [0, 1]) of unsorted samples.
double percentile(std::vector<double> samples, double q);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace transformloc
