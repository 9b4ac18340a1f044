#include "transformloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace transformloc {
namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t k = 0;
    while (k < order.size()) {
        std::size_t end = k + 1;
        while (end < order.size() && v[order[end]] == v[order[k]]) {
            ++end;
        }
        const double rank = 0.5 * static_cast<double>(k + end - 1) + 1.0;
        for (std::size_t m = k; m < end; ++m) {
            ranks[order[m]] = rank;
        }
        k = end;
    }
    return ranks;
}

}  // namespace

MetricsOptions metrics_options(const ScenarioConfig &config) {
    return {.accuracies = config.success_accuracies,
            .time_limits = config.success_time_limits,
            .cdf_max = config.cdf_max,
            .cdf_step = config.cdf_step};
}

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) {
        return 0.0;
    }
    std::sort(samples.begin(), samples.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw std::invalid_argument("spearman_correlation: need two equally sized samples of length >= 2");
    }
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t k = 0; k < ra.size(); ++k) {
        sab += (ra[k] - mean) * (rb[k] - mean);
        saa += (ra[k] - mean) * (ra[k] - mean);
        sbb += (rb[k] - mean) * (rb[k] - mean);
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;
    }
    return sab / std::sqrt(saa * sbb);
}

MetricsSummary compute_metrics(const SimTrace &trace, const MetricsOptions &options) {
    MetricsSummary m;
    std::vector<double> pooled;
    for (const StepRecord &rec : trace.steps) {
        std::vector<double> row(rec.bmav_truth.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            row[i] = (rec.bmav_truth[i] - rec.beliefs[i].mean).norm();
            m.xi_T += uncertainty(rec.beliefs[i]);
        }
        pooled.insert(pooled.end(), row.begin(), row.end());
        m.ate.push_back(std::move(row));
    }

    if (!pooled.empty()) {
        m.ate_mean = std::accumulate(pooled.begin(), pooled.end(), 0.0) / static_cast<double>(pooled.size());
        m.ate_p50 = percentile(pooled, 0.50);
        m.ate_p95 = percentile(pooled, 0.95);

        std::vector<double> sorted = pooled;
        std::sort(sorted.begin(), sorted.end());
        const auto fraction_at = [&](double v) {
            const auto it = std::upper_bound(sorted.begin(), sorted.end(), v);
            return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
        };
        const auto points = static_cast<long>(std::floor(options.cdf_max / options.cdf_step + 1e-9));
        for (long k = 0; k <= points; ++k) {
            const double v = static_cast<double>(k) * options.cdf_step;
            m.ate_cdf.emplace_back(v, fraction_at(v));
        }
        if (sorted.back() > options.cdf_max) {
            m.ate_cdf.emplace_back(sorted.back(), 1.0);
        }
    }

    const auto &dests = trace.config.bmav_destinations;
    const auto &starts = trace.config.bmav_starts;
    const std::size_t n = dests.size();
    for (double eps : options.accuracies) {
        // Earliest time each BMAV is within eps of its destination; the start
        // position counts as time 0.
        std::vector<double> first(n, -1.0);
        for (std::size_t i = 0; i < n && i < starts.size(); ++i) {
            if ((starts[i] - dests[i]).norm() <= eps) {
                first[i] = 0.0;
            }
        }
        for (const StepRecord &rec : trace.steps) {
            for (std::size_t i = 0; i < n && i < rec.bmav_truth.size(); ++i) {
                if (first[i] < 0.0 && (rec.bmav_truth[i] - dests[i]).norm() <= eps) {
                    first[i] = static_cast<double>(rec.t + 1) * trace.config.dt;
                }
            }
        }
        for (int tau : options.time_limits) {
            std::size_t hits = 0;
            for (double f : first) {
                if (f >= 0.0 && f <= static_cast<double>(tau) + 1e-9) {
                    ++hits;
                }
            }
            m.success.push_back(
                {.accuracy = eps, .time_limit = tau, .rate = n == 0 ? 0.0 : static_cast<double>(hits) / n});
        }
    }
    return m;
}

}  // namespace transformloc
