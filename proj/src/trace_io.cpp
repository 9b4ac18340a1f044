#include "transformloc/trace_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace transformloc {
namespace {

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string &s, long line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
    return v;
}

long parse_long(const std::string &s, long line_no) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream &out, const SimTrace &trace) {
    out << kTraceHeader << '\n';
    for (const StepRecord &rec : trace.steps) {
        std::vector<std::string> observed(rec.bmav_truth.size());
        for (const CorrectionEvent &e : rec.corrections) {
            auto &cell = observed.at(e.observation.bmav_id);
            if (!cell.empty()) cell += ';';
            cell += std::to_string(e.observation.amav_id);
        }
        for (std::size_t j = 0; j < rec.amav_poses.size(); ++j) {
            const Pose &p = rec.amav_poses[j];
            const Pose &e = rec.amav_pose_estimates.empty() ? p : rec.amav_pose_estimates[j];
            out << rec.t << ",amav," << j << ',' << format_number(p.x1) << ',' << format_number(p.x2) << ','
                << format_number(e.x1) << ',' << format_number(e.x2) << ",,,,,\n";
        }
        for (std::size_t i = 0; i < rec.bmav_truth.size(); ++i) {
            const Belief &b = rec.beliefs[i];
            out << rec.t << ",bmav," << i << ',' << format_number(rec.bmav_truth[i].x()) << ','
                << format_number(rec.bmav_truth[i].y()) << ',' << format_number(b.mean.x()) << ','
                << format_number(b.mean.y()) << ',' << format_number(b.cov(0, 0)) << ','
                << format_number(b.cov(0, 1)) << ',' << format_number(b.cov(1, 1)) << ',';
            if (i < rec.group_of.size()) out << rec.group_of[i];
            out << ',' << observed[i] << '\n';
        }
    }
}

void write_trace_csv(const std::filesystem::path &path, const SimTrace &trace) {
    std::ostringstream buf;
    write_trace_csv(buf, trace);
    write_text_file(path, buf.str());
}

SimTrace read_trace_csv(std::istream &in, const ScenarioConfig &config) {
    SimTrace trace;
    trace.config = config;
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) {
        throw std::runtime_error("trace: missing or unexpected header");
    }
    std::map<long, StepRecord> steps;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": expected 12 fields");
        }
        const long t = parse_long(f[0], line_no);
        StepRecord &rec = steps[t];
        rec.t = t;
        const auto id = static_cast<std::size_t>(parse_long(f[2], line_no));
        const Vec2 truth(parse_double(f[3], line_no), parse_double(f[4], line_no));
        const Vec2 est(parse_double(f[5], line_no), parse_double(f[6], line_no));
        if (f[1] == "amav") {
            if (id != rec.amav_poses.size()) throw std::runtime_error("trace: AMAV rows out of order");
            rec.amav_poses.push_back({truth.x(), truth.y(), 0.0});
            rec.amav_pose_estimates.push_back({est.x(), est.y(), 0.0});
        } else if (f[1] == "bmav") {
            if (id != rec.bmav_truth.size()) throw std::runtime_error("trace: BMAV rows out of order");
            rec.bmav_truth.push_back(truth);
            Belief b;
            b.mean = est;
            b.cov << parse_double(f[7], line_no), parse_double(f[8], line_no), parse_double(f[8], line_no),
                parse_double(f[9], line_no);
            rec.beliefs.push_back(b);
            if (!f[10].empty()) rec.group_of.push_back(static_cast<std::size_t>(parse_long(f[10], line_no)));
            if (!f[11].empty()) {
                for (const auto &a : split(f[11], ';')) {
                    CorrectionEvent e;
                    e.observation.amav_id = static_cast<int>(parse_long(a, line_no));
                    e.observation.bmav_id = static_cast<int>(id);
                    e.observation.timestamp = t;
                    rec.corrections.push_back(e);
                }
            }
        } else {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": unknown entity kind '" + f[1] +
                                     "'");
        }
    }
    for (auto &[t, rec] : steps) {
        trace.steps.push_back(std::move(rec));
    }
    return trace;
}

SimTrace read_trace_csv(const std::filesystem::path &path, const ScenarioConfig &config) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return read_trace_csv(in, config);
}

std::string success_key(double accuracy, int time_limit) {
    return format_number(accuracy) + "_" + std::to_string(time_limit);
}

Json metrics_to_json(const MetricsSummary &m, Strategy strategy, std::uint64_t seed) {
    Json cdf = Json::array();
    for (const auto &[v, f] : m.ate_cdf) cdf.push_back({v, f});
    Json success = Json::object();
    for (const SuccessRate &s : m.success) success[success_key(s.accuracy, s.time_limit)] = s.rate;

    Json j;
    j["strategy"] = std::string(to_string(strategy));
    j["seed"] = seed;
    j["ate_mean"] = m.ate_mean;
    j["ate_p50"] = m.ate_p50;
    j["ate_p95"] = m.ate_p95;
    j["ate_cdf"] = cdf;
    j["success"] = success;
    j["xi_T"] = m.xi_T;
    return j;
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace transformloc
