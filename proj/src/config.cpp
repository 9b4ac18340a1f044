#include "transformloc/config.hpp"

#include "transformloc/trace_io.hpp"

#include <numbers>
#include <set>

namespace transformloc {
namespace {

// Reads one JSON object, remembering which keys were consumed so that the
// rest can be rejected as unknown.
class Section {
   public:
    Section(const Json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json *find(const std::string &key) {
        const auto it = j_.find(key);
        if (it == j_.end()) {
            return nullptr;
        }
        seen_.insert(key);
        return &*it;
    }

    void number(const std::string &key, double &out) {
        if (const Json *v = find(key)) {
            if (!v->is_number()) throw ConfigError(field(key), "expected a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string &key, int &out) {
        if (const Json *v = find(key)) {
            if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
            out = v->get<int>();
        }
    }

    void unsigned_integer(const std::string &key, std::uint64_t &out) {
        if (const Json *v = find(key)) {
            if (!v->is_number_unsigned()) throw ConfigError(field(key), "expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void boolean(const std::string &key, bool &out) {
        if (const Json *v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    std::optional<std::string> string(const std::string &key) {
        if (const Json *v = find(key)) {
            if (!v->is_string()) throw ConfigError(field(key), "expected a string");
            return v->get<std::string>();
        }
        return std::nullopt;
    }

    // Array of fixed-width numeric rows, e.g. [[x, y], ...].
    std::optional<std::vector<std::vector<double>>> rows(const std::string &key, std::size_t width) {
        const Json *v = find(key);
        if (!v) return std::nullopt;
        if (!v->is_array()) throw ConfigError(field(key), "expected an array");
        std::vector<std::vector<double>> out;
        for (std::size_t k = 0; k < v->size(); ++k) {
            const Json &row = (*v)[k];
            const std::string where = field(key) + "[" + std::to_string(k) + "]";
            if (!row.is_array() || row.size() != width) {
                throw ConfigError(where, "expected an array of " + std::to_string(width) + " numbers");
            }
            std::vector<double> values;
            for (const Json &x : row) {
                if (!x.is_number()) throw ConfigError(where, "expected numbers");
                values.push_back(x.get<double>());
            }
            out.push_back(std::move(values));
        }
        return out;
    }

    template <typename T>
    std::optional<std::vector<T>> list(const std::string &key) {
        const Json *v = find(key);
        if (!v) return std::nullopt;
        if (!v->is_array()) throw ConfigError(field(key), "expected an array");
        std::vector<T> out;
        for (const Json &x : *v) {
            if constexpr (std::is_integral_v<T>) {
                if (!x.is_number_integer()) throw ConfigError(field(key), "expected integers");
            } else {
                if (!x.is_number()) throw ConfigError(field(key), "expected numbers");
            }
            out.push_back(x.get<T>());
        }
        return out;
    }

    std::optional<Section> section(const std::string &key) {
        if (const Json *v = find(key)) {
            return Section(*v, field(key));
        }
        return std::nullopt;
    }

    void finish() const {
        for (const auto &[key, value] : j_.items()) {
            if (!seen_.contains(key)) {
                throw ConfigError(field(key), "unknown key");
            }
        }
    }

   private:
    const Json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_noise(Section &parent, const std::string &key, NoiseModel &out) {
    if (auto s = parent.section(key)) {
        s->number("fraction", out.sigma_fraction);
        s->number("floor", out.floor);
        s->finish();
    }
}

Json noise_json(const NoiseModel &n) { return Json{{"fraction", n.sigma_fraction}, {"floor", n.floor}}; }

}  // namespace

ScenarioConfig config_from_json(const Json &j) {
    ScenarioConfig c;
    Section root(j, "");
    root.unsigned_integer("seed", c.seed);
    if (auto s = root.string("strategy")) {
        try {
            c.strategy = parse_strategy(*s);
        } catch (const std::invalid_argument &e) {
            throw ConfigError("strategy", e.what());
        }
    }
    root.number("dt", c.dt);
    root.integer("delta", c.delta);
    root.integer("horizon", c.horizon);
    root.number("initial_variance", c.initial_variance);

    if (auto s = root.section("arena")) {
        s->number("length", c.arena.length);
        s->number("width", c.arena.width);
        s->finish();
    }
    if (auto s = root.section("amav")) {
        s->integer("count", c.amav_count);
        if (auto rows = s->rows("starts", 3)) {
            c.amav_starts.clear();
            for (const auto &r : *rows) c.amav_starts.push_back({r[0], r[1], r[2]});
        }
        if (auto rows = s->rows("primitives", 2)) {
            c.primitives.clear();
            for (const auto &r : *rows) c.primitives.push_back({r[0], r[1]});
        }
        s->number("position_noise", c.amav_position_noise);
        s->number("heading_noise", c.amav_heading_noise);
        s->finish();
    }
    if (auto s = root.section("bmav")) {
        s->integer("count", c.bmav_count);
        if (auto rows = s->rows("starts", 2)) {
            c.bmav_starts.clear();
            for (const auto &r : *rows) c.bmav_starts.emplace_back(r[0], r[1]);
        }
        if (auto rows = s->rows("destinations", 2)) {
            c.bmav_destinations.clear();
            for (const auto &r : *rows) c.bmav_destinations.emplace_back(r[0], r[1]);
        }
        s->number("start_region", c.start_region);
        s->number("destination_margin", c.destination_margin);
        s->boolean("wander", c.wander);
        s->finish();
    }
    if (auto s = root.section("fov")) {
        const bool has_rad = s->find("angle") != nullptr;
        const bool has_deg = s->find("angle_deg") != nullptr;
        if (has_rad && has_deg) {
            throw ConfigError(s->field("angle_deg"), "give either angle or angle_deg, not both");
        }
        s->number("angle", c.fov.angle);
        double deg = 0.0;
        s->number("angle_deg", deg);
        if (has_deg) {
            c.fov.angle = deg * std::numbers::pi / 180.0;
        }
        s->number("r_max", c.fov.r_max);
        s->finish();
    }
    if (auto s = root.section("noise")) {
        read_noise(*s, "motion", c.motion_noise);
        read_noise(*s, "range", c.range_noise);
        read_noise(*s, "bearing", c.bearing_noise);
        s->boolean("per_interval", c.noise_per_interval);
        s->finish();
    }
    if (auto s = root.section("navigation")) {
        s->number("k_att", c.nav.k_att);
        s->number("k_rep", c.nav.k_rep);
        s->number("rep_radius", c.nav.rep_radius);
        s->number("v_max", c.nav.v_max);
        s->number("arrive_radius", c.nav.arrive_radius);
        s->finish();
    }
    if (auto s = root.section("planner")) {
        if (const Json *v = s->find("beam_width")) {
            if (v->is_null()) {
                c.beam_width.reset();
            } else if (v->is_number_unsigned()) {
                c.beam_width = v->get<std::size_t>();
            } else {
                throw ConfigError(s->field("beam_width"), "expected a positive integer or null");
            }
        }
        if (auto cost = s->string("cost")) {
            if (*cost != "leaf" && *cost != "accumulated") {
                throw ConfigError(s->field("cost"), "expected \"leaf\" or \"accumulated\"");
            }
            c.accumulated_cost = *cost == "accumulated";
        }
        s->finish();
    }
    if (auto s = root.section("metrics")) {
        if (auto v = s->list<double>("accuracies")) c.success_accuracies = *v;
        if (auto v = s->list<int>("time_limits")) c.success_time_limits = *v;
        s->number("cdf_max", c.cdf_max);
        s->number("cdf_step", c.cdf_step);
        s->finish();
    }
    root.finish();
    validate(c);
    return c;
}

ScenarioConfig parse_config(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

ScenarioConfig load_config(const std::filesystem::path &path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::runtime_error &e) {
        throw ConfigError("<file>", e.what());
    }
    return parse_config(text);
}

Json config_to_json(const ScenarioConfig &c) {
    Json amav_starts = Json::array();
    for (const Pose &p : c.amav_starts) amav_starts.push_back({p.x1, p.x2, p.phi});
    Json primitives = Json::array();
    for (const MotionPrimitive &m : c.primitives) primitives.push_back({m.u, m.omega});
    Json bmav_starts = Json::array();
    for (const Vec2 &p : c.bmav_starts) bmav_starts.push_back({p.x(), p.y()});
    Json dests = Json::array();
    for (const Vec2 &p : c.bmav_destinations) dests.push_back({p.x(), p.y()});

    Json j;
    j["seed"] = c.seed;
    j["strategy"] = std::string(to_string(c.strategy));
    j["dt"] = c.dt;
    j["delta"] = c.delta;
    j["horizon"] = c.horizon;
    j["initial_variance"] = c.initial_variance;
    j["arena"] = Json{{"length", c.arena.length}, {"width", c.arena.width}};
    j["amav"] = Json{{"count", c.amav_count},
                     {"starts", amav_starts},
                     {"primitives", primitives},
                     {"position_noise", c.amav_position_noise},
                     {"heading_noise", c.amav_heading_noise}};
    j["bmav"] = Json{{"count", c.bmav_count},
                     {"starts", bmav_starts},
                     {"destinations", dests},
                     {"start_region", c.start_region},
                     {"destination_margin", c.destination_margin},
                     {"wander", c.wander}};
    j["fov"] = Json{{"angle", c.fov.angle}, {"r_max", c.fov.r_max}};
    j["noise"] = Json{{"motion", noise_json(c.motion_noise)},
                      {"range", noise_json(c.range_noise)},
                      {"bearing", noise_json(c.bearing_noise)},
                      {"per_interval", c.noise_per_interval}};
    j["navigation"] = Json{{"k_att", c.nav.k_att},
                           {"k_rep", c.nav.k_rep},
                           {"rep_radius", c.nav.rep_radius},
                           {"v_max", c.nav.v_max},
                           {"arrive_radius", c.nav.arrive_radius}};
    j["planner"] = Json{{"beam_width", c.beam_width ? Json(*c.beam_width) : Json(nullptr)},
                        {"cost", c.accumulated_cost ? "accumulated" : "leaf"}};
    j["metrics"] = Json{{"accuracies", c.success_accuracies},
                        {"time_limits", c.success_time_limits},
                        {"cdf_max", c.cdf_max},
                        {"cdf_step", c.cdf_step}};
    return j;
}

std::string dump_config(const ScenarioConfig &config) { return config_to_json(config).dump(2) + "\n"; }

}  // namespace transformloc
