#include "endo/service.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <httplib.h>

#include "endo/errors.hpp"
#include "endo/workspace.hpp"

namespace endo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

HttpReply error_reply(int status, const std::string& message, const std::string& field = {}) {
    nlohmann::json body{{"error", message}};
    if (!field.empty()) body["field"] = field;
    return {status, body};
}

// Thrown while decoding a request; carries the HTTP status and field path.
struct RequestError {
    int status;
    std::string message;
    std::string field;
};

double number_field(const nlohmann::json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw RequestError{400, "missing field", path + "." + key};
    if (!it->is_number()) throw RequestError{400, "expected a number", path + "." + key};
    return it->get<double>();
}

}  // namespace

TwinService::TwinService(Config config)
    : config_(std::move(config)),
      model_(build_spine(config_.spine)),
      pulleys_(pulley_radii(model_, config_.actuation.psi_max)) {
    validate_actuation(model_, config_.actuation);
}

HttpReply TwinService::params() const {
    nlohmann::json body = params_to_json(config_.spine);
    body["derived"] = {
        {"segment_backbone_length", model_.segment_backbone_length()},
        {"total_length_H", model_.total_length_H()},
        {"theta2_max_deg", config_.spine.theta2_max * kRadToDeg},
        {"psi_max_deg", config_.actuation.psi_max * kRadToDeg},
        {"pulley_radii_mm", pulleys_.radii},
    };
    return {200, body};
}

nlohmann::json TwinService::evaluate(const std::vector<SegmentCommand>& cmds) const {
    std::vector<TendonPulls> pulls;
    pulls.reserve(cmds.size());
    for (const SegmentCommand& c : cmds) pulls.push_back(segment_tendon_contractions(model_, c));

    MotorCommand motors = motor_rotations(pulls, pulleys_);
    for (std::size_t seg = 0; seg < motors.zero_offsets.size() && !config_.actuation.zero_offsets.empty(); ++seg) {
        for (Channel c = 0; c < 4; ++c) motors.zero_offsets[seg][c] = config_.actuation.zero_offsets[motor_index(seg, c)];
    }
    const ServoTargets targets = apply_zero_offsets(motors, config_.actuation.zero_offsets);
    const SpinePose pose = spine_pose(model_, cmds);

    nlohmann::json echo = nlohmann::json::array();
    for (const SegmentCommand& c : cmds) {
        const SegmentCommand v = validate_command(model_, c);
        echo.push_back({{"theta1_deg", v.theta1 * kRadToDeg}, {"theta2_deg", v.theta2 * kRadToDeg}});
    }
    nlohmann::json pull_table = nlohmann::json::array();
    for (const TendonPulls& p : pulls) pull_table.push_back(p.s);

    nlohmann::json warnings = nlohmann::json::array();
    for (const std::string& w : pulleys_.warnings) warnings.push_back(w);
    for (std::size_t m = 0; m < targets.targets.size(); ++m) {
        const double fraction = targets.targets[m] / targets.psi_max;
        if (fraction >= kSaturationWarningFraction) {
            warnings.push_back("motor " + std::to_string(m) + " at " +
                               std::to_string(static_cast<int>(std::round(fraction * 100.0))) +
                               "% of servo range");
        }
    }

    nlohmann::json body = pose_to_json(pose);
    body["segments"] = echo;
    body["tendon_pulls_mm"] = pull_table;
    body["motors"] = motor_command_to_json(motors);
    body["servo_targets"] = servo_targets_to_json(targets);
    body["warnings"] = warnings;
    return body;
}

HttpReply TwinService::command(const std::string& body) const {
    std::vector<SegmentCommand> cmds;
    try {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error&) {
            throw RequestError{400, "body is not valid JSON", ""};
        }
        if (!j.is_object()) throw RequestError{400, "expected a JSON object", ""};
        const auto segs = j.find("segments");
        if (segs == j.end() || !segs->is_array()) throw RequestError{400, "expected an array", "segments"};
        if (segs->size() != static_cast<std::size_t>(model_.params().num_segments)) {
            throw RequestError{400,
                               "expected " + std::to_string(model_.params().num_segments) + " segment commands",
                               "segments"};
        }
        for (std::size_t i = 0; i < segs->size(); ++i) {
            const std::string path = "segments[" + std::to_string(i) + "]";
            const auto& s = (*segs)[i];
            if (!s.is_object()) throw RequestError{400, "expected an object", path};
            const SegmentCommand cmd{number_field(s, "theta1_deg", path) * kDegToRad,
                                     number_field(s, "theta2_deg", path) * kDegToRad};
            try {
                cmds.push_back(validate_command(model_, cmd));
            } catch (const ValidationError& e) {
                throw RequestError{422, e.what(), path + ".theta2_deg"};
            }
        }
    } catch (const RequestError& e) {
        return error_reply(e.status, e.message, e.field);
    }

    try {
        return {200, evaluate(cmds)};
    } catch (const RangeExceeded& e) {
        HttpReply r = error_reply(422, e.what());
        r.body["motor"] = e.motor();
        r.body["overshoot_deg"] = e.overshoot() * kRadToDeg;
        return r;
    } catch (const Error& e) {
        return error_reply(422, e.what());
    }
}

HttpReply TwinService::workspace(const std::optional<std::string>& grid,
                                 const std::optional<std::string>& theta1_deg,
                                 const std::optional<std::string>& theta2_deg) const {
    SweepGrid sweep_grid;
    std::string key;
    try {
        if (theta1_deg || theta2_deg) {
            if (!theta1_deg || !theta2_deg) {
                return error_reply(400, "theta1 and theta2 lists must be given together");
            }
            sweep_grid = list_grid(model_, parse_degree_list(*theta1_deg), parse_degree_list(*theta2_deg));
            key = "lists:" + *theta1_deg + "|" + *theta2_deg;
        } else {
            const auto [n1, n2] = parse_grid_spec(grid.value_or("4x3"));
            sweep_grid = count_grid(model_, n1, n2);
            key = std::to_string(n1) + "x" + std::to_string(n2);
        }
    } catch (const ValidationError& e) {
        return error_reply(400, e.what(), "grid");
    }

    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = workspace_cache_.find(key); it != workspace_cache_.end()) return {200, it->second};
    }

    const auto samples = sweep(model_, sweep_grid);
    nlohmann::json tips = nlohmann::json::array();
    for (const WorkspaceSample& s : samples) {
        if (s.accepted) tips.push_back({s.tip.x(), s.tip.y(), s.tip.z()});
    }
    nlohmann::json body{{"grid", key}, {"sample_count", samples.size()}, {"count", tips.size()}, {"tips_mm", tips}};

    std::lock_guard lock(cache_mutex_);
    // A concurrent request may have filled the slot first; keep that body.
    const auto [it, inserted] = workspace_cache_.emplace(key, std::move(body));
    return {200, it->second};
}

TeleopServer::TeleopServer(const TwinService& service, std::optional<std::filesystem::path> ui_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    // No SO_REUSEPORT: a second instance on the same port must fail to bind.
    server_->set_socket_options([](int sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
    });
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body.dump(), "application/json");
    };
    auto query = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
        if (!req.has_param(name)) return std::nullopt;
        return req.get_param_value(name);
    };

    server_->Get("/api/params", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, service_.params());
    });
    server_->Post("/api/command", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service_.command(req.body));
    });
    server_->Get("/api/workspace", [this, send, query](const httplib::Request& req, httplib::Response& res) {
        send(res, service_.workspace(query(req, "grid"), query(req, "theta1"), query(req, "theta2")));
    });

    if (ui_dir && server_->set_mount_point("/", ui_dir->string())) return;
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ENDO digital twin service. UI assets not installed; API under /api/.\n", "text/plain");
    });
}

TeleopServer::~TeleopServer() { stop(); }

bool TeleopServer::bind(const std::string& host, int port) {
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
        return port_ > 0;
    }
    if (!server_->bind_to_port(host, port)) return false;
    port_ = port;
    return true;
}

bool TeleopServer::listen() { return server_->listen_after_bind(); }

void TeleopServer::stop() {
    if (server_ && server_->is_running()) server_->stop();
}

}  // namespace endo
