#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endo/actuation.hpp"
#include "endo/config.hpp"
#include "endo/fk.hpp"
#include "endo/spine_model.hpp"
#include "endo/tendon_kinematics.hpp"

namespace httplib {
class Server;
}

namespace endo {

struct HttpReply {
    int status = 200;
    nlohmann::json body;
};

// Motors at or above this fraction of psi_max are listed as warnings.
inline constexpr double kSaturationWarningFraction = 0.95;

// Digital-twin request handlers. Stateless apart from the workspace cache;
// safe to call from several threads.
class TwinService {
public:
    explicit TwinService(Config config);

    const SpineModel& model() const noexcept { return model_; }
    const Config& config() const noexcept { return config_; }
    const PulleySet& pulleys() const noexcept { return pulleys_; }

    // GET /api/params
    HttpReply params() const;
    // POST /api/command
    HttpReply command(const std::string& body) const;
    // GET /api/workspace. `grid` is "NxM"; theta lists are comma-separated
    // degrees and take precedence when both are given.
    HttpReply workspace(const std::optional<std::string>& grid,
                        const std::optional<std::string>& theta1_deg,
                        const std::optional<std::string>& theta2_deg) const;

    // Full state for an already validated command set; used by command().
    nlohmann::json evaluate(const std::vector<SegmentCommand>& cmds) const;

private:
    Config config_;
    SpineModel model_;
    PulleySet pulleys_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::string, nlohmann::json> workspace_cache_;
};

// HTTP front end over TwinService. Serves static UI assets from ui_dir at /
// when given.
class TeleopServer {
public:
    TeleopServer(const TwinService& service, std::optional<std::filesystem::path> ui_dir = std::nullopt);
    ~TeleopServer();

    TeleopServer(const TeleopServer&) = delete;
    TeleopServer& operator=(const TeleopServer&) = delete;

    // Port 0 binds an ephemeral port. Returns false when the port is busy.
    bool bind(const std::string& host, int port);
    int port() const noexcept { return port_; }
    // Blocks until stop().
    bool listen();
    void stop();

private:
    const TwinService& service_;
    std::unique_ptr<httplib::Server> server_;
    int port_ = -1;
};

}  // namespace endo
