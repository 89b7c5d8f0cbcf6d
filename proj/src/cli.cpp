#include "endo/cli.hpp"

#include <csignal>
#include <iomanip>
#include <numbers>
#include <optional>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>

#include "endo/actuation.hpp"
#include "endo/config.hpp"
#include "endo/errors.hpp"
#include "endo/fk.hpp"
#include "endo/service.hpp"
#include "endo/tendon_kinematics.hpp"
#include "endo/workspace.hpp"
#include "format.hpp"

namespace endo::cli {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

using detail::fixed;

struct Options {
    std::string config_path;
    std::vector<std::string> pairs;
    bool polyline = false;
    std::optional<std::string> grid;
    std::optional<std::string> theta1_list;
    std::optional<std::string> theta2_list;
    std::string out_path;
    std::string format;
    unsigned threads = 0;
    int port = 8080;
    std::string host = "0.0.0.0";
    std::string ui_dir;
};

Config load(const Options& opt) {
    return opt.config_path.empty() ? Config{} : load_config(opt.config_path);
}

// "theta1,theta2" in degrees.
SegmentCommand parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
        throw ValidationError("malformed segment command '" + text + "' (expected theta1,theta2 in degrees)");
    }
    const auto angles = parse_degree_list(text);
    return SegmentCommand{angles[0], angles[1]};
}

std::vector<SegmentCommand> parse_commands(const SpineModel& model, const std::vector<std::string>& pairs) {
    const auto expected = static_cast<std::size_t>(model.params().num_segments);
    if (pairs.size() != expected) {
        throw ValidationError("expected " + std::to_string(expected) + " theta1,theta2 pairs, got " +
                              std::to_string(pairs.size()));
    }
    std::vector<SegmentCommand> cmds;
    for (const auto& p : pairs) cmds.push_back(validate_command(model, parse_pair(p)));
    return cmds;
}

void print_row(std::ostream& out, const std::string& label, const std::array<double, 4>& values, double scale) {
    out << std::left << std::setw(9) << label << std::right;
    for (double v : values) out << std::setw(14) << fixed(v * scale, 6);
    out << '\n';
}

void print_header(std::ostream& out, const std::string& unit) {
    out << std::left << std::setw(9) << "segment" << std::right;
    for (int c = 0; c < 4; ++c) out << std::setw(14) << ("ch" + std::to_string(c) + "_" + unit);
    out << '\n';
}

int cmd_fk(const Options& opt, std::ostream& out) {
    const Config cfg = load(opt);
    const SpineModel model = build_spine(cfg.spine);
    const SpinePose pose = spine_pose(model, parse_commands(model, opt.pairs));
    const auto& t = pose.tip.translation;
    const auto q = pose.tip.quaternion();
    out << "tip (" << fixed(t.x(), 6) << ", " << fixed(t.y(), 6) << ", " << fixed(t.z(), 6) << ")\n";
    out << "quaternion (" << fixed(q.w(), 6) << ", " << fixed(q.x(), 6) << ", " << fixed(q.y(), 6) << ", "
        << fixed(q.z(), 6) << ")\n";
    if (opt.polyline) out << pose_to_json(pose).dump(2) << '\n';
    return kExitOk;
}

int cmd_tendons(const Options& opt, std::ostream& out) {
    const Config cfg = load(opt);
    const SpineModel model = build_spine(cfg.spine);
    const auto cmds = parse_commands(model, opt.pairs);
    print_header(out, "mm");
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        print_row(out, std::to_string(i + 1), segment_tendon_contractions(model, cmds[i]).s, 1.0);
    }
    return kExitOk;
}

int cmd_motors(const Options& opt, std::ostream& out) {
    const Config cfg = load(opt);
    const SpineModel model = build_spine(cfg.spine);
    validate_actuation(model, cfg.actuation);
    const auto cmds = parse_commands(model, opt.pairs);
    std::vector<TendonPulls> pulls;
    for (const auto& c : cmds) pulls.push_back(segment_tendon_contractions(model, c));
    const PulleySet pulleys = pulley_radii(model, cfg.actuation.psi_max);
    const MotorCommand motors = motor_rotations(pulls, pulleys);
    const ServoTargets targets = apply_zero_offsets(motors, cfg.actuation.zero_offsets);

    out << "pulley radii (mm):";
    for (double r : pulleys.radii) out << ' ' << fixed(r, 6);
    out << "\npsi_max (deg): " << fixed(pulleys.psi_max * kRadToDeg, 6) << "\n\nrotations\n";
    print_header(out, "deg");
    for (std::size_t i = 0; i < motors.rotations.size(); ++i) {
        print_row(out, std::to_string(i + 1), motors.rotations[i], kRadToDeg);
    }
    out << "\nservo targets (after zero offsets)\n";
    print_header(out, "deg");
    for (std::size_t i = 0; i < motors.rotations.size(); ++i) {
        std::array<double, 4> row{};
        for (Channel c = 0; c < 4; ++c) row[c] = targets.targets[motor_index(i, c)];
        print_row(out, std::to_string(i + 1), row, kRadToDeg);
    }
    return kExitOk;
}

int cmd_workspace(const Options& opt, std::ostream& out) {
    const Config cfg = load(opt);
    const SpineModel model = build_spine(cfg.spine);

    SweepGrid grid;
    if (opt.theta1_list || opt.theta2_list) {
        if (!opt.theta1_list || !opt.theta2_list || opt.grid) {
            throw ValidationError("--theta1 and --theta2 must be given together and without --grid");
        }
        grid = list_grid(model, parse_degree_list(*opt.theta1_list), parse_degree_list(*opt.theta2_list));
    } else if (opt.grid) {
        const auto [n1, n2] = parse_grid_spec(*opt.grid);
        grid = count_grid(model, n1, n2);
    } else {
        grid = default_grid(model);
    }

    const ExportFormat format = parse_export_format(opt.format);
    const auto samples = sweep(model, grid, opt.threads);
    export_samples(samples, format, opt.out_path);

    const WorkspaceStats s = stats(samples);
    out << s.sample_count << " samples\n";
    out << s.accepted_count << " accepted\n";
    if (s.extents) {
        const char* axes = "xyz";
        for (int a = 0; a < 3; ++a) {
            out << axes[a] << " extent (mm): " << fixed(s.extents->min[a], 6) << " .. "
                << fixed(s.extents->max[a], 6) << '\n';
        }
    }
    out << "max radius (mm): " << fixed(s.max_radius, 6) << '\n';
    out << "wrote " << opt.out_path << '\n';
    return kExitOk;
}

int cmd_serve(const Options& opt, std::ostream& out, std::ostream& err) {
    const Config cfg = load(opt);
    const TwinService service(cfg);
    std::optional<std::filesystem::path> ui;
    if (!opt.ui_dir.empty()) ui = opt.ui_dir;

    // Block termination signals so a dedicated thread can receive them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    TeleopServer server(service, ui);
    if (!server.bind(opt.host, opt.port)) {
        err << "error: cannot bind " << opt.host << ":" << opt.port << " (port busy?)\n";
        return kExitEnvironment;
    }
    out << "listening on :" << server.port() << std::endl;

    std::thread([&server, signals] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    }).detach();
    server.listen();
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ENDO continuum manipulator digital twin", "endo"};
    app.require_subcommand(1);
    app.fallthrough();  // --config may follow the subcommand
    Options opt;
    app.add_option("--config", opt.config_path, "Spine/actuation JSON config")->check(CLI::ExistingFile);

    auto add_pairs = [&](CLI::App* sub) {
        sub->add_option("commands", opt.pairs, "Per-segment theta1,theta2 pairs in degrees")->required();
    };
    auto* fk = app.add_subcommand("fk", "Forward kinematics: print the tip pose");
    add_pairs(fk);
    fk->add_flag("--polyline", opt.polyline, "Also print the pose as JSON with the disc polyline");
    auto* tendons = app.add_subcommand("tendons", "Per-channel tendon pulls (mm)");
    add_pairs(tendons);
    auto* motors = app.add_subcommand("motors", "Motor rotations after coupling and calibration");
    add_pairs(motors);

    auto* workspace = app.add_subcommand("workspace", "Sweep the workspace grid and export it");
    workspace->add_option("--grid", opt.grid, "Grid as NxM: N directions, M bend levels per segment");
    workspace->add_option("--theta1", opt.theta1_list, "Explicit theta1 list, degrees (with --theta2)");
    workspace->add_option("--theta2", opt.theta2_list, "Explicit theta2 list, degrees (with --theta1)");
    workspace->add_option("--out", opt.out_path, "Output file")->required();
    workspace->add_option("--format", opt.format, "csv or ply")->default_val("csv");
    workspace->add_option("--threads", opt.threads, "Worker threads (0 = all cores)")->default_val(0);

    auto* serve = app.add_subcommand("serve", "Run the teleoperation HTTP service");
    serve->add_option("--port", opt.port, "TCP port")->default_val(8080);
    serve->add_option("--host", opt.host, "Bind address")->default_val("0.0.0.0");
    serve->add_option("--ui-dir", opt.ui_dir, "Directory of built UI assets served at /");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (fk->parsed()) return cmd_fk(opt, out);
        if (tendons->parsed()) return cmd_tendons(opt, out);
        if (motors->parsed()) return cmd_motors(opt, out);
        if (workspace->parsed()) return cmd_workspace(opt, out);
        if (serve->parsed()) return cmd_serve(opt, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitEnvironment;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace endo::cli
