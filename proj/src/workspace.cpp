#include "endo/workspace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>

#include "endo/errors.hpp"
#include "endo/fk.hpp"
#include "format.hpp"

namespace endo {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::vector<double> evenly_spaced_directions(int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(2.0 * std::numbers::pi * k / count);
    return out;
}

std::vector<double> bend_levels(double theta2_max, int count) {
    std::vector<double> out;
    for (int j = 1; j <= count; ++j) out.push_back(theta2_max * j / count);
    return out;
}

}  // namespace

std::size_t SweepGrid::cardinality() const noexcept {
    if (segments.empty()) return 0;
    std::size_t n = 1;
    for (const auto& s : segments) n *= s.size();
    return n;
}

std::vector<SegmentCommand> SweepGrid::commands_at(std::size_t index) const {
    std::vector<SegmentCommand> cmds(segments.size());
    // Mixed radix, last segment fastest.
    for (std::size_t i = segments.size(); i-- > 0;) {
        const SegmentGrid& g = segments[i];
        const std::size_t digit = index % g.size();
        index /= g.size();
        cmds[i].theta1 = g.theta1_values[digit / g.theta2_values.size()];
        cmds[i].theta2 = g.theta2_values[digit % g.theta2_values.size()];
    }
    return cmds;
}

SweepGrid count_grid(const SpineModel& model, int theta1_count, int theta2_count) {
    if (theta1_count < 1 || theta2_count < 1) throw ValidationError("grid counts must be >= 1");
    const SegmentGrid seg{evenly_spaced_directions(theta1_count),
                          bend_levels(model.params().theta2_max, theta2_count)};
    return SweepGrid{std::vector<SegmentGrid>(model.params().num_segments, seg)};
}

SweepGrid default_grid(const SpineModel& model) { return count_grid(model, 4, 3); }

SweepGrid list_grid(const SpineModel& model, std::vector<double> theta1_values,
                    std::vector<double> theta2_values) {
    SweepGrid grid{std::vector<SegmentGrid>(model.params().num_segments,
                                            SegmentGrid{std::move(theta1_values), std::move(theta2_values)})};
    validate_grid(model, grid);
    return grid;
}

std::pair<int, int> parse_grid_spec(const std::string& spec) {
    const auto x = spec.find('x');
    auto parse = [&](std::string_view part) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || value < 1) {
            throw ValidationError("bad grid spec '" + spec + "' (expected NxM with positive integers)");
        }
        return value;
    };
    if (x == std::string::npos) throw ValidationError("bad grid spec '" + spec + "' (expected NxM)");
    const std::string_view view(spec);
    return {parse(view.substr(0, x)), parse(view.substr(x + 1))};
}

std::vector<double> parse_degree_list(const std::string& list) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const std::string item = list.substr(start, comma - start);
        std::size_t used = 0;
        double deg = 0.0;
        try {
            deg = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size() || !std::isfinite(deg)) {
            throw ValidationError("bad angle list '" + list + "' (expected comma-separated degrees)");
        }
        out.push_back(deg / kRadToDeg);
        start = comma + 1;
    }
    return out;
}

void validate_grid(const SpineModel& model, const SweepGrid& grid) {
    if (grid.segments.size() != static_cast<std::size_t>(model.params().num_segments)) {
        throw ValidationError("grid must list one value set per segment");
    }
    for (const SegmentGrid& g : grid.segments) {
        if (g.theta1_values.empty() || g.theta2_values.empty()) {
            throw ValidationError("grid value lists must be non-empty");
        }
        for (double t1 : g.theta1_values) {
            if (!std::isfinite(t1)) throw ValidationError("grid theta1 values must be finite");
        }
        for (double t2 : g.theta2_values) validate_command(model, SegmentCommand{0.0, t2});
    }
}

bool clears_base(const std::vector<Eigen::Vector3d>& polyline, const Eigen::Vector3d& tip) {
    auto above = [](const Eigen::Vector3d& v) { return v.z() >= -kBaseContactTolerance; };
    return above(tip) && std::all_of(polyline.begin(), polyline.end(), above);
}

std::vector<WorkspaceSample> sweep(const SpineModel& model, const SweepGrid& grid, unsigned threads) {
    validate_grid(model, grid);
    const std::size_t n = grid.cardinality();
    std::vector<WorkspaceSample> samples(n);
    std::vector<std::exception_ptr> failures(n);

    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                WorkspaceSample& s = samples[i];
                s.commands = grid.commands_at(i);
                const SpinePose pose = spine_pose(model, s.commands);
                s.tip = pose.tip.translation;
                s.accepted = clears_base(pose.polyline, s.tip);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        evaluate(0, n);
    } else {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (std::size_t begin = 0; begin < n; begin += chunk) {
            workers.emplace_back(evaluate, begin, std::min(n, begin + chunk));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i]) continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const std::exception& e) {
            throw Error("sweep failed at tuple " + std::to_string(i) + ": " + e.what());
        }
    }
    return samples;
}

WorkspaceStats stats(const std::vector<WorkspaceSample>& samples) {
    if (samples.empty()) throw EmptyInput("stats: no samples");
    WorkspaceStats out;
    out.sample_count = samples.size();
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (const WorkspaceSample& s : samples) {
        if (!s.accepted) continue;
        ++out.accepted_count;
        sum += s.tip;
        out.max_radius = std::max(out.max_radius, s.tip.norm());
        if (!out.extents) {
            out.extents = AxisExtents{s.tip, s.tip};
        } else {
            out.extents->min = out.extents->min.cwiseMin(s.tip);
            out.extents->max = out.extents->max.cwiseMax(s.tip);
        }
    }
    if (out.accepted_count > 0) out.centroid = sum / static_cast<double>(out.accepted_count);
    return out;
}

ExportFormat parse_export_format(const std::string& s) {
    if (s == "csv") return ExportFormat::Csv;
    if (s == "ply") return ExportFormat::Ply;
    throw ValidationError("unknown export format '" + s + "' (expected csv or ply)");
}

void write_csv(const std::vector<WorkspaceSample>& samples, std::ostream& out) {
    const std::size_t segments = samples.empty() ? 0 : samples.front().commands.size();
    for (std::size_t i = 1; i <= segments; ++i) {
        out << "seg" << i << "_theta1_deg,seg" << i << "_theta2_deg,";
    }
    out << "tip_x_mm,tip_y_mm,tip_z_mm,accepted\n";
    for (const WorkspaceSample& s : samples) {
        for (const SegmentCommand& c : s.commands) {
            out << detail::fixed(c.theta1 * kRadToDeg, 9) << ',' << detail::fixed(c.theta2 * kRadToDeg, 9) << ',';
        }
        out << detail::fixed(s.tip.x(), 9) << ',' << detail::fixed(s.tip.y(), 9) << ','
            << detail::fixed(s.tip.z(), 9) << ',' << (s.accepted ? 1 : 0) << '\n';
    }
}

void write_ply(const std::vector<WorkspaceSample>& samples, std::ostream& out) {
    const auto accepted = std::count_if(samples.begin(), samples.end(),
                                        [](const WorkspaceSample& s) { return s.accepted; });
    out << "ply\n"
        << "format ascii 1.0\n"
        << "comment accepted tip positions, mm\n"
        << "element vertex " << accepted << '\n'
        << "property double x\n"
        << "property double y\n"
        << "property double z\n"
        << "end_header\n";
    for (const WorkspaceSample& s : samples) {
        if (!s.accepted) continue;
        out << detail::fixed(s.tip.x(), 9) << ' ' << detail::fixed(s.tip.y(), 9) << ' '
            << detail::fixed(s.tip.z(), 9) << '\n';
    }
}

void export_samples(const std::vector<WorkspaceSample>& samples, ExportFormat format,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    if (format == ExportFormat::Csv) write_csv(samples, out);
    else write_ply(samples, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace endo
