#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "endo/spine_model.hpp"
#include "endo/tendon_kinematics.hpp"

namespace endo {

struct SegmentGrid {
    std::vector<double> theta1_values;  // radians
    std::vector<double> theta2_values;  // radians

    std::size_t size() const noexcept { return theta1_values.size() * theta2_values.size(); }
};

// One SegmentGrid per segment; the sweep visits their Cartesian product.
struct SweepGrid {
    std::vector<SegmentGrid> segments;

    std::size_t cardinality() const noexcept;
    // Command tuple at lexicographic position `index` (segment 1 slowest,
    // theta1 outer, theta2 inner within each segment).
    std::vector<SegmentCommand> commands_at(std::size_t index) const;
};

// Four cardinal directions x three bend levels (theta2_max/3 steps) per segment.
SweepGrid default_grid(const SpineModel& model);

// theta1 evenly spaced over [0, 2pi), theta2 at j*theta2_max/count for j = 1..count.
SweepGrid count_grid(const SpineModel& model, int theta1_count, int theta2_count);

// Same explicit value lists (radians) for every segment.
SweepGrid list_grid(const SpineModel& model, std::vector<double> theta1_values,
                    std::vector<double> theta2_values);

// Parses "NxM". Throws ValidationError.
std::pair<int, int> parse_grid_spec(const std::string& spec);

// "0,90,180" in degrees -> radians. Throws ValidationError.
std::vector<double> parse_degree_list(const std::string& list);

void validate_grid(const SpineModel& model, const SweepGrid& grid);

// Points within this distance of the base plane count as touching it, not as
// colliding. Some symmetric grid poses end exactly on z = 0 and rounding would
// otherwise decide them differently for each rotation of the same pose.
inline constexpr double kBaseContactTolerance = 1e-9;  // mm

// Every disc centre and the tip at z >= -kBaseContactTolerance.
bool clears_base(const std::vector<Eigen::Vector3d>& polyline, const Eigen::Vector3d& tip);

struct WorkspaceSample {
    std::vector<SegmentCommand> commands;
    Eigen::Vector3d tip = Eigen::Vector3d::Zero();
    // False when any disc centre or the tip dips below the base plane.
    bool accepted = false;
};

// Evaluates every tuple; output order is the lexicographic grid order
// regardless of how many threads run. threads == 0 picks hardware concurrency.
std::vector<WorkspaceSample> sweep(const SpineModel& model, const SweepGrid& grid,
                                   unsigned threads = 0);

struct AxisExtents {
    Eigen::Vector3d min;
    Eigen::Vector3d max;
};

struct WorkspaceStats {
    std::size_t sample_count = 0;
    std::size_t accepted_count = 0;
    // Over accepted samples; empty when nothing was accepted.
    std::optional<AxisExtents> extents;
    std::optional<Eigen::Vector3d> centroid;
    double max_radius = 0.0;
};

// Throws EmptyInput for an empty sample list.
WorkspaceStats stats(const std::vector<WorkspaceSample>& samples);

enum class ExportFormat { Csv, Ply };

ExportFormat parse_export_format(const std::string& s);

// CSV: every sample, fixed 9-decimal numbers. PLY: ASCII cloud of accepted tips.
// Throws IoError.
void export_samples(const std::vector<WorkspaceSample>& samples, ExportFormat format,
                    const std::filesystem::path& path);
void write_csv(const std::vector<WorkspaceSample>& samples, std::ostream& out);
void write_ply(const std::vector<WorkspaceSample>& samples, std::ostream& out);

}  // namespace endo
