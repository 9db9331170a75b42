#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpt/fem.hpp"
#include "mpt/mesh.hpp"
#include "mpt/mpt_system.hpp"

namespace mpt {

enum class Formulation { standard, transformed };

std::string_view to_string(Formulation f);
/// Throws std::invalid_argument for anything but "standard"/"transformed".
Formulation parse_formulation(std::string_view text);

/// Thrown for unreadable or unwritable files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mesh, interior dofs and the shared P1 matrices for one resolution.
struct Discretization {
    StructuredMesh mesh;
    DofMap dofs;
    SharedMatrix stiffness;
    SharedMatrix mass;
};

Discretization make_discretization(int n);

/// Exchange values swept for one unordered network pair (0-based, i < j).
struct XiPairValues {
    std::size_t i;
    std::size_t j;
    std::vector<double> values;
};

struct SweepConfig {
    std::size_t j_count = 2;
    std::vector<std::vector<double>> k_values;  // per network
    std::vector<XiPairValues> xi_values;        // unlisted pairs have xi = 0
    std::vector<int> n_values;
    Formulation formulation = Formulation::standard;
    double tolerance = 1e-9;
    std::size_t max_iterations = 3000;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
    /// Number of runs in the cross product.
    std::size_t size() const;
};

struct XiEntry {
    std::size_t i;  // 0-based, i < j
    std::size_t j;
    double value;
};

struct RunRecord {
    std::size_t j_count = 0;
    int n = 0;
    Formulation formulation = Formulation::standard;
    std::vector<double> k;
    std::vector<XiEntry> xi;  // every pair i < j, lexicographic
    std::size_t iterations = 0;
    bool converged = false;
    double cond_est = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;

    NetworkParams params() const;
    double xi_sum() const;
    double k_sum() const;
};

/// One grid point of a sweep, before it is run.
struct SweepPoint {
    NetworkParams params;
    int n;
    std::uint64_t seed;
};

/// Cross product in deterministic order: exchange pairs outermost (last
/// listed pair varies fastest), then permeabilities (last network fastest),
/// then mesh resolution innermost. Point k gets seed config.seed + k.
std::vector<SweepPoint> expand_sweep(const SweepConfig& config);

/// One CG solve with g = 0 from a seeded random start. Runs that hit the
/// iteration cap are recorded with iterations = max_iterations + 1.
RunRecord run_point(const Discretization& disc, const NetworkParams& params, Formulation formulation,
                    double tolerance, std::size_t max_iterations, std::uint64_t seed);

/// Runs every grid point; output order matches expand_sweep regardless of
/// the number of worker threads.
std::vector<RunRecord> run_sweep(const SweepConfig& config);

std::string csv_header(std::size_t j_count);
/// Shortest round-trip decimal representation.
std::string format_number(double v);

/// Writes header + rows. `j_count` fixes the K columns for an empty record
/// list (default 1); otherwise every record must share one J.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records, std::optional<std::size_t> j_count = {});
void emit_csv(const std::vector<RunRecord>& records, const std::string& path,
              std::optional<std::size_t> j_count = {});
std::vector<RunRecord> read_csv(std::istream& in);
std::vector<RunRecord> read_csv(const std::string& path);

/// Numeric value of a named record field. Known names: J, N, iterations,
/// converged, cond_est, lambda_min, lambda_max, seed, wall_time_s, xi_sum,
/// k_sum, xi_k_ratio, K<j> and xi_<i>-<j> (1-based). Throws
/// std::invalid_argument for unknown names.
double record_field(const RunRecord& record, std::string_view field);

/// Self-contained SVG 1.1 scatter plot, one <circle> per record.
std::string render_scatter_svg(const std::vector<RunRecord>& records, std::string_view x_field,
                               std::string_view y_field, std::string_view color_field);
void emit_scatter_svg(const std::vector<RunRecord>& records, std::string_view x_field, std::string_view y_field,
                      std::string_view color_field, const std::string& path);

}  // namespace mpt
