#pragma once

#include "serrin/config.hpp"
#include "serrin/reduced.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace serrin {

/// A later stage was asked for before the stage whose output it consumes.
class DependencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ManifoldSpec {
    std::string kind = "conformal_sphere";  // flat, round, conformal_sphere
    int dim = 2;
    double curvature = 1.0;                 // round only
    Bump bump;                              // conformal_sphere only
    double search_half_width = 1.2;         // where the curvature maximum is sought

    ModelManifold build() const;
    std::string describe() const;
};

/// Everything a subcommand reads from the config file.  Sections:
/// [run], [manifold], [solver], [sweep], [critical], [foliation],
/// [profile], [constants].
struct RunConfig {
    ManifoldSpec manifold;
    Resolution resolution;
    SerrinOptions serrin;

    std::vector<double> eps;   // [sweep] eps, or eps_min / eps_max / eps_count (log spaced)
    std::string points = "max";  // items separated by ";": "max", "min" or "x, y"

    std::vector<double> critical_eps;
    std::string guess = "max";
    CriticalOptions critical;

    std::vector<double> t_grid;  // [foliation] t_min / t_max / t_count, uniform

    std::vector<double> volumes;  // [profile] v_min / v_max / v_count, log spaced
    bool compare_minimum = true;

    std::vector<int> dims{2, 3, 4, 5, 6};

    std::filesystem::path out = "out";
    std::uint64_t seed = 0;
    int workers = 1;

    static RunConfig from(const Config& c);
    /// Throws ConfigError when a tolerance is not positive or an eps value
    /// lies outside (0, 0.5], and when the manifold cannot be built.
    void validate() const;
    BallSolver make_solver() const;
};

/// Chart points named by a spec: "max" and "min" are the critical points
/// of the scalar curvature (the origin on manifolds where it is constant).
std::vector<Vec> resolve_points(const ModelManifold& m, const ManifoldSpec& spec, const std::string& points);

// Each command writes its CSV and JSON files under cfg.out, logs a short
// summary and returns the process exit code: 0 when every invariant of the
// run held, 1 otherwise.  Module errors propagate as exceptions.
int cmd_verify_constants(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_find_critical(const RunConfig& cfg, std::ostream& log);
/// Needs critical.json from a find-critical run in the same output
/// directory; throws DependencyError otherwise.
int cmd_foliate(const RunConfig& cfg, std::ostream& log);
int cmd_profile(const RunConfig& cfg, std::ostream& log);

}  // namespace serrin
