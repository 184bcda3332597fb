#include "serrin/pipeline.hpp"

#include "serrin/fitting.hpp"
#include "serrin/foliation.hpp"
#include "serrin/parallel.hpp"
#include "serrin/profile.hpp"
#include "serrin/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <sstream>

namespace serrin {

ModelManifold ManifoldSpec::build() const {
    if (kind == "flat") return ModelManifold::flat(dim);
    if (kind == "round") return ModelManifold::constant_curvature(dim, curvature);
    if (kind == "conformal_sphere") {
        if (dim != 2) throw ConfigError("conformal_sphere is two-dimensional");
        return ModelManifold::conformal_sphere(bump);
    }
    throw ConfigError("unknown manifold kind '" + kind + "'");
}

std::string ManifoldSpec::describe() const { return build().describe(); }

namespace {

std::vector<double> grid_or_list(const Config& c, const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback, bool log_spaced_grid) {
    if (c.has(section, key)) return c.numbers(section, key);
    if (!c.has(section, key + "_min")) return fallback;
    const double a = c.number(section, key + "_min", 0.0);
    const double b = c.number(section, key + "_max", a);
    const int n = c.integer(section, key + "_count", 2);
    if (n < 2) throw ConfigError("[" + section + "] " + key + "_count must be at least 2");
    if (log_spaced_grid) return log_spaced(a, b, n);
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
    return out;
}

Fidelity parse_fidelity(const std::string& s) {
    if (s == "exact") return Fidelity::ExactChart;
    if (s == "truncated") return Fidelity::Truncated;
    throw ConfigError("[solver] fidelity must be exact or truncated");
}

Extension parse_extension(const std::string& s) {
    if (s == "harmonic") return Extension::SolidHarmonic;
    if (s == "cutoff") return Extension::Cutoff;
    throw ConfigError("[solver] extension must be harmonic or cutoff");
}

template <class V>
Json vec_json(const V& v) {
    return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string point_text(const Vec& p) {
    std::string s;
    for (int i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_number(p[i]);
    return s;
}

Vec json_vec(const Json& j) {
    const auto xs = j.get<std::vector<double>>();
    Vec v(static_cast<int>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
    return v;
}

std::vector<std::string> point_headers(int dim) {
    std::vector<std::string> h{"x", "y", "z"};
    h.resize(dim);
    return h;
}

void prepare(const RunConfig& cfg) { std::filesystem::create_directories(cfg.out); }

}  // namespace

RunConfig RunConfig::from(const Config& c) {
    RunConfig r;
    r.out = c.text("run", "out", r.out.string());
    r.seed = static_cast<std::uint64_t>(c.integer("run", "seed", 0));
    r.workers = c.integer("run", "workers", 1);

    ManifoldSpec& m = r.manifold;
    m.kind = c.text("manifold", "kind", m.kind);
    m.dim = c.integer("manifold", "dim", m.dim);
    m.curvature = c.number("manifold", "curvature", m.curvature);
    m.bump.amplitude = c.number("manifold", "bump_amplitude", m.bump.amplitude);
    m.bump.sigma = c.number("manifold", "bump_sigma", m.bump.sigma);
    const auto center = c.numbers("manifold", "bump_center", {0.3, -0.1});
    if (center.size() != 2) throw ConfigError("[manifold] bump_center needs two values");
    m.bump.center = Vec(2);
    m.bump.center << center[0], center[1];
    m.search_half_width = c.number("manifold", "search_half_width", m.search_half_width);

    r.resolution.dim = m.dim;
    r.resolution.max_degree = c.integer("solver", "L", m.dim == 2 ? 16 : 10);
    r.resolution.radial_size = c.integer("solver", "M", m.dim == 2 ? 32 : 24);
    r.serrin.tolerance = c.number("solver", "tolerance", r.serrin.tolerance);
    r.serrin.max_iterations = c.integer("solver", "max_iterations", r.serrin.max_iterations);
    r.serrin.divergence_bound = c.number("solver", "divergence_bound", r.serrin.divergence_bound);
    r.serrin.fidelity = parse_fidelity(c.text("solver", "fidelity", "exact"));
    r.serrin.extension = parse_extension(c.text("solver", "extension", "harmonic"));
    r.serrin.picard.tolerance = c.number("solver", "picard_tolerance", r.serrin.picard.tolerance);

    r.eps = grid_or_list(c, "sweep", "eps", log_spaced(0.02, 0.2, 8), true);
    r.points = c.text("sweep", "points", r.points);

    r.critical_eps = grid_or_list(c, "critical", "eps", {0.05, 0.07, 0.1, 0.14, 0.2}, false);
    r.guess = c.text("critical", "guess", r.guess);
    const std::string objective = c.text("critical", "objective", "balanced");
    if (objective == "balanced")
        r.critical.objective = CriticalObjective::Balanced;
    else if (objective == "published")
        r.critical.objective = CriticalObjective::Published;
    else
        throw ConfigError("[critical] objective must be balanced or published");
    r.critical.maximize = c.text("critical", "maximize", "false") == "true";
    r.critical.kernel_tolerance = c.number("critical", "kernel_tolerance", r.critical.kernel_tolerance);
    r.critical.step_tolerance = c.number("critical", "step_tolerance", r.critical.step_tolerance);
    r.critical.jitter = c.number("critical", "jitter", r.critical.jitter);
    r.critical.trust.min_radius = c.number("critical", "min_radius", r.critical.trust.min_radius);

    r.t_grid = grid_or_list(c, "foliation", "t", {}, false);
    if (r.t_grid.empty())
        for (int k = 1; k <= 10; ++k) r.t_grid.push_back(0.02 * k);

    r.volumes = grid_or_list(c, "profile", "v", log_spaced(0.005, 0.15, 10), true);
    r.compare_minimum = c.text("profile", "compare_minimum", "true") == "true";

    const auto dims = c.numbers("constants", "dims", {2, 3, 4, 5, 6});
    r.dims.assign(dims.begin(), dims.end());
    return r;
}

void RunConfig::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw ConfigError(fmt::format("{} must be strictly positive", what));
    };
    positive(serrin.tolerance, "[solver] tolerance");
    positive(serrin.divergence_bound, "[solver] divergence_bound");
    positive(serrin.picard.tolerance, "[solver] picard_tolerance");
    positive(critical.kernel_tolerance, "[critical] kernel_tolerance");
    positive(critical.step_tolerance, "[critical] step_tolerance");
    positive(critical.trust.min_radius, "[critical] min_radius");
    for (const auto* list : {&eps, &critical_eps, &t_grid})
        for (double e : *list)
            if (!(e > 0.0 && e <= 0.5)) throw ConfigError(fmt::format("eps value {} outside (0, 0.5]", e));
    for (double v : volumes) positive(v, "[profile] volume");
    for (int d : dims)
        if (d < 2) throw ConfigError(fmt::format("dimension {} is below 2", d));
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (manifold.dim != 2 && manifold.dim != 3) throw ConfigError("[manifold] dim must be 2 or 3");
    manifold.build();  // unknown kinds and kind/dimension mismatches
}

BallSolver RunConfig::make_solver() const { return BallSolver(resolution); }

std::vector<Vec> resolve_points(const ModelManifold& m, const ManifoldSpec& spec, const std::string& points) {
    const bool curved = m.kind() == ManifoldKind::ConformalSphere2D;
    std::vector<Vec> out;
    std::stringstream ss(points);
    for (std::string item; std::getline(ss, item, ';');) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
        if (item == "max") {
            out.push_back(curved ? m.scalar_maximum(Vec::Zero(m.dim()), spec.search_half_width) : Vec(Vec::Zero(m.dim())));
            continue;
        }
        if (item == "min") {
            out.push_back(curved ? m.scalar_critical_point(Vec::Zero(m.dim())) : Vec(Vec::Zero(m.dim())));
            continue;
        }
        const auto xs = Config::parse_string("p = " + item).numbers("", "p");
        if (static_cast<int>(xs.size()) != m.dim()) throw ConfigError("point '" + item + "' has the wrong dimension");
        Vec p(m.dim());
        for (int i = 0; i < m.dim(); ++i) p[i] = xs[i];
        out.push_back(p);
    }
    if (out.empty()) throw ConfigError("no points given");
    return out;
}

// ---------------------------------------------------------------------------

int cmd_verify_constants(const RunConfig& cfg, std::ostream& log) {
    prepare(cfg);
    CsvTable t({"N", "alpha", "beta", "beta_printed", "J1", "c", "c_printed"});
    Json rows = Json::array();
    bool ok = true;
    fmt::print(log, "{:>3} {:>14} {:>14} {:>14} {:>14} {:>14}\n", "N", "alpha", "beta_printed", "beta", "J1",
               "c_printed");
    for (int N : cfg.dims) {
        const Constants c = constants(N);
        ok = ok && c.beta_nonzero();
        t.add_row({N, c.alpha, c.beta, c.beta_printed, c.J1, c.c, c.c_printed});
        rows.push_back({{"N", N},
                        {"alpha", c.alpha},
                        {"beta", c.beta},
                        {"beta_printed", c.beta_printed},
                        {"J1", c.J1},
                        {"c", c.c},
                        {"c_printed", c.c_printed}});
        fmt::print(log, "{:>3} {:>14.10f} {:>14.10f} {:>14.10f} {:>14.10f} {:>14.10f}\n", N, c.alpha, c.beta_printed,
                   c.beta, c.J1, c.c_printed);
    }
    t.write(cfg.out / "constants.csv");
    write_json(cfg.out / "constants.json", {{"constants", rows}, {"beta_nonzero", ok}});
    return ok ? 0 : 1;
}

namespace {

struct SolveRow {
    int point = 0;
    Vec p;
    double eps = 0.0;
    double S = 0.0;
    ReducedReport r;
};

std::vector<SolveRow> solve_grid(const RunConfig& cfg, const ModelManifold& m, const std::vector<Vec>& points,
                                 const std::vector<double>& eps, const BallSolver& solver) {
    const int ne = static_cast<int>(eps.size());
    return parallel_map(static_cast<int>(points.size()) * ne, cfg.workers, [&](int k) {
        SolveRow row;
        row.point = k / ne;
        row.p = points[row.point];
        row.eps = eps[k % ne];
        row.S = m.scalar(row.p);
        row.r = reduced_functional(m, row.p, row.eps, solver, cfg.serrin);
        return row;
    });
}

CsvTable solve_table(int dim, const std::vector<SolveRow>& rows) {
    std::vector<std::string> h{"point"};
    for (const auto& s : point_headers(dim)) h.push_back(s);
    for (const char* s : {"eps", "S", "v0", "a_norm", "v_norm", "residual", "iterations", "J", "volume",
                          "boundary_area", "phi", "F", "E"})
        h.push_back(s);
    CsvTable t(h);
    for (const SolveRow& row : rows) {
        std::vector<CsvTable::Cell> c{row.point};
        for (int i = 0; i < dim; ++i) c.push_back(row.p[i]);
        const ReducedReport& r = row.r;
        for (CsvTable::Cell v : std::vector<CsvTable::Cell>{
                 row.eps, row.S, r.solution.state.v0, r.a_norm, r.v_norm, r.solution.residual_norm,
                 static_cast<int>(r.solution.iterations.size()), r.J_value, r.volume, r.boundary_area, r.phi_eps,
                 r.F_value, r.E_value})
            c.push_back(v);
        t.add_row(c);
    }
    return t;
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    prepare(cfg);
    const ModelManifold m = cfg.manifold.build();
    const BallSolver solver = cfg.make_solver();
    const auto points = resolve_points(m, cfg.manifold, cfg.points);
    const auto rows = solve_grid(cfg, m, points, cfg.eps, solver);
    solve_table(m.dim(), rows).write(cfg.out / "solve.csv");

    Json js = Json::array();
    bool ok = true;
    for (const SolveRow& row : rows) {
        ok = ok && row.r.solution.residual_norm < cfg.serrin.tolerance;
        js.push_back({{"point", vec_json(row.p)},
                      {"eps", row.eps},
                      {"v0", row.r.solution.state.v0},
                      {"a", vec_json(row.r.solution.state.a)},
                      {"profile", vec_json(row.r.solution.profile().coeffs)},
                      {"residual", row.r.solution.residual_norm},
                      {"phi", row.r.phi_eps}});
    }
    write_json(cfg.out / "solve.json", {{"manifold", m.describe()}, {"solutions", js}, {"converged", ok}});
    fmt::print(log, "solved {} problems on {}; all converged: {}\n", rows.size(), m.describe(), ok);
    return ok ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
    prepare(cfg);
    const ModelManifold m = cfg.manifold.build();
    const BallSolver solver = cfg.make_solver();
    const int N = m.dim();
    const Constants K = constants(N);
    const auto points = resolve_points(m, cfg.manifold, cfg.points);
    const auto rows = solve_grid(cfg, m, points, cfg.eps, solver);
    solve_table(N, rows).write(cfg.out / "sweep.csv");

    const bool flat = m.kind() == ManifoldKind::Flat;
    const std::vector<double> powers = m.kind() == ManifoldKind::ConformalSphere2D
                                           ? std::vector<double>{2, 3, 4}
                                           : std::vector<double>{2, 4, 6};
    const std::size_t ne = cfg.eps.size();
    bool ok = true;
    Json summary = Json::array();
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        std::vector<double> vnorm, v0, phi, vol, area;
        for (std::size_t k = 0; k < ne; ++k) {
            const ReducedReport& r = rows[pi * ne + k].r;
            vnorm.push_back(r.v_norm);
            v0.push_back(r.solution.state.v0);
            phi.push_back(r.phi_eps - K.alpha);
            vol.push_back(r.volume / K.ball_volume - 1.0);
            area.push_back(r.boundary_area / (N * K.ball_volume) - 1.0);
            ok = ok && r.solution.residual_norm < cfg.serrin.tolerance;
        }
        const double S = m.scalar(points[pi]);
        Json entry{{"point", vec_json(points[pi])}, {"S", S}};
        if (flat) {
            const double worst = *std::max_element(vnorm.begin(), vnorm.end());
            entry["max_v_norm"] = worst;
            entry["max_phi_minus_alpha"] = std::abs(*std::max_element(phi.begin(), phi.end(),
                                                                      [](double a, double b) { return std::abs(a) < std::abs(b); }));
            ok = ok && worst < 1e-10;
            fmt::print(log, "flat sweep: max |v| = {:.3e}\n", worst);
        } else {
            const double slope = loglog_slope(cfg.eps, vnorm);
            const PowerFit fv0 = fit_powers(cfg.eps, v0, powers);
            const PowerFit fphi = fit_powers(cfg.eps, phi, powers);
            const PowerFit fvol = fit_powers(cfg.eps, vol, powers);
            const PowerFit farea = fit_powers(cfg.eps, area, powers);
            entry["v_norm_slope"] = slope;
            entry["v0_eps2"] = {{"fitted", fv0.coefficient(2)}, {"predicted", K.v0_coefficient * S}};
            entry["phi_eps2"] = {{"fitted", fphi.coefficient(2)},
                                 {"predicted", K.beta * S},
                                 {"predicted_printed", K.beta_printed * S}};
            entry["volume_eps2"] = {{"fitted", fvol.coefficient(2)}, {"predicted", K.volume_coefficient * S}};
            entry["area_eps2"] = {{"fitted", farea.coefficient(2)},
                                  {"predicted", K.area_coefficient * S},
                                  {"predicted_printed", K.area_coefficient_printed * S}};
            ok = ok && slope >= 1.9;
            fmt::print(log, "point ({}): S = {:.6f}, |v| slope {:.4f}, v0 eps^2 {:.6f} (predicted {:.6f}), "
                            "phi eps^2 {:.6f} (predicted {:.6f})\n",
                       point_text(points[pi]), S, slope,
                       fv0.coefficient(2), K.v0_coefficient * S, fphi.coefficient(2), K.beta * S);
        }
        summary.push_back(entry);
    }
    write_json(cfg.out / "sweep.json",
               {{"manifold", m.describe()}, {"eps", cfg.eps}, {"summary", summary}, {"invariants_hold", ok}});
    return ok ? 0 : 1;
}

int cmd_find_critical(const RunConfig& cfg, std::ostream& log) {
    prepare(cfg);
    const ModelManifold m = cfg.manifold.build();
    const BallSolver solver = cfg.make_solver();
    const Vec base = resolve_points(m, cfg.manifold, cfg.guess).front();
    CriticalOptions opts = cfg.critical;
    opts.seed = cfg.seed;
    opts.serrin = cfg.serrin;

    const int n = static_cast<int>(cfg.critical_eps.size());
    auto found = parallel_map(n, cfg.workers,
                              [&](int k) { return find_critical(m, cfg.critical_eps[k], base, solver, opts); });

    std::vector<std::string> h{"eps"};
    for (const auto& s : point_headers(m.dim())) h.push_back(s);
    for (const char* s : {"dist", "dist_over_eps2", "a_norm", "newton_iterations", "evaluations"}) h.push_back(s);
    CsvTable t(h);
    Json rows = Json::array();
    std::vector<double> dist;
    bool ok = true;
    for (int k = 0; k < n; ++k) {
        const double e = cfg.critical_eps[k];
        const CriticalPoint& cp = found[k];
        const double d = m.distance(base, cp.point);
        const double a = cp.solution.state.a.norm();
        dist.push_back(d);
        ok = ok && a < 1e-9;
        std::vector<CsvTable::Cell> c{e};
        for (int i = 0; i < m.dim(); ++i) c.push_back(cp.point[i]);
        for (CsvTable::Cell v : std::vector<CsvTable::Cell>{d, d / (e * e), a, cp.newton_iterations, cp.evaluations})
            c.push_back(v);
        t.add_row(c);
        rows.push_back({{"eps", e},
                        {"point", vec_json(cp.point)},
                        {"dist", d},
                        {"dist_over_eps2", d / (e * e)},
                        {"a_norm", a}});
        fmt::print(log, "eps {:.4f}: dist/eps^2 = {:.6f}, |a| = {:.2e}\n", e, d / (e * e), a);
    }
    t.write(cfg.out / "critical.csv");
    Json j{{"manifold", m.describe()}, {"base", vec_json(base)}, {"S_base", m.scalar(base)}, {"rows", rows}};
    if (n >= 2) j["dist_slope"] = loglog_slope(cfg.critical_eps, dist);
    j["kernel_vanishes"] = ok;
    write_json(cfg.out / "critical.json", j);
    return ok ? 0 : 1;
}

int cmd_foliate(const RunConfig& cfg, std::ostream& log) {
    const auto prior = cfg.out / "critical.json";
    if (!std::filesystem::exists(prior))
        throw DependencyError("foliate needs " + prior.string() + " from a find-critical run");
    const Json crit = read_json(prior);
    const ModelManifold m = cfg.manifold.build();
    if (crit.at("manifold").get<std::string>() != m.describe())
        throw DependencyError("critical.json was computed on a different manifold");
    const Vec base = json_vec(crit.at("base"));
    const BallSolver solver = cfg.make_solver();
    CriticalOptions opts = cfg.critical;
    opts.serrin = cfg.serrin;

    const auto curve = critical_curve(m, base, cfg.t_grid, solver, opts, cfg.workers);
    std::vector<Vec> points;
    std::vector<SphereFunction> profiles;
    for (const CriticalPoint& cp : curve) {
        points.push_back(cp.point);
        profiles.push_back(cp.solution.profile());
    }
    const SphereBasis& basis = solver.grid().sphere();
    const FoliationChart chart = build_foliation(m, base, cfg.t_grid, points, profiles, basis, cfg.workers);
    const FoliationCertificate cert = certify_foliation(chart);

    const bool planar = m.dim() == 2;
    CsvTable t(planar ? std::vector<std::string>{"t", "theta", "omega"}
                      : std::vector<std::string>{"t", "polar", "azimuth", "omega"});
    for (std::size_t k = 0; k < chart.t.size(); ++k)
        for (int j = 0; j < chart.nodes.rows(); ++j) {
            const auto y = chart.nodes.row(j);
            if (planar)
                t.add_row({chart.t[k], std::atan2(y[1], y[0]), chart.omega(k, j)});
            else
                t.add_row({chart.t[k], std::acos(std::clamp(y[2], -1.0, 1.0)), std::atan2(y[1], y[0]),
                           chart.omega(k, j)});
        }
    t.write(cfg.out / "foliation_omega.csv");

    Json curve_json = Json::array();
    for (std::size_t k = 0; k < curve.size(); ++k)
        curve_json.push_back({{"t", cfg.t_grid[k]},
                              {"point", vec_json(curve[k].point)},
                              {"a_norm", curve[k].solution.state.a.norm()}});
    const bool ok = cert.nested && cert.dt_omega_zero_error <= 1e-3 && cert.certified == static_cast<int>(chart.t.size());
    write_json(cfg.out / "foliation.json", {{"manifold", m.describe()},
                                            {"base", vec_json(base)},
                                            {"curve", curve_json},
                                            {"t1", cert.t1},
                                            {"certified_leaves", cert.certified},
                                            {"min_dt_omega", cert.min_dt_omega},
                                            {"dt_omega_zero_min", cert.dt_omega_zero.minCoeff()},
                                            {"dt_omega_zero_max", cert.dt_omega_zero.maxCoeff()},
                                            {"dt_omega_zero_error", cert.dt_omega_zero_error},
                                            {"nested", cert.nested},
                                            {"limit_slope", cert.limit_slope},
                                            {"recentering_residual", chart.max_residual},
                                            {"certified", ok}});
    fmt::print(log, "foliation: t1 = {}, d_t omega(0) in [{:.6f}, {:.6f}], nested: {}\n", cert.t1,
               cert.dt_omega_zero.minCoeff(), cert.dt_omega_zero.maxCoeff(), cert.nested);
    return ok ? 0 : 1;
}

int cmd_profile(const RunConfig& cfg, std::ostream& log) {
    prepare(cfg);
    const ModelManifold m = cfg.manifold.build();
    const BallSolver solver = cfg.make_solver();
    const int N = m.dim();
    const Constants K = constants(N);

    std::vector<std::pair<std::string, Vec>> where{{"max", resolve_points(m, cfg.manifold, "max").front()}};
    if (cfg.compare_minimum && m.kind() == ManifoldKind::ConformalSphere2D)
        where.emplace_back("min", resolve_points(m, cfg.manifold, "min").front());

    CsvTable t({"point", "volume", "eps", "J_ball", "T_euclidean", "ratio", "volume_error"});
    Json fits = Json::array();
    std::vector<std::vector<ProfilePoint>> tables;
    bool ok = true;
    for (const auto& [label, p] : where) {
        const auto table = profile_expansion(m, p, cfg.volumes, solver, cfg.workers);
        for (const ProfilePoint& pt : table) {
            t.add_row({label, pt.volume, pt.eps_used, pt.J_ball, pt.T_euclidean, pt.ratio, pt.volume_error});
            ok = ok && pt.volume_error < 1e-10;
        }
        const double S = m.scalar(p);
        const PowerFit fit = fit_profile(N, table);
        fits.push_back({{"point", label},
                        {"at", vec_json(p)},
                        {"S", S},
                        {"fitted", fit.coefficient(2.0 / N)},
                        {"predicted", -K.c * S},
                        {"predicted_printed", -K.c_printed * S}});
        fmt::print(log, "{} point: S = {:.6f}, v^(2/N) coefficient {:.6f} (predicted {:.6f}, printed {:.6f})\n",
                   label, S, fit.coefficient(2.0 / N), -K.c * S, -K.c_printed * S);
        tables.push_back(table);
    }
    Json j{{"manifold", m.describe()}, {"fits", fits}};
    if (tables.size() == 2) {
        bool lower = true;
        for (std::size_t k = 0; k < cfg.volumes.size(); ++k) lower = lower && tables[0][k].ratio < tables[1][k].ratio;
        j["max_ratio_below_min_ratio"] = lower;
        ok = ok && lower;
    }
    j["invariants_hold"] = ok;
    t.write(cfg.out / "profile.csv");
    write_json(cfg.out / "profile.json", j);
    return ok ? 0 : 1;
}

}  // namespace serrin
