#include "serrin/acceptance.hpp"
#include "serrin/pipeline.hpp"
#include "serrin/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

namespace {

using namespace serrin;

// Exit codes beyond the command's own 0/1 verdict.
constexpr int kUsage = 2;
constexpr int kDependency = 3;
constexpr int kModule = 4;

void record_error(const std::filesystem::path& out, const std::string& command, const std::string& kind,
                  const std::string& message) {
    try {
        std::filesystem::create_directories(out);
        write_json(out / "error.json", Json{{"command", command}, {"kind", kind}, {"message", message}});
    } catch (const std::exception&) {
        // the record is best effort; stderr already has the message
    }
}

int run_acceptance_command(const RunConfig& cfg, const std::vector<int>& only) {
    AcceptanceOptions opts;
    opts.workers = cfg.workers;
    opts.only = only;
    const auto results = run_acceptance(opts, std::cout);
    Json rows = Json::array();
    bool all = true;
    for (const CriterionResult& r : results) {
        all = all && r.pass;
        rows.push_back({{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"notes", r.notes},
                        {"seconds", r.seconds}});
    }
    std::filesystem::create_directories(cfg.out);
    write_json(cfg.out / "acceptance.json", Json{{"all_pass", all}, {"criteria", rows}});
    fmt::print("{} of {} criteria passed\n",
               std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; }), results.size());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serrin torsion domains as perturbed geodesic balls"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    app.add_option("--config", config_path, "key-value config file")->check(CLI::ExistingFile);
    app.add_option("--out", out, "output directory (overrides [run] out)");
    app.add_option("--seed", seed, "seed for the search jitter (overrides [run] seed)");
    app.add_option("--workers", workers, "worker threads (overrides [run] workers)")->check(CLI::PositiveNumber);

    const std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> commands{
        {"verify-constants", cmd_verify_constants}, {"solve", cmd_solve},     {"sweep", cmd_sweep},
        {"find-critical", cmd_find_critical},       {"foliate", cmd_foliate}, {"profile", cmd_profile},
    };
    const std::map<std::string, std::string> help{
        {"verify-constants", "closed-form expansion constants per dimension"},
        {"solve", "solve the over-determined problem at configured points"},
        {"sweep", "eps sweep with expansion fits"},
        {"find-critical", "critical points of the reduced functional"},
        {"foliate", "foliation chart along the critical curve (needs find-critical)"},
        {"profile", "geodesic-ball bound for the isochoric profile"},
    };
    for (const auto& [name, text] : help) app.add_subcommand(name, text);
    std::vector<int> only;
    app.add_subcommand("run-acceptance", "run the acceptance criteria")
        ->add_option("--criterion", only, "criterion ids to run (default all)")
        ->check(CLI::Range(1, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    std::filesystem::path out_dir = out.value_or("out");
    try {
        Config config = config_path.empty() ? Config{} : Config::load(config_path);
        if (out) config.set("run", "out", *out);
        if (seed) config.set("run", "seed", std::to_string(*seed));
        if (workers) config.set("run", "workers", std::to_string(*workers));
        const RunConfig cfg = RunConfig::from(config);
        out_dir = cfg.out;
        cfg.validate();
        std::filesystem::create_directories(cfg.out);
        std::filesystem::remove(cfg.out / "error.json");
        if (name == "run-acceptance") return run_acceptance_command(cfg, only);
        return commands.at(name)(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        record_error(out_dir, name, "config", e.what());
        return kUsage;
    } catch (const DependencyError& e) {
        std::cerr << "dependency error: " << e.what() << "\n";
        record_error(out_dir, name, "dependency", e.what());
        return kDependency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        record_error(out_dir, name, "module", e.what());
        return kModule;
    }
}
