#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercheck/battery.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string format = "human";
    std::string output;
    std::vector<std::string> systems;
    std::vector<std::string> properties;
    std::uint32_t level = 0;
    std::uint64_t horizon = 0;
    std::uint64_t k_max = 0;
    std::size_t cap = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common(CLI::App* verb, Options& o)
{
    verb->add_option("--config", o.config_path, "battery config (JSON)")->required()->check(CLI::ExistingFile);
    verb->add_option("--format", o.format, "report format")->check(CLI::IsMember({"human", "machine"}));
    verb->add_option("--output", o.output, "write the report here instead of stdout");
    verb->add_option("--level", o.level, "cylinder word length")->check(CLI::PositiveNumber);
    verb->add_option("--horizon", o.horizon, "iteration horizon")->check(CLI::PositiveNumber);
    verb->add_option("--kmax", o.k_max, "largest period searched for small periodic sets")->check(CLI::PositiveNumber);
    verb->add_option("--cap", o.cap, "largest base space for the powerset hyperspace")->check(CLI::PositiveNumber);
    verb->add_option("--system", o.systems, "restrict to these system ids");
}

hypercheck::BatteryConfig load(const Options& o)
{
    std::ifstream in(o.config_path);
    std::stringstream text;
    text << in.rdbuf();
    auto config = hypercheck::parse_config_text(text.str());
    // Command-line budgets override the config.
    if (o.level != 0) config.budgets.level = o.level;
    if (o.horizon != 0) config.budgets.horizon = o.horizon;
    if (o.k_max != 0) config.budgets.k_max = o.k_max;
    if (o.cap != 0) config.budgets.powerset_cap = o.cap;
    if (o.seed_given && o.seed != config.seed) {
        // Random systems are drawn from the seed, so re-parse with it.
        auto j = hypercheck::Json::parse(text.str());
        j["seed"] = o.seed;
        auto budgets = config.budgets;
        config = hypercheck::parse_config(j);
        config.budgets = budgets;
    }
    if (!o.systems.empty()) {
        std::vector<hypercheck::SystemEntry> kept;
        for (const auto& id : o.systems) {
            bool found = false;
            for (const auto& s : config.systems) {
                if (s.id == id) {
                    kept.push_back(s);
                    found = true;
                }
            }
            if (!found) {
                throw hypercheck::InvalidInput("no system with id '" + id + "'");
            }
        }
        config.systems = std::move(kept);
    }
    if (o.output.empty()) {
        // keep the config's output path
    } else {
        config.output = o.output;
    }
    return config;
}

int finish(const hypercheck::Report& report, const Options& o, const std::string& output)
{
    const std::string text = o.format == "machine" ? hypercheck::emit_machine(report) : hypercheck::emit_human(report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        out << text;
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return 1;
        }
    }
    return report.consistent() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hypercheck: dynamical properties of systems and their hyperspaces"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "run selected property checks");
    add_common(check, o);
    check->add_option("--property", o.properties, "property or check id (repeatable; default classify)");
    auto* verify = app.add_subcommand("verify-theorems", "run the equivalence harness battery");
    add_common(verify, o);
    auto* witness = app.add_subcommand("witness", "emit constructed witnesses only");
    add_common(witness, o);
    for (auto* verb : {check, verify, witness}) {
        verb->add_option_function<std::uint64_t>(
            "--seed",
            [&o](std::uint64_t s) {
                o.seed = s;
                o.seed_given = true;
            },
            "seed for randomly drawn systems");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests exit 0; every usage error exits 1.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        auto config = load(o);
        if (witness->parsed()) {
            return finish(hypercheck::run_witnesses(config), o, config.output);
        }
        std::vector<std::string> checks;
        if (check->parsed()) {
            checks = !o.properties.empty() ? o.properties : config.checks.value_or(std::vector<std::string>{"classify"});
            for (const auto& c : checks) {
                if (!hypercheck::is_known_check(c)) {
                    throw hypercheck::InvalidInput("unknown check '" + c + "'");
                }
            }
        } else {
            checks = config.checks.value_or([] {
                std::vector<std::string> all{"classify"};
                const auto& h = hypercheck::harness_checks();
                all.insert(all.end(), h.begin(), h.end());
                return all;
            }());
        }
        return finish(hypercheck::run_battery(config, checks), o, config.output);
    } catch (const hypercheck::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
