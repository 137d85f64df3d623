#include <cstring>
#include <iostream>

#include "commands.hpp"

using namespace cli;

namespace {

std::string config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
    }
    return {};
}

void report_error(const CliError& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    j["field"] = e.field();
    for (const auto& [k, v] : e.extra.items()) j[k] = v;
    j["exit_code"] = e.exit_code();
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-geometric analysis of regular and chaotic dynamics"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", igac_version());

    GlobalOptions g;
    std::string config;
    ParamSet globals(&app);
    app.add_option("--config", config, "JSON config file; command-line flags take precedence");
    globals.add("seed", g.seed, "random seed");
    globals.add("out", g.out, "output directory");
    globals.add("format", g.format, "table format: csv or json");
    globals.add_flag("plot", g.plot, "also write SVG plots");
    globals.add("jobs", g.jobs, "parallel jobs for grids and sweeps");

    try {
        auto commands = make_commands(app);

        if (const auto path = config_path(argc, argv); !path.empty()) {
            json cfg;
            try {
                cfg = read_json(path);
            } catch (const CliError&) {
                throw validation_error("cannot read config " + path, "config");
            }
            if (!cfg.is_object()) throw validation_error("config must be a JSON object", "config");
            json top = json::object();
            for (const auto& [key, value] : cfg.items()) {
                auto it = std::find_if(commands.begin(), commands.end(),
                                       [&](const auto& c) { return c->name() == key; });
                if (it != commands.end())
                    (*it)->params().apply(value, key);
                else if (key != "command")
                    top[key] = value;
            }
            globals.apply(top, "config");
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            throw validation_error(e.what(), "arguments");
        }

        if (g.format != "csv" && g.format != "json") throw validation_error("format must be csv or json", "format");
        if (g.jobs < 1) throw validation_error("jobs must be at least 1", "jobs");

        Command* selected = nullptr;
        for (auto& c : commands)
            if (c->app()->parsed()) selected = c.get();

        json effective;
        effective["command"] = selected->name();
        const auto global_values = globals.effective();
        for (const auto& [k, v] : global_values.items()) effective[k] = v;
        effective[selected->name()] = selected->params().effective();

        prepare_output(g.out);
        selected->run(g, effective);
        write_json(fs::path(g.out) / "run_config.json", effective);
        return kOk;
    } catch (const CliError& e) {
        report_error(e);
        return e.exit_code();
    } catch (const std::exception& e) {
        report_error(CliError(kInternal, "internal", e.what()));
        return kInternal;
    }
}
