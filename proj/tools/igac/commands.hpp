#pragma once

#include <memory>
#include <string>
#include <vector>

#include "support.hpp"

namespace cli {

class Command {
public:
    Command(CLI::App& parent, const std::string& name, const std::string& description)
        : app_(parent.add_subcommand(name, description)), params_(app_) {}
    virtual ~Command() = default;

    // `config` is the effective run configuration, echoed next to the outputs.
    virtual void run(const GlobalOptions& g, const json& config) = 0;

    const std::string& name() const { return app_->get_name(); }
    CLI::App* app() const { return app_; }
    ParamSet& params() { return params_; }

protected:
    CLI::App* app_;
    ParamSet params_;
};

std::vector<std::unique_ptr<Command>> make_commands(CLI::App& app);

// Defined in report.cpp.
std::unique_ptr<Command> make_report_command(CLI::App& app);

}  // namespace cli
