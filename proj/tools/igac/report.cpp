#include <algorithm>
#include <cstdio>

#include "commands.hpp"

namespace cli {
namespace {

const char* const kMissing = "missing";

class ReportCommand : public Command {
public:
    explicit ReportCommand(CLI::App& parent)
        : Command(parent, "report", "Bundle prior run outputs into one reproduction record") {
        params_.add("inputs", inputs_, "run output directories or files")->expected(0, -1);
        app_->add_option("paths", inputs_, "run output directories or files");
    }

    void run(const GlobalOptions& g, const json&) override {
        if (inputs_.empty()) throw validation_error("no inputs given", "inputs");
        std::vector<fs::path> files;
        for (const auto& in : inputs_) {
            const fs::path p(in);
            std::error_code ec;
            if (!fs::exists(p, ec)) {
                CliError e(kValidation, "validation", "input not found: " + in, "inputs");
                e.extra["path"] = in;
                throw e;
            }
            if (fs::is_directory(p)) {
                for (const auto& entry : fs::recursive_directory_iterator(p))
                    if (entry.is_regular_file()) files.push_back(entry.path());
            } else {
                files.push_back(p);
            }
        }
        std::sort(files.begin(), files.end());
        files.erase(std::unique(files.begin(), files.end()), files.end());

        json report;
        report["inputs"] = inputs_;
        json metric = json::array();
        json manifolds = json::object();
        json chain = json::object();
        json chain_runs = json::array();
        for (const auto& f : files) {
            const auto name = f.filename().string();
            if (name == "metric_summary.json") {
                auto j = read_json(f);
                metric.push_back({{"family", j.value("family", "")},
                                  {"points", j.value("points", 0)},
                                  {"max_rel_error", j.value("max_rel_error", 0.0)},
                                  {"source", f.generic_string()}});
            } else if (name == "curvature_summary.json") {
                auto j = read_json(f);
                auto& m = manifolds[j.value("manifold", "unknown")];
                m["scalar_sign"] = j.value("scalar_sign", "");
                m["scalar_range"] = {j.value("min_scalar", 0.0), j.value("max_scalar", 0.0)};
            } else if (name == "jacobi_summary.json") {
                auto j = read_json(f);
                manifolds[j.value("manifold", "unknown")]["lambda_j"] = j.value("lambda_j", 0.0);
            } else if (name == "ige_fit.json") {
                auto j = read_json(f);
                auto& m = manifolds[j.value("manifold", "unknown")];
                const auto& fit = j["fit"];
                m["ige"] = fit.value("selected", "");
                m["c_ig"] = fit.value("c_ig", 0.0);
                m["k_ig"] = fit.value("k_ig", 0.0);
                m["r2"] = fit.value("r2_selected", 0.0);
                if (j.contains("rate_comparison")) m["rate_comparison"] = j["rate_comparison"];
            } else if (name == "lsd.json") {
                auto j = read_json(f);
                char key[64];
                std::snprintf(key, sizeof key, "(%g,%g)", j.value("hx", 0.0), j.value("hy", 0.0));
                chain[key] = j.value("verdict", "");
                chain_runs.push_back({{"n", j.value("n", 0)},
                                      {"hx", j.value("hx", 0.0)},
                                      {"hy", j.value("hy", 0.0)},
                                      {"sector", j.value("sector", "")},
                                      {"ks_poisson", j.value("ks_poisson", 0.0)},
                                      {"ks_wigner", j.value("ks_wigner", 0.0)},
                                      {"verdict", j.value("verdict", "")},
                                      {"source", f.generic_string()}});
            }
        }

        std::vector<std::string> missing;
        auto require = [&](json& obj, const std::string& key, const std::string& path) {
            if (!obj.contains(key)) {
                obj[key] = kMissing;
                missing.push_back(path);
            }
        };
        for (const char* m : {"integrable", "chaotic"}) {
            auto& entry = manifolds[m];
            require(entry, "ige", std::string(m) + ".ige");
            require(entry, "scalar_sign", std::string(m) + ".scalar_sign");
        }
        require(chain, "(0,2)", "chain.(0,2)");
        require(chain, "(1,1)", "chain.(1,1)");
        if (metric.empty()) {
            report["metric"] = kMissing;
            missing.push_back("metric");
        } else {
            report["metric"] = metric;
        }
        for (auto& [name, value] : manifolds.items()) report[name] = value;
        report["chain"] = chain;
        report["chain_runs"] = chain_runs;
        report["missing"] = missing;
        write_json(fs::path(g.out) / "report.json", report);
    }

private:
    std::vector<std::string> inputs_;
};

}  // namespace

std::unique_ptr<Command> make_report_command(CLI::App& app) { return std::make_unique<ReportCommand>(app); }

}  // namespace cli
