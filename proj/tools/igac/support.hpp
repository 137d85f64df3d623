#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "igac/igac.h"

namespace cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kInternal = 1, kValidation = 2, kResource = 3, kNumerical = 4 };

// Error carried up to main and printed as JSON on stderr.
class CliError : public std::runtime_error {
public:
    CliError(int exit_code, std::string kind, const std::string& message, std::string field = {})
        : std::runtime_error(message), exit_code_(exit_code), kind_(std::move(kind)), field_(std::move(field)) {}

    int exit_code() const { return exit_code_; }
    const std::string& kind() const { return kind_; }
    const std::string& field() const { return field_; }
    json extra;

private:
    int exit_code_;
    std::string kind_;
    std::string field_;
};

CliError validation_error(const std::string& message, const std::string& field);

// Throws CliError for any non-OK status, using the library's last error.
void check(igac_status status, const std::string& context = {});

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string out = "igac-out";
    std::string format = "csv";
    bool plot = false;
    int jobs = 1;
};

// Options bound both to CLI11 and to the JSON config file. Keys are the long
// flag names with '-' replaced by '_'.
class ParamSet {
public:
    explicit ParamSet(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* add(const std::string& flag, T& ref, const std::string& help);
    CLI::Option* add_flag(const std::string& flag, bool& ref, const std::string& help);

    void apply(const json& section, const std::string& where);
    json effective() const;
    CLI::App* app() const { return app_; }

private:
    static std::string key_of(const std::string& flag);

    CLI::App* app_;
    std::map<std::string, std::function<void(const json&)>> setters_;
    std::vector<std::pair<std::string, std::function<json()>>> getters_;
};

// Points, grids and windows are text on the command line; in a config file
// they may also be numbers, arrays [1, 2] or objects {"mu": 1}.
std::string config_text(const json& j);

template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};

template <class T>
CLI::Option* ParamSet::add(const std::string& flag, T& ref, const std::string& help) {
    const auto key = key_of(flag);
    setters_[key] = [&ref](const json& j) {
        if constexpr (is_vector<T>::value) {
            if (j.is_array())
                ref = j.get<T>();
            else
                ref = T{j.get<typename T::value_type>()};
        } else if constexpr (std::is_same_v<T, std::string>) {
            ref = config_text(j);
        } else {
            ref = j.get<T>();
        }
    };
    getters_.emplace_back(key, [&ref] { return json(ref); });
    auto* opt = app_->add_option("--" + flag, ref, help);
    if constexpr (is_vector<T>::value) opt->delimiter(',');
    return opt;
}

// Parsed "name=value,..." or positional "v0,v1,..." against coordinate names.
std::vector<double> parse_point(const std::string& text, const std::vector<std::string>& names,
                                const std::string& field);

struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;  // 0 when the grid entry gave only lo:hi
};

// "name=lo:hi:count,..." with every name present exactly once.
std::vector<Axis> parse_grid(const std::string& text, const std::vector<std::string>& names, bool count_required);
std::vector<std::vector<double>> grid_points(const std::vector<Axis>& axes);
std::vector<std::vector<double>> random_points(const std::vector<Axis>& axes, int count, std::uint64_t seed);

// "lo:hi"
std::pair<double, double> parse_window(const std::string& text, const std::string& field);

std::string format_number(double v);

// Column-oriented table written as CSV or JSON depending on --format.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

fs::path write_table(const GlobalOptions& g, const std::string& stem, const Table& table);
void write_json(const fs::path& path, const json& value);
json read_json(const fs::path& path);
void prepare_output(const fs::path& dir);

// Runs fn(i) for i in [0, count) over at most `jobs` threads. Rethrows the
// error of the lowest failing index.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace cli
