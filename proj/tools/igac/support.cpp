#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace cli {

CliError validation_error(const std::string& message, const std::string& field) {
    return CliError(kValidation, "validation", message, field);
}

void check(igac_status status, const std::string& context) {
    if (status == IGAC_OK) return;
    int code = kNumerical;
    switch (status) {
        case IGAC_ERR_ARGUMENT:
        case IGAC_ERR_DOMAIN:
        case IGAC_ERR_SHAPE:
        case IGAC_ERR_UNSUPPORTED:
        case IGAC_ERR_VALIDATION:
        case IGAC_ERR_INAPPLICABLE: code = kValidation; break;
        case IGAC_ERR_RESOURCE: code = kResource; break;
        case IGAC_ERR_INTERNAL: code = kInternal; break;
        default: code = kNumerical; break;
    }
    std::string message = igac_last_error_message();
    if (!context.empty()) message = context + ": " + message;
    throw CliError(code, igac_status_name(status), message, igac_last_error_field());
}

std::string config_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number()) return format_number(j.get<double>());
    std::string text;
    if (j.is_array()) {
        for (const auto& v : j) text += (text.empty() ? "" : ",") + format_number(v.get<double>());
        return text;
    }
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) text += (text.empty() ? "" : ",") + k + "=" + config_text(v);
        return text;
    }
    return j.get<std::string>();
}

std::string ParamSet::key_of(const std::string& flag) {
    auto key = flag;
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

CLI::Option* ParamSet::add_flag(const std::string& flag, bool& ref, const std::string& help) {
    const auto key = key_of(flag);
    setters_[key] = [&ref](const json& j) { ref = j.get<bool>(); };
    getters_.emplace_back(key, [&ref] { return json(ref); });
    return app_->add_flag("--" + flag, ref, help);
}

void ParamSet::apply(const json& section, const std::string& where) {
    if (!section.is_object()) throw validation_error("config section '" + where + "' must be an object", where);
    for (const auto& [key, value] : section.items()) {
        const auto it = setters_.find(key);
        if (it == setters_.end()) throw validation_error("unknown config key '" + key + "' in " + where, key);
        try {
            it->second(value);
        } catch (const json::exception&) {
            throw validation_error("config key '" + key + "' has the wrong type", key);
        }
    }
}

json ParamSet::effective() const {
    json j = json::object();
    for (const auto& [key, get] : getters_) j[key] = get();
    return j;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool to_double(const std::string& text, double& out) {
    const auto t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name, const std::string& field) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        std::string known;
        for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
        throw validation_error("unknown coordinate '" + name + "' (expected " + known + ")", field);
    }
    return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

std::vector<double> parse_point(const std::string& text, const std::vector<std::string>& names,
                                const std::string& field) {
    const auto parts = split(text, ',');
    if (parts.size() != names.size())
        throw validation_error("expected " + std::to_string(names.size()) + " values in '" + text + "'", field);
    std::vector<double> point(names.size(), 0.0);
    std::vector<bool> seen(names.size(), false);
    const bool named = text.find('=') != std::string::npos;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::size_t slot = i;
        std::string value = parts[i];
        if (named) {
            const auto eq = parts[i].find('=');
            if (eq == std::string::npos) throw validation_error("malformed entry '" + parts[i] + "'", field);
            slot = index_of(names, trim(parts[i].substr(0, eq)), field);
            value = parts[i].substr(eq + 1);
        }
        if (seen[slot]) throw validation_error("coordinate '" + names[slot] + "' given twice", field);
        seen[slot] = true;
        if (!to_double(value, point[slot])) throw validation_error("not a number: '" + value + "'", field);
    }
    return point;
}

std::vector<Axis> parse_grid(const std::string& text, const std::vector<std::string>& names, bool count_required) {
    const std::string field = "grid";
    std::vector<Axis> axes(names.size());
    std::vector<bool> seen(names.size(), false);
    for (const auto& entry : split(text, ',')) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw validation_error("malformed grid entry '" + entry + "'", field);
        const auto slot = index_of(names, trim(entry.substr(0, eq)), field);
        if (seen[slot]) throw validation_error("coordinate '" + names[slot] + "' given twice", field);
        seen[slot] = true;
        const auto range = split(entry.substr(eq + 1), ':');
        Axis& a = axes[slot];
        a.name = names[slot];
        if (range.size() < 2 || range.size() > 3 || !to_double(range[0], a.lo) || !to_double(range[1], a.hi))
            throw validation_error("grid entry '" + entry + "' must read name=lo:hi:count", field);
        if (range.size() == 3) {
            double c = 0.0;
            if (!to_double(range[2], c) || c < 1 || c != std::floor(c) || c > 1e6)
                throw validation_error("grid count in '" + entry + "' must be a positive integer", field);
            a.count = static_cast<int>(c);
        } else if (count_required) {
            throw validation_error("grid entry '" + entry + "' is missing its count", field);
        }
        if (a.hi < a.lo) throw validation_error("grid entry '" + entry + "' has hi < lo", field);
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!seen[i]) throw validation_error("grid is missing coordinate '" + names[i] + "'", field);
    return axes;
}

std::vector<std::vector<double>> grid_points(const std::vector<Axis>& axes) {
    std::vector<std::vector<double>> points{{}};
    for (const auto& a : axes) {
        std::vector<std::vector<double>> next;
        for (const auto& p : points)
            for (int k = 0; k < a.count; ++k) {
                auto q = p;
                q.push_back(a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * k / (a.count - 1));
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    return points;
}

std::vector<std::vector<double>> random_points(const std::vector<Axis>& axes, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> points;
    for (int i = 0; i < count; ++i) {
        std::vector<double> p;
        for (const auto& a : axes) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            p.push_back(a.lo + (a.hi - a.lo) * u);
        }
        points.push_back(std::move(p));
    }
    return points;
}

std::pair<double, double> parse_window(const std::string& text, const std::string& field) {
    const auto parts = split(text, ':');
    std::pair<double, double> w;
    if (parts.size() != 2 || !to_double(parts[0], w.first) || !to_double(parts[1], w.second) ||
        !(w.first < w.second))
        throw validation_error("window '" + text + "' must read lo:hi with lo < hi", field);
    return w;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void prepare_output(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw CliError(kResource, "resource", "cannot create " + dir.string() + ": " + ec.message(), "out");
}

fs::path write_table(const GlobalOptions& g, const std::string& stem, const Table& table) {
    const fs::path dir(g.out);
    if (g.format == "json") {
        json j;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        const auto path = dir / (stem + ".json");
        write_json(path, j);
        return path;
    }
    const auto path = dir / (stem + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(kResource, "resource", "cannot write " + path.string(), "out");
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    return path;
}

void write_json(const fs::path& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(kResource, "resource", "cannot write " + path.string(), "out");
    out << value.dump(2) << '\n';
}

json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot read " + path.string(), "inputs");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw validation_error("malformed JSON in " + path.string() + ": " + e.what(), "inputs");
    }
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    const auto workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
    std::vector<std::exception_ptr> errors(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (auto i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace cli
