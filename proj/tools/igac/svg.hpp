#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cli {

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = false;
};

struct Bars {
    std::vector<double> edges;  // size = heights.size() + 1
    std::vector<double> heights;
    std::string label;
};

struct Plot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Curve> curves;
    std::optional<Bars> bars;
};

// Standalone SVG: inline styles, generic font family, no timestamps.
void write_svg(const std::filesystem::path& path, const Plot& plot);

}  // namespace cli
