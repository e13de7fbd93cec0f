#pragma once

// Deterministic serialization: key-value reports, contour and height-field
// CSV, SVG contour plots, PGM curvature maps.

#include "kcontour/classify.hpp"
#include "kcontour/contour.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kcontour {

/// %.17g: enough digits to round-trip a double through text.
std::string fmt_full(double x);
/// %.12g: report-friendly.
std::string fmt(double x);

/// Ordered key-value result document with deterministic serialization.
class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, int value);
    std::string text() const;
    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

/// Header "level,chain,seq,px,py", projected coordinates, row per vertex.
std::string contour_csv(const ContourSet& cs);

/// Header "u,v,F", rows in row-major grid order (u outer), full precision.
std::string height_field_csv(const FieldSamples& s);

struct HeightTable {
    std::vector<double> u, v; // grid axes
    std::vector<double> F;    // row-major, u outer
};

/// Parse a height-field CSV. Throws ConfigError on malformed input.
HeightTable parse_height_field_csv(const std::string& text);

/// One path element per chain, viewBox fit to the data with a 5% margin.
std::string contour_svg(const ContourSet& cs);

/// Grayscale map of the grid: affine map of [min, max] to [0, 255].
/// P2 (text) by default, P5 (binary) optional. Masked nodes render as 0.
std::string pgm_image(const ScalarGrid& g, bool binary = false);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace kcontour
