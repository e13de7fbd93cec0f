#include "kcontour/io.hpp"

#include "kcontour/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kcontour {

std::string fmt_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(double x) {
    if (x == 0.0) x = 0.0; // collapse negative zero in reports
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void Report::add(const std::string& key, const std::string& value) {
    items_.emplace_back(key, value);
}
void Report::add(const std::string& key, double value) { items_.emplace_back(key, fmt(value)); }
void Report::add(const std::string& key, int value) {
    items_.emplace_back(key, std::to_string(value));
}

std::string Report::text() const {
    std::string out;
    for (const auto& [k, v] : items_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

std::string contour_csv(const ContourSet& cs) {
    std::string out = "level,chain,seq,px,py\n";
    for (std::size_t li = 0; li < cs.projected.size(); ++li) {
        for (std::size_t ci = 0; ci < cs.projected[li].size(); ++ci) {
            const Polyline2& chain = cs.projected[li][ci];
            for (std::size_t k = 0; k < chain.size(); ++k) {
                out += fmt_full(cs.levels[li]);
                out += ',';
                out += std::to_string(ci);
                out += ',';
                out += std::to_string(k);
                out += ',';
                out += fmt_full(chain[k].x);
                out += ',';
                out += fmt_full(chain[k].y);
                out += '\n';
            }
        }
    }
    return out;
}

std::string height_field_csv(const FieldSamples& s) {
    std::string out = "u,v,F\n";
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) {
            out += fmt_full(s.u[i]);
            out += ',';
            out += fmt_full(s.v[j]);
            out += ',';
            out += fmt_full(s.F[s.idx(i, j)]);
            out += '\n';
        }
    }
    return out;
}

HeightTable parse_height_field_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("height CSV: empty file");
    // tolerate a trailing carriage return
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "u,v,F") throw ConfigError("height CSV: expected header 'u,v,F'");

    std::vector<double> us, vs, fs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double a, b, c;
        char extra;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &a, &b, &c, &extra) != 3)
            throw ConfigError("height CSV: malformed row at line " + std::to_string(lineno));
        us.push_back(a);
        vs.push_back(b);
        fs.push_back(c);
    }
    if (fs.size() < 9) throw ConfigError("height CSV: too few rows");

    // row-major with u outer: the v axis is the leading run of constant u
    std::size_t nv = 1;
    while (nv < us.size() && us[nv] == us[0]) ++nv;
    if (nv < 2 || fs.size() % nv != 0)
        throw ConfigError("height CSV: rows do not form a regular row-major grid");
    const std::size_t nu = fs.size() / nv;
    if (nu < 2) throw ConfigError("height CSV: need at least 2 u rows");

    HeightTable t;
    t.v.assign(vs.begin(), vs.begin() + nv);
    for (std::size_t i = 0; i < nu; ++i) t.u.push_back(us[i * nv]);
    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            const std::size_t k = i * nv + j;
            if (us[k] != t.u[i] || vs[k] != t.v[j])
                throw ConfigError("height CSV: grid coordinates are not row-major consistent");
        }
    }
    t.F = std::move(fs);
    return t;
}

std::string contour_svg(const ContourSet& cs) {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& lc : cs.projected) {
        for (const auto& chain : lc) {
            for (const Vec2& p : chain) {
                if (first) {
                    x0 = x1 = p.x;
                    y0 = y1 = p.y;
                    first = false;
                } else {
                    x0 = std::min(x0, p.x);
                    x1 = std::max(x1, p.x);
                    y0 = std::min(y0, p.y);
                    y1 = std::max(y1, p.y);
                }
            }
        }
    }
    const double mx = 0.05 * std::max(x1 - x0, 1e-9);
    const double my = 0.05 * std::max(y1 - y0, 1e-9);
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += fmt(x0 - mx);
    out += ' ';
    out += fmt(y0 - my);
    out += ' ';
    out += fmt(x1 - x0 + 2 * mx);
    out += ' ';
    out += fmt(y1 - y0 + 2 * my);
    out += "\">\n";
    const double stroke = 0.005 * std::max(x1 - x0 + 2 * mx, y1 - y0 + 2 * my);
    for (const auto& lc : cs.projected) {
        for (const auto& chain : lc) {
            if (chain.size() < 2) continue;
            out += "<path fill=\"none\" stroke=\"black\" stroke-width=\"";
            out += fmt(stroke);
            out += "\" d=\"M ";
            for (std::size_t k = 0; k < chain.size(); ++k) {
                if (k > 0) out += " L ";
                out += fmt(chain[k].x);
                out += ' ';
                out += fmt(chain[k].y);
            }
            out += "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

std::string pgm_image(const ScalarGrid& g, bool binary) {
    double lo = 0, hi = 0;
    bool first = true;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        if (!g.mask[k]) continue;
        if (first) {
            lo = hi = g.values[k];
            first = false;
        } else {
            lo = std::min(lo, g.values[k]);
            hi = std::max(hi, g.values[k]);
        }
    }
    const double span = hi - lo;
    auto pixel = [&](int i, int j) -> int {
        const std::size_t k = g.idx(i, j);
        if (!g.mask[k]) return 0;
        if (span <= 0.0) return 128;
        return static_cast<int>(std::lround((g.values[k] - lo) / span * 255.0));
    };
    std::string out = binary ? "P5\n" : "P2\n";
    out += std::to_string(g.nu) + " " + std::to_string(g.nv) + "\n255\n";
    // rows scan v from high to low so the image reads like the plane
    for (int j = g.nv - 1; j >= 0; --j) {
        for (int i = 0; i < g.nu; ++i) {
            const int p = pixel(i, j);
            if (binary) {
                out += static_cast<char>(p);
            } else {
                out += std::to_string(p);
                out += (i + 1 < g.nu) ? ' ' : '\n';
            }
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ConfigError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace kcontour
