#include "kcontour/app.hpp"

#include "kcontour/classify.hpp"
#include "kcontour/contour.hpp"
#include "kcontour/errors.hpp"
#include "kcontour/families.hpp"
#include "kcontour/fitgeom.hpp"
#include "kcontour/io.hpp"
#include "kcontour/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace kcontour {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "command",   "family", "m",     "c",     "k",          "a",      "profile",
        "chart",     "r_min",  "r_max", "theta_min", "theta_max",
        "x_min",     "x_max",  "y_min", "y_max", "nu",         "nv",
        "levels",    "tol",    "out_prefix",     "seed",       "input",  "check",
        "pgm"};
    return keys;
}

const std::set<std::string>& known_commands() {
    static const std::set<std::string> cmds = {"analyze", "contours", "classify", "verify",
                                               "render"};
    return cmds;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw ConfigError("");
        return x;
    } catch (...) {
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(value, &used);
        if (used != value.size()) throw ConfigError("");
        return x;
    } catch (...) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    }
}

// A surface built from config plus the pieces commands need beyond the patch.
struct BuiltSurface {
    SurfacePatch patch;
    ScalarField height;      // graph height field in chart parameters
    bool polar = true;
    std::optional<XFamilyParams> xp;
    std::optional<PFamilyParams> pp;
    std::optional<double> helicoid_a;
};

BuiltSurface build_surface(const RunConfig& cfg) {
    const std::string family = cfg.get("family", "");
    if (family.empty()) throw ConfigError("missing key 'family' (x, p, helicoid, plane)");

    BuiltSurface b;
    if (family == "x") {
        if (!cfg.has("m")) throw ConfigError("family x: missing key 'm'");
        XFamilyParams p(cfg.get_double("m", 0.0), cfg.get_double("c", 1.0),
                        cfg.get_double("theta_min", 0.0),
                        cfg.get_double("theta_max", 2.0 * std::numbers::pi));
        b.patch = x_family_patch(p, cfg.get_double("r_min", 0.2), cfg.get_double("r_max", 2.0));
        b.xp = p;
    } else if (family == "p") {
        if (!cfg.has("k")) throw ConfigError("family p: missing key 'k'");
        PFamilyParams p(cfg.get_double("k", 0.0), cfg.get_double("c", 1.0));
        b.patch = p_family_patch(
            p, Rect{cfg.get_double("x_min", -1.0), cfg.get_double("x_max", 1.0),
                    cfg.get_double("y_min", -1.0), cfg.get_double("y_max", 1.0)});
        b.pp = p;
        b.polar = false;
    } else if (family == "helicoid") {
        HelicoidParams p;
        p.a = cfg.get_double("a", 1.0);
        const std::string profile = cfg.get("profile", "none");
        if (profile == "log") {
            p.profile = [](const Jet2& r) { return log(r); };
        } else if (profile != "none") {
            throw ConfigError("key 'profile': expected none or log");
        }
        b.patch = helicoid_patch(p, cfg.get_double("r_min", 0.2), cfg.get_double("r_max", 2.0),
                                 cfg.get_double("theta_min", 0.0),
                                 cfg.get_double("theta_max", 2.0 * std::numbers::pi));
        b.helicoid_a = p.a;
    } else if (family == "plane") {
        b.patch = plane_patch(cfg.get_double("r_min", 0.2), cfg.get_double("r_max", 2.0));
    } else {
        throw ConfigError("key 'family': expected x, p, helicoid, or plane");
    }

    if (const auto* pg = std::get_if<PolarGraph>(&b.patch.chart)) {
        b.height = pg->height;
    } else if (const auto* cg = std::get_if<CartesianGraph>(&b.patch.chart)) {
        b.height = cg->height;
    }
    return b;
}

std::vector<double> contour_levels(const RunConfig& cfg, const ScalarGrid& grid) {
    const std::string spec = cfg.get("levels", "5");
    if (spec.find(',') == std::string::npos && spec.find('.') == std::string::npos) {
        const int count = parse_int("levels", spec);
        if (count < 1) throw ConfigError("key 'levels': count must be >= 1");
        return quantile_levels(grid, count);
    }
    std::vector<double> levels;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) levels.push_back(parse_double("levels", item));
    if (levels.empty()) throw ConfigError("key 'levels': empty list");
    return levels;
}

void echo_config(const RunConfig& cfg, Report& rep) {
    rep.add("tool", "kcontour");
    rep.add("version", "1.0.0");
    rep.add("command", cfg.command);
    for (const auto& [k, v] : cfg.kv) rep.add("config." + k, v);
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const BuiltSurface b = build_surface(cfg);
    const int nu = cfg.get_int("nu", 32);
    const int nv = cfg.get_int("nv", 32);

    Report rep;
    echo_config(cfg, rep);

    double k_min = 0, k_max = 0, h_min = 0, h_max = 0, d_min = 0, d_max = 0;
    double dev_K = 0, dev_H = 0, dev_n = 0, dev_delta = 0;
    bool first = true;
    const Rect dom = b.patch.domain;
    for (int i = 0; i < nu; ++i) {
        const double u = dom.u_min + (dom.u_max - dom.u_min) * i / (nu - 1);
        for (int j = 0; j < nv; ++j) {
            const double v = dom.v_min + (dom.v_max - dom.v_min) * j / (nv - 1);
            const FundForms f = fundamental_forms(b.patch, u, v);
            if (first) {
                k_min = k_max = f.K;
                h_min = h_max = f.H;
                d_min = d_max = f.delta;
                first = false;
            }
            k_min = std::min(k_min, f.K);
            k_max = std::max(k_max, f.K);
            h_min = std::min(h_min, f.H);
            h_max = std::max(h_max, f.H);
            d_min = std::min(d_min, f.delta);
            d_max = std::max(d_max, f.delta);
            if (b.xp) {
                dev_K = std::max(dev_K, std::abs(f.K - x_family_K(*b.xp, u)));
                dev_H = std::max(dev_H, std::abs(f.H - x_family_H(*b.xp, u, v)));
                dev_n = std::max(dev_n, norm_inf(f.normal - x_family_normal(*b.xp, u, v)));
            } else if (b.pp) {
                dev_K = std::max(dev_K, std::abs(f.K - p_family_K(*b.pp, u)));
                dev_H = std::max(dev_H, std::abs(f.H - p_family_H(*b.pp, u, v)));
                dev_n = std::max(dev_n, norm_inf(f.normal - p_family_normal(*b.pp, u, v)));
            }
            if (b.polar) {
                dev_delta = std::max(
                    dev_delta, std::abs(f.K - polar_graph_K(b.height, u, v)));
            }
        }
    }
    rep.add("K.min", k_min);
    rep.add("K.max", k_max);
    rep.add("H.min", h_min);
    rep.add("H.max", h_max);
    rep.add("delta.min", d_min);
    rep.add("delta.max", d_max);
    if (b.xp || b.pp) {
        rep.add("closed_form.max_dev_K", dev_K);
        rep.add("closed_form.max_dev_H", dev_H);
        rep.add("closed_form.max_dev_normal", dev_n);
    }
    if (b.polar) rep.add("polar_formula.max_dev_K", dev_delta);

    const std::string prefix = cfg.get("out_prefix", "");
    if (!prefix.empty() && b.height) {
        const FieldSamples samples = sample_field(b.height, dom, nu, nv);
        write_file(prefix + "_height.csv", height_field_csv(samples));
        rep.add("file.height_csv", prefix + "_height.csv");
    }
    out << rep.text();
    if (!prefix.empty()) write_file(prefix + ".report.txt", rep.text());
    return 0;
}

int cmd_contours(const RunConfig& cfg, std::ostream& out) {
    const BuiltSurface b = build_surface(cfg);
    const int nu = cfg.get_int("nu", 256);
    const int nv = cfg.get_int("nv", 256);
    const double tol = cfg.get_double("tol", 1e-2);

    const ScalarGrid grid = sample_K_grid(b.patch, nu, nv);
    const std::vector<double> levels = contour_levels(cfg, grid);
    ContourSet cs = extract_contours(grid, levels);
    project_contours(b.patch, cs);

    Report rep;
    echo_config(cfg, rep);
    rep.add("levels.count", static_cast<int>(levels.size()));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        rep.add("level." + std::to_string(i), levels[i]);
        rep.add("level." + std::to_string(i) + ".chains",
                static_cast<int>(cs.chains[i].size()));
    }

    int exit_code = 0;
    const std::string check = cfg.get("check", "none");
    if (check == "concentric") {
        const SymmetryVerdict v = concentricity_verdict(cs, tol);
        rep.add("verdict.kind", "concentric");
        rep.add("verdict.holds", v.holds ? "true" : "false");
        rep.add("verdict.center.x", v.common_center.x);
        rep.add("verdict.center.y", v.common_center.y);
        rep.add("verdict.spread", v.spread);
        if (!v.holds) exit_code = 1;
    } else if (check == "parallel") {
        const SymmetryVerdict v = parallelism_verdict(cs, tol);
        rep.add("verdict.kind", "parallel");
        rep.add("verdict.holds", v.holds ? "true" : "false");
        rep.add("verdict.direction.x", v.common_direction.x);
        rep.add("verdict.direction.y", v.common_direction.y);
        rep.add("verdict.spread", v.spread);
        if (!v.holds) exit_code = 1;
    } else if (check != "none") {
        throw ConfigError("key 'check': expected concentric, parallel, or none");
    }

    const std::string prefix = cfg.get("out_prefix", "");
    if (!prefix.empty()) {
        write_file(prefix + "_contours.csv", contour_csv(cs));
        write_file(prefix + "_contours.svg", contour_svg(cs));
        rep.add("file.contours_csv", prefix + "_contours.csv");
        rep.add("file.contours_svg", prefix + "_contours.svg");
    }
    out << rep.text();
    if (!prefix.empty()) write_file(prefix + ".report.txt", rep.text());
    return exit_code;
}

void report_classification(const ClassificationReport& r, Report& rep) {
    rep.add("verdict", to_string(r.verdict));
    switch (r.verdict) {
        case VerdictKind::XFamily:
            rep.add("param.m", r.m);
            rep.add("param.c", r.c);
            rep.add("param.phase", r.phase);
            rep.add("param.offset", r.offset);
            break;
        case VerdictKind::PFamily:
            rep.add("param.k", r.m);
            rep.add("param.c", r.c);
            rep.add("param.phase", r.phase);
            rep.add("param.offset", r.offset);
            break;
        case VerdictKind::Helicoidal:
            rep.add("param.a", r.a);
            break;
        default:
            break;
    }
    rep.add("residual.delta_invariance", r.delta_invariance);
    rep.add("residual.beta_linearity", r.beta_linearity);
    rep.add("residual.reconstruction_rms", r.reconstruction_rms);
    rep.add("precondition.delta_invariant", r.precondition_delta ? "true" : "false");
    rep.add("precondition.K_nonconstant", r.precondition_K ? "true" : "false");
    if (!r.diagnostic.empty()) rep.add("diagnostic", r.diagnostic);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const std::string chart = cfg.get("chart", "polar");
    if (chart != "polar" && chart != "cartesian")
        throw ConfigError("key 'chart': expected polar or cartesian");

    FieldSamples samples;
    double tol;
    if (cfg.has("input")) {
        const HeightTable t = parse_height_field_csv(read_file(cfg.get("input", "")));
        try {
            samples = sample_field_from_table(t.u, t.v, t.F);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("height CSV: ") + e.what());
        }
        tol = cfg.get_double("tol", 1e-3); // finite-difference derivatives
    } else {
        const BuiltSurface b = build_surface(cfg);
        if (!b.height) throw ConfigError("classify: surface is not a graph chart");
        samples = sample_field(b.height, b.patch.domain, cfg.get_int("nu", 64),
                               cfg.get_int("nv", 64));
        tol = cfg.get_double("tol", 1e-6); // analytic derivatives
    }

    const ClassificationReport r = chart == "polar" ? classify_polar(samples, tol)
                                                    : classify_cartesian(samples, tol);
    Report rep;
    echo_config(cfg, rep);
    report_classification(r, rep);
    out << rep.text();
    const std::string prefix = cfg.get("out_prefix", "");
    if (!prefix.empty()) write_file(prefix + ".report.txt", rep.text());
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const BuiltSurface b = build_surface(cfg);
    const double tol = cfg.get_double("tol", 1e-8);
    const ShiftKind kind = b.polar ? ShiftKind::Rotational : ShiftKind::Translational;

    const RotationEstimate est = estimate_rotation_constant(b.patch, kind);
    const double residual =
        equivariance_residual(b.patch, SymmetryProbe{kind, est.k_hat});
    const SymmetryLabel label = classify_symmetry_kind(est.k_hat, kind);

    Report rep;
    echo_config(cfg, rep);
    rep.add("k_hat", est.k_hat);
    rep.add("k_hat.regression_residual", est.max_residual);
    rep.add("k_hat.skipped_samples", est.skipped);
    rep.add("equivariance.residual", residual);
    rep.add("label", to_string(label));

    double identity = 0.0;
    bool identity_checked = false;
    if (b.polar && b.height) {
        try {
            identity = proof_identity_residual(
                sample_field(b.height, b.patch.domain, 64, 64), 1e-6);
            identity_checked = true;
            rep.add("identity.residual", identity);
        } catch (const PreconditionError& e) {
            rep.add("identity.skipped", e.what());
        }
    }

    int exit_code = 0;
    if (est.max_residual > tol || residual > std::max(tol, 1e-10)) exit_code = 1;
    if (identity_checked && identity > 1e-8) exit_code = 1;
    rep.add("within_tolerance", exit_code == 0 ? "true" : "false");

    out << rep.text();
    const std::string prefix = cfg.get("out_prefix", "");
    if (!prefix.empty()) write_file(prefix + ".report.txt", rep.text());
    return exit_code;
}

int cmd_render(const RunConfig& cfg, std::ostream& out) {
    const BuiltSurface b = build_surface(cfg);
    const int nu = cfg.get_int("nu", 256);
    const int nv = cfg.get_int("nv", 256);
    const std::string prefix = cfg.get("out_prefix", "");
    if (prefix.empty()) throw ConfigError("render: missing key 'out_prefix'");
    const std::string pgm = cfg.get("pgm", "p2");
    if (pgm != "p2" && pgm != "p5") throw ConfigError("key 'pgm': expected p2 or p5");

    const ScalarGrid grid = sample_K_grid(b.patch, nu, nv);
    const std::vector<double> levels = contour_levels(cfg, grid);
    ContourSet cs = extract_contours(grid, levels);
    project_contours(b.patch, cs);

    double k_min = 0, k_max = 0;
    bool first = true;
    for (std::size_t k = 0; k < grid.values.size(); ++k) {
        if (!grid.mask[k]) continue;
        if (first) {
            k_min = k_max = grid.values[k];
            first = false;
        }
        k_min = std::min(k_min, grid.values[k]);
        k_max = std::max(k_max, grid.values[k]);
    }

    write_file(prefix + ".pgm", pgm_image(grid, pgm == "p5"));
    write_file(prefix + "_contours.svg", contour_svg(cs));

    Report rep;
    echo_config(cfg, rep);
    rep.add("K.min", k_min);
    rep.add("K.max", k_max);
    rep.add("file.pgm", prefix + ".pgm");
    rep.add("file.contours_svg", prefix + "_contours.svg");
    out << rep.text();
    write_file(prefix + ".report.txt", rep.text());
    return 0;
}

} // namespace

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_double(key, it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_int(key, it->second);
}

std::map<std::string, std::string> parse_config_file(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!known_keys().count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
        kv[key] = value;
    }
    return kv;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    std::map<std::string, std::string> cli_kv;
    std::string config_path;

    std::size_t i = 0;
    if (i < args.size() && !args[i].empty() && args[i][0] != '-') {
        cfg.command = args[i];
        ++i;
    }
    for (; i < args.size(); ++i) {
        std::string tok = args[i];
        if (tok == "--help" || tok == "-h") {
            cfg.command = "help";
            return cfg;
        }
        std::string key, value;
        if (tok.rfind("--", 0) == 0) tok = tok.substr(2);
        const auto eq = tok.find('=');
        if (eq != std::string::npos) {
            key = tok.substr(0, eq);
            value = tok.substr(eq + 1);
        } else {
            key = tok;
            if (i + 1 >= args.size()) throw ConfigError("flag '" + key + "': missing value");
            value = args[++i];
        }
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "config") {
            config_path = value;
            continue;
        }
        if (!known_keys().count(key) || key == "command")
            throw ConfigError("unknown key '" + key + "'");
        cli_kv[key] = value;
    }

    if (!config_path.empty()) {
        const auto file_kv = parse_config_file(read_file(config_path));
        for (const auto& [k, v] : file_kv) {
            if (k == "command") {
                if (cfg.command.empty()) cfg.command = v;
            } else {
                cfg.kv[k] = v;
            }
        }
    }
    for (const auto& [k, v] : cli_kv) cfg.kv[k] = v; // CLI overrides the file

    if (cfg.command.empty()) throw ConfigError("missing command; try --help");
    if (cfg.command != "help" && !known_commands().count(cfg.command))
        throw ConfigError("unknown command '" + cfg.command + "'");
    return cfg;
}

std::string help_text() {
    return
        "kcontour - Gaussian-curvature contours of parametric surfaces\n"
        "\n"
        "usage: kcontour <command> [--config FILE] [--key value | key=value ...]\n"
        "\n"
        "commands:\n"
        "  analyze    tabulate K, H, Delta; compare pipeline vs closed forms\n"
        "  contours   extract K-contours, project them, test concentric/parallel\n"
        "  classify   classify a height field (named family or CSV input)\n"
        "  verify     Gauss-map equivariance: rotation constant and residuals\n"
        "  render     PGM curvature map and SVG contour plot\n"
        "\n"
        "keys (config file and command line; command line wins):\n"
        "  command      subcommand when given via config file\n"
        "  family       x | p | helicoid | plane\n"
        "  m, c         x-family exponent and amplitude (c also for family p)\n"
        "  k            p-family frequency/growth rate\n"
        "  a            helicoid pitch\n"
        "  profile      helicoid profile A(r): none | log\n"
        "  chart        classify input chart: polar | cartesian\n"
        "  r_min, r_max       polar domain (default 0.2, 2)\n"
        "  theta_min, theta_max  polar angle span (default 0, 2*pi)\n"
        "  x_min, x_max, y_min, y_max  Cartesian domain (default -1, 1)\n"
        "  nu, nv       grid sizes\n"
        "  levels       contour level count (quantiles) or comma-separated values\n"
        "  tol          command tolerance\n"
        "  out_prefix   output file prefix\n"
        "  seed         seed echoed into the report (reserved for sampling)\n"
        "  input        height-field CSV path (classify)\n"
        "  check        contours verdict: concentric | parallel | none\n"
        "  pgm          render format: p2 | p5\n"
        "\n"
        "exit codes: 0 success, 1 verdict/tolerance failure, 2 input error\n";
}

int run(const RunConfig& cfg, std::ostream& out) {
    if (cfg.command == "help") {
        out << help_text();
        return 0;
    }
    if (cfg.command == "analyze") return cmd_analyze(cfg, out);
    if (cfg.command == "contours") return cmd_contours(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "render") return cmd_render(cfg, out);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

} // namespace kcontour
