// End-to-end acceptance checks. Each criterion prints exactly one line:
//   criterion <n> (<short name>): PASS|FAIL [detail]
// The process exits 0 only when every criterion passes. The first argument
// must be the path to the command-line binary (used by criterion 8).

#include "kcontour/classify.hpp"
#include "kcontour/contour.hpp"
#include "kcontour/families.hpp"
#include "kcontour/fitgeom.hpp"
#include "kcontour/io.hpp"
#include "kcontour/surface.hpp"
#include "kcontour/symmetry.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

using namespace kcontour;

namespace {

constexpr double pi = std::numbers::pi;
int failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << "criterion " << n << " (" << name << "): " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!pass) ++failures;
}

FieldSamples graph_samples(const SurfacePatch& s, int nu, int nv) {
    const ScalarField& h = std::holds_alternative<PolarGraph>(s.chart)
                               ? std::get<PolarGraph>(s.chart).height
                               : std::get<CartesianGraph>(s.chart).height;
    return sample_field(h, s.domain, nu, nv);
}

// --- criterion 1: polar family closed forms vs the metric pipeline --------

void criterion1() {
    const double kRelTol = 1e-9;
    double worst = 0.0;
    bool anchors = true;
    for (double m : {-2.0, -1.0, -0.5, 0.5, 2.0, 3.0}) {
        for (double c : {0.5, 1.0, 2.0}) {
            const XFamilyParams p(m, c);
            const SurfacePatch s = x_family_patch(p);
            for (int i = 0; i < 7; ++i) {
                const double r = 0.2 + 1.8 * i / 6.0;
                for (int j = 0; j < 9; ++j) {
                    const double t = 2.0 * pi * j / 9.0;
                    const FundForms f = fundamental_forms(s, r, t);
                    worst = std::max(worst, std::abs(f.K - x_family_K(p, r)) /
                                                std::max(1.0, std::abs(f.K)));
                    worst = std::max(worst, std::abs(f.H - x_family_H(p, r, t)) /
                                                std::max(1.0, std::abs(f.H)));
                    worst = std::max(worst, norm(f.normal - x_family_normal(p, r, t)));
                }
            }
        }
    }
    anchors = anchors && std::abs(x_family_K(XFamilyParams(2.0, 1.0), 1.0) + 0.16) <= 1e-12;
    anchors = anchors && std::abs(x_family_K(XFamilyParams(3.0, 1.0), 1.0) + 0.36) <= 1e-12;
    anchors = anchors && std::abs(x_family_K(XFamilyParams(-1.0, 1.0), 1.0) + 1.0) <= 1e-12;
    anchors = anchors &&
              std::abs(x_family_H(XFamilyParams(3.0, 1.0), 1.0, 0.0) -
                       (-54.0 / (2.0 * std::pow(10.0, 1.5)))) <= 1e-12;
    std::ostringstream detail;
    detail << "max rel dev " << worst << ", tol " << kRelTol;
    report(1, "polar family closed forms", worst <= kRelTol && anchors, detail.str());
}

// --- criterion 2: Cartesian family closed forms ---------------------------

void criterion2() {
    const double kRelTol = 1e-9;
    double worst = 0.0;
    for (double k : {-1.0, 1.0, 2.0}) {
        for (double c : {0.5, 1.0}) {
            const PFamilyParams p(k, c);
            const SurfacePatch s = p_family_patch(p);
            for (int i = 0; i < 7; ++i) {
                const double x = -1.0 + 2.0 * i / 6.0;
                for (int j = 0; j < 7; ++j) {
                    const double y = -1.0 + 2.0 * j / 6.0;
                    const FundForms f = fundamental_forms(s, x, y);
                    worst = std::max(worst, std::abs(f.K - p_family_K(p, x)) /
                                                std::max(1.0, std::abs(f.K)));
                    worst = std::max(worst, std::abs(f.H - p_family_H(p, x, y)) /
                                                std::max(1.0, std::abs(f.H)));
                    worst = std::max(worst, norm(f.normal - p_family_normal(p, x, y)));
                }
            }
        }
    }
    const bool anchor = std::abs(p_family_K(PFamilyParams(1.0, 1.0), 0.0) + 0.25) <= 1e-12;
    std::ostringstream detail;
    detail << "max rel dev " << worst << ", tol " << kRelTol;
    report(2, "Cartesian family closed forms", worst <= kRelTol && anchor, detail.str());
}

// --- criterion 3: direct polar curvature formula ---------------------------

void criterion3() {
    const double kTol = 1e-9;
    double worst = 0.0;
    const SurfacePatch patches[] = {
        x_family_patch(XFamilyParams(2.0, 1.0)),
        x_family_patch(XFamilyParams(3.0, 0.5)),
        x_family_patch(XFamilyParams(-1.0, 2.0)),
    };
    for (const auto& s : patches) {
        const ScalarField& F = std::get<PolarGraph>(s.chart).height;
        for (int i = 0; i < 7; ++i) {
            const double r = 0.2 + 1.8 * i / 6.0;
            for (int j = 0; j < 9; ++j) {
                const double t = 2.0 * pi * j / 9.0;
                const double a = gaussian_curvature(s, r, t);
                const double b = polar_graph_K(F, r, t);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
        }
    }
    // Helicoid anchor through the same formula: K = -a^2 / (r^2 + a^2)^2.
    const double a = 2.0;
    const ScalarField heli = [a](const Jet2&, const Jet2& t) { return a * t; };
    bool anchor = true;
    for (double r : {0.4, 1.0, 1.7}) {
        anchor = anchor && std::abs(polar_graph_K(heli, r, 1.1) +
                                    a * a / std::pow(r * r + a * a, 2.0)) <= 1e-12;
    }
    std::ostringstream detail;
    detail << "max rel dev " << worst << ", tol " << kTol;
    report(3, "direct polar curvature formula", worst <= kTol && anchor, detail.str());
}

// --- criterion 4: projected contour geometry -------------------------------

void criterion4() {
    bool pass = true;
    std::ostringstream detail;

    const SurfacePatch xs = x_family_patch(XFamilyParams(3.0, 1.0));
    const ScalarGrid xg = sample_K_grid(xs, 256, 256);
    ContourSet xcs = extract_contours(xg, quantile_levels(xg, 5));
    project_contours(xs, xcs);
    const SymmetryVerdict conc = concentricity_verdict(xcs, 1e-2);
    pass = pass && conc.holds && norm(conc.common_center) <= 2e-3;
    detail << "center dev " << norm(conc.common_center);

    const SurfacePatch ps = p_family_patch(PFamilyParams(1.0, 1.0));
    const ScalarGrid pg = sample_K_grid(ps, 256, 256);
    ContourSet pcs = extract_contours(pg, quantile_levels(pg, 5));
    project_contours(ps, pcs);
    const SymmetryVerdict par = parallelism_verdict(pcs, 1e-2);
    const double angle =
        std::acos(std::min(1.0, std::abs(par.common_direction.y))); // vs (0, 1)
    pass = pass && par.holds && angle <= 1e-3;
    detail << ", direction angle " << angle;

    report(4, "contour concentricity and parallelism", pass, detail.str());
}

// --- criterion 5: Gauss-map equivariance ------------------------------------

void criterion5() {
    bool pass = true;
    double worst_k = 0.0, worst_res = 0.0;
    for (double m : {-2.0, -1.0, -0.5, 0.5, 2.0, 3.0}) {
        const SurfacePatch s = x_family_patch(XFamilyParams(m, 1.0));
        const RotationEstimate est = estimate_rotation_constant(s, ShiftKind::Rotational);
        worst_k = std::max(worst_k, std::abs(est.k_hat - (1.0 - m)));
        worst_res = std::max(
            worst_res,
            equivariance_residual(s, SymmetryProbe{ShiftKind::Rotational, 1.0 - m}));
    }
    for (double k : {-1.0, 1.0, 2.0}) {
        const SurfacePatch s = p_family_patch(PFamilyParams(k, 1.0));
        const RotationEstimate est = estimate_rotation_constant(s, ShiftKind::Translational);
        worst_k = std::max(worst_k, std::abs(est.k_hat - (-k)));
        worst_res = std::max(
            worst_res,
            equivariance_residual(s, SymmetryProbe{ShiftKind::Translational, -k}));
    }
    HelicoidParams hp;
    hp.a = 2.0;
    const SurfacePatch hs = helicoid_patch(hp);
    worst_k = std::max(
        worst_k,
        std::abs(estimate_rotation_constant(hs, ShiftKind::Rotational).k_hat - 1.0));
    pass = worst_k <= 1e-8 && worst_res <= 1e-10;
    std::ostringstream detail;
    detail << "max constant dev " << worst_k << ", max residual " << worst_res;
    report(5, "Gauss-map equivariance", pass, detail.str());
}

// --- criterion 6: classifier round trips ------------------------------------

void criterion6() {
    bool pass = true;
    std::ostringstream detail;

    struct XCase {
        double m, c;
    };
    for (const XCase& tc : {XCase{3.0, 1.0}, XCase{-1.0, 1.0}, XCase{0.5, 1.0}}) {
        const ClassificationReport r =
            classify_polar(graph_samples(x_family_patch(XFamilyParams(tc.m, tc.c)), 64, 64));
        pass = pass && r.verdict == VerdictKind::XFamily && std::abs(r.m - tc.m) <= 1e-5 &&
               std::abs(r.c - tc.c) <= 1e-5 && r.reconstruction_rms <= 1e-8;
    }

    const ClassificationReport pr =
        classify_cartesian(graph_samples(p_family_patch(PFamilyParams(1.0, 1.0)), 64, 64));
    pass = pass && pr.verdict == VerdictKind::PFamily && std::abs(pr.m - 1.0) <= 1e-5 &&
           std::abs(pr.c - 1.0) <= 1e-5 && pr.reconstruction_rms <= 1e-8;

    HelicoidParams hp;
    hp.a = 2.0;
    hp.profile = [](const Jet2& r) { return log(r); };
    const ClassificationReport hr = classify_polar(graph_samples(helicoid_patch(hp), 64, 64));
    pass = pass && hr.verdict == VerdictKind::Helicoidal && std::abs(hr.a - 2.0) <= 1e-5 &&
           hr.reconstruction_rms <= 1e-8;

    // Counterexamples: superpositions must not round-trip.
    const ScalarField mixed_polar = [](const Jet2& r, const Jet2& t) {
        return r * r * cos(2.0 * t) + r * r * r * cos(3.0 * t);
    };
    const ClassificationReport mp =
        classify_polar(sample_field(mixed_polar, Rect{0.2, 2.0, 0.0, 2.0 * pi}, 64, 64));
    const ScalarField mixed_cart = [](const Jet2& x, const Jet2& y) {
        return exp(2.0 * x) * cos(2.0 * y) + exp(x) * cos(y);
    };
    const ClassificationReport mc =
        classify_cartesian(sample_field(mixed_cart, Rect{-1.0, 1.0, -1.0, 1.0}, 64, 64));
    pass = pass && mp.verdict == VerdictKind::Unclassified &&
           mc.verdict == VerdictKind::Unclassified;

    detail << "param tol 1e-5, reconstruction tol 1e-8";
    report(6, "classifier round trips", pass, detail.str());
}

// --- criterion 7: structural curvature identity -----------------------------

void criterion7() {
    double worst = 0.0;
    const SurfacePatch patches[] = {
        x_family_patch(XFamilyParams(3.0, 1.0)),
        x_family_patch(XFamilyParams(-1.0, 1.0)),
        x_family_patch(XFamilyParams(0.5, 1.0)),
        x_family_patch(XFamilyParams(2.0, 0.5)),
    };
    for (const auto& p : patches)
        worst = std::max(worst, proof_identity_residual(graph_samples(p, 64, 64)));
    HelicoidParams hp;
    hp.a = 2.0;
    hp.profile = [](const Jet2& r) { return log(r); };
    worst = std::max(worst, proof_identity_residual(graph_samples(helicoid_patch(hp), 64, 64)));
    std::ostringstream detail;
    detail << "max residual " << worst << ", tol 1e-8";
    report(7, "structural curvature identity", worst <= 1e-8, detail.str());
}

// --- criterion 8: command-line determinism and exit codes --------------------

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

int run_cli(const std::string& bin, const std::string& args, const std::string& out_path) {
    const std::string cmd = shell_quote(bin) + " " + args + " > " + shell_quote(out_path) +
                            " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion8(const std::string& bin) {
    bool pass = true;
    std::ostringstream detail;

    // Determinism: identical invocations produce byte-identical stdout and
    // byte-identical artifacts.
    const std::string base = "/tmp/kcontour_accept";
    const std::string args =
        "render --family x --m 2 --c 1 --nu 64 --nv 64 --out_prefix " + base + "_r";
    const int d1 = run_cli(bin, args, base + "_o1.txt");
    const std::string pgm1 = slurp(base + "_r.pgm");
    const std::string svg1 = slurp(base + "_r_contours.svg");
    const int d2 = run_cli(bin, args, base + "_o2.txt");
    pass = pass && d1 == 0 && d2 == 0;
    pass = pass && slurp(base + "_o1.txt") == slurp(base + "_o2.txt");
    pass = pass && slurp(base + "_r.pgm") == pgm1 && !pgm1.empty();
    pass = pass && slurp(base + "_r_contours.svg") == svg1 && !svg1.empty();
    detail << "determinism " << (pass ? "ok" : "violated");

    // Exit-code matrix.
    const int ok = run_cli(bin, "analyze --family x --m 2 --c 1 --nu 8 --nv 8",
                           base + "_a.txt");
    const int verdict_fail = run_cli(
        bin, "contours --family x --m 2 --c 1 --nu 65 --nv 65 --check parallel",
        base + "_b.txt");
    const int bad_key = run_cli(bin, "analyze --family x --m 2 --bogus 1", base + "_c.txt");
    {
        std::ofstream bad(base + "_bad.csv");
        bad << "u,v,F\n0,0,zero\n";
    }
    const int bad_csv =
        run_cli(bin, "classify --input " + base + "_bad.csv", base + "_d.txt");
    const int verify_ok = run_cli(bin, "verify --family x --m 3 --c 1", base + "_e.txt");
    pass = pass && ok == 0 && verdict_fail == 1 && bad_key == 2 && bad_csv == 2 &&
           verify_ok == 0;
    detail << "; exit codes " << ok << "/" << verdict_fail << "/" << bad_key << "/" << bad_csv
           << "/" << verify_ok << " (want 0/1/2/2/0)";

    for (const char* suffix :
         {"_o1.txt", "_o2.txt", "_a.txt", "_b.txt", "_c.txt", "_d.txt", "_e.txt", "_bad.csv",
          "_r.pgm", "_r_contours.svg", "_r.report.txt"})
        std::remove((base + suffix).c_str());

    report(8, "command-line determinism and exit codes", pass, detail.str());
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli-binary>\n";
        return 2;
    }
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(argv[1]);
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
