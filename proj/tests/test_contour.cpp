#include <doctest.h>

#include "kcontour/contour.hpp"
#include "kcontour/errors.hpp"
#include "kcontour/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace kcontour;

namespace {

constexpr double pi = std::numbers::pi;

double max_radius_error(const std::vector<Polyline2>& chains, Vec2 center, double radius) {
    double worst = 0.0;
    for (const auto& chain : chains) {
        for (const auto& p : chain) {
            worst = std::max(worst, std::abs(norm(p - center) - radius));
        }
    }
    return worst;
}

std::size_t total_vertices(const std::vector<Polyline2>& chains) {
    std::size_t n = 0;
    for (const auto& chain : chains) n += chain.size();
    return n;
}

} // namespace

TEST_CASE("curvature grid covers the patch and is fully valid for the saddle") {
    const SurfacePatch s = x_family_patch(XFamilyParams(2.0, 1.0));
    const ScalarGrid g = sample_K_grid(s, 33, 65);
    CHECK(g.nu == 33);
    CHECK(g.nv == 65);
    CHECK(g.u_at(0) == doctest::Approx(0.2));
    CHECK(g.u_at(32) == doctest::Approx(2.0));
    CHECK(std::count(g.mask.begin(), g.mask.end(), 1) == 33 * 65);
    // Spot value: K(1) = -0.16 at the midpoint row of r in [0.2, 2.0]... the
    // node at u = 1.1 instead; check one directly computed entry.
    CHECK(g.values[g.idx(0, 0)] ==
          doctest::Approx(x_family_K(XFamilyParams(2.0, 1.0), 0.2)).epsilon(1e-12));
}

TEST_CASE("level curve of the saddle at K = -0.16 projects to the unit circle") {
    const SurfacePatch s = x_family_patch(XFamilyParams(2.0, 1.0));
    const ScalarGrid g = sample_K_grid(s, 257, 257);
    ContourSet cs = extract_contours(g, {-0.16});
    REQUIRE(cs.chains.size() == 1);
    REQUIRE_FALSE(cs.chains[0].empty());
    // In parameter space the level set is r = 1 (K depends on r only).
    for (const auto& chain : cs.chains[0]) {
        for (const auto& p : chain) {
            CHECK(std::abs(p.x - 1.0) <= 1e-4);
        }
    }
    project_contours(s, cs);
    REQUIRE(cs.projected.size() == 1);
    CHECK(total_vertices(cs.projected[0]) == total_vertices(cs.chains[0]));
    CHECK(max_radius_error(cs.projected[0], Vec2{0.0, 0.0}, 1.0) <= 1e-4);
}

TEST_CASE("contour refinement converges at second order") {
    const SurfacePatch s = x_family_patch(XFamilyParams(2.0, 1.0));
    const ScalarGrid coarse = sample_K_grid(s, 65, 65);
    const ScalarGrid fine = sample_K_grid(s, 129, 129);
    ContourSet cc = extract_contours(coarse, {-0.16});
    ContourSet cf = extract_contours(fine, {-0.16});
    project_contours(s, cc);
    project_contours(s, cf);
    const double ec = max_radius_error(cc.projected[0], Vec2{0.0, 0.0}, 1.0);
    const double ef = max_radius_error(cf.projected[0], Vec2{0.0, 0.0}, 1.0);
    CHECK(ef <= ec / 3.0); // ~4x for a second-order method, slack for luck
}

TEST_CASE("levels outside the sampled range yield empty chain lists") {
    const SurfacePatch s = x_family_patch(XFamilyParams(2.0, 1.0));
    const ScalarGrid g = sample_K_grid(s, 65, 65);
    const ContourSet cs = extract_contours(g, {1.0, -100.0});
    REQUIRE(cs.chains.size() == 2);
    CHECK(cs.chains[0].empty());
    CHECK(cs.chains[1].empty());
}

TEST_CASE("Cartesian family contours are vertical lines") {
    // K of F = e^x cos y depends on x only; the K(0) level is the line x = 0.
    const PFamilyParams p(1.0, 1.0);
    const SurfacePatch s = p_family_patch(p);
    const ScalarGrid g = sample_K_grid(s, 257, 257);
    ContourSet cs = extract_contours(g, {p_family_K(p, 0.0)});
    REQUIRE_FALSE(cs.chains[0].empty());
    project_contours(s, cs);
    for (const auto& chain : cs.projected[0]) {
        for (const auto& q : chain) {
            CHECK(std::abs(q.x) <= 1e-5);
        }
    }
}

TEST_CASE("extraction is deterministic") {
    const SurfacePatch s = x_family_patch(XFamilyParams(3.0, 1.0));
    const ScalarGrid g = sample_K_grid(s, 129, 129);
    const std::vector<double> levels = quantile_levels(g, 5);
    const ContourSet a = extract_contours(g, levels);
    const ContourSet b = extract_contours(g, levels);
    REQUIRE(a.chains.size() == b.chains.size());
    for (std::size_t k = 0; k < a.chains.size(); ++k) {
        REQUIRE(a.chains[k].size() == b.chains[k].size());
        for (std::size_t c = 0; c < a.chains[k].size(); ++c) {
            REQUIRE(a.chains[k][c].size() == b.chains[k][c].size());
            for (std::size_t i = 0; i < a.chains[k][c].size(); ++i) {
                CHECK(a.chains[k][c][i].x == b.chains[k][c][i].x);
                CHECK(a.chains[k][c][i].y == b.chains[k][c][i].y);
            }
        }
    }
}

TEST_CASE("quantile levels are interior, sorted, and distinct") {
    const SurfacePatch s = x_family_patch(XFamilyParams(2.0, 1.0));
    const ScalarGrid g = sample_K_grid(s, 65, 65);
    const std::vector<double> levels = quantile_levels(g, 5);
    REQUIRE(levels.size() == 5);
    const double lo = *std::min_element(g.values.begin(), g.values.end());
    const double hi = *std::max_element(g.values.begin(), g.values.end());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        CHECK(levels[i] > lo);
        CHECK(levels[i] < hi);
        if (i > 0) CHECK(levels[i] > levels[i - 1]);
    }
}

TEST_CASE("masked nodes suppress cells instead of crashing") {
    ScalarGrid g;
    g.nu = 3;
    g.nv = 3;
    g.extent = Rect{0.0, 1.0, 0.0, 1.0};
    g.values = {0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    g.mask = std::vector<std::uint8_t>(9, 1);
    const ContourSet full = extract_contours(g, {0.5});
    CHECK_FALSE(full.chains[0].empty());

    g.mask[g.idx(1, 1)] = 0; // kill the only node above the level
    const ContourSet masked = extract_contours(g, {0.5});
    CHECK(masked.chains[0].empty());
}

TEST_CASE("grids with no valid node are rejected") {
    // Immersion that always degenerates: every sample node masks out.
    Immersion im;
    im.x = [](const Jet2& u, const Jet2& v) { return u + v; };
    im.y = [](const Jet2& u, const Jet2& v) { return u + v; };
    im.z = [](const Jet2& u, const Jet2& v) { return u + v; };
    const SurfacePatch s{im, Rect{0.0, 1.0, 0.0, 1.0}};
    CHECK_THROWS_AS(sample_K_grid(s, 8, 8), DomainError);
}
