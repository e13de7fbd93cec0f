#include "kcontour/contour.hpp"

#include "kcontour/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace kcontour {

ScalarGrid sample_K_grid(const SurfacePatch& s, int nu, int nv) {
    if (nu < 2 || nv < 2) throw std::invalid_argument("sample_K_grid: grid sizes must be >= 2");
    ScalarGrid g;
    g.nu = nu;
    g.nv = nv;
    g.extent = s.domain;
    g.values.assign(static_cast<std::size_t>(nu) * nv, 0.0);
    g.mask.assign(static_cast<std::size_t>(nu) * nv, 0);
    std::size_t ok = 0;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            try {
                const double k = gaussian_curvature(s, g.u_at(i), g.v_at(j));
                if (std::isfinite(k)) {
                    g.values[g.idx(i, j)] = k;
                    g.mask[g.idx(i, j)] = 1;
                    ++ok;
                }
            } catch (const DegenerateMetricError&) {
            } catch (const DomainError&) {
            }
        }
    }
    if (ok == 0) throw DomainError("sample_K_grid: no valid grid node");
    return g;
}

namespace {

// Grid-edge ids: a crossing lies either on the u-edge (i,j)-(i+1,j) or the
// v-edge (i,j)-(i,j+1). Shared ids let segments from adjacent cells stitch.
std::int64_t u_edge_id(const ScalarGrid& g, int i, int j) {
    return 2 * (static_cast<std::int64_t>(i) * g.nv + j);
}
std::int64_t v_edge_id(const ScalarGrid& g, int i, int j) {
    return 2 * (static_cast<std::int64_t>(i) * g.nv + j) + 1;
}

struct Segment {
    std::int64_t a, b;
};

Vec2 edge_point(const ScalarGrid& g, std::int64_t id, double level) {
    const bool vertical = (id & 1) != 0;
    const std::int64_t node = id / 2;
    const int i = static_cast<int>(node / g.nv);
    const int j = static_cast<int>(node % g.nv);
    double f0, f1;
    if (vertical) {
        f0 = g.values[g.idx(i, j)];
        f1 = g.values[g.idx(i, j + 1)];
    } else {
        f0 = g.values[g.idx(i, j)];
        f1 = g.values[g.idx(i + 1, j)];
    }
    const double t = (level - f0) / (f1 - f0);
    if (vertical) return {g.u_at(i), g.v_at(j) + t * (g.v_at(j + 1) - g.v_at(j))};
    return {g.u_at(i) + t * (g.u_at(i + 1) - g.u_at(i)), g.v_at(j)};
}

std::vector<Polyline2> extract_level(const ScalarGrid& g, double level) {
    // cell edges: e0 bottom (j), e1 right (i+1), e2 top (j+1), e3 left (i)
    std::vector<Segment> segs;
    for (int i = 0; i + 1 < g.nu; ++i) {
        for (int j = 0; j + 1 < g.nv; ++j) {
            if (!g.valid(i, j) || !g.valid(i + 1, j) || !g.valid(i, j + 1) ||
                !g.valid(i + 1, j + 1))
                continue;
            const double f00 = g.values[g.idx(i, j)];
            const double f10 = g.values[g.idx(i + 1, j)];
            const double f11 = g.values[g.idx(i + 1, j + 1)];
            const double f01 = g.values[g.idx(i, j + 1)];
            const int c = (f00 >= level ? 1 : 0) | (f10 >= level ? 2 : 0) |
                          (f11 >= level ? 4 : 0) | (f01 >= level ? 8 : 0);
            if (c == 0 || c == 15) continue;
            const std::int64_t e0 = u_edge_id(g, i, j);
            const std::int64_t e1 = v_edge_id(g, i + 1, j);
            const std::int64_t e2 = u_edge_id(g, i, j + 1);
            const std::int64_t e3 = v_edge_id(g, i, j);
            auto add = [&](std::int64_t a, std::int64_t b) { segs.push_back({a, b}); };
            switch (c) {
                case 1: case 14: add(e3, e0); break;
                case 2: case 13: add(e0, e1); break;
                case 3: case 12: add(e3, e1); break;
                case 4: case 11: add(e1, e2); break;
                case 6: case 9:  add(e0, e2); break;
                case 7: case 8:  add(e2, e3); break;
                case 5: // saddle: cell average picks the pairing
                    if ((f00 + f10 + f01 + f11) / 4.0 >= level) {
                        add(e0, e1); add(e2, e3);
                    } else {
                        add(e3, e0); add(e1, e2);
                    }
                    break;
                case 10:
                    if ((f00 + f10 + f01 + f11) / 4.0 >= level) {
                        add(e3, e0); add(e1, e2);
                    } else {
                        add(e0, e1); add(e2, e3);
                    }
                    break;
                default: break;
            }
        }
    }

    // Stitch segments into chains by shared edge ids, in scan order.
    std::map<std::int64_t, std::vector<std::size_t>> at_edge;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        at_edge[segs[k].a].push_back(k);
        at_edge[segs[k].b].push_back(k);
    }
    std::vector<bool> used(segs.size(), false);
    auto next_seg = [&](std::int64_t edge, std::size_t) -> std::size_t {
        for (std::size_t k : at_edge[edge])
            if (!used[k]) return k;
        return segs.size();
    };

    std::vector<Polyline2> chains;
    for (std::size_t start = 0; start < segs.size(); ++start) {
        if (used[start]) continue;
        used[start] = true;
        std::vector<std::int64_t> ids{segs[start].a, segs[start].b};
        // extend forward from the tail
        for (;;) {
            const std::size_t k = next_seg(ids.back(), start);
            if (k == segs.size()) break;
            used[k] = true;
            ids.push_back(segs[k].a == ids.back() ? segs[k].b : segs[k].a);
        }
        // extend backward from the head
        for (;;) {
            const std::size_t k = next_seg(ids.front(), start);
            if (k == segs.size()) break;
            used[k] = true;
            ids.insert(ids.begin(), segs[k].a == ids.front() ? segs[k].b : segs[k].a);
        }
        Polyline2 chain;
        chain.reserve(ids.size());
        for (std::int64_t id : ids) chain.push_back(edge_point(g, id, level));
        if (chain.size() >= 2) chains.push_back(std::move(chain));
    }
    return chains;
}

} // namespace

ContourSet extract_contours(const ScalarGrid& g, const std::vector<double>& levels) {
    ContourSet cs;
    cs.levels = levels;
    cs.chains.reserve(levels.size());
    for (double level : levels) cs.chains.push_back(extract_level(g, level));
    return cs;
}

void project_contours(const SurfacePatch& s, ContourSet& cs) {
    cs.projected.clear();
    cs.projected.reserve(cs.chains.size());
    for (const auto& level_chains : cs.chains) {
        std::vector<Polyline2> proj;
        proj.reserve(level_chains.size());
        for (const auto& chain : level_chains) {
            Polyline2 p;
            p.reserve(chain.size());
            for (const Vec2& q : chain) {
                const Vec3 pos = position(s, q.x, q.y);
                p.push_back({pos.x, pos.y});
            }
            proj.push_back(std::move(p));
        }
        cs.projected.push_back(std::move(proj));
    }
}

std::vector<double> quantile_levels(const ScalarGrid& g, int count) {
    if (count < 1) throw std::invalid_argument("quantile_levels: count must be >= 1");
    std::vector<double> vals;
    vals.reserve(g.values.size());
    for (std::size_t k = 0; k < g.values.size(); ++k)
        if (g.mask[k]) vals.push_back(g.values[k]);
    if (vals.size() < 2) throw DomainError("quantile_levels: too few valid samples");
    std::sort(vals.begin(), vals.end());
    std::vector<double> levels;
    for (int q = 1; q <= count; ++q) {
        const double p = static_cast<double>(q) / (count + 1);
        const double pos = p * (vals.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, vals.size() - 1);
        const double level = vals[lo] + (pos - lo) * (vals[hi] - vals[lo]);
        if (level <= vals.front() || level >= vals.back()) continue;
        if (!levels.empty() && level == levels.back()) continue;
        levels.push_back(level);
    }
    return levels;
}

} // namespace kcontour
