#include <codeforest/layout.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace codeforest {

namespace {

constexpr double kGoldenAngle = std::numbers::pi * (3.0 - 2.2360679774997896964); // pi * (3 - sqrt 5)
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxExpansions = 200;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Portable uniform stream keyed by (seed, a, b); std distributions are not
// bit-reproducible across standard libraries, so draws are built by hand.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
        : state_(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xD1B54A32D192ED03ull))) {}

    double uniform() {
        state_ += 0x9E3779B97F4A7C15ull;
        return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

constexpr std::uint64_t kAngleStream = 0xA5A5A5A5ull;

struct LocalArrangement {
    std::vector<Vec2> offsets; // parallel to members
    std::vector<double> tier_radii;
    double radius = 0.0;
    double wall_run = 0.0;
};

double norm(Vec2 v) { return std::hypot(v.x, v.z); }

LocalArrangement arrange_island(std::uint32_t package_index, std::span<const std::uint32_t> members,
                                std::span<const std::uint32_t> layers, const LayoutParams& params) {
    LocalArrangement out;
    const double s_min = params.s_min;
    out.wall_run = 0.25 * s_min;
    std::uint32_t max_layer = 0;
    for (std::uint32_t c : members) max_layer = std::max(max_layer, layers[c]);
    const std::size_t tiers = members.empty() ? 1 : max_layer + 1;

    const double jitter = 0.25 * s_min;
    double spacing = 1.5 * s_min;
    for (int attempt = 0; attempt <= kMaxExpansions; ++attempt) {
        out.offsets.assign(members.size(), Vec2{});
        out.tier_radii.assign(tiers, 0.0);
        double inner = 0.0;
        for (std::size_t k = 0; k < tiers; ++k) {
            Stream angle_stream(params.seed, package_index, kAngleStream + k);
            const double start_angle = kTwoPi * angle_stream.uniform();
            // Continue the sunflower spiral outward from the tier's inner edge.
            std::size_t first = 0;
            if (k > 0) first = static_cast<std::size_t>(std::ceil(std::pow((inner + jitter) / spacing, 2.0)));
            double outer = k == 0 ? 0.0 : inner;
            std::size_t ordinal = 0;
            for (std::size_t m = 0; m < members.size(); ++m) {
                const std::uint32_t cls = members[m];
                if (layers[cls] != k) continue;
                const std::size_t n = first + ordinal++;
                const double r = spacing * std::sqrt(static_cast<double>(n));
                const double theta = start_angle + static_cast<double>(n) * kGoldenAngle;
                Vec2 p{r * std::cos(theta), r * std::sin(theta)};
                if (n > 0) {
                    Stream js(params.seed, package_index, 0x10000ull + cls);
                    const double jr = jitter * std::sqrt(js.uniform());
                    const double jt = kTwoPi * js.uniform();
                    p.x += jr * std::cos(jt);
                    p.z += jr * std::sin(jt);
                }
                out.offsets[m] = p;
                outer = std::max(outer, norm(p));
            }
            out.tier_radii[k] = outer + 0.5 * s_min;
            inner = out.tier_radii[k] + out.wall_run + 0.5 * s_min;
        }

        bool separated = true;
        for (std::size_t i = 0; i < members.size() && separated; ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const Vec2 d{out.offsets[i].x - out.offsets[j].x, out.offsets[i].z - out.offsets[j].z};
                if (norm(d) < s_min) {
                    separated = false;
                    break;
                }
            }
        }
        if (separated) break;
        spacing *= 1.15;
    }

    const double by_count = params.base_radius_per_class * std::sqrt(static_cast<double>(members.size()));
    const double needed = out.tier_radii.back() + out.wall_run;
    out.radius = std::max({by_count, 2.0 * s_min, needed});
    out.tier_radii.back() = out.radius - out.wall_run;
    return out;
}

std::vector<std::vector<std::uint32_t>> members_by_package(const CodeModel& model) {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& p : model.packages) out.push_back(p.classes);
    return out;
}

} // namespace

std::vector<std::uint32_t> assign_layers(const CodeModel& model) {
    return inheritance_depths(model);
}

std::vector<IslandLayout> place_islands(const CodeModel& model, const LayoutParams& params) {
    const auto layers = assign_layers(model);
    const std::uint32_t global_max = layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end());
    const auto members = members_by_package(model);

    std::vector<IslandLayout> islands;
    for (std::uint32_t p = 0; p < members.size(); ++p) {
        const auto local = arrange_island(p, members[p], layers, params);
        IslandLayout island;
        island.package_index = p;
        island.radius = local.radius;
        island.tier_radii = local.tier_radii;
        island.wall_run = local.wall_run;
        for (std::size_t k = 0; k < local.tier_radii.size(); ++k) {
            island.tier_heights.push_back(static_cast<double>(global_max - k) * params.tier_drop);
        }
        islands.push_back(std::move(island));
    }

    // Archimedean spiral around the origin; each island advances along it
    // until it clears every island already placed.
    double max_radius = 0.0;
    for (const auto& i : islands) max_radius = std::max(max_radius, i.radius);
    const double pitch = (2.0 * max_radius + params.island_margin) / kTwoPi;
    const double step = 0.05;
    double t = 0.0;
    for (std::size_t i = 1; i < islands.size(); ++i) {
        while (true) {
            t += step;
            const Vec2 c{pitch * t * std::cos(t), pitch * t * std::sin(t)};
            bool clear = true;
            for (std::size_t j = 0; j < i; ++j) {
                const Vec2 d{c.x - islands[j].center.x, c.z - islands[j].center.z};
                if (norm(d) < islands[i].radius + islands[j].radius + params.island_margin) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                islands[i].center = c;
                break;
            }
        }
    }
    return islands;
}

std::vector<TreePlacement> place_trees(const IslandLayout& island, std::span<const std::uint32_t> members,
                                       std::span<const std::uint32_t> layers, const LayoutParams& params) {
    const auto local = arrange_island(island.package_index, members, layers, params);
    std::vector<TreePlacement> out;
    out.reserve(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
        TreePlacement t;
        t.class_index = members[m];
        t.layer = layers[members[m]];
        t.position = {island.center.x + local.offsets[m].x, island.center.z + local.offsets[m].z};
        t.trunk_base_y = island.tier_heights.at(t.layer);
        out.push_back(t);
    }
    return out;
}

std::vector<ChannelPath> route_channels(const CodeModel& model, std::span<const IslandLayout> islands,
                                        std::span<const TreePlacement> trees) {
    std::vector<ChannelPath> out;
    for (const auto& edge : model.inheritance_edges) {
        const TreePlacement& parent = trees[edge.parent];
        const TreePlacement& child = trees[edge.child];
        ChannelPath path;
        path.parent = edge.parent;
        path.child = edge.child;
        const Vec3 start{parent.position.x, parent.trunk_base_y, parent.position.z};
        const Vec3 end{child.position.x, child.trunk_base_y, child.position.z};
        path.polyline.push_back(start);

        const auto pi = model.classes[edge.parent].package_index;
        const auto ci = model.classes[edge.child].package_index;
        if (pi == ci) {
            // Step down where the straight line crosses the middle of each
            // wall between the two tiers. The parent sits inside every such
            // radius and the child outside, so each crossing is unique.
            const IslandLayout& island = islands[pi];
            const Vec2 p{start.x - island.center.x, start.z - island.center.z};
            const Vec2 d{end.x - start.x, end.z - start.z};
            const double dd = d.x * d.x + d.z * d.z;
            const double pd = p.x * d.x + p.z * d.z;
            const double pp = p.x * p.x + p.z * p.z;
            const double half = 0.5 * island.wall_run / std::sqrt(dd);
            for (std::uint32_t k = parent.layer; k < child.layer; ++k) {
                const double rho = island.tier_radii[k] + 0.5 * island.wall_run;
                const double disc = pd * pd - dd * (pp - rho * rho);
                const double root = (-pd + std::sqrt(std::max(0.0, disc))) / dd;
                const double eps = std::min(half, 0.25 * std::min(root, 1.0 - root));
                const double t0 = root - eps;
                const double t1 = root + eps;
                path.polyline.push_back({start.x + t0 * d.x, island.tier_heights[k], start.z + t0 * d.z});
                path.polyline.push_back({start.x + t1 * d.x, island.tier_heights[k + 1], start.z + t1 * d.z});
            }
        }
        path.polyline.push_back(end);
        out.push_back(std::move(path));
    }
    return out;
}

ForestLayout layout_forest(const CodeModel& model, const LayoutParams& params) {
    ForestLayout out;
    out.layers = assign_layers(model);
    out.islands = place_islands(model, params);
    out.trees.resize(model.classes.size());
    for (std::size_t p = 0; p < model.packages.size(); ++p) {
        const auto& members = model.packages[p].classes;
        for (const auto& t : place_trees(out.islands[p], members, out.layers, params)) {
            out.trees[t.class_index] = t;
        }
    }
    out.channels = route_channels(model, out.islands, out.trees);
    return out;
}

} // namespace codeforest
