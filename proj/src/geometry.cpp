#include <codeforest/geometry.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace codeforest {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGoldenAngle = std::numbers::pi * (3.0 - 2.2360679774997896964);

class MeshBuilder {
public:
    explicit MeshBuilder(MaterialId material) { mesh_.material = static_cast<std::uint32_t>(material); }

    std::uint32_t vertex(Vec3 p, Vec3 n) {
        const double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
        mesh_.positions.insert(mesh_.positions.end(),
                               {static_cast<float>(p.x), static_cast<float>(p.y), static_cast<float>(p.z)});
        mesh_.normals.insert(mesh_.normals.end(), {static_cast<float>(n.x / len), static_cast<float>(n.y / len),
                                                   static_cast<float>(n.z / len)});
        return static_cast<std::uint32_t>(mesh_.vertex_count() - 1);
    }

    void triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        mesh_.indices.insert(mesh_.indices.end(), {a, b, c});
    }

    // Ring of `n` vertices at radius r and height y; normals from `normal`.
    template <typename NormalFn>
    std::uint32_t ring(std::uint32_t n, double r, double y, NormalFn normal) {
        const auto first = static_cast<std::uint32_t>(mesh_.vertex_count());
        for (std::uint32_t j = 0; j < n; ++j) {
            const double theta = kTwoPi * j / n;
            const double cx = std::cos(theta);
            const double sz = std::sin(theta);
            vertex({r * cx, y, r * sz}, normal(cx, sz));
        }
        return first;
    }

    // Quads between two rings; `inner` must be the ring nearer the axis (or
    // the upper ring of a wall) for outward/upward facing triangles.
    void band(std::uint32_t inner, std::uint32_t outer, std::uint32_t n) {
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t k = (j + 1) % n;
            triangle(inner + j, inner + k, outer + j);
            triangle(inner + k, outer + k, outer + j);
        }
    }

    Mesh take() { return std::move(mesh_); }

private:
    Mesh mesh_;
};

Vec3 up(double, double) { return {0.0, 1.0, 0.0}; }

} // namespace

MaterialId leaf_material(MethodKind kind) {
    switch (kind) {
    case MethodKind::Accessor: return MaterialId::LeafAccessor;
    case MethodKind::Mutator: return MaterialId::LeafMutator;
    case MethodKind::Constructor: return MaterialId::LeafConstructor;
    case MethodKind::Other: return MaterialId::LeafOther;
    }
    return MaterialId::LeafOther;
}

std::vector<Material> default_palette() {
    return {
        {"trunk", {0.45, 0.29, 0.16, 1.0}},
        {"canopy", {0.20, 0.55, 0.22, 0.6}},
        {"island", {0.86, 0.78, 0.55, 1.0}},
        {"water", {0.18, 0.45, 0.85, 1.0}},
        {"leaf_accessor", {0.95, 0.80, 0.15, 1.0}},
        {"leaf_mutator", {0.90, 0.30, 0.20, 1.0}},
        {"leaf_constructor", {0.55, 0.30, 0.75, 1.0}},
        {"leaf_other", {0.35, 0.80, 0.35, 1.0}},
    };
}

TreeShape tree_shape(const ClassMetrics& metrics, std::uint32_t max_fan_out, const VisualParams& params) {
    TreeShape s;
    s.trunk_height = params.h0 + params.h1 * std::log1p(static_cast<double>(metrics.loc));
    const double coupling =
        max_fan_out == 0 ? 0.0 : static_cast<double>(metrics.fan_out) / static_cast<double>(max_fan_out);
    s.trunk_radius = params.r0 * (1.0 + params.c * coupling);
    s.canopy_radius = std::max(params.min_canopy_radius,
                               params.canopy_coefficient * std::sqrt(static_cast<double>(metrics.method_count)));
    s.leaf_radius = params.leaf_radius;
    return s;
}

Mesh build_cylinder_mesh(double radius, double height, std::uint32_t segments, MaterialId material) {
    MeshBuilder b(material);
    const auto side_normal = [](double cx, double sz) { return Vec3{cx, 0.0, sz}; };
    const auto top = b.ring(segments, radius, height, side_normal);
    const auto bottom = b.ring(segments, radius, 0.0, side_normal);
    b.band(top, bottom, segments);

    const auto cap_top = b.vertex({0.0, height, 0.0}, {0.0, 1.0, 0.0});
    const auto top_ring = b.ring(segments, radius, height, up);
    for (std::uint32_t j = 0; j < segments; ++j) {
        b.triangle(cap_top, top_ring + (j + 1) % segments, top_ring + j);
    }
    const auto cap_bottom = b.vertex({0.0, 0.0, 0.0}, {0.0, -1.0, 0.0});
    const auto bottom_ring = b.ring(segments, radius, 0.0, [](double, double) { return Vec3{0.0, -1.0, 0.0}; });
    for (std::uint32_t j = 0; j < segments; ++j) {
        b.triangle(cap_bottom, bottom_ring + j, bottom_ring + (j + 1) % segments);
    }
    return b.take();
}

Mesh build_sphere_mesh(double radius, std::uint32_t segments, MaterialId material) {
    MeshBuilder b(material);
    const std::uint32_t stacks = std::max<std::uint32_t>(3, segments / 2);
    const std::uint32_t cols = segments + 1; // seam column duplicated
    for (std::uint32_t i = 0; i <= stacks; ++i) {
        const double phi = std::numbers::pi * i / stacks;
        for (std::uint32_t j = 0; j < cols; ++j) {
            const double theta = kTwoPi * j / segments;
            const Vec3 dir{std::sin(phi) * std::cos(theta), std::cos(phi), std::sin(phi) * std::sin(theta)};
            b.vertex({radius * dir.x, radius * dir.y, radius * dir.z}, dir);
        }
    }
    for (std::uint32_t i = 0; i < stacks; ++i) {
        for (std::uint32_t j = 0; j < segments; ++j) {
            const std::uint32_t a = i * cols + j;
            const std::uint32_t bb = (i + 1) * cols + j;
            const std::uint32_t c = (i + 1) * cols + j + 1;
            const std::uint32_t d = i * cols + j + 1;
            if (i + 1 < stacks) b.triangle(a, c, bb);
            if (i > 0) b.triangle(a, d, c);
        }
    }
    return b.take();
}

Mesh build_island_mesh(const IslandLayout& island, std::uint32_t segments) {
    if (segments < 8) throw std::invalid_argument("island tessellation needs at least 8 segments");
    MeshBuilder b(MaterialId::Island);
    const std::size_t tiers = island.tier_heights.size();
    const double run = island.wall_run;

    const auto center = b.vertex({0.0, island.tier_heights[0], 0.0}, {0.0, 1.0, 0.0});
    const auto cap = b.ring(segments, island.tier_radii[0], island.tier_heights[0], up);
    for (std::uint32_t j = 0; j < segments; ++j) {
        b.triangle(center, cap + (j + 1) % segments, cap + j);
    }
    for (std::size_t k = 0; k < tiers; ++k) {
        const double h = island.tier_heights[k];
        if (k > 0) {
            const auto inner = b.ring(segments, island.tier_radii[k - 1] + run, h, up);
            const auto outer = b.ring(segments, island.tier_radii[k], h, up);
            b.band(inner, outer, segments);
        }
        const double below = k + 1 < tiers ? island.tier_heights[k + 1] : 0.0;
        // Outward normal of the wall profile (run, below - h) in the (r, y) plane.
        const double nr = h - below;
        const double ny = run;
        const auto wall_normal = [&](double cx, double sz) { return Vec3{nr * cx, ny, nr * sz}; };
        const auto top = b.ring(segments, island.tier_radii[k], h, wall_normal);
        const auto bottom = b.ring(segments, island.tier_radii[k] + run, below, wall_normal);
        b.band(top, bottom, segments);
    }
    return b.take();
}

BuiltTree build_tree_mesh(const ClassRecord& cls, const TreePlacement& placement, const ClassMetrics& metrics,
                          std::span<const MethodKind> kinds, std::uint32_t max_fan_out,
                          const VisualParams& params) {
    const std::string qualified = cls.decl.package_name + "." + cls.decl.name;
    const TreeShape shape = tree_shape(metrics, max_fan_out, params);

    BuiltTree tree;
    tree.name = "tree:" + qualified;
    tree.island = cls.package_index;
    tree.base = {placement.position.x, placement.trunk_base_y, placement.position.z};

    tree.parts.push_back({"trunk:" + qualified,
                          build_cylinder_mesh(shape.trunk_radius, shape.trunk_height, params.segments,
                                              MaterialId::Trunk),
                          {},
                          Primitive::Cylinder,
                          shape.trunk_radius,
                          shape.trunk_height,
                          params.segments});

    const Vec3 canopy_center{0.0, shape.trunk_height + 0.6 * shape.canopy_radius, 0.0};
    tree.parts.push_back({"canopy:" + qualified,
                          build_sphere_mesh(shape.canopy_radius, params.segments, MaterialId::Canopy),
                          canopy_center,
                          Primitive::Sphere,
                          shape.canopy_radius,
                          0.0,
                          params.segments});

    const auto& methods = cls.decl.methods;
    const std::size_t n = methods.size();
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double ring = std::sqrt(std::max(0.0, 1.0 - y * y));
        const double theta = static_cast<double>(i) * kGoldenAngle;
        const Vec3 offset{canopy_center.x + shape.canopy_radius * ring * std::cos(theta),
                          canopy_center.y + shape.canopy_radius * y,
                          canopy_center.z + shape.canopy_radius * ring * std::sin(theta)};
        const int ordinal = ++seen[methods[i].name];
        std::string name = fmt::format("leaf:{}.{}", qualified, methods[i].name);
        if (ordinal > 1) name += fmt::format("#{}", ordinal);
        tree.parts.push_back({std::move(name),
                              build_sphere_mesh(shape.leaf_radius, params.segments, leaf_material(kinds[i])),
                              offset,
                              Primitive::Sphere,
                              shape.leaf_radius,
                              0.0,
                              params.segments});
    }
    return tree;
}

Mesh build_channel_mesh(std::span<const Vec3> polyline, double width) {
    if (polyline.size() < 2) {
        throw Error(ErrorKind::DegenerateSegment, "channel needs at least two points");
    }
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        if (polyline[i] == polyline[i - 1]) {
            throw Error(ErrorKind::DegenerateSegment, fmt::format("channel points {} and {} coincide", i - 1, i));
        }
    }
    // Horizontal direction of travel at each point, averaged over the
    // adjoining segments; vertical drops borrow the overall heading.
    const Vec2 overall{polyline.back().x - polyline.front().x, polyline.back().z - polyline.front().z};
    auto heading = [&](std::size_t i) {
        Vec2 h{};
        if (i > 0) h = {h.x + polyline[i].x - polyline[i - 1].x, h.z + polyline[i].z - polyline[i - 1].z};
        if (i + 1 < polyline.size()) {
            h = {h.x + polyline[i + 1].x - polyline[i].x, h.z + polyline[i + 1].z - polyline[i].z};
        }
        if (std::hypot(h.x, h.z) == 0.0) h = overall;
        const double len = std::hypot(h.x, h.z);
        if (len == 0.0) throw Error(ErrorKind::DegenerateSegment, "channel has no horizontal extent");
        return Vec2{h.x / len, h.z / len};
    };

    MeshBuilder b(MaterialId::Water);
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < polyline.size(); ++i) {
        const Vec2 f = heading(i);
        const Vec3 right{-f.z, 0.0, f.x};
        const Vec3& p = polyline[i];
        // Tangent including slope so the normal tilts with the ribbon.
        const std::size_t a = i > 0 ? i - 1 : i;
        const std::size_t c = i + 1 < polyline.size() ? i + 1 : i;
        const Vec3 t{polyline[c].x - polyline[a].x, polyline[c].y - polyline[a].y, polyline[c].z - polyline[a].z};
        const Vec3 n{right.y * t.z - right.z * t.y, right.z * t.x - right.x * t.z, right.x * t.y - right.y * t.x};
        b.vertex({p.x - half * right.x, p.y, p.z - half * right.z}, n);
        b.vertex({p.x + half * right.x, p.y, p.z + half * right.z}, n);
    }
    for (std::uint32_t i = 0; i + 1 < polyline.size(); ++i) {
        const std::uint32_t l0 = 2 * i;
        const std::uint32_t r0 = 2 * i + 1;
        const std::uint32_t l1 = 2 * i + 2;
        const std::uint32_t r1 = 2 * i + 3;
        b.triangle(l0, r0, l1);
        b.triangle(r0, r1, l1);
    }
    return b.take();
}

Scene assemble_scene(std::vector<BuiltIsland> islands, std::vector<BuiltTree> trees,
                     std::vector<BuiltChannel> channels, std::vector<Material> palette) {
    Scene scene;
    scene.materials = std::move(palette);
    std::set<std::string> used;
    auto unique_name = [&](std::string name) {
        if (used.insert(name).second) return name;
        for (int k = 2;; ++k) {
            auto candidate = fmt::format("{}#{}", name, k);
            if (used.insert(candidate).second) return candidate;
        }
    };
    auto add_node = [&](std::optional<std::uint32_t> parent, std::string name, Vec3 translation,
                        std::optional<Mesh> mesh) {
        SceneNode node;
        node.name = unique_name(std::move(name));
        node.translation = translation;
        if (mesh) {
            node.mesh = static_cast<std::uint32_t>(scene.meshes.size());
            scene.meshes.push_back(std::move(*mesh));
        }
        const auto index = static_cast<std::uint32_t>(scene.nodes.size());
        scene.nodes.push_back(std::move(node));
        if (parent) scene.nodes[*parent].children.push_back(index);
        return index;
    };

    const auto root = add_node(std::nullopt, "forest", {}, std::nullopt);
    for (std::uint32_t i = 0; i < islands.size(); ++i) {
        auto& island = islands[i];
        const auto island_node =
            add_node(root, island.name, {island.center.x, 0.0, island.center.z}, std::move(island.mesh));
        scene.nodes[island_node].primitive = Primitive::Facets;
        for (auto& tree : trees) {
            if (tree.island != i) continue;
            const Vec3 local{tree.base.x - island.center.x, tree.base.y, tree.base.z - island.center.z};
            const auto tree_node = add_node(island_node, tree.name, local, std::nullopt);
            for (auto& part : tree.parts) {
                const auto part_node = add_node(tree_node, part.name, part.offset, std::move(part.mesh));
                auto& node = scene.nodes[part_node];
                node.primitive = part.primitive;
                node.radius = part.radius;
                node.height = part.height;
                node.segments = part.segments;
            }
        }
        for (auto& channel : channels) {
            if (channel.island != i) continue;
            const auto node = add_node(island_node, channel.name, {}, std::move(channel.mesh));
            scene.nodes[node].primitive = Primitive::Facets;
        }
    }
    return scene;
}

Scene build_scene(const CodeModel& model, const Metrics& metrics, const ForestLayout& layout,
                  const VisualParams& params, std::vector<Material> palette) {
    std::uint32_t max_fan_out = 0;
    for (const auto& m : metrics.classes) max_fan_out = std::max(max_fan_out, m.fan_out);

    std::vector<BuiltIsland> islands;
    for (const auto& island : layout.islands) {
        islands.push_back({"island:" + model.packages[island.package_index].name, island.center,
                           build_island_mesh(island, params.segments)});
    }
    std::vector<BuiltTree> trees;
    for (std::uint32_t c = 0; c < model.classes.size(); ++c) {
        const auto& cls = model.classes[c];
        std::vector<MethodKind> kinds;
        for (const auto& m : cls.decl.methods) kinds.push_back(classify_method(m, cls.decl));
        trees.push_back(build_tree_mesh(cls, layout.trees[c], metrics.classes[c], kinds, max_fan_out, params));
    }
    std::vector<BuiltChannel> channels;
    for (const auto& path : layout.channels) {
        const auto island = model.classes[path.child].package_index;
        const Vec2 center = layout.islands[island].center;
        std::vector<Vec3> local;
        for (const auto& p : path.polyline) local.push_back({p.x - center.x, p.y, p.z - center.z});
        channels.push_back({fmt::format("channel:{}->{}", model.classes[path.parent].decl.name,
                                        model.classes[path.child].decl.name),
                            island, build_channel_mesh(local, params.channel_width)});
    }
    return assemble_scene(std::move(islands), std::move(trees), std::move(channels), std::move(palette));
}

} // namespace codeforest
