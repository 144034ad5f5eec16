#include "../support/fixtures.hpp"

#include <codeforest/error.hpp>
#include <codeforest/geometry.hpp>

#include <doctest.h>

#include <cmath>
#include <map>

using namespace codeforest;

namespace {

struct Pipeline {
    CodeModel model;
    Metrics metrics;
    ForestLayout layout;
    Scene scene;
};

Pipeline run(const std::string& fixture) {
    Pipeline p;
    p.model = analyze(parse_corpus(testfx::fixture(fixture)));
    p.metrics = compute_metrics(p.model);
    p.layout = layout_forest(p.model, {});
    p.scene = build_scene(p.model, p.metrics, p.layout, {});
    return p;
}

std::size_t count_prefix(const Scene& s, std::string_view prefix) {
    std::size_t n = 0;
    for (const auto& node : s.nodes) n += node.name.starts_with(prefix) ? 1 : 0;
    return n;
}

Vec3 vertex(const Mesh& m, std::size_t i) {
    return {m.positions[3 * i], m.positions[3 * i + 1], m.positions[3 * i + 2]};
}

// Every triangle's geometric normal should agree with its vertex normals.
void check_winding(const Mesh& m) {
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
        const auto a = vertex(m, m.indices[3 * t]);
        const auto b = vertex(m, m.indices[3 * t + 1]);
        const auto c = vertex(m, m.indices[3 * t + 2]);
        const Vec3 u{b.x - a.x, b.y - a.y, b.z - a.z};
        const Vec3 v{c.x - a.x, c.y - a.y, c.z - a.z};
        const Vec3 n{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
        double dot = 0.0;
        for (int k = 0; k < 3; ++k) {
            const std::size_t i = m.indices[3 * t + k];
            dot += n.x * m.normals[3 * i] + n.y * m.normals[3 * i + 1] + n.z * m.normals[3 * i + 2];
        }
        CHECK(dot > 0.0);
    }
}

} // namespace

TEST_CASE("one-tier island with eight segments") {
    IslandLayout island;
    island.radius = 4.0;
    island.wall_run = 0.5;
    island.tier_heights = {0.0};
    island.tier_radii = {3.5};
    const auto mesh = build_island_mesh(island, 8);
    CHECK(mesh.vertex_count() == 25);
    check_winding(mesh);
}

TEST_CASE("two-tier island heights") {
    IslandLayout island;
    island.radius = 6.0;
    island.wall_run = 0.5;
    island.tier_heights = {1.0, 0.0};
    island.tier_radii = {3.0, 5.5};
    const auto mesh = build_island_mesh(island, 12);
    CHECK(mesh.vertex_count() == 12 * 7 + 1);
    CHECK(mesh.positions[1] == 1.0f); // summit centre
    float lowest = 1e9f, widest = 0.0f;
    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
        lowest = std::min(lowest, mesh.positions[3 * i + 1]);
        widest = std::max(widest, std::hypot(mesh.positions[3 * i], mesh.positions[3 * i + 2]));
    }
    CHECK(lowest == 0.0f);
    CHECK(widest == doctest::Approx(6.0).epsilon(1e-6));
    check_winding(mesh);
}

TEST_CASE("no island for a package without classes") {
    const auto p = run("empty");
    CHECK(p.scene.nodes.size() == 1);
    CHECK(p.scene.nodes[0].name == "forest");
    CHECK(p.scene.nodes[0].children.empty());
    CHECK(p.scene.meshes.empty());
}

TEST_CASE("primitive meshes are closed and face outwards") {
    const auto cyl = build_cylinder_mesh(0.5, 2.0, 12, MaterialId::Trunk);
    CHECK(cyl.vertex_count() == 4 * 12 + 2);
    CHECK(cyl.triangle_count() == 4 * 12);
    check_winding(cyl);
    const auto sphere = build_sphere_mesh(1.0, 12, MaterialId::Canopy);
    CHECK(sphere.vertex_count() == 7 * 13);
    CHECK(sphere.triangle_count() == 2 * 12 * 6 - 2 * 12);
    check_winding(sphere);
    for (std::size_t i = 0; i < sphere.vertex_count(); ++i) {
        const auto v = vertex(sphere, i);
        CHECK(std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("leaves follow method kinds") {
    const auto p = run("figure2");
    const auto& s = p.scene;
    std::map<std::string, std::uint32_t> materials;
    for (const auto& node : s.nodes) {
        if (node.name.starts_with("leaf:")) materials[node.name] = s.meshes[*node.mesh].material;
    }
    CHECK(materials.size() == 5);
    CHECK(materials["leaf:.Useraaa.getEmail"] == static_cast<std::uint32_t>(MaterialId::LeafAccessor));
    CHECK(materials["leaf:.Useraaa.setEmail"] == static_cast<std::uint32_t>(MaterialId::LeafMutator));
    CHECK(materials["leaf:.Useraaa.notify"] == static_cast<std::uint32_t>(MaterialId::LeafOther));
    CHECK(materials["leaf:.Ownerbbb.getMaxNumLeagues"] == static_cast<std::uint32_t>(MaterialId::LeafAccessor));
    CHECK(materials["leaf:.Ownerbbb.setMaxNumLeagues"] == static_cast<std::uint32_t>(MaterialId::LeafMutator));
}

TEST_CASE("class without methods has trunk and canopy only") {
    const auto model = analyze(parse_sources({{"A.java", "class A { }"}}));
    const auto metrics = compute_metrics(model);
    const auto layout = layout_forest(model, {});
    const auto tree = build_tree_mesh(model.classes[0], layout.trees[0], metrics.classes[0], {}, 0, {});
    REQUIRE(tree.parts.size() == 2);
    CHECK(tree.parts[0].name == "trunk:.A");
    CHECK(tree.parts[1].name == "canopy:.A");
}

TEST_CASE("tree shape mapping") {
    ClassMetrics m;
    m.loc = 0;
    m.method_count = 0;
    const VisualParams params;
    auto s = tree_shape(m, 0, params);
    CHECK(s.trunk_height == params.h0);
    CHECK(s.trunk_radius == params.r0);
    CHECK(s.canopy_radius == params.min_canopy_radius);
    m.loc = 99;
    m.method_count = 16;
    m.fan_out = 3;
    s = tree_shape(m, 6, params);
    CHECK(s.trunk_height == doctest::Approx(params.h0 + params.h1 * std::log(100.0)));
    CHECK(s.trunk_radius == doctest::Approx(params.r0 * 1.5));
    CHECK(s.canopy_radius == doctest::Approx(2.0));
}

TEST_CASE("channel ribbons") {
    const std::vector<Vec3> two = {{0, 1, 0}, {2, 0, 0}};
    const auto m2 = build_channel_mesh(two, 0.3);
    CHECK(m2.vertex_count() == 4);
    CHECK(m2.triangle_count() == 2);
    const std::vector<Vec3> four = {{0, 2, 0}, {1, 2, 0}, {1.2, 1, 0}, {3, 1, 1}};
    const auto m4 = build_channel_mesh(four, 0.3);
    CHECK(m4.triangle_count() == 6);
    check_winding(m4);
    const std::vector<Vec3> same = {{1, 1, 1}, {1, 1, 1}};
    try {
        build_channel_mesh(same, 0.3);
        FAIL("expected DegenerateSegment");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSegment);
    }
}

TEST_CASE("Figure 2 scene") {
    const auto p = run("figure2");
    const auto& s = p.scene;
    CHECK(count_prefix(s, "island:") == 1);
    CHECK(count_prefix(s, "tree:") == 2);
    CHECK(count_prefix(s, "leaf:") == 5);
    CHECK(count_prefix(s, "channel:") == 1);
    CHECK(count_prefix(s, "trunk:") == 2);
    CHECK(count_prefix(s, "canopy:") == 2);
    CHECK(s.nodes.size() == 14);
    std::size_t with_mesh = 0;
    for (const auto& n : s.nodes) with_mesh += n.mesh ? 1 : 0;
    CHECK(with_mesh == 11);
    CHECK(s.meshes.size() == 11);
}

TEST_CASE("overloads get distinct leaf names") {
    const auto model = analyze(parse_sources({{"A.java", "class A { void f() { } void f(int x) { } void f(int x, int y) { } }"}}));
    const auto scene = build_scene(model, compute_metrics(model), layout_forest(model, {}), {});
    CHECK(count_prefix(scene, "leaf:.A.f") == 3);
    CHECK(count_prefix(scene, "leaf:.A.f#2") == 1);
    CHECK(count_prefix(scene, "leaf:.A.f#3") == 1);
}
