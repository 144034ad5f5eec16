#include "../support/checks.hpp"
#include "../support/fixtures.hpp"

#include <codeforest/exporters.hpp>

#include <doctest.h>
#include <json.hpp>

using namespace codeforest;

namespace {

Scene scene_of(const std::string& fixture) {
    const auto model = analyze(parse_corpus(testfx::fixture(fixture)));
    const auto metrics = compute_metrics(model);
    return build_scene(model, metrics, layout_forest(model, {}), {});
}

Scene empty_scene() { return assemble_scene({}, {}, {}); }

Scene one_triangle() {
    Scene s = empty_scene();
    Mesh m;
    m.positions = {0, 0, 0, 1, 0, 0, 0, 0, 1};
    m.normals = {0, 1, 0, 0, 1, 0, 0, 1, 0};
    m.indices = {0, 2, 1};
    s.meshes.push_back(m);
    SceneNode n;
    n.name = "tri";
    n.mesh = 0;
    n.translation = {1, 2, 3};
    n.primitive = Primitive::Facets;
    s.nodes.push_back(n);
    s.nodes[0].children.push_back(1);
    return s;
}

std::size_t mesh_nodes(const Scene& s) {
    std::size_t n = 0;
    for (const auto& node : s.nodes) n += node.mesh ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("fixed formatting") {
    CHECK(format_fixed(1.0, 4) == "1.0000");
    CHECK(format_fixed(-0.0, 6) == "0.000000");
    CHECK(format_fixed(-0.0000001, 6) == "0.000000");
    CHECK(format_fixed(-1.5, 2) == "-1.50");
    CHECK(format_fixed(1.0 / 3.0, 4) == "0.3333");
}

TEST_CASE("empty scene glTF") {
    const auto g = export_gltf(empty_scene());
    const auto summary = checks::check_gltf(g.bytes);
    CHECK(summary.violations.empty());
    CHECK(summary.scenes == 1);
    CHECK(summary.node_names == std::vector<std::string>{"forest"});
    CHECK(summary.meshes == 0);
}

TEST_CASE("Figure 2 glTF") {
    const auto scene = scene_of("figure2");
    const auto g = export_gltf(scene);
    const auto summary = checks::check_gltf(g.bytes);
    CHECK(summary.violations.empty());
    CHECK(summary.node_names.size() == 14);
    CHECK(summary.mesh_nodes == 11);
    const auto doc = nlohmann::ordered_json::parse(g.bytes);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"asset", "scene", "scenes", "nodes", "meshes", "materials", "accessors",
                                           "bufferViews", "buffers"});
    CHECK(doc["materials"][1]["alphaMode"] == "BLEND");
}

TEST_CASE("single triangle OBJ") {
    const auto [obj, mtl] = export_obj(one_triangle(), "x.mtl");
    const auto summary = checks::read_obj(obj.bytes);
    CHECK(summary.vertices == 3);
    CHECK(summary.faces == 1);
    CHECK(obj.bytes.find("\nf 1 3 2\n") != std::string::npos);
    CHECK(obj.bytes.find("\nv 1.000000 2.000000 3.000000\n") != std::string::npos);
    CHECK(obj.bytes.find("mtllib x.mtl\n") != std::string::npos);
    CHECK(mtl.bytes.find("newmtl trunk\nKd 0.450000 0.290000 0.160000\nd 1.000000\n") != std::string::npos);
}

TEST_CASE("Figure 2 OBJ") {
    const auto scene = scene_of("figure2");
    const auto [obj, mtl] = export_obj(scene);
    const auto summary = checks::read_obj(obj.bytes);
    CHECK(summary.violations.empty());
    CHECK(summary.objects.size() == mesh_nodes(scene));
    std::size_t vertices = 0, triangles = 0;
    for (const auto& m : scene.meshes) {
        vertices += m.vertex_count();
        triangles += m.triangle_count();
    }
    CHECK(summary.vertices == vertices);
    CHECK(summary.faces == triangles);
}

TEST_CASE("MEL") {
    CHECK(export_mel(empty_scene()).bytes == "select -cl;\n");
    const auto scene = scene_of("figure2");
    const auto mel = export_mel(scene).bytes;
    CHECK(checks::mel_command_count(mel, "polyCylinder") == 2);
    CHECK(checks::mel_command_count(mel, "polySphere") == 7);
    CHECK(checks::mel_command_count(mel, "polyUnite") == 2);
    std::vector<std::string> expected;
    for (const auto& node : scene.nodes) {
        if (node.mesh) expected.push_back(mel_name(node.name));
    }
    CHECK(checks::mel_renames(mel) == expected);
    CHECK(mel_name("leaf:.Useraaa.getEmail") == "leaf__Useraaa_getEmail");
    CHECK(mel.ends_with("select -cl;\n"));
}

TEST_CASE("report") {
    const auto model = analyze(parse_corpus(testfx::fixture("figure2")));
    const auto report = export_report(model, compute_metrics(model)).bytes;
    const auto doc = nlohmann::ordered_json::parse(report);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"corpus", "totals", "packages", "classes", "inheritance_edges",
                                           "call_edges", "unresolved_supers"});
    CHECK(doc["totals"]["classes"] == 2);
    CHECK(doc["totals"]["methods"] == 5);
    CHECK(doc["totals"]["inheritance_edges"] == 1);
    CHECK(report.find("\"cohesion\": 0.3333") != std::string::npos);

    const auto empty = analyze(ParsedCorpus{});
    const auto e = nlohmann::json::parse(export_report(empty, compute_metrics(empty)).bytes);
    for (const auto& [k, v] : e["totals"].items()) CHECK(v == 0);
}
