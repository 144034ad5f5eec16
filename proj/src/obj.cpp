#include <codeforest/exporters.hpp>

#include <charconv>
#include <functional>

namespace codeforest {

std::string format_fixed(double value, int fractional_digits) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, fractional_digits);
    std::string out(buf, result.ptr);
    if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::vector<WorldTransform> world_transforms(const Scene& scene) {
    std::vector<WorldTransform> out(scene.nodes.size());
    std::function<void(std::uint32_t, const WorldTransform&)> visit = [&](std::uint32_t i,
                                                                          const WorldTransform& parent) {
        const SceneNode& node = scene.nodes[i];
        WorldTransform& w = out[i];
        w.translation = {parent.translation.x + parent.scale * node.translation.x,
                         parent.translation.y + parent.scale * node.translation.y,
                         parent.translation.z + parent.scale * node.translation.z};
        w.scale = parent.scale * node.scale;
        for (std::uint32_t child : node.children) visit(child, w);
    };
    if (!scene.nodes.empty()) visit(0, WorldTransform{});
    return out;
}

std::pair<ExportArtifact, ExportArtifact> export_obj(const Scene& scene, std::string_view mtl_file_name) {
    std::string obj = "# codeforest\n";
    obj += "mtllib ";
    obj += mtl_file_name;
    obj += '\n';

    const auto world = world_transforms(scene);
    std::size_t base = 1;
    for (std::size_t i = 0; i < scene.nodes.size(); ++i) {
        const SceneNode& node = scene.nodes[i];
        if (!node.mesh) continue;
        const Mesh& mesh = scene.meshes[*node.mesh];
        const WorldTransform& w = world[i];
        obj += "o " + node.name + "\n";
        obj += "usemtl " + scene.materials.at(mesh.material).name + "\n";
        for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
            obj += "v ";
            obj += format_fixed(w.translation.x + w.scale * mesh.positions[3 * v], 6) + " ";
            obj += format_fixed(w.translation.y + w.scale * mesh.positions[3 * v + 1], 6) + " ";
            obj += format_fixed(w.translation.z + w.scale * mesh.positions[3 * v + 2], 6) + "\n";
        }
        for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
            obj += "f " + std::to_string(base + mesh.indices[3 * t]) + " " +
                   std::to_string(base + mesh.indices[3 * t + 1]) + " " +
                   std::to_string(base + mesh.indices[3 * t + 2]) + "\n";
        }
        base += mesh.vertex_count();
    }

    std::string mtl = "# codeforest\n";
    for (const auto& m : scene.materials) {
        mtl += "newmtl " + m.name + "\n";
        mtl += "Kd " + format_fixed(m.base_color[0], 6) + " " + format_fixed(m.base_color[1], 6) + " " +
               format_fixed(m.base_color[2], 6) + "\n";
        mtl += "d " + format_fixed(m.base_color[3], 6) + "\n";
    }
    return {ExportArtifact{ArtifactKind::Obj, std::move(obj)}, ExportArtifact{ArtifactKind::Mtl, std::move(mtl)}};
}

} // namespace codeforest
