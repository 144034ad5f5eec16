#include <codeforest/exporters.hpp>

#include <fmt/format.h>

#include <cctype>

namespace codeforest {

namespace {

std::string num(double v) { return format_fixed(v, 6); }

std::string shading_group(const Material& m) { return "cf_" + mel_name(m.name) + "SG"; }

void emit_shaders(std::string& out, const std::vector<Material>& materials) {
    for (const auto& m : materials) {
        const std::string shader = "cf_" + mel_name(m.name);
        const auto& c = m.base_color;
        const std::string t = num(1.0 - c[3]);
        out += fmt::format("shadingNode -asShader lambert -n \"{}\";\n", shader);
        out += fmt::format("sets -renderable true -noSurfaceShader true -empty -n \"{}\";\n", shading_group(m));
        out += fmt::format("connectAttr -f \"{}.outColor\" \"{}.surfaceShader\";\n", shader, shading_group(m));
        out += fmt::format("setAttr \"{}.color\" -type double3 {} {} {};\n", shader, num(c[0]), num(c[1]),
                           num(c[2]));
        out += fmt::format("setAttr \"{}.transparency\" -type double3 {} {} {};\n", shader, t, t, t);
    }
}

// Faceted meshes are rebuilt triangle by triangle in world space and united
// into one object.
void emit_facets(std::string& out, const Mesh& mesh, const WorldTransform& w) {
    out += "clear $cfFacets;\n";
    auto point = [&](std::uint32_t v) {
        return fmt::format(" -p {} {} {}", num(w.translation.x + w.scale * mesh.positions[3 * v]),
                           num(w.translation.y + w.scale * mesh.positions[3 * v + 1]),
                           num(w.translation.z + w.scale * mesh.positions[3 * v + 2]));
    };
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        out += "$cf = `polyCreateFacet -ch 0" + point(mesh.indices[3 * t]) + point(mesh.indices[3 * t + 1]) +
               point(mesh.indices[3 * t + 2]) + "`;\n";
        out += "$cfFacets[size($cfFacets)] = $cf[0];\n";
    }
    out += "$cf = `polyUnite -ch 0 $cfFacets`;\n";
}

} // namespace

std::string mel_name(std::string_view node_name) {
    std::string out(node_name);
    for (char& ch : out) {
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    }
    return out;
}

ExportArtifact export_mel(const Scene& scene) {
    bool any_mesh = false;
    for (const auto& node : scene.nodes) any_mesh = any_mesh || node.mesh.has_value();
    if (!any_mesh) return {ArtifactKind::Mel, "select -cl;\n"};

    std::string out = "// codeforest scene\n";
    out += "string $cf[];\n";
    out += "string $cfFacets[];\n";
    emit_shaders(out, scene.materials);

    const auto world = world_transforms(scene);
    for (std::size_t i = 0; i < scene.nodes.size(); ++i) {
        const SceneNode& node = scene.nodes[i];
        if (!node.mesh) continue;
        const Mesh& mesh = scene.meshes[*node.mesh];
        const WorldTransform& w = world[i];
        const std::string name = mel_name(node.name);
        Vec3 at = w.translation;
        switch (node.primitive) {
        case Primitive::Cylinder:
            out += fmt::format("$cf = `polyCylinder -r {} -h {} -sx {} -sy 1 -sz 1 -ax 0 1 0 -ch 0`;\n",
                               num(w.scale * node.radius), num(w.scale * node.height), node.segments);
            // polyCylinder is centred on its pivot; our base sits at the origin.
            at.y += 0.5 * w.scale * node.height;
            break;
        case Primitive::Sphere:
            out += fmt::format("$cf = `polySphere -r {} -sx {} -sy {} -ax 0 1 0 -ch 0`;\n",
                               num(w.scale * node.radius), node.segments, std::max(3u, node.segments / 2));
            break;
        case Primitive::Facets:
        case Primitive::None:
            emit_facets(out, mesh, w);
            at = {};
            break;
        }
        out += fmt::format("rename $cf[0] \"{}\";\n", name);
        if (node.primitive == Primitive::Cylinder || node.primitive == Primitive::Sphere) {
            out += fmt::format("move -a {} {} {} \"{}\";\n", num(at.x), num(at.y), num(at.z), name);
        }
        out += fmt::format("sets -e -forceElement {} \"{}\";\n", shading_group(scene.materials.at(mesh.material)),
                           name);
    }
    out += "select -cl;\n";
    return {ArtifactKind::Mel, std::move(out)};
}

} // namespace codeforest
