#pragma once

#include <codeforest/code_model.hpp>
#include <codeforest/geometry.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codeforest {

enum class ArtifactKind { Gltf, Obj, Mtl, Mel, Report };

struct ExportArtifact {
    ArtifactKind kind = ArtifactKind::Gltf;
    std::string bytes;
};

/// Fixed-point decimal, locale independent; negative zero prints as zero.
std::string format_fixed(double value, int fractional_digits);

/// World-space translation and uniform scale of every node.
struct WorldTransform {
    Vec3 translation;
    double scale = 1.0;
};
std::vector<WorldTransform> world_transforms(const Scene& scene);

/// Single-file glTF 2.0 with the buffer embedded as a base64 data URI.
/// Top-level keys, in order: asset, scene, scenes, nodes, meshes,
/// materials, accessors, bufferViews, buffers (the last five only when the
/// scene has meshes). Throws Error{SceneTooLarge}.
ExportArtifact export_gltf(const Scene& scene);

/// World-space OBJ plus its MTL. `mtl_file_name` is what `mtllib` names.
std::pair<ExportArtifact, ExportArtifact> export_obj(const Scene& scene,
                                                     std::string_view mtl_file_name = "scene.mtl");

/// Maya object name for a scene node: every non-alphanumeric becomes '_'.
std::string mel_name(std::string_view node_name);

ExportArtifact export_mel(const Scene& scene);

/// Metrics report (JSON). Keys, in order: corpus, totals, packages,
/// classes, inheritance_edges, call_edges, unresolved_supers.
ExportArtifact export_report(const CodeModel& model, const Metrics& metrics);

} // namespace codeforest
