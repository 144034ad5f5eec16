#pragma once

#include <codeforest/code_model.hpp>
#include <codeforest/layout.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codeforest {

enum class MaterialId : std::uint32_t {
    Trunk,
    Canopy,
    Island,
    Water,
    LeafAccessor,
    LeafMutator,
    LeafConstructor,
    LeafOther,
};

inline constexpr std::size_t kMaterialCount = 8;

MaterialId leaf_material(MethodKind kind);

struct Material {
    std::string name;
    std::array<double, 4> base_color{};
};

/// trunk, canopy, island, water, leaf_accessor, leaf_mutator,
/// leaf_constructor, leaf_other (indexable by MaterialId).
std::vector<Material> default_palette();

struct Mesh {
    std::vector<float> positions; // xyz triples
    std::vector<float> normals;   // xyz triples, unit length
    std::vector<std::uint32_t> indices;
    std::uint32_t material = 0;

    std::size_t vertex_count() const { return positions.size() / 3; }
    std::size_t triangle_count() const { return indices.size() / 3; }
};

// Parametric description kept alongside the tessellation so exporters that
// can create primitives natively (MEL) do not have to re-derive them.
enum class Primitive { None, Cylinder, Sphere, Facets };

struct SceneNode {
    std::string name;
    Vec3 translation; // relative to the parent node
    double scale = 1.0;
    std::optional<std::uint32_t> mesh;
    std::vector<std::uint32_t> children;
    Primitive primitive = Primitive::None;
    double radius = 0.0; // cylinder/sphere
    double height = 0.0; // cylinder; its base sits at the node origin
    std::uint32_t segments = 0; // cylinder/sphere tessellation
};

struct Scene {
    std::vector<SceneNode> nodes; // nodes[0] is the "forest" root
    std::vector<Mesh> meshes;
    std::vector<Material> materials;
};

struct VisualParams {
    double h0 = 1.0;
    double h1 = 0.4;
    double r0 = 0.15;
    double c = 1.0;
    double canopy_coefficient = 0.5;
    double min_canopy_radius = 0.4;
    double leaf_radius = 0.12;
    double channel_width = 0.3;
    std::uint32_t segments = 12;
};

struct TreeShape {
    double trunk_height = 0.0;
    double trunk_radius = 0.0;
    double canopy_radius = 0.0;
    double leaf_radius = 0.0;
};

/// `max_fan_out` is the corpus maximum; 0 disables the thickness term.
TreeShape tree_shape(const ClassMetrics& metrics, std::uint32_t max_fan_out, const VisualParams& params);

Mesh build_cylinder_mesh(double radius, double height, std::uint32_t segments, MaterialId material);
Mesh build_sphere_mesh(double radius, std::uint32_t segments, MaterialId material);

/// Terraced island in island-local coordinates. Vertex count is
/// segments * (4 * tiers - 1) + 1. Requires segments >= 8.
Mesh build_island_mesh(const IslandLayout& island, std::uint32_t segments);

struct TreePart {
    std::string name;
    Mesh mesh;
    Vec3 offset; // relative to the tree base
    Primitive primitive = Primitive::None;
    double radius = 0.0;
    double height = 0.0;
    std::uint32_t segments = 0;
};

struct BuiltTree {
    std::string name; // tree:<pkg>.<Class>
    std::uint32_t island = 0;
    Vec3 base; // world position of the trunk base
    std::vector<TreePart> parts; // trunk, canopy, then one leaf per method
};

/// Leaves are placed on the canopy by golden-angle spherical stepping in
/// declaration order and coloured by method kind.
BuiltTree build_tree_mesh(const ClassRecord& cls, const TreePlacement& placement, const ClassMetrics& metrics,
                          std::span<const MethodKind> kinds, std::uint32_t max_fan_out,
                          const VisualParams& params);

/// Flat ribbon centred on the polyline, two triangles per segment.
/// Throws Error{DegenerateSegment} when consecutive points coincide.
Mesh build_channel_mesh(std::span<const Vec3> polyline, double width);

struct BuiltIsland {
    std::string name; // island:<pkg>
    Vec2 center;
    Mesh mesh;
};

struct BuiltChannel {
    std::string name; // channel:<Parent>-><Child>
    std::uint32_t island = 0;
    Mesh mesh; // coordinates local to that island
};

Scene assemble_scene(std::vector<BuiltIsland> islands, std::vector<BuiltTree> trees,
                     std::vector<BuiltChannel> channels, std::vector<Material> palette = default_palette());

/// Builds every mesh for a laid-out model and assembles the scene.
Scene build_scene(const CodeModel& model, const Metrics& metrics, const ForestLayout& layout,
                  const VisualParams& params, std::vector<Material> palette = default_palette());

} // namespace codeforest
