#include <codeforest/error.hpp>
#include <codeforest/exporters.hpp>

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <limits>

namespace codeforest {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kFloat = 5126;
constexpr int kUnsignedInt = 5125;
constexpr int kArrayBuffer = 34962;
constexpr int kElementArrayBuffer = 34963;
constexpr int kTriangles = 4;

std::string base64(const std::string& bytes) {
    static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        const std::uint32_t v = (std::uint32_t(std::uint8_t(bytes[i])) << 16) |
                                (std::uint32_t(std::uint8_t(bytes[i + 1])) << 8) | std::uint8_t(bytes[i + 2]);
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += kAlphabet[(v >> 6) & 63];
        out += kAlphabet[v & 63];
    }
    const std::size_t rest = bytes.size() - i;
    if (rest > 0) {
        std::uint32_t v = std::uint32_t(std::uint8_t(bytes[i])) << 16;
        if (rest == 2) v |= std::uint32_t(std::uint8_t(bytes[i + 1])) << 8;
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
        out += '=';
    }
    return out;
}

// Little-endian regardless of the host.
void append_u32(std::string& buffer, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) buffer += static_cast<char>((v >> shift) & 0xFF);
}

class BufferWriter {
public:
    // Appends a tightly packed view and returns the index of its accessor.
    std::size_t floats(const std::vector<float>& data, std::size_t components, bool with_bounds) {
        const std::size_t offset = bytes_.size();
        for (float f : data) append_u32(bytes_, std::bit_cast<std::uint32_t>(f));
        const std::size_t view = add_view(offset, kArrayBuffer);
        Json accessor{{"bufferView", view},
                      {"componentType", kFloat},
                      {"count", checked_count(data.size() / components)},
                      {"type", components == 3 ? "VEC3" : "SCALAR"}};
        if (with_bounds && !data.empty()) {
            std::array<float, 3> lo{}, hi{};
            for (std::size_t c = 0; c < 3; ++c) {
                lo[c] = hi[c] = data[c];
            }
            for (std::size_t i = 0; i < data.size(); ++i) {
                lo[i % 3] = std::min(lo[i % 3], data[i]);
                hi[i % 3] = std::max(hi[i % 3], data[i]);
            }
            accessor["min"] = Json::array({lo[0], lo[1], lo[2]});
            accessor["max"] = Json::array({hi[0], hi[1], hi[2]});
        }
        accessors_.push_back(std::move(accessor));
        return accessors_.size() - 1;
    }

    std::size_t indices(const std::vector<std::uint32_t>& data) {
        const std::size_t offset = bytes_.size();
        for (std::uint32_t v : data) append_u32(bytes_, v);
        const std::size_t view = add_view(offset, kElementArrayBuffer);
        accessors_.push_back(Json{{"bufferView", view},
                                  {"componentType", kUnsignedInt},
                                  {"count", checked_count(data.size())},
                                  {"type", "SCALAR"}});
        return accessors_.size() - 1;
    }

    Json accessors() const { return accessors_; }
    Json views() const { return views_; }
    const std::string& bytes() const { return bytes_; }

private:
    static std::size_t checked_count(std::size_t count) {
        if (count > std::numeric_limits<std::uint32_t>::max()) {
            throw Error(ErrorKind::SceneTooLarge, "accessor count exceeds 2^32 - 1");
        }
        return count;
    }

    std::size_t add_view(std::size_t offset, int target) {
        views_.push_back(Json{{"buffer", 0},
                              {"byteOffset", offset},
                              {"byteLength", bytes_.size() - offset},
                              {"target", target}});
        return views_.size() - 1;
    }

    std::string bytes_;
    Json accessors_ = Json::array();
    Json views_ = Json::array();
};

bool is_zero(const Vec3& v) { return v.x == 0.0 && v.y == 0.0 && v.z == 0.0; }

} // namespace

ExportArtifact export_gltf(const Scene& scene) {
    Json doc;
    doc["asset"] = Json{{"version", "2.0"}, {"generator", "codeforest"}};
    doc["scene"] = 0;
    doc["scenes"] = Json::array({Json{{"nodes", Json::array({0})}}});

    Json nodes = Json::array();
    for (const auto& node : scene.nodes) {
        Json n{{"name", node.name}};
        if (node.mesh) n["mesh"] = *node.mesh;
        if (!is_zero(node.translation)) {
            n["translation"] = Json::array({node.translation.x, node.translation.y, node.translation.z});
        }
        if (node.scale != 1.0) n["scale"] = Json::array({node.scale, node.scale, node.scale});
        if (!node.children.empty()) n["children"] = node.children;
        nodes.push_back(std::move(n));
    }
    if (nodes.empty()) nodes.push_back(Json{{"name", "forest"}});
    doc["nodes"] = std::move(nodes);

    if (!scene.meshes.empty()) {
        // Mesh names follow the first node that references them.
        std::vector<std::string> mesh_names(scene.meshes.size());
        for (const auto& node : scene.nodes) {
            if (node.mesh && mesh_names[*node.mesh].empty()) mesh_names[*node.mesh] = node.name;
        }
        BufferWriter buffer;
        Json meshes = Json::array();
        for (std::size_t m = 0; m < scene.meshes.size(); ++m) {
            const Mesh& mesh = scene.meshes[m];
            const auto position = buffer.floats(mesh.positions, 3, true);
            const auto normal = buffer.floats(mesh.normals, 3, false);
            const auto index = buffer.indices(mesh.indices);
            Json primitive{{"attributes", Json{{"POSITION", position}, {"NORMAL", normal}}},
                           {"indices", index},
                           {"material", mesh.material},
                           {"mode", kTriangles}};
            meshes.push_back(Json{{"name", mesh_names[m]}, {"primitives", Json::array({std::move(primitive)})}});
        }
        Json materials = Json::array();
        for (const auto& material : scene.materials) {
            const auto& c = material.base_color;
            Json mat{{"name", material.name},
                     {"pbrMetallicRoughness",
                      Json{{"baseColorFactor", Json::array({c[0], c[1], c[2], c[3]})},
                           {"metallicFactor", 0.0},
                           {"roughnessFactor", 1.0}}}};
            if (c[3] < 1.0) mat["alphaMode"] = "BLEND";
            materials.push_back(std::move(mat));
        }
        doc["meshes"] = std::move(meshes);
        doc["materials"] = std::move(materials);
        doc["accessors"] = buffer.accessors();
        doc["bufferViews"] = buffer.views();
        doc["buffers"] = Json::array({Json{{"byteLength", buffer.bytes().size()},
                                           {"uri", "data:application/octet-stream;base64," +
                                                       base64(buffer.bytes())}}});
    }
    return {ArtifactKind::Gltf, doc.dump(1) + "\n"};
}

} // namespace codeforest
