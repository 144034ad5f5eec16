#pragma once

#include <codeforest/source_parser.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace codeforest {

enum class MethodKind : std::uint8_t { Accessor, Mutator, Constructor, Other };

inline constexpr std::size_t kMethodKindCount = 4;

std::string_view to_string(MethodKind kind);

struct MethodId {
    std::uint32_t class_index = 0;
    std::uint32_t method_index = 0;

    friend auto operator<=>(const MethodId&, const MethodId&) = default;
};

struct PackageRecord {
    std::string name;
    std::vector<std::uint32_t> classes; // indices into CodeModel::classes
};

struct ClassRecord {
    ClassDecl decl;
    std::uint32_t package_index = 0;
    std::string file_path;

    // "<pkg>.<Class>", or just the class name in the default package.
    std::string qualified_name() const;
};

struct InheritanceEdge {
    std::uint32_t child = 0;
    std::uint32_t parent = 0;

    friend auto operator<=>(const InheritanceEdge&, const InheritanceEdge&) = default;
};

struct CallEdge {
    MethodId caller;
    MethodId callee;
    std::uint32_t count = 0;
};

struct UnresolvedSuper {
    std::uint32_t class_index = 0;
    std::string super_name;
};

struct CodeModel {
    std::vector<std::string> files; // corpus-relative paths, sorted
    std::vector<PackageRecord> packages;
    std::vector<ClassRecord> classes; // sorted by (package name, class name)
    std::vector<InheritanceEdge> inheritance_edges; // sorted, unique
    std::vector<CallEdge> call_edges;               // sorted by (caller, callee)
    std::vector<UnresolvedSuper> unresolved_supers;

    std::size_t method_count() const;
    const MethodDecl& method(MethodId id) const {
        return classes[id.class_index].decl.methods[id.method_index];
    }
    // parents_of()[c] lists the resolved parents of class c in ascending order.
    std::vector<std::vector<std::uint32_t>> parents_of() const;
};

/// Groups classes by package. Throws Error{DuplicateClassName}.
CodeModel build_model(const ParsedCorpus& corpus);

/// Resolves super/interface names to classes. Throws Error{InheritanceCycle}
/// naming the classes on the cycle.
CodeModel resolve_inheritance(CodeModel model);

/// Static, name-based call resolution: implicit-this calls search the class
/// and then its ancestors (nearest first); `field.m()` calls search the
/// field's declared type when that is a corpus class. Arity is ignored.
CodeModel resolve_calls(CodeModel model);

/// build_model + resolve_inheritance + resolve_calls.
CodeModel analyze(const ParsedCorpus& corpus);

MethodKind classify_method(const MethodDecl& method, const ClassDecl& owner);

/// Fraction of unordered pairs of non-constructor methods that touch at
/// least one common field. 1.0 when there are fewer than two such methods
/// or no fields.
double compute_cohesion(const ClassDecl& cls);

/// Longest resolved-ancestor path length per class (0 for roots).
/// Throws Error{InheritanceCycle} if the edges are cyclic.
std::vector<std::uint32_t> inheritance_depths(const CodeModel& model);

struct ClassMetrics {
    std::uint32_t method_count = 0;
    std::uint32_t loc = 0;
    std::uint32_t depth = 0;
    std::uint32_t fan_out = 0;
    std::uint32_t fan_in = 0;
    double cohesion = 1.0;
    std::array<std::uint32_t, kMethodKindCount> kind_histogram{};
};

struct PackageMetrics {
    std::uint32_t class_count = 0;
    std::uint32_t method_count = 0;
    std::uint32_t loc = 0;
    std::uint32_t inheritance_edge_count = 0; // edges whose child is in the package
};

struct Metrics {
    std::vector<ClassMetrics> classes;   // parallel to CodeModel::classes
    std::vector<PackageMetrics> packages; // parallel to CodeModel::packages
};

Metrics compute_metrics(const CodeModel& model);

} // namespace codeforest
