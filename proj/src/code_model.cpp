#include <codeforest/code_model.hpp>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace codeforest {

namespace {

// Type text minus type arguments and array brackets: "List<Foo>[]" -> "List".
std::string bare_type_name(std::string_view text) {
    const auto cut = text.find_first_of("<[");
    text = text.substr(0, cut);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    return std::string(text);
}

// Resolution order: same package, then package-qualified spelling, then a
// unique class name across the corpus.
std::optional<std::uint32_t> resolve_type(const CodeModel& model, std::uint32_t from,
                                          const std::string& written) {
    if (written.empty()) return std::nullopt;
    const auto& pkg = model.classes[from].decl.package_name;
    std::optional<std::uint32_t> unique;
    bool ambiguous = false;
    for (std::uint32_t i = 0; i < model.classes.size(); ++i) {
        const auto& decl = model.classes[i].decl;
        if (decl.package_name == pkg && decl.name == written) return i;
    }
    for (std::uint32_t i = 0; i < model.classes.size(); ++i) {
        if (model.classes[i].qualified_name() == written) return i;
    }
    for (std::uint32_t i = 0; i < model.classes.size(); ++i) {
        if (model.classes[i].decl.name != written) continue;
        if (unique) ambiguous = true;
        unique = i;
    }
    if (ambiguous) return std::nullopt;
    return unique;
}

[[noreturn]] void throw_cycle(const CodeModel& model, const std::vector<std::vector<std::uint32_t>>& parents,
                              const std::vector<bool>& unresolved) {
    // Every node left over by Kahn's algorithm lies on or leads to a cycle;
    // following parents from any of them must revisit a node.
    std::uint32_t start = 0;
    while (!unresolved[start]) ++start;
    std::vector<int> seen_at(model.classes.size(), -1);
    std::vector<std::uint32_t> walk;
    std::uint32_t cur = start;
    while (seen_at[cur] < 0) {
        seen_at[cur] = static_cast<int>(walk.size());
        walk.push_back(cur);
        for (std::uint32_t p : parents[cur]) {
            if (unresolved[p]) {
                cur = p;
                break;
            }
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = static_cast<std::size_t>(seen_at[cur]); i < walk.size(); ++i) {
        names.push_back(model.classes[walk[i]].qualified_name());
    }
    names.push_back(model.classes[cur].qualified_name());
    throw Error(ErrorKind::InheritanceCycle, fmt::format("inheritance cycle: {}", fmt::join(names, " -> ")));
}

bool starts_with_word(std::string_view name, std::string_view prefix) {
    return name.size() >= prefix.size() && name.substr(0, prefix.size()) == prefix;
}

} // namespace

std::string_view to_string(MethodKind kind) {
    switch (kind) {
    case MethodKind::Accessor: return "accessor";
    case MethodKind::Mutator: return "mutator";
    case MethodKind::Constructor: return "constructor";
    case MethodKind::Other: return "other";
    }
    return "other";
}

std::string ClassRecord::qualified_name() const {
    return decl.package_name.empty() ? decl.name : decl.package_name + "." + decl.name;
}

std::size_t CodeModel::method_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.decl.methods.size();
    return n;
}

std::vector<std::vector<std::uint32_t>> CodeModel::parents_of() const {
    std::vector<std::vector<std::uint32_t>> parents(classes.size());
    for (const auto& e : inheritance_edges) parents[e.child].push_back(e.parent);
    for (auto& p : parents) std::sort(p.begin(), p.end());
    return parents;
}

CodeModel build_model(const ParsedCorpus& corpus) {
    CodeModel model;
    for (const auto& file : corpus.files) {
        model.files.push_back(file.path);
        for (const auto& decl : file.classes) {
            ClassRecord rec;
            rec.decl = decl;
            rec.file_path = file.path;
            model.classes.push_back(std::move(rec));
        }
    }
    std::sort(model.files.begin(), model.files.end());
    std::stable_sort(model.classes.begin(), model.classes.end(), [](const ClassRecord& a, const ClassRecord& b) {
        return std::tie(a.decl.package_name, a.decl.name) < std::tie(b.decl.package_name, b.decl.name);
    });
    for (std::size_t i = 1; i < model.classes.size(); ++i) {
        const auto& a = model.classes[i - 1].decl;
        const auto& b = model.classes[i].decl;
        if (a.package_name == b.package_name && a.name == b.name) {
            throw Error(ErrorKind::DuplicateClassName,
                        fmt::format("duplicate class '{}' in package '{}'", b.name, b.package_name));
        }
    }
    for (std::uint32_t i = 0; i < model.classes.size(); ++i) {
        auto& rec = model.classes[i];
        if (model.packages.empty() || model.packages.back().name != rec.decl.package_name) {
            model.packages.push_back({rec.decl.package_name, {}});
        }
        rec.package_index = static_cast<std::uint32_t>(model.packages.size() - 1);
        model.packages.back().classes.push_back(i);
    }
    return model;
}

CodeModel resolve_inheritance(CodeModel model) {
    model.inheritance_edges.clear();
    model.unresolved_supers.clear();
    for (std::uint32_t i = 0; i < model.classes.size(); ++i) {
        const auto& decl = model.classes[i].decl;
        std::vector<std::string> written;
        if (decl.super_name) written.push_back(*decl.super_name);
        written.insert(written.end(), decl.interface_names.begin(), decl.interface_names.end());
        for (const auto& name : written) {
            if (auto parent = resolve_type(model, i, name)) {
                model.inheritance_edges.push_back({i, *parent});
            } else {
                model.unresolved_supers.push_back({i, name});
            }
        }
    }
    std::sort(model.inheritance_edges.begin(), model.inheritance_edges.end());
    model.inheritance_edges.erase(std::unique(model.inheritance_edges.begin(), model.inheritance_edges.end()),
                                  model.inheritance_edges.end());
    inheritance_depths(model); // cycle check
    return model;
}

std::vector<std::uint32_t> inheritance_depths(const CodeModel& model) {
    const std::size_t n = model.classes.size();
    const auto parents = model.parents_of();
    std::vector<std::vector<std::uint32_t>> children(n);
    std::vector<std::uint32_t> pending(n, 0);
    for (const auto& e : model.inheritance_edges) {
        children[e.parent].push_back(e.child);
        ++pending[e.child];
    }
    std::vector<std::uint32_t> depth(n, 0);
    std::deque<std::uint32_t> ready;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (pending[i] == 0) ready.push_back(i);
    }
    std::size_t done = 0;
    while (!ready.empty()) {
        const std::uint32_t c = ready.front();
        ready.pop_front();
        ++done;
        for (std::uint32_t child : children[c]) {
            depth[child] = std::max(depth[child], depth[c] + 1);
            if (--pending[child] == 0) ready.push_back(child);
        }
    }
    if (done != n) {
        std::vector<bool> left(n);
        for (std::size_t i = 0; i < n; ++i) left[i] = pending[i] > 0;
        throw_cycle(model, parents, left);
    }
    return depth;
}

namespace {

std::optional<MethodId> lookup_method(const CodeModel& model, const std::vector<std::vector<std::uint32_t>>& parents,
                                      std::uint32_t start, const std::string& name) {
    // Breadth-first over ancestors so the nearest definition wins; ties at
    // equal distance go to the lower class index.
    std::vector<std::uint32_t> level{start};
    std::vector<bool> visited(model.classes.size(), false);
    visited[start] = true;
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        for (std::uint32_t c : level) {
            const auto& methods = model.classes[c].decl.methods;
            for (std::uint32_t m = 0; m < methods.size(); ++m) {
                if (methods[m].name == name) return MethodId{c, m};
            }
        }
        std::vector<std::uint32_t> next;
        for (std::uint32_t c : level) {
            for (std::uint32_t p : parents[c]) {
                if (!visited[p]) {
                    visited[p] = true;
                    next.push_back(p);
                }
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

} // namespace

CodeModel resolve_calls(CodeModel model) {
    const auto parents = model.parents_of();
    std::map<std::pair<MethodId, MethodId>, std::uint32_t> counts;
    for (std::uint32_t c = 0; c < model.classes.size(); ++c) {
        const auto& decl = model.classes[c].decl;
        for (std::uint32_t m = 0; m < decl.methods.size(); ++m) {
            for (const auto& site : decl.methods[m].call_sites) {
                std::optional<MethodId> target;
                if (site.receiver == ReceiverKind::ImplicitThis) {
                    target = lookup_method(model, parents, c, site.callee_name);
                } else if (site.receiver == ReceiverKind::Named) {
                    auto field = std::find_if(decl.fields.begin(), decl.fields.end(),
                                              [&](const FieldDecl& f) { return f.name == site.receiver_name; });
                    if (field == decl.fields.end()) continue;
                    auto type = resolve_type(model, c, bare_type_name(field->declared_type));
                    if (!type) continue;
                    target = lookup_method(model, parents, *type, site.callee_name);
                }
                if (target) ++counts[{MethodId{c, m}, *target}];
            }
        }
    }
    model.call_edges.clear();
    for (const auto& [pair, count] : counts) {
        model.call_edges.push_back({pair.first, pair.second, count});
    }
    return model;
}

CodeModel analyze(const ParsedCorpus& corpus) {
    return resolve_calls(resolve_inheritance(build_model(corpus)));
}

MethodKind classify_method(const MethodDecl& method, const ClassDecl& owner) {
    if (method.name == owner.simple_name()) return MethodKind::Constructor;
    const std::string_view name = method.name;
    if ((starts_with_word(name, "get") || starts_with_word(name, "is")) && method.param_count == 0 &&
        method.return_type != "void" && method.writes_fields.empty()) {
        return MethodKind::Accessor;
    }
    if (starts_with_word(name, "set") && method.param_count >= 1 && !method.writes_fields.empty()) {
        return MethodKind::Mutator;
    }
    return MethodKind::Other;
}

double compute_cohesion(const ClassDecl& cls) {
    if (cls.fields.empty()) return 1.0;
    std::vector<std::set<std::string>> touched;
    for (const auto& m : cls.methods) {
        if (classify_method(m, cls) == MethodKind::Constructor) continue;
        auto fields = m.reads_fields;
        fields.insert(m.writes_fields.begin(), m.writes_fields.end());
        touched.push_back(std::move(fields));
    }
    if (touched.size() < 2) return 1.0;
    std::size_t sharing = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < touched.size(); ++i) {
        for (std::size_t j = i + 1; j < touched.size(); ++j) {
            ++pairs;
            const bool shared = std::any_of(touched[i].begin(), touched[i].end(),
                                            [&](const std::string& f) { return touched[j].contains(f); });
            if (shared) ++sharing;
        }
    }
    return static_cast<double>(sharing) / static_cast<double>(pairs);
}

Metrics compute_metrics(const CodeModel& model) {
    Metrics out;
    out.classes.resize(model.classes.size());
    out.packages.resize(model.packages.size());
    const auto depths = inheritance_depths(model);
    for (std::size_t i = 0; i < model.classes.size(); ++i) {
        const auto& decl = model.classes[i].decl;
        auto& m = out.classes[i];
        m.method_count = static_cast<std::uint32_t>(decl.methods.size());
        m.loc = decl.span.line_count();
        m.depth = depths[i];
        m.cohesion = compute_cohesion(decl);
        for (const auto& method : decl.methods) {
            ++m.kind_histogram[static_cast<std::size_t>(classify_method(method, decl))];
        }
    }
    for (const auto& e : model.call_edges) {
        out.classes[e.caller.class_index].fan_out += e.count;
        out.classes[e.callee.class_index].fan_in += e.count;
    }
    for (std::size_t p = 0; p < model.packages.size(); ++p) {
        auto& pm = out.packages[p];
        for (std::uint32_t c : model.packages[p].classes) {
            ++pm.class_count;
            pm.method_count += out.classes[c].method_count;
            pm.loc += out.classes[c].loc;
        }
    }
    for (const auto& e : model.inheritance_edges) {
        ++out.packages[model.classes[e.child].package_index].inheritance_edge_count;
    }
    return out;
}

} // namespace codeforest
