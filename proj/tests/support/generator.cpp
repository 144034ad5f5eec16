#include "generator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <random>
#include <string>

namespace testgen {

namespace {

struct TypeInfo {
    std::string name;
    std::string package;
    bool interface = false;
    std::vector<std::string> methods; // names callable on this type
    std::vector<std::size_t> ancestors;
};

std::string reference(const TypeInfo& target, const std::string& from_package) {
    if (target.package == from_package || target.package.empty()) return target.name;
    return target.package + "." + target.name;
}

} // namespace

Corpus random_corpus(std::uint64_t seed, std::size_t max_classes) {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto chance = [&](int percent) { return static_cast<int>(rng() % 100) < percent; };

    static const std::vector<std::string> kPackages = {"", "alpha", "beta.gamma"};
    const std::size_t package_count = 1 + pick(3);
    const std::size_t n = 1 + pick(max_classes);

    Corpus corpus;
    std::vector<TypeInfo> types;
    // A nested type adds a class, so leave room for it under the cap.
    std::size_t budget = max_classes;

    for (std::size_t i = 0; i < n && budget > 0; ++i) {
        TypeInfo info;
        info.name = fmt::format("T{}", i);
        info.package = kPackages[pick(package_count)];
        info.interface = chance(20);
        --budget;

        std::string src;
        if (!info.package.empty()) src += fmt::format("package {};\n\n", info.package);
        if (chance(30)) src += "import java.util.List;\n\n";
        if (chance(40)) src += fmt::format("/** Generated type {} (with a call-like comment: foo(bar)). */\n", i);

        std::vector<std::size_t> earlier_classes, earlier_interfaces;
        for (std::size_t j = 0; j < types.size(); ++j) {
            (types[j].interface ? earlier_interfaces : earlier_classes).push_back(j);
        }
        auto take_interfaces = [&](std::size_t max) {
            std::vector<std::size_t> chosen;
            for (std::size_t k = 0; k < max && !earlier_interfaces.empty(); ++k) {
                const std::size_t c = earlier_interfaces[pick(earlier_interfaces.size())];
                if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
            }
            return chosen;
        };
        std::vector<std::size_t> parents;
        std::string header;
        if (info.interface) {
            header = fmt::format("public interface {}", info.name);
            parents = take_interfaces(pick(3));
            for (std::size_t k = 0; k < parents.size(); ++k) {
                header += (k == 0 ? " extends " : ", ") + reference(types[parents[k]], info.package);
            }
        } else {
            const bool abstract_class = chance(15);
            header = fmt::format("public {}class {}", abstract_class ? "abstract " : "", info.name);
            if (!earlier_classes.empty() && chance(50)) {
                const std::size_t p = earlier_classes[pick(earlier_classes.size())];
                parents.push_back(p);
                header += " extends " + reference(types[p], info.package);
            } else if (chance(15)) {
                header += " extends ExternalBase";
                ++corpus.external_supers;
            }
            const auto ifaces = take_interfaces(pick(3));
            for (std::size_t k = 0; k < ifaces.size(); ++k) {
                header += (k == 0 ? " implements " : ", ") + reference(types[ifaces[k]], info.package);
                parents.push_back(ifaces[k]);
            }
        }
        corpus.inheritance_edges += parents.size();
        for (std::size_t p : parents) {
            info.ancestors.push_back(p);
            for (std::size_t a : types[p].ancestors) info.ancestors.push_back(a);
        }

        // Names callable with an implicit receiver: own plus inherited.
        std::vector<std::string> callable;
        for (std::size_t a : info.ancestors) {
            for (const auto& m : types[a].methods) callable.push_back(m);
        }

        src += header + " {\n";
        std::size_t methods = 0;
        if (info.interface) {
            const std::size_t count = pick(4);
            for (std::size_t k = 0; k < count; ++k) {
                const auto name = fmt::format("op{}", pick(5));
                src += fmt::format("    void {}(int a);\n", name);
                info.methods.push_back(name);
                ++methods;
            }
        } else {
            const std::size_t field_count = pick(4);
            std::vector<std::string> fields;
            for (std::size_t f = 0; f < field_count; ++f) {
                fields.push_back(fmt::format("f{}", f));
                src += fmt::format("    private int f{}{};\n", f, chance(30) ? " = 0" : "");
            }
            std::string peer;
            std::size_t peer_type = 0;
            if (!earlier_classes.empty() && chance(50)) {
                peer_type = earlier_classes[pick(earlier_classes.size())];
                peer = "peer";
                src += fmt::format("    private {} peer;\n", reference(types[peer_type], info.package));
            }
            if (chance(20)) src += "    private int a, b = 2, c;\n";

            const std::size_t count = pick(7);
            for (std::size_t k = 0; k < count; ++k) {
                const int kind = static_cast<int>(pick(4));
                if (kind == 0 && !fields.empty()) {
                    const auto& f = fields[pick(fields.size())];
                    const auto name = fmt::format("get{}", f);
                    src += fmt::format("    public int {}() {{\n        return {};\n    }}\n", name, f);
                    info.methods.push_back(name);
                } else if (kind == 1 && !fields.empty()) {
                    const auto& f = fields[pick(fields.size())];
                    const auto name = fmt::format("set{}", f);
                    src += fmt::format("    public void {}(int v) {{\n        this.{} = v;\n    }}\n", name, f);
                    info.methods.push_back(name);
                } else if (kind == 2) {
                    src += fmt::format("    public {}(int v) {{\n        int local = v;\n        local++;\n    }}\n",
                                       info.name);
                    info.methods.push_back(info.name);
                } else {
                    const auto name = fmt::format("work{}", pick(4));
                    std::string body;
                    const std::size_t calls = pick(4);
                    for (std::size_t c = 0; c < calls; ++c) {
                        const int target = static_cast<int>(pick(4));
                        if (target == 0 && !callable.empty()) {
                            body += fmt::format("        {}(1);\n", callable[pick(callable.size())]);
                        } else if (target == 1 && !peer.empty() && !types[peer_type].methods.empty()) {
                            const auto& pm = types[peer_type].methods;
                            body += fmt::format("        peer.{}(2, 3);\n", pm[pick(pm.size())]);
                        } else if (target == 2) {
                            body += "        log(\"call(me)\");\n";
                        } else {
                            body += "        String s = String.valueOf(new StringBuilder().append('(').length());\n";
                        }
                    }
                    if (!fields.empty() && chance(50)) body += fmt::format("        {} += 1;\n", fields[pick(fields.size())]);
                    src += fmt::format("    void {}(int a, String b) {{\n{}    }}\n", name, body);
                    info.methods.push_back(name);
                    callable.push_back(name);
                }
                ++methods;
            }
            if (budget > 0 && chance(10)) {
                src += "    static class Inner {\n        void run() {\n        }\n    }\n";
                ++corpus.classes;
                ++corpus.methods;
                --budget;
            }
        }
        src += "}\n";

        for (const auto& m : info.methods) {
            if (std::find(callable.begin(), callable.end(), m) == callable.end()) callable.push_back(m);
        }
        corpus.classes += 1;
        corpus.methods += methods;

        std::string dir = info.package;
        std::replace(dir.begin(), dir.end(), '.', '/');
        corpus.files.push_back({(dir.empty() ? "" : dir + "/") + info.name + ".java", std::move(src)});
        types.push_back(std::move(info));
    }
    return corpus;
}

} // namespace testgen
