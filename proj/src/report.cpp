#include <codeforest/exporters.hpp>

#include <fmt/format.h>

namespace codeforest {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                out += fmt::format("\\u{:04x}", static_cast<unsigned>(static_cast<unsigned char>(ch)));
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

// Pretty-printing writer with two-space indentation. The report is written
// by hand so that every real carries exactly four decimals.
class Writer {
public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(std::string_view k) {
        separate();
        out_ += quote(k) + ": ";
        after_key_ = true;
    }

    void string(std::string_view s) { scalar(quote(s)); }
    void integer(std::uint64_t v) { scalar(std::to_string(v)); }
    void real(double v) { scalar(format_fixed(v, 4)); }
    void boolean(bool v) { scalar(v ? "true" : "false"); }
    void null() { scalar("null"); }

    std::string take() { return std::move(out_) + "\n"; }

private:
    void separate() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
            out_ += '\n';
            out_.append(2 * first_.size(), ' ');
        }
    }
    void scalar(const std::string& text) {
        separate();
        out_ += text;
    }
    void open(char ch) {
        separate();
        out_ += ch;
        first_.push_back(true);
    }
    void close(char ch) {
        const bool empty = first_.back();
        first_.pop_back();
        if (!empty) {
            out_ += '\n';
            out_.append(2 * first_.size(), ' ');
        }
        out_ += ch;
    }

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

std::string method_label(const CodeModel& model, MethodId id) {
    return model.classes[id.class_index].qualified_name() + "." + model.method(id).name;
}

} // namespace

ExportArtifact export_report(const CodeModel& model, const Metrics& metrics) {
    Writer w;
    w.begin_object();

    w.key("corpus");
    w.begin_object();
    w.key("files");
    w.integer(model.files.size());
    w.key("paths");
    w.begin_array();
    for (const auto& f : model.files) w.string(f);
    w.end_array();
    w.end_object();

    std::uint64_t loc = 0;
    for (const auto& c : metrics.classes) loc += c.loc;
    w.key("totals");
    w.begin_object();
    w.key("packages");
    w.integer(model.packages.size());
    w.key("classes");
    w.integer(model.classes.size());
    w.key("methods");
    w.integer(model.method_count());
    w.key("loc");
    w.integer(loc);
    w.key("inheritance_edges");
    w.integer(model.inheritance_edges.size());
    w.key("call_edges");
    w.integer(model.call_edges.size());
    w.end_object();

    w.key("packages");
    w.begin_array();
    for (std::size_t p = 0; p < model.packages.size(); ++p) {
        const auto& m = metrics.packages[p];
        w.begin_object();
        w.key("name");
        w.string(model.packages[p].name);
        w.key("class_count");
        w.integer(m.class_count);
        w.key("method_count");
        w.integer(m.method_count);
        w.key("loc");
        w.integer(m.loc);
        w.key("inheritance_edge_count");
        w.integer(m.inheritance_edge_count);
        w.end_object();
    }
    w.end_array();

    w.key("classes");
    w.begin_array();
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        const auto& cls = model.classes[c];
        const auto& m = metrics.classes[c];
        w.begin_object();
        w.key("name");
        w.string(cls.qualified_name());
        w.key("package");
        w.string(cls.decl.package_name);
        w.key("file");
        w.string(cls.file_path);
        w.key("interface");
        w.boolean(cls.decl.is_interface);
        w.key("abstract");
        w.boolean(cls.decl.is_abstract);
        w.key("super");
        if (cls.decl.super_name) {
            w.string(*cls.decl.super_name);
        } else {
            w.null();
        }
        w.key("interfaces");
        w.begin_array();
        for (const auto& i : cls.decl.interface_names) w.string(i);
        w.end_array();
        w.key("method_count");
        w.integer(m.method_count);
        w.key("loc");
        w.integer(m.loc);
        w.key("depth");
        w.integer(m.depth);
        w.key("fan_in");
        w.integer(m.fan_in);
        w.key("fan_out");
        w.integer(m.fan_out);
        w.key("cohesion");
        w.real(m.cohesion);
        w.key("method_kinds");
        w.begin_object();
        for (std::size_t k = 0; k < kMethodKindCount; ++k) {
            w.key(to_string(static_cast<MethodKind>(k)));
            w.integer(m.kind_histogram[k]);
        }
        w.end_object();
        w.key("methods");
        w.begin_array();
        for (const auto& method : cls.decl.methods) {
            w.begin_object();
            w.key("name");
            w.string(method.name);
            w.key("kind");
            w.string(to_string(classify_method(method, cls.decl)));
            w.key("params");
            w.integer(method.param_count);
            w.key("loc");
            w.integer(method.loc);
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();

    w.key("inheritance_edges");
    w.begin_array();
    for (const auto& e : model.inheritance_edges) {
        w.begin_object();
        w.key("child");
        w.string(model.classes[e.child].qualified_name());
        w.key("parent");
        w.string(model.classes[e.parent].qualified_name());
        w.end_object();
    }
    w.end_array();

    w.key("call_edges");
    w.begin_array();
    for (const auto& e : model.call_edges) {
        w.begin_object();
        w.key("caller");
        w.string(method_label(model, e.caller));
        w.key("callee");
        w.string(method_label(model, e.callee));
        w.key("count");
        w.integer(e.count);
        w.end_object();
    }
    w.end_array();

    w.key("unresolved_supers");
    w.begin_array();
    for (const auto& u : model.unresolved_supers) {
        w.begin_object();
        w.key("class");
        w.string(model.classes[u.class_index].qualified_name());
        w.key("super");
        w.string(u.super_name);
        w.end_object();
    }
    w.end_array();

    w.end_object();
    return {ArtifactKind::Report, w.take()};
}

} // namespace codeforest
