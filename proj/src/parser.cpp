#include <codeforest/source_parser.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <array>

namespace codeforest {

namespace {

constexpr std::array<std::string_view, 14> kModifiers = {
    "public", "protected", "private",  "static",    "final",    "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "sealed", "non-sealed",
};

constexpr std::array<std::string_view, 12> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
};

constexpr std::array<std::string_view, 9> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
};

bool contains(auto const& table, std::string_view word) {
    return std::find(table.begin(), table.end(), word) != table.end();
}

bool is_word(const Token& t) {
    return t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword;
}

// Renders a run of tokens as compact type text: words separated by one
// space, punctuation glued on.
std::string join_type_text(const std::vector<const Token*>& toks) {
    std::string out;
    const Token* prev = nullptr;
    for (const Token* t : toks) {
        if (prev && is_word(*prev) && is_word(*t)) out += ' ';
        if (prev && prev->is_punct(",")) out += ' ';
        out += t->text;
        prev = t;
    }
    return out;
}

Span merge(const Span& a, const Span& b) {
    Span s = a;
    s.line_end = b.line_end;
    s.byte_end = b.byte_end;
    return s;
}

int angle_delta(const Token& t) {
    if (t.kind != TokenKind::Punctuation) return 0;
    if (t.text == "<") return 1;
    if (t.text == ">") return -1;
    if (t.text == ">>") return -2;
    if (t.text == ">>>") return -3;
    return 0;
}

enum class TypeKind { Class, Interface, Enum, Record, Annotation };

class UnitParser {
public:
    explicit UnitParser(std::span<const Token> tokens) : all_(tokens) {
        for (std::size_t i = 0; i < all_.size(); ++i) {
            if (!all_[i].is_trivia()) sig_.push_back(i);
        }
    }

    std::vector<ClassDecl> run() {
        check_brace_balance();
        while (!at_end()) {
            if (tok().is_keyword("package")) {
                advance();
                std::string name;
                while (!at_end() && !tok().is_punct(";")) {
                    name += tok().text;
                    advance();
                }
                package_ = name;
                accept(";");
            } else if (tok().is_keyword("import")) {
                while (!at_end() && !tok().is_punct(";")) advance();
                accept(";");
            } else if (tok().is_punct(";")) {
                advance();
            } else {
                const std::size_t start = pos_;
                bool is_abstract = skip_modifiers();
                if (auto kind = peek_type_keyword()) {
                    parse_type(start, *kind, "", is_abstract);
                } else if (pos_ == start) {
                    advance(); // not part of the subset; skip
                }
            }
        }
        scan_pending_bodies();
        return std::move(out_);
    }

private:
    // ---- token cursor over significant tokens ----

    bool at_end() const { return pos_ >= sig_.size(); }
    const Token& tok(std::size_t ahead = 0) const {
        static const Token eof{TokenKind::Whitespace, "", {}};
        return pos_ + ahead < sig_.size() ? all_[sig_[pos_ + ahead]] : eof;
    }
    const Token& at(std::size_t sig_index) const { return all_[sig_[sig_index]]; }
    void advance() { ++pos_; }
    bool accept(std::string_view punct) {
        if (!at_end() && tok().is_punct(punct)) {
            advance();
            return true;
        }
        return false;
    }

    void check_brace_balance() const {
        std::vector<const Token*> open;
        for (std::size_t i : sig_) {
            const Token& t = all_[i];
            if (t.is_punct("{")) {
                open.push_back(&t);
            } else if (t.is_punct("}")) {
                if (open.empty()) {
                    throw Error(ErrorKind::UnbalancedBraces,
                                fmt::format("unmatched '}}' at line {}", t.span.line_start));
                }
                open.pop_back();
            }
        }
        if (!open.empty()) {
            throw Error(ErrorKind::UnbalancedBraces,
                        fmt::format("unclosed '{{' at line {}", open.back()->span.line_start));
        }
    }

    // Advances past the bracket group opened at the cursor; returns the
    // significant index of the closing token.
    std::size_t skip_group(std::string_view open, std::string_view close) {
        int depth = 0;
        while (!at_end()) {
            if (tok().is_punct(open)) {
                ++depth;
            } else if (tok().is_punct(close)) {
                if (--depth == 0) {
                    const std::size_t closing = pos_;
                    advance();
                    return closing;
                }
            }
            advance();
        }
        throw Error(ErrorKind::UnbalancedBraces, fmt::format("unclosed '{}'", open));
    }

    void skip_generics() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = tok();
            if (t.is_punct("{") || t.is_punct(";") || t.is_punct("=")) return;
            depth += angle_delta(t);
            advance();
            if (depth <= 0) return;
        }
    }

    void skip_annotation() {
        advance(); // '@'
        while (!at_end() && tok().kind == TokenKind::Identifier) {
            advance();
            if (!accept(".")) break;
        }
        if (tok().is_punct("(")) skip_group("(", ")");
    }

    // Consumes modifiers and annotations; reports whether `abstract` was seen.
    bool skip_modifiers() {
        bool is_abstract = false;
        while (!at_end()) {
            const Token& t = tok();
            if (t.is_punct("@") && !tok(1).is_keyword("interface")) {
                skip_annotation();
            } else if ((is_word(t) && contains(kModifiers, t.text)) &&
                       !(t.text == "sealed" && tok(1).is_punct("("))) {
                if (t.text == "abstract") is_abstract = true;
                advance();
            } else if (t.kind == TokenKind::Identifier && t.text == "non" && tok(1).is_punct("-") &&
                       tok(2).text == "sealed") {
                pos_ += 3;
            } else {
                break;
            }
        }
        return is_abstract;
    }

    std::optional<TypeKind> peek_type_keyword() const {
        const Token& t = tok();
        if (t.is_keyword("class")) return TypeKind::Class;
        if (t.is_keyword("interface")) return TypeKind::Interface;
        if (t.is_keyword("enum")) return TypeKind::Enum;
        if (t.is_punct("@") && tok(1).is_keyword("interface")) return TypeKind::Annotation;
        if (t.kind == TokenKind::Identifier && t.text == "record" &&
            tok(1).kind == TokenKind::Identifier && (tok(2).is_punct("(") || tok(2).is_punct("<"))) {
            return TypeKind::Record;
        }
        return std::nullopt;
    }

    // Reads `a.b.C<...>` and returns "a.b.C" without type arguments.
    std::string read_type_ref() {
        std::string name;
        while (!at_end()) {
            if (tok().is_punct("@")) {
                skip_annotation();
                continue;
            }
            if (tok().kind != TokenKind::Identifier) break;
            name += tok().text;
            advance();
            if (tok().is_punct("<")) skip_generics();
            if (tok().is_punct(".") && tok(1).kind == TokenKind::Identifier) {
                name += '.';
                advance();
                continue;
            }
            break;
        }
        return name;
    }

    std::vector<std::string> read_type_list() {
        std::vector<std::string> names;
        do {
            auto name = read_type_ref();
            if (name.empty()) break;
            names.push_back(std::move(name));
        } while (accept(","));
        return names;
    }

    // ---- declarations ----

    void parse_type(std::size_t start, TypeKind kind, const std::string& outer, bool is_abstract) {
        const Token& keyword = tok();
        if (kind == TypeKind::Annotation) advance();
        advance();
        if (at_end() || tok().kind != TokenKind::Identifier) {
            throw Error(ErrorKind::MissingClassName,
                        fmt::format("missing type name after '{}' at line {}", keyword.text,
                                    keyword.span.line_start));
        }

        const std::size_t index = out_.size();
        out_.emplace_back();
        {
            ClassDecl& decl = out_[index];
            decl.name = outer.empty() ? tok().text : outer + "." + tok().text;
            decl.package_name = package_;
            decl.is_interface = kind == TypeKind::Interface || kind == TypeKind::Annotation;
            decl.is_abstract = is_abstract || decl.is_interface;
        }
        advance();
        if (tok().is_punct("<")) skip_generics();

        std::vector<FieldDecl> record_fields;
        if (kind == TypeKind::Record && tok().is_punct("(")) record_fields = parse_record_header();

        std::vector<std::string> extends;
        std::vector<std::string> implements;
        while (!at_end() && !tok().is_punct("{")) {
            if (tok().is_keyword("extends")) {
                advance();
                extends = read_type_list();
            } else if (tok().is_keyword("implements")) {
                advance();
                implements = read_type_list();
            } else if (tok().kind == TokenKind::Identifier && tok().text == "permits") {
                advance();
                read_type_list();
            } else if (tok().is_punct(";")) {
                break;
            } else {
                advance();
            }
        }
        if (!tok().is_punct("{")) {
            throw Error(ErrorKind::UnbalancedBraces,
                        fmt::format("missing body for type '{}'", out_[index].name));
        }

        {
            ClassDecl& decl = out_[index];
            decl.fields = std::move(record_fields);
            if (!extends.empty()) {
                decl.super_name = extends.front();
                decl.interface_names.assign(extends.begin() + 1, extends.end());
            }
            decl.interface_names.insert(decl.interface_names.end(), implements.begin(), implements.end());
        }

        const std::string qualified = out_[index].name;
        const std::string simple(out_[index].simple_name());
        const std::size_t close = parse_body(index, kind, qualified, simple);
        out_[index].span = merge(at(start).span, at(close).span);
    }

    std::vector<FieldDecl> parse_record_header() {
        std::vector<FieldDecl> fields;
        advance(); // '('
        std::vector<const Token*> head;
        int angle = 0;
        auto flush = [&] {
            if (head.size() >= 2 && head.back()->kind == TokenKind::Identifier) {
                const Token* name = head.back();
                head.pop_back();
                fields.push_back({name->text, join_type_text(head), name->span});
            }
            head.clear();
        };
        while (!at_end() && !tok().is_punct(")")) {
            if (tok().is_punct("@")) {
                skip_annotation();
                continue;
            }
            angle += angle_delta(tok());
            if (tok().is_punct(",") && angle == 0) {
                flush();
            } else {
                head.push_back(&tok());
            }
            advance();
        }
        flush();
        accept(")");
        return fields;
    }

    // Cursor on the opening brace. Returns the significant index of the
    // closing brace.
    std::size_t parse_body(std::size_t index, TypeKind kind, const std::string& qualified,
                           const std::string& simple) {
        advance(); // '{'
        if (kind == TypeKind::Enum) skip_enum_constants();

        while (true) {
            if (at_end()) throw Error(ErrorKind::UnbalancedBraces, "unexpected end of input in type body");
            if (tok().is_punct("}")) {
                const std::size_t close = pos_;
                advance();
                return close;
            }
            if (tok().is_punct(";")) {
                advance();
                continue;
            }
            if (tok().is_punct("{")) {
                skip_group("{", "}");
                continue;
            }
            if (tok().is_keyword("static") && tok(1).is_punct("{")) {
                advance();
                skip_group("{", "}");
                continue;
            }
            parse_member(index, qualified, simple);
        }
    }

    void skip_enum_constants() {
        while (!at_end()) {
            const Token& t = tok();
            if (t.is_punct(";")) {
                advance();
                return;
            }
            if (t.is_punct("}")) return;
            if (t.is_punct("(")) {
                skip_group("(", ")");
            } else if (t.is_punct("{")) {
                skip_group("{", "}");
            } else {
                advance();
            }
        }
    }

    void parse_member(std::size_t index, const std::string& qualified, const std::string& simple) {
        const std::size_t start = pos_;
        const bool is_abstract = skip_modifiers();
        if (auto kind = peek_type_keyword()) {
            parse_type(start, *kind, qualified, is_abstract);
            return;
        }
        if (tok().is_punct("<")) skip_generics();

        std::vector<const Token*> head;
        int angle = 0;
        int bracket = 0;
        while (!at_end()) {
            const Token& t = tok();
            if (angle == 0 && bracket == 0 &&
                (t.is_punct("(") || t.is_punct("=") || t.is_punct(";") || t.is_punct(",") ||
                 t.is_punct("{") || t.is_punct("}"))) {
                break;
            }
            if (t.is_punct("@")) {
                skip_annotation();
                continue;
            }
            angle = std::max(0, angle + angle_delta(t));
            if (t.is_punct("[")) ++bracket;
            if (t.is_punct("]")) bracket = std::max(0, bracket - 1);
            head.push_back(&t);
            advance();
        }
        if (at_end()) return;

        const Token& stop = tok();
        if (stop.is_punct("(")) {
            if (head.empty() || head.back()->kind != TokenKind::Identifier) {
                skip_group("(", ")");
                return;
            }
            parse_method(index, start, head);
        } else if (stop.is_punct("{")) {
            // Compact record constructor: `Name { ... }`.
            if (head.size() == 1 && head.front()->text == simple) {
                MethodDecl m;
                m.name = simple;
                const std::size_t open = pos_;
                const std::size_t close = skip_group("{", "}");
                finish_body(index, m, start, open, close);
                out_[index].methods.push_back(std::move(m));
            } else {
                skip_group("{", "}");
            }
        } else if (stop.is_punct("}")) {
            return; // stray tokens before the closing brace
        } else {
            parse_fields(index, head);
        }
    }

    void parse_method(std::size_t index, std::size_t start, std::vector<const Token*> head) {
        MethodDecl m;
        const Token* name = head.back();
        head.pop_back();
        m.name = name->text;
        m.return_type = join_type_text(head);

        // Parameters: commas at paren depth 1 outside type arguments.
        advance(); // '('
        int depth = 1;
        int angle = 0;
        bool any = false;
        std::uint32_t commas = 0;
        while (!at_end() && depth > 0) {
            const Token& t = tok();
            if (t.is_punct("(")) {
                ++depth;
            } else if (t.is_punct(")")) {
                --depth;
            } else if (depth == 1) {
                angle = std::max(0, angle + angle_delta(t));
                if (t.is_punct(",") && angle == 0) ++commas;
            }
            if (depth > 0) any = true;
            advance();
        }
        m.param_count = any ? commas + 1 : 0;

        // Trailing `[]`, `throws ...`, or an annotation `default` value.
        while (!at_end() && !tok().is_punct("{") && !tok().is_punct(";") && !tok().is_punct("}")) {
            if (tok().is_punct("(")) {
                skip_group("(", ")");
            } else {
                advance();
            }
        }
        if (at_end() || tok().is_punct("}")) return;

        if (tok().is_punct(";")) {
            m.has_body = false;
            const std::size_t semi = pos_;
            advance();
            m.span = merge(at(start).span, at(semi).span);
            m.body_span = m.span;
            m.loc = m.span.line_count();
            out_[index].methods.push_back(std::move(m));
            return;
        }
        const std::size_t open = pos_;
        const std::size_t close = skip_group("{", "}");
        finish_body(index, m, start, open, close);
        out_[index].methods.push_back(std::move(m));
    }

    // Field names are only final once the class body has been read, so the
    // body scan is deferred until the whole unit is parsed.
    void finish_body(std::size_t index, MethodDecl& m, std::size_t start, std::size_t open,
                     std::size_t close) {
        m.has_body = true;
        m.span = merge(at(start).span, at(close).span);
        m.body_span = merge(at(open).span, at(close).span);
        m.loc = m.span.line_count();
        pending_.push_back({index, out_[index].methods.size(), sig_[open], sig_[close]});
    }

    void parse_fields(std::size_t index, std::vector<const Token*> head) {
        if (head.size() < 2 || head.back()->kind != TokenKind::Identifier) {
            skip_to_member_end();
            return;
        }
        const Token* name = head.back();
        head.pop_back();
        const std::string type = join_type_text(head);
        auto& fields = out_[index].fields;
        fields.push_back({name->text, type, name->span});

        while (!at_end()) {
            const Token& t = tok();
            if (t.is_punct(";")) {
                fields.back().span = merge(fields.back().span, t.span);
                advance();
                return;
            }
            if (t.is_punct("}")) return;
            if (t.is_punct("(")) {
                skip_group("(", ")");
            } else if (t.is_punct("{")) {
                skip_group("{", "}");
            } else if (t.is_punct("[")) {
                skip_group("[", "]");
            } else if (t.is_punct(",") && tok(1).kind == TokenKind::Identifier &&
                       (tok(2).is_punct("=") || tok(2).is_punct(",") || tok(2).is_punct(";") ||
                        tok(2).is_punct("["))) {
                // Next declarator in `int a = 1, b;`.
                advance();
                fields.push_back({tok().text, type, tok().span});
                advance();
            } else {
                advance();
            }
        }
    }

    void skip_to_member_end() {
        while (!at_end() && !tok().is_punct(";") && !tok().is_punct("}")) {
            if (tok().is_punct("{")) {
                skip_group("{", "}");
                return;
            }
            if (tok().is_punct("(")) {
                skip_group("(", ")");
                continue;
            }
            advance();
        }
        accept(";");
    }

    void scan_pending_bodies() {
        for (const auto& p : pending_) {
            ClassDecl& decl = out_[p.class_index];
            std::set<std::string> names;
            for (const auto& f : decl.fields) names.insert(f.name);
            MethodDecl& m = decl.methods[p.method_index];
            auto scan = scan_method_body(all_.subspan(p.first, p.last - p.first + 1), names);
            m.reads_fields = std::move(scan.reads_fields);
            m.writes_fields = std::move(scan.writes_fields);
            m.call_sites = std::move(scan.call_sites);
        }
    }

    struct PendingBody {
        std::size_t class_index;
        std::size_t method_index;
        std::size_t first; // index into all_ of '{'
        std::size_t last;  // index into all_ of '}'
    };

    std::span<const Token> all_;
    std::vector<std::size_t> sig_;
    std::size_t pos_ = 0;
    std::string package_;
    std::vector<ClassDecl> out_;
    std::vector<PendingBody> pending_;
};

bool declares_name(const Token& prev) {
    return prev.kind == TokenKind::Identifier ||
           (prev.kind == TokenKind::Keyword && contains(kPrimitiveTypes, prev.text));
}

} // namespace

std::string_view ClassDecl::simple_name() const {
    const auto dot = name.rfind('.');
    return dot == std::string::npos ? std::string_view(name) : std::string_view(name).substr(dot + 1);
}

std::vector<ClassDecl> parse_unit(std::span<const Token> tokens) {
    return UnitParser(tokens).run();
}

BodyScan scan_method_body(std::span<const Token> body, const std::set<std::string>& field_names) {
    BodyScan out;
    std::vector<const Token*> sig;
    for (const Token& t : body) {
        if (!t.is_trivia()) sig.push_back(&t);
    }
    if (sig.empty()) return out;
    out.loc = sig.back()->span.line_end - sig.front()->span.line_start + 1;

    static const Token none{TokenKind::Whitespace, "", {}};
    auto at = [&](std::ptrdiff_t i) -> const Token& {
        return (i >= 0 && i < static_cast<std::ptrdiff_t>(sig.size())) ? *sig[i] : none;
    };

    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(sig.size()); ++i) {
        const Token& t = at(i);
        if (t.kind != TokenKind::Identifier) continue;
        const Token& prev = at(i - 1);
        const Token& next = at(i + 1);

        if (next.is_punct("(")) {
            if (declares_name(prev)) continue; // local/anonymous method declaration
            // Walk back over a qualified chain to spot `new a.b.C(`.
            std::ptrdiff_t j = i;
            while (at(j - 1).is_punct(".") && at(j - 2).kind == TokenKind::Identifier) j -= 2;
            if (at(j - 1).is_keyword("new")) continue;

            CallSite site;
            site.callee_name = t.text;
            site.span = t.span;
            if (prev.is_punct(".")) {
                const Token& recv = at(i - 2);
                if (recv.kind == TokenKind::Identifier) {
                    site.receiver = ReceiverKind::Named;
                    site.receiver_name = recv.text;
                } else if (recv.is_keyword("this") || recv.is_keyword("super")) {
                    site.receiver = ReceiverKind::ImplicitThis;
                } else {
                    site.receiver = ReceiverKind::Other;
                }
            }
            int depth = 0;
            std::uint32_t commas = 0;
            bool any = false;
            std::ptrdiff_t k = i + 1;
            for (; k < static_cast<std::ptrdiff_t>(sig.size()); ++k) {
                const Token& a = at(k);
                if (a.is_punct("(") || a.is_punct("{") || a.is_punct("[")) {
                    ++depth;
                } else if (a.is_punct(")") || a.is_punct("}") || a.is_punct("]")) {
                    if (--depth == 0) break;
                } else if (depth == 1 && a.is_punct(",")) {
                    ++commas;
                }
                if (depth >= 1 && k > i + 1) any = true;
            }
            site.arg_count_hint = any ? commas + 1 : 0;
            out.call_sites.push_back(std::move(site));
            continue;
        }

        if (!field_names.contains(t.text)) continue;
        if (prev.is_punct(".")) {
            if (!at(i - 2).is_keyword("this")) continue;
        } else if (declares_name(prev)) {
            continue; // local declaration shadowing the field
        }
        const bool stepped = next.is_punct("++") || next.is_punct("--") || prev.is_punct("++") || prev.is_punct("--");
        if (stepped || (next.kind == TokenKind::Punctuation && contains(kAssignOps, next.text))) {
            out.writes_fields.insert(t.text);
        } else {
            out.reads_fields.insert(t.text);
        }
    }
    return out;
}

} // namespace codeforest
