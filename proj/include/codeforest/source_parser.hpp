#pragma once

#include <codeforest/error.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codeforest {

struct Span {
    std::uint32_t file_id = 0;
    std::uint32_t line_start = 1;
    std::uint32_t line_end = 1;
    std::size_t byte_start = 0;
    std::size_t byte_end = 0;

    std::uint32_t line_count() const { return line_end - line_start + 1; }

    friend bool operator==(const Span&, const Span&) = default;
};

enum class TokenKind {
    Keyword,
    Identifier,
    Punctuation,
    StringLiteral,
    CharLiteral,
    NumberLiteral,
    Comment,
    Whitespace,
};

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Whitespace;
    std::string text;
    Span span;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punctuation, t); }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    bool is_trivia() const { return kind == TokenKind::Whitespace || kind == TokenKind::Comment; }
};

bool is_java_keyword(std::string_view word);

enum class ReceiverKind { ImplicitThis, Named, Other };

struct CallSite {
    std::string callee_name;
    ReceiverKind receiver = ReceiverKind::ImplicitThis;
    std::string receiver_name; // set only for ReceiverKind::Named
    std::uint32_t arg_count_hint = 0;
    Span span;
};

struct FieldDecl {
    std::string name;
    std::string declared_type;
    Span span;
};

struct MethodDecl {
    std::string name;
    std::uint32_t param_count = 0;
    std::string return_type; // empty for constructors
    bool has_body = true;
    Span span;      // declaration start through closing brace (or `;`)
    Span body_span; // the braces; equals span for bodiless declarations
    std::uint32_t loc = 0;
    std::set<std::string> reads_fields;
    std::set<std::string> writes_fields;
    std::vector<CallSite> call_sites;
};

struct ClassDecl {
    std::string name; // nested classes are qualified as Outer.Inner
    std::string package_name;
    std::optional<std::string> super_name;
    std::vector<std::string> interface_names; // implements targets, extra interface extends
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    Span span;
    bool is_abstract = false;
    bool is_interface = false;

    // Last segment of a qualified nested name.
    std::string_view simple_name() const;
};

/// Lossless tokenization: the concatenated token texts reproduce `source`.
/// Throws Error{NonUtf8Input | UnterminatedLiteral | UnterminatedComment}.
std::vector<Token> tokenize(std::string_view source, std::uint32_t file_id = 0);

/// Recognizes package, imports, and class/interface/enum/record declarations
/// with their fields and methods. Anything it does not understand inside a
/// method body is skipped.
/// Throws Error{UnbalancedBraces | MissingClassName}.
std::vector<ClassDecl> parse_unit(std::span<const Token> tokens);

struct BodyScan {
    std::set<std::string> reads_fields;
    std::set<std::string> writes_fields;
    std::vector<CallSite> call_sites;
    std::uint32_t loc = 0; // lines spanned by the supplied tokens
};

/// Tolerant scan of the tokens between (and including) a method's braces.
/// Trivia tokens may be present; they are ignored.
BodyScan scan_method_body(std::span<const Token> body, const std::set<std::string>& field_names);

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string path;
    std::string message;
};

struct ParsedFile {
    std::uint32_t file_id = 0; // position among all sources in path order
    std::string path;          // corpus-relative, '/'-separated
    std::vector<ClassDecl> classes;
};

struct ParsedCorpus {
    std::vector<ParsedFile> files;
    std::vector<Diagnostic> diagnostics;
};

struct SourceFile {
    std::string path;
    std::string bytes;
};

/// Parses in-memory sources. Output is sorted by path (byte order) and
/// file ids are assigned in that order, regardless of input order or `jobs`.
ParsedCorpus parse_sources(std::vector<SourceFile> sources, unsigned jobs = 1);

/// Parses every `.java` file below `root`. Throws Error{RootNotFound}; an
/// empty tree yields an empty corpus with a NoSourceFiles warning.
ParsedCorpus parse_corpus(const std::filesystem::path& root, unsigned jobs = 1);

} // namespace codeforest
