#include <codeforest/source_parser.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <array>

namespace codeforest {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",      "byte",      "case",
    "catch",    "char",       "class",     "const",      "continue",  "default",
    "do",       "double",     "else",      "enum",       "extends",   "final",
    "finally",  "float",      "for",       "goto",       "if",        "implements",
    "import",   "instanceof", "int",       "interface",  "long",      "native",
    "new",      "package",    "private",   "protected",  "public",    "return",
    "short",    "static",     "strictfp",  "super",      "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient",  "try",       "void",
    "volatile", "while",      "true",      "false",      "null",
};

// Longest first so maximal munch falls out of a linear scan.
constexpr std::array<std::string_view, 25> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", ">>",
};

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

// Returns the offset of the first byte that breaks UTF-8 well-formedness.
std::optional<std::size_t> first_invalid_utf8(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return i;
        }
        if (i + len > n) return i;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (cc & 0x3F);
        }
        const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                              (len == 4 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
        i += len;
    }
    return std::nullopt;
}

class Lexer {
public:
    Lexer(std::string_view src, std::uint32_t file_id) : src_(src), file_id_(file_id) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            out.push_back(next());
        }
        return out;
    }

private:
    unsigned char peek(std::size_t k = 0) const {
        return pos_ + k < src_.size() ? static_cast<unsigned char>(src_[pos_ + k]) : 0;
    }

    bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

    Token next() {
        start_ = pos_;
        start_line_ = line_;
        const unsigned char c = peek();

        if (is_space(c)) {
            while (pos_ < src_.size() && is_space(peek())) advance();
            return make(TokenKind::Whitespace);
        }
        if (starts_with("//")) {
            while (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
            return make(TokenKind::Comment);
        }
        if (starts_with("/*")) {
            advance(2);
            while (pos_ < src_.size() && !starts_with("*/")) advance();
            if (pos_ >= src_.size()) {
                throw Error(ErrorKind::UnterminatedComment,
                            fmt::format("unterminated comment starting at line {}", start_line_));
            }
            advance(2);
            return make(TokenKind::Comment);
        }
        if (starts_with("\"\"\"")) return text_block();
        if (c == '"') return quoted('"', TokenKind::StringLiteral);
        if (c == '\'') return quoted('\'', TokenKind::CharLiteral);
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number();
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_part(peek())) advance();
            const auto word = src_.substr(start_, pos_ - start_);
            return make(is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier);
        }
        for (auto op : kOperators) {
            if (starts_with(op)) {
                advance(op.size());
                return make(TokenKind::Punctuation);
            }
        }
        advance();
        return make(TokenKind::Punctuation);
    }

    Token text_block() {
        advance(3);
        while (pos_ < src_.size()) {
            if (peek() == '\\') {
                advance(std::min<std::size_t>(2, src_.size() - pos_));
                continue;
            }
            if (starts_with("\"\"\"")) {
                advance(3);
                return make(TokenKind::StringLiteral);
            }
            advance();
        }
        throw unterminated();
    }

    Token quoted(char quote, TokenKind kind) {
        advance();
        while (pos_ < src_.size()) {
            const unsigned char c = peek();
            if (c == '\n' || c == '\r') break;
            if (c == '\\') {
                advance();
                if (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
                continue;
            }
            advance();
            if (c == static_cast<unsigned char>(quote)) return make(kind);
        }
        throw unterminated();
    }

    Token number() {
        const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
        while (pos_ < src_.size()) {
            const unsigned char c = peek();
            if (is_ident_part(c) || c == '.') {
                advance();
                continue;
            }
            const unsigned char prev = static_cast<unsigned char>(src_[pos_ - 1]);
            const bool exponent = hex ? (prev == 'p' || prev == 'P') : (prev == 'e' || prev == 'E');
            if ((c == '+' || c == '-') && exponent) {
                advance();
                continue;
            }
            break;
        }
        return make(TokenKind::NumberLiteral);
    }

    Error unterminated() const {
        return Error(ErrorKind::UnterminatedLiteral,
                     fmt::format("unterminated literal at line {} (byte {})", start_line_, start_));
    }

    void advance(std::size_t n = 1) {
        for (std::size_t k = 0; k < n && pos_ < src_.size(); ++k) {
            const char c = src_[pos_];
            // A lone CR counts as a line break; CRLF counts once.
            if (c == '\n' || (c == '\r' && (pos_ + 1 >= src_.size() || src_[pos_ + 1] != '\n'))) {
                pending_newlines_++;
            }
            ++pos_;
        }
    }

    Token make(TokenKind kind) {
        Token t;
        t.kind = kind;
        t.text.assign(src_.substr(start_, pos_ - start_));
        t.span.file_id = file_id_;
        t.span.byte_start = start_;
        t.span.byte_end = pos_;
        t.span.line_start = start_line_;
        // A trailing newline belongs to the line it terminates.
        const bool ends_with_break = !t.text.empty() && (t.text.back() == '\n' || t.text.back() == '\r');
        t.span.line_end = start_line_ + pending_newlines_ - ((ends_with_break && pending_newlines_ > 0) ? 1 : 0);
        line_ += pending_newlines_;
        pending_newlines_ = 0;
        return t;
    }

    std::string_view src_;
    std::uint32_t file_id_;
    std::size_t pos_ = 0;
    std::size_t start_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t start_line_ = 1;
    std::uint32_t pending_newlines_ = 0;
};

} // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::StringLiteral: return "string-literal";
    case TokenKind::CharLiteral: return "char-literal";
    case TokenKind::NumberLiteral: return "number-literal";
    case TokenKind::Comment: return "comment";
    case TokenKind::Whitespace: return "whitespace";
    }
    return "?";
}

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source, std::uint32_t file_id) {
    if (auto bad = first_invalid_utf8(source)) {
        throw Error(ErrorKind::NonUtf8Input, fmt::format("invalid UTF-8 at byte offset {}", *bad));
    }
    return Lexer(source, file_id).run();
}

} // namespace codeforest
