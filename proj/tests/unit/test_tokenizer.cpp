#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"

#include <codeforest/error.hpp>
#include <codeforest/source_parser.hpp>

#include <doctest.h>

using namespace codeforest;

namespace {

std::vector<Token> significant(std::string_view src) {
    std::vector<Token> out;
    for (auto& t : tokenize(src)) {
        if (t.kind != TokenKind::Whitespace) out.push_back(t);
    }
    return out;
}

std::string concat(const std::vector<Token>& tokens) {
    std::string s;
    for (const auto& t : tokens) s += t.text;
    return s;
}

} // namespace

TEST_CASE("class header tokens") {
    const auto tokens = tokenize("public class Useraaa {");
    REQUIRE(tokens.size() == 7);
    const auto sig = significant("public class Useraaa {");
    REQUIRE(sig.size() == 4);
    CHECK(sig[0].kind == TokenKind::Keyword);
    CHECK(sig[0].text == "public");
    CHECK(sig[1].kind == TokenKind::Keyword);
    CHECK(sig[1].text == "class");
    CHECK(sig[2].kind == TokenKind::Identifier);
    CHECK(sig[2].text == "Useraaa");
    CHECK(sig[3].kind == TokenKind::Punctuation);
    CHECK(sig[3].text == "{");
    for (std::size_t i = 1; i < tokens.size(); i += 2) CHECK(tokens[i].kind == TokenKind::Whitespace);
}

TEST_CASE("empty input has no tokens") {
    CHECK(tokenize("").empty());
}

TEST_CASE("token count agrees with the reference scanner") {
    const auto text = testfx::read_file(testfx::fixture("figure2/Useraaa.java"));
    const auto tokens = tokenize(text);
    CHECK(tokens.size() == oracle::count_tokens(text));
    // Value recorded from one run of the reference scanner over the fixture.
    CHECK(tokens.size() == 72);
}

TEST_CASE("tokenization is lossless") {
    for (const char* name : {"figure2/Useraaa.java", "figure2/Ownerbbb.java", "mixed/geo/Circle.java",
                             "mixed/app/Canvas.java", "external/Panel.java"}) {
        const auto text = testfx::read_file(testfx::fixture(name));
        CHECK(concat(tokenize(text)) == text);
        CHECK(tokenize(text).size() == oracle::count_tokens(text));
    }
}

TEST_CASE("literal and comment forms") {
    const std::string src = "s = \"a\\\"b\"; c = '\\''; /* x\ny */ // tail\nn = 0x1Fp+3 + 1.5e-3f + .5; t = \"\"\"\n  hi \"q\"\n  \"\"\";";
    const auto sig = significant(src);
    CHECK(concat(tokenize(src)) == src);
    CHECK(sig[2].kind == TokenKind::StringLiteral);
    CHECK(sig[2].text == "\"a\\\"b\"");
    CHECK(sig[6].kind == TokenKind::CharLiteral);
    CHECK(sig[8].kind == TokenKind::Comment);
    CHECK(sig[9].kind == TokenKind::Comment);
    CHECK(sig[9].text == "// tail");
    CHECK(sig[12].text == "0x1Fp+3");
    CHECK(sig[14].text == "1.5e-3f");
    CHECK(sig[16].text == ".5");
    CHECK(sig[20].kind == TokenKind::StringLiteral);
    CHECK(tokenize(src).size() == oracle::count_tokens(src));
}

TEST_CASE("operators use maximal munch") {
    const auto sig = significant("a >>>= b >> c -> d :: e ... f++");
    std::vector<std::string> ops;
    for (const auto& t : sig) {
        if (t.kind == TokenKind::Punctuation) ops.push_back(t.text);
    }
    CHECK(ops == std::vector<std::string>{">>>=", ">>", "->", "::", "...", "++"});
}

TEST_CASE("spans track lines") {
    const auto tokens = tokenize("a\n/* b\nc */\r\nd");
    const auto sig = significant("a\n/* b\nc */\r\nd");
    REQUIRE(sig.size() == 3);
    CHECK(sig[0].span.line_start == 1);
    CHECK(sig[1].span.line_start == 2);
    CHECK(sig[1].span.line_end == 3);
    CHECK(sig[2].span.line_start == 4);
    CHECK(tokens.back().span.byte_end == 14);
}

TEST_CASE("tokenizer errors") {
    auto kind_of = [](std::string_view src) {
        try {
            tokenize(src);
        } catch (const Error& e) {
            return e.kind();
        }
        FAIL("expected an error");
        return ErrorKind::Io;
    };
    CHECK(kind_of("s = \"open") == ErrorKind::UnterminatedLiteral);
    CHECK(kind_of("c = 'x") == ErrorKind::UnterminatedLiteral);
    CHECK(kind_of("t = \"\"\"\nnever closed") == ErrorKind::UnterminatedLiteral);
    CHECK(kind_of("/* open") == ErrorKind::UnterminatedComment);
    CHECK(kind_of(std::string_view("class \xff {}", 10)) == ErrorKind::NonUtf8Input);
    CHECK(kind_of("class \xc3 {}") == ErrorKind::NonUtf8Input);
    CHECK_NOTHROW(tokenize("class Caf\xc3\xa9 {}"));
}
