#include <doctest.h>

#include "press/parse_inline.hpp"

using namespace press;

TEST_CASE("inlines: ref role splits surrounding text") {
    const auto result = parse_inlines("see {ref}`fig-a`");
    REQUIRE(result.inlines.size() == 2);
    CHECK(std::get<Text>(result.inlines[0].data).text == "see ");
    CHECK(std::get<RefRole>(result.inlines[1].data).label == "fig-a");
}

TEST_CASE("inlines: cite role with single key") {
    const auto result = parse_inlines("{cite}`flach1994simply`");
    REQUIRE(result.inlines.size() == 1);
    const auto& cite = std::get<CiteRole>(result.inlines[0].data);
    REQUIRE(cite.keys.size() == 1);
    CHECK(cite.keys[0] == "flach1994simply");
}

TEST_CASE("inlines: cite role with multiple keys") {
    const auto result = parse_inlines("{cite}`k1, k2`");
    const auto& cite = std::get<CiteRole>(result.inlines[0].data);
    REQUIRE(cite.keys.size() == 2);
    CHECK(cite.keys[0] == "k1");
    CHECK(cite.keys[1] == "k2");
}

TEST_CASE("inlines: eq and math roles") {
    const auto eq = parse_inlines("{eq}`eq1`");
    CHECK(std::get<EqRole>(eq.inlines[0].data).label == "eq1");

    const auto math = parse_inlines("{math}`x^2`");
    CHECK(std::get<MathInline>(math.inlines[0].data).latex == "x^2");
}

TEST_CASE("inlines: empty role content warns and stays literal") {
    const auto result = parse_inlines("{ref}` `");
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == "empty-role");
    REQUIRE(result.inlines.size() == 1);
    CHECK(std::get<Text>(result.inlines[0].data).text == "{ref}` `");
}

TEST_CASE("inlines: unknown role warns") {
    const auto result = parse_inlines("{shout}`hey`");
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == "unknown-role");
    CHECK(std::get<Text>(result.inlines[0].data).text == "{shout}`hey`");
}

TEST_CASE("inlines: unmatched emphasis falls back to text") {
    const auto result = parse_inlines("a * b");
    REQUIRE(result.inlines.size() == 1);
    CHECK(std::get<Text>(result.inlines[0].data).text == "a * b");
}

TEST_CASE("inlines: dollars around amounts stay literal") {
    const auto result = parse_inlines("$5 and $10");
    REQUIRE(result.inlines.size() == 1);
    CHECK(std::get<Text>(result.inlines[0].data).text == "$5 and $10");
}

TEST_CASE("inlines: inline math") {
    const auto result = parse_inlines("so $x^2+1$ holds");
    REQUIRE(result.inlines.size() == 3);
    CHECK(std::get<MathInline>(result.inlines[1].data).latex == "x^2+1");
}

TEST_CASE("inlines: links and images") {
    const auto link = parse_inlines("[text](https://example.org/x)");
    const auto& l = std::get<Link>(link.inlines[0].data);
    CHECK(l.url == "https://example.org/x");
    CHECK(plain_text(l.children) == "text");
    CHECK(!l.internal);

    const auto image = parse_inlines("![alt words](pic.png)");
    const auto& img = std::get<Image>(image.inlines[0].data);
    CHECK(img.url == "pic.png");
    CHECK(img.alt == "alt words");
}

TEST_CASE("inlines: code span retains role-like content verbatim") {
    const auto result = parse_inlines("`{ref}`");
    REQUIRE(result.inlines.size() == 1);
    CHECK(std::get<CodeSpan>(result.inlines[0].data).text == "{ref}");
}

TEST_CASE("inlines: spans track embedded newlines") {
    const auto result = parse_inlines("first\nsecond *em*\nthird", 7);
    bool saw_em = false;
    for (const Inline& inl : result.inlines) {
        if (std::holds_alternative<Emph>(inl.data)) {
            saw_em = true;
            CHECK(inl.span.start_line == 8);
            CHECK(inl.span.end_line == 8);
        }
    }
    CHECK(saw_em);
}

TEST_CASE("inlines: nesting terminates on pathological input") {
    std::string nasty;
    for (int i = 0; i < 60; ++i) nasty += "*a";
    const auto result = parse_inlines(nasty);
    CHECK(!result.inlines.empty());
}
