#include <doctest.h>

#include <random>

#include "../support/fence_oracle.hpp"
#include "press/parser.hpp"

using namespace press;

TEST_CASE("split: no break yields one fragment") {
    const auto result = split_cells("a");
    REQUIRE(result.fragments.size() == 1);
    CHECK(result.fragments[0].text == "a");
    CHECK(!result.fragments[0].tags_json);
}

TEST_CASE("split: break line carries json metadata") {
    const auto result = split_cells("a\n\n+++ {\"tags\": [\"skip-slides\"]}\n\nb");
    REQUIRE(result.fragments.size() == 2);
    CHECK(!result.fragments[0].tags_json);
    REQUIRE(result.fragments[1].tags_json);
    CHECK(*result.fragments[1].tags_json == "{\"tags\": [\"skip-slides\"]}");
}

TEST_CASE("split: break inside a fence is ignored") {
    // oracle: the reference line scanner sees no break lines here
    const std::string body = "```\n+++\n```\nc";
    CHECK(testsupport::oracle_break_lines(body).empty());
    const auto result = split_cells(body);
    REQUIRE(result.fragments.size() == 1);
    CHECK(result.fragments[0].text == body);
}

TEST_CASE("split: empty segments are dropped") {
    const auto result = split_cells("a\n+++\n+++\nb");
    REQUIRE(result.fragments.size() == 2);
    CHECK(result.fragments[0].text == "a");
    CHECK(result.fragments[1].text == "b");
}

TEST_CASE("split: unclosed fence reports and swallows later breaks") {
    const auto result = split_cells("a\n```\n+++\nstill code");
    REQUIRE(result.fragments.size() == 1);
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == "unclosed-fence");
    CHECK(result.diagnostics[0].span.start_line == 2);
}

TEST_CASE("split: spans are ascending, disjoint and cover the body") {
    const std::string body = "a\n\n+++\nb\nc\n+++ {\"slide\": \"slide\"}\n\nd";
    const auto result = split_cells(body, 1);
    REQUIRE(result.fragments.size() == 3);
    int prev_end = 0;
    for (const RawFragment& fragment : result.fragments) {
        CHECK(fragment.span.start_line > prev_end);
        CHECK(fragment.span.start_line <= fragment.span.end_line);
        prev_end = fragment.span.end_line;
    }
}

namespace {

std::string random_body(std::mt19937& rng) {
    std::uniform_int_distribution<int> line_count(0, 14);
    std::uniform_int_distribution<int> kind(0, 9);
    std::string body;
    const int n = line_count(rng);
    for (int i = 0; i < n; ++i) {
        switch (kind(rng)) {
        case 0: body += "+++"; break;
        case 1: body += "+++ {\"tags\": [\"skip-book\"]}"; break;
        case 2: body += "```"; break;
        case 3: body += "````"; break;
        case 4: body += "~~~"; break;
        case 5: body += ""; break;
        case 6: body += "plain text line"; break;
        case 7: body += "  indented text"; break;
        case 8: body += "``` python"; break;
        default: body += "word"; break;
        }
        body += '\n';
    }
    if (!body.empty() && kind(rng) < 5) body.pop_back();  // sometимes no trailing newline
    return body;
}

}  // namespace

// Fence safety + span partition, fuzzed against the independent scanner.
TEST_CASE("split: fuzz agrees with the oracle scanner and partitions lines") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        const std::string body = random_body(rng);
        const auto oracle = testsupport::oracle_break_lines(body);
        const auto result = split_cells(body, 1);
        const auto lines = testsupport::oracle_lines(body);

        // every line is either a break line or covered by exactly one span
        std::vector<int> cover(lines.size(), 0);
        for (size_t b : oracle) cover[b] += 1;
        for (const RawFragment& fragment : result.fragments) {
            for (int line = fragment.span.start_line; line <= fragment.span.end_line; ++line) {
                REQUIRE(line >= 1);
                REQUIRE(static_cast<size_t>(line) <= lines.size());
                cover[static_cast<size_t>(line - 1)] += 1;
            }
        }
        for (size_t i = 0; i < lines.size(); ++i) {
            INFO("trial ", trial, " line ", i + 1, ": ", std::string(lines[i]));
            CHECK(cover[i] == 1);
        }

        // reconstruct: join fragments' texts and break lines in order == body
        std::string rebuilt;
        size_t next_fragment = 0;
        for (size_t i = 0; i < lines.size(); ++i) {
            if (std::find(oracle.begin(), oracle.end(), i) != oracle.end()) {
                rebuilt += lines[i];
            } else {
                if (next_fragment < result.fragments.size() &&
                    static_cast<size_t>(result.fragments[next_fragment].span.start_line - 1) == i) {
                    rebuilt += result.fragments[next_fragment].text;
                    i = static_cast<size_t>(result.fragments[next_fragment].span.end_line) - 1;
                    ++next_fragment;
                } else {
                    // a line outside every fragment must be blank-only segment; impossible
                    rebuilt += lines[i];
                }
            }
            rebuilt += '\n';
        }
        if (!body.empty() && body.back() != '\n') rebuilt.pop_back();
        CHECK(rebuilt == body);
    }
}
