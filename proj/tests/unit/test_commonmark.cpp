// CommonMark-subset conformance: the curated corpus pairs markdown with the
// reference implementation's HTML; rendered output must match modulo
// insignificant whitespace.
#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "../support/html_check.hpp"
#include "../support/misc.hpp"
#include "press/html_common.hpp"
#include "press/parse_blocks.hpp"

using namespace press;

namespace {

struct CorpusExample {
    std::string name;
    std::string markdown;
    std::string html;
};

std::vector<CorpusExample> load_corpus() {
    const std::string text =
        testsupport::read_file(std::string(PRESS_FIXTURES_DIR) + "/commonmark_corpus.txt");
    std::vector<CorpusExample> examples;
    CorpusExample current;
    int state = 0;  // 0 outside, 1 in markdown, 2 in html
    std::string line;
    std::istringstream in(text);
    auto strip_last_newline = [](std::string& s) {
        if (!s.empty() && s.back() == '\n') s.pop_back();
    };
    while (std::getline(in, line)) {
        if (line.rfind("@@@ example ", 0) == 0) {
            current = CorpusExample{};
            current.name = line.substr(12);
            state = 1;
        } else if (line == "@@@ html") {
            strip_last_newline(current.markdown);
            state = 2;
        } else if (line == "@@@ end") {
            strip_last_newline(current.html);
            examples.push_back(current);
            state = 0;
        } else if (state == 1) {
            current.markdown += line + "\n";
        } else if (state == 2) {
            current.html += line + "\n";
        }
    }
    return examples;
}

}  // namespace

TEST_CASE("commonmark conformance corpus passes completely") {
    const auto examples = load_corpus();
    REQUIRE(examples.size() >= 50);
    int failures = 0;
    for (const CorpusExample& example : examples) {
        const auto parsed = parse_blocks(example.markdown);
        const std::string rendered = render_plain_html(parsed.blocks);
        const std::string got = testsupport::normalize_html(rendered);
        const std::string want = testsupport::normalize_html(example.html);
        INFO("example: ", example.name, "\nmarkdown:\n", example.markdown, "\nwant: ", want,
             "\ngot:  ", got);
        CHECK(got == want);
        if (got != want) ++failures;
    }
    CHECK(failures == 0);
}
