#include <doctest.h>

#include <set>

#include "../support/json_schema.hpp"
#include "../support/misc.hpp"
#include "press/emit_notebook.hpp"
#include "press/filter.hpp"
#include "press/parser.hpp"
#include "press/xref.hpp"

#include <json.hpp>

using namespace press;

namespace {

Config test_config() {
    Config config;
    config.kernel_name = "python3";
    config.kernel_language = "python";
    return config;
}

Document notebook_doc(const std::string& text) {
    auto parsed = parse_source(text, "nb.md");
    REQUIRE(parsed.diagnostics.empty());
    std::vector<Document> docs{parsed.document};
    const auto labels = collect_labels(docs);
    auto resolved = resolve_references(filter_for_target(docs[0], Target::notebook), labels.table);
    return resolved.document;
}

testsupport::SchemaValidator& schema() {
    static testsupport::SchemaValidator validator(nlohmann::json::parse(testsupport::read_file(
        std::string(PRESS_FIXTURES_DIR) + "/nbformat.v4.5.schema.json")));
    return validator;
}

}  // namespace

TEST_CASE("to_notebook: one markdown cell per prose fragment") {
    const Notebook nb = to_notebook(notebook_doc("just a paragraph\n"), test_config(), {});
    REQUIRE(nb.cells.size() == 1);
    CHECK(nb.cells[0].cell_type == Cell::Type::markdown);
    CHECK(nb.cells[0].source == "just a paragraph");
}

TEST_CASE("to_notebook: prose then code keeps order") {
    const Notebook nb = to_notebook(
        notebook_doc("para\n\n```{code-cell} python\nx = 1\n```\n"), test_config(), {});
    REQUIRE(nb.cells.size() == 2);
    CHECK(nb.cells[0].cell_type == Cell::Type::markdown);
    CHECK(nb.cells[1].cell_type == Cell::Type::code);
    CHECK(nb.cells[1].source == "x = 1");
}

TEST_CASE("to_notebook: hide-input tag passes through as metadata") {
    const Notebook nb = to_notebook(
        notebook_doc("```{code-cell} python\n:tags: [hide-input]\n\ny = 2\n```\n"),
        test_config(), {});
    REQUIRE(nb.cells.size() == 1);
    const std::vector<std::string> expected = {"hide-input"};
    CHECK(nb.cells[0].tags == expected);
}

TEST_CASE("to_notebook: fragment tags union with cell tags; slide type recorded") {
    const Notebook nb = to_notebook(
        notebook_doc("+++ {\"tags\": [\"x-frag\"], \"slide\": \"slide\"}\n\nintro\n\n"
                     "```{code-cell} python\n:tags: [hide-output]\n\nz = 3\n```\n"),
        test_config(), {});
    REQUIRE(nb.cells.size() == 2);
    const std::vector<std::string> md_tags = {"x-frag"};
    CHECK(nb.cells[0].tags == md_tags);
    CHECK(nb.cells[0].slide_type == SlideType::slide);
    const std::vector<std::string> code_tags = {"hide-output", "x-frag"};
    CHECK(nb.cells[1].tags == code_tags);
    CHECK(nb.cells[1].slide_type == SlideType::slide);
}

TEST_CASE("serialize: minimal empty notebook matches the format constants") {
    Notebook nb;
    nb.kernel_name = "python3";
    nb.kernel_language = "python";
    const std::string bytes = serialize_notebook(nb);
    const auto json = nlohmann::json::parse(bytes);
    CHECK(json["cells"].is_array());
    CHECK(json["cells"].empty());
    CHECK(json["nbformat"] == 4);
    CHECK(json["nbformat_minor"] == 5);
    std::string error;
    const bool valid = schema().validate(json, &error);
    INFO(error);
    CHECK(valid);
}

TEST_CASE("serialize: identical notebooks give identical bytes") {
    const Document doc = notebook_doc("a *b*\n\n```{code-cell} python\nprint(1)\n```\n");
    const Notebook nb = to_notebook(doc, test_config(), {});
    CHECK(serialize_notebook(nb) == serialize_notebook(nb));
}

TEST_CASE("serialize: cell ids are unique, hash-derived and well-formed") {
    const Notebook nb = to_notebook(
        notebook_doc("one\n+++\ntwo\n+++\n```{code-cell} python\nsame\n```\n+++\n"
                     "```{code-cell} python\nsame\n```\n"),
        test_config(), {});
    const std::string bytes = serialize_notebook(nb);
    const auto json = nlohmann::json::parse(bytes);
    std::set<std::string> ids;
    for (const auto& cell : json["cells"]) {
        const std::string id = cell["id"].get<std::string>();
        CHECK(id.size() == 8);
        CHECK(id.find_first_not_of("0123456789abcdef") == std::string::npos);
        ids.insert(id);
    }
    CHECK(ids.size() == json["cells"].size());
}

TEST_CASE("serialize: trailing newline, LF only, 1-space indent") {
    Notebook nb;
    nb.kernel_name = "k";
    nb.kernel_language = "l";
    const std::string bytes = serialize_notebook(nb);
    CHECK(bytes.back() == '\n');
    CHECK(bytes.find('\r') == std::string::npos);
    CHECK(bytes.find("\n \"cells\"") != std::string::npos);
}

TEST_CASE("notebook: emitted files validate against the vendored schema") {
    const std::vector<std::string> sources = {
        "",  // empty document
        "# H\n\npara with $m$\n",
        "+++ {\"tags\": [\"hide-input\"], \"slide\": \"notes\"}\n\nnotes prose\n\n"
        "```{code-cell} python\n:tags: [x-mine]\n\nimport sys\nprint(sys.path)\n```\n",
        "| a | b |\n| - | - |\n| 1 | 2 |\n\n> quoted\n\n- l1\n- l2\n",
    };
    for (const std::string& source : sources) {
        const Notebook nb = to_notebook(notebook_doc(source), test_config(), {});
        const auto json = nlohmann::json::parse(serialize_notebook(nb));
        std::string error;
        const bool valid = schema().validate(json, &error);
        INFO("source: ", source, "\nerror: ", error);
        CHECK(valid);
    }
}

// Round-trip invariant: a minimal ipynb reader recovers every code cell's
// source exactly.
TEST_CASE("notebook: reader recovers code cell sources byte-exactly") {
    const std::string text =
        "intro\n\n```{code-cell} python\nline1\n\nline3 = \"x\"\n```\n+++\n"
        "```{code-cell} prolog\nparent(X, Y) :- father(X, Y).\n```\n";
    const Document doc = notebook_doc(text);
    std::vector<std::string> original_sources;
    for_each_block(doc, [&](const Block& block) {
        if (const auto* cell = std::get_if<CodeCell>(&block.data))
            original_sources.push_back(cell->source);
    });
    REQUIRE(original_sources.size() == 2);

    const auto json =
        nlohmann::json::parse(serialize_notebook(to_notebook(doc, test_config(), {})));
    std::vector<std::string> recovered;
    for (const auto& cell : json["cells"]) {
        if (cell["cell_type"] != "code") continue;
        std::string source;
        for (const auto& line : cell["source"]) source += line.get<std::string>();
        recovered.push_back(source);
        CHECK(cell["execution_count"].is_null());
        CHECK(cell["outputs"].empty());
    }
    CHECK(recovered == original_sources);
}

// Cell count = fragments with prose + number of code cells.
TEST_CASE("notebook: cell count formula holds") {
    const std::string text =
        "p1\n+++\n```{code-cell} python\na\n```\n+++\np2\n\n```{code-cell} python\nb\n```\n"
        "\n```{code-cell} python\nc\n```\n+++ {\"tags\": [\"skip-notebook\"]}\nect\n";
    const Document doc = notebook_doc(text);
    size_t prose_fragments = 0;
    size_t code_cells = 0;
    for (const Fragment& fragment : doc.fragments) {
        bool prose = false;
        for (const Block& block : fragment.blocks) {
            if (std::holds_alternative<CodeCell>(block.data)) ++code_cells;
            else prose = true;
        }
        if (prose) ++prose_fragments;
    }
    const Notebook nb = to_notebook(doc, test_config(), {});
    CHECK(nb.cells.size() == prose_fragments + code_cells);
    CHECK(nb.cells.size() == 3 + 2);  // hand count: p1, code a, p2, codes b and c
}

TEST_CASE("notebook: markdown serialization shapes") {
    const Document doc = notebook_doc(
        "## Section\n\n*em* and `code` and $x$\n\n> quoted line\n\n- item one\n- item two\n\n"
        "| a | b |\n| - | - |\n| 1 | 2 |\n\n$$y = z$$\n");
    const Notebook nb = to_notebook(doc, test_config(), {});
    REQUIRE(nb.cells.size() == 1);
    const std::string& md = nb.cells[0].source;
    CHECK(md.find("## Section") != std::string::npos);
    CHECK(md.find("*em* and `code` and $x$") != std::string::npos);
    CHECK(md.find("> quoted line") != std::string::npos);
    CHECK(md.find("- item one\n- item two") != std::string::npos);
    CHECK(md.find("| a | b |\n| --- | --- |\n| 1 | 2 |") != std::string::npos);
    CHECK(md.find("$$\ny = z\n$$") != std::string::npos);
}

TEST_CASE("notebook: bibliography directive becomes a reference list") {
    const auto entries =
        parse_bibtex("@book{a, author={Ann Alpha}, year={2001}, title={Alpha Book}}");
    auto parsed = parse_source("cite {cite}`a`\n\n```{bibliography}\n```\n", "nb.md");
    std::vector<Document> docs{parsed.document};
    const auto citations = resolve_citations(docs, entries.entries);
    REQUIRE(citations.diagnostics.empty());
    const Notebook nb =
        to_notebook(filter_for_target(docs[0], Target::notebook), test_config(), citations.map);
    REQUIRE(nb.cells.size() == 1);
    CHECK(nb.cells[0].source.find("cite (Alpha, 2001)") != std::string::npos);
    CHECK(nb.cells[0].source.find("- Ann Alpha (2001). Alpha Book.") != std::string::npos);
}

TEST_CASE("notebook: kernel metadata from config") {
    Config config;
    config.kernel_name = "mykernel";
    config.kernel_language = "prolog";
    const auto json = nlohmann::json::parse(
        serialize_notebook(to_notebook(notebook_doc("x\n"), config, {})));
    CHECK(json["metadata"]["kernelspec"]["name"] == "mykernel");
    CHECK(json["metadata"]["kernelspec"]["display_name"] == "mykernel");
    CHECK(json["metadata"]["language_info"]["name"] == "prolog");
}
