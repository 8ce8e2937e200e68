#include <doctest.h>

#include "../support/html_check.hpp"
#include "../support/misc.hpp"
#include "press/emit_book.hpp"
#include "press/parser.hpp"
#include "press/pipeline.hpp"

using namespace press;

namespace {

struct BookInputs {
    std::vector<Document> docs;
    LabelTable labels;
    CitationMap citations;
    Config config;
};

BookInputs prepare(const std::vector<std::string>& texts,
                   const std::string& bibtex = "") {
    BookInputs inputs;
    inputs.config.title = "Test Book";
    inputs.config.authors = {"A. Tester"};
    for (size_t i = 0; i < texts.size(); ++i) {
        auto parsed = parse_source(texts[i], "doc" + std::to_string(i) + ".md");
        REQUIRE(parsed.diagnostics.empty());
        inputs.docs.push_back(std::move(parsed.document));
    }
    inputs.labels = collect_labels(inputs.docs).table;
    const auto entries = parse_bibtex(bibtex).entries;
    inputs.citations = resolve_citations(inputs.docs, entries).map;
    std::vector<Document> resolved;
    for (const Document& doc : inputs.docs) {
        auto r = resolve_references(filter_for_target(doc, Target::book), inputs.labels);
        REQUIRE(r.diagnostics.empty());
        resolved.push_back(std::move(r.document));
    }
    inputs.docs = std::move(resolved);
    return inputs;
}

}  // namespace

TEST_CASE("render_page: labeled heading carries id and number") {
    auto inputs = prepare({"(sec-x)=\n# X\n"});
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find("<h1 id=\"sec-x\">1&nbsp;X</h1>") != std::string::npos);
}

TEST_CASE("render_page: labeled math block renders passthrough latex with number") {
    auto inputs = prepare({"(eq1)=\n$$E=mc^2$$\n"});
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find("\\[E=mc^2\\]") != std::string::npos);
    CHECK(html.find("id=\"eq1\"") != std::string::npos);
    CHECK(html.find("(1)") != std::string::npos);
}

TEST_CASE("render_page: empty document still yields a valid page") {
    auto inputs = prepare({""});
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    const auto scan = testsupport::scan_html(html);
    INFO(scan.error);
    CHECK(scan.well_formed);
    CHECK(html.find("<main>") != std::string::npos);
    CHECK(html.find("<footer>") != std::string::npos);
}

TEST_CASE("render_page: inline math uses \\( delimiters") {
    auto inputs = prepare({"value $x^2$ here\n"});
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find("\\(x^2\\)") != std::string::npos);
}

TEST_CASE("render_page: hide-input code cell collapses into details") {
    auto inputs = prepare({"```{code-cell} python\n:tags: [hide-input]\n\nsecret()\n```\n"});
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find("<details class=\"code-cell\">") != std::string::npos);
    CHECK(html.find("secret()") != std::string::npos);

    auto shown = prepare({"```{code-cell} python\n\nvisible()\n```\n"});
    const std::string shown_html =
        render_page(shown.docs[0], shown.labels, shown.citations, shown.config);
    CHECK(shown_html.find("<details") == std::string::npos);
    CHECK(shown_html.find("class=\"language-python\"") != std::string::npos);
}

TEST_CASE("render_page: citations link into the references page") {
    auto inputs = prepare({"cite {cite}`k`\n"}, "@book{k, author={A B}, year={2000}, title={T}}");
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find("<a class=\"citation\" href=\"references.html#ref-k\">B, 2000</a>") !=
          std::string::npos);
}

TEST_CASE("render_page: multi-key citations join with semicolons") {
    auto inputs = prepare({"both {cite}`a,b`\n"},
                          "@book{a, author={Ann Alpha}, year={2001}, title={A}}\n"
                          "@book{b, author={Bob Beta and Cy Gamma}, year={2002}, title={B}}");
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find(">Alpha, 2001</a>; <a") != std::string::npos);
    CHECK(html.find(">Beta and Gamma, 2002</a>)") != std::string::npos);
}

TEST_CASE("render_page: bibliography directive renders the reference list in place") {
    auto inputs = prepare({"{cite}`a`\n\n```{bibliography}\n```\n"},
                          "@book{a, author={Ann Alpha}, year={2001}, title={Alpha Book}}");
    const std::string html =
        render_page(inputs.docs[0], inputs.labels, inputs.citations, inputs.config);
    CHECK(html.find("<ul class=\"references\">") != std::string::npos);
    CHECK(html.find("<li id=\"ref-a\">Ann Alpha (2001). Alpha Book.</li>") != std::string::npos);
}

TEST_CASE("build_site: one source yields index, page and references") {
    auto inputs = prepare({"# Only\n"});
    const SiteBundle bundle =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, {});
    REQUIRE(bundle.pages.size() == 3);
    CHECK(bundle.pages[0].path == "index.html");
    CHECK(bundle.pages[1].path == "doc0.html");
    CHECK(bundle.pages[2].path == "references.html");
}

TEST_CASE("build_site: nav lists sources in config order") {
    auto inputs = prepare({"# A\n", "# B\n", "# C\n"});
    const SiteBundle bundle =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, {});
    REQUIRE(bundle.nav.size() == 4);  // three documents + references
    CHECK(bundle.nav[0].title == "A");
    CHECK(bundle.nav[1].title == "B");
    CHECK(bundle.nav[2].title == "C");
    CHECK(bundle.nav[3].path == "references.html");
    // every nav entry points at an existing page
    for (const NavEntry& entry : bundle.nav) {
        bool found = false;
        for (const SitePage& page : bundle.pages) found = found || page.path == entry.path;
        CHECK(found);
    }
}

TEST_CASE("build_site: deterministic byte output") {
    auto inputs = prepare({"# A\n\ntext $m$\n"});
    const SiteBundle a =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, {});
    const SiteBundle b =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, {});
    REQUIRE(a.pages.size() == b.pages.size());
    for (size_t i = 0; i < a.pages.size(); ++i) {
        CHECK(a.pages[i].path == b.pages[i].path);
        CHECK(a.pages[i].html == b.pages[i].html);
    }
}

TEST_CASE("build_site: pages are well-formed and internal anchors resolve") {
    auto inputs = prepare(
        {"(sec-a)=\n# Alpha\n\nSee {ref}`fig-z`.\n",
         "(sec-b)=\n# Beta\n\n```{figure} f.svg\n:name: fig-z\n\nZed\n```\n\nBack to {ref}`sec-a`.\n"});
    std::map<std::string, std::string> assets{{"f.svg", "<svg xmlns='x'/>"}};
    const SiteBundle bundle =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, assets);

    // collect ids per page and audit every internal href
    std::map<std::string, std::set<std::string>> ids_by_page;
    for (const SitePage& page : bundle.pages) {
        const auto scan = testsupport::scan_html(page.html);
        INFO(page.path, ": ", scan.error);
        CHECK(scan.well_formed);
        ids_by_page[page.path] = scan.ids;
    }
    std::set<std::string> all_paths;
    for (const SitePage& page : bundle.pages) all_paths.insert(page.path);
    for (const SiteAsset& asset : bundle.assets) all_paths.insert(asset.path);

    for (const SitePage& page : bundle.pages) {
        const auto scan = testsupport::scan_html(page.html);
        for (const std::string& href : scan.hrefs) {
            if (testsupport::is_absolute_url(href)) continue;
            std::string target = href;
            std::string anchor;
            const auto hash = target.find('#');
            if (hash != std::string::npos) {
                anchor = target.substr(hash + 1);
                target = target.substr(0, hash);
            }
            if (target.empty()) target = page.path;
            INFO("page ", page.path, " href ", href);
            CHECK(all_paths.count(target) == 1);
            if (!anchor.empty()) CHECK(ids_by_page[target].count(anchor) == 1);
        }
    }
}

TEST_CASE("build_site: only configured absolute URLs appear") {
    auto inputs = prepare({"# A\n\n$x$\n"});
    const SiteBundle bundle =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, {});
    for (const SitePage& page : bundle.pages) {
        const auto scan = testsupport::scan_html(page.html);
        for (const std::string& href : scan.hrefs) {
            if (!testsupport::is_absolute_url(href)) continue;
            CHECK(href == inputs.config.math_renderer_url);
        }
    }
}

TEST_CASE("build_site: assets copied under assets/ with rewritten srcs") {
    auto inputs = prepare({"```{figure} figs/p.svg\n:alt: p\n\nP\n```\n"});
    std::map<std::string, std::string> assets{{"figs/p.svg", "<svg xmlns='y'/>"}};
    const SiteBundle bundle =
        build_site(inputs.docs, inputs.labels, inputs.citations, inputs.config, assets);
    REQUIRE(bundle.assets.size() == 1);
    CHECK(bundle.assets[0].path == "assets/figs/p.svg");
    CHECK(bundle.pages[1].html.find("src=\"assets/figs/p.svg\"") != std::string::npos);
}
