// Static HTML book: one page per source file plus index.html (title page and
// nav) and references.html. Byte-deterministic for equal inputs; math and
// the embedded stylesheet are the only absolute URLs besides the configured
// renderer.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "press/ast.hpp"
#include "press/bibtex.hpp"
#include "press/config.hpp"
#include "press/html_common.hpp"
#include "press/xref.hpp"

namespace press {

struct SitePage {
    std::string path;  // relative, e.g. "intro.html"
    std::string html;
};

struct SiteAsset {
    std::string path;  // relative, e.g. "assets/figures/decay.svg"
    std::string bytes;
};

struct NavEntry {
    std::string title;
    std::string path;
};

struct SiteBundle {
    std::vector<SitePage> pages;
    std::vector<SiteAsset> assets;
    std::vector<NavEntry> nav;
};

namespace book_detail {

inline constexpr const char* stylesheet = R"css(
:root { --ink: #1c1e21; --paper: #ffffff; --accent: #0b5394; --muted: #667; }
* { box-sizing: border-box; }
body { margin: 0; font: 17px/1.6 Georgia, 'Times New Roman', serif; color: var(--ink); background: var(--paper); }
nav.sidebar { position: fixed; top: 0; left: 0; bottom: 0; width: 230px; overflow-y: auto;
  padding: 1.5rem 1rem; border-right: 1px solid #ddd; font-family: system-ui, sans-serif; font-size: 0.9rem; }
nav.sidebar ul { list-style: none; padding-left: 0; }
nav.sidebar li { margin: 0.3rem 0; }
nav.sidebar a { color: var(--accent); text-decoration: none; }
main { max-width: 46rem; margin: 0 auto; padding: 2rem 1.5rem 4rem; }
body.with-nav main { margin-left: 250px; }
h1, h2, h3 { font-family: system-ui, sans-serif; line-height: 1.25; }
pre { background: #f6f8fa; padding: 0.8rem; overflow-x: auto; border-radius: 4px; }
code { font-family: 'SF Mono', Consolas, monospace; font-size: 0.88em; }
figure { margin: 1.5rem 0; text-align: center; }
figure img { max-width: 100%; }
figcaption { font-size: 0.9rem; color: var(--muted); margin-top: 0.5rem; }
.math-block { margin: 1rem 0; position: relative; }
.math-block .eqno { position: absolute; right: 0; top: 50%; transform: translateY(-50%); color: var(--muted); }
.admonition { border-left: 4px solid var(--accent); background: #f0f6fc; padding: 0.5rem 1rem; margin: 1rem 0; }
.admonition-title { font-weight: bold; font-family: system-ui, sans-serif; }
details.code-cell summary { cursor: pointer; color: var(--muted); font-family: system-ui, sans-serif; font-size: 0.85rem; }
table { border-collapse: collapse; margin: 1rem 0; }
th, td { border: 1px solid #ccc; padding: 0.35rem 0.7rem; }
ul.references { padding-left: 1.2rem; }
footer { color: var(--muted); font-size: 0.85rem; border-top: 1px solid #ddd; margin-top: 3rem; padding-top: 1rem; }
blockquote { border-left: 3px solid #ccc; margin-left: 0; padding-left: 1rem; color: #333; }
)css";

inline std::string nav_html(const std::vector<NavEntry>& nav) {
    std::string out = "<nav class=\"sidebar\">\n<ul>\n";
    for (const NavEntry& entry : nav) {
        out += "<li><a href=\"" + escape_attr(entry.path) + "\">" + escape_html(entry.title) +
               "</a></li>\n";
    }
    out += "</ul>\n</nav>\n";
    return out;
}

inline std::string assemble_page(const std::string& title, const std::string& nav,
                                 const std::string& body, const Config& config) {
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\" />\n";
    out += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\" />\n";
    out += "<title>" + escape_html(title) + "</title>\n";
    out += "<style>" + std::string(stylesheet) + "</style>\n";
    if (!config.math_renderer_url.empty())
        out += "<script defer src=\"" + escape_attr(config.math_renderer_url) + "\"></script>\n";
    out += "</head>\n<body" + std::string(nav.empty() ? "" : " class=\"with-nav\"") + ">\n";
    out += nav;
    out += "<main>\n" + body + "</main>\n";
    out += "<footer>\n<p>Built with publish.</p>\n</footer>\n</body>\n</html>\n";
    return out;
}

/// Page title: frontmatter title, else the first heading, else the stem.
inline std::string document_title(const Document& doc) {
    if (doc.frontmatter.title) return *doc.frontmatter.title;
    for (const Fragment& fragment : doc.fragments)
        for (const Block& block : fragment.blocks)
            if (const auto* heading = std::get_if<Heading>(&block.data))
                return plain_text(heading->inlines);
    return xref_detail::source_stem(doc.source_name);
}

}  // namespace book_detail

/// One content page. The document must already be filtered for the book
/// target and reference-resolved; diagnostics were all surfaced earlier.
inline std::string render_page(const Document& document, const LabelTable&,
                               const CitationMap& citations, const Config& config,
                               const std::vector<NavEntry>& nav = {}) {
    RenderContext ctx;
    ctx.mode = RenderMode::book;
    ctx.target = Target::book;
    ctx.citations = &citations;
    ctx.asset_prefix = "assets/";
    ctx.references_page = "references.html";

    std::string body;
    for (const Fragment& fragment : document.fragments) {
        ctx.fragment_tags = &fragment.tags;
        render_blocks_html(body, fragment.blocks, ctx);
    }
    ctx.fragment_tags = nullptr;
    return book_detail::assemble_page(book_detail::document_title(document),
                                      book_detail::nav_html(nav), body, config);
}

/// Assembles the whole site. `assets` maps relative asset paths (as produced
/// by asset_rel_path) to their file bytes, preloaded by the pipeline.
inline SiteBundle build_site(const std::vector<Document>& documents,
                             const LabelTable& labels, const CitationMap& citations,
                             const Config& config,
                             const std::map<std::string, std::string>& assets) {
    SiteBundle bundle;

    for (const Document& doc : documents) {
        bundle.nav.push_back(NavEntry{book_detail::document_title(doc),
                                      xref_detail::source_stem(doc.source_name) + ".html"});
    }
    bundle.nav.push_back(NavEntry{"References", "references.html"});

    // index: title page
    {
        std::string body = "<h1>" +
                           escape_html(config.title.empty()
                                           ? (documents.empty() ? "Untitled"
                                                                : book_detail::document_title(documents.front()))
                                           : config.title) +
                           "</h1>\n";
        if (!config.authors.empty()) {
            body += "<p class=\"authors\">";
            for (size_t i = 0; i < config.authors.size(); ++i) {
                if (i) body += ", ";
                body += escape_html(config.authors[i]);
            }
            body += "</p>\n";
        }
        body += "<ul>\n";
        for (const NavEntry& entry : bundle.nav)
            body += "<li><a href=\"" + escape_attr(entry.path) + "\">" +
                    escape_html(entry.title) + "</a></li>\n";
        body += "</ul>\n";
        bundle.pages.push_back(SitePage{
            "index.html",
            book_detail::assemble_page(config.title.empty() ? "Index" : config.title,
                                       book_detail::nav_html(bundle.nav), body, config)});
    }

    for (const Document& doc : documents) {
        bundle.pages.push_back(
            SitePage{xref_detail::source_stem(doc.source_name) + ".html",
                     render_page(doc, labels, citations, config, bundle.nav)});
    }

    {
        RenderContext ctx;
        ctx.mode = RenderMode::book;
        ctx.citations = &citations;
        std::string body = "<h1>References</h1>\n";
        if (citations.references.empty()) body += "<p>No references.</p>\n";
        else html_detail::render_reference_list(body, ctx);
        bundle.pages.push_back(SitePage{
            "references.html",
            book_detail::assemble_page("References", book_detail::nav_html(bundle.nav), body,
                                       config)});
    }

    for (const auto& [path, bytes] : assets)
        bundle.assets.push_back(SiteAsset{"assets/" + path, bytes});
    return bundle;
}

}  // namespace press
