// Shared HTML rendering of blocks and inlines. One renderer serves all HTML
// surfaces: plain mode (raw markdown subset, CommonMark-shaped output), book
// pages and slide decks. Math passes through verbatim as \(...\) / \[...\]
// for a client-side renderer.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "press/ast.hpp"
#include "press/bibtex.hpp"
#include "press/filter.hpp"
#include "press/tags.hpp"

namespace press {

enum class RenderMode { plain, book, slides };

struct RenderContext {
    RenderMode mode = RenderMode::plain;
    Target target = Target::book;
    const CitationMap* citations = nullptr;
    const TagSet* fragment_tags = nullptr;  // effective tags for code-cell visibility
    std::string asset_prefix;               // prepended to figure targets
    std::string references_page;            // citation link target in book mode
};

// & < > " escaped in both text and attributes, matching the reference
// implementation's output escaping.
inline std::string escape_html(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string escape_attr(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Normalizes a figure target for use under assets/: lexically normal,
/// forward slashes. Paths escaping the source directory are rejected earlier
/// in the pipeline.
inline std::string asset_rel_path(std::string_view target) {
    const std::filesystem::path p = std::filesystem::path(std::string(target)).lexically_normal();
    return p.generic_string();
}

inline void render_inlines_html(std::string& out, const std::vector<Inline>& inlines,
                                const RenderContext& ctx);

namespace html_detail {

inline void render_citation(std::string& out, const CiteRole& cite, const RenderContext& ctx) {
    out += '(';
    for (size_t i = 0; i < cite.keys.size(); ++i) {
        if (i) out += "; ";
        const std::string& key = cite.keys[i];
        const Citation* citation = ctx.citations ? ctx.citations->find(key) : nullptr;
        if (!citation) {
            out += escape_html(key);
            continue;
        }
        if (ctx.mode == RenderMode::book) {
            out += "<a class=\"citation\" href=\"" +
                   escape_attr(ctx.references_page + "#" + citation->anchor) + "\">" +
                   escape_html(citation->core_text) + "</a>";
        } else {
            out += escape_html(citation->core_text);
        }
    }
    out += ')';
}

}  // namespace html_detail

inline void render_inlines_html(std::string& out, const std::vector<Inline>& inlines,
                                const RenderContext& ctx) {
    for (const Inline& inl : inlines) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Text>) {
                    out += escape_html(node.text);
                } else if constexpr (std::is_same_v<T, Emph>) {
                    out += "<em>";
                    render_inlines_html(out, node.children, ctx);
                    out += "</em>";
                } else if constexpr (std::is_same_v<T, Strong>) {
                    out += "<strong>";
                    render_inlines_html(out, node.children, ctx);
                    out += "</strong>";
                } else if constexpr (std::is_same_v<T, CodeSpan>) {
                    out += "<code>" + escape_html(node.text) + "</code>";
                } else if constexpr (std::is_same_v<T, Link>) {
                    if (node.internal && ctx.mode != RenderMode::book) {
                        render_inlines_html(out, node.children, ctx);  // linkless reference
                    } else {
                        out += "<a href=\"" + escape_attr(node.url) + "\">";
                        render_inlines_html(out, node.children, ctx);
                        out += "</a>";
                    }
                } else if constexpr (std::is_same_v<T, Image>) {
                    out += "<img src=\"" + escape_attr(node.url) + "\" alt=\"" +
                           escape_attr(node.alt) + "\" />";
                } else if constexpr (std::is_same_v<T, MathInline>) {
                    out += "\\(" + escape_html(node.latex) + "\\)";
                } else if constexpr (std::is_same_v<T, CiteRole>) {
                    html_detail::render_citation(out, node, ctx);
                } else if constexpr (std::is_same_v<T, RefRole> || std::is_same_v<T, EqRole>) {
                    out += "??";  // unresolved role; resolve_references reports these
                }
            },
            inl.data);
    }
}

inline void render_blocks_html(std::string& out, const std::vector<Block>& blocks,
                               const RenderContext& ctx);
inline void render_block_html(std::string& out, const Block& block, const RenderContext& ctx);

namespace html_detail {

inline void render_list_item(std::string& out, const ListItem& item, bool tight,
                             const RenderContext& ctx) {
    out += "<li>";
    bool first = true;
    for (const Block& block : item.blocks) {
        const auto* para = std::get_if<Paragraph>(&block.data);
        if (tight && para) {
            if (!first) out += '\n';
            render_inlines_html(out, para->inlines, ctx);
        } else {
            out += '\n';
            render_block_html(out, block, ctx);
            if (!out.empty() && out.back() == '\n') out.pop_back();
        }
        first = false;
    }
    out += "</li>\n";
}

inline std::string admonition_title(const std::string& kind) {
    if (kind.empty()) return "Note";
    std::string title = kind;
    if (title[0] >= 'a' && title[0] <= 'z') title[0] = static_cast<char>(title[0] - 'a' + 'A');
    return title;
}

inline void render_reference_list(std::string& out, const RenderContext& ctx) {
    if (!ctx.citations || ctx.citations->references.empty()) return;
    out += "<ul class=\"references\">\n";
    for (const BibEntry& entry : ctx.citations->references) {
        out += "<li id=\"ref-" + escape_attr(entry.key) + "\">" +
               escape_html(format_reference(entry)) + "</li>\n";
    }
    out += "</ul>\n";
}

}  // namespace html_detail

inline void render_block_html(std::string& out, const Block& block, const RenderContext& ctx) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Heading>) {
                const std::string tag = "h" + std::to_string(node.level);
                out += "<" + tag;
                if (node.label) out += " id=\"" + escape_attr(*node.label) + "\"";
                out += ">";
                if (!node.number.empty() && ctx.mode != RenderMode::plain)
                    out += node.number + "&nbsp;";
                render_inlines_html(out, node.inlines, ctx);
                out += "</" + tag + ">\n";
            } else if constexpr (std::is_same_v<T, Paragraph>) {
                out += "<p>";
                render_inlines_html(out, node.inlines, ctx);
                out += "</p>\n";
            } else if constexpr (std::is_same_v<T, CodeCell>) {
                const TagSet effective =
                    ctx.fragment_tags ? ctx.fragment_tags->united(node.tags) : node.tags;
                const Visibility vis = visibility(effective, ctx.target);
                if (vis == Visibility::input_hidden && ctx.mode == RenderMode::slides)
                    return;  // fully hidden on slides
                std::string pre = "<pre><code class=\"language-" +
                                  escape_attr(node.language) + "\">" + escape_html(node.source);
                if (!node.source.empty()) pre += '\n';
                pre += "</code></pre>\n";
                if (vis == Visibility::input_hidden) {
                    out += "<details class=\"code-cell\">\n<summary>Show code</summary>\n" + pre +
                           "</details>\n";
                } else {
                    out += "<div class=\"code-cell\">\n" + pre + "</div>\n";
                }
            } else if constexpr (std::is_same_v<T, CodeBlock>) {
                out += "<pre><code";
                if (node.language && !node.language->empty())
                    out += " class=\"language-" + escape_attr(*node.language) + "\"";
                out += ">" + escape_html(node.source);
                if (!node.source.empty()) out += '\n';
                out += "</code></pre>\n";
            } else if constexpr (std::is_same_v<T, MathBlock>) {
                out += "<div class=\"math-block\"";
                if (node.label) out += " id=\"" + escape_attr(*node.label) + "\"";
                out += ">\\[" + escape_html(node.latex) + "\\]";
                if (!node.number.empty()) out += "<span class=\"eqno\">(" + node.number + ")</span>";
                out += "</div>\n";
            } else if constexpr (std::is_same_v<T, FigureDirective>) {
                out += "<figure";
                if (node.label) out += " id=\"" + escape_attr(*node.label) + "\"";
                out += ">\n<img src=\"" +
                       escape_attr(ctx.asset_prefix + asset_rel_path(node.target)) + "\" alt=\"" +
                       escape_attr(node.alt) + "\" />\n<figcaption>";
                if (!node.number.empty()) {
                    out += "Figure " + node.number;
                    if (!node.caption.empty()) out += ": ";
                }
                render_inlines_html(out, node.caption, ctx);
                out += "</figcaption>\n</figure>\n";
            } else if constexpr (std::is_same_v<T, Admonition>) {
                out += "<div class=\"admonition\">\n<p class=\"admonition-title\">" +
                       escape_html(html_detail::admonition_title(node.kind)) + "</p>\n";
                render_blocks_html(out, node.blocks, ctx);
                out += "</div>\n";
            } else if constexpr (std::is_same_v<T, BibliographyDirective>) {
                html_detail::render_reference_list(out, ctx);
            } else if constexpr (std::is_same_v<T, List>) {
                out += node.ordered ? "<ol>\n" : "<ul>\n";
                for (const ListItem& item : node.items)
                    html_detail::render_list_item(out, item, node.tight, ctx);
                out += node.ordered ? "</ol>\n" : "</ul>\n";
            } else if constexpr (std::is_same_v<T, BlockQuote>) {
                out += "<blockquote>\n";
                render_blocks_html(out, node.blocks, ctx);
                out += "</blockquote>\n";
            } else if constexpr (std::is_same_v<T, Table>) {
                out += "<table>\n<thead>\n<tr>\n";
                for (const TableCell& cell : node.header) {
                    out += "<th>";
                    render_inlines_html(out, cell, ctx);
                    out += "</th>\n";
                }
                out += "</tr>\n</thead>\n";
                if (!node.rows.empty()) {
                    out += "<tbody>\n";
                    for (const auto& row : node.rows) {
                        out += "<tr>\n";
                        for (const TableCell& cell : row) {
                            out += "<td>";
                            render_inlines_html(out, cell, ctx);
                            out += "</td>\n";
                        }
                        out += "</tr>\n";
                    }
                    out += "</tbody>\n";
                }
                out += "</table>\n";
            } else if constexpr (std::is_same_v<T, ThematicBreak>) {
                out += "<hr />\n";
            }
        },
        block.data);
}

inline void render_blocks_html(std::string& out, const std::vector<Block>& blocks,
                               const RenderContext& ctx) {
    for (const Block& block : blocks) render_block_html(out, block, ctx);
}

/// Renders a block list the way the reference CommonMark implementation
/// shapes its output: no numbering, no anchors, no target-specific behavior.
inline std::string render_plain_html(const std::vector<Block>& blocks) {
    RenderContext ctx;
    ctx.mode = RenderMode::plain;
    std::string out;
    render_blocks_html(out, blocks, ctx);
    return out;
}

}  // namespace press
