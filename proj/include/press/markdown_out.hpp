// Serializes AST blocks back to markdown text for notebook markdown cells.
// Citations render as their author-year text and internal references as
// plain text; figure targets are rewritten under assets/.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "press/ast.hpp"
#include "press/bibtex.hpp"
#include "press/html_common.hpp"

namespace press {

namespace md_detail {

inline std::string inlines_to_markdown(const std::vector<Inline>& inlines,
                                       const CitationMap* citations,
                                       const std::string& asset_prefix);

inline std::string code_span_fence(const std::string& text) {
    size_t longest = 0, run = 0;
    for (char c : text) {
        run = c == '`' ? run + 1 : 0;
        longest = std::max(longest, run);
    }
    return std::string(longest + 1, '`');
}

inline std::string inline_to_markdown(const Inline& inl, const CitationMap* citations,
                                      const std::string& asset_prefix) {
    std::string out;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Text>) {
                out = node.text;
            } else if constexpr (std::is_same_v<T, Emph>) {
                out = "*" + inlines_to_markdown(node.children, citations, asset_prefix) + "*";
            } else if constexpr (std::is_same_v<T, Strong>) {
                out = "**" + inlines_to_markdown(node.children, citations, asset_prefix) + "**";
            } else if constexpr (std::is_same_v<T, CodeSpan>) {
                const std::string fence = code_span_fence(node.text);
                const bool pad = !node.text.empty() &&
                                 (node.text.front() == '`' || node.text.back() == '`');
                out = fence + (pad ? " " : "") + node.text + (pad ? " " : "") + fence;
            } else if constexpr (std::is_same_v<T, Link>) {
                const std::string inner =
                    inlines_to_markdown(node.children, citations, asset_prefix);
                out = node.internal ? inner : "[" + inner + "](" + node.url + ")";
            } else if constexpr (std::is_same_v<T, Image>) {
                out = "![" + node.alt + "](" + node.url + ")";
            } else if constexpr (std::is_same_v<T, MathInline>) {
                out = "$" + node.latex + "$";
            } else if constexpr (std::is_same_v<T, CiteRole>) {
                out = "(";
                for (size_t i = 0; i < node.keys.size(); ++i) {
                    if (i) out += "; ";
                    const Citation* c = citations ? citations->find(node.keys[i]) : nullptr;
                    out += c ? c->core_text : node.keys[i];
                }
                out += ")";
            } else if constexpr (std::is_same_v<T, RefRole> || std::is_same_v<T, EqRole>) {
                out = "??";
            }
        },
        inl.data);
    return out;
}

inline std::string inlines_to_markdown(const std::vector<Inline>& inlines,
                                       const CitationMap* citations,
                                       const std::string& asset_prefix) {
    std::string out;
    for (const Inline& inl : inlines) out += inline_to_markdown(inl, citations, asset_prefix);
    return out;
}

inline std::string prefix_lines(const std::string& text, const std::string& prefix) {
    std::string out;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            out += prefix + text.substr(start, i - start);
            if (i != text.size()) out += '\n';
            start = i + 1;
        }
    }
    return out;
}

inline std::string fence_for(const std::string& source) {
    size_t longest = 2, run = 0;
    for (char c : source) {
        run = c == '`' ? run + 1 : 0;
        longest = std::max(longest, run);
    }
    return std::string(std::max<size_t>(3, longest + 1), '`');
}

}  // namespace md_detail

inline std::string blocks_to_markdown(const std::vector<Block>& blocks,
                                      const CitationMap* citations,
                                      const std::string& asset_prefix = "assets/") {
    using namespace md_detail;
    std::vector<std::string> chunks;
    for (const Block& block : blocks) {
        std::string chunk;
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Heading>) {
                    chunk = std::string(static_cast<size_t>(node.level), '#') + " ";
                    if (!node.number.empty()) chunk += node.number + " ";
                    chunk += inlines_to_markdown(node.inlines, citations, asset_prefix);
                } else if constexpr (std::is_same_v<T, Paragraph>) {
                    chunk = inlines_to_markdown(node.inlines, citations, asset_prefix);
                } else if constexpr (std::is_same_v<T, CodeCell>) {
                    // code cells become notebook code cells, never markdown
                } else if constexpr (std::is_same_v<T, CodeBlock>) {
                    const std::string fence = fence_for(node.source);
                    chunk = fence + node.language.value_or("") + "\n" + node.source + "\n" + fence;
                } else if constexpr (std::is_same_v<T, MathBlock>) {
                    chunk = "$$\n" + node.latex + "\n$$";
                } else if constexpr (std::is_same_v<T, FigureDirective>) {
                    chunk = "![" + node.alt + "](" + asset_prefix + asset_rel_path(node.target) + ")";
                    std::string caption = inlines_to_markdown(node.caption, citations, asset_prefix);
                    if (!node.number.empty()) {
                        chunk += "\n\nFigure " + node.number;
                        if (!caption.empty()) chunk += ": " + caption;
                    } else if (!caption.empty()) {
                        chunk += "\n\n" + caption;
                    }
                } else if constexpr (std::is_same_v<T, Admonition>) {
                    std::string title = node.kind;
                    if (!title.empty() && title[0] >= 'a' && title[0] <= 'z')
                        title[0] = static_cast<char>(title[0] - 'a' + 'A');
                    chunk = prefix_lines("**" + title + "**\n\n" +
                                             blocks_to_markdown(node.blocks, citations, asset_prefix),
                                         "> ");
                } else if constexpr (std::is_same_v<T, BibliographyDirective>) {
                    if (citations) {
                        for (const BibEntry& entry : citations->references) {
                            if (!chunk.empty()) chunk += '\n';
                            chunk += "- " + format_reference(entry);
                        }
                    }
                } else if constexpr (std::is_same_v<T, List>) {
                    for (size_t i = 0; i < node.items.size(); ++i) {
                        const std::string marker =
                            node.ordered ? std::to_string(i + 1) + ". " : "- ";
                        const std::string indent(marker.size(), ' ');
                        std::string body =
                            blocks_to_markdown(node.items[i].blocks, citations, asset_prefix);
                        std::string item = marker;
                        size_t start = 0;
                        for (size_t j = 0; j <= body.size(); ++j) {
                            if (j == body.size() || body[j] == '\n') {
                                if (start != 0) item += indent;
                                item += body.substr(start, j - start);
                                if (j != body.size()) item += '\n';
                                start = j + 1;
                            }
                        }
                        if (!chunk.empty()) chunk += node.tight ? "\n" : "\n\n";
                        chunk += item;
                    }
                } else if constexpr (std::is_same_v<T, BlockQuote>) {
                    chunk = prefix_lines(blocks_to_markdown(node.blocks, citations, asset_prefix), "> ");
                } else if constexpr (std::is_same_v<T, Table>) {
                    auto cell_md = [&](const TableCell& cell) {
                        std::string md = inlines_to_markdown(cell, citations, asset_prefix);
                        std::string escaped;
                        for (char c : md) {
                            if (c == '|') escaped += "\\|";
                            else escaped += c;
                        }
                        return escaped;
                    };
                    chunk = "|";
                    for (const TableCell& cell : node.header) chunk += " " + cell_md(cell) + " |";
                    chunk += "\n|";
                    for (size_t i = 0; i < node.header.size(); ++i) chunk += " --- |";
                    for (const auto& row : node.rows) {
                        chunk += "\n|";
                        for (const TableCell& cell : row) chunk += " " + cell_md(cell) + " |";
                    }
                } else if constexpr (std::is_same_v<T, ThematicBreak>) {
                    chunk = "---";
                }
            },
            block.data);
        if (!chunk.empty()) chunks.push_back(std::move(chunk));
    }
    std::string out;
    for (size_t i = 0; i < chunks.size(); ++i) {
        if (i) out += "\n\n";
        out += chunks[i];
    }
    return out;
}

}  // namespace press
