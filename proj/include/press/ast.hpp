// Document object model shared by the parser, filter, resolver and emitters.
//
// All types are plain values, immutable by convention after parsing: the
// pipeline passes copies between stages and never mutates shared state, so
// documents are safe to hand to concurrent emitters.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "press/diagnostics.hpp"
#include "press/tags.hpp"

namespace press {

struct Inline;

struct Text {
    std::string text;
};

struct Emph {
    std::vector<Inline> children;
};

struct Strong {
    std::vector<Inline> children;
};

struct CodeSpan {
    std::string text;
};

/// `internal` marks links synthesized from {ref}/{eq} roles: the book emits
/// them as anchors, notebook and slides render just the text.
struct Link {
    std::string url;
    std::vector<Inline> children;
    bool internal = false;
};

struct Image {
    std::string url;
    std::string alt;
};

struct MathInline {
    std::string latex;
};

struct CiteRole {
    std::vector<std::string> keys;  // non-empty
};

struct RefRole {
    std::string label;
};

struct EqRole {
    std::string label;
};

using InlineData = std::variant<Text, Emph, Strong, CodeSpan, Link, Image, MathInline,
                                CiteRole, RefRole, EqRole>;

struct Inline {
    InlineData data;
    SourceSpan span;
};

inline Inline make_text(std::string text, SourceSpan span = {}) {
    return Inline{Text{std::move(text)}, span};
}

struct Block;

/// `number` fields below are assigned by collect_labels and are empty until
/// then; emitters render them verbatim ("2", "1.3", ...).
struct Heading {
    int level = 1;  // 1..6
    std::vector<Inline> inlines;
    std::optional<std::string> label;
    std::string number;
};

struct Paragraph {
    std::vector<Inline> inlines;
};

/// Executable cell. `tags` come from the directive's :tags: option; other
/// options are kept verbatim.
struct CodeCell {
    std::string language;  // non-empty
    std::string source;
    TagSet tags;
    std::map<std::string, std::string> options;
};

struct CodeBlock {
    std::optional<std::string> language;
    std::string source;
};

struct MathBlock {
    std::string latex;
    std::optional<std::string> label;
    std::string number;
};

struct FigureDirective {
    std::string target;  // image path, relative to the source file
    std::string alt;
    std::optional<std::string> label;
    std::vector<Inline> caption;
    std::string number;
};

struct Admonition {
    std::string kind;  // note, warning, or a custom title
    std::vector<Block> blocks;
};

/// Placement marker: the resolved reference list is rendered here.
struct BibliographyDirective {};

struct ListItem {
    std::vector<Block> blocks;
};

struct List {
    bool ordered = false;
    bool tight = true;
    std::vector<ListItem> items;
};

struct BlockQuote {
    std::vector<Block> blocks;
};

using TableCell = std::vector<Inline>;

struct Table {
    std::vector<TableCell> header;
    std::vector<std::vector<TableCell>> rows;
};

struct ThematicBreak {};

using BlockData = std::variant<Heading, Paragraph, CodeCell, CodeBlock, MathBlock,
                               FigureDirective, Admonition, BibliographyDirective, List,
                               BlockQuote, Table, ThematicBreak>;

struct Block {
    BlockData data;
    SourceSpan span;
};

/// A tagged run of blocks: the unit of per-target inclusion and slide
/// assignment. `blocks` is non-empty for every fragment the parser retains.
/// `source_name` is set only on fragments of merged multi-file documents
/// (the deck build), so diagnostics keep pointing at the right file.
struct Fragment {
    std::vector<Block> blocks;
    TagSet tags;
    std::optional<SlideType> slide_type;
    SourceSpan span;
    std::string source_name;
};

struct FrontMatter {
    std::optional<std::string> title;
    std::vector<std::string> authors;
    std::map<std::string, std::string> extra;  // unknown keys, verbatim

    bool empty() const { return !title && authors.empty() && extra.empty(); }
};

struct Document {
    FrontMatter frontmatter;
    std::vector<Fragment> fragments;
    std::string source_name;
};

// --- small traversal helpers -------------------------------------------------

/// Concatenated literal text of an inline run (labels in nav, sort keys, alt
/// fallbacks). Roles contribute nothing; code spans and math contribute their
/// raw content.
inline std::string plain_text(const std::vector<Inline>& inlines) {
    std::string out;
    for (const Inline& inl : inlines) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Text>) {
                    out += node.text;
                } else if constexpr (std::is_same_v<T, CodeSpan>) {
                    out += node.text;
                } else if constexpr (std::is_same_v<T, MathInline>) {
                    out += node.latex;
                } else if constexpr (std::is_same_v<T, Emph> || std::is_same_v<T, Strong> ||
                                     std::is_same_v<T, Link>) {
                    out += plain_text(node.children);
                } else if constexpr (std::is_same_v<T, Image>) {
                    out += node.alt;
                }
            },
            inl.data);
    }
    return out;
}

template <typename Fn>
void for_each_inline(const std::vector<Inline>& inlines, Fn&& fn) {
    for (const Inline& inl : inlines) {
        fn(inl);
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Emph> || std::is_same_v<T, Strong> ||
                              std::is_same_v<T, Link>) {
                    for_each_inline(node.children, fn);
                }
            },
            inl.data);
    }
}

template <typename Fn>
void for_each_block(const std::vector<Block>& blocks, Fn&& fn) {
    for (const Block& block : blocks) {
        fn(block);
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Admonition> || std::is_same_v<T, BlockQuote>) {
                    for_each_block(node.blocks, fn);
                } else if constexpr (std::is_same_v<T, List>) {
                    for (const ListItem& item : node.items) for_each_block(item.blocks, fn);
                }
            },
            block.data);
    }
}

template <typename Fn>
void for_each_block(const Document& doc, Fn&& fn) {
    for (const Fragment& fragment : doc.fragments) for_each_block(fragment.blocks, fn);
}

/// Visits every inline in the document, including those nested in captions,
/// table cells, admonitions, quotes and list items.
template <typename Fn>
void for_each_inline(const Document& doc, Fn&& fn) {
    for_each_block(doc, [&](const Block& block) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Heading> || std::is_same_v<T, Paragraph>) {
                    for_each_inline(node.inlines, fn);
                } else if constexpr (std::is_same_v<T, FigureDirective>) {
                    for_each_inline(node.caption, fn);
                } else if constexpr (std::is_same_v<T, Table>) {
                    for (const TableCell& cell : node.header) for_each_inline(cell, fn);
                    for (const auto& row : node.rows)
                        for (const TableCell& cell : row) for_each_inline(cell, fn);
                }
            },
            block.data);
    });
}

}  // namespace press
