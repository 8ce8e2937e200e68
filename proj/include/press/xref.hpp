// Label collection and reference resolution. Numbering runs once, over the
// unfiltered documents in build order, so every target shows identical
// numbers: H1 chapters 1,2,...; H2 as x.y; figures and labeled equations
// numbered globally. Inserting unlabeled prose never shifts a number.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "press/ast.hpp"
#include "press/diagnostics.hpp"

namespace press {

enum class LabelKind { section, figure, equation };

inline const char* label_kind_name(LabelKind k) {
    switch (k) {
    case LabelKind::section: return "section";
    case LabelKind::figure: return "figure";
    case LabelKind::equation: return "equation";
    }
    return "section";
}

struct LabelEntry {
    LabelKind kind = LabelKind::section;
    std::string number;          // dotted, e.g. "2" or "1.3"
    std::string anchor;          // equals the label text verbatim
    std::string page_stem;       // source stem owning the label (book hrefs)
    std::vector<Inline> title;   // heading inlines; empty for figures/equations
};

struct LabelTable {
    std::map<std::string, LabelEntry> by_label;

    const LabelEntry* find(const std::string& label) const {
        const auto it = by_label.find(label);
        return it == by_label.end() ? nullptr : &it->second;
    }
};

struct CollectLabelsResult {
    LabelTable table;
    std::vector<Diagnostic> diagnostics;
};

namespace xref_detail {

inline std::string source_stem(const std::string& source_name) {
    std::string stem = source_name;
    const auto slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    return stem;
}

}  // namespace xref_detail

/// Assigns numbers in document order and registers labels. Duplicate labels
/// raise an error; the first registration wins and the loser's label is
/// cleared so emitted anchors stay unique. Mutates the documents (number
/// annotations) — run once, before filtering.
inline CollectLabelsResult collect_labels(std::vector<Document>& documents) {
    CollectLabelsResult result;
    int h1 = 0;
    int h2 = 0;
    int figure = 0;
    int equation = 0;

    for (Document& doc : documents) {
        const std::string stem = xref_detail::source_stem(doc.source_name);
        auto registre = [&](std::optional<std::string>& label, LabelKind kind,
                            const std::string& number, const std::vector<Inline>& title,
                            SourceSpan span) {
            if (!label) return;
            if (result.table.by_label.count(*label)) {
                Diagnostic d = make_error(
                    "duplicate-label", "label \"" + *label + "\" is already defined", span);
                d.source = doc.source_name;
                result.diagnostics.push_back(std::move(d));
                label.reset();
                return;
            }
            LabelEntry entry;
            entry.kind = kind;
            entry.number = number;
            entry.anchor = *label;
            entry.page_stem = stem;
            entry.title = title;
            result.table.by_label.emplace(*label, std::move(entry));
        };

        for (Fragment& fragment : doc.fragments) {
            for (Block& block : fragment.blocks) {
                if (auto* heading = std::get_if<Heading>(&block.data)) {
                    if (heading->level == 1) {
                        ++h1;
                        h2 = 0;
                        heading->number = std::to_string(h1);
                    } else if (heading->level == 2 && h1 > 0) {
                        ++h2;
                        heading->number = std::to_string(h1) + "." + std::to_string(h2);
                    }
                    registre(heading->label, LabelKind::section, heading->number,
                             heading->inlines, block.span);
                } else if (auto* fig = std::get_if<FigureDirective>(&block.data)) {
                    ++figure;
                    fig->number = std::to_string(figure);
                    registre(fig->label, LabelKind::figure, fig->number, {}, block.span);
                } else if (auto* math = std::get_if<MathBlock>(&block.data)) {
                    if (math->label) {
                        ++equation;
                        math->number = std::to_string(equation);
                        registre(math->label, LabelKind::equation, math->number, {}, block.span);
                    }
                }
            }
        }
    }
    return result;
}

struct ResolveReferencesResult {
    Document document;
    std::vector<Diagnostic> diagnostics;
};

namespace xref_detail {

inline Inline resolve_one(const Inline& inl, const LabelTable& table,
                          const std::string& current_stem,
                          const std::string& source_name,
                          std::vector<Diagnostic>& diagnostics);

inline std::vector<Inline> resolve_run(const std::vector<Inline>& inlines,
                                       const LabelTable& table,
                                       const std::string& current_stem,
                                       const std::string& source_name,
                                       std::vector<Diagnostic>& diagnostics) {
    std::vector<Inline> out;
    out.reserve(inlines.size());
    for (const Inline& inl : inlines)
        out.push_back(resolve_one(inl, table, current_stem, source_name, diagnostics));
    return out;
}

inline std::string anchor_href(const LabelEntry& entry, const std::string& current_stem) {
    if (entry.page_stem == current_stem) return "#" + entry.anchor;
    return entry.page_stem + ".html#" + entry.anchor;
}

inline Inline dangling(const Inline& inl, const std::string& what, const std::string& label,
                       const std::string& source_name, std::vector<Diagnostic>& diagnostics) {
    Diagnostic d = make_error("dangling-reference", what + " \"" + label + "\" does not resolve",
                              inl.span);
    d.source = source_name;
    diagnostics.push_back(std::move(d));
    return make_text("??", inl.span);
}

inline Inline resolve_one(const Inline& inl, const LabelTable& table,
                          const std::string& current_stem,
                          const std::string& source_name,
                          std::vector<Diagnostic>& diagnostics) {
    if (const auto* ref = std::get_if<RefRole>(&inl.data)) {
        const LabelEntry* entry = table.find(ref->label);
        if (!entry) return dangling(inl, "{ref} target", ref->label, source_name, diagnostics);
        Link link;
        link.internal = true;
        link.url = anchor_href(*entry, current_stem);
        switch (entry->kind) {
        case LabelKind::section:
            link.children = entry->title;
            if (link.children.empty())
                link.children.push_back(make_text("Section " + entry->number, inl.span));
            break;
        case LabelKind::figure:
            link.children.push_back(make_text("Figure " + entry->number, inl.span));
            break;
        case LabelKind::equation:
            link.children.push_back(make_text("Equation " + entry->number, inl.span));
            break;
        }
        return Inline{std::move(link), inl.span};
    }
    if (const auto* eq = std::get_if<EqRole>(&inl.data)) {
        const LabelEntry* entry = table.find(eq->label);
        if (!entry || entry->kind != LabelKind::equation)
            return dangling(inl, "{eq} target", eq->label, source_name, diagnostics);
        Link link;
        link.internal = true;
        link.url = anchor_href(*entry, current_stem);
        link.children.push_back(make_text("(" + entry->number + ")", inl.span));
        return Inline{std::move(link), inl.span};
    }
    if (const auto* emph = std::get_if<Emph>(&inl.data))
        return Inline{Emph{resolve_run(emph->children, table, current_stem, source_name, diagnostics)},
                      inl.span};
    if (const auto* strong = std::get_if<Strong>(&inl.data))
        return Inline{Strong{resolve_run(strong->children, table, current_stem, source_name, diagnostics)},
                      inl.span};
    if (const auto* link = std::get_if<Link>(&inl.data))
        return Inline{Link{link->url,
                           resolve_run(link->children, table, current_stem, source_name, diagnostics),
                           link->internal},
                      inl.span};
    return inl;
}

inline std::vector<Block> resolve_blocks(const std::vector<Block>& blocks,
                                         const LabelTable& table,
                                         const std::string& current_stem,
                                         const std::string& source_name,
                                         std::vector<Diagnostic>& diagnostics) {
    std::vector<Block> out;
    out.reserve(blocks.size());
    for (const Block& block : blocks) {
        Block copy = block;
        std::visit(
            [&](auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Heading> || std::is_same_v<T, Paragraph>) {
                    node.inlines = resolve_run(node.inlines, table, current_stem, source_name, diagnostics);
                } else if constexpr (std::is_same_v<T, FigureDirective>) {
                    node.caption = resolve_run(node.caption, table, current_stem, source_name, diagnostics);
                } else if constexpr (std::is_same_v<T, Admonition> || std::is_same_v<T, BlockQuote>) {
                    node.blocks = resolve_blocks(node.blocks, table, current_stem, source_name, diagnostics);
                } else if constexpr (std::is_same_v<T, List>) {
                    for (ListItem& item : node.items)
                        item.blocks = resolve_blocks(item.blocks, table, current_stem, source_name, diagnostics);
                } else if constexpr (std::is_same_v<T, Table>) {
                    for (TableCell& cell : node.header)
                        cell = resolve_run(cell, table, current_stem, source_name, diagnostics);
                    for (auto& row : node.rows)
                        for (TableCell& cell : row)
                            cell = resolve_run(cell, table, current_stem, source_name, diagnostics);
                }
            },
            copy.data);
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace xref_detail

/// Replaces every {ref}/{eq} role with a resolved internal link (or the
/// literal "??" plus a dangling-reference error). After a clean run the
/// document contains no RefRole/EqRole nodes.
inline ResolveReferencesResult resolve_references(const Document& document,
                                                  const LabelTable& table) {
    ResolveReferencesResult result;
    result.document.frontmatter = document.frontmatter;
    result.document.source_name = document.source_name;
    const std::string stem = xref_detail::source_stem(document.source_name);
    for (const Fragment& fragment : document.fragments) {
        Fragment copy = fragment;
        copy.blocks = xref_detail::resolve_blocks(fragment.blocks, table, stem,
                                                  document.source_name, result.diagnostics);
        result.document.fragments.push_back(std::move(copy));
    }
    return result;
}

}  // namespace press
