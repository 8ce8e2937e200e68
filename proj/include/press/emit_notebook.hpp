// Notebook emitter: ipynb v4.5 with tags and slide types preserved as cell
// metadata. Notebooks are emitted unexecuted (outputs empty, execution_count
// null); cell ids are content-hash derived so rebuilds are byte-identical.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "press/ast.hpp"
#include "press/bibtex.hpp"
#include "press/config.hpp"
#include "press/markdown_out.hpp"

namespace press {

struct Cell {
    enum class Type { markdown, code };
    Type cell_type = Type::markdown;
    std::string id;  // 1..64 chars of [a-zA-Z0-9-_], unique per notebook
    std::string source;
    std::vector<std::string> tags;  // sorted
    std::optional<SlideType> slide_type;
};

struct Notebook {
    std::vector<Cell> cells;
    std::string kernel_name;
    std::string kernel_language;
    static constexpr int nbformat = 4;
    static constexpr int nbformat_minor = 5;
};

namespace nb_detail {

inline uint64_t fnv1a64(std::string_view data, uint64_t seed = 1469598103934665603ull) {
    uint64_t hash = seed;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

inline std::string hex8(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 0; i < 8; ++i) out[static_cast<size_t>(i)] = digits[(value >> (60 - 4 * i)) & 0xf];
    return out;
}

/// Deterministic id: first 8 hex chars of a content hash of (index, source).
inline std::string cell_id(size_t index, const std::string& source,
                           std::set<std::string>& used) {
    std::string input = std::to_string(index);
    input += '\0';
    input += source;
    uint64_t hash = fnv1a64(input);
    std::string id = hex8(hash);
    while (used.count(id)) {
        hash = fnv1a64(id, hash);
        id = hex8(hash);
    }
    used.insert(id);
    return id;
}

/// nbformat multiline string: every line keeps its newline except the last.
inline nlohmann::ordered_json source_lines(const std::string& text) {
    nlohmann::ordered_json lines = nlohmann::ordered_json::array();
    if (text.empty()) return lines;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size()) {
            if (start < i) lines.push_back(text.substr(start, i - start));
        } else if (text[i] == '\n') {
            lines.push_back(text.substr(start, i - start + 1));
            start = i + 1;
        }
    }
    return lines;
}

}  // namespace nb_detail

/// Converts a notebook-filtered, reference-resolved document: per fragment,
/// one markdown cell with all prose blocks (omitted when empty), then one
/// code cell per CodeCell, carrying metadata.tags = fragment tags + cell tags
/// and the fragment's slide type.
inline Notebook to_notebook(const Document& document, const Config& config,
                            const CitationMap& citations) {
    Notebook nb;
    nb.kernel_name = config.kernel_name;
    nb.kernel_language = config.kernel_language;

    for (const Fragment& fragment : document.fragments) {
        std::vector<Block> prose;
        std::vector<const CodeCell*> code_cells;
        for (const Block& block : fragment.blocks) {
            if (const auto* cell = std::get_if<CodeCell>(&block.data)) code_cells.push_back(cell);
            else prose.push_back(block);
        }
        const std::string markdown = blocks_to_markdown(prose, &citations);
        if (!markdown.empty()) {
            Cell cell;
            cell.cell_type = Cell::Type::markdown;
            cell.source = markdown;
            cell.tags = fragment.tags.to_list();
            cell.slide_type = fragment.slide_type;
            nb.cells.push_back(std::move(cell));
        }
        for (const CodeCell* code : code_cells) {
            Cell cell;
            cell.cell_type = Cell::Type::code;
            cell.source = code->source;
            cell.tags = fragment.tags.united(code->tags).to_list();
            cell.slide_type = fragment.slide_type;
            nb.cells.push_back(std::move(cell));
        }
    }
    return nb;
}

/// Canonical bytes: UTF-8 JSON, alphabetical keys, 1-space indent, LF line
/// endings, trailing newline. Serializing the same notebook twice yields
/// identical bytes.
inline std::string serialize_notebook(const Notebook& nb) {
    using json = nlohmann::ordered_json;
    json root;
    json cells = json::array();
    std::set<std::string> used_ids;

    for (size_t i = 0; i < nb.cells.size(); ++i) {
        const Cell& cell = nb.cells[i];
        json j;
        j["cell_type"] = cell.cell_type == Cell::Type::code ? "code" : "markdown";
        if (cell.cell_type == Cell::Type::code) j["execution_count"] = nullptr;
        j["id"] = nb_detail::cell_id(i, cell.source, used_ids);
        json metadata = json::object();
        if (cell.slide_type)
            metadata["slideshow"] = json{{"slide_type", slide_type_name(*cell.slide_type)}};
        if (!cell.tags.empty()) metadata["tags"] = cell.tags;
        j["metadata"] = std::move(metadata);
        if (cell.cell_type == Cell::Type::code) j["outputs"] = json::array();
        j["source"] = nb_detail::source_lines(cell.source);
        cells.push_back(std::move(j));
    }

    root["cells"] = std::move(cells);
    root["metadata"] = json{
        {"kernelspec", json{{"display_name", nb.kernel_name},
                            {"language", nb.kernel_language},
                            {"name", nb.kernel_name}}},
        {"language_info", json{{"name", nb.kernel_language}}}};
    root["nbformat"] = Notebook::nbformat;
    root["nbformat_minor"] = Notebook::nbformat_minor;
    return root.dump(1) + "\n";
}

}  // namespace press
