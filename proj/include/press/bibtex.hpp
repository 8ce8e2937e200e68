// BibTeX database parsing, author-year citation formatting and the resolved
// citation map with its sorted reference list.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "press/ast.hpp"
#include "press/diagnostics.hpp"

namespace press {

struct BibEntry {
    std::string key;
    std::string entry_type;                    // book, article, inproceedings, ...
    std::map<std::string, std::string> fields;  // names lowercased

    std::optional<std::string> field(const std::string& name) const {
        const auto it = fields.find(name);
        if (it == fields.end()) return std::nullopt;
        return it->second;
    }
};

struct BibParseResult {
    std::vector<BibEntry> entries;
    std::vector<Diagnostic> diagnostics;
};

namespace bib_detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

inline std::string collapse_ws(std::string_view raw) {
    std::string out;
    bool in_ws = false;
    for (char c : raw) {
        if (is_space(c)) {
            in_ws = !out.empty();
        } else {
            if (in_ws) out += ' ';
            in_ws = false;
            out += c;
        }
    }
    return out;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline int line_at(std::string_view text, size_t pos) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

/// Splits "A One and B Two and C Three" on the word "and".
inline std::vector<std::string> split_authors(std::string_view field) {
    std::vector<std::string> out;
    size_t pos = 0;
    const std::string text = collapse_ws(field);
    while (pos < text.size()) {
        const auto split = text.find(" and ", pos);
        const std::string author =
            text.substr(pos, split == std::string::npos ? std::string::npos : split - pos);
        if (!author.empty()) out.push_back(author);
        if (split == std::string::npos) break;
        pos = split + 5;
    }
    return out;
}

/// Family name of one author: the part before the comma in "Family, Given",
/// otherwise the last whitespace-separated token ("{van Dyk}" groups count
/// as one token, braces stripped for display).
inline std::string family_name(std::string_view author) {
    const std::string a = collapse_ws(author);
    const auto comma = a.find(',');
    std::string family;
    if (comma != std::string::npos) {
        family = a.substr(0, comma);
    } else if (!a.empty() && a.back() == '}') {
        int depth = 0;
        size_t i = a.size();
        while (i > 0) {
            --i;
            if (a[i] == '}') ++depth;
            if (a[i] == '{') {
                --depth;
                if (depth == 0) break;
            }
        }
        family = a.substr(i);
    } else {
        const auto space = a.rfind(' ');
        family = space == std::string::npos ? a : a.substr(space + 1);
    }
    std::string out;
    for (char c : family)
        if (c != '{' && c != '}') out += c;
    while (!out.empty() && out.front() == ' ') out.erase(out.begin());
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline std::string strip_braces(std::string_view value) {
    std::string out;
    for (char c : value)
        if (c != '{' && c != '}') out += c;
    return out;
}

}  // namespace bib_detail

/// Parses `@type{key, field = {value} | "value" | bare, ...}`. Balanced
/// braces inside values are preserved; surrounding whitespace runs collapse.
/// @comment/@preamble are skipped with a warning, @string is unsupported.
inline BibParseResult parse_bibtex(std::string_view text) {
    using namespace bib_detail;
    BibParseResult result;
    std::vector<std::string> seen_keys;

    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        if (text[i] != '@') {
            ++i;
            continue;
        }
        const size_t at = i;
        ++i;
        std::string type;
        while (i < n && (std::isalpha(static_cast<unsigned char>(text[i])))) {
            type += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
            ++i;
        }
        while (i < n && is_space(text[i])) ++i;
        if (i >= n || (text[i] != '{' && text[i] != '(')) {
            result.diagnostics.push_back(make_warning(
                "bad-entry", "stray @" + type + " without a body", line_span(line_at(text, at))));
            continue;
        }
        const char open = text[i];
        const char close = open == '{' ? '}' : ')';
        ++i;

        if (type == "comment" || type == "preamble" || type == "string") {
            result.diagnostics.push_back(make_warning(
                "unsupported-entry",
                "@" + type + " is " + (type == "string" ? "unsupported" : "ignored"),
                line_span(line_at(text, at))));
            int depth = 1;
            while (i < n && depth > 0) {
                if (text[i] == open) ++depth;
                else if (text[i] == close) --depth;
                ++i;
            }
            continue;
        }

        // key
        std::string key;
        while (i < n && text[i] != ',' && text[i] != close && !is_space(text[i])) {
            key += text[i];
            ++i;
        }
        while (i < n && is_space(text[i])) ++i;
        if (i < n && text[i] == ',') ++i;

        BibEntry entry;
        entry.key = key;
        entry.entry_type = type;
        bool balanced = true;

        while (i < n) {
            while (i < n && (is_space(text[i]) || text[i] == ',')) ++i;
            if (i < n && text[i] == close) {
                ++i;
                break;
            }
            if (i >= n) {
                balanced = false;
                break;
            }
            std::string name;
            while (i < n && text[i] != '=' && text[i] != close && !is_space(text[i])) {
                name += text[i];
                ++i;
            }
            while (i < n && is_space(text[i])) ++i;
            if (i >= n || text[i] != '=') {
                balanced = false;
                break;
            }
            ++i;
            while (i < n && is_space(text[i])) ++i;
            if (i >= n) {
                balanced = false;
                break;
            }
            std::string value;
            if (text[i] == '{') {
                int depth = 1;
                ++i;
                const size_t start = i;
                while (i < n && depth > 0) {
                    if (text[i] == '{') ++depth;
                    else if (text[i] == '}') --depth;
                    if (depth > 0) ++i;
                }
                if (depth != 0) {
                    i = start;  // rewind so recovery can find the next entry
                    balanced = false;
                    break;
                }
                value = std::string(text.substr(start, i - start));
                ++i;
            } else if (text[i] == '"') {
                ++i;
                const size_t start = i;
                int depth = 0;
                while (i < n && !(text[i] == '"' && depth == 0)) {
                    if (text[i] == '{') ++depth;
                    else if (text[i] == '}') --depth;
                    ++i;
                }
                if (i >= n) {
                    i = start;
                    balanced = false;
                    break;
                }
                value = std::string(text.substr(start, i - start));
                ++i;
            } else {
                while (i < n && text[i] != ',' && text[i] != close && !is_space(text[i])) {
                    value += text[i];
                    ++i;
                }
            }
            if (!name.empty()) entry.fields[lower(name)] = collapse_ws(value);
        }

        if (!balanced) {
            result.diagnostics.push_back(make_error(
                "unbalanced-braces",
                "entry \"" + key + "\" has unbalanced braces and was skipped",
                line_span(line_at(text, at))));
            // resync at the next line that starts a new entry
            while (i < n && text[i] != '@') ++i;
            continue;
        }
        if (key.empty()) {
            result.diagnostics.push_back(make_error(
                "bad-entry", "entry without a citation key skipped", line_span(line_at(text, at))));
            continue;
        }
        if (std::find(seen_keys.begin(), seen_keys.end(), key) != seen_keys.end()) {
            result.diagnostics.push_back(make_error(
                "duplicate-key", "duplicate citation key \"" + key + "\"; second entry skipped",
                line_span(line_at(text, at))));
            continue;
        }
        seen_keys.push_back(key);
        result.entries.push_back(std::move(entry));
    }
    return result;
}

struct CitationFormat {
    std::string text;  // parenthesized inline form
    std::vector<Diagnostic> diagnostics;
};

namespace bib_detail {

/// "Flach, 1994" without the parentheses, for joining multi-key citations.
inline std::string citation_core(const BibEntry& entry, std::vector<Diagnostic>* diags) {
    const auto author_field = entry.field("author");
    const std::string year = entry.field("year").value_or("n.d.");
    std::string names;
    if (!author_field || collapse_ws(*author_field).empty()) {
        if (diags)
            diags->push_back(make_warning(
                "missing-author", "entry \"" + entry.key + "\" has no author; using the key", {}));
        names = entry.key;
    } else {
        const auto authors = split_authors(*author_field);
        if (authors.size() == 1) names = family_name(authors[0]);
        else if (authors.size() == 2)
            names = family_name(authors[0]) + " and " + family_name(authors[1]);
        else
            names = family_name(authors[0]) + " et al.";
    }
    return names + ", " + year;
}

}  // namespace bib_detail

/// Author-year inline form: "(Flach, 1994)", "(One and Two, 2020)",
/// "(One et al., 2020)"; missing year renders "n.d.", missing author falls
/// back to the key with a warning.
inline CitationFormat format_citation(const BibEntry& entry) {
    CitationFormat out;
    out.text = "(" + bib_detail::citation_core(entry, &out.diagnostics) + ")";
    return out;
}

/// One resolved citation: inline text plus the anchor of its reference entry.
struct Citation {
    std::string inline_text;  // parenthesized
    std::string core_text;    // without parentheses, for multi-key joins
    std::string anchor;       // "ref-<key>"
};

struct CitationMap {
    std::map<std::string, Citation> by_key;
    std::vector<BibEntry> references;  // cited entries, sorted (family, year, key)

    const Citation* find(const std::string& key) const {
        const auto it = by_key.find(key);
        return it == by_key.end() ? nullptr : &it->second;
    }
};

struct ResolveCitationsResult {
    CitationMap map;
    std::vector<Diagnostic> diagnostics;
};

/// Collects every {cite} key across the documents, reports dangling keys with
/// their spans and builds the sorted reference list. Uncited entries are
/// excluded; list order depends only on the cited set.
inline ResolveCitationsResult resolve_citations(const std::vector<Document>& documents,
                                                const std::vector<BibEntry>& entries) {
    using namespace bib_detail;
    ResolveCitationsResult result;

    std::map<std::string, const BibEntry*> by_key;
    for (const BibEntry& entry : entries) by_key[entry.key] = &entry;

    std::map<std::string, bool> cited;  // key -> reported
    for (const Document& doc : documents) {
        for_each_inline(doc, [&](const Inline& inl) {
            const auto* cite = std::get_if<CiteRole>(&inl.data);
            if (!cite) return;
            for (const std::string& key : cite->keys) {
                if (by_key.count(key)) {
                    cited.emplace(key, true);
                } else if (!cited.count(key)) {
                    cited.emplace(key, false);
                    Diagnostic d = make_error("dangling-citation",
                                              "citation key \"" + key + "\" is not in the bibliography",
                                              inl.span);
                    d.source = doc.source_name;
                    result.diagnostics.push_back(std::move(d));
                }
            }
        });
    }

    for (const auto& [key, found] : cited) {
        if (!found) continue;
        const BibEntry& entry = *by_key.at(key);
        Citation c;
        std::vector<Diagnostic> warnings;
        c.core_text = citation_core(entry, &warnings);
        append_diags(result.diagnostics, std::move(warnings));
        c.inline_text = "(" + c.core_text + ")";
        c.anchor = "ref-" + key;
        result.map.by_key.emplace(key, std::move(c));
        result.map.references.push_back(entry);
    }

    std::sort(result.map.references.begin(), result.map.references.end(),
              [](const BibEntry& a, const BibEntry& b) {
                  const auto sort_key = [](const BibEntry& e) {
                      const auto authors = split_authors(e.field("author").value_or(""));
                      std::string family = authors.empty() ? e.key : family_name(authors[0]);
                      return std::make_tuple(lower(family), e.field("year").value_or(""), e.key);
                  };
                  return sort_key(a) < sort_key(b);
              });
    return result;
}

/// Full reference-list line for one entry: authors (year). title. venue.
inline std::string format_reference(const BibEntry& entry) {
    using namespace bib_detail;
    std::string out;
    const auto author = entry.field("author");
    if (author && !collapse_ws(*author).empty()) out += strip_braces(collapse_ws(*author));
    else out += entry.key;
    out += " (" + entry.field("year").value_or("n.d.") + ").";
    if (const auto title = entry.field("title")) out += " " + strip_braces(*title) + ".";
    for (const char* venue : {"journal", "booktitle", "publisher"}) {
        if (const auto v = entry.field(venue)) {
            out += " " + strip_braces(*v);
            if (venue != std::string_view("publisher")) {
                if (const auto vol = entry.field("volume")) out += " " + *vol;
                if (const auto pages = entry.field("pages")) out += ":" + *pages;
            }
            out += ".";
            break;
        }
    }
    return out;
}

}  // namespace press
