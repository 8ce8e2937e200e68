// Source-to-Document pipeline: frontmatter extraction, `+++` cell splitting
// (fence-aware), per-fragment block parsing and cell-metadata decoding.
// parse_source is a pure function of (text, source_name); a Document is
// always returned, no matter how broken the input.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "press/ast.hpp"
#include "press/diagnostics.hpp"
#include "press/parse_blocks.hpp"

namespace press {

/// Intermediate of cell splitting: one untyped slice of the source.
/// Spans of consecutive RawFragments are disjoint and ascending, and together
/// with the break and frontmatter lines they cover the file exactly.
struct RawFragment {
    std::string text;
    std::optional<std::string> tags_json;  // JSON payload of the preceding +++ line
    int tags_json_line = 0;
    SourceSpan span;
};

struct FrontMatterResult {
    FrontMatter frontmatter;
    std::string remainder;
    int consumed_lines = 0;  // frontmatter lines including both --- delimiters
    std::vector<Diagnostic> diagnostics;
};

struct SplitResult {
    std::vector<RawFragment> fragments;
    std::vector<Diagnostic> diagnostics;
};

struct ParseResult {
    Document document;
    std::vector<Diagnostic> diagnostics;
};

inline std::string normalize_newlines(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out += '\n';
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out += text[i];
        }
    }
    return out;
}

namespace parser_detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    if (text.empty()) return lines;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            lines.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n')
        lines.pop_back();
    return lines;
}

inline std::string unquote(std::string_view v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
        return std::string(v.substr(1, v.size() - 2));
    return std::string(v);
}

/// "[A One, B Two]" or a single scalar.
inline std::vector<std::string> parse_scalar_list(std::string_view value) {
    std::vector<std::string> out;
    std::string_view v = block_detail::strip(value);
    if (!v.empty() && v.front() == '[' && v.back() == ']') {
        v = v.substr(1, v.size() - 2);
        size_t pos = 0;
        while (pos <= v.size()) {
            const auto comma = v.find(',', pos);
            const std::string_view item = block_detail::strip(
                v.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                              : comma - pos));
            if (!item.empty()) out.push_back(unquote(item));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    } else if (!v.empty()) {
        out.push_back(unquote(v));
    }
    return out;
}

}  // namespace parser_detail

/// If the file opens with a `---` line, everything up to the closing `---`
/// parses as a flat key: scalar map. A malformed map yields one
/// bad-frontmatter error and an empty FrontMatter; the body is still split
/// off so parsing continues.
inline FrontMatterResult parse_frontmatter(std::string_view text) {
    using namespace block_detail;
    FrontMatterResult result;
    const auto lines = parser_detail::split_lines(text);
    if (lines.empty() || strip(lines[0]) != "---") {
        result.remainder = std::string(text);
        return result;
    }
    size_t close = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (strip(lines[i]) == "---") {
            close = i;
            break;
        }
    }
    if (close == 0) {
        result.diagnostics.push_back(
            make_error("bad-frontmatter", "frontmatter opened on line 1 is never closed", line_span(1)));
        result.remainder = std::string(text);
        return result;
    }

    FrontMatter fm;
    bool bad = false;
    for (size_t i = 1; i < close; ++i) {
        const std::string_view line = lines[i];
        if (is_blank(line) || lstrip(line).front() == '#') continue;
        const auto colon = line.find(':');
        const std::string key = colon == std::string_view::npos
                                    ? std::string()
                                    : std::string(strip(line.substr(0, colon)));
        if (key.empty()) {
            result.diagnostics.push_back(make_error(
                "bad-frontmatter",
                "malformed frontmatter line: \"" + std::string(strip(line)) + "\"",
                line_span(static_cast<int>(i + 1))));
            bad = true;
            continue;
        }
        const std::string value(strip(line.substr(colon + 1)));
        const bool duplicate =
            (key == "title" && fm.title) ||
            (key == "authors" && !fm.authors.empty()) ||
            (key != "title" && key != "authors" && fm.extra.count(key));
        if (duplicate) {
            result.diagnostics.push_back(make_error(
                "bad-frontmatter", "duplicate frontmatter key \"" + key + "\"",
                line_span(static_cast<int>(i + 1))));
            bad = true;
            continue;
        }
        if (key == "title") fm.title = parser_detail::unquote(value);
        else if (key == "authors") fm.authors = parser_detail::parse_scalar_list(value);
        else fm.extra[key] = value;
    }
    if (!bad) result.frontmatter = std::move(fm);
    result.consumed_lines = static_cast<int>(close + 1);

    size_t offset = 0;
    for (size_t i = 0; i <= close && offset <= text.size(); ++i) {
        const auto nl = text.find('\n', offset);
        offset = nl == std::string_view::npos ? text.size() : nl + 1;
    }
    result.remainder = std::string(text.substr(offset));
    return result;
}

/// Splits the frontmatter-free body on `+++` lines that sit outside fenced
/// code blocks. A break line may carry a JSON object with fragment metadata.
/// `first_line` is the file line number of the body's first line.
inline SplitResult split_cells(std::string_view text, int first_line = 1) {
    using namespace block_detail;
    SplitResult result;
    const auto lines = parser_detail::split_lines(text);

    struct Segment {
        size_t begin = 0, end = 0;  // line index range [begin, end)
        std::optional<std::string> tags_json;
        int tags_json_line = 0;
    };
    std::vector<Segment> segments;
    Segment current;

    char fence_ch = 0;
    size_t fence_len = 0;
    bool in_fence = false;
    int fence_open_line = 0;

    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (in_fence) {
            if (match_fence_close(line, fence_ch, fence_len)) in_fence = false;
            continue;
        }
        if (const auto fence = match_fence_open(line)) {
            in_fence = true;
            fence_ch = fence->ch;
            fence_len = fence->len;
            fence_open_line = first_line + static_cast<int>(i);
            continue;
        }
        if (line.rfind("+++", 0) == 0) {
            current.end = i;
            segments.push_back(current);
            current = Segment{};
            current.begin = i + 1;
            const std::string_view rest = strip(line.substr(3));
            if (!rest.empty()) {
                current.tags_json = std::string(rest);
                current.tags_json_line = first_line + static_cast<int>(i);
            }
        }
    }
    if (in_fence)
        result.diagnostics.push_back(make_error(
            "unclosed-fence", "code fence opened here is never closed; rest of file treated as code",
            line_span(fence_open_line)));
    current.end = lines.size();
    segments.push_back(current);

    for (const Segment& seg : segments) {
        if (seg.begin >= seg.end) continue;  // empty segment between breaks
        RawFragment fragment;
        std::string body;
        for (size_t i = seg.begin; i < seg.end; ++i) {
            body += lines[i];
            if (i + 1 < seg.end) body += '\n';
        }
        fragment.text = std::move(body);
        fragment.tags_json = seg.tags_json;
        fragment.tags_json_line = seg.tags_json_line;
        fragment.span = SourceSpan{first_line + static_cast<int>(seg.begin),
                                   first_line + static_cast<int>(seg.end) - 1};
        result.fragments.push_back(std::move(fragment));
    }
    return result;
}

namespace parser_detail {

struct CellMeta {
    TagSet tags;
    std::optional<SlideType> slide_type;
    std::vector<Diagnostic> diagnostics;
};

inline CellMeta decode_cell_metadata(const std::string& json_text, int line) {
    CellMeta meta;
    const SourceSpan span = line_span(line);
    nlohmann::json parsed = nlohmann::json::parse(json_text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        meta.diagnostics.push_back(make_error(
            "bad-cell-metadata", "cell break metadata is not a JSON object: " + json_text, span));
        return meta;
    }
    for (const auto& [key, value] : parsed.items()) {
        if (key == "tags") {
            if (!value.is_array()) {
                meta.diagnostics.push_back(
                    make_error("bad-cell-metadata", "\"tags\" must be an array of strings", span));
                continue;
            }
            std::vector<std::string> raw;
            bool ok = true;
            for (const auto& item : value) {
                if (!item.is_string()) {
                    meta.diagnostics.push_back(make_error(
                        "bad-cell-metadata", "\"tags\" must be an array of strings", span));
                    ok = false;
                    break;
                }
                raw.push_back(item.get<std::string>());
            }
            if (!ok) continue;
            TagSetResult tags = validate_tagset(raw, span);
            append_diags(meta.diagnostics, std::move(tags.diagnostics));
            meta.tags = std::move(tags.set);
        } else if (key == "slide") {
            if (!value.is_string()) {
                meta.diagnostics.push_back(
                    make_error("bad-cell-metadata", "\"slide\" must be a string", span));
                continue;
            }
            const auto type = slide_type_from_name(value.get<std::string>());
            if (!type) {
                meta.diagnostics.push_back(make_warning(
                    "unknown-slide-type",
                    "unknown slide type \"" + value.get<std::string>() +
                        "\" (expected slide, subslide, fragment, notes or skip)",
                    span));
                continue;
            }
            meta.slide_type = type;
        } else {
            meta.diagnostics.push_back(make_warning(
                "bad-cell-metadata", "unknown cell metadata key \"" + key + "\"", span));
        }
    }
    return meta;
}

}  // namespace parser_detail

/// Full composition: frontmatter -> cell split -> per-fragment blocks.
/// Deterministic; fragments that parse to zero blocks are dropped.
inline ParseResult parse_source(std::string_view raw_text, std::string source_name) {
    ParseResult result;
    const std::string text = normalize_newlines(raw_text);

    FrontMatterResult fm = parse_frontmatter(text);
    append_diags(result.diagnostics, std::move(fm.diagnostics));
    result.document.frontmatter = std::move(fm.frontmatter);
    result.document.source_name = source_name;

    SplitResult split = split_cells(fm.remainder, fm.consumed_lines + 1);
    append_diags(result.diagnostics, std::move(split.diagnostics));

    for (RawFragment& raw : split.fragments) {
        Fragment fragment;
        fragment.span = raw.span;
        if (raw.tags_json) {
            parser_detail::CellMeta meta =
                parser_detail::decode_cell_metadata(*raw.tags_json, raw.tags_json_line);
            append_diags(result.diagnostics, std::move(meta.diagnostics));
            fragment.tags = std::move(meta.tags);
            fragment.slide_type = meta.slide_type;
        }
        BlockParseResult blocks = parse_blocks(raw.text, raw.span.start_line);
        for (Diagnostic& d : blocks.diagnostics) {
            // split_cells already reported fences left open at end of file
            const bool duplicate_fence =
                d.code == "unclosed-fence" &&
                std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                            [&](const Diagnostic& prev) {
                                return prev.code == "unclosed-fence" &&
                                       prev.span.start_line == d.span.start_line;
                            });
            if (!duplicate_fence) result.diagnostics.push_back(std::move(d));
        }
        fragment.blocks = std::move(blocks.blocks);
        if (fragment.blocks.empty()) continue;
        result.document.fragments.push_back(std::move(fragment));
    }

    for (Diagnostic& d : result.diagnostics)
        if (d.source.empty()) d.source = result.document.source_name;
    return result;
}

}  // namespace press
