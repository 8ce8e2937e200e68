// Block parser for one fragment body: ATX headings, fenced directives and
// code, $$ math, (label)= targets, pipe tables, block quotes, lists, thematic
// breaks and paragraphs. Recovery over abort: bad constructs degrade to text
// or are dropped with a diagnostic, never losing the rest of the fragment.
#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "press/ast.hpp"
#include "press/diagnostics.hpp"
#include "press/parse_inline.hpp"

namespace press {

struct BlockParseResult {
    std::vector<Block> blocks;
    std::vector<Diagnostic> diagnostics;
};

namespace block_detail {

// Nesting caps keep adversarial input (thousands of nested quotes, lists or
// directives) from exhausting the stack; content beyond the cap degrades to
// literal text with a diagnostic.
inline constexpr int max_block_nesting = 64;
inline constexpr int max_directive_nesting = 8;

inline bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline int indent_of(std::string_view line) {
    int col = 0;
    for (char c : line) {
        if (c == ' ') ++col;
        else if (c == '\t') col += 4;
        else break;
    }
    return col;
}

inline std::string_view lstrip(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    return b == std::string_view::npos ? std::string_view{} : s.substr(b);
}

inline std::string_view rstrip(std::string_view s) {
    const auto e = s.find_last_not_of(" \t");
    return e == std::string_view::npos ? std::string_view{} : s.substr(0, e + 1);
}

inline std::string_view strip(std::string_view s) { return rstrip(lstrip(s)); }

inline std::string strip_copy(std::string_view s) { return std::string(strip(s)); }

/// Up to 3 leading spaces are insignificant for block starts.
inline std::string_view block_start(std::string_view line) {
    size_t i = 0;
    while (i < line.size() && i < 3 && line[i] == ' ') ++i;
    return line.substr(i);
}

inline bool valid_label(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

struct AtxHeading {
    int level = 0;
    std::string_view rest;
};

inline std::optional<AtxHeading> match_atx(std::string_view line) {
    const std::string_view s = block_start(line);
    size_t hashes = 0;
    while (hashes < s.size() && s[hashes] == '#') ++hashes;
    if (hashes < 1 || hashes > 6) return std::nullopt;
    if (hashes < s.size() && s[hashes] != ' ' && s[hashes] != '\t') return std::nullopt;
    std::string_view rest = rstrip(lstrip(s.substr(hashes)));
    // optional closing hash run
    if (!rest.empty()) {
        size_t e = rest.size();
        while (e > 0 && rest[e - 1] == '#') --e;
        if (e == 0) {
            rest = {};
        } else if (e < rest.size() && (rest[e - 1] == ' ' || rest[e - 1] == '\t')) {
            rest = rstrip(rest.substr(0, e));
        }
    }
    return AtxHeading{static_cast<int>(hashes), rest};
}

struct FenceOpen {
    char ch = '`';
    size_t len = 0;
    std::string_view info;
};

inline std::optional<FenceOpen> match_fence_open(std::string_view line) {
    const std::string_view s = block_start(line);
    if (s.empty() || (s[0] != '`' && s[0] != '~')) return std::nullopt;
    const char ch = s[0];
    size_t len = 0;
    while (len < s.size() && s[len] == ch) ++len;
    if (len < 3) return std::nullopt;
    std::string_view info = strip(s.substr(len));
    if (ch == '`' && info.find('`') != std::string_view::npos) return std::nullopt;
    return FenceOpen{ch, len, info};
}

inline bool match_fence_close(std::string_view line, char ch, size_t open_len) {
    const std::string_view s = block_start(line);
    size_t len = 0;
    while (len < s.size() && s[len] == ch) ++len;
    return len >= open_len && strip(s.substr(len)).empty();
}

inline bool match_thematic(std::string_view line) {
    const std::string_view s = block_start(line);
    if (s.empty()) return false;
    const char ch = s[0];
    if (ch != '-' && ch != '*' && ch != '_') return false;
    size_t count = 0;
    for (char c : s) {
        if (c == ch) ++count;
        else if (c != ' ' && c != '\t') return false;
    }
    return count >= 3;
}

inline std::optional<std::string> match_label_target(std::string_view line) {
    const std::string_view s = strip(line);
    if (s.size() < 4 || s.front() != '(') return std::nullopt;
    if (s.substr(s.size() - 2) != ")=") return std::nullopt;
    const std::string_view label = s.substr(1, s.size() - 3);
    if (!valid_label(label)) return std::nullopt;
    return std::string(label);
}

inline bool match_math_open(std::string_view line) {
    return block_start(line).substr(0, 2) == "$$";
}

struct ListMarker {
    bool ordered = false;
    char bullet = '-';   // bullet char, or the ordered delimiter '.'/')'
    int indent = 0;      // column of the marker
    size_t content_col = 0;  // column where item content starts
    bool has_content = false;
};

inline std::optional<ListMarker> match_list_marker(std::string_view line) {
    size_t i = 0;
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) return std::nullopt;
    ListMarker m;
    m.indent = static_cast<int>(i);
    size_t marker_end = 0;
    if (line[i] == '-' || line[i] == '*' || line[i] == '+') {
        m.ordered = false;
        m.bullet = line[i];
        marker_end = i + 1;
    } else if (std::isdigit(static_cast<unsigned char>(line[i]))) {
        size_t d = i;
        while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d])) && d - i < 9) ++d;
        if (d >= line.size() || (line[d] != '.' && line[d] != ')')) return std::nullopt;
        m.ordered = true;
        m.bullet = line[d];
        marker_end = d + 1;
    } else {
        return std::nullopt;
    }
    if (marker_end < line.size() && line[marker_end] != ' ' && line[marker_end] != '\t')
        return std::nullopt;
    size_t spaces = 0;
    while (marker_end + spaces < line.size() && line[marker_end + spaces] == ' ') ++spaces;
    if (marker_end + spaces >= line.size()) {
        m.content_col = marker_end + 1;
        m.has_content = false;
    } else {
        m.content_col = marker_end + (spaces > 4 ? 1 : spaces);
        m.has_content = true;
    }
    return m;
}

inline std::vector<std::string> split_table_row(std::string_view line) {
    std::string_view s = strip(line);
    std::vector<std::string> cells;
    std::string cur;
    bool saw_pipe_first = !s.empty() && s.front() == '|';
    size_t i = saw_pipe_first ? 1 : 0;
    for (; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '|') {
            cur += '|';  // escaped cell separator
            ++i;
        } else if (s[i] == '|') {
            cells.push_back(std::string(strip(cur)));
            cur.clear();
        } else {
            cur += s[i];
        }
    }
    if (!(strip(cur).empty() && !s.empty() && s.back() == '|'))
        cells.push_back(std::string(strip(cur)));
    return cells;
}

inline bool match_table_separator(std::string_view line, size_t expected_cells) {
    const std::string_view s = strip(line);
    if (s.find('|') == std::string_view::npos) return false;
    if (s.find_first_not_of("|-: \t") != std::string_view::npos) return false;
    const auto cells = split_table_row(s);
    if (cells.size() != expected_cells) return false;
    for (const std::string& c : cells) {
        std::string_view v = strip(c);
        if (!v.empty() && v.front() == ':') v.remove_prefix(1);
        if (!v.empty() && v.back() == ':') v.remove_suffix(1);
        if (v.empty() || v.find_first_not_of('-') != std::string_view::npos) return false;
    }
    return true;
}

}  // namespace block_detail

BlockParseResult parse_blocks(std::string_view text, int first_line = 1, int depth = 0);

namespace block_detail {

/// Parses the ":key: value" option lines at the start of a directive body.
/// Returns the index of the first body line (a single blank separator after
/// the options is swallowed).
inline size_t parse_directive_options(const std::vector<std::string_view>& lines,
                                      std::map<std::string, std::string>& options) {
    size_t i = 0;
    for (; i < lines.size(); ++i) {
        const std::string_view s = strip(lines[i]);
        if (s.size() < 3 || s.front() != ':') break;
        const auto close = s.find(':', 1);
        if (close == std::string_view::npos || close == 1) break;
        const std::string key(strip(s.substr(1, close - 1)));
        if (key.empty() || key.find(' ') != std::string::npos) break;
        options[key] = std::string(strip(s.substr(close + 1)));
    }
    if (i > 0 && i < lines.size() && is_blank(lines[i])) ++i;
    return i;
}

/// ":tags: [a, b]" or a bare scalar; quotes around entries stripped.
inline std::vector<std::string> parse_tag_option(std::string_view value) {
    std::string_view v = strip(value);
    if (!v.empty() && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= v.size()) {
        const auto comma = v.find(',', pos);
        std::string_view item =
            strip(v.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                : comma - pos));
        if (item.size() >= 2 && ((item.front() == '"' && item.back() == '"') ||
                                 (item.front() == '\'' && item.back() == '\'')))
            item = item.substr(1, item.size() - 2);
        if (!item.empty()) out.push_back(std::string(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct DirectiveResult {
    std::optional<Block> block;
    std::vector<Diagnostic> diagnostics;
};

/// Maps a fenced ```{name} construct onto its block. `body_line` is the file
/// line of the first body line (after any option lines were consumed by the
/// caller via parse_directive_options on the raw body).
inline DirectiveResult parse_directive(const std::string& name, const std::string& arg,
                                       const std::map<std::string, std::string>& options,
                                       const std::string& body, SourceSpan span,
                                       int body_line, int depth = 0) {
    DirectiveResult result;
    auto option = [&](const char* key) -> std::optional<std::string> {
        const auto it = options.find(key);
        if (it == options.end()) return std::nullopt;
        return it->second;
    };
    auto label_from = [&](const char* key) -> std::optional<std::string> {
        const auto raw = option(key);
        if (!raw) return std::nullopt;
        if (!valid_label(*raw)) {
            result.diagnostics.push_back(make_warning(
                "bad-label", "label \"" + *raw + "\" must match [a-zA-Z0-9_-]+", span));
            return std::nullopt;
        }
        return raw;
    };

    if (name == "math") {
        MathBlock math;
        math.latex = std::string(strip_copy(body));
        math.label = label_from("label");
        result.block = Block{std::move(math), span};
        return result;
    }
    if (name == "figure") {
        if (arg.empty()) {
            result.diagnostics.push_back(
                make_error("missing-argument", "{figure} directive requires an image path", span));
            return result;
        }
        FigureDirective fig;
        fig.target = arg;
        fig.alt = option("alt").value_or("");
        fig.label = label_from("name");
        InlineParseResult caption = parse_inlines(strip_copy(body), body_line);
        append_diags(result.diagnostics, std::move(caption.diagnostics));
        fig.caption = std::move(caption.inlines);
        result.block = Block{std::move(fig), span};
        return result;
    }
    if (name == "code-cell") {
        if (arg.empty()) {
            result.diagnostics.push_back(make_error(
                "missing-argument", "{code-cell} directive requires a language argument", span));
            result.block = Block{CodeBlock{std::nullopt, body}, span};
            return result;
        }
        CodeCell cell;
        cell.language = arg;
        cell.source = body;
        for (const auto& [key, value] : options) {
            if (key == "tags") {
                TagSetResult tags = validate_tagset(parse_tag_option(value), span);
                append_diags(result.diagnostics, std::move(tags.diagnostics));
                cell.tags = std::move(tags.set);
            } else {
                cell.options[key] = value;
            }
        }
        result.block = Block{std::move(cell), span};
        return result;
    }
    if (name == "note" || name == "warning" || name == "admonition") {
        if (depth >= max_directive_nesting) {
            result.diagnostics.push_back(make_warning(
                "deep-nesting", "directive nesting exceeds " +
                    std::to_string(max_directive_nesting) + " levels; body kept as code",
                span));
            result.block = Block{CodeBlock{std::nullopt, body}, span};
            return result;
        }
        Admonition adm;
        adm.kind = name == "admonition" ? (arg.empty() ? "note" : arg) : name;
        BlockParseResult inner = parse_blocks(body, body_line, depth + 1);
        append_diags(result.diagnostics, std::move(inner.diagnostics));
        adm.blocks = std::move(inner.blocks);
        result.block = Block{std::move(adm), span};
        return result;
    }
    if (name == "bibliography") {
        result.block = Block{BibliographyDirective{}, span};
        return result;
    }
    result.diagnostics.push_back(
        make_warning("unknown-directive", "unknown directive {" + name + "}", span));
    result.block = Block{CodeBlock{std::nullopt, body}, span};
    return result;
}

}  // namespace block_detail

/// True when `line` begins a construct that interrupts a paragraph (also used
/// for lazy-continuation decisions inside quotes and list items).
namespace block_detail {
inline bool starts_new_block(std::string_view line) {
    if (match_atx(line)) return true;
    if (match_fence_open(line)) return true;
    if (match_math_open(line)) return true;
    if (match_label_target(line)) return true;
    if (match_thematic(line)) return true;
    if (!block_start(line).empty() && block_start(line).front() == '>') return true;
    if (const auto m = match_list_marker(line)) {
        if (!m->has_content) return false;  // empty items cannot interrupt
        if (m->ordered) {
            // only "1." may interrupt a paragraph
            const std::string_view s = lstrip(line);
            return s.substr(0, 2) == "1." || s.substr(0, 2) == "1)";
        }
        return true;
    }
    return false;
}
}  // namespace block_detail

inline BlockParseResult parse_blocks(std::string_view text, int first_line, int depth) {
    using namespace block_detail;
    BlockParseResult result;

    if (depth >= max_block_nesting) {
        if (!is_blank(text)) {
            result.diagnostics.push_back(make_warning(
                "deep-nesting", "block nesting exceeds " + std::to_string(max_block_nesting) +
                    " levels; content kept as plain text",
                line_span(first_line)));
            Paragraph para;
            para.inlines.push_back(make_text(std::string(text), line_span(first_line)));
            result.blocks.push_back(Block{std::move(para), line_span(first_line)});
        }
        return result;
    }

    std::vector<std::string_view> lines;
    {
        size_t start = 0;
        for (size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == '\n') {
                lines.push_back(text.substr(start, i - start));
                start = i + 1;
            }
        }
        if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n')
            lines.pop_back();
    }
    const auto file_line = [&](size_t idx) { return first_line + static_cast<int>(idx); };

    std::optional<std::pair<std::string, int>> pending_label;  // label, file line
    auto warn_dangling_label = [&]() {
        if (!pending_label) return;
        result.diagnostics.push_back(make_warning(
            "dangling-label", "label target (" + pending_label->first +
                ")= does not precede a heading, figure or math block",
            line_span(pending_label->second)));
        pending_label.reset();
    };
    auto attach_label = [&](Block& block) {
        if (!pending_label) return;
        auto apply = [&](std::optional<std::string>& slot) {
            if (!slot) {
                slot = pending_label->first;
                pending_label.reset();
            } else {
                warn_dangling_label();
            }
        };
        if (auto* h = std::get_if<Heading>(&block.data)) apply(h->label);
        else if (auto* m = std::get_if<MathBlock>(&block.data)) apply(m->label);
        else if (auto* f = std::get_if<FigureDirective>(&block.data)) apply(f->label);
        else warn_dangling_label();
    };
    auto emit = [&](Block block) {
        attach_label(block);
        result.blocks.push_back(std::move(block));
    };

    size_t i = 0;
    const size_t n = lines.size();
    while (i < n) {
        const std::string_view line = lines[i];
        if (is_blank(line)) {
            ++i;
            continue;
        }

        if (const auto atx = match_atx(line)) {
            Heading heading;
            heading.level = atx->level;
            InlineParseResult inl = parse_inlines(atx->rest, file_line(i));
            append_diags(result.diagnostics, std::move(inl.diagnostics));
            heading.inlines = std::move(inl.inlines);
            emit(Block{std::move(heading), line_span(file_line(i))});
            ++i;
            continue;
        }

        if (const auto fence = match_fence_open(line)) {
            const size_t open = i;
            ++i;
            std::vector<std::string_view> body;
            bool closed = false;
            while (i < n) {
                if (match_fence_close(lines[i], fence->ch, fence->len)) {
                    closed = true;
                    ++i;
                    break;
                }
                body.push_back(lines[i]);
                ++i;
            }
            const SourceSpan span{file_line(open), file_line(closed ? i - 1 : n - 1)};
            if (!closed)
                result.diagnostics.push_back(make_error(
                    "unclosed-fence", "code fence opened here is never closed", line_span(file_line(open))));
            // directive?
            std::string_view info = fence->info;
            if (!info.empty() && info.front() == '{') {
                const auto close_brace = info.find('}');
                if (close_brace != std::string_view::npos && close_brace > 1) {
                    const std::string name(info.substr(1, close_brace - 1));
                    const std::string arg(strip(info.substr(close_brace + 1)));
                    std::map<std::string, std::string> options;
                    const size_t body_from = parse_directive_options(body, options);
                    std::string dir_body;
                    for (size_t k = body_from; k < body.size(); ++k) {
                        dir_body += body[k];
                        if (k + 1 < body.size()) dir_body += '\n';
                    }
                    DirectiveResult dir = parse_directive(
                        name, arg, options, dir_body, span,
                        file_line(open + 1 + body_from), depth);
                    append_diags(result.diagnostics, std::move(dir.diagnostics));
                    if (dir.block) emit(std::move(*dir.block));
                    continue;
                }
            }
            std::string joined;
            for (size_t k = 0; k < body.size(); ++k) {
                joined += body[k];
                if (k + 1 < body.size()) joined += '\n';
            }
            CodeBlock code;
            code.source = std::move(joined);
            if (!info.empty()) {
                const auto word_end = info.find_first_of(" \t");
                code.language = std::string(
                    word_end == std::string_view::npos ? info : info.substr(0, word_end));
            }
            emit(Block{std::move(code), span});
            continue;
        }

        if (match_math_open(line)) {
            const size_t open = i;
            std::string_view rest = strip(block_start(line).substr(2));
            if (rest.size() >= 2 && rest.substr(rest.size() - 2) == "$$") {
                MathBlock math;
                math.latex = std::string(strip(rest.substr(0, rest.size() - 2)));
                emit(Block{std::move(math), line_span(file_line(open))});
                ++i;
                continue;
            }
            std::string content(rest);
            ++i;
            bool closed = false;
            while (i < n) {
                std::string_view l = rstrip(lines[i]);
                if (l.size() >= 2 && l.substr(l.size() - 2) == "$$") {
                    std::string_view head = rstrip(l.substr(0, l.size() - 2));
                    if (!head.empty()) {
                        if (!content.empty()) content += '\n';
                        content += head;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                if (!content.empty()) content += '\n';
                content += lines[i];
                ++i;
            }
            if (!closed)
                result.diagnostics.push_back(make_error(
                    "unclosed-math", "$$ math block opened here is never closed",
                    line_span(file_line(open))));
            MathBlock math;
            math.latex = std::move(content);
            emit(Block{std::move(math), SourceSpan{file_line(open), file_line(i - 1)}});
            continue;
        }

        if (const auto label = match_label_target(line)) {
            warn_dangling_label();
            pending_label = {*label, file_line(i)};
            ++i;
            continue;
        }

        // pipe table: header row followed by a separator with matching arity
        if (line.find('|') != std::string_view::npos && i + 1 < n) {
            const auto header_cells = split_table_row(line);
            if (header_cells.size() >= 1 &&
                match_table_separator(lines[i + 1], header_cells.size())) {
                Table table;
                const size_t start = i;
                for (const std::string& cell : header_cells) {
                    InlineParseResult inl = parse_inlines(cell, file_line(i));
                    append_diags(result.diagnostics, std::move(inl.diagnostics));
                    table.header.push_back(std::move(inl.inlines));
                }
                i += 2;
                while (i < n && !is_blank(lines[i]) &&
                       lines[i].find('|') != std::string_view::npos) {
                    auto cells = split_table_row(lines[i]);
                    cells.resize(header_cells.size());
                    std::vector<TableCell> row;
                    for (const std::string& cell : cells) {
                        InlineParseResult inl = parse_inlines(cell, file_line(i));
                        append_diags(result.diagnostics, std::move(inl.diagnostics));
                        row.push_back(std::move(inl.inlines));
                    }
                    table.rows.push_back(std::move(row));
                    ++i;
                }
                emit(Block{std::move(table), SourceSpan{file_line(start), file_line(i - 1)}});
                continue;
            }
        }

        if (block_start(line).front() == '>') {
            const size_t start = i;
            std::vector<std::string> content;
            bool paragraph_open = false;
            while (i < n) {
                const std::string_view l = lines[i];
                const std::string_view s = block_start(l);
                if (!s.empty() && s.front() == '>') {
                    std::string_view inner = s.substr(1);
                    if (!inner.empty() && inner.front() == ' ') inner.remove_prefix(1);
                    content.push_back(std::string(inner));
                    paragraph_open = !is_blank(inner) && !starts_new_block(inner);
                    ++i;
                } else if (!is_blank(l) && paragraph_open && !starts_new_block(l)) {
                    content.push_back(std::string(l));  // lazy continuation
                    ++i;
                } else {
                    break;
                }
            }
            std::string joined;
            for (size_t k = 0; k < content.size(); ++k) {
                joined += content[k];
                if (k + 1 < content.size()) joined += '\n';
            }
            BlockQuote quote;
            BlockParseResult inner = parse_blocks(joined, file_line(start), depth + 1);
            append_diags(result.diagnostics, std::move(inner.diagnostics));
            quote.blocks = std::move(inner.blocks);
            emit(Block{std::move(quote), SourceSpan{file_line(start), file_line(i - 1)}});
            continue;
        }

        if (match_thematic(line)) {
            emit(Block{ThematicBreak{}, line_span(file_line(i))});
            ++i;
            continue;
        }

        if (const auto first_marker = match_list_marker(line); first_marker && indent_of(line) <= 3) {
            const size_t start = i;
            List list;
            list.ordered = first_marker->ordered;
            bool loose = false;
            while (i < n) {
                if (is_blank(lines[i])) {
                    size_t j = i;
                    while (j < n && is_blank(lines[j])) ++j;
                    if (j >= n) break;
                    const auto next_marker = match_list_marker(lines[j]);
                    if (next_marker && next_marker->ordered == list.ordered &&
                        next_marker->bullet == first_marker->bullet && next_marker->indent <= 3) {
                        loose = true;
                        i = j;
                        continue;
                    }
                    break;
                }
                const auto marker = match_list_marker(lines[i]);
                if (!marker || marker->ordered != list.ordered ||
                    marker->bullet != first_marker->bullet || marker->indent > 3)
                    break;
                // collect one item
                const size_t item_start = i;
                const size_t col = marker->content_col;
                std::vector<std::string> item_lines;
                item_lines.push_back(
                    marker->has_content ? std::string(lines[i].substr(col)) : std::string());
                ++i;
                while (i < n) {
                    const std::string_view l = lines[i];
                    if (is_blank(l)) {
                        size_t j = i;
                        while (j < n && is_blank(lines[j])) ++j;
                        if (j < n && static_cast<size_t>(indent_of(lines[j])) >= col) {
                            for (; i < j; ++i) item_lines.push_back(std::string());
                            loose = true;
                            continue;
                        }
                        break;
                    }
                    if (static_cast<size_t>(indent_of(l)) >= col) {
                        item_lines.push_back(std::string(l.substr(col)));
                        ++i;
                        continue;
                    }
                    // lazy paragraph continuation
                    if (!item_lines.empty() && !item_lines.back().empty() &&
                        !starts_new_block(l) && !match_list_marker(l)) {
                        item_lines.push_back(std::string(lstrip(l)));
                        ++i;
                        continue;
                    }
                    break;
                }
                std::string joined;
                for (size_t k = 0; k < item_lines.size(); ++k) {
                    joined += item_lines[k];
                    if (k + 1 < item_lines.size()) joined += '\n';
                }
                ListItem item;
                BlockParseResult inner = parse_blocks(joined, file_line(item_start), depth + 1);
                append_diags(result.diagnostics, std::move(inner.diagnostics));
                item.blocks = std::move(inner.blocks);
                list.items.push_back(std::move(item));
            }
            list.tight = !loose;
            emit(Block{std::move(list), SourceSpan{file_line(start), file_line(i - 1)}});
            continue;
        }

        // paragraph
        {
            const size_t start = i;
            std::string content;
            while (i < n) {
                const std::string_view l = lines[i];
                if (is_blank(l)) break;
                if (i != start) {
                    if (starts_new_block(l)) break;
                    if (l.find('|') != std::string_view::npos && i + 1 < n &&
                        match_table_separator(lines[i + 1], split_table_row(l).size()))
                        break;
                }
                if (!content.empty()) content += '\n';
                content += strip(l);
                ++i;
            }
            Paragraph para;
            InlineParseResult inl = parse_inlines(content, file_line(start));
            append_diags(result.diagnostics, std::move(inl.diagnostics));
            para.inlines = std::move(inl.inlines);
            emit(Block{std::move(para), SourceSpan{file_line(start), file_line(i - 1)}});
        }
    }
    warn_dangling_label();
    return result;
}

}  // namespace press
