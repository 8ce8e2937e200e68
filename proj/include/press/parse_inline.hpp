// Inline parser: emphasis/strong (CommonMark delimiter algorithm), code
// spans, links, images, inline math and the {cite}/{ref}/{eq}/{math} roles.
// Unmatched delimiters fall back to literal text; nothing here is fatal.
#pragma once

#include <algorithm>
#include <list>
#include <string>
#include <string_view>
#include <vector>

#include "press/ast.hpp"
#include "press/diagnostics.hpp"

namespace press {

struct InlineParseResult {
    std::vector<Inline> inlines;
    std::vector<Diagnostic> diagnostics;
};

namespace inline_detail {

inline bool is_ascii_punct(char c) {
    return std::string_view("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~").find(c) !=
           std::string_view::npos;
}

inline bool is_space_char(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline bool is_role_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_' || c == ':';
}

// Recursion/nesting limits: beyond these, constructs fall back to literal
// text so hostile input cannot overflow the stack. The scan window bounds
// the opener search per closer, keeping delimiter storms linear.
inline constexpr int max_link_nesting = 32;
inline constexpr int max_emphasis_nesting = 100;
inline constexpr int max_opener_scan = 2000;

/// Work node: either a finished inline or an unresolved emphasis delimiter run.
struct Tok {
    Inline node;
    bool is_delim = false;
    char dch = 0;
    int dlen = 0;      // unconsumed delimiter characters
    int orig_len = 0;  // original run length, for the multiple-of-3 rule
    bool can_open = false;
    bool can_close = false;
    int tree_depth = 0;  // nesting depth of the finished subtree
};

/// Finds the next run of exactly `n` backticks at or after `from`.
/// Returns npos when the string has no such closer.
inline size_t find_backtick_closer(std::string_view text, size_t from, size_t n) {
    size_t j = from;
    while (j < text.size()) {
        if (text[j] != '`') {
            ++j;
            continue;
        }
        size_t m = 0;
        while (j + m < text.size() && text[j + m] == '`') ++m;
        if (m == n) return j;
        j += m;
    }
    return std::string_view::npos;
}

/// CommonMark code-span content normalization: line endings become spaces;
/// one leading and trailing space is stripped when both are present and the
/// content is not all spaces.
inline std::string normalize_code_span(std::string_view raw) {
    std::string content(raw);
    for (char& c : content)
        if (c == '\n' || c == '\r') c = ' ';
    const bool all_space = content.find_first_not_of(' ') == std::string::npos;
    if (content.size() >= 2 && content.front() == ' ' && content.back() == ' ' && !all_space)
        content = content.substr(1, content.size() - 2);
    return content;
}

inline std::string unescape_punct(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size() && is_ascii_punct(raw[i + 1])) {
            out += raw[i + 1];
            ++i;
        } else {
            out += raw[i];
        }
    }
    return out;
}

struct LinkDest {
    std::string url;
    size_t next;  // position just past the closing ')'
};

/// Parses `(dest)` or `(dest "title")` starting at the '(' (titles are
/// accepted and dropped; the AST has no title field). Destinations are either
/// <angle wrapped> or bare with balanced parentheses and no whitespace.
inline bool parse_link_dest(std::string_view text, size_t open_paren, LinkDest& out) {
    size_t j = open_paren + 1;
    while (j < text.size() && is_space_char(text[j])) ++j;
    std::string dest;
    if (j < text.size() && text[j] == '<') {
        size_t k = j + 1;
        while (k < text.size() && text[k] != '>' && text[k] != '<' && text[k] != '\n') {
            if (text[k] == '\\' && k + 1 < text.size()) ++k;
            ++k;
        }
        if (k >= text.size() || text[k] != '>') return false;
        dest = unescape_punct(text.substr(j + 1, k - j - 1));
        j = k + 1;
    } else {
        int depth = 0;
        size_t start = j;
        while (j < text.size()) {
            char c = text[j];
            if (c == '\\' && j + 1 < text.size() && is_ascii_punct(text[j + 1])) {
                j += 2;
                continue;
            }
            if (is_space_char(c)) break;
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            ++j;
        }
        if (depth != 0) return false;
        dest = unescape_punct(text.substr(start, j - start));
    }
    while (j < text.size() && is_space_char(text[j])) ++j;
    if (j < text.size() && (text[j] == '"' || text[j] == '\'')) {
        const char q = text[j];
        ++j;
        while (j < text.size() && text[j] != q) {
            if (text[j] == '\\' && j + 1 < text.size()) ++j;
            ++j;
        }
        if (j >= text.size()) return false;
        ++j;
        while (j < text.size() && is_space_char(text[j])) ++j;
    }
    if (j >= text.size() || text[j] != ')') return false;
    out.url = std::move(dest);
    out.next = j + 1;
    return true;
}

/// Finds the `]` matching the `[` at `open`, honoring escapes and nesting.
inline size_t find_bracket_close(std::string_view text, size_t open) {
    int depth = 0;
    for (size_t j = open; j < text.size(); ++j) {
        char c = text[j];
        if (c == '\\' && j + 1 < text.size() && is_ascii_punct(text[j + 1])) {
            ++j;
            continue;
        }
        if (c == '[') ++depth;
        if (c == ']') {
            --depth;
            if (depth == 0) return j;
        }
    }
    return std::string_view::npos;
}

}  // namespace inline_detail

/// Full inline grammar. `base_line` is the file line of the first character
/// of `text`; spans of produced nodes are derived from embedded newlines.
/// `depth` counts link-text recursion.
inline InlineParseResult parse_inlines(std::string_view text, int base_line = 1,
                                       int depth = 0) {
    using namespace inline_detail;
    InlineParseResult result;

    // line lookup by position
    std::vector<size_t> newline_pos;
    for (size_t i = 0; i < text.size(); ++i)
        if (text[i] == '\n') newline_pos.push_back(i);
    auto line_of = [&](size_t pos) {
        auto it = std::upper_bound(newline_pos.begin(), newline_pos.end(),
                                   pos == 0 ? 0 : pos - 1);
        return base_line + static_cast<int>(it - newline_pos.begin());
    };
    auto span_of = [&](size_t from, size_t to) {
        return SourceSpan{line_of(from), line_of(to == 0 ? 0 : to - 1)};
    };

    std::list<Tok> toks;
    std::string pending;  // literal text accumulator
    size_t pending_start = 0;

    auto flush_pending = [&](size_t end_pos) {
        if (pending.empty()) return;
        Tok t;
        t.node = make_text(pending, span_of(pending_start, end_pos));
        toks.push_back(std::move(t));
        pending.clear();
    };
    auto push_literal = [&](size_t pos, std::string_view lit) {
        if (pending.empty()) pending_start = pos;
        pending += lit;
    };
    auto push_node = [&](size_t from, size_t to, InlineData data) {
        flush_pending(from);
        Tok t;
        t.node = Inline{std::move(data), span_of(from, to)};
        t.tree_depth = 1;
        toks.push_back(std::move(t));
    };

    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char c = text[i];

        if (c == '\\' && i + 1 < n && is_ascii_punct(text[i + 1])) {
            push_literal(i, text.substr(i + 1, 1));
            i += 2;
            continue;
        }

        if (c == '`') {
            size_t run = 0;
            while (i + run < n && text[i + run] == '`') ++run;
            const size_t close = find_backtick_closer(text, i + run, run);
            if (close == std::string_view::npos) {
                push_literal(i, text.substr(i, run));
                i += run;
                continue;
            }
            push_node(i, close + run,
                      CodeSpan{normalize_code_span(text.substr(i + run, close - i - run))});
            i = close + run;
            continue;
        }

        if (c == '{') {
            // role: {name}`content`
            size_t j = i + 1;
            while (j < n && is_role_name_char(text[j])) ++j;
            if (j > i + 1 && j < n && text[j] == '}' && j + 1 < n && text[j + 1] == '`') {
                const std::string name(text.substr(i + 1, j - i - 1));
                size_t run = 0;
                while (j + 1 + run < n && text[j + 1 + run] == '`') ++run;
                const size_t body_start = j + 1 + run;
                const size_t close = find_backtick_closer(text, body_start, run);
                if (close != std::string_view::npos) {
                    std::string content = normalize_code_span(text.substr(body_start, close - body_start));
                    const size_t end = close + run;
                    // trim
                    const auto b = content.find_first_not_of(' ');
                    const auto e = content.find_last_not_of(' ');
                    content = b == std::string::npos ? "" : content.substr(b, e - b + 1);
                    const SourceSpan sp = span_of(i, end);
                    if (content.empty()) {
                        result.diagnostics.push_back(
                            make_warning("empty-role", "role {" + name + "} has empty content", sp));
                        push_literal(i, text.substr(i, end - i));
                        i = end;
                        continue;
                    }
                    if (name == "cite") {
                        std::vector<std::string> keys;
                        size_t pos = 0;
                        while (pos <= content.size()) {
                            size_t comma = content.find(',', pos);
                            std::string key = content.substr(
                                pos, comma == std::string::npos ? std::string::npos : comma - pos);
                            const auto kb = key.find_first_not_of(" \t");
                            const auto ke = key.find_last_not_of(" \t");
                            if (kb != std::string::npos) keys.push_back(key.substr(kb, ke - kb + 1));
                            if (comma == std::string::npos) break;
                            pos = comma + 1;
                        }
                        if (keys.empty()) {
                            result.diagnostics.push_back(make_warning(
                                "empty-role", "role {cite} lists no citation keys", sp));
                            push_literal(i, text.substr(i, end - i));
                        } else {
                            push_node(i, end, CiteRole{std::move(keys)});
                        }
                        i = end;
                        continue;
                    }
                    if (name == "ref") {
                        push_node(i, end, RefRole{content});
                        i = end;
                        continue;
                    }
                    if (name == "eq") {
                        push_node(i, end, EqRole{content});
                        i = end;
                        continue;
                    }
                    if (name == "math") {
                        push_node(i, end, MathInline{content});
                        i = end;
                        continue;
                    }
                    result.diagnostics.push_back(
                        make_warning("unknown-role", "unknown role {" + name + "}", sp));
                    push_literal(i, text.substr(i, end - i));
                    i = end;
                    continue;
                }
            }
            push_literal(i, "{");
            ++i;
            continue;
        }

        if (c == '$') {
            // single-line inline math; a closer must not follow a space or
            // precede a digit, and the content may not contain '$'
            if (i + 1 < n && !is_space_char(text[i + 1]) && text[i + 1] != '$') {
                const size_t close = text.find('$', i + 1);
                if (close != std::string_view::npos) {
                    std::string_view content = text.substr(i + 1, close - i - 1);
                    const bool ok = !content.empty() && !is_space_char(content.back()) &&
                                    content.find('\n') == std::string_view::npos &&
                                    (close + 1 >= n || !(text[close + 1] >= '0' && text[close + 1] <= '9'));
                    if (ok) {
                        push_node(i, close + 1, MathInline{std::string(content)});
                        i = close + 1;
                        continue;
                    }
                }
            }
            push_literal(i, "$");
            ++i;
            continue;
        }

        if (c == '!' && i + 1 < n && text[i + 1] == '[') {
            const size_t close = find_bracket_close(text, i + 1);
            if (close != std::string_view::npos && close + 1 < n && text[close + 1] == '(') {
                LinkDest dest;
                if (parse_link_dest(text, close + 1, dest)) {
                    push_node(i, dest.next,
                              Image{dest.url, unescape_punct(text.substr(i + 2, close - i - 2))});
                    i = dest.next;
                    continue;
                }
            }
            push_literal(i, "!");
            ++i;
            continue;
        }

        if (c == '[') {
            const size_t close = find_bracket_close(text, i);
            if (close != std::string_view::npos && close + 1 < n && text[close + 1] == '(' &&
                depth < max_link_nesting) {
                LinkDest dest;
                if (parse_link_dest(text, close + 1, dest)) {
                    InlineParseResult inner =
                        parse_inlines(text.substr(i + 1, close - i - 1), line_of(i + 1), depth + 1);
                    append_diags(result.diagnostics, std::move(inner.diagnostics));
                    push_node(i, dest.next, Link{dest.url, std::move(inner.inlines), false});
                    i = dest.next;
                    continue;
                }
            }
            push_literal(i, "[");
            ++i;
            continue;
        }

        if (c == '*' || c == '_') {
            size_t run = 0;
            while (i + run < n && text[i + run] == c) ++run;
            const char prev = i > 0 ? text[i - 1] : ' ';
            const char next = i + run < n ? text[i + run] : ' ';
            const bool prev_space = is_space_char(prev);
            const bool next_space = is_space_char(next);
            const bool prev_punct = is_ascii_punct(prev);
            const bool next_punct = is_ascii_punct(next);
            const bool left = !next_space && (!next_punct || prev_space || prev_punct);
            const bool right = !prev_space && (!prev_punct || next_space || next_punct);
            Tok t;
            t.is_delim = true;
            t.dch = c;
            t.dlen = static_cast<int>(run);
            t.orig_len = static_cast<int>(run);
            if (c == '*') {
                t.can_open = left;
                t.can_close = right;
            } else {
                t.can_open = left && (!right || prev_punct);
                t.can_close = right && (!left || next_punct);
            }
            t.node = make_text(std::string(run, c), span_of(i, i + run));
            if (!t.can_open && !t.can_close) {
                push_literal(i, text.substr(i, run));
            } else {
                flush_pending(i);
                toks.push_back(std::move(t));
            }
            i += run;
            continue;
        }

        push_literal(i, text.substr(i, 1));
        ++i;
    }
    flush_pending(n);

    // CommonMark process-emphasis: walk closers left to right, match each to
    // the nearest preceding compatible opener, honoring the multiple-of-3 rule.
    auto as_text = [](Tok& t) {
        if (t.is_delim) {
            t.node.data = Text{std::string(static_cast<size_t>(t.dlen), t.dch)};
            t.is_delim = false;
        }
    };

    for (auto closer = toks.begin(); closer != toks.end();) {
        if (!closer->is_delim || !closer->can_close || closer->dlen == 0) {
            ++closer;
            continue;
        }
        // nearest opener to the left, within the scan window
        auto opener = toks.end();
        int visited = 0;
        for (auto it = closer; it != toks.begin() && visited < max_opener_scan;) {
            --it;
            ++visited;
            if (!it->is_delim || it->dch != closer->dch || !it->can_open || it->dlen == 0)
                continue;
            const bool odd_match =
                (closer->can_open || it->can_close) &&
                (it->orig_len + closer->orig_len) % 3 == 0 &&
                !(it->orig_len % 3 == 0 && closer->orig_len % 3 == 0);
            if (odd_match) continue;
            opener = it;
            break;
        }
        if (opener == toks.end()) {
            if (!closer->can_open) as_text(*closer);
            ++closer;
            continue;
        }
        int wrapped_depth = 1;
        for (auto it = std::next(opener); it != closer; ++it)
            wrapped_depth = std::max(wrapped_depth, it->tree_depth + 1);
        if (wrapped_depth > max_emphasis_nesting) {
            // any farther opener only deepens the tree; the closer is done
            as_text(*closer);
            ++closer;
            continue;
        }
        const int use = (closer->dlen >= 2 && opener->dlen >= 2) ? 2 : 1;
        std::vector<Inline> children;
        for (auto it = std::next(opener); it != closer;) {
            as_text(*it);
            children.push_back(std::move(it->node));
            it = toks.erase(it);
        }
        const SourceSpan sp{opener->node.span.start_line, closer->node.span.end_line};
        Tok wrapped;
        wrapped.node = use == 2 ? Inline{Strong{std::move(children)}, sp}
                                : Inline{Emph{std::move(children)}, sp};
        wrapped.tree_depth = wrapped_depth;
        toks.insert(closer, std::move(wrapped));
        opener->dlen -= use;
        closer->dlen -= use;
        if (opener->dlen == 0) toks.erase(opener);
        if (closer->dlen == 0) closer = toks.erase(closer);
    }

    // leftovers become literal text; merge adjacent text nodes
    for (Tok& t : toks) as_text(t);
    for (Tok& t : toks) {
        if (!result.inlines.empty() && std::holds_alternative<Text>(t.node.data) &&
            std::holds_alternative<Text>(result.inlines.back().data)) {
            std::get<Text>(result.inlines.back().data).text +=
                std::get<Text>(t.node.data).text;
            result.inlines.back().span.end_line = t.node.span.end_line;
        } else {
            result.inlines.push_back(std::move(t.node));
        }
    }
    return result;
}

}  // namespace press
