// Strict structural checks over emitted HTML: tag balance, id/href
// harvesting for the link audit, absolute-URL policy and the
// whitespace-insensitive normalization used by the conformance corpus.
#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

inline bool is_void_element(const std::string& name) {
    static const std::set<std::string> voids = {"area", "base",  "br",    "col",  "embed",
                                                "hr",   "img",   "input", "link", "meta",
                                                "param", "source", "track", "wbr"};
    return voids.count(name) != 0;
}

struct HtmlScan {
    bool well_formed = true;
    std::string error;
    std::set<std::string> ids;
    std::vector<std::string> hrefs;  // href= and src= values
};

/// Minimal strict parser: every open tag must be closed in order, void
/// elements may self-close, attribute values must be double-quoted.
inline HtmlScan scan_html(const std::string& html) {
    HtmlScan scan;
    std::vector<std::string> stack;
    size_t i = 0;
    const size_t n = html.size();
    auto fail = [&](const std::string& message) {
        if (scan.well_formed) {
            scan.well_formed = false;
            scan.error = message + " @" + std::to_string(i);
        }
    };

    while (i < n) {
        if (html[i] != '<') {
            ++i;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            const auto end = html.find("-->", i);
            if (end == std::string::npos) {
                fail("unterminated comment");
                break;
            }
            i = end + 3;
            continue;
        }
        if (html.compare(i, 2, "<!") == 0) {  // doctype
            const auto end = html.find('>', i);
            if (end == std::string::npos) {
                fail("unterminated doctype");
                break;
            }
            i = end + 1;
            continue;
        }
        const bool closing = i + 1 < n && html[i + 1] == '/';
        size_t j = i + (closing ? 2 : 1);
        std::string name;
        while (j < n && (std::isalnum(static_cast<unsigned char>(html[j])) || html[j] == '-'))
            name += html[j++];
        if (name.empty()) {
            fail("empty tag name");
            break;
        }
        // attributes
        bool self_closed = false;
        while (j < n && html[j] != '>') {
            if (html[j] == '/' && j + 1 < n && html[j + 1] == '>') {
                self_closed = true;
                j += 1;
                break;
            }
            if (html[j] == '"') {
                const auto close = html.find('"', j + 1);
                if (close == std::string::npos) {
                    fail("unterminated attribute value in <" + name + ">");
                    return scan;
                }
                j = close + 1;
                continue;
            }
            // attribute harvesting: id= / href= / src=
            for (const char* attr : {"id=\"", "href=\"", "src=\""}) {
                const size_t len = std::string(attr).size();
                if (html.compare(j, len, attr) == 0) {
                    const auto close = html.find('"', j + len);
                    if (close != std::string::npos) {
                        const std::string value = html.substr(j + len, close - j - len);
                        if (attr[0] == 'i') scan.ids.insert(value);
                        else scan.hrefs.push_back(value);
                    }
                }
            }
            ++j;
        }
        if (j >= n) {
            fail("unterminated tag <" + name + ">");
            break;
        }
        i = j + 1;

        // scripts/styles may contain '<'
        if (!closing && !self_closed && (name == "script" || name == "style")) {
            const std::string end_tag = "</" + name + ">";
            const auto end = html.find(end_tag, i);
            if (end == std::string::npos) {
                fail("unterminated <" + name + ">");
                break;
            }
            i = end + end_tag.size();
            continue;
        }
        if (closing) {
            if (stack.empty() || stack.back() != name) {
                fail("mismatched closing </" + name + ">");
                break;
            }
            stack.pop_back();
        } else if (!self_closed && !is_void_element(name)) {
            stack.push_back(name);
        }
    }
    if (scan.well_formed && !stack.empty()) {
        scan.well_formed = false;
        scan.error = "unclosed <" + stack.back() + "> at end of document";
    }
    return scan;
}

/// Whitespace-insensitive comparison form: lines trimmed, empties dropped,
/// joined without separators.
inline std::string normalize_html(const std::string& html) {
    std::string out;
    std::string line;
    auto flush = [&] {
        const auto b = line.find_first_not_of(" \t\r");
        const auto e = line.find_last_not_of(" \t\r");
        if (b != std::string::npos) out += line.substr(b, e - b + 1);
        line.clear();
    };
    for (char c : html) {
        if (c == '\n') flush();
        else line += c;
    }
    flush();
    return out;
}

inline bool is_absolute_url(const std::string& url) {
    return url.rfind("http://", 0) == 0 || url.rfind("https://", 0) == 0 ||
           url.rfind("//", 0) == 0;
}

}  // namespace testsupport
