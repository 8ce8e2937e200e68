// Build configuration: a flat YAML subset (scalars, flow/block lists and one
// level of nested maps), publish.yml by default. Relative paths resolve
// against the config file's directory.
#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "press/diagnostics.hpp"
#include "press/parse_blocks.hpp"
#include "press/parser.hpp"
#include "press/tags.hpp"

namespace press {

inline constexpr const char* default_math_renderer_url =
    "https://cdn.jsdelivr.net/npm/mathjax@3.2.2/es5/tex-chtml.js";
inline constexpr const char* default_slides_runtime_base_url =
    "https://cdn.jsdelivr.net/npm/reveal.js@4.6.1";

struct Config {
    std::string title;
    std::vector<std::string> authors;
    std::vector<std::string> sources;       // in build order, as written
    std::vector<std::string> bibliography;
    std::vector<Target> targets = {Target::book, Target::notebook, Target::slides};
    std::string out_dir = "_build";
    std::string kernel_name = "python3";
    std::string kernel_language = "python";
    std::string slides_runtime_base_url = default_slides_runtime_base_url;
    std::string slides_theme = "white";
    std::string math_renderer_url = default_math_renderer_url;
    bool strict = false;

    std::filesystem::path base_dir;  // directory of the config file

    std::filesystem::path resolve(const std::string& path) const {
        std::filesystem::path p(path);
        if (p.is_absolute()) return p.lexically_normal();
        return (base_dir / p).lexically_normal();
    }
};

struct LoadConfigResult {
    Config config;
    std::vector<Diagnostic> diagnostics;
};

namespace config_detail {

inline bool parse_bool(std::string_view v, bool fallback) {
    if (v == "true" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "no" || v == "off") return false;
    return fallback;
}

}  // namespace config_detail

inline LoadConfigResult load_config(const std::filesystem::path& path) {
    using namespace block_detail;
    LoadConfigResult result;
    Config& cfg = result.config;
    const std::string file_name = path.string();
    cfg.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        Diagnostic d = make_error("missing-file", "cannot open config file", line_span(1));
        d.source = file_name;
        result.diagnostics.push_back(std::move(d));
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = normalize_newlines(buf.str());
    const auto lines = parser_detail::split_lines(text);

    bool targets_set = false;
    std::vector<std::string> raw_targets;

    auto set_value = [&](const std::string& key, const std::string& value, int line) {
        auto err = [&](const std::string& msg) {
            Diagnostic d = make_warning("unknown-config-key", msg, line_span(line));
            d.source = file_name;
            result.diagnostics.push_back(std::move(d));
        };
        if (key == "title") cfg.title = parser_detail::unquote(value);
        else if (key == "authors") cfg.authors = parser_detail::parse_scalar_list(value);
        else if (key == "out_dir") cfg.out_dir = parser_detail::unquote(value);
        else if (key == "strict") cfg.strict = config_detail::parse_bool(value, false);
        else if (key == "math_renderer_url") cfg.math_renderer_url = parser_detail::unquote(value);
        else if (key == "kernel.name") cfg.kernel_name = parser_detail::unquote(value);
        else if (key == "kernel.language") cfg.kernel_language = parser_detail::unquote(value);
        else if (key == "slides.runtime_base_url")
            cfg.slides_runtime_base_url = parser_detail::unquote(value);
        else if (key == "slides.theme") cfg.slides_theme = parser_detail::unquote(value);
        else if (key == "sources") {
            for (auto& s : parser_detail::parse_scalar_list(value)) cfg.sources.push_back(s);
        } else if (key == "bibliography") {
            for (auto& s : parser_detail::parse_scalar_list(value)) cfg.bibliography.push_back(s);
        } else if (key == "targets") {
            targets_set = true;
            for (auto& s : parser_detail::parse_scalar_list(value)) raw_targets.push_back(s);
        } else {
            err("unknown config key \"" + key + "\"");
        }
    };

    std::string section;  // current nested map key, if any
    std::string list_key;  // current block-list key, if any
    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string_view raw = lines[i];
        const int line_no = static_cast<int>(i + 1);
        if (is_blank(raw) || lstrip(raw).front() == '#') continue;
        const bool indented = raw.front() == ' ' || raw.front() == '\t';
        const std::string_view s = strip(raw);

        if (indented && !list_key.empty() && s.front() == '-') {
            const std::string item = parser_detail::unquote(std::string(strip(s.substr(1))));
            if (item.empty()) continue;
            if (list_key == "sources") cfg.sources.push_back(item);
            else if (list_key == "bibliography") cfg.bibliography.push_back(item);
            else if (list_key == "targets") raw_targets.push_back(item);
            else if (list_key == "authors") cfg.authors.push_back(item);
            continue;
        }
        const auto colon = s.find(':');
        if (colon == std::string_view::npos || colon == 0) {
            Diagnostic d = make_error(
                "bad-config", "malformed config line: \"" + std::string(s) + "\"", line_span(line_no));
            d.source = file_name;
            result.diagnostics.push_back(std::move(d));
            continue;
        }
        const std::string key(strip(s.substr(0, colon)));
        const std::string value(strip(s.substr(colon + 1)));
        if (!indented) {
            section.clear();
            list_key.clear();
            if (value.empty()) {
                if (key == "sources" || key == "bibliography" || key == "targets" ||
                    key == "authors") {
                    list_key = key;
                    if (key == "targets") targets_set = true;
                } else {
                    section = key;
                }
            } else {
                set_value(key, value, line_no);
            }
        } else if (!section.empty()) {
            set_value(section + "." + key, value, line_no);
        } else {
            Diagnostic d = make_error("bad-config", "unexpected indented line", line_span(line_no));
            d.source = file_name;
            result.diagnostics.push_back(std::move(d));
        }
    }

    if (targets_set) {
        cfg.targets.clear();
        for (const std::string& name : raw_targets) {
            const auto target = target_from_name(name);
            if (!target) {
                Diagnostic d = make_error(
                    "unknown-target",
                    "unknown target \"" + name + "\" (expected book, notebook or slides)",
                    line_span(1));
                d.source = file_name;
                result.diagnostics.push_back(std::move(d));
                continue;
            }
            if (std::find(cfg.targets.begin(), cfg.targets.end(), *target) == cfg.targets.end())
                cfg.targets.push_back(*target);
        }
    }
    if (cfg.sources.empty()) {
        Diagnostic d = make_error("missing-sources", "config lists no sources", line_span(1));
        d.source = file_name;
        result.diagnostics.push_back(std::move(d));
    }

    // out_dir must not be an ancestor of any source
    const auto out_abs = std::filesystem::weakly_canonical(cfg.resolve(cfg.out_dir));
    for (const std::string& source : cfg.sources) {
        const auto src_abs = std::filesystem::weakly_canonical(cfg.resolve(source));
        const auto rel = src_abs.lexically_relative(out_abs);
        if (!rel.empty() && rel.native().rfind("..", 0) != 0 && rel != ".") {
            Diagnostic d = make_error(
                "bad-config", "out_dir " + cfg.out_dir + " is an ancestor of source " + source,
                line_span(1));
            d.source = file_name;
            result.diagnostics.push_back(std::move(d));
        }
    }
    return result;
}

}  // namespace press
