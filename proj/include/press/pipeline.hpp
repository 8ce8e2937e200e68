// Build orchestration: parse -> bibliography -> labels -> citations -> per
// target filter + resolve + emit. All diagnostics are collected before any
// byte is written (gate-then-write), so a failing build leaves no partial
// target behind, and `check` never writes at all.
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "press/ast.hpp"
#include "press/bibtex.hpp"
#include "press/config.hpp"
#include "press/emit_book.hpp"
#include "press/emit_notebook.hpp"
#include "press/emit_slides.hpp"
#include "press/filter.hpp"
#include "press/parser.hpp"
#include "press/xref.hpp"

namespace press {

struct BuildReport {
    std::map<std::string, std::vector<std::string>> emitted;  // target -> written paths
    std::vector<Diagnostic> diagnostics;
    int exit_status = 0;  // 0 ok, 1 diagnostic errors (or warnings under strict)
};

namespace pipeline_detail {

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct PipelineState {
    std::vector<Document> documents;  // parsed + number-annotated
    LabelTable labels;
    CitationMap citations;
    std::map<std::string, std::string> assets;  // asset rel path -> bytes
    std::map<Target, std::vector<Document>> per_target;  // filtered + resolved
    std::vector<Diagnostic> diagnostics;
};

inline void push_unique(std::vector<Diagnostic>& diags, Diagnostic d) {
    for (const Diagnostic& prev : diags) {
        if (prev.code == d.code && prev.message == d.message && prev.source == d.source &&
            prev.span == d.span)
            return;
    }
    diags.push_back(std::move(d));
}

inline PipelineState run_pipeline(const Config& config, const std::vector<Target>& targets,
                                  bool check_lints) {
    PipelineState state;

    // parse sources in config order
    for (const std::string& source : config.sources) {
        const auto path = config.resolve(source);
        const auto text = read_file(path);
        if (!text) {
            Diagnostic d = make_error("missing-file", "cannot open source file", line_span(1));
            d.source = source;
            state.diagnostics.push_back(std::move(d));
            continue;
        }
        ParseResult parsed = parse_source(*text, source);
        append_diags(state.diagnostics, std::move(parsed.diagnostics));
        state.documents.push_back(std::move(parsed.document));
    }

    // bibliography databases, config order; duplicate keys across files error
    std::vector<BibEntry> entries;
    std::set<std::string> seen_keys;
    for (const std::string& bib : config.bibliography) {
        const auto path = config.resolve(bib);
        const auto text = read_file(path);
        if (!text) {
            Diagnostic d = make_error("missing-file", "cannot open bibliography file", line_span(1));
            d.source = bib;
            state.diagnostics.push_back(std::move(d));
            continue;
        }
        BibParseResult parsed = parse_bibtex(*text);
        for (Diagnostic& d : parsed.diagnostics) {
            d.source = bib;
            state.diagnostics.push_back(std::move(d));
        }
        for (BibEntry& entry : parsed.entries) {
            if (!seen_keys.insert(entry.key).second) {
                Diagnostic d = make_error(
                    "duplicate-key",
                    "citation key \"" + entry.key + "\" already defined in an earlier database",
                    line_span(1));
                d.source = bib;
                state.diagnostics.push_back(std::move(d));
                continue;
            }
            entries.push_back(std::move(entry));
        }
    }

    // page/notebook file names derive from source stems; collisions would
    // silently overwrite output files
    {
        std::map<std::string, std::string> stems;
        const bool book_selected =
            std::find(targets.begin(), targets.end(), Target::book) != targets.end();
        for (const Document& doc : state.documents) {
            const std::string stem = xref_detail::source_stem(doc.source_name);
            if (book_selected && (stem == "index" || stem == "references")) {
                Diagnostic d = make_error(
                    "reserved-stem",
                    "source stem \"" + stem + "\" collides with a generated book page",
                    line_span(1));
                d.source = doc.source_name;
                state.diagnostics.push_back(std::move(d));
            }
            const auto [it, inserted] = stems.emplace(stem, doc.source_name);
            if (!inserted) {
                Diagnostic d = make_error(
                    "stem-collision",
                    "sources " + it->second + " and " + doc.source_name +
                        " would emit the same output file name",
                    line_span(1));
                d.source = doc.source_name;
                state.diagnostics.push_back(std::move(d));
            }
        }
    }

    CollectLabelsResult labels = collect_labels(state.documents);
    append_diags(state.diagnostics, std::move(labels.diagnostics));
    state.labels = std::move(labels.table);

    ResolveCitationsResult citations = resolve_citations(state.documents, entries);
    append_diags(state.diagnostics, std::move(citations.diagnostics));
    state.citations = std::move(citations.map);

    // figure assets: validate targets and preload bytes
    for (size_t i = 0; i < state.documents.size(); ++i) {
        const Document& doc = state.documents[i];
        const auto source_dir = config.resolve(doc.source_name).parent_path();
        for_each_block(doc, [&](const Block& block) {
            const auto* fig = std::get_if<FigureDirective>(&block.data);
            if (!fig) return;
            const std::string rel = asset_rel_path(fig->target);
            Diagnostic d;
            if (rel.empty() || rel.rfind("..", 0) == 0 ||
                std::filesystem::path(fig->target).is_absolute()) {
                d = make_error("invalid-path",
                               "figure path \"" + fig->target + "\" escapes the source directory",
                               block.span);
                d.source = doc.source_name;
                push_unique(state.diagnostics, std::move(d));
                return;
            }
            const auto file = source_dir / rel;
            const auto bytes = read_file(file);
            if (!bytes) {
                d = make_error("missing-figure", "figure file \"" + fig->target + "\" not found",
                               block.span);
                d.source = doc.source_name;
                push_unique(state.diagnostics, std::move(d));
                return;
            }
            const auto existing = state.assets.find(rel);
            if (existing != state.assets.end() && existing->second != *bytes) {
                d = make_warning("asset-collision",
                                 "asset path \"" + rel + "\" refers to different files; first wins",
                                 block.span);
                d.source = doc.source_name;
                push_unique(state.diagnostics, std::move(d));
                return;
            }
            state.assets.emplace(rel, std::move(*bytes));
        });
    }

    // per target: filter then resolve references (diagnostics deduplicated
    // across targets, since a dangling ref repeats wherever the fragment is
    // included)
    for (Target target : targets) {
        std::vector<Document> docs;
        for (const Document& doc : state.documents) {
            ResolveReferencesResult resolved =
                resolve_references(filter_for_target(doc, target), state.labels);
            for (Diagnostic& d : resolved.diagnostics)
                push_unique(state.diagnostics, std::move(d));
            docs.push_back(std::move(resolved.document));
        }
        state.per_target.emplace(target, std::move(docs));
    }

    if (check_lints) {
        for (const Document& doc : state.documents) {
            for (const Fragment& fragment : doc.fragments) {
                if (fragment.tags.contains("skip-book") &&
                    fragment.tags.contains("skip-notebook") &&
                    fragment.tags.contains("skip-slides")) {
                    Diagnostic d = make_warning(
                        "dead-content", "fragment is skipped in every target", fragment.span);
                    d.source = doc.source_name;
                    state.diagnostics.push_back(std::move(d));
                }
            }
        }
        std::set<std::string> cited;
        for (const auto& [key, citation] : state.citations.by_key) cited.insert(key);
        for (const BibEntry& entry : entries) {
            if (!cited.count(entry.key)) {
                state.diagnostics.push_back(make_info(
                    "uncited-entry", "bibliography entry \"" + entry.key + "\" is never cited",
                    line_span(1)));
            }
        }
    }
    return state;
}

inline int exit_status_for(const std::vector<Diagnostic>& diags, bool strict) {
    if (has_errors(diags)) return 1;
    if (strict && has_warnings(diags)) return 1;
    return 0;
}

struct OutFile {
    std::filesystem::path path;
    std::string bytes;
};

}  // namespace pipeline_detail

/// Full build. `selection` narrows the config's targets (empty = all
/// configured). Any error diagnostic (or warning under strict) yields exit
/// status 1 and nothing is written.
inline BuildReport cmd_build(const Config& config, std::vector<Target> selection = {}) {
    using namespace pipeline_detail;
    BuildReport report;
    std::vector<Target> targets = selection.empty() ? config.targets : selection;

    PipelineState state = run_pipeline(config, targets, false);
    report.diagnostics = std::move(state.diagnostics);
    report.exit_status = exit_status_for(report.diagnostics, config.strict);
    if (report.exit_status != 0) return report;

    const std::filesystem::path out_dir = config.resolve(config.out_dir);
    std::vector<std::pair<std::string, OutFile>> files;  // target name, file

    for (Target target : targets) {
        const std::vector<Document>& docs = state.per_target.at(target);
        const std::string tname = target_name(target);
        const auto target_dir = out_dir / tname;

        if (target == Target::book) {
            SiteBundle bundle = build_site(docs, state.labels, state.citations, config, state.assets);
            for (const SitePage& page : bundle.pages)
                files.push_back({tname, {target_dir / page.path, page.html}});
            for (const SiteAsset& asset : bundle.assets)
                files.push_back({tname, {target_dir / asset.path, asset.bytes}});
        } else if (target == Target::notebook) {
            for (const Document& doc : docs) {
                const Notebook nb = to_notebook(doc, config, state.citations);
                files.push_back({tname,
                                 {target_dir / (xref_detail::source_stem(doc.source_name) + ".ipynb"),
                                  serialize_notebook(nb)}});
            }
            for (const auto& [rel, bytes] : state.assets)
                files.push_back({tname, {target_dir / "assets" / rel, bytes}});
        } else {
            // one deck per build: fragments of all sources in config order
            Document merged;
            if (!docs.empty()) merged.frontmatter = docs.front().frontmatter;
            if (!config.title.empty()) merged.frontmatter.title = config.title;
            if (!config.authors.empty()) merged.frontmatter.authors = config.authors;
            for (const Document& doc : docs) {
                merged.source_name = merged.source_name.empty() ? doc.source_name : merged.source_name;
                for (const Fragment& fragment : doc.fragments) {
                    merged.fragments.push_back(fragment);
                    merged.fragments.back().source_name = doc.source_name;
                }
            }
            PartitionResult partition = partition_slides(merged);
            for (Diagnostic& d : partition.diagnostics)
                push_unique(report.diagnostics, std::move(d));
            files.push_back({tname,
                             {target_dir / "index.html",
                              render_deck(partition.deck, state.citations, config)}});
            for (const auto& [rel, bytes] : state.assets)
                files.push_back({tname, {target_dir / "assets" / rel, bytes}});
        }
    }

    // warnings may have been added by partitioning; re-gate before writing
    report.exit_status = exit_status_for(report.diagnostics, config.strict);
    if (report.exit_status != 0) return report;

    for (const auto& [tname, file] : files) {
        std::error_code ec;
        std::filesystem::create_directories(file.path.parent_path(), ec);
        std::ofstream out(file.path, std::ios::binary | std::ios::trunc);
        if (!out) {
            Diagnostic d = make_error("io-error", "cannot write " + file.path.string(), line_span(1));
            d.source = file.path.string();
            report.diagnostics.push_back(std::move(d));
            report.exit_status = 1;
            return report;
        }
        out.write(file.bytes.data(), static_cast<std::streamsize>(file.bytes.size()));
        report.emitted[tname].push_back(file.path.string());
    }
    return report;
}

/// Full pipeline with the extra lints (dead content, uncited entries) and no
/// output writes whatsoever.
inline BuildReport cmd_check(const Config& config) {
    using namespace pipeline_detail;
    BuildReport report;
    PipelineState state = run_pipeline(config, config.targets, true);

    // exercise deck partitioning so its warnings surface in check too
    Document merged;
    const auto slides_docs = state.per_target.find(Target::slides);
    if (slides_docs != state.per_target.end()) {
        for (const Document& doc : slides_docs->second) {
            if (merged.source_name.empty()) {
                merged.frontmatter = doc.frontmatter;
                merged.source_name = doc.source_name;
            }
            for (const Fragment& fragment : doc.fragments) {
                merged.fragments.push_back(fragment);
                merged.fragments.back().source_name = doc.source_name;
            }
        }
        PartitionResult partition = partition_slides(merged);
        for (Diagnostic& d : partition.diagnostics)
            push_unique(state.diagnostics, std::move(d));
    }

    report.diagnostics = std::move(state.diagnostics);
    report.exit_status = exit_status_for(report.diagnostics, config.strict);
    return report;
}

}  // namespace press
