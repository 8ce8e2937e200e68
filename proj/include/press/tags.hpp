// Controlled tag vocabulary, slide types and build targets.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "press/diagnostics.hpp"

namespace press {

enum class Target { book, notebook, slides };

inline constexpr Target all_targets[] = {Target::book, Target::notebook, Target::slides};

inline const char* target_name(Target t) {
    switch (t) {
    case Target::book: return "book";
    case Target::notebook: return "notebook";
    case Target::slides: return "slides";
    }
    return "book";
}

inline std::optional<Target> target_from_name(std::string_view name) {
    if (name == "book") return Target::book;
    if (name == "notebook") return Target::notebook;
    if (name == "slides") return Target::slides;
    return std::nullopt;
}

/// Reserved tags: skip-* removes a fragment from one target, hide-* controls
/// code-cell visibility. Anything else must carry an "x-" prefix.
inline const std::set<std::string>& reserved_tags() {
    static const std::set<std::string> tags = {
        "skip-book", "skip-notebook", "skip-slides", "hide-input", "hide-output"};
    return tags;
}

inline std::string skip_tag_for(Target t) { return std::string("skip-") + target_name(t); }

/// Deduplicated, validated set of tags. Ordered so every downstream
/// serialization is deterministic.
struct TagSet {
    std::set<std::string> tags;

    bool contains(std::string_view t) const { return tags.count(std::string(t)) != 0; }
    bool empty() const { return tags.empty(); }
    void insert(std::string t) { tags.insert(std::move(t)); }

    TagSet united(const TagSet& other) const {
        TagSet out = *this;
        out.tags.insert(other.tags.begin(), other.tags.end());
        return out;
    }

    std::vector<std::string> to_list() const { return {tags.begin(), tags.end()}; }

    friend bool operator==(const TagSet&, const TagSet&) = default;
};

struct TagSetResult {
    TagSet set;
    std::vector<Diagnostic> diagnostics;
};

/// Keeps each reserved tag and each "x-" tag exactly once; one warning per
/// duplicate and per unrecognized tag. Never fatal (strict mode escalation
/// happens at exit-code time in the CLI).
inline TagSetResult validate_tagset(const std::vector<std::string>& raw, SourceSpan span = {}) {
    TagSetResult result;
    for (const std::string& tag : raw) {
        const bool known = reserved_tags().count(tag) != 0 || tag.rfind("x-", 0) == 0;
        if (!known) {
            result.diagnostics.push_back(make_warning(
                "unknown-tag", "unrecognized tag \"" + tag + "\" (reserved tags are skip-book, "
                "skip-notebook, skip-slides, hide-input, hide-output; user tags need an x- prefix)",
                span));
            continue;
        }
        if (result.set.contains(tag)) {
            result.diagnostics.push_back(
                make_warning("duplicate-tag", "duplicate tag \"" + tag + "\"", span));
            continue;
        }
        result.set.insert(tag);
    }
    return result;
}

enum class SlideType { slide, subslide, fragment, notes, skip };

inline const char* slide_type_name(SlideType t) {
    switch (t) {
    case SlideType::slide: return "slide";
    case SlideType::subslide: return "subslide";
    case SlideType::fragment: return "fragment";
    case SlideType::notes: return "notes";
    case SlideType::skip: return "skip";
    }
    return "slide";
}

inline std::optional<SlideType> slide_type_from_name(std::string_view name) {
    if (name == "slide") return SlideType::slide;
    if (name == "subslide") return SlideType::subslide;
    if (name == "fragment") return SlideType::fragment;
    if (name == "notes") return SlideType::notes;
    if (name == "skip") return SlideType::skip;
    return std::nullopt;
}

}  // namespace press
