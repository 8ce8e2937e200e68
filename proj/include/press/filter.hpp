// Per-target inclusion and visibility semantics over tagged fragments.
// Everything is included by default; skip-<target> removes a fragment from
// exactly that target, hide-* is interpreted by the emitters.
#pragma once

#include "press/ast.hpp"
#include "press/tags.hpp"

namespace press {

/// Drops every fragment tagged skip-<target>; order and hide-* tags are
/// preserved. Idempotent; presence in target T <=> skip-T not in tags.
inline Document filter_for_target(const Document& document, Target target) {
    Document out;
    out.frontmatter = document.frontmatter;
    out.source_name = document.source_name;
    const std::string skip = skip_tag_for(target);
    for (const Fragment& fragment : document.fragments) {
        if (fragment.tags.contains(skip)) continue;
        out.fragments.push_back(fragment);
    }
    return out;
}

enum class Visibility { shown, input_hidden, output_hidden };

/// Book and slides honor hide-input/hide-output; the notebook always shows
/// everything and carries the tags through as metadata instead.
inline Visibility visibility(const TagSet& effective_tags, Target target) {
    if (target == Target::notebook) return Visibility::shown;
    if (effective_tags.contains("hide-input")) return Visibility::input_hidden;
    if (effective_tags.contains("hide-output")) return Visibility::output_hidden;
    return Visibility::shown;
}

inline Visibility visibility(const CodeCell& cell, const TagSet& fragment_tags, Target target) {
    return visibility(fragment_tags.united(cell.tags), target);
}

}  // namespace press
