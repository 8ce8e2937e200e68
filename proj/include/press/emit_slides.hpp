// Slide deck emitter: partitions a slides-filtered document into a two-level
// slide tree and renders one self-contained HTML file for a reveal-style
// runtime loaded from a configurable base URL.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "press/ast.hpp"
#include "press/bibtex.hpp"
#include "press/config.hpp"
#include "press/html_common.hpp"

namespace press {

struct Slide {
    std::vector<Block> blocks;
    std::vector<TagSet> block_tags;                    // fragment tags, per block
    std::vector<std::pair<size_t, size_t>> revealed;   // [begin, end) block ranges shown stepwise
    std::vector<Slide> subslides;                      // only on top-level slides
    std::vector<Block> notes;
    bool title_slide = false;
};

struct SlideDeck {
    std::vector<Slide> slides;
    std::string title;
    std::vector<std::string> authors;
};

struct PartitionResult {
    SlideDeck deck;
    std::vector<Diagnostic> diagnostics;
};

namespace slide_detail {

inline bool has_slide_heading(const Fragment& fragment) {
    for (const Block& block : fragment.blocks)
        if (const auto* h = std::get_if<Heading>(&block.data))
            if (h->level <= 2) return true;
    return false;
}

inline void append_content(Slide& slide, const Fragment& fragment, bool step_revealed) {
    const size_t begin = slide.blocks.size();
    for (const Block& block : fragment.blocks) {
        slide.blocks.push_back(block);
        slide.block_tags.push_back(fragment.tags);
    }
    if (step_revealed && slide.blocks.size() > begin)
        slide.revealed.emplace_back(begin, slide.blocks.size());
}

}  // namespace slide_detail

/// Walks fragments in order. An explicit slide type always wins; a fragment
/// without one opens a new top-level slide when it contains an H1/H2
/// heading. Content before the first slide lands on an implicit title slide
/// built from the frontmatter; the title slide also exists whenever the
/// frontmatter has a title, or when the deck would otherwise be empty.
inline PartitionResult partition_slides(const Document& document) {
    using namespace slide_detail;
    PartitionResult result;
    SlideDeck& deck = result.deck;
    deck.title = document.frontmatter.title.value_or("");
    deck.authors = document.frontmatter.authors;

    bool has_title_slide = false;
    auto ensure_title_slide = [&]() {
        if (has_title_slide) return;
        Slide title;
        title.title_slide = true;
        deck.slides.insert(deck.slides.begin(), std::move(title));
        has_title_slide = true;
    };
    if (document.frontmatter.title) ensure_title_slide();

    auto current = [&]() -> Slide& {
        if (deck.slides.empty()) ensure_title_slide();
        Slide& top = deck.slides.back();
        return top.subslides.empty() ? top : top.subslides.back();
    };

    for (const Fragment& fragment : document.fragments) {
        SlideType type;
        if (fragment.slide_type) {
            type = *fragment.slide_type;
        } else if (has_slide_heading(fragment)) {
            type = SlideType::slide;
        } else {
            append_content(current(), fragment, false);
            continue;
        }

        switch (type) {
        case SlideType::slide: {
            Slide slide;
            append_content(slide, fragment, false);
            deck.slides.push_back(std::move(slide));
            break;
        }
        case SlideType::subslide: {
            const bool have_content_slide =
                !deck.slides.empty() && !deck.slides.back().title_slide;
            Slide slide;
            append_content(slide, fragment, false);
            if (!have_content_slide) {
                Diagnostic d = make_warning(
                    "subslide-before-slide",
                    "subslide appears before any slide; promoted to a top-level slide",
                    fragment.span);
                d.source = fragment.source_name.empty() ? document.source_name
                                                        : fragment.source_name;
                result.diagnostics.push_back(std::move(d));
                deck.slides.push_back(std::move(slide));
            } else {
                deck.slides.back().subslides.push_back(std::move(slide));
            }
            break;
        }
        case SlideType::fragment:
            append_content(current(), fragment, true);
            break;
        case SlideType::notes: {
            Slide& slide = current();
            for (const Block& block : fragment.blocks) slide.notes.push_back(block);
            break;
        }
        case SlideType::skip:
            break;
        }
    }

    if (deck.slides.empty()) ensure_title_slide();
    return result;
}

namespace slide_detail {

inline void render_slide_body(std::string& out, const Slide& slide, RenderContext& ctx,
                              const SlideDeck& deck) {
    if (slide.title_slide) {
        out += "<h1 class=\"deck-title\">" + escape_html(deck.title) + "</h1>\n";
        if (!deck.authors.empty()) {
            out += "<p class=\"authors\">";
            for (size_t i = 0; i < deck.authors.size(); ++i) {
                if (i) out += ", ";
                out += escape_html(deck.authors[i]);
            }
            out += "</p>\n";
        }
    }
    auto revealed = [&](size_t index) {
        for (const auto& [begin, end] : slide.revealed)
            if (index >= begin && index < end) return true;
        return false;
    };
    for (size_t i = 0; i < slide.blocks.size(); ++i) {
        ctx.fragment_tags = &slide.block_tags[i];
        if (revealed(i)) {
            std::string inner;
            render_block_html(inner, slide.blocks[i], ctx);
            if (!inner.empty())
                out += "<div class=\"fragment\">\n" + inner + "</div>\n";
        } else {
            render_block_html(out, slide.blocks[i], ctx);
        }
    }
    ctx.fragment_tags = nullptr;
    if (!slide.notes.empty()) {
        out += "<aside class=\"notes\">\n";
        render_blocks_html(out, slide.notes, ctx);
        out += "</aside>\n";
    }
}

}  // namespace slide_detail

/// One HTML file: top-level slides as direct <section> children of the
/// slides container; a slide with subslides nests its own content as the
/// first inner <section> followed by one per subslide.
inline std::string render_deck(const SlideDeck& deck, const CitationMap& citations,
                               const Config& config) {
    RenderContext ctx;
    ctx.mode = RenderMode::slides;
    ctx.target = Target::slides;
    ctx.citations = &citations;
    ctx.asset_prefix = "assets/";

    std::string base = config.slides_runtime_base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\" />\n";
    out += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\" />\n";
    out += "<title>" + escape_html(deck.title.empty() ? "Slides" : deck.title) + "</title>\n";
    out += "<link rel=\"stylesheet\" href=\"" + escape_attr(base + "/dist/reveal.css") + "\" />\n";
    out += "<link rel=\"stylesheet\" href=\"" +
           escape_attr(base + "/dist/theme/" + config.slides_theme + ".css") + "\" />\n";
    if (!config.math_renderer_url.empty())
        out += "<script defer src=\"" + escape_attr(config.math_renderer_url) + "\"></script>\n";
    out += "</head>\n<body>\n<div class=\"reveal\">\n<div class=\"slides\">\n";

    for (const Slide& slide : deck.slides) {
        if (slide.subslides.empty()) {
            out += "<section>\n";
            slide_detail::render_slide_body(out, slide, ctx, deck);
            out += "</section>\n";
        } else {
            out += "<section>\n<section>\n";
            slide_detail::render_slide_body(out, slide, ctx, deck);
            out += "</section>\n";
            for (const Slide& sub : slide.subslides) {
                out += "<section>\n";
                slide_detail::render_slide_body(out, sub, ctx, deck);
                out += "</section>\n";
            }
            out += "</section>\n";
        }
    }

    out += "</div>\n</div>\n";
    out += "<script src=\"" + escape_attr(base + "/dist/reveal.js") + "\"></script>\n";
    out += "<script>Reveal.initialize({ hash: true });</script>\n";
    out += "</body>\n</html>\n";
    return out;
}

}  // namespace press
