#include <doctest.h>

#include <random>

#include "press/filter.hpp"
#include "press/parser.hpp"

using namespace press;

namespace {

Fragment tagged_fragment(std::vector<std::string> tags) {
    Fragment fragment;
    Block block{Paragraph{{make_text("content")}}, {}};
    fragment.blocks.push_back(std::move(block));
    fragment.tags = validate_tagset(tags).set;
    return fragment;
}

Document doc_with(std::vector<std::vector<std::string>> tag_lists) {
    Document doc;
    doc.source_name = "f.md";
    for (auto& tags : tag_lists) doc.fragments.push_back(tagged_fragment(std::move(tags)));
    return doc;
}

}  // namespace

TEST_CASE("filter: untagged fragment present everywhere") {
    const Document doc = doc_with({{}});
    for (Target target : all_targets) CHECK(filter_for_target(doc, target).fragments.size() == 1);
}

TEST_CASE("filter: skip-slides removes only from slides") {
    const Document doc = doc_with({{"skip-slides"}});
    CHECK(filter_for_target(doc, Target::book).fragments.size() == 1);
    CHECK(filter_for_target(doc, Target::notebook).fragments.size() == 1);
    CHECK(filter_for_target(doc, Target::slides).fragments.empty());
}

TEST_CASE("filter: all three skips remove everywhere") {
    const Document doc = doc_with({{"skip-book", "skip-notebook", "skip-slides"}});
    for (Target target : all_targets) CHECK(filter_for_target(doc, target).fragments.empty());
}

TEST_CASE("filter: order preserved and hide tags retained") {
    Document doc = doc_with({{"hide-input"}, {"skip-book"}, {"x-demo"}});
    const Document book = filter_for_target(doc, Target::book);
    REQUIRE(book.fragments.size() == 2);
    CHECK(book.fragments[0].tags.contains("hide-input"));
    CHECK(book.fragments[1].tags.contains("x-demo"));
}

TEST_CASE("visibility: defaults to shown") {
    CHECK(visibility(TagSet{}, Target::book) == Visibility::shown);
}

TEST_CASE("visibility: hide-input collapses in book, passes through notebook") {
    const TagSet tags = validate_tagset({"hide-input"}).set;
    CHECK(visibility(tags, Target::book) == Visibility::input_hidden);
    CHECK(visibility(tags, Target::slides) == Visibility::input_hidden);
    CHECK(visibility(tags, Target::notebook) == Visibility::shown);
}

TEST_CASE("visibility: hide-output recognized, cell tags unioned with fragment tags") {
    CodeCell cell;
    cell.language = "python";
    cell.tags = validate_tagset({"hide-output"}).set;
    CHECK(visibility(cell, TagSet{}, Target::book) == Visibility::output_hidden);
    const TagSet fragment_tags = validate_tagset({"hide-input"}).set;
    CHECK(visibility(cell, fragment_tags, Target::book) == Visibility::input_hidden);
}

// Partition property: presence in target T <=> skip-T not in tags; and
// monotonicity: adding skip-T never changes any other target. 1000 random
// documents.
TEST_CASE("filter: fuzz partition and monotonicity") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> frag_count(0, 8);
    std::uniform_int_distribution<int> mask(0, 7);
    std::uniform_int_distribution<size_t> pick_target(0, 2);

    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::vector<std::string>> tag_lists;
        const int n = frag_count(rng);
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> tags;
            const int m = mask(rng);
            if (m & 1) tags.push_back("skip-book");
            if (m & 2) tags.push_back("skip-notebook");
            if (m & 4) tags.push_back("skip-slides");
            tag_lists.push_back(std::move(tags));
        }
        const Document doc = doc_with(tag_lists);

        for (Target target : all_targets) {
            const Document filtered = filter_for_target(doc, target);
            // partition: each original fragment present iff skip tag absent
            size_t expected = 0;
            for (const Fragment& fragment : doc.fragments)
                if (!fragment.tags.contains(skip_tag_for(target))) ++expected;
            CHECK(filtered.fragments.size() == expected);
            for (const Fragment& fragment : filtered.fragments)
                CHECK(!fragment.tags.contains(skip_tag_for(target)));
            // idempotence
            CHECK(filter_for_target(filtered, target).fragments.size() ==
                  filtered.fragments.size());
        }

        // monotonicity: add skip-T to one random fragment; other targets
        // unchanged
        if (!doc.fragments.empty()) {
            Document mutated = doc;
            const Target t = all_targets[pick_target(rng)];
            std::uniform_int_distribution<size_t> pick_frag(0, mutated.fragments.size() - 1);
            mutated.fragments[pick_frag(rng)].tags.insert(skip_tag_for(t));
            for (Target other : all_targets) {
                if (other == t) continue;
                CHECK(filter_for_target(mutated, other).fragments.size() ==
                      filter_for_target(doc, other).fragments.size());
            }
        }
    }
}
