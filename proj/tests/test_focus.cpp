#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "utp2/error.hpp"
#include "utp2/focus.hpp"
#include "utp2/syntax.hpp"

using namespace utp2;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Malformed;
}

} // namespace

TEST(Focus, WalkthroughPaths) {
    const Term goal = parse_term("forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))");
    EXPECT_EQ(render_term(subterm_at(goal, parse_path("@1.1"))), "x in (e1 intsct e2)");
    EXPECT_EQ(render_term(subterm_at(goal, parse_path("@1.2.2"))), "e2 intsct e1");
    EXPECT_TRUE(is_valid_path(goal, parse_path("@1.2.2.1")));
    EXPECT_FALSE(is_valid_path(goal, parse_path("@2")));
    EXPECT_EQ(code_of([&] { subterm_at(goal, parse_path("@1.3")); }), ErrorCode::NoSuchChild);
}

TEST(Focus, BlockedMovesReportTheirReason) {
    const Focused root(parse_term("a /\\ b"));
    EXPECT_EQ(code_of([&] { root.ascend(); }), ErrorCode::AtRoot);
    EXPECT_EQ(code_of([&] { root.next_sibling(); }), ErrorCode::AtRoot);
    const Focused left = root.descend(1);
    EXPECT_EQ(code_of([&] { left.prev_sibling(); }), ErrorCode::NoSibling);
    EXPECT_EQ(code_of([&] { left.descend(1); }), ErrorCode::NoSuchChild);
    EXPECT_EQ(render_term(move(left, Move::Right).focus()), "b");
    EXPECT_EQ(move(move(left, Move::Right), Move::Up), root);
}

TEST(Focus, ConstructingAtPathEqualsDescending) {
    const Term t = parse_term("(a /\\ b) \\/ ~c");
    const Focused direct(t, FocusPath{2, 1});
    EXPECT_EQ(direct, Focused(t).descend(2).descend(1));
    EXPECT_EQ(render_term(direct.focus()), "c");
    EXPECT_EQ(code_of([&] { Focused(t, FocusPath{3}); }), ErrorCode::NoSuchChild);
}

TEST(Focus, ReplaceOnlyTouchesTheFocus) {
    const Term t = parse_term("(a /\\ b) \\/ c");
    const Focused f(t, FocusPath{1, 2});
    EXPECT_EQ(render_term(f.replace_focus(Term::truth())), "a /\\ TRUE \\/ c");
    EXPECT_EQ(render_term(t), "a /\\ b \\/ c");
}

// Randomized zipper properties: 500 terms, every check against plain
// recursion over the path.
TEST(FocusProperty, InverseMovesAndReplaceOracle) {
    gen::Gen g(31);
    std::size_t checks = 0;
    for (int i = 0; i < 500; ++i) {
        const Term t = g.pred(4);
        const auto paths = gen::all_paths(t);
        const FocusPath& p = paths[g.below(paths.size())];
        const Focused f(t, p);
        ASSERT_EQ(f.focus(), gen::oracle_at(t, p.segments()));
        ASSERT_EQ(f.root(), t);

        for (std::size_t c = 1; c <= f.focus().arity(); ++c) {
            ASSERT_EQ(f.descend(c).ascend(), f);
            ++checks;
        }
        if (!p.is_root()) {
            ASSERT_EQ(f.ascend().descend(p.back()), f);
            ++checks;
            const Term& parent = gen::oracle_at(t, p.parent().segments());
            if (p.back() < parent.arity()) {
                ASSERT_EQ(f.next_sibling().prev_sibling(), f);
                ++checks;
            }
            if (p.back() > 1) {
                ASSERT_EQ(f.prev_sibling().next_sibling(), f);
                ++checks;
            }
        }

        const Term replacement = g.pred(2);
        const Term replaced = f.replace_focus(replacement);
        ASSERT_EQ(replaced, gen::oracle_replace(t, p.segments(), 0, replacement));
        ASSERT_EQ(subterm_at(replaced, p), replacement);
        // Subterms outside the focus are unchanged.
        for (const auto& q : paths) {
            if (!p.is_prefix_of(q) && !q.is_prefix_of(p)) {
                ASSERT_EQ(subterm_at(replaced, q), subterm_at(t, q));
                ++checks;
            }
        }
        ++checks;
    }
    EXPECT_GE(checks, 500u);
}
