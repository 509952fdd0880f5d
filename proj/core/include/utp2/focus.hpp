#pragma once

#include <vector>

#include "utp2/path.hpp"
#include "utp2/term.hpp"

namespace utp2 {

/// Subterm of `t` at `path`; throws NoSuchChild when the path leaves the term.
Term subterm_at(const Term& t, const FocusPath& path);
bool is_valid_path(const Term& t, const FocusPath& path);

/// Zipper over a term: the root, a path into it, and the subterm there. The
/// ancestors along the path are kept so rebuilding after a replacement only
/// touches the spine.
class Focused {
public:
    explicit Focused(Term root);
    /// Throws NoSuchChild for an invalid path.
    Focused(Term root, const FocusPath& path);

    const Term& root() const { return root_; }
    const FocusPath& path() const { return path_; }
    const Term& focus() const { return focus_; }

    /// `child` is 1-based. Throws NoSuchChild.
    Focused descend(std::size_t child) const;
    /// Throws AtRoot.
    Focused ascend() const;
    /// Throw NoSibling (or AtRoot at the root).
    Focused next_sibling() const;
    Focused prev_sibling() const;

    /// New root with the focused subterm replaced.
    Term replace_focus(Term replacement) const;

    friend bool operator==(const Focused& a, const Focused& b) {
        return a.path_ == b.path_ && a.root_ == b.root_;
    }

private:
    Focused sibling(long offset) const;

    Term root_;
    FocusPath path_;
    std::vector<Term> ancestors_;
    Term focus_;
};

/// Arrow-key moves: down enters child 1, up leaves, left/right change sibling.
enum class Move { Up, Down, Left, Right };

Focused move(const Focused& f, Move m);

} // namespace utp2
