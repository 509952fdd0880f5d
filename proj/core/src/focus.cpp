#include "utp2/focus.hpp"

#include "utp2/error.hpp"
#include "utp2/syntax.hpp"

namespace utp2 {

Term subterm_at(const Term& t, const FocusPath& path) {
    Term cur = t;
    for (std::size_t seg : path.segments()) {
        if (seg == 0 || seg > cur.arity())
            throw Error(ErrorCode::NoSuchChild, "no subterm at " + render_path(path));
        Term next = cur.child(seg - 1);
        cur = std::move(next);
    }
    return cur;
}

bool is_valid_path(const Term& t, const FocusPath& path) {
    const Term* cur = &t;
    for (std::size_t seg : path.segments()) {
        if (seg == 0 || seg > cur->arity())
            return false;
        cur = &cur->child(seg - 1);
    }
    return true;
}

Focused::Focused(Term root)
    : root_(root)
    , focus_(std::move(root)) {}

Focused::Focused(Term root, const FocusPath& path)
    : Focused(std::move(root)) {
    for (std::size_t seg : path.segments())
        *this = descend(seg);
}

Focused Focused::descend(std::size_t child) const {
    if (child == 0 || child > focus_.arity())
        throw Error(ErrorCode::NoSuchChild,
                    "no child " + std::to_string(child) + " at " + render_path(path_));
    Focused next = *this;
    next.ancestors_.push_back(focus_);
    next.path_ = path_.child(child);
    next.focus_ = focus_.child(child - 1);
    return next;
}

Focused Focused::ascend() const {
    if (path_.is_root())
        throw Error(ErrorCode::AtRoot, "already at the root");
    Focused next = *this;
    next.focus_ = ancestors_.back();
    next.ancestors_.pop_back();
    next.path_ = path_.parent();
    return next;
}

Focused Focused::sibling(long offset) const {
    if (path_.is_root())
        throw Error(ErrorCode::AtRoot, "the root has no siblings");
    const Term& parent = ancestors_.back();
    const long target = static_cast<long>(path_.back()) + offset;
    if (target < 1 || target > static_cast<long>(parent.arity()))
        throw Error(ErrorCode::NoSibling, "no sibling in that direction at " + render_path(path_));
    return ascend().descend(static_cast<std::size_t>(target));
}

Focused Focused::next_sibling() const { return sibling(1); }
Focused Focused::prev_sibling() const { return sibling(-1); }

Term Focused::replace_focus(Term replacement) const {
    Term cur = std::move(replacement);
    for (std::size_t i = ancestors_.size(); i-- > 0;)
        cur = ancestors_[i].with_child(path_.segments()[i] - 1, std::move(cur));
    return cur;
}

Focused move(const Focused& f, Move m) {
    switch (m) {
    case Move::Up: return f.ascend();
    case Move::Down: return f.descend(1);
    case Move::Left: return f.prev_sibling();
    case Move::Right: return f.next_sibling();
    }
    return f;
}

} // namespace utp2
