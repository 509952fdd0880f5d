#pragma once

#include <cstddef>
#include <algorithm>
#include <compare>
#include <initializer_list>
#include <vector>

namespace utp2 {

/// Address of a subterm: 1-based child indices from the root. The empty path
/// is the root; a quantifier's body is child 1.
class FocusPath {
public:
    FocusPath() = default;
    FocusPath(std::initializer_list<std::size_t> segments)
        : segments_(segments) {}
    explicit FocusPath(std::vector<std::size_t> segments)
        : segments_(std::move(segments)) {}

    const std::vector<std::size_t>& segments() const { return segments_; }
    bool is_root() const { return segments_.empty(); }
    std::size_t depth() const { return segments_.size(); }
    std::size_t back() const { return segments_.back(); }

    FocusPath child(std::size_t index) const {
        FocusPath p = *this;
        p.segments_.push_back(index);
        return p;
    }
    FocusPath parent() const {
        FocusPath p = *this;
        p.segments_.pop_back();
        return p;
    }
    bool is_prefix_of(const FocusPath& other) const {
        return segments_.size() <= other.segments_.size()
            && std::equal(segments_.begin(), segments_.end(), other.segments_.begin());
    }

    friend bool operator==(const FocusPath&, const FocusPath&) = default;
    friend auto operator<=>(const FocusPath&, const FocusPath&) = default;

private:
    std::vector<std::size_t> segments_;
};

} // namespace utp2
