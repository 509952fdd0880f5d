#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "utp2/path.hpp"
#include "utp2/term.hpp"

namespace utp2 {

/// Concrete syntax.
///
/// Precedence, loosest first: `==` (right), `=>` (right), `\/` (left),
/// `/\` (left), `~`, `=`, `in`, `intsct`/`union` (left). Quantifiers are
/// written `forall x, y @ body` with the body extending as far right as
/// possible. `?name` denotes a schematic variable.
Term parse_term(std::string_view text);

/// Parses a law schema: free identifiers become schematic variables.
Term parse_law(std::string_view text);

struct RenderOptions {
    /// Print schematic variables as `?name` rather than `name`.
    bool mark_schematic = false;
};

std::string render_term(const Term& t, const RenderOptions& options = {});

/// Text span of one subterm in a rendering, including any parentheses the
/// renderer put around it. Offsets are bytes, `end` exclusive.
struct NodeSpan {
    FocusPath path;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct RenderedTerm {
    std::string text;
    /// Pre-order: a node precedes its descendants.
    std::vector<NodeSpan> spans;
};

RenderedTerm render_with_spans(const Term& t, const RenderOptions& options = {});

/// `@` is the root, `@1.2` is [1,2].
FocusPath parse_path(std::string_view text);
std::string render_path(const FocusPath& path);

} // namespace utp2
