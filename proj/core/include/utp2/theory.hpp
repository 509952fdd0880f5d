#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "utp2/kernel.hpp"
#include "utp2/term.hpp"

namespace utp2 {

enum class Provenance { Axiom, Proven, Asserted };

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

/// What a theorem keeps of its proof: the rendered transcript and the steps
/// that produced it, with every term in concrete syntax.
struct ProofRecord {
    struct Step {
        std::string law;
        std::string direction;
        std::string path;
        std::map<std::string, std::string> instantiation;
        std::string before;
        std::string after;

        friend bool operator==(const Step&, const Step&) = default;
    };

    std::string strategy;
    std::string transcript;
    std::vector<Step> steps;

    friend bool operator==(const ProofRecord&, const ProofRecord&) = default;
};

/// A rewritable schema. Law schemas hold schematic variables; theorems are
/// lifted into laws by `schematize`.
struct Law {
    std::string name;
    Provenance provenance = Provenance::Axiom;
    SideCondition side_condition;
    Term schema;
    std::string owner;
    /// Set for provenance `proven`.
    std::shared_ptr<const ProofRecord> proof;

    /// Top operator is `==` or `=`.
    bool rewritable() const;
    const Term& lhs() const { return schema.child(0); }
    const Term& rhs() const { return schema.child(1); }

    friend bool operator==(const Law& a, const Law& b);
};

struct Conjecture {
    std::string name;
    Term schema;
    SideCondition side_condition;

    friend bool operator==(const Conjecture&, const Conjecture&) = default;
};

struct Theorem {
    std::string name;
    Term schema;
    SideCondition side_condition;
    std::shared_ptr<const ProofRecord> proof;

    friend bool operator==(const Theorem& a, const Theorem& b);
};

struct Theory {
    std::string name;
    unsigned version = 0;
    std::vector<Law> laws;
    std::vector<Conjecture> conjectures;
    std::vector<Theorem> theorems;

    /// `Sets$0`.
    std::string display_name() const { return name + "$" + std::to_string(version); }

    const Conjecture* find_conjecture(std::string_view n) const;
    const Theorem* find_theorem(std::string_view n) const;
    const Law* find_law(std::string_view n) const;

    /// Content equality including versions; save bookkeeping is ignored.
    friend bool operator==(const Theory& a, const Theory& b) {
        return a.name == b.name && a.version == b.version && a.laws == b.laws
            && a.conjectures == b.conjectures && a.theorems == b.theorems;
    }

    /// Serialized content as of the last load or save, minus the version.
    std::string saved_content;
};

inline constexpr std::string_view kRootTheory = "_ROOT";

/// Theories ordered bottom (`_ROOT`) to top. Each theory sees the laws of
/// every theory below it.
class TheoryStack {
public:
    /// Just `_ROOT`.
    TheoryStack();
    /// Throws FormatError unless `_ROOT` is first and names are unique.
    explicit TheoryStack(std::vector<Theory> theories);

    const std::vector<Theory>& theories() const { return theories_; }
    /// Throws UnknownTheory.
    const Theory& theory(std::string_view name) const;
    Theory& theory(std::string_view name);
    std::size_t index_of(std::string_view name) const;
    bool contains(std::string_view name) const;

    /// Adds a theory on top. Throws DuplicateName.
    void push(Theory t);

    friend bool operator==(const TheoryStack&, const TheoryStack&) = default;

private:
    std::vector<Theory> theories_;
};

/// Laws and theorems of `from` and of every theory below it, nearest first.
/// Throws UnknownTheory.
std::vector<Law> visible_laws(const TheoryStack& stack, std::string_view from);

enum class Table { Laws, Conjectures, Theorems };
enum class EditAction { Add, Update, Delete };

std::string_view to_string(Table t);
/// Throws UnknownRow for names other than laws/conjectures/theorems.
Table parse_table(std::string_view text);
EditAction parse_edit_action(std::string_view text);

struct TableRow {
    std::string name;
    /// Concrete syntax; ignored for deletes.
    std::string schema;
    std::optional<Provenance> provenance;
    SideCondition side_condition;
};

/// Edits the laws or conjectures table of one theory. Added laws default to
/// provenance `asserted`. Throws DuplicateName, UnknownRow, SyntaxError,
/// TypeError, UnknownTheory, Malformed.
TheoryStack edit_table(const TheoryStack& stack, std::string_view theory, Table table,
                       EditAction action, const TableRow& row);

/// Moves a conjecture into the theorems table with its proof attached.
/// Throws UnknownTheory, UnknownConjecture.
TheoryStack promote_conjecture(const TheoryStack& stack, std::string_view theory,
                               std::string_view conjecture, ProofRecord proof);

/// Stack file text; versions as currently recorded.
std::string serialize_stack(const TheoryStack& stack);
/// Throws FormatError (with `source:line`), SyntaxError, TypeError.
TheoryStack parse_stack(std::string_view text, const std::string& source = "<stack>");

/// Bumps the version of each theory whose content changed since it was
/// loaded or last saved, then writes the file. Throws IoError.
void save_stack(TheoryStack& stack, const std::filesystem::path& path);
/// Throws IoError, FormatError.
TheoryStack load_stack(const std::filesystem::path& path);

/// Marks every theory's current content as saved.
void mark_saved(TheoryStack& stack);

/// `_ROOT`, `Logic`, `Equality`, `Sets` with the laws and conjectures needed
/// for the set-intersection walkthrough, all at version 0.
TheoryStack seed_stack();

std::string render_side_condition(const SideCondition& sc);

} // namespace utp2
