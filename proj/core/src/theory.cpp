#include "utp2/theory.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "utp2/error.hpp"
#include "utp2/syntax.hpp"
#include "utp2/types.hpp"

namespace utp2 {

using ojson = nlohmann::ordered_json;

std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::Axiom: return "axiom";
    case Provenance::Proven: return "proven";
    case Provenance::Asserted: return "asserted";
    }
    return "?";
}

Provenance parse_provenance(std::string_view text) {
    if (text == "axiom") return Provenance::Axiom;
    if (text == "proven") return Provenance::Proven;
    if (text == "asserted") return Provenance::Asserted;
    throw Error(ErrorCode::Malformed, "unknown provenance '" + std::string(text) + "'");
}

bool Law::rewritable() const {
    if (schema.is(TermKind::Connective))
        return schema.connective_op() == ConnectiveOp::Equiv;
    return schema.is(TermKind::App) && schema.name() == ops::Equals && schema.arity() == 2;
}

namespace {

bool same_proof(const std::shared_ptr<const ProofRecord>& a,
                const std::shared_ptr<const ProofRecord>& b) {
    if (!a || !b)
        return !a && !b;
    return *a == *b;
}

} // namespace

bool operator==(const Law& a, const Law& b) {
    return a.name == b.name && a.provenance == b.provenance
        && a.side_condition == b.side_condition && a.schema == b.schema && a.owner == b.owner
        && same_proof(a.proof, b.proof);
}

bool operator==(const Theorem& a, const Theorem& b) {
    return a.name == b.name && a.schema == b.schema && a.side_condition == b.side_condition
        && same_proof(a.proof, b.proof);
}

const Conjecture* Theory::find_conjecture(std::string_view n) const {
    auto it = std::find_if(conjectures.begin(), conjectures.end(),
                           [&](const Conjecture& c) { return c.name == n; });
    return it == conjectures.end() ? nullptr : &*it;
}

const Theorem* Theory::find_theorem(std::string_view n) const {
    auto it = std::find_if(theorems.begin(), theorems.end(),
                           [&](const Theorem& t) { return t.name == n; });
    return it == theorems.end() ? nullptr : &*it;
}

const Law* Theory::find_law(std::string_view n) const {
    auto it = std::find_if(laws.begin(), laws.end(), [&](const Law& l) { return l.name == n; });
    return it == laws.end() ? nullptr : &*it;
}

TheoryStack::TheoryStack() {
    Theory root;
    root.name = std::string(kRootTheory);
    theories_.push_back(std::move(root));
}

TheoryStack::TheoryStack(std::vector<Theory> theories)
    : theories_(std::move(theories)) {
    if (theories_.empty() || theories_.front().name != kRootTheory)
        throw Error(ErrorCode::FormatError, "the bottom theory must be _ROOT");
    std::set<std::string> names;
    for (const auto& t : theories_) {
        if (!names.insert(t.name).second)
            throw Error(ErrorCode::FormatError, "duplicate theory '" + t.name + "'");
    }
}

std::size_t TheoryStack::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < theories_.size(); ++i) {
        if (theories_[i].name == name)
            return i;
    }
    throw Error(ErrorCode::UnknownTheory, "unknown theory '" + std::string(name) + "'");
}

bool TheoryStack::contains(std::string_view name) const {
    return std::any_of(theories_.begin(), theories_.end(),
                       [&](const Theory& t) { return t.name == name; });
}

const Theory& TheoryStack::theory(std::string_view name) const {
    return theories_[index_of(name)];
}

Theory& TheoryStack::theory(std::string_view name) { return theories_[index_of(name)]; }

void TheoryStack::push(Theory t) {
    if (contains(t.name))
        throw Error(ErrorCode::DuplicateName, "theory '" + t.name + "' already exists");
    theories_.push_back(std::move(t));
}

std::vector<Law> visible_laws(const TheoryStack& stack, std::string_view from) {
    std::vector<Law> out;
    for (std::size_t i = stack.index_of(from) + 1; i-- > 0;) {
        const Theory& t = stack.theories()[i];
        out.insert(out.end(), t.laws.begin(), t.laws.end());
        for (const auto& thm : t.theorems) {
            out.push_back(Law{thm.name, Provenance::Proven, thm.side_condition,
                              schematize(thm.schema), t.name, thm.proof});
        }
    }
    return out;
}

std::string_view to_string(Table t) {
    switch (t) {
    case Table::Laws: return "laws";
    case Table::Conjectures: return "conjectures";
    case Table::Theorems: return "theorems";
    }
    return "?";
}

Table parse_table(std::string_view text) {
    if (text == "laws") return Table::Laws;
    if (text == "conjectures") return Table::Conjectures;
    if (text == "theorems") return Table::Theorems;
    throw Error(ErrorCode::UnknownRow, "unknown table '" + std::string(text) + "'");
}

EditAction parse_edit_action(std::string_view text) {
    if (text == "add") return EditAction::Add;
    if (text == "update") return EditAction::Update;
    if (text == "delete") return EditAction::Delete;
    throw Error(ErrorCode::Malformed, "unknown edit action '" + std::string(text) + "'");
}

namespace {

void check_side_condition_targets(const Term& schema, const SideCondition& sc) {
    const auto metas = schematic_vars(schema);
    for (const auto& c : sc.conjuncts) {
        if (!metas.count(c.target))
            throw Error(ErrorCode::Malformed,
                        "side condition names '" + c.target + "', which is not a variable of the law");
    }
}

Term checked_law_schema(const std::string& text, const SideCondition& sc) {
    Term schema = parse_law(text);
    infer(schema);
    check_side_condition_targets(schema, sc);
    return schema;
}

Term checked_goal_schema(const std::string& text) {
    Term schema = parse_term(text);
    if (contains_schematic(schema))
        throw Error(ErrorCode::Malformed, "conjectures may not contain schematic variables");
    infer(schema);
    return schema;
}

template <typename Row>
auto find_row(std::vector<Row>& rows, std::string_view name) {
    return std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.name == name; });
}

} // namespace

TheoryStack edit_table(const TheoryStack& stack, std::string_view theory_name, Table table,
                       EditAction action, const TableRow& row) {
    TheoryStack out = stack;
    Theory& th = out.theory(theory_name);
    if (table == Table::Theorems)
        throw Error(ErrorCode::Malformed, "the theorems table is filled by promotion only");
    if (row.name.empty())
        throw Error(ErrorCode::Malformed, "row name is empty");

    if (table == Table::Laws) {
        auto it = find_row(th.laws, row.name);
        if (action == EditAction::Delete) {
            if (it == th.laws.end())
                throw Error(ErrorCode::UnknownRow, "no law '" + row.name + "' in " + th.name);
            th.laws.erase(it);
            return out;
        }
        const Provenance prov = row.provenance.value_or(Provenance::Asserted);
        if (prov == Provenance::Proven)
            throw Error(ErrorCode::Malformed, "proven laws come from promoted theorems");
        Law law{row.name, prov, row.side_condition,
                checked_law_schema(row.schema, row.side_condition), th.name, nullptr};
        if (action == EditAction::Add) {
            if (it != th.laws.end() || th.find_theorem(row.name))
                throw Error(ErrorCode::DuplicateName, "'" + row.name + "' already exists in " + th.name);
            th.laws.push_back(std::move(law));
        } else {
            if (it == th.laws.end())
                throw Error(ErrorCode::UnknownRow, "no law '" + row.name + "' in " + th.name);
            *it = std::move(law);
        }
        return out;
    }

    auto it = find_row(th.conjectures, row.name);
    if (action == EditAction::Delete) {
        if (it == th.conjectures.end())
            throw Error(ErrorCode::UnknownRow, "no conjecture '" + row.name + "' in " + th.name);
        th.conjectures.erase(it);
        return out;
    }
    Conjecture conj{row.name, checked_goal_schema(row.schema), row.side_condition};
    if (action == EditAction::Add) {
        if (it != th.conjectures.end() || th.find_theorem(row.name))
            throw Error(ErrorCode::DuplicateName, "'" + row.name + "' already exists in " + th.name);
        th.conjectures.push_back(std::move(conj));
    } else {
        if (it == th.conjectures.end())
            throw Error(ErrorCode::UnknownRow, "no conjecture '" + row.name + "' in " + th.name);
        *it = std::move(conj);
    }
    return out;
}

TheoryStack promote_conjecture(const TheoryStack& stack, std::string_view theory_name,
                               std::string_view conjecture, ProofRecord proof) {
    TheoryStack out = stack;
    Theory& th = out.theory(theory_name);
    auto it = find_row(th.conjectures, conjecture);
    if (it == th.conjectures.end())
        throw Error(ErrorCode::UnknownConjecture,
                    "no conjecture '" + std::string(conjecture) + "' in " + th.name);
    th.theorems.push_back(Theorem{it->name, it->schema, it->side_condition,
                                  std::make_shared<const ProofRecord>(std::move(proof))});
    th.conjectures.erase(it);
    return out;
}

std::string render_side_condition(const SideCondition& sc) {
    std::string out;
    for (const auto& c : sc.conjuncts) {
        if (!out.empty())
            out += ", ";
        out += c.var + " not free in " + c.target;
    }
    return out;
}

// ---------------------------------------------------------------- persistence

namespace {

ojson side_conditions_json(const SideCondition& sc) {
    ojson arr = ojson::array();
    for (const auto& c : sc.conjuncts)
        arr.push_back(ojson{{"notFreeIn", ojson::array({c.var, c.target})}});
    return arr;
}

ojson proof_json(const ProofRecord& p) {
    ojson steps = ojson::array();
    for (const auto& s : p.steps) {
        ojson inst = ojson::object();
        for (const auto& [k, v] : s.instantiation)
            inst[k] = v;
        steps.push_back(ojson{{"law", s.law},
                              {"direction", s.direction},
                              {"path", s.path},
                              {"instantiation", inst},
                              {"before", s.before},
                              {"after", s.after}});
    }
    return ojson{{"strategy", p.strategy}, {"transcript", p.transcript}, {"steps", steps}};
}

ojson theory_json(const Theory& t, bool with_version) {
    ojson j;
    j["name"] = t.name;
    if (with_version)
        j["version"] = t.version;
    ojson laws = ojson::array();
    for (const auto& l : t.laws) {
        laws.push_back(ojson{{"name", l.name},
                             {"provenance", std::string(to_string(l.provenance))},
                             {"schema", render_term(l.schema)},
                             {"sideConditions", side_conditions_json(l.side_condition)}});
    }
    j["laws"] = laws;
    ojson conj = ojson::array();
    for (const auto& c : t.conjectures) {
        conj.push_back(ojson{{"name", c.name},
                             {"schema", render_term(c.schema)},
                             {"sideConditions", side_conditions_json(c.side_condition)}});
    }
    j["conjectures"] = conj;
    ojson thms = ojson::array();
    for (const auto& th : t.theorems) {
        thms.push_back(ojson{{"name", th.name},
                             {"schema", render_term(th.schema)},
                             {"sideConditions", side_conditions_json(th.side_condition)},
                             {"proof", th.proof ? proof_json(*th.proof) : ojson(nullptr)}});
    }
    j["theorems"] = thms;
    return j;
}

std::string content_of(const Theory& t) { return theory_json(t, false).dump(); }

std::size_t line_at_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

class StackReader {
public:
    StackReader(std::string_view text, std::string source)
        : text_(text)
        , source_(std::move(source)) {}

    TheoryStack read() {
        ojson doc;
        try {
            doc = ojson::parse(text_);
        } catch (const nlohmann::json::parse_error& e) {
            fail(line_at_offset(text_, e.byte == 0 ? 0 : e.byte - 1), e.what());
        }
        if (!doc.is_object() || !doc.contains("theories") || !doc["theories"].is_array())
            fail(1, "expected an object with a 'theories' array");
        std::vector<Theory> theories;
        for (const auto& tj : doc["theories"])
            theories.push_back(theory(tj));
        if (theories.empty() || theories.front().name != kRootTheory)
            fail(1, "the bottom theory must be _ROOT");
        try {
            TheoryStack stack(std::move(theories));
            mark_saved(stack);
            return stack;
        } catch (const Error& e) {
            fail(1, e.what());
        }
    }

private:
    [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
        const std::string where = source_ + ":" + std::to_string(line);
        throw Error(ErrorCode::FormatError, where + ": " + msg, where);
    }

    /// Line of the first occurrence of a string value, for diagnostics.
    std::size_t line_of(const std::string& value) const {
        const std::string needle = ojson(value).dump();
        const auto pos = text_.find(needle);
        return pos == std::string_view::npos ? 1 : line_at_offset(text_, pos);
    }

    std::string str(const ojson& obj, const char* key, const std::string& context) const {
        if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
            fail(obj.is_object() && obj.contains("name") && obj["name"].is_string()
                     ? line_of(obj["name"].get<std::string>())
                     : 1,
                 context + ": missing string field '" + key + "'");
        return obj[key].get<std::string>();
    }

    const ojson& array(const ojson& obj, const char* key, const std::string& context) const {
        static const ojson empty = ojson::array();
        if (!obj.contains(key))
            return empty;
        if (!obj[key].is_array())
            fail(line_of(str(obj, "name", context)), context + ": '" + key + "' must be an array");
        return obj[key];
    }

    SideCondition side_conditions(const ojson& row, const std::string& context) const {
        SideCondition sc;
        for (const auto& c : array(row, "sideConditions", context)) {
            if (!c.is_object() || !c.contains("notFreeIn") || !c["notFreeIn"].is_array()
                || c["notFreeIn"].size() != 2 || !c["notFreeIn"][0].is_string()
                || !c["notFreeIn"][1].is_string())
                fail(line_of(str(row, "name", context)),
                     context + ": side conditions are {\"notFreeIn\": [var, target]}");
            sc.conjuncts.push_back({c["notFreeIn"][0].get<std::string>(),
                                    c["notFreeIn"][1].get<std::string>()});
        }
        return sc;
    }

    template <typename Fn>
    Term schema(const std::string& text, const std::string& context, Fn&& parse) const {
        try {
            return parse(text);
        } catch (const Error& e) {
            fail(line_of(text), context + ": " + e.what());
        }
    }

    ProofRecord proof(const ojson& j, const std::string& context) const {
        ProofRecord p;
        if (!j.is_object())
            fail(1, context + ": proof must be an object");
        p.strategy = str(j, "strategy", context);
        p.transcript = str(j, "transcript", context);
        for (const auto& s : array(j, "steps", context)) {
            ProofRecord::Step step;
            step.law = str(s, "law", context);
            step.direction = str(s, "direction", context);
            step.path = str(s, "path", context);
            step.before = str(s, "before", context);
            step.after = str(s, "after", context);
            if (s.contains("instantiation")) {
                for (const auto& [k, v] : s["instantiation"].items()) {
                    if (!v.is_string())
                        fail(1, context + ": instantiation values must be strings");
                    step.instantiation.emplace(k, v.get<std::string>());
                }
            }
            p.steps.push_back(std::move(step));
        }
        return p;
    }

    Theory theory(const ojson& tj) {
        Theory t;
        t.name = str(tj, "name", "theory");
        const std::string ctx = "theory " + t.name;
        if (tj.contains("version")) {
            if (!tj["version"].is_number_unsigned())
                fail(line_of(t.name), ctx + ": version must be a natural number");
            t.version = tj["version"].get<unsigned>();
        }
        for (const auto& lj : array(tj, "laws", ctx)) {
            const std::string name = str(lj, "name", ctx + " law");
            const std::string lctx = ctx + ", law " + name;
            const SideCondition sc = side_conditions(lj, lctx);
            const std::string text = str(lj, "schema", lctx);
            Term s = schema(text, lctx, [&](const std::string& x) {
                return checked_law_schema(x, sc);
            });
            Provenance prov = Provenance::Axiom;
            if (lj.contains("provenance")) {
                try {
                    prov = parse_provenance(str(lj, "provenance", lctx));
                } catch (const Error& e) {
                    fail(line_of(name), lctx + ": " + e.what());
                }
            }
            if (t.find_law(name))
                fail(line_of(name), lctx + ": duplicate law name");
            t.laws.push_back(Law{name, prov, sc, std::move(s), t.name, nullptr});
        }
        for (const auto& cj : array(tj, "conjectures", ctx)) {
            const std::string name = str(cj, "name", ctx + " conjecture");
            const std::string cctx = ctx + ", conjecture " + name;
            Term s = schema(str(cj, "schema", cctx), cctx, checked_goal_schema);
            if (t.find_conjecture(name))
                fail(line_of(name), cctx + ": duplicate conjecture name");
            t.conjectures.push_back(Conjecture{name, std::move(s), side_conditions(cj, cctx)});
        }
        for (const auto& hj : array(tj, "theorems", ctx)) {
            const std::string name = str(hj, "name", ctx + " theorem");
            const std::string hctx = ctx + ", theorem " + name;
            Term s = schema(str(hj, "schema", hctx), hctx, checked_goal_schema);
            if (t.find_conjecture(name) || t.find_theorem(name) || t.find_law(name))
                fail(line_of(name), hctx + ": name already used in " + t.name);
            std::shared_ptr<const ProofRecord> p;
            if (hj.contains("proof") && !hj["proof"].is_null())
                p = std::make_shared<const ProofRecord>(proof(hj["proof"], hctx));
            t.theorems.push_back(Theorem{name, std::move(s), side_conditions(hj, hctx), p});
        }
        return t;
    }

    std::string_view text_;
    std::string source_;
};

} // namespace

std::string serialize_stack(const TheoryStack& stack) {
    ojson theories = ojson::array();
    for (const auto& t : stack.theories())
        theories.push_back(theory_json(t, true));
    return ojson{{"theories", theories}}.dump(2) + "\n";
}

TheoryStack parse_stack(std::string_view text, const std::string& source) {
    return StackReader(text, source).read();
}

void mark_saved(TheoryStack& stack) {
    for (const auto& t : stack.theories())
        stack.theory(t.name).saved_content = content_of(t);
}

void save_stack(TheoryStack& stack, const std::filesystem::path& path) {
    for (const auto& t : stack.theories()) {
        Theory& mut = stack.theory(t.name);
        std::string content = content_of(mut);
        if (content != mut.saved_content) {
            ++mut.version;
            mut.saved_content = std::move(content);
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << serialize_stack(stack);
    if (!out)
        throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

TheoryStack load_stack(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stack(buf.str(), path.string());
}

// ---------------------------------------------------------------- seed

namespace {

Law axiom(const std::string& owner, const std::string& name, const std::string& schema,
          SideCondition sc = {}) {
    return Law{name, Provenance::Axiom, sc, checked_law_schema(schema, sc), owner, nullptr};
}

Conjecture conjecture(const std::string& name, const std::string& schema) {
    return Conjecture{name, checked_goal_schema(schema), {}};
}

} // namespace

TheoryStack seed_stack() {
    Theory root;
    root.name = std::string(kRootTheory);
    root.laws.push_back(axiom(root.name, "not-TRUE", "~TRUE == FALSE"));

    Theory logic;
    logic.name = "Logic";
    logic.laws.push_back(axiom(logic.name, "/\\-comm", "P /\\ Q == Q /\\ P"));
    logic.laws.push_back(axiom(logic.name, "Ax-==-id", "TRUE == (P == P)"));
    logic.laws.push_back(
        axiom(logic.name, "forall-vac", "(forall x @ P) == P", {{{"x", "P"}}}));
    logic.laws.push_back(axiom(logic.name, "or-absorb", "A \\/ (A /\\ B) == A"));

    Theory equality;
    equality.name = "Equality";
    equality.laws.push_back(axiom(equality.name, "=-refl", "(e = e) == TRUE"));

    Theory sets;
    sets.name = "Sets";
    sets.laws.push_back(axiom(sets.name, "set-extensionality",
                              "(S = T) == (forall x @ (x in S) == (x in T))",
                              {{{"x", "S"}, {"x", "T"}}}));
    sets.laws.push_back(
        axiom(sets.name, "in-intersect", "(x in (S intsct T)) == ((x in S) /\\ (x in T))"));
    sets.laws.push_back(
        axiom(sets.name, "in-union", "(x in (S union T)) == ((x in S) \\/ (x in T))"));
    sets.conjectures.push_back(conjecture("intsct-comm", "e1 intsct e2 = e2 intsct e1"));
    sets.conjectures.push_back(conjecture("union-comm", "e1 union e2 = e2 union e1"));
    sets.conjectures.push_back(conjecture("intsct-idem", "e intsct e = e"));

    TheoryStack stack({std::move(root), std::move(logic), std::move(equality), std::move(sets)});
    mark_saved(stack);
    return stack;
}

} // namespace utp2
