#include "utp2/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "utp2/error.hpp"
#include "utp2/kernel.hpp"

namespace utp2 {

namespace {

enum class Tok {
    Ident,
    Meta,
    LParen,
    RParen,
    And,
    Or,
    Not,
    Implies,
    Equiv,
    Eq,
    In,
    Intsct,
    Union,
    True,
    False,
    Forall,
    Exists,
    At,
    Comma,
    End,
};

std::string_view describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Meta: return "schematic variable";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Not: return "'~'";
    case Tok::Implies: return "'=>'";
    case Tok::Equiv: return "'=='";
    case Tok::Eq: return "'='";
    case Tok::In: return "'in'";
    case Tok::Intsct: return "'intsct'";
    case Tok::Union: return "'union'";
    case Tok::True: return "'TRUE'";
    case Tok::False: return "'FALSE'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::At: return "'@'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text)
        : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= text_.size()) {
                out.push_back(tok);
                return out;
            }
            const char c = text_[pos_];
            if (ident_start(c) || c == '?') {
                const bool meta = c == '?';
                if (meta) {
                    advance(1);
                    if (pos_ >= text_.size() || !ident_start(text_[pos_]))
                        fail(tok, "expected a name after '?'");
                }
                std::size_t end = pos_;
                while (end < text_.size() && ident_char(text_[end]))
                    ++end;
                while (end < text_.size() && text_[end] == '\'')
                    ++end;
                tok.text = std::string(text_.substr(pos_, end - pos_));
                advance(end - pos_);
                tok.kind = meta ? Tok::Meta : keyword(tok.text);
                out.push_back(std::move(tok));
                continue;
            }
            auto two = text_.substr(pos_, 2);
            if (two == "/\\") {
                tok.kind = Tok::And;
            } else if (two == "\\/") {
                tok.kind = Tok::Or;
            } else if (two == "=>") {
                tok.kind = Tok::Implies;
            } else if (two == "==") {
                tok.kind = Tok::Equiv;
            } else {
                switch (c) {
                case '(': tok.kind = Tok::LParen; break;
                case ')': tok.kind = Tok::RParen; break;
                case '~': tok.kind = Tok::Not; break;
                case '=': tok.kind = Tok::Eq; break;
                case '@': tok.kind = Tok::At; break;
                case ',': tok.kind = Tok::Comma; break;
                default:
                    fail(tok, std::string("unexpected character '") + c + "'");
                }
                tok.text = std::string(1, c);
                advance(1);
                out.push_back(std::move(tok));
                continue;
            }
            tok.text = std::string(two);
            advance(2);
            out.push_back(std::move(tok));
        }
    }

private:
    static Tok keyword(const std::string& word) {
        if (word == "in") return Tok::In;
        if (word == "intsct") return Tok::Intsct;
        if (word == "union") return Tok::Union;
        if (word == "TRUE") return Tok::True;
        if (word == "FALSE") return Tok::False;
        if (word == "forall") return Tok::Forall;
        if (word == "exists") return Tok::Exists;
        return Tok::Ident;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance(1);
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        const auto where = std::to_string(at.line) + ":" + std::to_string(at.column);
        throw Error(ErrorCode::SyntaxError, where + ": " + msg, where);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens)
        : tokens_(std::move(tokens)) {}

    Term parse() {
        Term t = equiv();
        expect(Tok::End);
        return t;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    bool accept(Tok kind) {
        if (peek().kind != kind) {
            expected_.insert(kind);
            return false;
        }
        ++pos_;
        expected_.clear();
        return true;
    }

    Token expect(Tok kind) {
        if (peek().kind != kind) {
            expected_.insert(kind);
            fail();
        }
        expected_.clear();
        return tokens_[pos_++];
    }

    [[noreturn]] void fail() const {
        const Token& at = peek();
        std::ostringstream msg;
        const auto where = std::to_string(at.line) + ":" + std::to_string(at.column);
        msg << where << ": expected ";
        if (expected_.size() > 1)
            msg << "one of ";
        bool first = true;
        for (Tok t : expected_) {
            msg << (first ? "" : ", ") << describe(t);
            first = false;
        }
        msg << " but found " << describe(at.kind);
        if (at.kind == Tok::Ident || at.kind == Tok::Meta)
            msg << " '" << at.text << "'";
        throw Error(ErrorCode::SyntaxError, msg.str(), where);
    }

    Term equiv() {
        Term lhs = implies();
        if (accept(Tok::Equiv))
            return Term::equiv(std::move(lhs), equiv());
        return lhs;
    }

    Term implies() {
        Term lhs = disjunction();
        if (accept(Tok::Implies))
            return Term::implies(std::move(lhs), implies());
        return lhs;
    }

    Term disjunction() {
        Term lhs = conjunction();
        while (accept(Tok::Or))
            lhs = Term::disj(std::move(lhs), conjunction());
        return lhs;
    }

    Term conjunction() {
        Term lhs = negation();
        while (accept(Tok::And))
            lhs = Term::conj(std::move(lhs), negation());
        return lhs;
    }

    Term negation() {
        if (accept(Tok::Not))
            return Term::negation(negation());
        return equality();
    }

    Term equality() {
        Term lhs = membership();
        if (accept(Tok::Eq))
            return Term::binary(ops::Equals, std::move(lhs), membership());
        return lhs;
    }

    Term membership() {
        Term lhs = set_expr();
        if (accept(Tok::In))
            return Term::binary(ops::In, std::move(lhs), set_expr());
        return lhs;
    }

    Term set_expr() {
        Term lhs = atom();
        for (;;) {
            if (accept(Tok::Intsct))
                lhs = Term::binary(ops::Intsct, std::move(lhs), atom());
            else if (accept(Tok::Union))
                lhs = Term::binary(ops::Union, std::move(lhs), atom());
            else
                return lhs;
        }
    }

    Term atom() {
        const Token tok = peek();
        if (accept(Tok::LParen)) {
            Term inner = equiv();
            expect(Tok::RParen);
            return inner;
        }
        if (accept(Tok::True))
            return Term::truth();
        if (accept(Tok::False))
            return Term::falsity();
        if (accept(Tok::Ident))
            return Term::var(tok.text);
        if (accept(Tok::Meta))
            return Term::schematic(tok.text, VarClass::Pred);
        if (accept(Tok::Forall))
            return quantified(QuantKind::Forall);
        if (accept(Tok::Exists))
            return quantified(QuantKind::Exists);
        fail();
    }

    Term quantified(QuantKind kind) {
        std::vector<VarName> binders;
        std::set<VarName> seen;
        do {
            const Token name = expect(Tok::Ident);
            if (!seen.insert(name.text).second) {
                const auto where = std::to_string(name.line) + ":" + std::to_string(name.column);
                throw Error(ErrorCode::SyntaxError,
                            where + ": duplicate binder '" + name.text + "'", where);
            }
            binders.push_back(name.text);
        } while (accept(Tok::Comma));
        expect(Tok::At);
        return Term::quantifier(kind, std::move(binders), equiv());
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::set<Tok> expected_;
};

// Parsed `?x` operands of operators are expression schematics.
Term classify_schematics(const Term& t, bool operand) {
    if (t.is(TermKind::Schematic))
        return Term::schematic(t.name(), operand ? VarClass::Expr : VarClass::Pred);
    if (t.arity() == 0)
        return t;
    const bool app = t.is(TermKind::App);
    Term out = t;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        Term c = classify_schematics(t.child(i), app);
        if (!(c == t.child(i)))
            out = out.with_child(i, std::move(c));
    }
    return out;
}

// Binding strength used for parenthesisation.
enum Prec : int {
    PQuant = 0,
    PEquiv = 1,
    PImplies = 2,
    POr = 3,
    PAnd = 4,
    PNot = 5,
    PEq = 6,
    PIn = 7,
    PSet = 8,
    PAtom = 9,
};

int precedence(const Term& t) {
    switch (t.kind()) {
    case TermKind::Quantifier:
        return PQuant;
    case TermKind::Connective:
        switch (t.connective_op()) {
        case ConnectiveOp::Equiv: return PEquiv;
        case ConnectiveOp::Implies: return PImplies;
        case ConnectiveOp::Or: return POr;
        case ConnectiveOp::And: return PAnd;
        case ConnectiveOp::Not: return PNot;
        }
        break;
    case TermKind::App:
        if (t.arity() == 2) {
            if (t.name() == ops::Equals) return PEq;
            // `in` always carries its own parentheses.
            if (t.name() == ops::In) return PAtom;
            if (t.name() == ops::Intsct || t.name() == ops::Union) return PSet;
        }
        return PAtom;
    default:
        return PAtom;
    }
    return PAtom;
}

class Renderer {
public:
    explicit Renderer(const RenderOptions& options)
        : options_(options) {}

    RenderedTerm run(const Term& t) {
        FocusPath root;
        emit(t, root, false);
        return std::move(out_);
    }

private:
    void emit(const Term& t, const FocusPath& path, bool parens) {
        const std::size_t slot = out_.spans.size();
        out_.spans.push_back({path, out_.text.size(), 0});
        // `in` parenthesizes itself everywhere except as the whole term.
        const bool self_parens =
            !path.is_root() && t.is(TermKind::App) && t.name() == ops::In && t.arity() == 2;
        if (parens || self_parens)
            out_.text += '(';
        body(t, path);
        if (parens || self_parens)
            out_.text += ')';
        out_.spans[slot].end = out_.text.size();
    }

    void body(const Term& t, const FocusPath& path) {
        switch (t.kind()) {
        case TermKind::PredConst:
            out_.text += t.value() ? "TRUE" : "FALSE";
            return;
        case TermKind::Var:
            out_.text += t.name();
            return;
        case TermKind::Schematic:
            if (options_.mark_schematic)
                out_.text += '?';
            out_.text += t.name();
            return;
        case TermKind::Quantifier: {
            out_.text += t.quant_kind() == QuantKind::Forall ? "forall " : "exists ";
            for (std::size_t i = 0; i < t.binders().size(); ++i) {
                if (i > 0)
                    out_.text += ", ";
                out_.text += t.binders()[i];
            }
            out_.text += " @ ";
            emit(t.body(), path.child(1), false);
            return;
        }
        case TermKind::Connective: {
            const ConnectiveOp op = t.connective_op();
            if (op == ConnectiveOp::Not) {
                const Term& arg = t.child(0);
                const bool atomic = precedence(arg) == PAtom
                    || (arg.is(TermKind::Connective) && arg.connective_op() == ConnectiveOp::Not);
                out_.text += '~';
                emit(arg, path.child(1), !atomic);
                return;
            }
            const int p = precedence(t);
            const bool right_assoc = op == ConnectiveOp::Equiv || op == ConnectiveOp::Implies;
            const int lp = precedence(t.child(0));
            const int rp = precedence(t.child(1));
            emit(t.child(0), path.child(1), right_assoc ? lp <= p : lp < p);
            out_.text += ' ';
            out_.text += to_string(op);
            out_.text += ' ';
            emit(t.child(1), path.child(2), rp <= p);
            return;
        }
        case TermKind::App: {
            const int p = precedence(t);
            if (t.arity() == 2 && p != PAtom) {
                const int lp = precedence(t.child(0));
                const int rp = precedence(t.child(1));
                emit(t.child(0), path.child(1), p == PEq ? lp <= p : lp < p);
                out_.text += ' ' + t.name() + ' ';
                emit(t.child(1), path.child(2), rp <= p);
                return;
            }
            if (t.arity() == 2 && t.name() == ops::In) {
                emit(t.child(0), path.child(1), precedence(t.child(0)) < PAtom);
                out_.text += " in ";
                emit(t.child(1), path.child(2), precedence(t.child(1)) < PAtom);
                return;
            }
            // Operators outside the built-in grammar print in prefix form.
            out_.text += t.name() + '(';
            for (std::size_t i = 0; i < t.arity(); ++i) {
                if (i > 0)
                    out_.text += ", ";
                emit(t.child(i), path.child(i + 1), false);
            }
            out_.text += ')';
            return;
        }
        }
    }

    const RenderOptions& options_;
    RenderedTerm out_;
};

} // namespace

Term parse_term(std::string_view text) {
    Parser parser(Lexer(text).run());
    Term t = parser.parse();
    return contains_schematic(t) ? classify_schematics(t, false) : t;
}

Term parse_law(std::string_view text) {
    return schematize(parse_term(text));
}

std::string render_term(const Term& t, const RenderOptions& options) {
    return Renderer(options).run(t).text;
}

RenderedTerm render_with_spans(const Term& t, const RenderOptions& options) {
    return Renderer(options).run(t);
}

FocusPath parse_path(std::string_view text) {
    auto fail = [&](const std::string& msg) -> FocusPath {
        throw Error(ErrorCode::SyntaxError, "bad path '" + std::string(text) + "': " + msg);
    };
    if (text.empty() || text.front() != '@')
        return fail("must start with '@'");
    text.remove_prefix(1);
    std::vector<std::size_t> segments;
    if (text.empty())
        return FocusPath{};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dot = std::min(text.find('.', pos), text.size());
        const auto piece = text.substr(pos, dot - pos);
        if (piece.empty())
            return fail("empty segment");
        std::size_t value = 0;
        for (char c : piece) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return fail("non-numeric segment '" + std::string(piece) + "'");
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        if (value == 0)
            return fail("segments are 1-based");
        segments.push_back(value);
        pos = dot + 1;
    }
    return FocusPath(std::move(segments));
}

std::string render_path(const FocusPath& path) {
    std::string out = "@";
    for (std::size_t i = 0; i < path.segments().size(); ++i) {
        if (i > 0)
            out += '.';
        out += std::to_string(path.segments()[i]);
    }
    return out;
}

} // namespace utp2
