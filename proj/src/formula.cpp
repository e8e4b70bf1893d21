#include "morphlog/formula.hpp"

#include <algorithm>
#include <set>

#include "morphlog/errors.hpp"

namespace morphlog {

Formula Formula::top() {
    return Formula(std::make_shared<Node>(Node{Kind::Top, {}, nullptr, nullptr}));
}
Formula Formula::bottom() {
    return Formula(std::make_shared<Node>(Node{Kind::Bottom, {}, nullptr, nullptr}));
}
Formula Formula::atom(std::string name) {
    return Formula(std::make_shared<Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}
Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<Node>(Node{Kind::Not, {}, f.node_, nullptr}));
}
Formula Formula::conj(Formula l, Formula r) {
    return Formula(std::make_shared<Node>(Node{Kind::And, {}, l.node_, r.node_}));
}
Formula Formula::disj(Formula l, Formula r) {
    return Formula(std::make_shared<Node>(Node{Kind::Or, {}, l.node_, r.node_}));
}
Formula Formula::implies(Formula l, Formula r) {
    return Formula(std::make_shared<Node>(Node{Kind::Implies, {}, l.node_, r.node_}));
}
Formula Formula::iff(Formula l, Formula r) {
    return Formula(std::make_shared<Node>(Node{Kind::Iff, {}, l.node_, r.node_}));
}

namespace {

struct Token {
    enum class Type { Atom, Top, Bottom, Not, And, Or, Implies, Iff, LParen, RParen, End };
    Type type;
    std::string text;
    int column;  // 1-based
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size()) {
            current_ = {Token::Type::End, "", col};
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '!': current_ = {Token::Type::Not, "!", col}; ++pos_; return;
            case '&': current_ = {Token::Type::And, "&", col}; ++pos_; return;
            case '|': current_ = {Token::Type::Or, "|", col}; ++pos_; return;
            case '(': current_ = {Token::Type::LParen, "(", col}; ++pos_; return;
            case ')': current_ = {Token::Type::RParen, ")", col}; ++pos_; return;
            case 'T': current_ = {Token::Type::Top, "T", col}; ++pos_; return;
            case 'F': current_ = {Token::Type::Bottom, "F", col}; ++pos_; return;
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    current_ = {Token::Type::Implies, "->", col};
                    pos_ += 2;
                    return;
                }
                throw SyntaxError(col, "'->'");
            case '<':
                if (text_.compare(pos_, 3, "<->") == 0) {
                    current_ = {Token::Type::Iff, "<->", col};
                    pos_ += 3;
                    return;
                }
                throw SyntaxError(col, "'<->'");
            default: break;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size()) {
                char k = text_[pos_];
                if ((k >= 'a' && k <= 'z') || (k >= 'A' && k <= 'Z') ||
                    (k >= '0' && k <= '9') || k == '_')
                    ++pos_;
                else
                    break;
            }
            current_ = {Token::Type::Atom, text_.substr(start, pos_ - start), col};
            return;
        }
        throw SyntaxError(col, "atom, 'T', 'F', '!' or '('");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    Parser(const std::string& text, const Alphabet* alphabet)
        : lexer_(text), alphabet_(alphabet) {}

    Formula parse() {
        Formula f = parse_iff();
        if (lexer_.peek().type != Token::Type::End)
            throw SyntaxError(lexer_.peek().column, "end of input or an operator");
        return f;
    }

private:
    Formula parse_iff() {
        Formula f = parse_implies();
        while (lexer_.peek().type == Token::Type::Iff) {
            lexer_.take();
            f = Formula::iff(f, parse_implies());
        }
        return f;
    }

    Formula parse_implies() {
        Formula f = parse_or();
        if (lexer_.peek().type == Token::Type::Implies) {
            lexer_.take();
            return Formula::implies(f, parse_implies());
        }
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (lexer_.peek().type == Token::Type::Or) {
            lexer_.take();
            f = Formula::disj(f, parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (lexer_.peek().type == Token::Type::And) {
            lexer_.take();
            f = Formula::conj(f, parse_unary());
        }
        return f;
    }

    Formula parse_unary() {
        Token t = lexer_.peek();
        switch (t.type) {
            case Token::Type::Not:
                lexer_.take();
                return Formula::negation(parse_unary());
            case Token::Type::LParen: {
                lexer_.take();
                Formula f = parse_iff();
                if (lexer_.peek().type != Token::Type::RParen)
                    throw SyntaxError(lexer_.peek().column, "')'");
                lexer_.take();
                return f;
            }
            case Token::Type::Top:
                lexer_.take();
                return Formula::top();
            case Token::Type::Bottom:
                lexer_.take();
                return Formula::bottom();
            case Token::Type::Atom: {
                lexer_.take();
                if (alphabet_ && !alphabet_->index_of(t.text)) throw UnknownAtom(t.text);
                return Formula::atom(t.text);
            }
            default:
                throw SyntaxError(t.column, "atom, 'T', 'F', '!' or '('");
        }
    }

    Lexer lexer_;
    const Alphabet* alphabet_;
};

void collect_atoms_into(const Formula& f, std::vector<std::string>& out,
                        std::set<std::string>& seen) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            if (seen.insert(f.atom_name()).second) out.push_back(f.atom_name());
            return;
        case Formula::Kind::Not:
            collect_atoms_into(f.lhs(), out, seen);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            collect_atoms_into(f.lhs(), out, seen);
            collect_atoms_into(f.rhs(), out, seen);
            return;
        default:
            return;
    }
}

// precedence levels: iff 0, implies 1, or 2, and 3, unary 4
int level_of(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Iff: return 0;
        case Formula::Kind::Implies: return 1;
        case Formula::Kind::Or: return 2;
        case Formula::Kind::And: return 3;
        default: return 4;
    }
}

void render_into(const Formula& f, int min_level, std::string& out) {
    int level = level_of(f.kind());
    bool parens = level < min_level;
    if (parens) out += '(';
    switch (f.kind()) {
        case Formula::Kind::Top: out += 'T'; break;
        case Formula::Kind::Bottom: out += 'F'; break;
        case Formula::Kind::Atom: out += f.atom_name(); break;
        case Formula::Kind::Not:
            out += '!';
            render_into(f.lhs(), 4, out);
            break;
        case Formula::Kind::And:
            render_into(f.lhs(), 3, out);
            out += " & ";
            render_into(f.rhs(), 4, out);
            break;
        case Formula::Kind::Or:
            render_into(f.lhs(), 2, out);
            out += " | ";
            render_into(f.rhs(), 3, out);
            break;
        case Formula::Kind::Implies:
            render_into(f.lhs(), 2, out);
            out += " -> ";
            render_into(f.rhs(), 1, out);
            break;
        case Formula::Kind::Iff:
            render_into(f.lhs(), 0, out);
            out += " <-> ";
            render_into(f.rhs(), 1, out);
            break;
    }
    if (parens) out += ')';
}

// Membership vector of "atom i is true".
WorldSet atom_mask(int atom_count, int atom) {
    WorldSet ws(atom_count);
    for (World w = 0; w < (World{1} << atom_count); ++w)
        if ((w >> atom) & 1) ws.set(w);
    return ws;
}

}  // namespace

Formula parse_formula(const std::string& text, const Alphabet* alphabet) {
    return Parser(text, alphabet).parse();
}

std::string render(const Formula& f) {
    std::string out;
    render_into(f, 0, out);
    return out;
}

std::vector<std::string> collect_atoms(const Formula& f) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_atoms_into(f, out, seen);
    return out;
}

Alphabet infer_alphabet(const std::vector<Formula>& formulas) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& f : formulas) collect_atoms_into(f, out, seen);
    return Alphabet(std::move(out));
}

WorldSet models(const Formula& f, const Alphabet& alphabet) {
    int n = alphabet.size();
    switch (f.kind()) {
        case Formula::Kind::Top:
            return WorldSet::all(n);
        case Formula::Kind::Bottom:
            return WorldSet::none(n);
        case Formula::Kind::Atom: {
            auto idx = alphabet.index_of(f.atom_name());
            if (!idx) throw UnknownAtom(f.atom_name());
            return atom_mask(n, *idx);
        }
        case Formula::Kind::Not:
            return models(f.lhs(), alphabet).complement();
        case Formula::Kind::And:
            return models(f.lhs(), alphabet) & models(f.rhs(), alphabet);
        case Formula::Kind::Or:
            return models(f.lhs(), alphabet) | models(f.rhs(), alphabet);
        case Formula::Kind::Implies:
            return models(f.lhs(), alphabet).complement() | models(f.rhs(), alphabet);
        case Formula::Kind::Iff: {
            WorldSet l = models(f.lhs(), alphabet);
            WorldSet r = models(f.rhs(), alphabet);
            return (l & r) | (l.complement() & r.complement());
        }
    }
    throw Error("unreachable");
}

Formula from_models(const WorldSet& ws, const Alphabet& alphabet) {
    if (ws.empty()) return Formula::bottom();
    if (ws == WorldSet::all(ws.atom_count())) return Formula::top();
    Formula out = Formula::bottom();
    bool first = true;
    ws.for_each([&](World w) {
        Formula term = Formula::bottom();
        for (int i = 0; i < alphabet.size(); ++i) {
            Formula lit = (w >> i) & 1 ? Formula::atom(alphabet.name(i))
                                       : Formula::negation(Formula::atom(alphabet.name(i)));
            term = i == 0 ? lit : Formula::conj(term, lit);
        }
        out = first ? term : Formula::disj(out, term);
        first = false;
    });
    return out;
}

bool equivalent(const Formula& f, const Formula& g, const Alphabet& alphabet) {
    return models(f, alphabet) == models(g, alphabet);
}

bool entails(const Formula& f, const Formula& g, const Alphabet& alphabet) {
    return models(f, alphabet).subset_of(models(g, alphabet));
}

}  // namespace morphlog
