#include "tdu/dsl.hpp"

#include <cctype>
#include <set>

namespace tdu::dsl {

using dl::Modality;
using dl::ModalLiteral;
using dl::Rule;
using dl::RuleKind;
using dl::Term;
using dl::Theory;

namespace {

struct Token {
    enum class Kind {
        Ident, LParen, RParen, Comma, Colon, Dot, Greater, Tilde,
        ModalO, ModalP, Arrow, End
    };
    Kind kind = Kind::End;
    std::string text;       // identifier text
    bool quoted = false;    // 'Quoted' identifiers are always constants
    RuleKind arrow_kind = RuleKind::Strict;
    Modality arrow_mode = Modality::Fact;
    int line = 1, column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws_and_comments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) return tok;  // End

        char c = text_[pos_];
        if (c == '[') {
            if (pos_ + 2 < text_.size() && text_[pos_ + 2] == ']' &&
                (text_[pos_ + 1] == 'O' || text_[pos_ + 1] == 'P')) {
                tok.kind = text_[pos_ + 1] == 'O' ? Token::Kind::ModalO : Token::Kind::ModalP;
                advance(3);
                return tok;
            }
            throw ParseError("expected [O] or [P]", line_, column_);
        }
        if (c == '-' && peek(1) == '>') return arrow(RuleKind::Strict, 2, tok);
        if (c == '=' && peek(1) == '>') return arrow(RuleKind::Defeasible, 2, tok);
        if (c == '~' && peek(1) == '>') return arrow(RuleKind::Defeater, 2, tok);
        switch (c) {
            case '(': tok.kind = Token::Kind::LParen; advance(1); return tok;
            case ')': tok.kind = Token::Kind::RParen; advance(1); return tok;
            case ',': tok.kind = Token::Kind::Comma; advance(1); return tok;
            case ':': tok.kind = Token::Kind::Colon; advance(1); return tok;
            case '.': tok.kind = Token::Kind::Dot; advance(1); return tok;
            case '>': tok.kind = Token::Kind::Greater; advance(1); return tok;
            case '~': tok.kind = Token::Kind::Tilde; advance(1); return tok;
        }
        if (c == '\'') {
            size_t end = text_.find('\'', pos_ + 1);
            if (end == std::string::npos)
                throw ParseError("unterminated quoted constant", line_, column_);
            tok.kind = Token::Kind::Ident;
            tok.text = text_.substr(pos_ + 1, end - pos_ - 1);
            tok.quoted = true;
            if (tok.text.empty())
                throw ParseError("empty quoted constant", line_, column_);
            advance(end + 1 - pos_);
            return tok;
        }
        if (ident_start(c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) advance(1);
            tok.kind = Token::Kind::Ident;
            tok.text = text_.substr(start, pos_ - start);
            return tok;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }

private:
    char peek(size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    Token arrow(RuleKind kind, size_t len, Token tok) {
        tok.kind = Token::Kind::Arrow;
        tok.arrow_kind = kind;
        advance(len);
        // o/p mode suffix, only when not the start of an identifier
        char c = pos_ < text_.size() ? text_[pos_] : '\0';
        if ((c == 'o' || c == 'p') && !ident_char(peek(1))) {
            tok.arrow_mode = c == 'o' ? Modality::Obl : Modality::Perm;
            advance(1);
        }
        return tok;
    }

    void advance(size_t n) {
        for (size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') { ++line_; column_ = 1; }
            else ++column_;
        }
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#' || c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, column_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    Theory parse() {
        Theory t;
        std::set<std::string> labels;
        while (cur_.kind != Token::Kind::End) {
            parse_statement(t, labels);
        }
        return t;
    }

private:
    void shift() {
        cur_ = next_valid_ ? next_ : lexer_.next();
        next_valid_ = false;
    }

    const Token& peek() {
        if (!next_valid_) {
            next_ = lexer_.next();
            next_valid_ = true;
        }
        return next_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, cur_.line, cur_.column);
    }

    void expect(Token::Kind kind, const std::string& what) {
        if (cur_.kind != kind) fail("expected " + what);
        shift();
    }

    std::string expect_ident(const std::string& what) {
        if (cur_.kind != Token::Kind::Ident) fail("expected " + what);
        std::string out = cur_.text;
        shift();
        return out;
    }

    void parse_statement(Theory& t, std::set<std::string>& labels) {
        if (cur_.kind != Token::Kind::Ident) fail("expected statement");
        if (cur_.text == "fact" && peek().kind != Token::Kind::Colon &&
            peek().kind != Token::Kind::Greater) {
            shift();
            t.facts.push_back(parse_modal_literal());
            expect(Token::Kind::Dot, "'.'");
            return;
        }
        if (cur_.text == "modal_conversion" && peek().kind == Token::Kind::Ident) {
            shift();
            std::string v = expect_ident("'on' or 'off'");
            if (v == "on") t.modal_conversion = true;
            else if (v == "off") t.modal_conversion = false;
            else fail("expected 'on' or 'off'");
            expect(Token::Kind::Dot, "'.'");
            return;
        }

        Token label_tok = cur_;
        std::string label = expect_ident("label");
        if (cur_.kind == Token::Kind::Greater) {
            shift();
            std::string loser = expect_ident("rule label");
            expect(Token::Kind::Dot, "'.'");
            t.superiority.emplace_back(label, loser);
            return;
        }
        expect(Token::Kind::Colon, "':' or '>'");
        if (!labels.insert(label).second)
            throw ParseError("duplicate label: " + label, label_tok.line, label_tok.column);

        Rule rule;
        rule.label = label;
        while (cur_.kind != Token::Kind::Arrow) {
            if (!rule.body.empty()) expect(Token::Kind::Comma, "',' or arrow");
            rule.body.push_back(parse_modal_literal());
        }
        rule.kind = cur_.arrow_kind;
        Modality arrow_mode = cur_.arrow_mode;
        shift();
        ModalLiteral head = parse_modal_literal();
        if (head.modality != Modality::Fact && arrow_mode != Modality::Fact &&
            head.modality != arrow_mode)
            fail("head modality disagrees with arrow mode");
        if (head.modality == Modality::Fact) head.modality = arrow_mode;
        rule.mode = head.modality;
        rule.head = head;
        expect(Token::Kind::Dot, "'.'");
        t.rules.push_back(std::move(rule));
    }

    ModalLiteral parse_modal_literal() {
        ModalLiteral out;
        if (cur_.kind == Token::Kind::ModalO) { out.modality = Modality::Obl; shift(); }
        else if (cur_.kind == Token::Kind::ModalP) { out.modality = Modality::Perm; shift(); }
        if (cur_.kind == Token::Kind::Tilde) { out.literal.negated = true; shift(); }
        out.literal.atom.predicate = expect_ident("predicate");
        if (cur_.kind == Token::Kind::LParen) {
            shift();
            while (true) {
                bool quoted = cur_.kind == Token::Kind::Ident && cur_.quoted;
                std::string arg = expect_ident("term");
                bool variable =
                    !quoted && std::isupper(static_cast<unsigned char>(arg[0])) != 0;
                out.literal.atom.args.push_back(variable ? Term::variable(arg)
                                                         : Term::constant(arg));
                if (cur_.kind == Token::Kind::Comma) { shift(); continue; }
                break;
            }
            expect(Token::Kind::RParen, "')'");
        }
        return out;
    }

    Lexer lexer_;
    Token cur_, next_;
    bool next_valid_ = false;
};

}  // namespace

Theory parse_theory(const std::string& text) {
    Theory t = Parser(text).parse();
    t.validate();
    return t;
}

Rule parse_rule(const std::string& text) {
    Theory t = Parser(text).parse();
    if (t.rules.size() != 1 || !t.facts.empty() || !t.superiority.empty())
        throw dl::Error("expected exactly one rule statement");
    return t.rules.front();
}

}  // namespace tdu::dsl
