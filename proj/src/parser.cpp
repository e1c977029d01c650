#include "crossratio/parser.hpp"

#include <cctype>

namespace crossratio {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
public:
    Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return r;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero()) throw ParseError("division by an expression that is identically zero", at);
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return factor();
    }

    RatFunc factor() {
        RatFunc b = base();
        if (accept('^')) {
            skip();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                throw ParseError("exponent must be a natural number", at);
            }
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
                if (e > 10000) throw ParseError("exponent too large", at);
            }
            b = b.pow(static_cast<long>(e));
        }
        return b;
    }

    RatFunc base() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            mpz_class value(std::string(text_.substr(start, pos_ - start)));
            return RatFunc(ring_, FieldElement(ring_.field(), mpq_class(value)));
        }
        if (ident_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (ring_.has_variable(name)) return RatFunc::variable(ring_, name);
            if (name == "i") {
                auto s = sqrt_minus_one(ring_.field());
                if (!s) throw ParseError("'i' used over " + ring_.field().name() + ", which has no square root of -1", start);
                return RatFunc(ring_, *s);
            }
            throw ParseError("unknown identifier '" + name + "'", start);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view text_;
    const Ring& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expr(std::string_view text, const Ring& ring) {
    try {
        return Parser(text, ring).parse();
    } catch (const DivisionByZero& e) {
        throw ParseError(std::string("division by zero: ") + e.what(), 0);
    }
}

std::set<std::string> collect_identifiers(std::string_view text) {
    std::set<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (ident_start(text[pos]) && (pos == 0 || !ident_char(text[pos - 1]))) {
            const std::size_t start = pos;
            while (pos < text.size() && ident_char(text[pos])) ++pos;
            std::string name(text.substr(start, pos - start));
            if (name != "i") out.insert(name);
        } else {
            ++pos;
        }
    }
    return out;
}

}  // namespace crossratio
