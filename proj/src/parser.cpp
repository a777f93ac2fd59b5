#include "stablefrac/parser.hpp"

#include <cctype>

namespace stablefrac {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& text) : s(text) {}

    void advance() {
        if (pos < s.size() && s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, line, col); }
};

struct Parser {
    Lexer lx;
    bool disk = false, half = false;

    explicit Parser(const std::string& text) : lx(text) {}

    BiPoly parse() {
        BiPoly e = expr();
        if (lx.peek() != '\0') lx.fail("unexpected trailing input");
        return e;
    }

    BiPoly expr() {
        BiPoly acc = term();
        while (true) {
            char c = lx.peek();
            if (c == '+') {
                lx.advance();
                acc = acc + term();
            } else if (c == '-') {
                lx.advance();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    BiPoly term() {
        BiPoly acc = factor();
        while (lx.peek() == '*') {
            lx.advance();
            acc = acc * factor();
        }
        return acc;
    }

    BiPoly factor() {
        BiPoly base = atom();
        while (lx.peek() == '^') {
            lx.advance();
            long e = natural();
            BiPoly p = BiPoly::constant(1);
            for (long k = 0; k < e; ++k) p = p * base;
            base = p;
        }
        return base;
    }

    long natural() {
        lx.skip_ws();
        if (lx.pos >= lx.s.size() || !std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
            lx.fail("expected a nonnegative integer exponent");
        long v = 0;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) {
            v = v * 10 + (lx.s[lx.pos] - '0');
            if (v > 1000) lx.fail("exponent too large");
            lx.advance();
        }
        return v;
    }

    Int integer_digits() {
        std::string d;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) {
            d += lx.s[lx.pos];
            lx.advance();
        }
        return Int(d, 10);
    }

    BiPoly atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.advance();
            BiPoly e = expr();
            if (!lx.eat(')')) lx.fail("expected ')'");
            return e;
        }
        if (c == '-') {
            lx.advance();
            return -atom();
        }
        if (c == '+') {
            lx.advance();
            return atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = integer_digits();
            if (lx.pos < lx.s.size() && lx.s[lx.pos] == '/') {
                lx.advance();
                if (lx.pos >= lx.s.size() || !std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
                    lx.fail("expected denominator digits after '/'");
                Int den = integer_digits();
                if (den == 0) lx.fail("zero denominator");
                Rat r(num, den);
                r.canonicalize();
                return BiPoly::constant(GaussianRational(r));
            }
            return BiPoly::constant(GaussianRational(Rat(num)));
        }
        switch (c) {
            case 'i':
                lx.advance();
                return BiPoly::constant(GaussianRational::i_unit());
            case 'x':
                lx.advance();
                half = true;
                return BiPoly::var_x();
            case 'y':
                lx.advance();
                half = true;
                return BiPoly::var_y();
            case 'z':
                lx.advance();
                disk = true;
                return BiPoly::var_x();
            case 'w':
                lx.advance();
                disk = true;
                return BiPoly::var_y();
            case '\0':
                lx.fail("unexpected end of expression");
            default:
                lx.fail(std::string("unexpected character '") + c + "'");
        }
    }
};

} // namespace

ParsedPoly parse_expression(const std::string& text) {
    Parser p(text);
    ParsedPoly out;
    out.poly = p.parse();
    out.uses_disk_vars = p.disk;
    out.uses_half_vars = p.half;
    if (p.disk && p.half)
        throw SyntaxError("expression mixes (x,y) with (z,w)", 1, 1);
    return out;
}

BiPoly parse_halfplane(const std::string& text) {
    ParsedPoly p = parse_expression(text);
    if (p.uses_disk_vars) throw InputError("expected an (x,y) expression, found z/w");
    return p.poly;
}

BiPoly parse_disk(const std::string& text) {
    ParsedPoly p = parse_expression(text);
    if (p.uses_half_vars) throw InputError("expected a (z,w) expression, found x/y");
    return p.poly;
}

} // namespace stablefrac
