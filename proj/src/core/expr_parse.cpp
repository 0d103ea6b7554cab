#include "expr_parse.hpp"

#include <cctype>

namespace diracred {

namespace {

class Parser {
public:
    Parser(const std::string& text, const ChartPtr& chart) : text_(text), chart_(chart) {}

    RatFn parse() {
        RatFn e = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    RatFn expr() {
        RatFn acc = term();
        while (true) {
            skip_ws();
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    RatFn term() {
        RatFn acc = factor();
        while (true) {
            skip_ws();
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RatFn d = factor();
                if (d.is_zero())
                    throw Error(ErrorKind::DivisionByZeroPolynomial,
                                "denominator is the zero polynomial at position " + std::to_string(at),
                                (long)at);
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RatFn factor() {
        RatFn b = base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
                fail("expected exponent");
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
                e = e * 10 + (unsigned long)(text_[pos_] - '0');
                if (e > 10000) throw Error(ErrorKind::SyntaxError, "exponent too large", (long)at);
                ++pos_;
            }
            // integer powers of a reduced fraction stay reduced
            RatFn acc = RatFn::constant(chart_, Rat(1));
            for (unsigned long i = 0; i < e; ++i) acc *= b;
            return acc;
        }
        return b;
    }

    RatFn base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RatFn e = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit((unsigned char)c)) {
            std::string lit;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
                lit += text_[pos_++];
            return RatFn::constant(chart_, rat_from_string(lit));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t at = pos_;
            std::string ident;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ident += text_[pos_++];
            auto idx = chart_->index_of(ident);
            if (!idx)
                throw Error(ErrorKind::UnknownCoordinate,
                            "'" + ident + "' is not a coordinate of chart '" + chart_->name +
                                "' at position " + std::to_string(at),
                            (long)at);
            return RatFn::coordinate(chart_, *idx);
        }
        fail(std::string("unexpected character '") + c + "'");
        return RatFn(chart_); // unreachable
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorKind::SyntaxError, why + " at position " + std::to_string(pos_), (long)pos_);
    }

    const std::string& text_;
    ChartPtr chart_;
    std::size_t pos_ = 0;
};

} // namespace

RatFn parse_expr(const std::string& text, const ChartPtr& chart) {
    return Parser(text, chart).parse();
}

} // namespace diracred
