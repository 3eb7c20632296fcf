#include "splitred/parser.hpp"

#include <cctype>

namespace splitred {

namespace {

struct token {
    enum kind { integer, symbol, op, lparen, rparen, end };
    kind k;
    std::string text;
    std::size_t pos;
};

class lexer {
  public:
    explicit lexer(const std::string& s) : s_(s) { advance(); }

    const token& peek() const { return cur_; }

    token next() {
        token t = cur_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        cur_.pos = i_;
        if (i_ >= s_.size()) {
            cur_ = {token::end, "", i_};
            return;
        }
        char ch = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            cur_ = {token::integer, s_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            cur_ = {token::symbol, s_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        switch (ch) {
            case '+':
            case '-':
            case '*':
            case '/':
            case '^':
                cur_ = {token::op, std::string(1, ch), i_};
                ++i_;
                return;
            case '(':
                cur_ = {token::lparen, "(", i_};
                ++i_;
                return;
            case ')':
                cur_ = {token::rparen, ")", i_};
                ++i_;
                return;
            default:
                throw parse_failure(i_, std::string("unexpected character '") + ch + "'");
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    token cur_;
};

class parser {
  public:
    parser(const std::string& s, const tower& tw, int lvl) : lx_(s), tw_(tw), lvl_(lvl) {}

    fe run() {
        fe v = expr();
        if (lx_.peek().k != token::end)
            throw parse_failure(lx_.peek().pos, "trailing input after expression");
        return v;
    }

  private:
    fe expr() {
        fe v = term();
        while (lx_.peek().k == token::op &&
               (lx_.peek().text == "+" || lx_.peek().text == "-")) {
            token t = lx_.next();
            fe r = term();
            v = (t.text == "+") ? v + r : v - r;
        }
        return v;
    }

    fe term() {
        fe v = factor();
        while (lx_.peek().k == token::op &&
               (lx_.peek().text == "*" || lx_.peek().text == "/")) {
            token t = lx_.next();
            fe r = factor();
            v = (t.text == "*") ? v * r : v / r;
        }
        return v;
    }

    fe factor() {
        if (lx_.peek().k == token::op && lx_.peek().text == "-") {
            lx_.next();
            return -factor();
        }
        fe v = atom();
        if (lx_.peek().k == token::op && lx_.peek().text == "^") {
            token caret = lx_.next();
            bool neg = false;
            if (lx_.peek().k == token::op && lx_.peek().text == "-") {
                lx_.next();
                neg = true;
            }
            if (lx_.peek().k != token::integer)
                throw parse_failure(caret.pos, "exponent must be an integer literal");
            token e = lx_.next();
            long long exp = std::stoll(e.text);
            v = v.pow(neg ? -exp : exp);
        }
        return v;
    }

    fe atom() {
        token t = lx_.next();
        switch (t.k) {
            case token::integer:
                return fe(tw_.from_int(lvl_, mpz_class(t.text)));
            case token::lparen: {
                fe v = expr();
                if (lx_.peek().k != token::rparen)
                    throw parse_failure(lx_.peek().pos, "expected ')'");
                lx_.next();
                return v;
            }
            case token::symbol: {
                if (t.text == "z")
                    return fe(tw_.teichmuller(lvl_, tw_.k->gen()));
                if (t.text.rfind("pi_", 0) == 0) {
                    std::string name = t.text.substr(3);
                    int li = tw_.level_index(name);
                    if (li < 0) throw unknown_symbol(t.pos, "unknown level '" + name + "'");
                    if (li > lvl_)
                        throw unknown_symbol(t.pos, "level '" + name + "' lies above the evaluation level");
                    return fe(tw_.promote(tw_.pi(li), lvl_));
                }
                throw unknown_symbol(t.pos, "unknown symbol '" + t.text + "'");
            }
            default:
                throw parse_failure(t.pos, "expected a value");
        }
    }

    lexer lx_;
    const tower& tw_;
    int lvl_;
};

} // namespace

fe parse_element(const std::string& expr, const tower& tw, int lvl) {
    return parser(expr, tw, lvl).run();
}

} // namespace splitred
