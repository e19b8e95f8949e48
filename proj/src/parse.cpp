#include <cctype>
#include <charconv>
#include <optional>

#include "liesym/expr.hpp"

namespace liesym {

ParseError::ParseError(Kind k, std::size_t pos, const std::string& msg)
    : ExprError(msg + " at position " + std::to_string(pos)), kind(k), position(pos) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) syntax("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void syntax(const std::string& msg) const {
        throw ParseError(ParseError::Kind::Syntax, pos_, msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (accept('+')) terms.push_back(term());
            else if (accept('-')) terms.push_back(-term());
            else break;
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Expr d = unary();
                try {
                    e = e / d;
                } catch (const ExprError& err) {
                    throw ParseError(ParseError::Kind::Syntax, at, err.what());
                }
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept('^')) return base;
        skip_ws();
        bool neg = false;
        if (accept('-')) neg = true;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) syntax("expected an integer exponent");
        int e = 0;
        auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
        if (ec != std::errc()) syntax("exponent out of range");
        return Expr::power(std::move(base), neg ? -e : e);
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) syntax("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) syntax("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        syntax("unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        std::int64_t num = 0;
        std::int64_t den = 1;
        bool digits = false;
        bool dot = false;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                if (num > (INT64_MAX - 9) / 10 || (dot && den > INT64_MAX / 10))
                    throw ParseError(ParseError::Kind::Syntax, start, "numeric literal too long");
                num = num * 10 + (c - '0');
                if (dot) den *= 10;
                digits = true;
            } else if (c == '.' && !dot) {
                dot = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (!digits) throw ParseError(ParseError::Kind::Syntax, start, "malformed number");
        return Expr(Rational(num, den));
    }

    static std::optional<VarIndex> variable(std::string_view w) {
        if (w == "t") return kTime;
        if (w == "x") return 1;
        if (w == "y") return 2;
        if (w == "z") return 3;
        if (w == "w") return 4;
        if (w.size() > 1 && w[0] == 'x' && w[1] != '0') {
            int v = 0;
            auto [p, ec] = std::from_chars(w.data() + 1, w.data() + w.size(), v);
            if (ec == std::errc() && p == w.data() + w.size() && v >= 1 && v <= 255)
                return static_cast<VarIndex>(v);
        }
        return std::nullopt;
    }

    std::string_view word() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    // Splits "xyx1x12t" into variables; returns nullopt on anything else.
    static std::optional<DerivIndex> index_list(std::string_view body) {
        std::vector<VarIndex> vars;
        std::size_t i = 0;
        while (i < body.size()) {
            const char c = body[i];
            if (c == 'x') {
                std::size_t j = i + 1;
                while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
                auto v = variable(body.substr(i, j - i));
                if (!v) return std::nullopt;
                vars.push_back(*v);
                i = j;
            } else {
                auto v = variable(body.substr(i, 1));
                if (!v) return std::nullopt;
                vars.push_back(*v);
                ++i;
            }
        }
        if (vars.empty()) return std::nullopt;
        return DerivIndex(std::move(vars));
    }

    Expr identifier() {
        const std::size_t start = pos_;
        const std::string_view w = word();
        if (w == "alpha") return Expr::alpha();
        if (auto v = variable(w)) return Expr::x(*v);
        if (w == "Dalpha" || w == "D1alpha") {
            if (s_.substr(pos_, 2) != "_u")
                throw ParseError(ParseError::Kind::UnknownSymbol, start,
                                 "unknown symbol '" + std::string(w) + "'");
            pos_ += 2;
            return Expr::symbol(Atom::jet(w == "Dalpha" ? Field::DalphaU : Field::D1alphaU));
        }
        Field f;
        if (w == "u") f = Field::U;
        else if (w == "phi") f = Field::Phi;
        else if (w == "F") f = Field::F;
        else
            throw ParseError(ParseError::Kind::UnknownSymbol, start,
                             "unknown symbol '" + std::string(w) + "'");
        if (pos_ >= s_.size() || s_[pos_] != '_') return Expr::symbol(Atom::jet(f));
        ++pos_;
        std::optional<DerivIndex> idx;
        if (pos_ < s_.size() && s_[pos_] == '{') {
            const std::size_t close = s_.find('}', pos_);
            if (close == std::string_view::npos) syntax("missing '}'");
            idx = index_list(s_.substr(pos_ + 1, close - pos_ - 1));
            if (!idx) syntax("bad derivative index");
            pos_ = close + 1;
        } else {
            const std::string_view sub = word();
            auto v = variable(sub);
            if (!v) syntax("derivative index '" + std::string(sub) + "' needs braces");
            idx = DerivIndex{*v};
        }
        return Expr::symbol(Atom::jet(f, std::move(*idx)));
    }
};

}  // namespace

Expr parse(std::string_view text) { return normalize(Parser(text).run()); }

}  // namespace liesym
