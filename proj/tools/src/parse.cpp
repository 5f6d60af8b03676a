#include "voa_cli/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace voa::cli {

int Polynomial::min_exponent() const { return terms.empty() ? 0 : terms.begin()->first; }
int Polynomial::max_exponent() const { return terms.empty() ? -1 : terms.rbegin()->first; }

namespace {

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip();
        return i_ >= s_.size();
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
    bool at_alpha() { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }

    std::string digits() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected a number");
        return s_.substr(start, i_ - start);
    }
    std::string identifier() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
        return s_.substr(start, i_ - start);
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("cannot parse \"" + s_ + "\" at position " + std::to_string(i_) + ": " + what);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

int parse_exponent(Lexer& lx) {
    bool neg = lx.accept('-');
    if (!neg) lx.accept('+');
    std::string d = lx.digits();
    if (d.size() > 6) lx.fail("exponent too large");
    int e = std::stoi(d);
    return neg ? -e : e;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::string& var) {
    Lexer lx(text);
    Polynomial p;
    p.var = var;
    if (lx.done()) lx.fail("empty polynomial");
    bool first = true;
    while (!lx.done()) {
        Rational sign(1);
        if (lx.accept('-')) {
            sign = Rational(-1);
        } else if (!lx.accept('+') && !first) {
            lx.fail("expected + or -");
        }
        first = false;
        Rational c(1);
        bool have_coeff = false;
        if (lx.at_digit()) {
            std::string num = lx.digits();
            std::string den = "1";
            if (lx.accept('/')) den = lx.digits();
            c = parse_rational(num + "/" + den);
            have_coeff = true;
            lx.accept('*');
        }
        int e = 0;
        if (lx.at_alpha()) {
            std::string name = lx.identifier();
            if (p.var.empty()) p.var = name;
            if (name != p.var) lx.fail("unexpected variable " + name + " (expected " + p.var + ")");
            e = 1;
            if (lx.accept('^')) e = parse_exponent(lx);
        } else if (!have_coeff) {
            lx.fail("expected a coefficient or a variable");
        }
        Rational& slot = p.terms[e];
        slot += sign * c;
        if (slot.is_zero()) p.terms.erase(e);
    }
    return p;
}

Polynomial parse_series_text(const std::string& text, const std::string& var) {
    std::string t = text;
    t.erase(0, t.find_first_not_of(" \t"));
    if (t.empty() || t.front() != '[') return parse_polynomial(text, var);
    if (t.back() != ']') throw ConfigError("unterminated coefficient list \"" + text + "\"");
    Polynomial p;
    p.var = var;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    int e = 0;
    while (std::getline(ss, item, ',')) {
        Rational c = parse_rational(item);
        if (!c.is_zero()) p.terms[e] = c;
        ++e;
    }
    return p;
}

TruncSeries to_series(const Polynomial& p, const std::string& var, int order) {
    if (order < 0) order = std::max(p.max_exponent() + 1, 1);
    if (p.max_exponent() >= order)
        throw ConfigError("series has a term x^" + std::to_string(p.max_exponent()) + " past its order " +
                          std::to_string(order));
    int floor = std::min(0, p.min_exponent());
    std::vector<Rational> c(static_cast<std::size_t>(order - floor));
    for (const auto& [e, a] : p.terms) c[static_cast<std::size_t>(e - floor)] = a;
    return TruncSeries(var, floor, order, std::move(c));
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    try {
        return Rational::parse(t);
    } catch (const std::exception&) {
        throw ConfigError("not a rational number: \"" + text + "\"");
    }
}

Label parse_label(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '[' && ch != ']') t += ch;
    if (t.empty() || t == "vac") return Label{};
    std::vector<int> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.size() > 4 || !std::all_of(item.begin(), item.end(), ::isdigit))
            throw ConfigError("label parts must be positive integers: \"" + text + "\"");
        int v = std::stoi(item);
        if (v <= 0) throw ConfigError("label parts must be positive integers: \"" + text + "\"");
        parts.push_back(v);
    }
    return Label(parts);
}

}  // namespace voa::cli
