#include "colocal/polynomial.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <cctype>

namespace colocal {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
    return m;
}

Polynomial Polynomial::constant(std::size_t nvars, const mpz_class& c) {
    Polynomial p;
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const mpz_class& c) {
    Polynomial p;
    p.add_term(m, c);
    return p;
}

void Polynomial::add_term(const Monomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
    return r;
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
    Polynomial r;
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

Polynomial Polynomial::pow(unsigned n, std::size_t nvars) const {
    Polynomial r = constant(nvars, 1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

namespace {

struct Parser {
    const std::string& s;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("polynomial '" + s + "': " + what + " at position " + std::to_string(pos));
    }
    mpz_class number() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return mpz_class(s.substr(start, pos - start));
    }
    unsigned exponent() {
        skip();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            skip();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected exponent");
            return static_cast<unsigned>(number().get_ui());
        }
        return 1;
    }
    // factor := number | name ['^' int]
    void factor(Monomial& m, mpz_class& coef) {
        skip();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            mpz_class n = number();
            unsigned e = exponent();
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), e);
            coef *= p;
            return;
        }
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        if (start == pos) fail("expected a coefficient or variable");
        std::string name = s.substr(start, pos - start);
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) fail("unknown variable '" + name + "'");
        m[static_cast<std::size_t>(it - vars.begin())] += static_cast<int>(exponent());
    }
    Polynomial parse() {
        Polynomial p;
        skip();
        if (pos == s.size()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip();
            if (pos == s.size()) break;
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Monomial m(vars.size(), 0);
            mpz_class coef = sign;
            factor(m, coef);
            for (;;) {
                skip();
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    factor(m, coef);
                } else {
                    break;
                }
            }
            p.add_term(m, coef);
            first = false;
        }
        return p;
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& variables) {
    Parser parser{text, variables};
    return parser.parse();
}

std::string Polynomial::to_string(const std::vector<std::string>& variables) const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest monomials first for readability.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpz_class a = abs(c);
        out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        std::string body;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!body.empty()) body += "*";
            body += variables[i];
            if (m[i] > 1) body += "^" + std::to_string(m[i]);
        }
        if (body.empty()) out += a.get_str();
        else if (a == 1) out += body;
        else out += a.get_str() + "*" + body;
    }
    return out;
}

}  // namespace colocal
