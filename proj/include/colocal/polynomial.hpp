#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace colocal {

using Monomial = std::vector<int>;  // exponent vector, one entry per ring variable

/// Sparse polynomial with integer coefficients; zero coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, mpz_class>;

    Polynomial() = default;
    static Polynomial constant(std::size_t nvars, const mpz_class& c);
    static Polynomial monomial(const Monomial& m, const mpz_class& c = 1);

    /// Minimal grammar: integer coefficients, `*`, `^`, `+`, `-`, variable names.
    static Polynomial parse(const std::string& text, const std::vector<std::string>& variables);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const mpz_class& c);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const mpz_class& c) const;
    Polynomial pow(unsigned n, std::size_t nvars) const;

    std::string to_string(const std::vector<std::string>& variables) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    Terms terms_;
};

Monomial monomial_product(const Monomial& a, const Monomial& b);

}  // namespace colocal
