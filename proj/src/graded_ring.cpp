#include "colocal/graded_ring.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <functional>

namespace colocal {

GradedRing::GradedRing(Scalars scalars, std::vector<Variable> variables, std::vector<Polynomial> relations,
                       bool assert_strict_commutativity)
    : scalars_(scalars), variables_(std::move(variables)), relations_(std::move(relations)),
      cache_(std::make_unique<Cache>()) {
    for (const auto& v : variables_) {
        if (v.degree < 1) throw ValidationError("variable '" + v.name + "' must have positive degree");
        if (v.degree % 2 != 0 && scalars_.characteristic != 2 && !assert_strict_commutativity)
            throw ValidationError("odd-degree variable '" + v.name +
                                  "' needs characteristic 2 or an explicit strict-commutativity assertion");
    }
    for (std::size_t i = 0; i < variables_.size(); ++i)
        for (std::size_t j = i + 1; j < variables_.size(); ++j)
            if (variables_[i].name == variables_[j].name)
                throw ValidationError("duplicate variable name '" + variables_[i].name + "'");
    relations_.erase(std::remove_if(relations_.begin(), relations_.end(),
                                    [](const Polynomial& p) { return p.is_zero(); }),
                     relations_.end());
    for (const auto& r : relations_) relation_degrees_.push_back(degree_of(r));
}

RingPtr GradedRing::make(Scalars scalars, std::vector<Variable> variables, const std::vector<std::string>& relations,
                         bool assert_strict_commutativity) {
    std::vector<std::string> names;
    for (const auto& v : variables) names.push_back(v.name);
    std::vector<Polynomial> rels;
    for (const auto& r : relations) rels.push_back(Polynomial::parse(r, names));
    return std::make_shared<const GradedRing>(scalars, std::move(variables), std::move(rels),
                                              assert_strict_commutativity);
}

std::vector<std::string> GradedRing::variable_names() const {
    std::vector<std::string> names;
    for (const auto& v : variables_) names.push_back(v.name);
    return names;
}

int GradedRing::max_variable_degree() const {
    int m = 0;
    for (const auto& v : variables_) m = std::max(m, v.degree);
    return m;
}

int GradedRing::min_variable_degree() const {
    int m = 0;
    for (const auto& v : variables_) m = m == 0 ? v.degree : std::min(m, v.degree);
    return m;
}

Polynomial GradedRing::parse(const std::string& text) const { return Polynomial::parse(text, variable_names()); }

Polynomial GradedRing::variable(std::size_t i) const {
    Monomial m(nvars(), 0);
    m[i] = 1;
    return Polynomial::monomial(m);
}

int GradedRing::monomial_degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * variables_[i].degree;
    return d;
}

std::optional<int> GradedRing::homogeneous_degree(const Polynomial& f) const {
    std::optional<int> d;
    for (const auto& [m, c] : f.terms()) {
        int e = monomial_degree(m);
        if (d && *d != e) return std::nullopt;
        d = e;
    }
    return d;
}

int GradedRing::degree_of(const Polynomial& f) const {
    if (f.is_zero()) throw InhomogeneousElement("the zero polynomial has no degree");
    auto d = homogeneous_degree(f);
    if (!d) throw InhomogeneousElement("inhomogeneous element " + f.to_string(variable_names()));
    return *d;
}

const std::vector<Monomial>& GradedRing::monomials(int d) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->monomials.find(d);
    if (it != cache_->monomials.end()) return it->second;
    std::vector<Monomial> out;
    if (d >= 0) {
        Monomial cur(nvars(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
            if (i + 1 == nvars()) {
                if (remaining % variables_[i].degree == 0) {
                    cur[i] = remaining / variables_[i].degree;
                    out.push_back(cur);
                }
                return;
            }
            for (int e = remaining / variables_[i].degree; e >= 0; --e) {
                cur[i] = e;
                rec(i + 1, remaining - e * variables_[i].degree);
            }
            cur[i] = 0;
        };
        if (nvars() == 0) {
            if (d == 0) out.push_back(cur);
        } else {
            rec(0, d);
        }
    }
    auto& idx = cache_->index[d];
    for (std::size_t i = 0; i < out.size(); ++i) idx[out[i]] = i;
    return cache_->monomials.emplace(d, std::move(out)).first->second;
}

std::size_t GradedRing::monomial_index(int d, const Monomial& m) const {
    monomials(d);
    std::lock_guard lock(cache_->mutex);
    const auto& idx = cache_->index.at(d);
    auto it = idx.find(m);
    if (it == idx.end()) throw std::out_of_range("monomial not in degree basis");
    return it->second;
}

const DegreeBasis& GradedRing::degree_basis(int d) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->bases.find(d);
        if (it != cache_->bases.end()) return it->second;
    }
    DegreeBasis b;
    b.degree = d;
    b.monomials = monomials(d);
    const std::size_t n = b.monomials.size();
    std::vector<std::vector<std::pair<std::size_t, mpz_class>>> cols;
    for (std::size_t r = 0; r < relations_.size(); ++r) {
        const int rest = d - relation_degrees_[r];
        if (rest < 0) continue;
        for (const Monomial& m : monomials(rest)) {
            std::vector<std::pair<std::size_t, mpz_class>> col;
            for (const auto& [rm, c] : relations_[r].terms())
                col.emplace_back(monomial_index(d, monomial_product(rm, m)), c);
            cols.push_back(std::move(col));
        }
    }
    const bool modular = scalars_.kind == ScalarKind::PrimeField;
    b.presentation = IntMatrix(n, cols.size() + (modular ? n : 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, c] : cols[j]) b.presentation(i, j) += c;
    if (modular)
        for (std::size_t i = 0; i < n; ++i) b.presentation(i, cols.size() + i) = scalars_.characteristic;
    b.group = cokernel(b.presentation).as_vector_space(scalars_);
    std::lock_guard lock(cache_->mutex);
    return cache_->bases.emplace(d, std::move(b)).first->second;
}

ExactMatrix GradedRing::mult_matrix(const Polynomial& f, int d) const {
    const int e = f.is_zero() ? 0 : degree_of(f);
    const auto& src = monomials(d);
    const auto& dst = monomials(d + e);
    IntMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [fm, c] : f.terms()) m(monomial_index(d + e, monomial_product(fm, src[j])), j) += c;
    return {scalars_, std::move(m)};
}

}  // namespace colocal
