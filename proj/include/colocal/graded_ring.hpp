#pragma once

#include "colocal/fgab.hpp"
#include "colocal/linalg.hpp"
#include "colocal/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace colocal {

struct Variable {
    std::string name;
    int degree = 1;
};

/// One internal degree of a presented graded object: a deterministic list of
/// basis symbols, the relations among them (columns), and the resulting group.
struct DegreeBasis {
    int degree = 0;
    std::vector<Monomial> monomials;
    IntMatrix presentation;
    FGAbGroup group;
};

/// Connective strictly commutative graded ring k[x_1..x_n]/(relations) with
/// positive variable degrees. Immutable after construction; per-degree data
/// is cached behind a mutex so const access is thread-safe.
class GradedRing {
public:
    GradedRing(Scalars scalars, std::vector<Variable> variables, std::vector<Polynomial> relations,
               bool assert_strict_commutativity = false);

    static std::shared_ptr<const GradedRing> make(Scalars scalars, std::vector<Variable> variables,
                                                  const std::vector<std::string>& relations,
                                                  bool assert_strict_commutativity = false);

    const Scalars& scalars() const { return scalars_; }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Polynomial>& relations() const { return relations_; }
    const std::vector<int>& relation_degrees() const { return relation_degrees_; }
    std::vector<std::string> variable_names() const;
    std::size_t nvars() const { return variables_.size(); }
    int max_variable_degree() const;
    int min_variable_degree() const;

    Polynomial parse(const std::string& text) const;
    Polynomial variable(std::size_t i) const;
    Polynomial one() const { return Polynomial::constant(nvars(), 1); }

    int monomial_degree(const Monomial& m) const;
    /// Degree of a nonzero homogeneous polynomial; throws InhomogeneousElement otherwise.
    int degree_of(const Polynomial& f) const;
    std::optional<int> homogeneous_degree(const Polynomial& f) const;

    /// Monomials of internal degree d in graded-lexicographic order
    /// (exponent vectors descending lexicographically in variable order).
    const std::vector<Monomial>& monomials(int d) const;
    std::size_t monomial_index(int d, const Monomial& m) const;

    /// Realizes R<d>: the monomials of degree d modulo all relation multiples
    /// landing in degree d (and p times everything over F_p).
    const DegreeBasis& degree_basis(int d) const;

    /// Multiplication by a homogeneous f from the degree-d monomials to the
    /// degree-(d + |f|) monomials.
    ExactMatrix mult_matrix(const Polynomial& f, int d) const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<int, std::vector<Monomial>> monomials;
        std::map<int, std::map<Monomial, std::size_t>> index;
        std::map<int, DegreeBasis> bases;
    };

    Scalars scalars_;
    std::vector<Variable> variables_;
    std::vector<Polynomial> relations_;
    std::vector<int> relation_degrees_;
    std::unique_ptr<Cache> cache_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

}  // namespace colocal
