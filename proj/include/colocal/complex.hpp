#pragma once

#include "colocal/graded_module.hpp"

#include <map>
#include <utility>
#include <vector>

namespace colocal {

/// Component of a map between direct sums: summand `source` -> summand `target`.
struct Block {
    std::size_t source = 0;
    std::size_t target = 0;
    GradedMorphism map;
};

/// One term of a complex as a direct sum of graded modules.
using Summands = std::vector<GradedModule>;

/// A term realized in one internal degree, in reduced coordinates.
struct RealizedTerm {
    std::vector<std::size_t> offsets;  // first coordinate of each summand
    std::size_t size = 0;
    IntMatrix presentation;  // diagonal
};

/// Bounded cochain complex of graded modules, d^i: C^i -> C^{i+1} of internal degree 0.
class GradedComplex {
public:
    explicit GradedComplex(RingPtr ring) : ring_(std::move(ring)) {}
    static GradedComplex single(const GradedModule& m, int index = 0);

    const RingPtr& ring() const { return ring_; }
    const Scalars& scalars() const { return ring_->scalars(); }

    void set_term(int i, Summands summands);
    /// Adds a block of d^i.
    void add_block(int i, std::size_t source, std::size_t target, GradedMorphism map);

    const Summands& term(int i) const;
    const std::vector<Block>& blocks(int i) const;
    bool empty() const { return terms_.empty(); }
    int min_index() const;
    int max_index() const;

    RealizedTerm realize(int i, int j) const;
    /// d^i in internal degree j, reduced coordinates.
    IntMatrix differential(int i, int j) const;
    /// Throws NotAComplex when d^i d^{i-1} is nonzero in internal degree j.
    void check_square_zero(int i, int j) const;
    /// H^i in internal degree j as a subquotient of the reduced coordinates of C^i<j>.
    Subquotient homology_at(int i, int j) const;
    FGAbGroup homology_group(int i, int j) const;
    /// H^i<j> for every index in the support and j in [lo, hi].
    std::map<std::pair<int, int>, FGAbGroup> homology(int lo, int hi) const;

private:
    RingPtr ring_;
    std::map<int, Summands> terms_;
    std::map<int, std::vector<Block>> blocks_;
};

/// Degree-preserving chain map, given blockwise in each cohomological index.
class ChainMap {
public:
    ChainMap(GradedComplex source, GradedComplex target) : source_(std::move(source)), target_(std::move(target)) {}

    const GradedComplex& source() const { return source_; }
    const GradedComplex& target() const { return target_; }
    void add_block(int i, std::size_t source, std::size_t target, GradedMorphism map);
    const std::vector<Block>& blocks(int i) const;

    /// f^i in internal degree j, reduced coordinates.
    IntMatrix matrix(int i, int j) const;
    /// d f = f d modulo the target relations in internal degree j.
    bool commutes(int i, int j) const;
    /// Induced map H^i<j>(source) -> H^i<j>(target) in the coordinates of the given subquotients.
    IntMatrix induced(int i, int j, const Subquotient& source_h, const Subquotient& target_h) const;

private:
    GradedComplex source_, target_;
    std::map<int, std::vector<Block>> blocks_;
};

/// Whether two matrices into a realized term agree modulo its relations.
bool congruent(const IntMatrix& a, const IntMatrix& b, const RealizedTerm& target);

/// Subsets of {0..m-1} of size k as bitmasks, in increasing order.
std::vector<unsigned> subsets_of_size(std::size_t m, std::size_t k);

/// Koszul complex K(x_1^t, ..., x_m^t; M). Term k is the sum over k-subsets S of
/// Sigma^{-t|x_S|} M, with e_S -> sum over i not in S of (-1)^{#(s in S, s < i)} x_i^t e_{S+i}.
GradedComplex koszul(const GradedModule& m, const IdealSpec& ideal, unsigned t);
/// K(x^s; M) -> K(x^t; M) for s <= t, multiplication by x_S^{t-s} on the S summand.
ChainMap koszul_transition(const GradedModule& m, const IdealSpec& ideal, unsigned s, unsigned t);
/// Degree of the S summand shift: sum of |x_i| over i in S (zero generators count 0).
int subset_degree(const GradedRing& ring, const IdealSpec& ideal, unsigned mask);

/// C[n]: (C[n])^i = C^{i+n} with differential (-1)^n d.
GradedComplex shift_complex(const GradedComplex& c, int n);
/// cone(f)^i = C^{i+1} + D^i, d(c, e) = (-d c, f c + d e).
GradedComplex cone(const ChainMap& f);
ChainMap cone_inclusion(const ChainMap& f);   // D -> cone(f)
ChainMap cone_projection(const ChainMap& f);  // cone(f) -> C[1]

GradedModule tensor(const GradedModule& a, const GradedModule& b);
GradedMorphism tensor(const GradedMorphism& f, const GradedMorphism& g);
/// Total complex of C (x)_R D with d(c (x) e) = dc (x) e + (-1)^p c (x) de.
GradedComplex tensor(const GradedComplex& c, const GradedComplex& d);

}  // namespace colocal
