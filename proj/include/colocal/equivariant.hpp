#pragma once

#include "colocal/linalg.hpp"
#include "colocal/specpage.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace colocal {

/// Finite group by multiplication table; element 0 need not be the identity.
struct FiniteGroup {
    std::vector<std::vector<std::size_t>> table;

    std::size_t order() const { return table.size(); }
    std::size_t identity() const;
    std::size_t inverse(std::size_t g) const;
    std::size_t mul(std::size_t g, std::size_t h) const { return table[g][h]; }
    /// Throws InvalidAction unless the table is a group.
    void validate() const;

    static FiniteGroup cyclic(std::size_t n);
};

/// Connected-or-not graded algebra over Q supported in degrees 0..top, given by
/// structure constants. Elements of degree d are column vectors of length dim(d).
class TableAlgebra {
public:
    TableAlgebra() = default;
    TableAlgebra(int top, std::vector<std::size_t> dims);

    int top() const { return top_; }
    std::size_t dim(int d) const { return d < 0 || d > top_ ? 0 : dims_[d]; }

    /// Table for A<a> x A<b> -> A<a+b>: column i * dim(b) + j holds e_i e_j.
    void set_product(int a, int b, QMatrix table);
    void set_unit(QMatrix unit) { unit_ = std::move(unit); }
    const QMatrix& unit() const { return unit_; }

    QMatrix basis_vector(int d, std::size_t i) const;
    QMatrix multiply(int a, const QMatrix& x, int b, const QMatrix& y) const;
    /// y -> x y from A<b> to A<a+b>.
    QMatrix left_multiplication(int a, const QMatrix& x, int b) const;
    /// y -> y x from A<b> to A<a+b>.
    QMatrix right_multiplication(int a, const QMatrix& x, int b) const;

    /// Associativity on basis triples and the unit laws inside the window. Throws ValidationError.
    void validate() const;
    TableAlgebra opposite() const;

    /// Q[x] with |x| = degree, the tensor algebra on one generator.
    static TableAlgebra polynomial(int degree, int top);
    static TableAlgebra group_algebra(const FiniteGroup& g);

private:
    int top_ = -1;
    std::vector<std::size_t> dims_;
    std::map<std::pair<int, int>, QMatrix> products_;
    QMatrix unit_;
};

/// G acting on U degreewise: matrices[g][d] acts on U<d>.
struct GroupAction {
    FiniteGroup group;
    std::vector<std::vector<QMatrix>> matrices;

    const QMatrix& on(std::size_t g, int d) const { return matrices[g][d]; }
    /// Representation and automorphism checks on the window. Throws InvalidAction.
    void validate(const TableAlgebra& u) const;

    /// g acts on degree d by sign(g)^(d / step); sign is a homomorphism to {1, -1}.
    static GroupAction by_sign(const TableAlgebra& u, FiniteGroup g, const std::vector<int>& sign, int step);
};

/// U # G with the images of the group elements in degree 0.
struct Semidirect {
    TableAlgebra algebra;
    FiniteGroup group;
    std::vector<QMatrix> group_elements;
};

/// Basis u_i # g at index i * |G| + g; (u # g)(u' # g') = u g(u') # g g'.
Semidirect semidirect(const TableAlgebra& u, const GroupAction& action);

struct CornerData {
    QMatrix epsilon, omega;
    // bases in A<d> coordinates, d = 0..top
    std::vector<QMatrix> corner;       // omega A omega
    std::vector<QMatrix> left_piece;   // omega A
    std::vector<QMatrix> right_piece;  // A omega

    std::size_t corner_dim(int d) const { return d < 0 || d >= static_cast<int>(corner.size()) ? 0 : corner[d].cols(); }
};

/// epsilon = average of the group, omega = 1 - epsilon.
CornerData idempotents(const Semidirect& a);

/// dim of e A<d> f.
std::size_t piece_dimension(const TableAlgebra& a, const QMatrix& e, const QMatrix& f, int d);

enum class Side { Left, Right };

/// Degreewise module over a table algebra on the window [lo, hi].
struct TableModule {
    Side side = Side::Right;
    int lo = 0, hi = -1;
    std::vector<std::size_t> dims;
    /// The window holds the whole support; false for truncations of infinite modules.
    bool complete = true;
    /// action[{a, d}][k]: basis element k of A<a> acting M<d> -> M<d + a>.
    std::map<std::pair<int, int>, std::vector<QMatrix>> action;

    std::size_t dim(int d) const { return d < lo || d > hi ? 0 : dims[d - lo]; }
    /// Matrix of x in A<a> acting from M<d>.
    QMatrix act(int a, const QMatrix& x, int d) const;
    /// Module axioms on the window. Throws ValidationError.
    void validate(const TableAlgebra& a) const;
};

/// (M^)<j> = M<-j>^*, acting from the other side by transposes.
TableModule graded_dual(const TableModule& m);
/// A acting on itself, truncated to the algebra's window.
TableModule regular_module(const TableAlgebra& a, Side side);

/// Ext^p over the corner S = omega A omega of (M^)omega into (A^)omega, for a bounded left
/// A-module M; ext[{p, q}] with q the cohomological internal degree (q = -j).
struct NullTable {
    int q_lo = 0, q_hi = 0;
    int corner_degree = 0;  // |y| for S = Q[y]; 0 when the corner vanishes
    std::vector<int> generator_degrees, relation_degrees;
    std::map<Bidegree, std::size_t> ext;

    std::size_t at(int p, int q) const;
};

/// Throws CornerNotResolvable unless S is a polynomial ring on one generator within the
/// window, WindowTooSmall when the algebra does not reach the requested degrees.
NullTable null_via_corner(const TableModule& m, const Semidirect& a, const CornerData& c, int q_lo, int q_hi);

struct EquivariantPage {
    BigradedPage page;  // cohomological, columns 0, -1, -2
    NullTable null;
    bool invariants_match = false;  // column 0 equals the G-invariants of H^*(F)
};

/// Page from the triangle of H^*(F) = HF^: column 0 the kernel of the unit into Ext^0,
/// column -1 its cokernel, column -(i+1) Ext^i for i >= 1.
EquivariantPage equivariant_page(const TableModule& hf, const Semidirect& a, int q_lo, int q_hi);

/// The fibration Z/2 -> S^{2n} -> RP^{2n}: A = Q[x] # Z/2 with |x| = 2n - 1 and x -> -x,
/// H_*(F) = Q[Z/2] in degree 0 with x acting by zero.
struct Rp2nExample {
    int n = 0;
    Semidirect algebra;
    TableModule fiber;
};

Rp2nExample rp2n(int n, int top);

}  // namespace colocal
