#pragma once

#include "colocal/fgab.hpp"
#include "colocal/matrix.hpp"

#include <optional>
#include <vector>

namespace colocal {

/// Matrix tagged with its coefficient ring. Entries are integers; over Q
/// they are integral representatives (denominators cleared column by
/// column, which changes neither rank nor cokernel dimension), over F_p
/// they are read modulo p.
struct ExactMatrix {
    Scalars scalars;
    IntMatrix entries;

    static ExactMatrix over_integers(IntMatrix m) { return {Scalars::integers(), std::move(m)}; }
    static ExactMatrix from_rational(const QMatrix& q);
    std::size_t rows() const { return entries.rows(); }
    std::size_t cols() const { return entries.cols(); }
};

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
/// The inverses of U and V are tracked alongside.
struct SmithForm {
    IntMatrix U, D, V;
    IntMatrix U_inv, V_inv;
    std::size_t rank = 0;

    const mpz_class& diagonal(std::size_t i) const { return D(i, i); }
};

SmithForm smith_normal_form(const IntMatrix& A);

/// Cokernel of a presentation matrix (rows = generators, columns = relations).
FGAbGroup cokernel(const ExactMatrix& A);
FGAbGroup cokernel(const IntMatrix& A);

/// ker(d_out) / im(d_in). Throws NotAComplex when d_out * d_in != 0.
FGAbGroup homology_at(const ExactMatrix& d_in, const ExactMatrix& d_out);

std::size_t rank_rational(const IntMatrix& A);
std::size_t rank_mod_p(const IntMatrix& A, unsigned long p);
std::size_t rank_over(const ExactMatrix& A);
std::size_t rank(const QMatrix& A);

/// Reduced row echelon form over Q; pivots receives the pivot column of each nonzero row.
QMatrix rref(const QMatrix& A, std::vector<std::size_t>& pivots);
/// Columns form a basis of the rational kernel of A.
QMatrix nullspace(const QMatrix& A);
/// The pivot columns of A, a basis of its column space.
QMatrix column_basis(const QMatrix& A);
/// Some X with A * X = B, or nothing when B is not in the column space.
std::optional<QMatrix> solve(const QMatrix& A, const QMatrix& B);

/// Columns form a Z-basis of the integer kernel of A.
IntMatrix kernel_basis(const IntMatrix& A);
/// Columns form a Z-basis of the lattice spanned by the columns of G.
IntMatrix lattice_basis(const IntMatrix& G);
/// Solves B * C = Y for integral C where B has independent columns and every
/// column of Y lies in the lattice spanned by B. Throws std::domain_error otherwise.
IntMatrix solve_in_lattice(const IntMatrix& B, const IntMatrix& Y);

/// Subquotient of Z^n: the lattice spanned by `cycles` modulo the relations,
/// which are recorded in cycle coordinates (column j of `relations` is a
/// relation expressed in the basis given by the columns of `cycles`).
struct Subquotient {
    IntMatrix cycles;
    IntMatrix relations;
    FGAbGroup group;

    std::size_t ambient_dim() const { return cycles.rows(); }
    std::size_t rank() const { return cycles.cols(); }
    /// Coordinates of ambient vectors that lie in the cycle lattice.
    IntMatrix coordinates(const IntMatrix& ambient) const { return solve_in_lattice(cycles, ambient); }
};

/// Homology of A -> B -> C for finitely presented groups
/// B = Z^n / im(mid_presentation), C = Z^p / im(out_presentation):
/// { b : d_out b in im(out_presentation) } / (im(mid_presentation) + im(d_in)).
/// d_in may have zero columns; d_out may have zero rows.
Subquotient presented_homology(const IntMatrix& mid_presentation, const IntMatrix& d_in,
                               const IntMatrix& d_out, const IntMatrix& out_presentation);

/// The group Z^n / im(presentation) as a subquotient with identity cycles.
Subquotient presented_group(const IntMatrix& presentation);

/// Matrix of the map H1 -> H2 induced by an ambient map (ambient1 -> ambient2)
/// that carries cycles to cycles.
IntMatrix induced_map(const Subquotient& source, const Subquotient& target, const IntMatrix& ambient_map);

/// Whether the induced map is an isomorphism. Over Q only ranks are compared
/// (isomorphism after tensoring with Q).
bool is_isomorphism(const Subquotient& source, const Subquotient& target, const IntMatrix& map,
                    const Scalars& scalars);
bool is_zero_map(const Subquotient& target, const IntMatrix& map);
/// Exactness of H1 -f-> H2 -g-> H3 at H2.
bool is_exact_at(const Subquotient& middle, const IntMatrix& f, const IntMatrix& g, const Subquotient& target);

/// Scalar-aware variants: over Q a map or group counts as zero when it is torsion.
bool is_zero_map(const Subquotient& target, const IntMatrix& map, const Scalars& scalars);
bool is_exact_at(const Subquotient& middle, const IntMatrix& f, const IntMatrix& g, const Subquotient& target,
                 const Scalars& scalars);

/// Reads an integer subquotient group as a group over the given scalars.
FGAbGroup over_scalars(const FGAbGroup& g, const Scalars& s);

}  // namespace colocal
