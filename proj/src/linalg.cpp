#include "colocal/linalg.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace colocal {

namespace {

// Row/column operations on the working matrix mirrored into U, U^-1, V, V^-1.
struct SmithWork {
    IntMatrix A, U, Ui, V, Vi;

    explicit SmithWork(const IntMatrix& a)
        : A(a), U(IntMatrix::identity(a.rows())), Ui(IntMatrix::identity(a.rows())),
          V(IntMatrix::identity(a.cols())), Vi(IntMatrix::identity(a.cols())) {}

    void swap_rows(std::size_t a, std::size_t b) {
        A.swap_rows(a, b);
        U.swap_rows(a, b);
        Ui.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        A.swap_cols(a, b);
        V.swap_cols(a, b);
        Vi.swap_rows(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const mpz_class& f) {
        A.add_row(dst, src, f);
        U.add_row(dst, src, f);
        Ui.add_col(src, dst, -f);
    }
    void add_col(std::size_t dst, std::size_t src, const mpz_class& f) {
        A.add_col(dst, src, f);
        V.add_col(dst, src, f);
        Vi.add_row(src, dst, -f);
    }
    void negate_row(std::size_t r) {
        A.negate_row(r);
        U.negate_row(r);
        Ui.negate_col(r);
    }

    // Smallest nonzero |entry| in the trailing block starting at (k, k).
    bool move_min_pivot(std::size_t k) {
        bool found = false;
        std::size_t bi = 0, bj = 0;
        mpz_class best;
        for (std::size_t i = k; i < A.rows(); ++i)
            for (std::size_t j = k; j < A.cols(); ++j) {
                const mpz_class& v = A(i, j);
                if (v == 0) continue;
                if (!found || abs(v) < best) {
                    best = abs(v);
                    bi = i;
                    bj = j;
                    found = true;
                    if (best == 1) goto done;
                }
            }
    done:
        if (!found) return false;
        swap_rows(k, bi);
        swap_cols(k, bj);
        return true;
    }

    // Clears row k and column k beyond the pivot; returns false if a
    // remainder appeared and the pivot must be re-chosen.
    bool clear_cross(std::size_t k) {
        bool clean = true;
        for (std::size_t i = k + 1; i < A.rows(); ++i) {
            if (A(i, k) == 0) continue;
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), A(i, k).get_mpz_t(), A(k, k).get_mpz_t());
            add_row(i, k, -q);
            if (A(i, k) != 0) clean = false;
        }
        for (std::size_t j = k + 1; j < A.cols(); ++j) {
            if (A(k, j) == 0) continue;
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), A(k, j).get_mpz_t(), A(k, k).get_mpz_t());
            add_col(j, k, -q);
            if (A(k, j) != 0) clean = false;
        }
        return clean;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
    SmithWork w(input);
    const std::size_t limit = std::min(input.rows(), input.cols());
    std::size_t k = 0;
    for (; k < limit; ++k) {
        if (!w.move_min_pivot(k)) break;
        for (;;) {
            if (!w.clear_cross(k)) {
                w.move_min_pivot(k);
                continue;
            }
            // Divisibility: fold a non-divisible row into the pivot row.
            bool divides_all = true;
            for (std::size_t i = k + 1; i < w.A.rows() && divides_all; ++i)
                for (std::size_t j = k + 1; j < w.A.cols(); ++j)
                    if (!mpz_divisible_p(w.A(i, j).get_mpz_t(), w.A(k, k).get_mpz_t())) {
                        w.add_row(k, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (w.A(k, k) < 0) w.negate_row(k);
    }
    SmithForm f;
    f.rank = k;
    f.D = std::move(w.A);
    f.U = std::move(w.U);
    f.U_inv = std::move(w.Ui);
    f.V = std::move(w.V);
    f.V_inv = std::move(w.Vi);
    return f;
}

ExactMatrix ExactMatrix::from_rational(const QMatrix& q) {
    IntMatrix m(q.rows(), q.cols());
    for (std::size_t c = 0; c < q.cols(); ++c) {
        mpz_class l = 1;
        for (std::size_t r = 0; r < q.rows(); ++r)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q(r, c).get_den_mpz_t());
        for (std::size_t r = 0; r < q.rows(); ++r) {
            mpq_class v = q(r, c) * l;
            m(r, c) = v.get_num();
        }
    }
    return {Scalars::rationals(), std::move(m)};
}

FGAbGroup cokernel(const IntMatrix& A) {
    if (A.cols() == 0) return FGAbGroup::free(A.rows());
    SmithForm f = smith_normal_form(A);
    std::vector<mpz_class> diag;
    for (std::size_t i = 0; i < f.rank; ++i) diag.push_back(f.D(i, i));
    return FGAbGroup(A.rows() - f.rank, diag);
}

FGAbGroup cokernel(const ExactMatrix& A) {
    if (!A.scalars.is_field()) return cokernel(A.entries);
    return FGAbGroup::vector_space(A.rows() - rank_over(A));
}

std::size_t rank_rational(const IntMatrix& input) {
    // Fraction-free (Bareiss) elimination.
    IntMatrix A = input;
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t p = r;
        while (p < A.rows() && A(p, c) == 0) ++p;
        if (p == A.rows()) continue;
        A.swap_rows(r, p);
        for (std::size_t i = r + 1; i < A.rows(); ++i) {
            for (std::size_t j = c + 1; j < A.cols(); ++j) {
                A(i, j) = A(r, c) * A(i, j) - A(i, c) * A(r, j);
                mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            A(i, c) = 0;
        }
        prev = A(r, c);
        ++r;
    }
    return r;
}

std::size_t rank_mod_p(const IntMatrix& input, unsigned long p) {
    const std::size_t rows = input.rows(), cols = input.cols();
    std::vector<unsigned long> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class v;
            mpz_fdiv_r_ui(v.get_mpz_t(), input(i, j).get_mpz_t(), p);
            a[i * cols + j] = v.get_ui();
        }
    auto at = [&](std::size_t i, std::size_t j) -> unsigned long& { return a[i * cols + j]; };
    auto inv = [p](unsigned long x) {
        unsigned long result = 1, e = p - 2;
        while (e) {
            if (e & 1) result = result * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return result;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(at(r, j), at(piv, j));
        unsigned long iv = inv(at(r, c));
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (at(i, c) == 0) continue;
            unsigned long f = at(i, c) * iv % p;
            for (std::size_t j = c; j < cols; ++j) at(i, j) = (at(i, j) + (p - f) * at(r, j)) % p;
        }
        ++r;
    }
    return r;
}

std::size_t rank_over(const ExactMatrix& A) {
    if (A.scalars.kind == ScalarKind::PrimeField) return rank_mod_p(A.entries, A.scalars.characteristic);
    return rank_rational(A.entries);
}

std::size_t rank(const QMatrix& input) {
    QMatrix A = input;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t p = r;
        while (p < A.rows() && A(p, c) == 0) ++p;
        if (p == A.rows()) continue;
        A.swap_rows(r, p);
        for (std::size_t i = r + 1; i < A.rows(); ++i)
            if (A(i, c) != 0) A.add_row(i, r, -A(i, c) / A(r, c));
        ++r;
    }
    return r;
}

QMatrix rref(const QMatrix& input, std::vector<std::size_t>& pivots) {
    QMatrix A = input;
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t p = r;
        while (p < A.rows() && A(p, c) == 0) ++p;
        if (p == A.rows()) continue;
        A.swap_rows(r, p);
        const mpq_class inv = 1 / A(r, c);
        for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) *= inv;
        for (std::size_t i = 0; i < A.rows(); ++i)
            if (i != r && A(i, c) != 0) A.add_row(i, r, -A(i, c));
        pivots.push_back(c);
        ++r;
    }
    return A;
}

QMatrix nullspace(const QMatrix& A) {
    std::vector<std::size_t> pivots;
    QMatrix R = rref(A, pivots);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    QMatrix K(A.cols(), A.cols() - pivots.size());
    std::size_t k = 0;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        K(f, k) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) K(pivots[i], k) = -R(i, f);
        ++k;
    }
    return K;
}

QMatrix column_basis(const QMatrix& A) {
    std::vector<std::size_t> pivots;
    rref(A, pivots);
    QMatrix B(A.rows(), pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t r = 0; r < A.rows(); ++r) B(r, k) = A(r, pivots[k]);
    return B;
}

std::optional<QMatrix> solve(const QMatrix& A, const QMatrix& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("solve: row mismatch");
    QMatrix aug(A.rows(), A.cols() + B.cols());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t c = 0; c < A.cols(); ++c) aug(r, c) = A(r, c);
        for (std::size_t c = 0; c < B.cols(); ++c) aug(r, A.cols() + c) = B(r, c);
    }
    std::vector<std::size_t> pivots;
    QMatrix R = rref(aug, pivots);
    QMatrix X(A.cols(), B.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= A.cols()) return std::nullopt;
        for (std::size_t c = 0; c < B.cols(); ++c) X(pivots[i], c) = R(i, A.cols() + c);
    }
    return X;
}

namespace {

bool composite_vanishes(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    if (d_out.cols() == 0 || d_in.cols() == 0 || d_out.rows() == 0) return true;
    IntMatrix comp = d_out.entries * d_in.entries;
    if (d_out.scalars.kind == ScalarKind::PrimeField) {
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j)
                if (!mpz_divisible_ui_p(comp(i, j).get_mpz_t(), d_out.scalars.characteristic)) return false;
        return true;
    }
    return comp.is_zero();
}

}  // namespace

FGAbGroup homology_at(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    const std::size_t n = d_in.cols() ? d_in.rows() : d_out.cols();
    if (d_in.cols() && d_out.rows() && d_in.rows() != d_out.cols())
        throw std::invalid_argument("homology_at: d_in target and d_out source differ in size");
    if (!composite_vanishes(d_in, d_out)) throw NotAComplex("homology_at: d_out * d_in != 0");
    if (d_out.scalars.is_field() || d_in.scalars.is_field()) {
        const std::size_t r_out = d_out.rows() ? rank_over(d_out) : 0;
        const std::size_t r_in = d_in.cols() ? rank_over(d_in) : 0;
        return FGAbGroup::vector_space(n - r_out - r_in);
    }
    IntMatrix in = d_in.cols() ? d_in.entries : IntMatrix(n, 0);
    IntMatrix out = d_out.rows() ? d_out.entries : IntMatrix(0, n);
    return presented_homology(IntMatrix(n, 0), in, out, IntMatrix(out.rows(), 0)).group;
}

IntMatrix kernel_basis(const IntMatrix& A) {
    if (A.rows() == 0) return IntMatrix::identity(A.cols());
    SmithForm f = smith_normal_form(A);
    return f.V.columns(f.rank, A.cols() - f.rank);
}

IntMatrix lattice_basis(const IntMatrix& G) {
    if (G.cols() == 0) return IntMatrix(G.rows(), 0);
    SmithForm f = smith_normal_form(G);
    IntMatrix B(G.rows(), f.rank);
    for (std::size_t j = 0; j < f.rank; ++j)
        for (std::size_t i = 0; i < G.rows(); ++i) B(i, j) = f.U_inv(i, j) * f.D(j, j);
    return B;
}

IntMatrix solve_in_lattice(const IntMatrix& B, const IntMatrix& Y) {
    const std::size_t k = B.cols();
    if (Y.rows() != B.rows()) throw std::invalid_argument("solve_in_lattice: row mismatch");
    if (k == 0) {
        if (!Y.is_zero()) throw std::domain_error("solve_in_lattice: vector outside the zero lattice");
        return IntMatrix(0, Y.cols());
    }
    SmithForm f = smith_normal_form(B);
    if (f.rank != k) throw std::invalid_argument("solve_in_lattice: basis columns are dependent");
    IntMatrix UY = f.U * Y;
    IntMatrix W(k, Y.cols());
    for (std::size_t c = 0; c < Y.cols(); ++c) {
        for (std::size_t i = 0; i < k; ++i) {
            if (!mpz_divisible_p(UY(i, c).get_mpz_t(), f.D(i, i).get_mpz_t()))
                throw std::domain_error("solve_in_lattice: vector outside the lattice");
            mpz_divexact(W(i, c).get_mpz_t(), UY(i, c).get_mpz_t(), f.D(i, i).get_mpz_t());
        }
        for (std::size_t i = k; i < UY.rows(); ++i)
            if (UY(i, c) != 0) throw std::domain_error("solve_in_lattice: vector outside the lattice span");
    }
    return f.V * W;
}

Subquotient presented_homology(const IntMatrix& mid_presentation, const IntMatrix& d_in,
                               const IntMatrix& d_out, const IntMatrix& out_presentation) {
    const std::size_t n = mid_presentation.rows();
    Subquotient h;
    if (d_out.rows() == 0) {
        h.cycles = IntMatrix::identity(n);
    } else {
        IntMatrix neg_out = out_presentation.scaled(-1);
        IntMatrix stacked = d_out.hcat(neg_out);
        IntMatrix ker = kernel_basis(stacked);
        h.cycles = lattice_basis(ker.rows_range(0, n));
    }
    IntMatrix boundary = mid_presentation.hcat(d_in.cols() ? d_in : IntMatrix(n, 0));
    h.relations = solve_in_lattice(h.cycles, boundary);
    h.group = cokernel(h.relations);
    return h;
}

Subquotient presented_group(const IntMatrix& presentation) {
    Subquotient h;
    h.cycles = IntMatrix::identity(presentation.rows());
    h.relations = presentation;
    h.group = cokernel(presentation);
    return h;
}

IntMatrix induced_map(const Subquotient& source, const Subquotient& target, const IntMatrix& ambient_map) {
    if (source.rank() == 0) return IntMatrix(target.rank(), 0);
    IntMatrix images = ambient_map * source.cycles;
    return target.coordinates(images);
}

bool is_zero_map(const Subquotient& target, const IntMatrix& map) {
    if (map.cols() == 0 || map.rows() == 0) return true;
    try {
        solve_in_lattice(lattice_basis(target.relations), map);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

bool is_isomorphism(const Subquotient& source, const Subquotient& target, const IntMatrix& map,
                    const Scalars& scalars) {
    IntMatrix m = map.cols() ? map : IntMatrix(target.rank(), source.rank());
    IntMatrix out = m.rows() ? m : IntMatrix(0, source.rank());
    Subquotient kernel = presented_homology(source.relations, IntMatrix(source.rank(), 0), out, target.relations);
    FGAbGroup coker = cokernel(IntMatrix(target.rank(), 0).hcat(m).hcat(target.relations));
    if (scalars.kind == ScalarKind::Rationals)
        return kernel.group.free_rank() == 0 && coker.free_rank() == 0;
    return kernel.group.is_zero() && coker.is_zero();
}

bool is_exact_at(const Subquotient& middle, const IntMatrix& f, const IntMatrix& g, const Subquotient& target) {
    IntMatrix in = f.cols() ? f : IntMatrix(middle.rank(), 0);
    IntMatrix out = g.rows() ? g : IntMatrix(0, middle.rank());
    return presented_homology(middle.relations, in, out, target.relations).group.is_zero();
}

bool is_zero_map(const Subquotient& target, const IntMatrix& map, const Scalars& scalars) {
    if (scalars.kind != ScalarKind::Rationals) return is_zero_map(target, map);
    if (map.cols() == 0 || map.rows() == 0) return true;
    return rank_rational(target.relations.hcat(map)) == rank_rational(target.relations);
}

bool is_exact_at(const Subquotient& middle, const IntMatrix& f, const IntMatrix& g, const Subquotient& target,
                 const Scalars& scalars) {
    IntMatrix in = f.cols() ? f : IntMatrix(middle.rank(), 0);
    IntMatrix out = g.rows() ? g : IntMatrix(0, middle.rank());
    return presented_homology(middle.relations, in, out, target.relations).group.as_vector_space(scalars).is_zero();
}

FGAbGroup over_scalars(const FGAbGroup& g, const Scalars& s) { return g.as_vector_space(s); }

}  // namespace colocal
