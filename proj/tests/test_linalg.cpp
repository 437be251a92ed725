#include "doctest.h"

#include "colocal/errors.hpp"
#include "colocal/linalg.hpp"

#include <random>

using namespace colocal;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Bareiss determinant, independent of the Smith routine.
mpz_class determinant(IntMatrix A) {
    const std::size_t n = A.rows();
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && A(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            A.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                A(i, j) = A(k, k) * A(i, j) - A(i, k) * A(k, j);
                mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

void check_smith(const IntMatrix& A) {
    SmithForm f = smith_normal_form(A);
    REQUIRE(f.U * A * f.V == f.D);
    CHECK(f.U * f.U_inv == IntMatrix::identity(A.rows()));
    CHECK(f.V * f.V_inv == IntMatrix::identity(A.cols()));
    if (A.rows()) CHECK(abs(determinant(f.U)) == 1);
    if (A.cols()) CHECK(abs(determinant(f.V)) == 1);
    for (std::size_t i = 0; i < f.D.rows(); ++i)
        for (std::size_t j = 0; j < f.D.cols(); ++j)
            if (i != j) CHECK(f.D(i, j) == 0);
    for (std::size_t i = 0; i < f.rank; ++i) {
        CHECK(f.D(i, i) > 0);
        if (i + 1 < f.rank) CHECK(mpz_divisible_p(f.D(i + 1, i + 1).get_mpz_t(), f.D(i, i).get_mpz_t()));
    }
    for (std::size_t i = f.rank; i < std::min(A.rows(), A.cols()); ++i) CHECK(f.D(i, i) == 0);
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int s = 0; s < 12 && n > 1; ++s) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a != b) u.add_row(a, b, coef(rng));
        if (s % 5 == 0) u.swap_rows(pick(rng), pick(rng));
    }
    return u;
}

}  // namespace

TEST_CASE("smith normal form: worked cases") {
    SUBCASE("identity") {
        SmithForm f = smith_normal_form(IntMatrix::identity(2));
        CHECK(f.D == IntMatrix{{1, 0}, {0, 1}});
    }
    SUBCASE("zero 1x1") {
        SmithForm f = smith_normal_form(IntMatrix{{0}});
        CHECK(f.D == IntMatrix{{0}});
        CHECK(f.rank == 0);
    }
    SUBCASE("diag(2,3) -> diag(1,6)") {
        IntMatrix A{{2, 0}, {0, 3}};
        SmithForm f = smith_normal_form(A);
        CHECK(f.D == IntMatrix{{1, 0}, {0, 6}});
        check_smith(A);
    }
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int trial = 0; trial < 200; ++trial) check_smith(random_matrix(rng, dim(rng), dim(rng), -20, 20));
    // Rank-deficient inputs.
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = random_matrix(rng, dim(rng), 2, -5, 5);
        IntMatrix b = random_matrix(rng, 2, dim(rng), -5, 5);
        check_smith(a * b);
    }
}

TEST_CASE("cokernel") {
    CHECK(cokernel(IntMatrix{{2}}) == FGAbGroup::cyclic(2));
    CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}) == FGAbGroup(0, {mpz_class(6)}));
    CHECK(cokernel(IntMatrix(1, 0)) == FGAbGroup::free(1));
    CHECK(cokernel(ExactMatrix{Scalars::prime_field(2), IntMatrix{{2}}}) == FGAbGroup::vector_space(1));
    CHECK(cokernel(ExactMatrix{Scalars::rationals(), IntMatrix{{2}}}) == FGAbGroup::zero());
}

TEST_CASE("cokernel is invariant under unimodular changes") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix A = random_matrix(rng, dim(rng), dim(rng), -9, 9);
        IntMatrix P = random_unimodular(rng, A.rows());
        IntMatrix Q = random_unimodular(rng, A.cols());
        CHECK(cokernel(P * A * Q) == cokernel(A));
    }
}

TEST_CASE("FGAbGroup normal form") {
    FGAbGroup g(1, {mpz_class(4), mpz_class(6), mpz_class(1), mpz_class(0)});
    CHECK(g.free_rank() == 2);
    REQUIRE(g.torsion().size() == 2);
    CHECK(g.torsion()[0] == 2);
    CHECK(g.torsion()[1] == 12);
    CHECK(g.to_string() == "Z^2 + Z/2 + Z/12");
    CHECK(FGAbGroup(0, {2, 2, 2}).to_string() == "(Z/2)^3");
}

namespace {

// Brute force: number of classes of ker(d_out) modulo im(d_in) among kernel
// vectors in a box, with image membership decided by coefficient search.
std::size_t brute_force_order(const IntMatrix& d_in, const IntMatrix& d_out, long box) {
    const std::size_t n = d_out.cols();
    std::vector<std::vector<long>> ker;
    std::vector<long> v(n, -box);
    for (;;) {
        bool in_ker = true;
        for (std::size_t r = 0; r < d_out.rows() && in_ker; ++r) {
            mpz_class s = 0;
            for (std::size_t c = 0; c < n; ++c) s += d_out(r, c) * v[c];
            in_ker = s == 0;
        }
        if (in_ker) ker.push_back(v);
        std::size_t k = 0;
        while (k < n && v[k] == box) v[k++] = -box;
        if (k == n) break;
        ++v[k];
    }
    auto in_image = [&](const std::vector<long>& w) {
        const std::size_t m = d_in.cols();
        std::vector<long> c(m, -box);
        for (;;) {
            bool eq = true;
            for (std::size_t r = 0; r < n && eq; ++r) {
                mpz_class s = 0;
                for (std::size_t j = 0; j < m; ++j) s += d_in(r, j) * c[j];
                eq = s == w[r];
            }
            if (eq) return true;
            std::size_t k = 0;
            while (k < m && c[k] == box) c[k++] = -box;
            if (k == m) return false;
            ++c[k];
        }
    };
    std::vector<std::vector<long>> reps;
    for (const auto& k : ker) {
        bool fresh = true;
        for (const auto& r : reps) {
            std::vector<long> diff(n);
            for (std::size_t i = 0; i < n; ++i) diff[i] = k[i] - r[i];
            if (in_image(diff)) {
                fresh = false;
                break;
            }
        }
        if (fresh) reps.push_back(k);
    }
    return reps.size();
}

}  // namespace

TEST_CASE("homology_at") {
    auto Z = [](IntMatrix m) { return ExactMatrix::over_integers(std::move(m)); };
    CHECK(homology_at(Z(IntMatrix(2, 2)), Z(IntMatrix(2, 2))) == FGAbGroup::free(2));
    CHECK(homology_at(Z(IntMatrix{{2}}), Z(IntMatrix(0, 1))) == FGAbGroup::cyclic(2));

    IntMatrix inclusion{{2}, {0}};
    IntMatrix projection{{0, 1}};
    CHECK(brute_force_order(inclusion, projection, 4) == 2);
    CHECK(homology_at(Z(inclusion), Z(projection)) == FGAbGroup::cyclic(2));

    CHECK_THROWS_AS(homology_at(Z(IntMatrix{{1}}), Z(IntMatrix{{1}})), NotAComplex);
}

TEST_CASE("homology_at free rank matches rational ranks") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 80; ++trial) {
        // Build d_out * d_in = 0 by taking d_in inside a kernel.
        std::size_t n = dim(rng), p = dim(rng);
        IntMatrix d_out = random_matrix(rng, p, n, -3, 3);
        IntMatrix ker = kernel_basis(d_out);
        IntMatrix d_in = ker * random_matrix(rng, ker.cols(), dim(rng), -3, 3);
        if (ker.cols() == 0) d_in = IntMatrix(n, 1);
        FGAbGroup h = homology_at(ExactMatrix::over_integers(d_in), ExactMatrix::over_integers(d_out));
        std::size_t expected = n - rank_rational(d_out) - rank_rational(d_in);
        CHECK(h.free_rank() == expected);
        CHECK(homology_at(ExactMatrix{Scalars::rationals(), d_in}, ExactMatrix{Scalars::rationals(), d_out}) ==
              FGAbGroup::vector_space(expected));
    }
}

TEST_CASE("presented homology and induced maps") {
    // Z/4 --(*2)--> Z/4: kernel Z/2, cokernel Z/2.
    Subquotient z4 = presented_group(IntMatrix{{4}});
    IntMatrix times2{{2}};
    CHECK(!is_isomorphism(z4, z4, induced_map(z4, z4, times2), Scalars::integers()));
    CHECK(is_isomorphism(z4, z4, induced_map(z4, z4, IntMatrix{{3}}), Scalars::integers()));
    Subquotient k = presented_homology(IntMatrix{{4}}, IntMatrix(1, 0), times2, IntMatrix{{4}});
    CHECK(k.group == FGAbGroup::cyclic(2));
    // Z --2--> Z is an isomorphism rationally only.
    Subquotient z = presented_group(IntMatrix(1, 0));
    CHECK(!is_isomorphism(z, z, times2, Scalars::integers()));
    CHECK(is_isomorphism(z, z, times2, Scalars::rationals()));
    // 0 -> Z --2--> Z -> Z/2 -> 0 is exact in the middle spots.
    Subquotient z2 = presented_group(IntMatrix{{2}});
    CHECK(is_exact_at(z, times2, IntMatrix{{1}}, z2));
    CHECK(!is_exact_at(z, IntMatrix{{4}}, IntMatrix{{1}}, z2));
}

TEST_CASE("rank over prime fields") {
    IntMatrix A{{2, 4}, {1, 3}};
    CHECK(rank_mod_p(A, 2) == 1);
    CHECK(rank_mod_p(A, 3) == 2);
    CHECK(rank_rational(A) == 2);
}
