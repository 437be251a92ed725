#include "doctest.h"

#include "colocal/complex.hpp"
#include "colocal/errors.hpp"

#include <random>

using namespace colocal;

namespace {

FGAbGroup grp(std::size_t free, std::vector<mpz_class> tors = {}) { return FGAbGroup(free, tors); }

GradedModule random_module(std::mt19937& rng, const RingPtr& R, int gens, int rels) {
    std::uniform_int_distribution<int> coef(-2, 2), gdeg(0, 2), rdeg(1, 3);
    const int step = R->min_variable_degree();
    std::vector<ModuleGenerator> g;
    for (int i = 0; i < gens; ++i) g.push_back({"g" + std::to_string(i), step * gdeg(rng)});
    std::vector<ModuleElement> r;
    for (int k = 0; k < rels; ++k) {
        const int deg = step * (2 + rdeg(rng));
        ModuleElement x(gens);
        for (int i = 0; i < gens; ++i)
            for (const auto& m : R->monomials(deg - g[i].degree)) x[i].add_term(m, coef(rng));
        r.push_back(std::move(x));
    }
    return GradedModule(R, g, r);
}

}  // namespace

TEST_CASE("Koszul complex on v over Q[v]") {
    auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
    auto K = koszul(GradedModule::ring_module(Q), IdealSpec{{Q->parse("v")}}, 1);
    for (int j = -30; j <= 12; ++j) {
        CHECK(K.homology_group(0, j).is_zero());
        CHECK(K.homology_group(1, j) == (j == -6 ? grp(1) : grp(0)));
    }
}

TEST_CASE("Koszul complex on the zero element") {
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"});
    auto M = GradedModule::ring_module(R);
    auto K = koszul(M, IdealSpec{{Polynomial()}}, 1);
    for (int j = -4; j <= 14; ++j) {
        CHECK(K.homology_group(0, j) == M.realize(j).group);
        CHECK(K.homology_group(1, j) == M.realize(j).group);
    }
}

TEST_CASE("Koszul complex on u, v over Z[u,v] against direct matrices") {
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {});
    auto u = R->parse("u"), v = R->parse("v");
    auto K = koszul(GradedModule::ring_module(R), IdealSpec{{u, v}}, 1);
    for (int j = -20; j <= 12; ++j) {
        // e -> u e0 + v e1;  e0 -> -v e01,  e1 -> u e01
        IntMatrix d0 = R->mult_matrix(u, j).entries.vcat(R->mult_matrix(v, j).entries);
        if (d0.rows() == 0) d0 = IntMatrix(R->monomials(j + 2).size() + R->monomials(j + 6).size(), R->monomials(j).size());
        IntMatrix d1 = R->mult_matrix(v.scaled(-1), j + 2).entries.hcat(R->mult_matrix(u, j + 6).entries);
        if (d1.cols() == 0) d1 = IntMatrix(R->monomials(j + 8).size(), d0.rows());
        const auto Z = Scalars::integers();
        IntMatrix none_in(R->monomials(j).size(), 0);
        CHECK(K.homology_group(0, j) == homology_at({Z, none_in}, {Z, d0}));
        CHECK(K.homology_group(1, j) == homology_at({Z, d0}, {Z, d1}));
        CHECK(K.homology_group(2, j) == homology_at({Z, d1}, {Z, IntMatrix(0, d1.rows())}));
        CHECK(K.homology_group(2, j) == (j == -8 ? grp(1) : grp(0)));
        CHECK(K.homology_group(1, j).is_zero());
        CHECK(K.homology_group(0, j).is_zero());
    }
}

TEST_CASE("d squared vanishes on random Koszul complexes") {
    std::mt19937 rng(5);
    auto Zv = GradedRing::make(Scalars::integers(), {{"v", 2}}, {});
    auto F3 = GradedRing::make(Scalars::prime_field(3), {{"u", 2}, {"v", 4}}, {});
    auto Zuvw = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 2}, {"w", 4}}, {"u*v - w"});
    for (int trial = 0; trial < 6; ++trial) {
        auto M1 = random_module(rng, Zv, 2, 2);
        auto M2 = random_module(rng, F3, 2, 2);
        auto M3 = random_module(rng, Zuvw, 1, 1);
        for (unsigned t = 1; t <= 2; ++t) {
            auto K1 = koszul(M1, IdealSpec{{Zv->parse("v")}}, t);
            auto K2 = koszul(M2, IdealSpec{{F3->parse("u"), F3->parse("v")}}, t);
            auto K3 = koszul(M3, IdealSpec{{Zuvw->parse("u"), Zuvw->parse("v"), Zuvw->parse("w + u^2")}}, t);
            for (int j = -16; j <= 8; ++j)
                for (int i = 0; i <= 3; ++i) {
                    CHECK_NOTHROW(K1.check_square_zero(i, j));
                    CHECK_NOTHROW(K2.check_square_zero(i, j));
                    CHECK_NOTHROW(K3.check_square_zero(i, j));
                }
        }
    }
}

TEST_CASE("a non-complex is rejected") {
    auto R = GradedRing::make(Scalars::integers(), {{"x", 2}}, {});
    auto M = GradedModule::ring_module(R);
    GradedComplex C(R);
    C.set_term(0, {M});
    C.set_term(1, {M.shift(-2)});
    C.set_term(2, {M.shift(-4)});
    auto x = R->parse("x");
    C.add_block(0, 0, 0, GradedMorphism::scalar(M, M.shift(-2), x));
    C.add_block(1, 0, 0, GradedMorphism::scalar(M.shift(-2), M.shift(-4), x));
    CHECK_THROWS_AS(C.homology_at(1, 0), NotAComplex);
}

TEST_CASE("transition maps over Q[v]") {
    auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
    auto M = GradedModule::ring_module(Q);
    IdealSpec I{{Q->parse("v")}};
    for (unsigned t = 1; t <= 4; ++t) {
        auto f = koszul_transition(M, I, t, t + 1);
        for (int j = -36; j <= 0; j += 6) {
            CHECK(f.commutes(0, j));
            auto hs = f.source().homology_at(1, j);
            auto ht = f.target().homology_at(1, j);
            // H^1(K(v^t))<j> is Q[v]/(v^t) in degree j + 6t, nonzero for -6t <= j <= -6
            CHECK(hs.group == (j >= -6 * static_cast<int>(t) && j <= -6 ? grp(1) : grp(0)));
            auto map = f.induced(1, j, hs, ht);
            // multiplication by v is injective on Q[v]/(v^t) -> Q[v]/(v^{t+1})
            if (hs.group.free_rank() > 0) CHECK(is_isomorphism(hs, ht, map, Q->scalars()));
        }
    }
    // at j = -12 the maps are isomorphisms from t = 2 on, but not from t = 1
    auto f1 = koszul_transition(M, I, 1, 2);
    CHECK_FALSE(is_isomorphism(f1.source().homology_at(1, -12), f1.target().homology_at(1, -12),
                               f1.induced(1, -12, f1.source().homology_at(1, -12), f1.target().homology_at(1, -12)),
                               Q->scalars()));
}

TEST_CASE("transitions compose") {
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"});
    auto M = GradedModule::ring_module(R);
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    for (unsigned t = 1; t <= 3; ++t) {
        auto a = koszul_transition(M, I, t, t + 1);
        auto b = koszul_transition(M, I, t + 1, t + 2);
        auto c = koszul_transition(M, I, t, t + 2);
        for (int j = -30; j <= 0; j += 2)
            for (int i = 0; i <= 2; ++i) {
                CHECK(a.commutes(i, j));
                CHECK(congruent(b.matrix(i, j) * a.matrix(i, j), c.matrix(i, j), c.target().realize(i, j)));
            }
    }
}

TEST_CASE("homology of trivial complexes") {
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"});
    GradedComplex zero(R);
    CHECK(zero.homology(-5, 5).empty());
    CHECK(zero.homology_group(0, 0).is_zero());
    auto M = GradedModule::ring_module(R);
    auto single = GradedComplex::single(M);
    for (int j = -4; j <= 20; ++j) {
        CHECK(single.homology_group(0, j) == M.realize(j).group);
        CHECK(single.homology_group(1, j).is_zero());
        CHECK(single.homology_group(-1, j).is_zero());
    }
}

TEST_CASE("cones") {
    auto Z = GradedRing::make(Scalars::integers(), {}, {});
    auto M = GradedModule::ring_module(Z);
    auto C = GradedComplex::single(M);
    ChainMap two(C, C);
    two.add_block(0, 0, 0, GradedMorphism::scalar(M, M, Z->parse("2")));
    auto k = cone(two);
    CHECK(k.homology_group(-1, 0).is_zero());
    CHECK(k.homology_group(0, 0) == grp(0, {2}));

    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"});
    auto K = koszul(GradedModule::ring_module(R), IdealSpec{{R->parse("u"), R->parse("v")}}, 1);
    ChainMap id(K, K);
    for (int i = 0; i <= 2; ++i)
        for (std::size_t a = 0; a < K.term(i).size(); ++a)
            id.add_block(i, a, a, GradedMorphism::scalar(K.term(i)[a], K.term(i)[a], R->one()));
    auto c = cone(id);
    for (int i = -1; i <= 2; ++i)
        for (int j = -20; j <= 4; ++j) CHECK(c.homology_group(i, j).is_zero());
}

TEST_CASE("long exact sequence of a cone") {
    std::mt19937 rng(3);
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 4}}, {});
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    for (int trial = 0; trial < 4; ++trial) {
        auto M = random_module(rng, R, 2, 2);
        auto f = koszul_transition(M, I, 1, 2);
        auto k = cone(f);
        auto inc = cone_inclusion(f);
        auto proj = cone_projection(f);
        const auto& C = f.source();
        const auto& D = f.target();
        auto C1 = shift_complex(C, 1);
        for (int j = -14; j <= 4; j += 2)
            for (int i = -1; i <= 2; ++i) {
                auto hD = D.homology_at(i, j);
                auto hK = k.homology_at(i, j);
                auto hC1 = C1.homology_at(i, j);
                auto hD1 = D.homology_at(i + 1, j);
                auto hK1 = k.homology_at(i + 1, j);
                auto hDm = D.homology_at(i, j);
                auto hC1m = C1.homology_at(i - 1, j);
                IntMatrix a = inc.induced(i, j, hD, hK);
                IntMatrix b = proj.induced(i, j, hK, hC1);
                IntMatrix c = induced_map(hC1, hD1, f.matrix(i + 1, j));
                IntMatrix a1 = inc.induced(i + 1, j, hD1, hK1);
                IntMatrix cm = induced_map(hC1m, hDm, f.matrix(i, j));
                CHECK(is_exact_at(hK, a, b, hC1));
                CHECK(is_exact_at(hC1, b, c, hD1));
                CHECK(is_exact_at(hD1, c, a1, hK1));
                CHECK(is_exact_at(hD, cm, a, hK));
            }
    }
}

TEST_CASE("tensor of Koszul complexes") {
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"});
    auto M = GradedModule::ring_module(R);
    auto Ku = koszul(M, IdealSpec{{R->parse("u")}}, 1);
    auto Kv = koszul(M, IdealSpec{{R->parse("v")}}, 1);
    auto Kuv = koszul(M, IdealSpec{{R->parse("u"), R->parse("v")}}, 1);
    auto T = tensor(Ku, Kv);
    for (int j = -24; j <= 6; j += 2)
        for (int i = 0; i <= 2; ++i) {
            CHECK_NOTHROW(T.check_square_zero(i, j));
            CHECK(cokernel(T.realize(i, j).presentation) == cokernel(Kuv.realize(i, j).presentation));
            CHECK(T.homology_group(i, j) == Kuv.homology_group(i, j));
        }
}

TEST_CASE("tensor is associative on homology") {
    std::mt19937 rng(9);
    auto R = GradedRing::make(Scalars::integers(), {{"x", 2}, {"y", 2}}, {});
    for (int trial = 0; trial < 3; ++trial) {
        auto A = random_module(rng, R, 1, 1);
        auto B = random_module(rng, R, 1, 1);
        auto C = koszul(A, IdealSpec{{R->parse("x")}}, 1);
        auto D = koszul(B, IdealSpec{{R->parse("y")}}, 1);
        auto E = koszul(GradedModule::ring_module(R), IdealSpec{{R->parse("x + y")}}, 1);
        auto left = tensor(tensor(C, D), E);
        auto right = tensor(C, tensor(D, E));
        for (int i = 0; i <= 3; ++i)
            for (int j = -8; j <= 6; j += 2) {
                CHECK(left.realize(i, j).size == right.realize(i, j).size);
                CHECK(left.homology_group(i, j) == right.homology_group(i, j));
            }
    }
}
