#include "doctest.h"

#include "colocal/colocal.hpp"
#include "colocal/errors.hpp"

#include <random>
#include <set>

using namespace colocal;

namespace {

FGAbGroup grp(std::size_t free, std::vector<mpz_class> tors = {}) { return FGAbGroup(free, tors); }

std::size_t count_pairs(int a_deg, int b_deg, int total) {
    if (total < 0) return 0;
    std::size_t n = 0;
    for (int b = 0; b * b_deg <= total; ++b)
        if ((total - b * b_deg) % a_deg == 0) ++n;
    return n;
}

RingPtr stiefel_ring() { return GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"}); }

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

TEST_CASE("local cohomology of Z[u,v]/2u") {
    auto R = stiefel_ring();
    auto M = GradedModule::ring_module(R);
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    auto res = local_cohomology(M, I, -40, 0);
    CHECK(res.generators == 2);
    CHECK(res.grading_bound == std::optional<int>());
    for (int j = -40; j <= 0; ++j) {
        CHECK(res.at(0, j).is_zero());
        const bool h1 = j < 0 && j % 6 == 0;
        CHECK(res.at(1, j) == (h1 ? grp(1) : grp(0)));
        const std::size_t n2 = count_pairs(2, 6, -8 - j);
        CHECK(res.at(2, j) == grp(0, std::vector<mpz_class>(n2, 2)));
        CHECK(res.at(3, j).is_zero());
    }
    CHECK(grading_bound_check(res, 0));
    CHECK(is_cellular(res, M, I).cellular);
}

TEST_CASE("local cohomology of Q[v]") {
    auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
    auto M = GradedModule::ring_module(Q);
    IdealSpec I{{Q->parse("v")}};
    auto res = local_cohomology(M, I, -30, 0);
    CHECK(res.regular_sequence);
    for (int j = -30; j <= 0; ++j) {
        CHECK(res.at(0, j).is_zero());
        CHECK(res.at(1, j) == (j < 0 && j % 6 == 0 ? grp(1) : grp(0)));
        CHECK(res.certification.at({0, j}) == Certification::RegularSequence);
    }
    CHECK(grading_bound_check(res, 0));
    CHECK(grading_bound_check(res, -6));
    CHECK(!grading_bound_check(res, -7));
}

TEST_CASE("local cohomology of F2[u,y]") {
    auto F = GradedRing::make(Scalars::prime_field(2), {{"u", 2}, {"y", 3}}, {});
    auto M = GradedModule::ring_module(F);
    IdealSpec J{{F->parse("u"), F->parse("y")}};
    auto res = local_cohomology(M, J, -30, 0);
    for (int j = -30; j <= 0; ++j) {
        CHECK(res.at(0, j).is_zero());
        CHECK(res.at(1, j).is_zero());
        CHECK(res.at(2, j) == grp(count_pairs(2, 3, -5 - j)));
    }
    CHECK(res.at(2, -5) == grp(1));
    CHECK(res.at(2, -6).is_zero());
    CHECK(res.at(2, -7) == grp(1));
    CHECK(res.at(2, -8) == grp(1));
}

TEST_CASE("bounded modules use the grading bound") {
    auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 2}}, {});
    auto M = GradedModule::cyclic(R, {R->parse("u"), R->parse("v")});
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    auto res = local_cohomology(M, I, -6, 6);
    REQUIRE(res.grading_bound);
    for (int j = -6; j <= 6; ++j) {
        CHECK(res.at(0, j) == (j == 0 ? grp(1) : grp(0)));
        CHECK(res.at(1, j).is_zero());
        CHECK(res.at(2, j).is_zero());
        CHECK(res.certification.at({0, j}) == Certification::GradingBound);
    }
    auto shifted = M.shift(4);
    auto rs = local_cohomology(shifted, I, -6, 10);
    CHECK(grading_bound_check(rs, 4));
    CHECK(rs.at(0, 4) == grp(1));
    auto v = is_cellular(rs, shifted, I);
    CHECK(v.cellular);
    CHECK(v.certified);
}

TEST_CASE("H0 is the torsion radical") {
    std::mt19937 rng(31);
    auto Zv = GradedRing::make(Scalars::integers(), {{"v", 2}}, {});
    auto F3 = GradedRing::make(Scalars::prime_field(3), {{"u", 2}, {"v", 2}}, {});
    for (int trial = 0; trial < 4; ++trial) {
        for (const auto& [R, I] : {std::pair{Zv, IdealSpec{{Zv->parse("v")}}},
                                   std::pair{F3, IdealSpec{{F3->parse("u"), F3->parse("v")}}}}) {
            auto M = random_module(rng, R, 2, 2);
            auto lc = local_cohomology(M, I, -4, 10);
            auto tr = torsion_radical(M, I, -4, 10, TorsionOptions{24, false});
            for (int j = -4; j <= 10; ++j) CHECK(lc.at(0, j) == tr.at(j).group.as_vector_space(R->scalars()));
        }
    }
}

TEST_CASE("Koszul and Cech models agree") {
    SUBCASE("Z[u,v]/2u") {
        auto R = stiefel_ring();
        auto M = GradedModule::ring_module(R);
        IdealSpec I{{R->parse("u"), R->parse("v")}};
        auto a = local_cohomology(M, I, -24, 0);
        auto b = cech_cohomology(M, I, -24, 0);
        CHECK(a.groups == b.groups);
    }
    SUBCASE("F2[u,y]") {
        auto F = GradedRing::make(Scalars::prime_field(2), {{"u", 2}, {"y", 3}}, {});
        auto M = GradedModule::ring_module(F);
        IdealSpec J{{F->parse("u"), F->parse("y")}};
        CHECK(local_cohomology(M, J, -20, 0).groups == cech_cohomology(M, J, -20, 0).groups);
    }
    SUBCASE("random modules over Q[v]") {
        std::mt19937 rng(8);
        auto Q = GradedRing::make(Scalars::rationals(), {{"v", 2}}, {});
        IdealSpec I{{Q->parse("v")}};
        for (int trial = 0; trial < 6; ++trial) {
            auto M = random_module(rng, Q, 2, 1);
            CHECK(local_cohomology(M, I, -12, 8).groups == cech_cohomology(M, I, -12, 8).groups);
        }
    }
}

TEST_CASE("colocalization triangle") {
    SUBCASE("torsion module") {
        auto R = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {});
        auto M = GradedModule::cyclic(R, {R->parse("u"), R->parse("v")});
        IdealSpec I{{R->parse("u"), R->parse("v")}};
        auto tri = colocalization_triangle(M, I, -10, 4);
        CHECK(tri.les_verified);
        for (int j = -10; j <= 4; ++j) {
            CHECK(tri.cell.at({0, j}) == (j == 0 ? grp(1) : grp(0)));
            CHECK(tri.module.at({0, j}) == (j == 0 ? grp(1) : grp(0)));
            for (int p = -1; p <= 0; ++p) CHECK(tri.null.at({p, j}).is_zero());
        }
    }
    SUBCASE("Q[v]") {
        auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
        auto M = GradedModule::ring_module(Q);
        auto tri = colocalization_triangle(M, IdealSpec{{Q->parse("v")}}, -30, 12);
        CHECK(tri.les_verified);
        for (int j = -30; j <= 12; ++j) CHECK(tri.null.at({0, j}) == (j % 6 == 0 ? grp(1) : grp(0)));
    }
    SUBCASE("Z[u,v]/2u") {
        auto R = stiefel_ring();
        auto tri = colocalization_triangle(GradedModule::ring_module(R), IdealSpec{{R->parse("u"), R->parse("v")}}, -40, 0);
        CHECK(tri.les_verified);
        CHECK(tri.cell.at({-1, -6}) == grp(1));
        CHECK(tri.cell.at({-2, -8}) == grp(0, {2}));
        CHECK(tri.module.at({0, 0}) == grp(1));
        CHECK(tri.module.at({0, -2}).is_zero());
    }
}

TEST_CASE("cellularity") {
    auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
    auto M = GradedModule::ring_module(Q);
    IdealSpec I{{Q->parse("v")}};
    CHECK(is_cellular(local_cohomology(M, I, -24, 0), M, I).cellular);

    auto single = GradedComplex::single(M);
    auto v = is_cellular(single, I, -6, 12);
    CHECK(!v.cellular);
    REQUIRE(v.witness);
    CHECK(v.witness->first == 0);
    CHECK(!v.certified);
    CHECK_THROWS_AS(is_cellular(single, I, -6, 12, TorsionOptions{16, true}), WindowTooSmall);

    GradedComplex zero(Q);
    CHECK(is_cellular(zero, I, -6, 6).cellular);

    auto T = GradedModule::cyclic(Q, {Q->parse("v^2")});
    auto vt = is_cellular(GradedComplex::single(T), I, -6, 18, TorsionOptions{16, true});
    CHECK(vt.cellular);
    CHECK(vt.certified);
}

TEST_CASE("rationalization concentrates in one column") {
    auto R = stiefel_ring();
    auto res = local_cohomology(GradedModule::ring_module(R), IdealSpec{{R->parse("u"), R->parse("v")}}, -40, 0);
    std::set<int> columns;
    for (const auto& [key, g] : res.groups)
        if (!g.rationalized().is_zero()) columns.insert(key.first);
    CHECK(columns == std::set<int>{1});
}

TEST_CASE("stabilization failure is reported") {
    auto R = stiefel_ring();
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    StabilizationPolicy tight;
    tight.max_power = 2;
    CHECK_THROWS_AS(local_cohomology(GradedModule::ring_module(R), I, -30, 0, tight), StabilizationNotReached);
}

TEST_CASE("zero generators are dropped from the ideal") {
    auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
    auto M = GradedModule::ring_module(Q);
    auto a = local_cohomology(M, IdealSpec{{Q->parse("v"), Polynomial()}}, -18, 0);
    auto b = local_cohomology(M, IdealSpec{{Q->parse("v")}}, -18, 0);
    CHECK(a.groups == b.groups);
}

TEST_CASE("thread count is deterministic in output") {
    auto R = stiefel_ring();
    auto M = GradedModule::ring_module(R);
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    StabilizationPolicy one;
    one.threads = 1;
    StabilizationPolicy four;
    four.threads = 4;
    auto a = local_cohomology(M, I, -20, 0, one), b = local_cohomology(M, I, -20, 0, four);
    CHECK(a.groups == b.groups);
    CHECK(a.stabilized_at == b.stabilized_at);
    CHECK(worker_count(one, 10) == 1);
    CHECK(worker_count(four, 2) == 2);
}
