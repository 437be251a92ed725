#include "doctest.h"

#include "colocal/errors.hpp"
#include "colocal/specpage.hpp"

using namespace colocal;

namespace {

FGAbGroup grp(std::size_t free, std::vector<mpz_class> tors = {}) { return FGAbGroup(free, tors); }

RingPtr stiefel_ring() { return GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"}); }

std::map<int, FGAbGroup> ring_homology(const RingPtr& R, int top) {
    auto M = GradedModule::ring_module(R);
    std::map<int, FGAbGroup> h;
    for (int m = 0; m <= top; ++m) h[m] = M.realize(m).group;
    return h;
}

BigradedPage synthetic(std::map<Bidegree, FGAbGroup> entries, int p_min, int q_min, int q_max) {
    BigradedPage page;
    page.entries = std::move(entries);
    page.p_min = p_min;
    page.p_max = 0;
    page.q_min = q_min;
    page.q_max = q_max;
    return page;
}

}  // namespace

TEST_CASE("uct target") {
    auto c = uct_target({{0, grp(1)}, {1, grp(0)}, {2, grp(0, {2})}, {3, grp(0)}});
    CHECK(c.at(0) == grp(1));
    CHECK(c.at(2).is_zero());
    CHECK(c.at(3) == grp(0, {2}));
    auto d = uct_target({{11, grp(0)}, {12, grp(1, {2, 2})}, {13, grp(0)}});
    CHECK(d.at(12) == grp(1));
    CHECK(d.at(13) == grp(0, {2, 2}));
    auto r = uct_target({{4, grp(3, {5})}});
    CHECK(r.at(4) == grp(3));

    auto h = ring_homology(stiefel_ring(), 13);
    CHECK(h.at(12) == grp(1, {2, 2}));
    auto s = shifted_target(uct_target(h), 7);
    CHECK(s.at(-7) == grp(1));
    CHECK(s.at(-10) == grp(0, {2}));
    CHECK(s.at(-20) == grp(0, {2, 2}));
}

TEST_CASE("collapse by position") {
    CHECK(collapse_by_position(synthetic({{{-1, -6}, grp(1)}, {{-2, -8}, grp(0, {2})}, {{-2, -5}, grp(1)}}, -2, -10, 0))
              .collapsed);
    CHECK(collapse_by_position(synthetic({{{0, 0}, grp(1)}, {{0, 2}, grp(1)}}, -2, -10, 4)).collapsed);
    auto v = collapse_by_position(synthetic({{{0, 0}, grp(1)}, {{-2, 1}, grp(1)}}, -2, -4, 4));
    CHECK(!v.collapsed);
    REQUIRE(v.obstructions.size() == 1);
    CHECK(v.obstructions[0] == Obstruction{2, 0, 0});
    // a target outside the window does not obstruct
    CHECK(collapse_by_position(synthetic({{{0, 4}, grp(1)}, {{-2, 1}, grp(1)}}, -2, -4, 4)).collapsed);

    BigradedPage coh = synthetic({{{0, 0}, grp(1)}, {{-2, -1}, grp(1)}}, -2, -4, 4);
    coh.cohomological = true;
    CHECK(!collapse_by_position(coh).collapsed);
}

TEST_CASE("e2 page of the examples") {
    auto R = stiefel_ring();
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    auto page = e2_page(local_cohomology(GradedModule::ring_module(R), I, -40, 0));
    CHECK(page.nonzero_columns() == std::vector<int>{-2, -1});
    CHECK(page.at(-1, -6) == grp(1));
    CHECK(collapse_by_position(page).collapsed);

    auto Q = GradedRing::make(Scalars::rationals(), {{"v", 6}}, {});
    auto qp = e2_page(local_cohomology(GradedModule::ring_module(Q), IdealSpec{{Q->parse("v")}}, -30, 0));
    CHECK(qp.nonzero_columns() == std::vector<int>{-1});
    for (int q = -30; q <= 0; ++q) CHECK(qp.at(-1, q) == (q < 0 && q % 6 == 0 ? grp(1) : grp(0)));

    auto Zuv = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {});
    auto T = GradedModule::cyclic(Zuv, {Zuv->parse("u^2"), Zuv->parse("v")});
    auto tp = e2_page(local_cohomology(T, IdealSpec{{Zuv->parse("u"), Zuv->parse("v")}}, -10, 6));
    CHECK(tp.nonzero_columns() == std::vector<int>{0});
    for (int q = -10; q <= 6; ++q) CHECK(tp.at(0, q) == T.realize(q).group);
    CHECK(tp.respects_grading_bound());
    REQUIRE(tp.grading_bound);
    CHECK(*tp.grading_bound == 2);
}

TEST_CASE("abutment against the universal coefficient target") {
    auto R = stiefel_ring();
    IdealSpec I{{R->parse("u"), R->parse("v")}};
    auto page = e2_page(local_cohomology(GradedModule::ring_module(R), I, -40, 0));
    auto target = shifted_target(uct_target(ring_homology(R, 34)), 7);
    auto rep = abutment(page, target);
    for (int s = -40; s <= -7; ++s) {
        CAPTURE(s);
        CHECK(rep.at(s).consistent());
    }
    CHECK(rep.at(-7).graded == grp(1));
    CHECK(rep.at(-7).verdict == Verdict::Equal);
    CHECK(rep.at(-10).graded == grp(0, {2}));
    CHECK(rep.at(-20).graded == grp(0, {2, 2}));
    // the two columns never meet on an antidiagonal: odd and even total degrees
    for (const auto& d : rep.degrees) CHECK(d.contributions.size() <= 1);
    CHECK_THROWS_AS(rep.at(5), ValidationError);

    auto wrong = target;
    wrong[-10] = grp(1);
    CHECK(abutment(page, wrong).at(-10).verdict == Verdict::Inconsistent);

    auto mixed = synthetic({{{0, 0}, grp(0, {2})}, {{-1, 1}, grp(0, {2})}}, -1, -2, 2);
    auto m = abutment(mixed, {{0, grp(0, {4})}});
    CHECK(m.at(0).extension_ambiguous);
    CHECK(m.at(0).verdict == Verdict::Consistent);
    CHECK(abutment(mixed, {{0, grp(0, {8})}}).at(0).verdict == Verdict::Inconsistent);
    CHECK(abutment(mixed, {}).at(0).verdict == Verdict::NoTarget);
    mixed.scalars = Scalars::prime_field(2);
    CHECK(abutment(mixed, {{0, grp(0, {4})}}).at(0).verdict == Verdict::Inconsistent);

    CHECK_THROWS_AS(abutment(synthetic({{{0, 0}, grp(1)}, {{-2, 1}, grp(1)}}, -2, -4, 4), {}), NotCollapsed);
}
