#include <catch2/catch_amalgamated.hpp>

#include "ccfg/actions.hpp"
#include "ccfg/configuration.hpp"
#include "ccfg/constructions.hpp"
#include "ccfg/generators.hpp"

using namespace ccfg;

TEST_CASE("trivial configuration on 3 points validates") {
    Configuration cc = trivial_scheme(3);
    CHECK(cc.n() == 3);
    CHECK(cc.rank() == 2);
    CHECK(cc.homogeneous);
    CHECK(cc.valency[0] == 1);
    CHECK(cc.valency[1] == 2);
}

TEST_CASE("4-cycle coloring validates with the hand-computed data") {
    Configuration cc = cycle_scheme(4);
    REQUIRE(cc.rank() == 3);
    CHECK(cc.valency[1] == 2);  // adjacent
    CHECK(cc.valency[2] == 1);  // antipodal
    CHECK(cc.converse_of(1) == 1);
    CHECK(cc.converse_of(2) == 2);
    CHECK(cc.valency_of(2) == 1);
    // n_r n_s = sum_t n_t c_{rs}^t at r=s=1: 4 = 1*2 + 2*0 + 1*2
    CHECK(cc.c(1, 1, 0) == 2);
    CHECK(cc.c(1, 1, 1) == 0);
    CHECK(cc.c(1, 1, 2) == 2);
}

TEST_CASE("path coloring is rejected by the exhaustive triple check") {
    CHECK_THROWS_AS(validate(path_coloring(4)), c3_violation);
    CHECK_THROWS_AS(validate(path_coloring(5)), c3_violation);
    // witness counts must actually differ
    try {
        validate(path_coloring(4));
        FAIL("expected a rejection");
    } catch (const c3_violation& e) {
        CHECK(e.count1 != e.count2);
    }
}

TEST_CASE("C1 and C2 violations are reported as such") {
    ColorMatrix flat(3, 0);
    flat.rank = 1;  // diagonal color leaks off the diagonal
    CHECK_THROWS_AS(validate(flat), c1_violation);

    ColorMatrix askew(3);
    for (int i = 0; i < 3; ++i) askew.at(i, i) = 0;
    askew.at(0, 1) = 1;
    askew.at(1, 0) = 2;
    askew.at(0, 2) = 1;
    askew.at(2, 0) = 3;
    askew.at(1, 2) = 4;
    askew.at(2, 1) = 4;
    askew.rank = 5;
    CHECK_THROWS_AS(validate(askew), c2_violation);
}

TEST_CASE("missing diagonal cell violates C1") {
    ColorMatrix m(2);
    m.at(0, 0) = 0;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.rank = 2;  // (1,1) left absent
    CHECK_THROWS_AS(validate(m), c1_violation);
}

TEST_CASE("regular cyclic scheme has group-law intersection numbers") {
    Configuration cc = regular_cyclic_scheme(5);
    // color(a,b) = b-a before canonicalization; canonical form keeps that
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            int sab = cc.matrix.at(0, (a + b) % 5);
            CHECK(cc.c(cc.matrix.at(0, a), cc.matrix.at(0, b), sab) == 1);
            for (int t = 0; t < 5; ++t)
                if (t != sab) CHECK(cc.c(cc.matrix.at(0, a), cc.matrix.at(0, b), t) == 0);
        }
    // converse of s_a is s_{-a}
    for (int a = 0; a < 5; ++a)
        CHECK(cc.converse_of(cc.matrix.at(0, a)) == cc.matrix.at(0, (5 - a) % 5));
}

TEST_CASE("trivial scheme tensor: c_{111} = n - 2") {
    Configuration cc = trivial_scheme(4);
    CHECK(cc.c(1, 1, 1) == 2);
}

TEST_CASE("identities of the homogeneous tensor hold on varied schemes") {
    for (const Configuration& cc :
         {trivial_scheme(5), cycle_scheme(4), cycle_scheme(7), regular_cyclic_scheme(6),
          gen_cyclotomic(13, 3), orbitals(gen_cyclic_semidirect(9, 3, 4))}) {
        IdentityReport rep = verify_identities(cc);
        INFO("identity " << rep.which << " at r=" << rep.r << " s=" << rep.s << " t=" << rep.t);
        CHECK(rep.ok);
    }
}

TEST_CASE("per-relation cardinality |t| = n_t * |source fiber|") {
    Configuration cc = point_extension(cycle_scheme(4), {0});
    for (int t = 0; t < cc.rank(); ++t) {
        long long cells = 0;
        for (int a = 0; a < cc.n(); ++a)
            for (int b = 0; b < cc.n(); ++b)
                if (cc.matrix.at(a, b) == t) ++cells;
        CHECK(cells == (long long)cc.valency[t] * (long long)cc.fibers[cc.source_fiber[t]].size());
    }
}

TEST_CASE("rows partition into the alpha r sets") {
    Configuration cc = gen_cyclotomic(13, 3);
    for (int a = 0; a < cc.n(); ++a) {
        long long total = 0;
        for (int r = 0; r < cc.rank(); ++r) total += (long long)cc.points_from(a, r).size();
        CHECK(total == cc.n());
    }
}

TEST_CASE("restriction to the full point set returns the scheme itself") {
    Configuration cc = cycle_scheme(5);
    std::vector<int> all{0, 1, 2, 3, 4};
    CHECK(restriction(cc, all).matrix == cc.matrix);
}

TEST_CASE("restriction of a direct sum to a summand recovers it") {
    Configuration a = cycle_scheme(4), b = trivial_scheme(3);
    Configuration sum = direct_sum(a, b);
    std::vector<int> first;
    for (int i = 0; i < a.n(); ++i) first.push_back(i);
    CHECK(restriction(sum, first).matrix == a.matrix);
}

TEST_CASE("point extension of the 4-cycle restricted to the far pair") {
    Configuration xa = point_extension(cycle_scheme(4), {0});
    Configuration sub = restriction(xa, {1, 3});
    CHECK(sub.n() == 2);
    // the reflection through 0 still swaps 1 and 3
    CHECK(sub.matrix == trivial_scheme(2).matrix);
}

TEST_CASE("restriction rejects non-fiber-union point sets") {
    Configuration xa = point_extension(cycle_scheme(4), {0});
    CHECK_THROWS_AS(restriction(xa, {0, 1}), not_fiber_union);
}

TEST_CASE("elementary coset tensor values match the closed form") {
    Configuration cc = orbitals(gen_cyclic_semidirect(9, 3, 4));
    const int k = cc.max_valency();
    REQUIRE(k == 3);
    for (int s = 0; s < cc.rank(); ++s) {
        if (cc.valency[s] != k) continue;
        for (int r = 0; r < cc.rank(); ++r) {
            int expect = cc.is_reflexive[r] ? k : (cc.valency[r] == 1 ? k : 0);
            CHECK(cc.c(s, cc.converse[s], r) == expect);
        }
    }
}

TEST_CASE("partial configurations validate blockwise and reject ragged sentinels") {
    Configuration a = cycle_scheme(4), b = trivial_scheme(3);
    ColorMatrix m = direct_sum_matrix(a, b);
    // blank both cross blocks: still a valid partial configuration
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < b.n(); ++j) {
            m.at(i, a.n() + j) = kNoRel;
            m.at(a.n() + j, i) = kNoRel;
        }
    m.canonicalize();
    Configuration part = validate(m);
    CHECK(part.matrix.partial());
    CHECK_FALSE(part.homogeneous);

    // a sentinel inside a block must be rejected
    ColorMatrix bad = direct_sum_matrix(a, b);
    bad.at(0, a.n()) = kNoRel;
    CHECK_THROWS_AS(validate(bad), precondition_violated);
}

TEST_CASE("accessors range-check their arguments") {
    Configuration cc = trivial_scheme(3);
    CHECK_THROWS_AS(cc.color(0, 3), out_of_range);
    CHECK_THROWS_AS(cc.converse_of(2), out_of_range);
    CHECK_THROWS_AS(cc.valency_of(-1), out_of_range);
}

TEST_CASE("canonical form is stable under re-validation") {
    for (const Configuration& cc : {cycle_scheme(6), gen_cyclotomic(13, 3)}) {
        CHECK(cc.matrix.is_canonical());
        ColorMatrix copy = cc.matrix;
        CHECK(validate(copy).matrix == cc.matrix);
    }
}
