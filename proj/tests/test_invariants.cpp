#include <catch2/catch_amalgamated.hpp>

#include "ccfg/actions.hpp"
#include "ccfg/constructions.hpp"
#include "ccfg/generators.hpp"
#include "ccfg/invariants.hpp"

using namespace ccfg;

TEST_CASE("indistinguishing numbers of the 4-cycle") {
    Configuration cc = cycle_scheme(4);
    CHECK(indistinguishing_number(cc, 1) == 0);  // adjacent
    CHECK(indistinguishing_number(cc, 2) == 2);  // antipodal
    CHECK_THROWS_AS(indistinguishing_number(cc, 0), reflexive_relation);
}

TEST_CASE("trivial scheme has c(r) = n - 2") {
    for (int n : {3, 5, 8}) CHECK(indistinguishing_number(trivial_scheme(n), 1) == n - 2);
}

TEST_CASE("thin schemes have c(r) = 0 everywhere") {
    Configuration cc = regular_cyclic_scheme(7);
    for (int r = 1; r < cc.rank(); ++r) CHECK(indistinguishing_number(cc, r) == 0);
}

TEST_CASE("profile of the 4-cycle") {
    SchemeProfile p = profile(cycle_scheme(4));
    CHECK(p.n == 4);
    CHECK(p.rank == 3);
    CHECK(p.k == 2);
    CHECK(p.m == 2);
    CHECK(p.c == 2);
    CHECK(p.two_valenced);
    CHECK(p.pseudo_ti);
    CHECK(p.index_num == 2);
    CHECK(p.index_den == 1);
}

TEST_CASE("cyclotomic schemes are pseudocyclic: m = 1 and c = k - 1") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{13, 3}, {13, 4}, {17, 2}, {29, 2}}) {
        SchemeProfile pr = profile(gen_cyclotomic(p, k));
        CHECK(pr.m == 1);
        CHECK(pr.k == k);
        CHECK(pr.c == k - 1);
        CHECK(pr.two_valenced);
        CHECK(pr.pseudo_ti);
        // every non-reflexive relation carries the same c(r)
        for (int r = 0; r < pr.rank; ++r)
            if (pr.c_per_relation[r] >= 0) CHECK(pr.c_per_relation[r] == k - 1);
    }
}

TEST_CASE("semidirect product scheme on 9 points: elementary coset, c = n - m") {
    Configuration cc = orbitals(gen_cyclic_semidirect(9, 3, 4));
    SchemeProfile p = profile(cc);
    CHECK(p.n == 9);
    CHECK(p.m == 3);
    CHECK(p.k == 3);
    CHECK(p.c == 6);
    CHECK(p.c == p.n - p.m);
    CHECK(p.pseudo_ti);  // c = 6 <= mk = 9
    auto ec = elementary_coset_check(cc);
    REQUIRE(ec.has_value());
    CHECK_FALSE(ec->vacuous);
    CHECK(ec->T.size() == 3);
    for (int t : ec->T) CHECK(cc.valency[t] == 1);
}

TEST_CASE("elementary coset scheme above m(k+1) is not pseudo-TI") {
    Configuration cc = doubled_cyclic_scheme(7);
    SchemeProfile p = profile(cc);
    CHECK(p.two_valenced);
    CHECK(p.n == 14);
    CHECK(p.m == 2);
    CHECK(p.k == 2);
    CHECK(p.n > p.m * (p.k + 1));
    CHECK_FALSE(p.pseudo_ti);
    auto ec = elementary_coset_check(cc);
    REQUIRE(ec.has_value());
    CHECK(ec->T.size() == 2);
    CHECK(p.c == p.n - p.m);
}

TEST_CASE("doubled cyclic scheme at the pseudo-TI boundary") {
    SchemeProfile p3 = profile(doubled_cyclic_scheme(3));  // n = m(k+1)
    CHECK(p3.pseudo_ti);
    SchemeProfile p4 = profile(doubled_cyclic_scheme(4));
    CHECK_FALSE(p4.pseudo_ti);
}

TEST_CASE("elementary coset check is vacuous on thin schemes") {
    auto ec = elementary_coset_check(regular_cyclic_scheme(6));
    REQUIRE(ec.has_value());
    CHECK(ec->vacuous);
    CHECK(ec->T.empty());
}

TEST_CASE("trivial scheme is not an elementary coset scheme for n >= 4") {
    CHECK_FALSE(elementary_coset_check(trivial_scheme(5)).has_value());
}

TEST_CASE("orthogonals of quasi-thin schemes") {
    CHECK(orthogonals(cycle_scheme(4)) == std::vector<int>{2});
    CHECK(orthogonals(regular_cyclic_scheme(5)).empty());
    Configuration qt = tensor_product(regular_cyclic_scheme(5), trivial_scheme(3));
    std::vector<int> ortho = orthogonals(qt);
    for (int r = 0; r < qt.rank(); ++r) {
        bool expect = !qt.is_reflexive[r] && indistinguishing_number(qt, r) != 0;
        CHECK(std::binary_search(ortho.begin(), ortho.end(), r) == expect);
    }
    CHECK_THROWS_AS(orthogonals(gen_cyclotomic(13, 3)), not_quasi_thin);
}

TEST_CASE("profile text rendering is stable") {
    std::string txt = to_text(profile(cycle_scheme(4)));
    CHECK(txt.find("n=4\n") != std::string::npos);
    CHECK(txt.find("k=2\n") != std::string::npos);
    CHECK(txt.find("pseudo_ti=true\n") != std::string::npos);
}

TEST_CASE("c never exceeds n and vanishes only with it") {
    for (const Configuration& cc :
         {trivial_scheme(6), cycle_scheme(7), gen_cyclotomic(17, 4),
          orbitals(gen_cyclic_semidirect(9, 3, 4))}) {
        SchemeProfile p = profile(cc);
        CHECK(p.c >= 0);
        CHECK(p.c <= p.n);
    }
}

TEST_CASE("two-valenced degree decomposition n = m + (rank - m) k") {
    for (const Configuration& cc :
         {gen_cyclotomic(17, 2), orbitals(gen_cyclic_semidirect(9, 3, 4)),
          orbitals(gen_cyclic_semidirect(21, 3, 4))}) {
        SchemeProfile p = profile(cc);
        REQUIRE(p.two_valenced);
        CHECK(p.n == p.m + (p.rank - p.m) * p.k);
    }
}

TEST_CASE("profile rejects inhomogeneous configurations") {
    Configuration xa = point_extension(cycle_scheme(4), {0});
    CHECK_THROWS_AS(profile(xa), not_homogeneous);
    CHECK_THROWS_AS(elementary_coset_check(xa), not_homogeneous);
}
