#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "nlbox/box.hpp"

using namespace nlbox;

namespace {

// Arbitrary valid box: random nonnegative rationals, columns normalized.
Box random_box(std::mt19937_64& rng) {
    std::array<Rat, 16> t;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Rat sum(0);
            int raw[4];
            for (int i = 0; i < 4; ++i) {
                raw[i] = 1 + int(rng() % 9);
                sum += raw[i];
            }
            int i = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) t[Box::index(a, b, x, y)] = Rat(raw[i++]) / sum;
        }
    return make_box(t);
}

}  // namespace

TEST_CASE("make_box accepts the uniform and PR tables") {
    CHECK(uniform_box().p(0, 0, 0, 0) == Rat(1, 4));
    Box pr = pr_box();
    CHECK(pr.p(0, 0, 0, 0) == Rat(1, 2));
    CHECK(pr.p(0, 1, 0, 0) == Rat(0));
    CHECK(pr.p(0, 1, 1, 1) == Rat(1, 2));
    CHECK(make_box(pr.t) == pr);
}

TEST_CASE("make_box rejects bad tables") {
    std::array<Rat, 16> t;
    t.fill(Rat(1, 4));
    t[0] = Rat(3, 16);  // column (0,0) now sums to 15/16
    CHECK_THROWS_AS(make_box(t), NotNormalized);
    t[0] = Rat(-1, 4);
    CHECK_THROWS_AS(make_box(t), NegativeProbability);
    t.fill(Rat(1, 4));
    t[Box::index(0, 0, 1, 0)] = Rat(1, 2);
    t[Box::index(1, 0, 1, 0)] = Rat(1, 4);
    t[Box::index(0, 1, 1, 0)] = Rat(1, 8);
    t[Box::index(1, 1, 1, 0)] = Rat(1, 8);
    CHECK_NOTHROW(make_box(t));
    t[Box::index(1, 1, 1, 0)] = Rat(0);  // column (1,0) now sums to 7/8
    CHECK_THROWS_WITH_AS(make_box(t), doctest::Contains("(1,0)"), NotNormalized);
}

TEST_CASE("non-signalling check and witnesses") {
    CHECK(is_nonsignalling(pr_box()).ok);
    CHECK(is_nonsignalling(uniform_box()).ok);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                for (int d = 0; d < 2; ++d) CHECK(is_nonsignalling(local_vertex(a, b, g, d)).ok);

    // a copies y: signalling by construction.
    std::array<Rat, 16> t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[Box::index(y, 0, x, y)] = Rat(1);
    auto report = is_nonsignalling(make_box(t));
    CHECK_FALSE(report.ok);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->party == 'A');
}

TEST_CASE("correlators") {
    CHECK(correlator(pr_box(), 1, 1) == Rat(-1));
    CHECK(correlator(pr_box(), 0, 0) == Rat(1));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(correlator(uniform_box(), x, y) == Rat(0));
}

TEST_CASE("chsh ground values") {
    CHECK(chsh(pr_box()) == Rat(4));
    CHECK(chsh(anti_pr_box()) == Rat(4));
    CHECK(chsh(local_vertex(0, 0, 0, 0)) == Rat(2));
    for (Rat eps : {Rat(1, 4), Rat(1, 2)}) CHECK(chsh(correlated_box(eps)) == 2 * (eps + 1));
    CHECK(chsh(isotropic_box(Rat(1, 2))) == Rat(0));
}

TEST_CASE("mix") {
    CHECK(mix({pr_box()}, {Rat(1)}) == pr_box());
    CHECK(mix({pr_box(), anti_pr_box()}, {Rat(1, 2), Rat(1, 2)}) == uniform_box());
    Rat eps(1, 4);
    Box m = mix({pr_box(), fully_correlated_box()}, {eps, 1 - eps});
    CHECK(m == correlated_box(eps));
    CHECK(chsh(m) == Rat(5, 2));
    CHECK_THROWS_AS(mix({pr_box()}, {Rat(1, 2)}), BadWeights);
    CHECK_THROWS_AS(mix({pr_box()}, {Rat(1), Rat(0)}), BadWeights);
    CHECK_THROWS_AS(mix({pr_box(), pr_box()}, {Rat(3, 2), Rat(-1, 2)}), BadWeights);
}

TEST_CASE("named boxes") {
    CHECK(nonlocal_vertex(0, 0, 0) == pr_box());
    CHECK(isotropic_box(Rat(1, 2)) == uniform_box());
    CHECK(named_box("pr") == pr_box());
    CHECK(named_box("iso:3/4") == isotropic_box(Rat(3, 4)));
    CHECK(named_box("corr:1/4") == correlated_box(Rat(1, 4)));
    CHECK(named_box("vertex:0110") == local_vertex(0, 1, 1, 0));
    CHECK(named_box("vertex:101") == nonlocal_vertex(1, 0, 1));
    CHECK_THROWS_AS(named_box("nope"), BadParam);
    CHECK_THROWS_AS(isotropic_box(Rat(5, 4)), BadParam);

    // All 16 deterministic vertices are pairwise distinct.
    std::set<std::array<Rat, 16>> seen;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                for (int d = 0; d < 2; ++d) seen.insert(local_vertex(a, b, g, d).t);
    CHECK(seen.size() == 16);
}

TEST_CASE("relabel group structure") {
    CHECK(relabel_group().size() == 64);
    // Distinct as table transformations on a generic box.
    std::mt19937_64 rng(7);
    Box probe = random_box(rng);
    std::set<std::array<Rat, 16>> images;
    for (const Relabel& r : relabel_group()) images.insert(relabel(probe, r).t);
    CHECK(images.size() == 64);

    // Closure and inverses as actions.
    std::mt19937_64 rng2(8);
    Box probe2 = random_box(rng2);
    for (int trial = 0; trial < 20; ++trial) {
        const Relabel& r1 = relabel_group()[rng2() % 64];
        const Relabel& r2 = relabel_group()[rng2() % 64];
        CHECK(relabel(relabel(probe2, r1), r2) == relabel(probe2, compose(r2, r1)));
        CHECK(relabel(relabel(probe2, r1), inverse(r1)) == probe2);
    }
}

TEST_CASE("relabel preserves validity, non-signalling and chsh") {
    CHECK(relabel(pr_box(), identity_relabel()) == pr_box());
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        Box b = random_box(rng);
        Rat base = chsh(b);
        bool ns = is_nonsignalling(b).ok;
        for (const Relabel& r : relabel_group()) {
            Box rb = relabel(b, r);
            CHECK_NOTHROW(make_box(rb.t));
            CHECK(chsh(rb) == base);
            if (ns) CHECK(is_nonsignalling(rb).ok);
        }
    }
}

TEST_CASE("equivalence classes of vertices") {
    // Some relabelling maps P^{000} to P^{101}.
    auto r = equivalent(nonlocal_vertex(0, 0, 0), nonlocal_vertex(1, 0, 1));
    REQUIRE(r.has_value());
    CHECK(relabel(nonlocal_vertex(0, 0, 0), *r) == nonlocal_vertex(1, 0, 1));

    CHECK(equivalent(local_vertex(0, 0, 0, 0), local_vertex(1, 1, 0, 1)).has_value());
    CHECK_FALSE(equivalent(pr_box(), local_vertex(0, 0, 0, 0)).has_value());
}

TEST_CASE("party swap is a separate transform") {
    std::array<Rat, 16> t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[Box::index(x & y, 0, x, y)] = Rat(1);  // signalling asymmetric probe
    Box b{t};
    Box s = swap_parties(b);
    CHECK(s.p(0, 1, 0, 1) == b.p(1, 0, 1, 0));
    CHECK(swap_parties(s) == b);
    CHECK(swap_parties(pr_box()) == pr_box());
}

TEST_CASE("correlator bounds and parity support") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Box b = random_box(rng);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                Rat c = correlator(b, x, y);
                CHECK(abs(c) <= 1);
                bool constant_parity = (b.p(0, 1, x, y) + b.p(1, 0, x, y) == 0) ||
                                       (b.p(0, 0, x, y) + b.p(1, 1, x, y) == 0);
                CHECK((abs(c) == 1) == constant_parity);
            }
    }
}

TEST_CASE("chsh is within [0,4] and mix is affine-bounded") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Box b1 = random_box(rng);
        Box b2 = random_box(rng);
        Rat lam(int(rng() % 5), 4);
        Box m = mix({b1, b2}, {lam, 1 - lam});
        CHECK(chsh(b1) >= 0);
        CHECK(chsh(b1) <= 4);
        CHECK(chsh(m) <= lam * chsh(b1) + (1 - lam) * chsh(b2));
    }
}

TEST_CASE("box file round trip") {
    std::ostringstream os;
    write_box(os, correlated_box(Rat(1, 4)));
    std::istringstream is("# a comment\n" + os.str());
    CHECK(read_box(is) == correlated_box(Rat(1, 4)));

    std::istringstream missing("0 0 0 0 1/1\n");
    CHECK_THROWS_AS(read_box(missing), ParseError);
    std::istringstream dup(os.str() + "0 0 0 0 1/2\n");
    CHECK_THROWS_AS(read_box(dup), ParseError);
}

TEST_CASE("rational helpers") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-6/8") == Rat(-3, 4));
    CHECK(parse_rat("5") == Rat(5));
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("x"), ParseError);
    CHECK(rat_str(Rat(4)) == "4/1");
    CHECK(rat_str(Rat(-3, 9)) == "-1/3");
    CHECK(rat_pow(Rat(1, 2), 5) == Rat(1, 32));
    CHECK(rat_pow(Rat(7, 3), 0) == Rat(1));
}
