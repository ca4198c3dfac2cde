#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nlbox/errors.hpp"
#include "nlbox/games.hpp"

using namespace nlbox;

namespace {

XorGame always_win_game() {
    XorGame g;
    g.nx = g.ny = 2;
    g.prior.assign(4, Rat(1, 4));
    g.predicate.assign(8, 1);  // V identically 1
    return g;
}

XorGame win_iff_c0_game() {
    XorGame g;
    g.nx = g.ny = 2;
    g.prior.assign(4, Rat(1, 4));
    g.predicate.assign(8, 0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) g.predicate[(0 * 2 + x) * 2 + y] = 1;
    return g;
}

}  // namespace

TEST_CASE("classical value of the chsh game") {
    CHECK(classical_value(chsh_game()) == Rat(3, 4));
    CHECK(classical_value(always_win_game()) == Rat(1));
}

TEST_CASE("trivial value") {
    CHECK(trivial_value(chsh_game()) == Rat(1, 2));
    CHECK(trivial_value(always_win_game()) == Rat(1));
    // Win iff the answers differ: exactly one c wins everywhere.
    XorGame differ;
    differ.nx = differ.ny = 2;
    differ.prior.assign(4, Rat(1, 4));
    differ.predicate.assign(8, 0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) differ.predicate[(1 * 2 + x) * 2 + y] = 1;
    CHECK(trivial_value(differ) == Rat(1, 2));
}

TEST_CASE("quantum value of the chsh game hits the tsirelson point") {
    double wq = xor_quantum_value(chsh_game());
    CHECK(std::abs(wq - (2 + std::numbers::sqrt2) / 4) <= 1e-6);
    CHECK(xor_quantum_value(always_win_game()) == doctest::Approx(1.0));
    // Winnable by answering c = 0 deterministically: both values are one.
    CHECK(xor_quantum_value(win_iff_c0_game()) == doctest::Approx(1.0));
    CHECK(classical_value(win_iff_c0_game()) == Rat(1));
}

TEST_CASE("grothendieck ratio") {
    CHECK(std::abs(grothendieck_ratio(chsh_game()) - std::numbers::sqrt2) <= 1e-5);
    CHECK_THROWS_AS(grothendieck_ratio(always_win_game()), DegenerateGame);
}

TEST_CASE("thm8 piecewise bound on named games") {
    CHECK(thm8_check(chsh_game()));
    CHECK(thm8_check(always_win_game()));
    // CHSH sits essentially on the bound: sin^2(3 pi/8) vs (2+sqrt2)/4.
    double bound = std::pow(std::sin(std::numbers::pi / 2 * 0.75), 2);
    CHECK(std::abs(bound - (2 + std::numbers::sqrt2) / 4) <= 1e-12);
}

TEST_CASE("random xor games satisfy the published bounds") {
    std::mt19937_64 rng(101);
    int evaluated = 0;
    for (int trial = 0; trial < 200; ++trial) {
        XorGame g = sample_xor_game(rng);
        Rat wc = classical_value(g);
        Rat tau = trivial_value(g);
        double wq = xor_quantum_value(g, 60, 1e-10, rng());
        CHECK(wq + 1e-6 >= rat_double(wc));  // solver at least reaches the classical point
        CHECK(wc >= tau);
        if (wc > tau) {
            double ratio = (wq - rat_double(tau)) / rat_double(wc - tau);
            CHECK(ratio <= 1.7823);
            ++evaluated;
        }
        double bound = rat_double(wc) <= GameBounds::gamma2
                           ? GameBounds::gamma1 * rat_double(wc)
                           : std::pow(std::sin(std::numbers::pi / 2 * rat_double(wc)), 2);
        CHECK(wq <= bound + 1e-6);
    }
    CHECK(evaluated > 100);  // the sampler produces mostly non-degenerate games
}

TEST_CASE("bound constants") {
    CHECK(GameBounds::kg_low == doctest::Approx(1.6769));
    CHECK(GameBounds::kg_high() == doctest::Approx(1.7822).epsilon(1e-4));
    CHECK(GameBounds::kg_low < GameBounds::kg_high());
    // gamma1 and gamma2 solve (pi/2) sin(pi g2) = sin^2(pi/2 g2)/g2 = g1.
    double g1 = GameBounds::gamma1, g2 = GameBounds::gamma2;
    CHECK(std::numbers::pi / 2 * std::sin(std::numbers::pi * g2) == doctest::Approx(g1).epsilon(1e-3));
    CHECK(std::pow(std::sin(std::numbers::pi / 2 * g2), 2) / g2 == doctest::Approx(g1).epsilon(1e-3));
}

TEST_CASE("nlc games") {
    XorGame id1 = nlc_game({0, 1});
    CHECK(id1.nx == 2);
    CHECK(id1.ny == 2);
    CHECK(classical_value(id1) == Rat(1));

    XorGame and2 = nlc_game({0, 0, 0, 1});
    Rat wc = classical_value(and2);
    CHECK(wc == Rat(3, 4));  // golden value from exhaustive enumeration
    CHECK(wc < 1);
    double wq = xor_quantum_value(and2);
    CHECK(std::abs(wq - rat_double(wc)) <= 1e-5);

    XorGame const0 = nlc_game({0, 0, 0, 0});
    CHECK(classical_value(const0) == Rat(1));

    CHECK_THROWS_AS(nlc_game({0, 1, 0}), BadParam);
}

TEST_CASE("classical value is invariant under game relabelings") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 30; ++trial) {
        XorGame g = sample_xor_game(rng);
        Game base = to_game(g);
        Rat value = classical_value(base);

        Game permuted = base;
        // Swap two x inputs and two outputs of Alice.
        int x1 = int(rng() % base.nx), x2 = int(rng() % base.nx);
        for (int a = 0; a < base.na; ++a)
            for (int b = 0; b < base.nb; ++b)
                for (int y = 0; y < base.ny; ++y)
                    std::swap(permuted.predicate[((a * base.nb + b) * base.nx + x1) * base.ny + y],
                              permuted.predicate[((a * base.nb + b) * base.nx + x2) * base.ny + y]);
        for (int y = 0; y < base.ny; ++y)
            std::swap(permuted.prior[x1 * base.ny + y], permuted.prior[x2 * base.ny + y]);
        CHECK(classical_value(permuted) == value);

        Game flipped = base;  // relabel Alice's answers
        for (int b = 0; b < base.nb; ++b)
            for (int x = 0; x < base.nx; ++x)
                for (int y = 0; y < base.ny; ++y)
                    std::swap(flipped.predicate[((0 * base.nb + b) * base.nx + x) * base.ny + y],
                              flipped.predicate[((1 * base.nb + b) * base.nx + x) * base.ny + y]);
        CHECK(classical_value(flipped) == value);
    }
}

TEST_CASE("enumeration cap") {
    Game big;
    big.nx = big.ny = 8;
    big.na = big.nb = 8;
    big.prior.assign(64, Rat(1, 64));
    big.predicate.assign(size_t(64) * 64, 0);
    CHECK_THROWS_AS(classical_value(big), TooLarge);
}

TEST_CASE("xor game detection") {
    Game g = to_game(chsh_game());
    auto back = as_xor_game(g);
    REQUIRE(back.has_value());
    CHECK(back->predicate == chsh_game().predicate);

    Game not_xor = g;
    not_xor.predicate[((0 * 2 + 0) * 2 + 0) * 2 + 0] ^= 1;  // break the XOR structure
    CHECK_FALSE(as_xor_game(not_xor).has_value());
}

TEST_CASE("game file round trip") {
    Game g = to_game(chsh_game());
    std::ostringstream os;
    write_game(os, g);
    std::istringstream is(os.str());
    Game back = read_game(is);
    CHECK(back.prior == g.prior);
    CHECK(back.predicate == g.predicate);

    std::istringstream bad("2 2 2\n");
    CHECK_THROWS_AS(read_game(bad), ParseError);
    std::istringstream bad_prior("2 2 2 2\n0 0 1/2\n");
    CHECK_THROWS_AS(read_game(bad_prior), BadParam);  // prior does not sum to one
}
