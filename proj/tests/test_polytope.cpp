#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nlbox/errors.hpp"
#include "nlbox/polytope.hpp"
#include "sampling.hpp"

using namespace nlbox;
using nlbox::testing::random_ns_box;

namespace {

Box reconstruct(const LocalDecomposition& d) {
    std::vector<Box> boxes;
    std::vector<Rat> weights;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int delta = 0; delta < 2; ++delta) {
                    boxes.push_back(local_vertex(alpha, beta, gamma, delta));
                    weights.push_back(d.weights[alpha | (beta << 1) | (gamma << 2) | (delta << 3)]);
                }
    return mix(boxes, weights);
}

}  // namespace

TEST_CASE("vertex set layout") {
    const auto& vs = VertexSet::instance();
    REQUIRE(vs.entries.size() == 24);
    for (int i = 0; i < 16; ++i) CHECK(vs.entries[i].local);
    for (int i = 16; i < 24; ++i) CHECK_FALSE(vs.entries[i].local);
    for (const auto& e : vs.entries) CHECK(is_nonsignalling(e.box).ok);
}

TEST_CASE("local decomposition basics") {
    auto d = local_decompose(local_vertex(0, 0, 0, 0));
    REQUIRE(d.has_value());
    CHECK(d->weights[0] == Rat(1));
    for (int i = 1; i < 16; ++i) CHECK(d->weights[i] == Rat(0));

    auto u = local_decompose(uniform_box());
    REQUIRE(u.has_value());
    CHECK(reconstruct(*u) == uniform_box());

    CHECK_FALSE(local_decompose(pr_box()).has_value());
}

TEST_CASE("decomposition weights are a distribution and reconstruct exactly") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Box b = random_ns_box(rng);
        auto d = local_decompose(b);
        if (!d) continue;
        Rat sum(0);
        for (const Rat& w : d->weights) {
            CHECK(w >= 0);
            sum += w;
        }
        CHECK(sum == 1);
        CHECK(reconstruct(*d) == b);
    }
}

TEST_CASE("is_local agrees with the LP on random non-signalling boxes") {
    std::mt19937_64 rng(32);
    int locals = 0, nonlocals = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Box b = random_ns_box(rng);
        bool lp = local_decompose(b).has_value();
        bool criterion = is_local(b);
        CHECK(lp == criterion);
        (lp ? locals : nonlocals)++;
    }
    CHECK(locals > 0);
    CHECK(nonlocals > 0);
}

TEST_CASE("is_local on the named families") {
    CHECK(is_local(isotropic_box(Rat(3, 4))));
    CHECK_FALSE(is_local(isotropic_box(Rat(13, 16))));
    CHECK(is_local(isotropic_box(Rat(1, 4))));  // anti-PR side of the family
    CHECK(is_local(correlated_box(Rat(0))));
    CHECK_FALSE(is_local(correlated_box(Rat(1, 100))));
    CHECK(is_local(mix({local_vertex(0, 0, 0, 0), local_vertex(1, 0, 1, 0)}, {Rat(1, 3), Rat(2, 3)})));
}

TEST_CASE("locality queries reject signalling boxes") {
    std::array<Rat, 16> t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[Box::index(y, 0, x, y)] = Rat(1);
    Box sig{t};
    CHECK_THROWS_AS(is_local(sig), SignallingInput);
    CHECK_THROWS_AS(local_decompose(sig), SignallingInput);
    CHECK_THROWS_AS(depolarize(sig), SignallingInput);
}

TEST_CASE("arcsin criterion") {
    auto pr = quantum_arcsin_test(pr_box());
    CHECK_FALSE(pr.pass);
    double max_sum = 0;
    for (double s : pr.arcsin_sums) max_sum = std::max(max_sum, std::abs(s));
    CHECK(max_sum == doctest::Approx(2 * std::numbers::pi));

    auto flat = quantum_arcsin_test(uniform_box());
    CHECK(flat.pass);
    for (double s : flat.arcsin_sums) CHECK(s == doctest::Approx(0.0));

    // Tsirelson point: all correlators at sqrt(2)/2, canonical sum exactly pi.
    const double r = std::numbers::sqrt2 / 2;
    auto boundary = quantum_arcsin_test(std::array<double, 4>{r, r, r, -r});
    CHECK(boundary.pass);
    CHECK(std::abs(std::abs(boundary.arcsin_sums[3]) - std::numbers::pi) <= 1e-9);
}

TEST_CASE("tsirelson necessary condition") {
    CHECK_FALSE(tsirelson_test(pr_box()));
    CHECK(tsirelson_test(local_vertex(1, 0, 1, 1)));
    // Exact squared comparison right at the bound.
    CHECK_FALSE(tsirelson_test(isotropic_box(Rat(854, 1000))));  // chsh = 2.832
    CHECK(tsirelson_test(isotropic_box(Rat(853, 1000))));        // chsh = 2.824
}

TEST_CASE("arcsin pass implies tsirelson on sampled boxes") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        Box b = random_ns_box(rng);
        if (quantum_arcsin_test(b).pass) CHECK(tsirelson_test(b));
    }
}

TEST_CASE("classify") {
    CHECK(classify(pr_box()) == BoxClass::SuperQuantumNS);
    CHECK(classify(local_vertex(0, 0, 1, 1)) == BoxClass::Local);
    std::array<Rat, 16> t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[Box::index(y, 0, x, y)] = Rat(1);
    CHECK(classify(Box{t}) == BoxClass::Signalling);
    CHECK(to_string(classify(uniform_box())) == "Local");
}

TEST_CASE("polytope dimensions") {
    CHECK(ns_dimension() == 8);
    CHECK(local_polytope_affine_dimension() == 8);
}

TEST_CASE("no vertex is a convex combination of the other 23") {
    const auto& vs = VertexSet::instance().entries;
    for (size_t leave_out = 0; leave_out < vs.size(); ++leave_out) {
        RatMatrix a(17, std::vector<Rat>(23));
        std::vector<Rat> rhs(17);
        int col = 0;
        for (size_t j = 0; j < vs.size(); ++j) {
            if (j == leave_out) continue;
            for (int cell = 0; cell < 16; ++cell) a[cell][col] = vs[j].box.t[cell];
            a[16][col] = Rat(1);
            ++col;
        }
        for (int cell = 0; cell < 16; ++cell) rhs[cell] = vs[leave_out].box.t[cell];
        rhs[16] = Rat(1);
        CHECK_FALSE(lp_feasible_point(a, rhs).has_value());
    }
}

TEST_CASE("depolarize fixed points and projection") {
    CHECK(depolarize(pr_box()) == pr_box());
    CHECK(depolarize(uniform_box()) == uniform_box());
    CHECK(depolarize(local_vertex(0, 0, 0, 0)) == isotropic_box(Rat(3, 4)));
}

TEST_CASE("depolarize lands on the isotropic family and preserves S") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        Box b = random_ns_box(rng);
        Box d = depolarize(b);
        Rat eps = isotropic_parameter(d);  // throws if not isotropic
        CHECK(eps >= 0);
        CHECK(chsh_combinations(b)[3] == chsh_combinations(d)[3]);
        CHECK(depolarize(d) == d);  // idempotent
    }
}

TEST_CASE("depolarize can lower chsh without the canonical pre-pass") {
    // P^{010} maximizes at a non-canonical sign placement: raw depolarization
    // collapses it to the uniform box, the canonical pre-pass keeps CHSH 4.
    Box tilted = nonlocal_vertex(0, 1, 0);
    CHECK(chsh(tilted) == Rat(4));
    CHECK(chsh_combinations(tilted)[3] == Rat(0));
    CHECK(depolarize(tilted) == uniform_box());
    Box canonical = canonicalize(tilted);
    CHECK(chsh(canonical) == Rat(4));
    CHECK(depolarize(canonical) == pr_box());
}

TEST_CASE("canonicalize composes with depolarize to preserve chsh") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        Box b = random_ns_box(rng);
        CHECK(chsh(depolarize(canonicalize(b))) == chsh(b));
    }
}

TEST_CASE("isotropic parameter recognizes the family") {
    CHECK(isotropic_parameter(isotropic_box(Rat(2, 7))) == Rat(2, 7));
    CHECK_THROWS_AS(isotropic_parameter(correlated_box(Rat(1, 3))), BadParam);
}
