// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line. Run with no arguments for the full list or with a criterion
// number for just that one. Exit status is the number of failures.

#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "nlbox/crypto.hpp"
#include "nlbox/distcomp.hpp"
#include "nlbox/games.hpp"
#include "nlbox/multigen.hpp"
#include "nlbox/polytope.hpp"
#include "nlbox/wiring.hpp"

using namespace nlbox;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

Box seeded_ns_box(std::mt19937_64& rng) {
    const auto& vs = VertexSet::instance().entries;
    std::vector<Box> boxes;
    std::vector<Rat> weights;
    Rat total(0);
    for (const auto& e : vs) {
        int w = int(rng() % 8);
        if (w == 0) continue;
        boxes.push_back(e.box);
        weights.push_back(Rat(w));
        total += w;
    }
    if (rng() & 1) {
        int anchor = int(rng() % vs.size());
        int w = 24 + int(rng() % 200);
        boxes.push_back(vs[anchor].box);
        weights.push_back(Rat(w));
        total += w;
    }
    if (boxes.empty()) return uniform_box();
    for (Rat& w : weights) w /= total;
    return mix(boxes, weights);
}

Outcome criterion1_chsh_ground_truths() {
    Outcome o;
    o.require(chsh(pr_box()) == Rat(4), "chsh(PR) != 4");
    o.require(chsh(anti_pr_box()) == Rat(4), "chsh(antiPR) != 4");
    for (Rat eps : {Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(3, 4)})
        o.require(chsh(correlated_box(eps)) == 2 * (eps + 1), "chsh(corr:" + rat_str(eps) + ") != 2(eps+1)");
    for (Rat eps : {Rat(0), Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(5, 8), Rat(3, 4), Rat(7, 8), Rat(1)})
        o.require(chsh(isotropic_box(eps)) == abs(8 * eps - 4), "chsh(iso:" + rat_str(eps) + ") != |8eps-4|");
    return o;
}

Outcome criterion2_polytope() {
    Outcome o;
    o.require(ns_dimension() == 8, "ns_dimension != 8");
    o.require(tri_dimension() == 26, "tri_dimension != 26");
    const auto& vs = VertexSet::instance().entries;
    o.require(vs.size() == 24, "vertex count != 24");
    for (const auto& e : vs) o.require(is_nonsignalling(e.box).ok, e.label + " signals");
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
        o.require(!lp_feasible_point(a, rhs).has_value(), vs[leave_out].label + " is a mixture of the rest");
    }
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = 0; j < vs.size(); ++j) {
            bool same_class = vs[i].local == vs[j].local;
            bool mapped = equivalent(vs[i].box, vs[j].box).has_value();
            o.require(mapped == same_class, vs[i].label + " vs " + vs[j].label + " equivalence mismatch");
        }
    return o;
}

Outcome criterion3_locality_agreement() {
    Outcome o;
    std::mt19937_64 rng(20250809);
    int disagreements = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Box b = seeded_ns_box(rng);
        if (local_decompose(b).has_value() != (chsh(b) <= 2)) ++disagreements;
    }
    std::ostringstream os;
    os << disagreements << " disagreements";
    o.require(disagreements == 0, os.str());
    return o;
}

Outcome criterion4_quantum_tests() {
    Outcome o;
    o.require(!quantum_arcsin_test(pr_box()).pass, "arcsin accepted PR");
    const double r = std::numbers::sqrt2 / 2;
    auto boundary = quantum_arcsin_test(std::array<double, 4>{r, r, r, -r});
    o.require(boundary.pass, "arcsin rejected the tsirelson point");
    o.require(std::abs(std::abs(boundary.arcsin_sums[3]) - std::numbers::pi) <= 1e-9,
              "tsirelson-point sum not within 1e-9 of pi");
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 500; ++trial) {
        Box b = seeded_ns_box(rng);
        if (quantum_arcsin_test(b).pass) {
            Rat value = chsh(b);
            o.require(value * value <= 8, "arcsin pass but chsh^2 > 8");
        }
    }
    return o;
}

Outcome criterion5_distillation() {
    Outcome o;
    for (int n = 1; n <= 5; ++n)
        for (Rat eps : {Rat(1, 8), Rat(1, 4), Rat(1, 2)}) {
            Rat composed = chsh(compose(fww(n), std::vector<Box>(size_t(n), correlated_box(eps))));
            o.require(composed == 3 - rat_pow(1 - 2 * eps, unsigned(n)),
                      "fww mismatch at n=" + std::to_string(n) + " eps=" + rat_str(eps));
        }
    for (Rat eps : {Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
        Box out = compose(bs2(), {correlated_box(eps), correlated_box(eps)});
        o.require(chsh(out) == 3 * eps - eps * eps + 2, "bs mismatch at eps=" + rat_str(eps));
        Rat eps_next = 2 * out.p(0, 1, 1, 1);
        o.require(out == correlated_box(eps_next), "bs closure failed at eps=" + rat_str(eps));
    }
    auto trajectory = iterate_bs(Rat(1, 10), 8);
    bool crossed = false;
    for (const Rat& v : trajectory) crossed = crossed || v * v > Rat(32, 3);
    o.require(crossed, "iterated bs from 1/10 never crossed B_cc");
    return o;
}

Outcome criterion6_wiring_search() {
    Outcome o;
    for (Rat eps : {Rat(5, 8), Rat(3, 4), Rat(7, 8)}) {
        Box box = isotropic_box(eps);
        auto result = max_chsh_over_wirings(box);
        if (result.value != chsh(box)) {
            o.require(false, "search max " + rat_str(result.value) + " != chsh " + rat_str(chsh(box)) +
                                 " at eps=" + rat_str(eps));
        }
    }
    auto corr = max_chsh_over_wirings(correlated_box(Rat(1, 4)));
    o.require(corr.value > Rat(5, 2), "no wiring beat 5/2 on corr:1/4");
    return o;
}

Outcome criterion7_games() {
    Outcome o;
    XorGame chshg = chsh_game();
    o.require(classical_value(chshg) == Rat(3, 4), "omega_c(CHSH) != 3/4");
    double wq = xor_quantum_value(chshg);
    o.require(std::abs(wq - (2 + std::numbers::sqrt2) / 4) <= 1e-6, "omega_q(CHSH) off the tsirelson value");
    o.require(std::abs(grothendieck_ratio(chshg) - std::numbers::sqrt2) <= 1e-5, "CHSH ratio != sqrt2");

    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        XorGame g = sample_xor_game(rng);
        Rat wc = classical_value(g);
        Rat tau = trivial_value(g);
        double q = xor_quantum_value(g, 200, 1e-10, rng());
        if (wc > tau) {
            double ratio = (q - rat_double(tau)) / rat_double(wc - tau);
            if (ratio > 1.7823) {
                o.require(false, "ratio " + std::to_string(ratio) + " beyond K_G upper bound");
            }
        }
        double wc_d = rat_double(wc);
        double bound = wc_d <= GameBounds::gamma2 ? GameBounds::gamma1 * wc_d
                                                  : std::pow(std::sin(std::numbers::pi / 2 * wc_d), 2);
        if (q > bound + 1e-6) o.require(false, "thm8 bound violated on a sampled game");
    }

    XorGame and_game = nlc_game({0, 0, 0, 1});
    Rat wc_and = classical_value(and_game);
    double wq_and = xor_quantum_value(and_game);
    o.require(wc_and < 1, "omega_c(NLC-AND) not below 1");
    o.require(std::abs(rat_double(wc_and) - wq_and) <= 1e-5, "NLC-AND classical and quantum values differ");
    return o;
}

Outcome criterion8_distributed_computation() {
    Outcome o;
    for (uint32_t bits = 0; bits < 65536; ++bits) {
        BoolFn f = BoolFn::bipartite(2, bits);
        if (!van_dam_check_all(f)) {
            o.require(false, "van dam failed on (2,2) function " + std::to_string(bits));
            return o;
        }
    }
    std::mt19937_64 rng(888);
    for (int trial = 0; trial < 200; ++trial) {
        BoolFn f = BoolFn::bipartite(3, rng());
        if (!van_dam_check_all(f)) {
            o.require(false, "van dam failed on a (3,3) function");
            return o;
        }
    }
    return o;
}

Outcome criterion9_parity_correlation() {
    Outcome o;
    BoolFn product = BoolFn::nparty(3, 0b10000000);  // x1 x2 x3
    o.require(bp_simulate(product).table == bp_target(product).table, "bp table mismatch for x1x2x3");
    BoolFn mixed = BoolFn::nparty(3, 0);  // x1 (+) x2 x3
    for (uint32_t x = 0; x < 8; ++x) mixed.table[x] = (x & 1) ^ (((x >> 1) & 1) & ((x >> 2) & 1));
    o.require(bp_simulate(mixed).table == bp_target(mixed).table, "bp table mismatch for x1+x2x3");
    return o;
}

Outcome criterion10_crypto() {
    Outcome o;
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int c = 0; c < 2; ++c) {
                Rat good(0);
                for (const OTRun& r : ot_run(x0, x1, c))
                    if (r.receiver_output == (c ? x1 : x0)) good += r.weight;
                o.require(good == 1, "ot output wrong on some branch");
            }
    auto privacy = ot_privacy_report();
    o.require(privacy.sender_leak == 0, "sender leak nonzero");
    o.require(privacy.receiver_leak == 0, "receiver leak nonzero");
    o.require(ot_reduction_attack().cheating_success == 1, "reduction attack below 1");
    for (int n = 1; n <= 2; ++n)
        for (int c = 0; c < 2; ++c)
            o.require(bc_honest_accept_probability(n, c) == 1, "honest bc run can be rejected");
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k)
            o.require(bc_hiding_advantage(n, k) <= bc_hiding_bound(n, k),
                      "hiding advantage beyond the bound at n=" + std::to_string(n) + " k=" + std::to_string(k));
    for (int n = 1; n <= 2; ++n) {
        Rat b1 = bc_binding_advantage(n, 1);
        Rat b2 = bc_binding_advantage(n, 2);
        o.require(b2 <= b1, "binding advantage not monotone in k");
        std::cerr << "  binding(n=" << n << "): k=1 -> " << rat_str(b1) << ", k=2 -> " << rat_str(b2)
                  << " (curve " << rat_str(bc_binding_curve(1)) << ", " << rat_str(bc_binding_curve(2)) << ")\n";
    }
    return o;
}

Outcome criterion11_generalized() {
    Outcome o;
    GenBox two = d_output_vertex(2);
    bool pr_match = true;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) pr_match = pr_match && two.p(a, b, x, y) == pr_box().p(a, b, x, y);
    o.require(pr_match, "2-output vertex is not the PR box");
    GenBox six = compose_coprime(d_output_vertex(2), d_output_vertex(3));
    o.require(six == d_output_vertex(6), "coprime composition missed the 6-output vertex");
    o.require(project_mod(six, 2) == d_output_vertex(2), "projection mod 2 round trip failed");
    o.require(project_mod(six, 3) == d_output_vertex(3), "projection mod 3 round trip failed");

    o.require(tri_nonsignalling(tri_xor_vertex()).strong, "xor tribox signals");
    o.require(!tri_two_way_local(tri_xor_vertex()).has_value(), "xor tribox is two-way local");
    o.require(tri_two_way_local(tri_pr_deterministic()).has_value(), "PR x deterministic not two-way local");
    o.require(!tri_fully_local(tri_pr_deterministic()).has_value(), "PR x deterministic is fully local");
    return o;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {"chsh ground truths", criterion1_chsh_ground_truths},
        {"polytope dimensions, vertices and equivalence classes", criterion2_polytope},
        {"locality agreement on 1000 random boxes", criterion3_locality_agreement},
        {"quantum arcsin and tsirelson tests", criterion4_quantum_tests},
        {"distillation formulas and B_cc crossing", criterion5_distillation},
        {"exhaustive two-box wiring search", criterion6_wiring_search},
        {"game values and bounds", criterion7_games},
        {"distributed computation, one box per term", criterion8_distributed_computation},
        {"n-party parity-correlation simulation", criterion9_parity_correlation},
        {"oblivious transfer and bit commitment", criterion10_crypto},
        {"generalized and tripartite boxes", criterion11_generalized},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        int number = int(i) + 1;
        if (only != 0 && only != number) continue;
        Outcome outcome = criteria[i].run();
        if (outcome.pass) {
            std::cout << "PASS criterion " << number << ": " << criteria[i].name << "\n";
        } else {
            std::cout << "FAIL criterion " << number << ": " << criteria[i].name << " [" << outcome.detail << "]\n";
            ++failures;
        }
    }
    return failures;
}
