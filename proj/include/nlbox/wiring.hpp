#pragma once

#include <cstdint>
#include <vector>

#include "nlbox/box.hpp"

namespace nlbox {

/**
 * One party's adaptive strategy over n boxes. Step i queries box order[i]
 * with input_fns[i](external bit, outcomes of steps 0..i-1); the final output
 * is output_fn(external bit, all n step outcomes). Truth tables are indexed
 * by (x | o_0 << 1 | o_1 << 2 | ...), outcomes in step order.
 */
struct LocalStrategy {
    int n = 1;
    std::vector<int> order;                       // order[i] = box queried at step i
    std::vector<std::vector<uint8_t>> input_fns;  // input_fns[i] has 2^(i+1) entries
    std::vector<uint8_t> output_fn;               // 2^(n+1) entries

    bool well_formed() const;
};

/// A pair of local strategies, optionally mixed: when components is nonempty
/// the wiring is the convex combination of its deterministic strategy pairs
/// and the top-level alice/bob are ignored.
struct Wiring {
    LocalStrategy alice;
    LocalStrategy bob;

    struct Component {
        Rat weight;
        LocalStrategy alice;
        LocalStrategy bob;
    };
    std::vector<Component> components;  // shared randomness; weights sum to 1
};

/// Exact derived box: sum over all 4^n joint outcome branches of the product
/// of per-box conditional probabilities, inputs resolved step by step. Boxes
/// must be valid and non-signalling (locality of the operations then cannot
/// create signalling). Throws SizeMismatch / SignallingInput.
Box compose(const Wiring& wiring, const std::vector<Box>& boxes);

/// n = 1 pass-through wiring.
Wiring identity_wiring();

/// Parity wiring: x and y go into all n boxes, outputs are the XORs of the
/// per-box outputs. On the correlated family the composed CHSH value is
/// 3 - (1-2e)^n.
Wiring fww(int n);

/// Two-box adaptive wiring: first box sees (x, y), second sees (x*a1, y*b1),
/// outputs a1(+)a2 and b1(+)b2. On the correlated family the composed CHSH
/// value is 3e - e^2 + 2, which distills for 0 < e < 1.
Wiring bs2();

/// Repeatedly applies bs2 to two copies of the current correlated box.
/// Element k of the result is the exact CHSH value after k steps (element 0
/// is the input box's). Throws NotCorrelatedForm if an iterate leaves the
/// correlated family, which would break the recursion.
std::vector<Rat> iterate_bs(const Rat& eps0, int steps);

/// Epsilon trajectory of the same iteration (eps_{k+1} = (3 eps_k - eps_k^2)/2,
/// read off the composed table, not the formula).
std::vector<Rat> iterate_bs_eps(const Rat& eps0, int steps);

struct LimitReport {
    Rat chsh_in;
    Rat chsh_out;
    bool local_preserved;   // chsh_in <= 2 implies chsh_out <= 2
    bool strict_preserved;  // chsh_in < 4 implies chsh_out < 4
    bool ok;
};

/// Checks the no-distillation-from-locality and no-free-perfection limits on
/// one wiring applied to identical copies of a box.
LimitReport limit_checks(const Box& box, const Wiring& wiring);

// ---- exhaustive two-box search ----

/**
 * A deterministic one-party strategy over two boxes in canonical channel
 * form: for each (x, a_box0, a_box1) the inputs fed to the two boxes and the
 * final output, each stored as an 8-bit truth table over the index
 * x | a_box0 << 1 | a_box1 << 2. Strategies whose raw tables induce the same
 * behaviour on non-signalling boxes (unread box inputs are forced to zero)
 * collapse to one canonical entry.
 */
struct SideStrategy2 {
    uint8_t u0 = 0;   // input to box 0
    uint8_t u1 = 0;   // input to box 1
    uint8_t out = 0;  // final output bit
    LocalStrategy rep;

    uint32_t key() const { return uint32_t(u0) | (uint32_t(u1) << 8) | (uint32_t(out) << 16); }
};

struct EnumerationStats {
    size_t raw_fixed_order = 0;  // strategies with the identity box order
    size_t raw_total = 0;        // including both orders
    size_t deduplicated = 0;
};

/// All canonical deterministic one-party two-box strategies, sorted by
/// channel key. Built once, then shared.
const std::vector<SideStrategy2>& enumerate_side_strategies2();
EnumerationStats side_strategy2_stats();

struct SearchResult {
    Rat value;
    size_t alice_index = 0;  // into enumerate_side_strategies2()
    size_t bob_index = 0;
    Wiring witness;
};

/// Maximum of chsh(compose(w, [b, b])) over all canonical deterministic
/// two-box wirings, with a lexicographically-first witness. Exact: the scan
/// runs in integer arithmetic over the box's common denominator. `threads`
/// caps the parallel fan-out (0 = hardware default); the reduction is
/// order-independent so the result does not depend on the schedule.
SearchResult max_chsh_over_wirings(const Box& box, int threads = 0);

/// Channel truth-table rendering of a side strategy ("x a0 a1 : u0 u1 out").
std::string side_strategy_table(const SideStrategy2& s);

}  // namespace nlbox
