#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nlbox/rational.hpp"

namespace nlbox {

/// Boolean function with a declared party split. Table index packs party 0's
/// bits least significant, then party 1's, and so on.
struct BoolFn {
    std::vector<int> arity;       // bits held by each party
    std::vector<uint8_t> table;   // 2^(sum of arity) entries

    int total_bits() const;
    bool well_formed() const;
    uint8_t eval(uint32_t input) const { return table[input] & 1; }

    /// Bipartite (n, n)-bit function from packed truth bits (input index
    /// x | y << n).
    static BoolFn bipartite(int n, uint64_t truth_bits);
    /// n parties with one bit each.
    static BoolFn nparty(int n, uint64_t truth_bits);
};

/// Algebraic normal form: the set of GF(2) monomials (as bit masks over the
/// flattened input) whose XOR reproduces f. Computed by the Moebius
/// transform.
std::vector<uint32_t> anf(const BoolFn& f);

/// Evaluates an ANF monomial set at a flattened input.
uint8_t eval_anf(const std::vector<uint32_t>& monomials, uint32_t input);

/**
 * f(x, y) = (+)_i P_i(x) * Q_i(y): ANF monomials grouped by their y-part, one
 * term per distinct nonzero-relevant y-monomial, so the term count is at most
 * 2^n. The degree-0 monomial is kept aside for Alice to fold in locally.
 */
struct FactoredForm {
    struct Term {
        std::vector<uint32_t> x_monomials;  // P_i: XOR of x-masks (bits over x only)
        uint32_t y_monomial = 0;            // Q_i = y^mask

        uint8_t p(uint32_t x) const { return eval_anf(x_monomials, x); }
        uint8_t q(uint32_t y) const { return (y & y_monomial) == y_monomial; }
    };
    std::vector<Term> terms;
    int constant = 0;  // degree-0 ANF coefficient, Alice XORs it locally

    uint8_t eval(uint32_t x, uint32_t y) const;
};

FactoredForm factor_bipartite(const BoolFn& f);

/// Checks (+)_i P_i(x) Q_i(y) (+) constant = f(x, y) on every input.
bool factored_valid(const BoolFn& f, const FactoredForm& form);

/// One run of the van Dam protocol with perfect PR boxes: term inputs go into
/// one box each, outputs are the XORs of the box outputs (plus Alice's local
/// constant). a (+) b = f(x, y) on every branch; rng only picks the branch.
std::pair<int, int> van_dam_run(const BoolFn& f, uint32_t x, uint32_t y, std::mt19937_64& rng);

/// Exhaustive version: a (+) b = f(x, y) over all box branches and inputs.
bool van_dam_check_all(const BoolFn& f);

/// Success probability of the same protocol run on isotropic boxes P_eps,
/// by exact enumeration of the error pattern branches.
Rat van_dam_noisy_success(const BoolFn& f, uint32_t x, uint32_t y, const Rat& eps);

/// Probability that the parity of m boxes, each independently correct with
/// probability p, is correct: (1 + (2p-1)^m)/2.
Rat noisy_parity_success(int m, const Rat& p);

/// CHSH value of a symmetric box with per-cell success probability p: 8p - 4.
Rat chsh_of_success(const Rat& p);

struct BccWitness {
    double value;               // 4 sqrt(2/3)
    bool exact_square_matches;  // (8p-4)^2 at p=(3+sqrt 6)/6 equals 32/3, in exact surd arithmetic
};

/// The communication-complexity threshold constant with its exactness check.
BccWitness bcc_constant();

/// Joint n-party conditional distribution P(outputs|inputs), one bit per
/// party on each side: index a_bits | x_bits << n.
struct NPartyBox {
    int n = 1;
    std::vector<Rat> table;

    const Rat& p(uint32_t a, uint32_t x) const { return table[a | (x << n)]; }
};

/// Share-chain realization of the parity-correlated box: every ANF monomial
/// of degree k >= 2 is XOR-shared through 2^(k-1)-1 pairwise PR boxes, linear
/// terms stay local. The output distribution is exactly 1/2^(n-1) on the
/// manifold (+)_i a_i = f(x) and 0 elsewhere. Throws ArityTooLarge past the
/// caps (n <= 4, monomial degree <= 4).
NPartyBox bp_simulate(const BoolFn& f);

/// The target correlation itself, for exact comparison.
NPartyBox bp_target(const BoolFn& f);

/// Every party's output marginal is uniform and the box is non-signalling
/// (each party's complement-marginal is independent of that party's input).
bool nparty_nonsignalling(const NPartyBox& box);
bool nparty_uniform_marginals(const NPartyBox& box);

/// The n-1 bits of communication scenario: parties 2..n send their outputs to
/// party 1, who reconstructs f. True iff that succeeds on all inputs with
/// probability one.
bool bp_reconstruction_works(const BoolFn& f);

}  // namespace nlbox
