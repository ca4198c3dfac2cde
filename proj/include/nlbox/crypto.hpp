#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlbox/rational.hpp"

namespace nlbox {

/// Number of "11" blocks at odd positions: the recursion consumes two leading
/// bits at a time; a trailing lone bit contributes nothing. Accepts a string
/// of '0'/'1'.
int count11(const std::string& bits);
int count11(const std::vector<int>& bits);

/// One branch of the single-PR-box 1-2 OT protocol. Sender inputs
/// x0 (+) x1, receiver inputs c; m = x0 (+) a travels, and m (+) b = x_c.
struct OTRun {
    int x0, x1, c;
    Rat weight;           // probability of this box branch
    int a, b;             // box outputs
    int m;                // sender's message, x0 (+) a
    int receiver_output;  // m (+) b
};

/// The full branch distribution for fixed inputs; the receiver output equals
/// x_c on every branch.
std::vector<OTRun> ot_run(int x0, int x1, int c);

struct OTPrivacyReport {
    Rat sender_leak;    // statistical distance of the sender's view across c
    Rat receiver_leak;  // distance of the receiver's view across x_{1-c}
};

/// Both leakages are exactly zero: the sender's view is independent of c and
/// the receiver's of the unchosen bit.
OTPrivacyReport ot_privacy_report();

struct OTReductionReport {
    Rat honest_success;         // receiver pinned the transmitted bit: 1/2
    Rat cheating_success;       // input delayed until k is announced: 1
    Rat sender_view_distance;   // sender cannot tell the two receivers apart: 0
};

/// The OT-from-1-2-OT reduction and its PR-box attack, by branch enumeration.
OTReductionReport ot_reduction_attack();

/// One commit/reveal round of the PR-box bit commitment.
struct BcRound {
    std::vector<int> x, a;  // Alice's 2n+1 box inputs and outputs
    std::vector<int> y, b;  // Bob's side
    int commit_message;     // A = (+)_i a_i
};

struct BcTranscript {
    int c, n, k;
    std::vector<BcRound> rounds;
    bool accepted;
};

/// Honest execution; accepts with probability one. Bob's pre-reveal view is
/// (y, b, A) per round and never includes c.
BcTranscript bc_honest_run(int c, int n, int k, uint64_t seed);

/// Probability Bob accepts when Alice's reveal flips exactly one x bit
/// (exact over Bob's y randomness): the flipped box check fails half the time.
Rat bc_tamper_acceptance_probability(int n);

/// Acceptance probability of a one-round honest run, by enumerating all of
/// Alice's and Bob's randomness. Equals one.
Rat bc_honest_accept_probability(int n, int c);

/// Exact optimal probability that Bob guesses c from his pre-reveal views,
/// maximizing over his per-round input strings and guessing rule. Enumeration
/// capped at n <= 2, k <= 2 (TooLarge beyond); k = 0 returns 1/2.
Rat bc_hiding_advantage(int n, int k);

/// Reference hiding curve 1/2 + k/2^(n+1).
Rat bc_hiding_bound(int n, int k);

/// Exact optimal probability that Alice opens the complement of her committed
/// bit, choosing her reveal as a function of her commit view; all k rounds
/// must pass. Same caps as the hiding analysis.
Rat bc_binding_advantage(int n, int k);

/// Reference binding curve 1/2 + 1/2^(k-1). Exceeds one at k = 1, so it is
/// reported next to the enumerated optimum, never asserted.
Rat bc_binding_curve(int k);

}  // namespace nlbox
