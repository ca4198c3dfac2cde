#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlbox/errors.hpp"
#include "nlbox/rational.hpp"

namespace nlbox {

/**
 * A bipartite two-input/two-output box: the conditional distribution
 * P(a,b|x,y) over bits, stored as 16 exact rationals. Valid instances
 * satisfy positivity and per-(x,y) normalization; construction goes
 * through make_box (or a named constructor), which enforces both.
 */
struct Box {
    std::array<Rat, 16> t{};

    static constexpr int index(int a, int b, int x, int y) { return a | (b << 1) | (x << 2) | (y << 3); }

    const Rat& p(int a, int b, int x, int y) const { return t[index(a, b, x, y)]; }
    Rat& p(int a, int b, int x, int y) { return t[index(a, b, x, y)]; }

    bool operator==(const Box&) const = default;
};

/// One party's reversible local operation: an input flip together with an
/// input-conditioned output flip, a <- a (+) outCoefX*x (+) outConst.
struct PartyRelabel {
    bool input_flip = false;
    bool out_coef_x = false;
    bool out_const = false;

    bool operator==(const PartyRelabel&) const = default;
};

/// A reversible local operation pair (Alice, Bob). These form a group of
/// order 64; party swap is deliberately not a member (see swap_parties).
struct Relabel {
    PartyRelabel alice;
    PartyRelabel bob;

    bool operator==(const Relabel&) const = default;
};

/// Validates the 16-entry table (positivity, normalization) and returns the box.
/// Throws NegativeProbability or NotNormalized naming the offending entry/column.
Box make_box(const std::array<Rat, 16>& table);

struct NonSignallingWitness {
    char party;       // 'A': Alice's marginal moved with Bob's input; 'B': converse
    int output;       // the output bit whose marginal changed
    int input;        // the offending party's own input
    int other_a;      // the two settings of the other party's input that disagree
    int other_b;
};

struct NonSignallingReport {
    bool ok = true;
    std::optional<NonSignallingWitness> witness;
    explicit operator bool() const { return ok; }
};

/// Checks both marginal conditions exactly; on failure the witness names the
/// violated tuple.
NonSignallingReport is_nonsignalling(const Box& box);

/// X_xy = P(00|xy) + P(11|xy) - P(01|xy) - P(10|xy), exact, in [-1, 1].
Rat correlator(const Box& box, int x, int y);

/// The four symmetrized CHSH combinations, minus sign at position s = (sx, sy):
/// T_s = sum_{x,y} (-1)^{[x=sx][y=sy]} X_xy.
std::array<Rat, 4> chsh_combinations(const Box& box);

/// CHSH value: max over the four sign placements of |T_s|. 2 is the local
/// bound, 4 the algebraic maximum.
Rat chsh(const Box& box);

/// Entrywise convex combination. Throws BadWeights unless weights are
/// nonnegative, sum to one and match the box list in length.
Box mix(const std::vector<Box>& boxes, const std::vector<Rat>& weights);

// Named constructors.
Box pr_box();                                    // a(+)b = xy, CHSH 4
Box anti_pr_box();                               // a(+)b != xy
Box fully_correlated_box();                      // a(+)b = 0
Box uniform_box();                               // all entries 1/4
Box isotropic_box(const Rat& eps);               // eps*PR + (1-eps)*antiPR
Box correlated_box(const Rat& eps);              // eps*PR + (1-eps)*C
Box local_vertex(int alpha, int beta, int gamma, int delta);   // a = alpha x (+) beta, b = gamma y (+) delta
Box nonlocal_vertex(int alpha, int beta, int gamma);           // a(+)b = xy (+) alpha x (+) beta y (+) gamma

/// Looks up a box by CLI mnemonic: pr, antipr, c, uniform, iso:p/q, corr:p/q,
/// vertex:abgd (4 bits, local) or vertex:abg (3 bits, non-local).
Box named_box(const std::string& mnemonic);

// The relabelling group.
Relabel identity_relabel();
PartyRelabel compose(const PartyRelabel& second, const PartyRelabel& first);
Relabel compose(const Relabel& second, const Relabel& first);
PartyRelabel inverse(const PartyRelabel& r);
Relabel inverse(const Relabel& r);

/// All 64 group elements in a fixed deterministic order.
const std::array<Relabel, 64>& relabel_group();

/// Pushforward of the table: the box obtained by feeding x (+) inputFlip into
/// the original and flipping the output by outCoefX*x (+) outConst (external
/// input convention). Preserves validity and non-signalling.
Box relabel(const Box& box, const Relabel& r);

/// Exchanges the two parties: P'(a,b|x,y) = P(b,a|y,x). Not part of the
/// equivalence group.
Box swap_parties(const Box& box);

/// First group element mapping box1 onto box2, in relabel_group() order, or
/// nullopt after exhausting all 64.
std::optional<Relabel> equivalent(const Box& box1, const Box& box2);

// Box file format: 16 lines "a b x y p/q", '#' comments, order irrelevant.
Box read_box(std::istream& in);
Box read_box_file(const std::string& path);
void write_box(std::ostream& out, const Box& box);  // sorted (x,y,a,b)

}  // namespace nlbox
