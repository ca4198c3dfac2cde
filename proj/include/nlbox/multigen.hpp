#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlbox/rational.hpp"

namespace nlbox {

/// Tripartite binary box P(a,b,c|x,y,z), 64 exact rationals.
struct TriBox {
    std::array<Rat, 64> t{};

    static constexpr int index(int a, int b, int c, int x, int y, int z) {
        return a | (b << 1) | (c << 2) | (x << 3) | (y << 4) | (z << 5);
    }
    const Rat& p(int a, int b, int c, int x, int y, int z) const { return t[index(a, b, c, x, y, z)]; }
    Rat& p(int a, int b, int c, int x, int y, int z) { return t[index(a, b, c, x, y, z)]; }

    bool operator==(const TriBox&) const = default;
};

TriBox make_tribox(const std::array<Rat, 64>& table);  // positivity + normalization

struct TriNsReport {
    bool weak = true;    // the three single-party marginal conditions
    bool strong = true;  // every proper party subset's marginal depends only on its own inputs
    std::string witness; // first violation, when any
    explicit operator bool() const { return strong; }
};

/// Both readings of tripartite non-signalling are evaluated and reported
/// separately (they agree mathematically; both are kept visible).
TriNsReport tri_nonsignalling(const TriBox& box);

/// Exact LP feasibility over the 64 deterministic tripartite vertices;
/// weights indexed by (fA | fB<<2 | fC<<4), each f a two-bit response table.
std::optional<std::vector<Rat>> tri_fully_local(const TriBox& box);

/// Exact LP feasibility over the 288 two-way generators: one bipartite
/// non-signalling vertex for a pair of parties times a deterministic box for
/// the third, across the three bipartitions.
std::optional<std::vector<Rat>> tri_two_way_local(const TriBox& box);

/// 64 minus the exact rank of the tripartite normalization + non-signalling
/// constraint system.
int tri_dimension();

// Named tripartite boxes.
TriBox tri_xor_vertex();      // 1/4 if a(+)b(+)c = xyz
TriBox tri_deterministic();   // a = b = c = 0
TriBox tri_pr_deterministic(); // PR between Alice and Bob, c = 0
TriBox tri_uniform();

/// Per-party reversible local operation for tripartite boxes.
struct TriPartyRelabel {
    bool input_flip = false;
    bool out_coef = false;
    bool out_const = false;
};
TriBox tri_relabel(const TriBox& box, const std::array<TriPartyRelabel, 3>& ops);

// TriBox file format: 64 lines "a b c x y z p/q".
TriBox read_tribox(std::istream& in);
TriBox read_tribox_file(const std::string& path);
void write_tribox(std::ostream& out, const TriBox& box);

/// Generalized box with binary inputs enforced where the constructions need
/// them: alphabets x < dx, y < dy, a < da, b < db.
struct GenBox {
    int dx = 2, dy = 2, da = 2, db = 2;
    std::vector<Rat> t;

    int index(int a, int b, int x, int y) const { return ((x * dy + y) * da + a) * db + b; }
    const Rat& p(int a, int b, int x, int y) const { return t[index(a, b, x, y)]; }
    Rat& p(int a, int b, int x, int y) { return t[index(a, b, x, y)]; }

    bool operator==(const GenBox&) const = default;
};

GenBox make_genbox(GenBox box);  // validates positivity, normalization, non-signalling
bool genbox_nonsignalling(const GenBox& box);

/// The k-output non-local vertex: P(a,b|x,y) = 1/k when (b - a) = xy mod k,
/// outputs embedded in alphabets of size da, db >= k, binary inputs.
GenBox d_output_vertex(int k, int da, int db);
inline GenBox d_output_vertex(int k) { return d_output_vertex(k, k, k); }

/// Output reduction a -> a mod d, b -> b mod d (probabilities summed).
GenBox project_mod(const GenBox& box, int d);

/// CRT recombination of a d-output and a d'-output box fed the same inputs;
/// requires gcd(d, d') = 1 (throws NotCoprime) and square output alphabets.
GenBox compose_coprime(const GenBox& g1, const GenBox& g2);

/// Dimension of the binary-input generalized polytope for output alphabets
/// (da, db), by exact rank: equals 4 da db - 2 da - 2 db.
int genbox_ns_dimension(int da, int db);

// GenBox file format: header "dx dy da db", then lines "a b x y p/q".
GenBox read_genbox(std::istream& in);
GenBox read_genbox_file(const std::string& path);
void write_genbox(std::ostream& out, const GenBox& box);

}  // namespace nlbox
