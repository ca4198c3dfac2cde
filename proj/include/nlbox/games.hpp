#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "nlbox/rational.hpp"

namespace nlbox {

/// A two-player game: finite input/output alphabets, a prior over input
/// pairs and a winning predicate.
struct Game {
    int nx = 2, ny = 2, na = 2, nb = 2;
    std::vector<Rat> prior;         // index x*ny + y; nonnegative, sums to 1
    std::vector<uint8_t> predicate; // index ((a*nb + b)*nx + x)*ny + y

    const Rat& pi(int x, int y) const { return prior[x * ny + y]; }
    uint8_t v(int a, int b, int x, int y) const { return predicate[((a * nb + b) * nx + x) * ny + y]; }
};

/// Binary-answer game whose predicate depends on the answers only through
/// their XOR.
struct XorGame {
    int nx = 2, ny = 2;
    std::vector<Rat> prior;         // index x*ny + y
    std::vector<uint8_t> predicate; // index (c*nx + x)*ny + y, c = a(+)b

    const Rat& pi(int x, int y) const { return prior[x * ny + y]; }
    uint8_t v(int c, int x, int y) const { return predicate[(c * nx + x) * ny + y]; }
};

/// Reference constants for the XOR-game bound checks.
struct GameBounds {
    static constexpr double kg_low = 1.6769;
    static double kg_high();  // pi / (2 ln(1 + sqrt 2)) ~ 1.7822
    static constexpr double gamma1 = 1.1382;
    static constexpr double gamma2 = 0.74202;
};

inline constexpr uint64_t kDefaultStrategyCap = uint64_t(1) << 24;

/// Exact maximum winning probability over deterministic strategy pairs
/// (deterministic suffices by convexity). Throws TooLarge past the cap.
Rat classical_value(const Game& g, uint64_t cap = kDefaultStrategyCap);
Rat classical_value(const XorGame& g, uint64_t cap = kDefaultStrategyCap);

/// Winning probability of outputting fair random bits, exact.
Rat trivial_value(const XorGame& g);

/// Quantum value of a XOR game through the unit-vector characterization:
/// base + (1/2) max over unit vectors of sum pi(x,y) chat(x,y) <u_x, v_y>,
/// solved by alternating maximization with random restarts. The returned
/// value is always achievable (feasible vectors), hence a lower bound on the
/// true quantum value; upper-bound claims go through the bound checks below.
double xor_quantum_value(const XorGame& g, int restarts = 200, double tol = 1e-10, uint64_t seed = 1);

/// (omega_Q - tau)/(omega_C - tau). Throws DegenerateGame when omega_C = tau.
double grothendieck_ratio(const XorGame& g, int restarts = 200, double tol = 1e-10, uint64_t seed = 1);

/// omega_Q <= gamma1*omega_C when omega_C <= gamma2, else
/// omega_Q <= sin^2(pi/2 * omega_C), checked with 1e-6 slack.
bool thm8_check(const XorGame& g, int restarts = 200, double tol = 1e-10, uint64_t seed = 1);

/// Non-local computation game of f: inputs are m-bit strings, uniform prior
/// over all pairs, win iff a(+)b = f(x(+)y). truth_table has 2^m entries.
XorGame nlc_game(const std::vector<uint8_t>& truth_table);

/// The CHSH game: uniform prior, win iff a(+)b = x*y.
XorGame chsh_game();

Game to_game(const XorGame& g);

/// Recognizes a binary game whose predicate depends only on a(+)b.
std::optional<XorGame> as_xor_game(const Game& g);

/// Seeded random XOR game: uniform prior over a random nonempty support,
/// fair-coin predicate bits.
XorGame sample_xor_game(std::mt19937_64& rng, int max_inputs = 4);

// Game file format: header "X Y A B", then prior lines "x y p/q" and
// predicate lines "a b x y v" (line type recognized by token count).
Game read_game(std::istream& in);
Game read_game_file(const std::string& path);
void write_game(std::ostream& out, const Game& g);

}  // namespace nlbox
