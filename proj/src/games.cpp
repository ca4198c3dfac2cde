#include "nlbox/games.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "nlbox/errors.hpp"

namespace nlbox {

double GameBounds::kg_high() { return std::numbers::pi / (2.0 * std::log(1.0 + std::numbers::sqrt2)); }

namespace {

uint64_t ipow(uint64_t base, uint64_t exp) {
    uint64_t r = 1;
    while (exp--) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

void check_prior(const std::vector<Rat>& prior) {
    Rat total(0);
    for (const Rat& p : prior) {
        if (p < 0) throw BadParam("negative prior weight");
        total += p;
    }
    if (total != 1) throw BadParam("prior sums to " + rat_str(total));
}

}  // namespace

Rat classical_value(const Game& g, uint64_t cap) {
    check_prior(g.prior);
    uint64_t alice = ipow(g.na, g.nx);
    uint64_t bob = ipow(g.nb, g.ny);
    if (alice == UINT64_MAX || bob == UINT64_MAX || alice > cap / bob)
        throw TooLarge("deterministic strategy space exceeds cap");

    Rat best(0);
    std::vector<int> a_of_x(g.nx), b_of_y(g.ny);
    for (uint64_t sa = 0; sa < alice; ++sa) {
        uint64_t t = sa;
        for (int x = 0; x < g.nx; ++x) {
            a_of_x[x] = int(t % g.na);
            t /= g.na;
        }
        for (uint64_t sb = 0; sb < bob; ++sb) {
            uint64_t u = sb;
            for (int y = 0; y < g.ny; ++y) {
                b_of_y[y] = int(u % g.nb);
                u /= g.nb;
            }
            Rat value(0);
            for (int x = 0; x < g.nx; ++x)
                for (int y = 0; y < g.ny; ++y)
                    if (g.v(a_of_x[x], b_of_y[y], x, y)) value += g.pi(x, y);
            if (value > best) best = value;
        }
    }
    return best;
}

Rat classical_value(const XorGame& g, uint64_t cap) { return classical_value(to_game(g), cap); }

Rat trivial_value(const XorGame& g) {
    check_prior(g.prior);
    Rat total(0);
    for (int c = 0; c < 2; ++c)
        for (int x = 0; x < g.nx; ++x)
            for (int y = 0; y < g.ny; ++y)
                if (g.v(c, x, y)) total += g.pi(x, y);
    return total / 2;
}

namespace {

using Vec = std::vector<double>;

double norm(const Vec& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

double xor_quantum_value(const XorGame& g, int restarts, double tol, uint64_t seed) {
    check_prior(g.prior);
    const int nx = g.nx, ny = g.ny;
    const uint64_t strategies = ipow(2, nx) * ipow(2, ny);
    if (strategies > kDefaultStrategyCap) throw TooLarge("alphabets too large for the vector solver");

    // Signed bias matrix and the strategy-independent base term.
    std::vector<double> m(nx * ny);
    double base = 0;
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
            double pi = rat_double(g.pi(x, y));
            m[x * ny + y] = pi * (double(g.v(0, x, y)) - double(g.v(1, x, y)));
            base += pi * (double(g.v(0, x, y)) + double(g.v(1, x, y))) / 2.0;
        }

    const int dim = std::max(1, std::min(nx, ny));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double best_bias = -1;
    for (int r = 0; r < restarts; ++r) {
        std::vector<Vec> u(nx, Vec(dim, 0.0)), v(ny, Vec(dim, 0.0));
        for (auto& vy : v) {
            for (double& c : vy) c = gauss(rng);
            double nl = norm(vy);
            if (nl == 0) vy[0] = 1;
            else
                for (double& c : vy) c /= nl;
        }
        double bias = -1;
        for (int sweep = 0; sweep < 10000; ++sweep) {
            // u_x <- normalized sum_y M(x,y) v_y, then the symmetric step.
            for (int x = 0; x < nx; ++x) {
                Vec acc(dim, 0.0);
                for (int y = 0; y < ny; ++y)
                    for (int d = 0; d < dim; ++d) acc[d] += m[x * ny + y] * v[y][d];
                double nl = norm(acc);
                if (nl == 0) acc[0] = 1;
                else
                    for (double& c : acc) c /= nl;
                u[x] = acc;
            }
            double next = 0;
            for (int y = 0; y < ny; ++y) {
                Vec acc(dim, 0.0);
                for (int x = 0; x < nx; ++x)
                    for (int d = 0; d < dim; ++d) acc[d] += m[x * ny + y] * u[x][d];
                double nl = norm(acc);
                next += nl;
                if (nl == 0) acc[0] = 1;
                else
                    for (double& c : acc) c /= nl;
                v[y] = acc;
            }
            if (next - bias < tol && sweep > 0) {
                bias = next;
                break;
            }
            bias = next;
        }
        best_bias = std::max(best_bias, bias);
    }
    return base + best_bias / 2.0;
}

double grothendieck_ratio(const XorGame& g, int restarts, double tol, uint64_t seed) {
    Rat wc = classical_value(g);
    Rat tau = trivial_value(g);
    if (wc == tau) throw DegenerateGame("omega_C equals tau, ratio undefined");
    double wq = xor_quantum_value(g, restarts, tol, seed);
    return (wq - rat_double(tau)) / rat_double(wc - tau);
}

bool thm8_check(const XorGame& g, int restarts, double tol, uint64_t seed) {
    double wc = rat_double(classical_value(g));
    double wq = xor_quantum_value(g, restarts, tol, seed);
    double bound = wc <= GameBounds::gamma2 ? GameBounds::gamma1 * wc
                                            : std::pow(std::sin(std::numbers::pi / 2.0 * wc), 2);
    return wq <= bound + 1e-6;
}

XorGame nlc_game(const std::vector<uint8_t>& truth_table) {
    size_t size = truth_table.size();
    if (size == 0 || (size & (size - 1)) != 0) throw BadParam("truth table length must be a power of two");
    int m = 0;
    while ((size_t(1) << m) < size) ++m;
    XorGame g;
    g.nx = g.ny = 1 << m;
    g.prior.assign(size_t(g.nx) * g.ny, Rat(1, int64_t(g.nx) * g.ny));
    g.predicate.assign(size_t(2) * g.nx * g.ny, 0);
    for (int x = 0; x < g.nx; ++x)
        for (int y = 0; y < g.ny; ++y) {
            int want = truth_table[x ^ y] & 1;
            g.predicate[(want * g.nx + x) * g.ny + y] = 1;
        }
    return g;
}

XorGame chsh_game() {
    XorGame g;
    g.nx = g.ny = 2;
    g.prior.assign(4, Rat(1, 4));
    g.predicate.assign(8, 0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) g.predicate[((x & y) * 2 + x) * 2 + y] = 1;
    return g;
}

Game to_game(const XorGame& g) {
    Game out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.na = out.nb = 2;
    out.prior = g.prior;
    out.predicate.assign(size_t(4) * g.nx * g.ny, 0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < g.nx; ++x)
                for (int y = 0; y < g.ny; ++y)
                    out.predicate[((a * 2 + b) * g.nx + x) * g.ny + y] = g.v(a ^ b, x, y);
    return out;
}

std::optional<XorGame> as_xor_game(const Game& g) {
    if (g.na != 2 || g.nb != 2) return std::nullopt;
    XorGame out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.prior = g.prior;
    out.predicate.assign(size_t(2) * g.nx * g.ny, 0);
    for (int x = 0; x < g.nx; ++x)
        for (int y = 0; y < g.ny; ++y) {
            if (g.v(0, 0, x, y) != g.v(1, 1, x, y) || g.v(0, 1, x, y) != g.v(1, 0, x, y)) return std::nullopt;
            out.predicate[(0 * g.nx + x) * g.ny + y] = g.v(0, 0, x, y);
            out.predicate[(1 * g.nx + x) * g.ny + y] = g.v(0, 1, x, y);
        }
    return out;
}

XorGame sample_xor_game(std::mt19937_64& rng, int max_inputs) {
    XorGame g;
    g.nx = 2 + int(rng() % uint64_t(max_inputs - 1));
    g.ny = 2 + int(rng() % uint64_t(max_inputs - 1));
    const int cells = g.nx * g.ny;
    std::vector<int> support;
    for (int i = 0; i < cells; ++i)
        if (rng() & 1) support.push_back(i);
    if (support.empty()) support.push_back(int(rng() % uint64_t(cells)));
    g.prior.assign(cells, Rat(0));
    for (int i : support) g.prior[i] = Rat(1, int64_t(support.size()));
    g.predicate.resize(size_t(2) * cells);
    for (auto& bit : g.predicate) bit = rng() & 1;
    return g;
}

Game read_game(std::istream& in) {
    std::string line;
    Game g;
    bool header_done = false;
    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        tokens.assign(std::istream_iterator<std::string>(ls), std::istream_iterator<std::string>());
        if (tokens.empty()) continue;
        if (!header_done) {
            if (tokens.size() != 4) throw ParseError("game header needs 'X Y A B'");
            g.nx = std::stoi(tokens[0]);
            g.ny = std::stoi(tokens[1]);
            g.na = std::stoi(tokens[2]);
            g.nb = std::stoi(tokens[3]);
            if (g.nx < 1 || g.ny < 1 || g.na < 1 || g.nb < 1) throw ParseError("alphabet sizes must be positive");
            g.prior.assign(size_t(g.nx) * g.ny, Rat(0));
            g.predicate.assign(size_t(g.na) * g.nb * g.nx * g.ny, 0);
            header_done = true;
            continue;
        }
        if (tokens.size() == 3) {  // prior: x y p/q
            int x = std::stoi(tokens[0]), y = std::stoi(tokens[1]);
            if (x < 0 || x >= g.nx || y < 0 || y >= g.ny) throw ParseError("prior indices out of range");
            g.prior[x * g.ny + y] = parse_rat(tokens[2]);
        } else if (tokens.size() == 5) {  // predicate: a b x y v
            int a = std::stoi(tokens[0]), b = std::stoi(tokens[1]);
            int x = std::stoi(tokens[2]), y = std::stoi(tokens[3]);
            int v = std::stoi(tokens[4]);
            if (a < 0 || a >= g.na || b < 0 || b >= g.nb || x < 0 || x >= g.nx || y < 0 || y >= g.ny || (v & ~1))
                throw ParseError("predicate line out of range");
            g.predicate[((a * g.nb + b) * g.nx + x) * g.ny + y] = uint8_t(v);
        } else {
            throw ParseError("unrecognized game line: '" + line + "'");
        }
    }
    if (!header_done) throw ParseError("missing game header");
    check_prior(g.prior);
    return g;
}

Game read_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_game(in);
}

void write_game(std::ostream& out, const Game& g) {
    out << g.nx << " " << g.ny << " " << g.na << " " << g.nb << "\n";
    for (int x = 0; x < g.nx; ++x)
        for (int y = 0; y < g.ny; ++y)
            if (g.pi(x, y) != 0) out << x << " " << y << " " << rat_str(g.pi(x, y)) << "\n";
    for (int a = 0; a < g.na; ++a)
        for (int b = 0; b < g.nb; ++b)
            for (int x = 0; x < g.nx; ++x)
                for (int y = 0; y < g.ny; ++y)
                    if (g.v(a, b, x, y)) out << a << " " << b << " " << x << " " << y << " 1\n";
}

}  // namespace nlbox
