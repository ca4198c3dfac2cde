#include "nlbox/multigen.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "nlbox/box.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/lp.hpp"
#include "nlbox/polytope.hpp"

namespace nlbox {

TriBox make_tribox(const std::array<Rat, 64>& table) {
    TriBox box{table};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                Rat sum(0);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c) {
                            const Rat& v = box.p(a, b, c, x, y, z);
                            if (v < 0) throw NegativeProbability("tripartite entry below zero");
                            sum += v;
                        }
                if (sum != 1) {
                    std::ostringstream os;
                    os << "column (x,y,z)=(" << x << "," << y << "," << z << ") sums to " << rat_str(sum);
                    throw NotNormalized(os.str());
                }
            }
    return box;
}

namespace {

// Marginal of the output bits in `keep` (party bitmask) for a full input
// setting.
Rat subset_marginal(const TriBox& box, int keep, int out_bits, int x, int y, int z) {
    Rat sum(0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                int outs = a | (b << 1) | (c << 2);
                if ((outs & keep) != (out_bits & keep)) continue;
                sum += box.p(a, b, c, x, y, z);
            }
    return sum;
}

}  // namespace

TriNsReport tri_nonsignalling(const TriBox& box) {
    TriNsReport report;
    auto note = [&](bool& flag, const std::string& msg) {
        if (report.witness.empty()) report.witness = msg;
        flag = false;
    };
    // Weak: for each party, the complement's marginal ignores that party's
    // input (the three displayed sum conditions).
    for (int party = 0; party < 3; ++party) {
        const int keep = 7 & ~(1 << party);
        for (int outs = 0; outs < 8; ++outs) {
            if (outs & (1 << party)) continue;
            for (int inputs = 0; inputs < 8; ++inputs) {
                if (inputs & (1 << party)) continue;
                int x = inputs & 1, y = (inputs >> 1) & 1, z = (inputs >> 2) & 1;
                int fx = x | (party == 0), fy = y | (party == 1), fz = z | (party == 2);
                if (subset_marginal(box, keep, outs, x, y, z) != subset_marginal(box, keep, outs, fx, fy, fz)) {
                    std::ostringstream os;
                    os << "marginal of parties " << keep << " moved with input of party " << party;
                    note(report.weak, os.str());
                }
            }
        }
    }
    // Strong: every proper subset's marginal is a function of its own inputs
    // alone.
    for (int keep = 1; keep < 7; ++keep) {
        for (int outs = 0; outs < 8; ++outs) {
            if (outs & ~keep) continue;
            // Reference setting: remote inputs zeroed.
            for (int own = 0; own < 8; ++own) {
                if (own & ~keep) continue;
                Rat ref = subset_marginal(box, keep, outs, own & 1, (own >> 1) & 1, (own >> 2) & 1);
                for (int remote = 0; remote < 8; ++remote) {
                    if (remote & keep) continue;
                    int inputs = own | remote;
                    Rat got = subset_marginal(box, keep, outs, inputs & 1, (inputs >> 1) & 1, (inputs >> 2) & 1);
                    if (got != ref) {
                        std::ostringstream os;
                        os << "subset " << keep << " marginal moved with remote inputs " << remote;
                        note(report.strong, os.str());
                    }
                }
            }
        }
    }
    return report;
}

namespace {

// Deterministic single-party response table: two output bits, one per input.
int respond(int fn, int input) { return (fn >> input) & 1; }

std::vector<std::array<Rat, 64>> tri_local_vertices() {
    std::vector<std::array<Rat, 64>> vertices;
    for (int fa = 0; fa < 4; ++fa)
        for (int fb = 0; fb < 4; ++fb)
            for (int fc = 0; fc < 4; ++fc) {
                std::array<Rat, 64> t{};
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int z = 0; z < 2; ++z)
                            t[TriBox::index(respond(fa, x), respond(fb, y), respond(fc, z), x, y, z)] = Rat(1);
                vertices.push_back(t);
            }
    return vertices;
}

std::optional<std::vector<Rat>> tri_membership(const TriBox& box, const std::vector<std::array<Rat, 64>>& generators) {
    RatMatrix a(65, std::vector<Rat>(generators.size()));
    std::vector<Rat> rhs(65);
    for (size_t g = 0; g < generators.size(); ++g) {
        for (int cell = 0; cell < 64; ++cell) a[cell][g] = generators[g][cell];
        a[64][g] = Rat(1);
    }
    for (int cell = 0; cell < 64; ++cell) rhs[cell] = box.t[cell];
    rhs[64] = Rat(1);
    return lp_feasible_point(a, rhs);
}

}  // namespace

std::optional<std::vector<Rat>> tri_fully_local(const TriBox& box) {
    return tri_membership(box, tri_local_vertices());
}

std::optional<std::vector<Rat>> tri_two_way_local(const TriBox& box) {
    std::vector<std::array<Rat, 64>> generators;
    const auto& pair_vertices = VertexSet::instance().entries;  // 24 bipartite NS vertices
    for (int split = 0; split < 3; ++split) {  // lone party: 2 (AB|C), 1 (AC|B), 0 (BC|A)
        int lone = 2 - split;
        for (const auto& entry : pair_vertices) {
            for (int fn = 0; fn < 4; ++fn) {
                std::array<Rat, 64> t{};
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int z = 0; z < 2; ++z)
                            for (int a = 0; a < 2; ++a)
                                for (int b = 0; b < 2; ++b)
                                    for (int c = 0; c < 2; ++c) {
                                        int outs[3] = {a, b, c};
                                        int ins[3] = {x, y, z};
                                        int pair_out[2], pair_in[2], pi = 0;
                                        for (int party = 0; party < 3; ++party) {
                                            if (party == lone) continue;
                                            pair_out[pi] = outs[party];
                                            pair_in[pi] = ins[party];
                                            ++pi;
                                        }
                                        if (outs[lone] != respond(fn, ins[lone])) continue;
                                        t[TriBox::index(a, b, c, x, y, z)] =
                                            entry.box.p(pair_out[0], pair_out[1], pair_in[0], pair_in[1]);
                                    }
                generators.push_back(t);
            }
        }
    }
    return tri_membership(box, generators);
}

int tri_dimension() {
    RatMatrix rows;
    for (int inputs = 0; inputs < 8; ++inputs) {  // normalization per (x,y,z)
        std::vector<Rat> row(64, Rat(0));
        for (int outs = 0; outs < 8; ++outs) row[outs | (inputs << 3)] = Rat(1);
        rows.push_back(row);
    }
    for (int party = 0; party < 3; ++party) {
        for (int outs = 0; outs < 8; ++outs) {
            if (outs & (1 << party)) continue;  // summed over
            for (int inputs = 0; inputs < 8; ++inputs) {
                if (inputs & (1 << party)) continue;
                std::vector<Rat> row(64, Rat(0));
                for (int bit = 0; bit < 2; ++bit) {
                    int o = outs | (bit << party);
                    row[o | (inputs << 3)] += 1;
                    row[o | ((inputs | (1 << party)) << 3)] -= 1;
                }
                rows.push_back(row);
            }
        }
    }
    return 64 - rank(rows);
}

TriBox tri_xor_vertex() {
    TriBox box;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            if ((a ^ b ^ c) == (x & y & z)) box.p(a, b, c, x, y, z) = Rat(1, 4);
    return box;
}

TriBox tri_deterministic() {
    TriBox box;
    for (int inputs = 0; inputs < 8; ++inputs) box.t[0 | (inputs << 3)] = Rat(1);
    return box;
}

TriBox tri_pr_deterministic() {
    TriBox box;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        if ((a ^ b) == (x & y)) box.p(a, b, 0, x, y, z) = Rat(1, 2);
    return box;
}

TriBox tri_uniform() {
    TriBox box;
    box.t.fill(Rat(1, 8));
    return box;
}

TriBox tri_relabel(const TriBox& box, const std::array<TriPartyRelabel, 3>& ops) {
    TriBox out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                int ins[3] = {x, y, z};
                int src_in[3], flip[3];
                for (int party = 0; party < 3; ++party) {
                    src_in[party] = ins[party] ^ ops[party].input_flip;
                    flip[party] = (ops[party].out_coef & ins[party]) ^ ops[party].out_const;
                }
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            out.p(a, b, c, x, y, z) =
                                box.p(a ^ flip[0], b ^ flip[1], c ^ flip[2], src_in[0], src_in[1], src_in[2]);
            }
    return out;
}

TriBox read_tribox(std::istream& in) {
    std::array<Rat, 64> table;
    std::array<bool, 64> seen{};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b, c, x, y, z;
        std::string frac;
        if (!(ls >> a)) continue;
        if (!(ls >> b >> c >> x >> y >> z >> frac)) throw ParseError("tribox line needs 'a b c x y z p/q'");
        if ((a | b | c | x | y | z) & ~1) throw ParseError("tribox indices must be bits");
        int idx = TriBox::index(a, b, c, x, y, z);
        if (seen[idx]) throw ParseError("duplicate tripartite entry");
        seen[idx] = true;
        table[idx] = parse_rat(frac);
    }
    for (bool s : seen)
        if (!s) throw ParseError("tribox file must define all 64 entries");
    return make_tribox(table);
}

TriBox read_tribox_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_tribox(in);
}

void write_tribox(std::ostream& out, const TriBox& box) {
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            out << a << " " << b << " " << c << " " << x << " " << y << " " << z << " "
                                << rat_str(box.p(a, b, c, x, y, z)) << "\n";
}

bool genbox_nonsignalling(const GenBox& box) {
    for (int a = 0; a < box.da; ++a)
        for (int x = 0; x < box.dx; ++x) {
            Rat ref(0);
            for (int b = 0; b < box.db; ++b) ref += box.p(a, b, x, 0);
            for (int y = 1; y < box.dy; ++y) {
                Rat sum(0);
                for (int b = 0; b < box.db; ++b) sum += box.p(a, b, x, y);
                if (sum != ref) return false;
            }
        }
    for (int b = 0; b < box.db; ++b)
        for (int y = 0; y < box.dy; ++y) {
            Rat ref(0);
            for (int a = 0; a < box.da; ++a) ref += box.p(a, b, 0, y);
            for (int x = 1; x < box.dx; ++x) {
                Rat sum(0);
                for (int a = 0; a < box.da; ++a) sum += box.p(a, b, x, y);
                if (sum != ref) return false;
            }
        }
    return true;
}

GenBox make_genbox(GenBox box) {
    if (box.dx < 1 || box.dy < 1 || box.da < 1 || box.db < 1) throw BadParam("alphabet sizes must be positive");
    if (box.t.size() != size_t(box.dx) * box.dy * box.da * box.db) throw SizeMismatch("genbox table size");
    for (int x = 0; x < box.dx; ++x)
        for (int y = 0; y < box.dy; ++y) {
            Rat sum(0);
            for (int a = 0; a < box.da; ++a)
                for (int b = 0; b < box.db; ++b) {
                    if (box.p(a, b, x, y) < 0) throw NegativeProbability("genbox entry below zero");
                    sum += box.p(a, b, x, y);
                }
            if (sum != 1) throw NotNormalized("genbox column (x,y)");
        }
    if (!genbox_nonsignalling(box)) throw SignallingInput("genbox marginals move with the remote input");
    return box;
}

GenBox d_output_vertex(int k, int da, int db) {
    if (k < 2 || k > std::min(da, db)) throw BadParam("need 2 <= k <= min(da, db)");
    GenBox box;
    box.dx = box.dy = 2;
    box.da = da;
    box.db = db;
    box.t.assign(size_t(4) * da * db, Rat(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < k; ++a) {
                int b = (a + (x & y)) % k;
                box.p(a, b, x, y) = Rat(1, k);
            }
    return make_genbox(box);
}

GenBox project_mod(const GenBox& box, int d) {
    if (d < 1) throw BadParam("modulus must be positive");
    GenBox out;
    out.dx = box.dx;
    out.dy = box.dy;
    out.da = d;
    out.db = d;
    out.t.assign(size_t(out.dx) * out.dy * out.da * out.db, Rat(0));
    for (int x = 0; x < box.dx; ++x)
        for (int y = 0; y < box.dy; ++y)
            for (int a = 0; a < box.da; ++a)
                for (int b = 0; b < box.db; ++b) out.p(a % d, b % d, x, y) += box.p(a, b, x, y);
    return make_genbox(out);
}

GenBox compose_coprime(const GenBox& g1, const GenBox& g2) {
    if (g1.da != g1.db || g2.da != g2.db) throw BadParam("compose_coprime wants square output alphabets");
    if (g1.dx != 2 || g1.dy != 2 || g2.dx != 2 || g2.dy != 2) throw BadParam("compose_coprime wants binary inputs");
    const int d = g1.da, dp = g2.da;
    if (std::gcd(d, dp) != 1) throw NotCoprime(std::to_string(d) + " and " + std::to_string(dp));
    const int k = d * dp;
    // CRT lookup: residue pair -> element of Z_k.
    std::vector<std::vector<int>> crt(d, std::vector<int>(dp));
    for (int v = 0; v < k; ++v) crt[v % d][v % dp] = v;

    GenBox out;
    out.dx = out.dy = 2;
    out.da = out.db = k;
    out.t.assign(size_t(4) * k * k, Rat(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a1 = 0; a1 < d; ++a1)
                for (int b1 = 0; b1 < d; ++b1)
                    for (int a2 = 0; a2 < dp; ++a2)
                        for (int b2 = 0; b2 < dp; ++b2) {
                            Rat w = g1.p(a1, b1, x, y) * g2.p(a2, b2, x, y);
                            if (w != 0) out.p(crt[a1][a2], crt[b1][b2], x, y) += w;
                        }
    return make_genbox(out);
}

int genbox_ns_dimension(int da, int db) {
    const int vars = 4 * da * db;
    auto idx = [&](int a, int b, int x, int y) { return ((x * 2 + y) * da + a) * db + b; };
    RatMatrix rows;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            std::vector<Rat> row(vars, Rat(0));
            for (int a = 0; a < da; ++a)
                for (int b = 0; b < db; ++b) row[idx(a, b, x, y)] = Rat(1);
            rows.push_back(row);
        }
    for (int a = 0; a < da; ++a)
        for (int x = 0; x < 2; ++x) {
            std::vector<Rat> row(vars, Rat(0));
            for (int b = 0; b < db; ++b) {
                row[idx(a, b, x, 0)] += 1;
                row[idx(a, b, x, 1)] -= 1;
            }
            rows.push_back(row);
        }
    for (int b = 0; b < db; ++b)
        for (int y = 0; y < 2; ++y) {
            std::vector<Rat> row(vars, Rat(0));
            for (int a = 0; a < da; ++a) {
                row[idx(a, b, 0, y)] += 1;
                row[idx(a, b, 1, y)] -= 1;
            }
            rows.push_back(row);
        }
    return vars - rank(rows);
}

GenBox read_genbox(std::istream& in) {
    std::string line;
    GenBox box;
    bool header_done = false;
    std::vector<bool> seen;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!header_done) {
            if (!(ls >> box.dx >> box.dy >> box.da >> box.db)) continue;
            box.t.assign(size_t(box.dx) * box.dy * box.da * box.db, Rat(0));
            seen.assign(box.t.size(), false);
            header_done = true;
            continue;
        }
        int a, b, x, y;
        std::string frac;
        if (!(ls >> a)) continue;
        if (!(ls >> b >> x >> y >> frac)) throw ParseError("genbox line needs 'a b x y p/q'");
        if (a < 0 || a >= box.da || b < 0 || b >= box.db || x < 0 || x >= box.dx || y < 0 || y >= box.dy)
            throw ParseError("genbox indices out of range");
        int idx = box.index(a, b, x, y);
        if (seen[idx]) throw ParseError("duplicate genbox entry");
        seen[idx] = true;
        box.t[idx] = parse_rat(frac);
    }
    if (!header_done) throw ParseError("missing genbox header");
    return make_genbox(box);
}

GenBox read_genbox_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_genbox(in);
}

void write_genbox(std::ostream& out, const GenBox& box) {
    out << box.dx << " " << box.dy << " " << box.da << " " << box.db << "\n";
    for (int x = 0; x < box.dx; ++x)
        for (int y = 0; y < box.dy; ++y)
            for (int a = 0; a < box.da; ++a)
                for (int b = 0; b < box.db; ++b)
                    if (box.p(a, b, x, y) != 0)
                        out << a << " " << b << " " << x << " " << y << " " << rat_str(box.p(a, b, x, y)) << "\n";
}

}  // namespace nlbox
