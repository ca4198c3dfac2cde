#include "nlbox/box.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nlbox {

Rat parse_rat(const std::string& text) {
    std::string s = text;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("not a rational: '" + text + "'");
    }
}

std::string rat_str(const Rat& value) {
    std::ostringstream os;
    os << numerator(value) << "/" << denominator(value);
    return os.str();
}

Rat rat_pow(const Rat& base, unsigned exponent) {
    Rat acc(1);
    Rat b = base;
    unsigned e = exponent;
    while (e > 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

Box make_box(const std::array<Rat, 16>& table) {
    Box box{table};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Rat column_sum(0);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const Rat& v = box.p(a, b, x, y);
                    if (v < 0) {
                        std::ostringstream os;
                        os << "P(" << a << b << "|" << x << y << ") = " << rat_str(v);
                        throw NegativeProbability(os.str());
                    }
                    column_sum += v;
                }
            }
            if (column_sum != 1) {
                std::ostringstream os;
                os << "column (x,y)=(" << x << "," << y << ") sums to " << rat_str(column_sum);
                throw NotNormalized(os.str());
            }
        }
    }
    return box;
}

NonSignallingReport is_nonsignalling(const Box& box) {
    // Alice's marginal P(a|x) must not depend on y.
    for (int a = 0; a < 2; ++a) {
        for (int x = 0; x < 2; ++x) {
            Rat m0 = box.p(a, 0, x, 0) + box.p(a, 1, x, 0);
            Rat m1 = box.p(a, 0, x, 1) + box.p(a, 1, x, 1);
            if (m0 != m1) {
                return {false, NonSignallingWitness{'A', a, x, 0, 1}};
            }
        }
    }
    // Bob's marginal P(b|y) must not depend on x.
    for (int b = 0; b < 2; ++b) {
        for (int y = 0; y < 2; ++y) {
            Rat m0 = box.p(0, b, 0, y) + box.p(1, b, 0, y);
            Rat m1 = box.p(0, b, 1, y) + box.p(1, b, 1, y);
            if (m0 != m1) {
                return {false, NonSignallingWitness{'B', b, y, 0, 1}};
            }
        }
    }
    return {};
}

Rat correlator(const Box& box, int x, int y) {
    return box.p(0, 0, x, y) + box.p(1, 1, x, y) - box.p(0, 1, x, y) - box.p(1, 0, x, y);
}

std::array<Rat, 4> chsh_combinations(const Box& box) {
    Rat corr[2][2];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) corr[x][y] = correlator(box, x, y);
    std::array<Rat, 4> combos;
    for (int sx = 0; sx < 2; ++sx) {
        for (int sy = 0; sy < 2; ++sy) {
            Rat t(0);
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) t += (x == sx && y == sy) ? -corr[x][y] : corr[x][y];
            combos[sx * 2 + sy] = t;
        }
    }
    return combos;
}

Rat chsh(const Box& box) {
    Rat best(0);
    for (const Rat& t : chsh_combinations(box)) {
        Rat v = abs(t);
        if (v > best) best = v;
    }
    return best;
}

Box mix(const std::vector<Box>& boxes, const std::vector<Rat>& weights) {
    if (boxes.size() != weights.size()) throw BadWeights("box and weight counts differ");
    if (boxes.empty()) throw BadWeights("empty mixture");
    Rat total(0);
    for (const Rat& w : weights) {
        if (w < 0) throw BadWeights("negative weight " + rat_str(w));
        total += w;
    }
    if (total != 1) throw BadWeights("weights sum to " + rat_str(total));
    Box out;
    for (int i = 0; i < 16; ++i) {
        Rat v(0);
        for (size_t k = 0; k < boxes.size(); ++k) v += weights[k] * boxes[k].t[i];
        out.t[i] = v;
    }
    return out;
}

namespace {

Box parity_box(auto wins) {
    // 1/2 on each (a,b) with the winning parity, per (x,y) column.
    Box box;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) box.p(a, b, x, y) = wins(a, b, x, y) ? Rat(1, 2) : Rat(0);
    return box;
}

}  // namespace

Box pr_box() {
    return parity_box([](int a, int b, int x, int y) { return (a ^ b) == (x & y); });
}

Box anti_pr_box() {
    return parity_box([](int a, int b, int x, int y) { return (a ^ b) != (x & y); });
}

Box fully_correlated_box() {
    return parity_box([](int a, int b, int, int) { return (a ^ b) == 0; });
}

Box uniform_box() {
    Box box;
    box.t.fill(Rat(1, 4));
    return box;
}

Box isotropic_box(const Rat& eps) {
    if (eps < 0 || eps > 1) throw BadParam("isotropic eps " + rat_str(eps) + " outside [0,1]");
    return mix({pr_box(), anti_pr_box()}, {eps, 1 - eps});
}

Box correlated_box(const Rat& eps) {
    if (eps < 0 || eps > 1) throw BadParam("correlated eps " + rat_str(eps) + " outside [0,1]");
    return mix({pr_box(), fully_correlated_box()}, {eps, 1 - eps});
}

Box local_vertex(int alpha, int beta, int gamma, int delta) {
    if ((alpha | beta | gamma | delta) & ~1) throw BadParam("vertex parameters must be bits");
    Box box;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) box.p((alpha & x) ^ beta, (gamma & y) ^ delta, x, y) = Rat(1);
    return box;
}

Box nonlocal_vertex(int alpha, int beta, int gamma) {
    if ((alpha | beta | gamma) & ~1) throw BadParam("vertex parameters must be bits");
    return parity_box([=](int a, int b, int x, int y) { return (a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma); });
}

Box named_box(const std::string& mnemonic) {
    if (mnemonic == "pr") return pr_box();
    if (mnemonic == "antipr") return anti_pr_box();
    if (mnemonic == "c") return fully_correlated_box();
    if (mnemonic == "uniform") return uniform_box();
    auto colon = mnemonic.find(':');
    if (colon != std::string::npos) {
        std::string kind = mnemonic.substr(0, colon);
        std::string arg = mnemonic.substr(colon + 1);
        if (kind == "iso") return isotropic_box(parse_rat(arg));
        if (kind == "corr") return correlated_box(parse_rat(arg));
        if (kind == "vertex") {
            if (arg.size() == 4 && arg.find_first_not_of("01") == std::string::npos)
                return local_vertex(arg[0] - '0', arg[1] - '0', arg[2] - '0', arg[3] - '0');
            if (arg.size() == 3 && arg.find_first_not_of("01") == std::string::npos)
                return nonlocal_vertex(arg[0] - '0', arg[1] - '0', arg[2] - '0');
            throw BadParam("vertex wants 3 or 4 bits, got '" + arg + "'");
        }
    }
    throw BadParam("unknown box mnemonic '" + mnemonic + "'");
}

Relabel identity_relabel() { return {}; }

PartyRelabel compose(const PartyRelabel& second, const PartyRelabel& first) {
    // Apply `first` to the box, then `second` to the result. Output flips pick
    // up a cross term from first's coefficient acting on second's input flip.
    PartyRelabel out;
    out.input_flip = first.input_flip ^ second.input_flip;
    out.out_coef_x = first.out_coef_x ^ second.out_coef_x;
    out.out_const = first.out_const ^ second.out_const ^ (first.out_coef_x & second.input_flip);
    return out;
}

Relabel compose(const Relabel& second, const Relabel& first) {
    return {compose(second.alice, first.alice), compose(second.bob, first.bob)};
}

PartyRelabel inverse(const PartyRelabel& r) {
    return {r.input_flip, r.out_coef_x, static_cast<bool>(r.out_const ^ (r.out_coef_x & r.input_flip))};
}

Relabel inverse(const Relabel& r) { return {inverse(r.alice), inverse(r.bob)}; }

const std::array<Relabel, 64>& relabel_group() {
    static const std::array<Relabel, 64> group = [] {
        std::array<Relabel, 64> g;
        int i = 0;
        for (int bits = 0; bits < 64; ++bits) {
            Relabel r;
            r.alice.input_flip = bits & 1;
            r.alice.out_coef_x = bits & 2;
            r.alice.out_const = bits & 4;
            r.bob.input_flip = bits & 8;
            r.bob.out_coef_x = bits & 16;
            r.bob.out_const = bits & 32;
            g[i++] = r;
        }
        return g;
    }();
    return group;
}

Box relabel(const Box& box, const Relabel& r) {
    Box out;
    for (int x = 0; x < 2; ++x) {
        int u = x ^ r.alice.input_flip;
        int fa = (r.alice.out_coef_x & x) ^ r.alice.out_const;
        for (int y = 0; y < 2; ++y) {
            int v = y ^ r.bob.input_flip;
            int fb = (r.bob.out_coef_x & y) ^ r.bob.out_const;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out.p(a, b, x, y) = box.p(a ^ fa, b ^ fb, u, v);
        }
    }
    return out;
}

Box swap_parties(const Box& box) {
    Box out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out.p(a, b, x, y) = box.p(b, a, y, x);
    return out;
}

std::optional<Relabel> equivalent(const Box& box1, const Box& box2) {
    for (const Relabel& r : relabel_group()) {
        if (relabel(box1, r) == box2) return r;
    }
    return std::nullopt;
}

Box read_box(std::istream& in) {
    std::array<Rat, 16> table;
    std::array<bool, 16> seen{};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b, x, y;
        std::string frac;
        if (!(ls >> a)) continue;  // blank or comment-only line
        if (!(ls >> b >> x >> y >> frac)) throw ParseError("box line needs 'a b x y p/q': '" + line + "'");
        if ((a | b | x | y) & ~1) throw ParseError("box indices must be bits: '" + line + "'");
        int idx = Box::index(a, b, x, y);
        if (seen[idx]) throw ParseError("duplicate entry for (a,b,x,y)");
        seen[idx] = true;
        table[idx] = parse_rat(frac);
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }))
        throw ParseError("box file must define all 16 entries");
    return make_box(table);
}

Box read_box_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_box(in);
}

void write_box(std::ostream& out, const Box& box) {
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out << a << " " << b << " " << x << " " << y << " " << rat_str(box.p(a, b, x, y)) << "\n";
}

}  // namespace nlbox
