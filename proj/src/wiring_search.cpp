#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "nlbox/errors.hpp"
#include "nlbox/wiring.hpp"

namespace nlbox {

namespace {

// Raw strategy fields: f1 over x (2 entries), f2 over (x, o1) (4 entries),
// g over (x, o1, o2) (8 entries), packed little-endian into integers.
struct RawSide {
    int order_swapped;  // 0: query box 0 first, 1: box 1 first
    int f1, f2, g;
};

// Forces box inputs that cannot influence the composed behaviour of
// non-signalling boxes to zero: an unread outcome marginalizes that box, and
// non-signalling then makes its far-end input irrelevant.
RawSide masked(RawSide s) {
    for (int x = 0; x < 2; ++x) {
        for (int o1 = 0; o1 < 2; ++o1) {
            int base = x | (o1 << 1);
            bool uses_o2 = ((s.g >> base) & 1) != ((s.g >> (base | 4)) & 1);
            if (!uses_o2) s.f2 &= ~(1 << base);
        }
        bool g_uses_o1 = false;
        for (int o2 = 0; o2 < 2; ++o2)
            g_uses_o1 |= ((s.g >> (x | (o2 << 2))) & 1) != ((s.g >> (x | 2 | (o2 << 2))) & 1);
        bool f2_uses_o1 = ((s.f2 >> x) & 1) != ((s.f2 >> (x | 2)) & 1);
        if (!g_uses_o1 && !f2_uses_o1) s.f1 &= ~(1 << x);
    }
    return s;
}

SideStrategy2 to_channel(const RawSide& s) {
    SideStrategy2 c;
    for (int x = 0; x < 2; ++x) {
        for (int a0 = 0; a0 < 2; ++a0) {
            for (int a1 = 0; a1 < 2; ++a1) {
                int o1 = s.order_swapped ? a1 : a0;
                int o2 = s.order_swapped ? a0 : a1;
                int u_first = (s.f1 >> x) & 1;
                int u_second = (s.f2 >> (x | (o1 << 1))) & 1;
                int out = (s.g >> (x | (o1 << 1) | (o2 << 2))) & 1;
                int idx = x | (a0 << 1) | (a1 << 2);
                c.u0 |= (s.order_swapped ? u_second : u_first) << idx;
                c.u1 |= (s.order_swapped ? u_first : u_second) << idx;
                c.out |= out << idx;
            }
        }
    }
    c.rep.n = 2;
    c.rep.order = s.order_swapped ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
    c.rep.input_fns.resize(2);
    c.rep.input_fns[0] = {uint8_t(s.f1 & 1), uint8_t((s.f1 >> 1) & 1)};
    c.rep.input_fns[1].resize(4);
    for (int i = 0; i < 4; ++i) c.rep.input_fns[1][i] = (s.f2 >> i) & 1;
    c.rep.output_fn.resize(8);
    for (int i = 0; i < 8; ++i) c.rep.output_fn[i] = (s.g >> i) & 1;
    return c;
}

struct StrategyUniverse {
    std::vector<SideStrategy2> list;
    EnumerationStats stats;
};

const StrategyUniverse& universe() {
    static const StrategyUniverse u = [] {
        StrategyUniverse out;
        std::unordered_map<uint32_t, SideStrategy2> seen;
        for (int order = 0; order < 2; ++order)
            for (int f1 = 0; f1 < 4; ++f1)
                for (int f2 = 0; f2 < 16; ++f2)
                    for (int g = 0; g < 256; ++g) {
                        ++out.stats.raw_total;
                        if (order == 0) ++out.stats.raw_fixed_order;
                        SideStrategy2 c = to_channel(masked({order, f1, f2, g}));
                        seen.emplace(c.key(), c);
                    }
        out.list.reserve(seen.size());
        for (auto& [key, c] : seen) out.list.push_back(std::move(c));
        std::sort(out.list.begin(), out.list.end(),
                  [](const SideStrategy2& a, const SideStrategy2& b) { return a.key() < b.key(); });
        out.stats.deduplicated = out.list.size();
        return out;
    }();
    return u;
}

}  // namespace

const std::vector<SideStrategy2>& enumerate_side_strategies2() { return universe().list; }

EnumerationStats side_strategy2_stats() { return universe().stats; }

std::string side_strategy_table(const SideStrategy2& s) {
    std::ostringstream os;
    os << "x a0 a1 : u0 u1 out\n";
    for (int idx = 0; idx < 8; ++idx) {
        os << (idx & 1) << " " << ((idx >> 1) & 1) << "  " << ((idx >> 2) & 1) << "  :  " << ((s.u0 >> idx) & 1)
           << "  " << ((s.u1 >> idx) & 1) << "  " << ((s.out >> idx) & 1) << "\n";
    }
    return os.str();
}

namespace {

// The scan works on integer numerators over a fixed common denominator; with
// two boxes every composed correlator is an exact integer over den^2.
struct FastBox {
    int64_t num[2][2][2][2];  // [u][v][a][b]
    int64_t den;
};

FastBox to_fast(const Box& box) {
    BigInt lcm(1);
    for (const Rat& v : box.t) lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(v)));
    if (lcm > 32768) throw TooLarge("box denominator too large for the integer search path");
    FastBox f{};
    f.den = lcm.convert_to<int64_t>();
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Rat scaled = box.p(a, b, u, v) * f.den;
                    f.num[u][v][a][b] = BigInt(numerator(scaled)).convert_to<int64_t>();
                }
    return f;
}

struct PairBest {
    int64_t value = -1;
    size_t alice = 0, bob = 0;

    void offer(int64_t v, size_t a, size_t b) {
        if (v > value || (v == value && (a < alice || (a == alice && b < bob)))) {
            value = v;
            alice = a;
            bob = b;
        }
    }
};

}  // namespace

SearchResult max_chsh_over_wirings(const Box& box, int threads) {
    if (!is_nonsignalling(box).ok) throw SignallingInput("search requires a non-signalling box");
    const FastBox fb = to_fast(box);
    const auto& strategies = enumerate_side_strategies2();
    const size_t count = strategies.size();

    // Bob-side selection tables: for each strategy, y and joint outcome pair
    // (b0, b1): the sign of the final bit and the two box inputs.
    struct BobEntry {
        int8_t sign[2][4];
        uint8_t v0[2][4], v1[2][4];
    };
    std::vector<BobEntry> bob(count);
    for (size_t i = 0; i < count; ++i) {
        const SideStrategy2& s = strategies[i];
        for (int y = 0; y < 2; ++y)
            for (int pair = 0; pair < 4; ++pair) {
                int idx = y | (pair << 1);
                bob[i].sign[y][pair] = ((s.out >> idx) & 1) ? -1 : 1;
                bob[i].v0[y][pair] = (s.u0 >> idx) & 1;
                bob[i].v1[y][pair] = (s.u1 >> idx) & 1;
            }
    }

    const int64_t d2 = fb.den * fb.den;
    std::atomic<int64_t> incumbent{-1};

    unsigned hw = threads > 0 ? unsigned(threads) : std::max(1u, std::thread::hardware_concurrency());
    hw = std::min<unsigned>(hw, 64);
    std::vector<PairBest> bests(hw);

    auto worker = [&](unsigned tid) {
        PairBest local;
        for (size_t ai = tid; ai < count; ai += hw) {
            const SideStrategy2& sa = strategies[ai];
            // K[x][b0b1][v0v1] = sum over Alice outcome pairs of the signed
            // product of the two box entries.
            int64_t K[2][4][4];
            int64_t row_bound = 0;
            for (int x = 0; x < 2; ++x) {
                for (int bp = 0; bp < 4; ++bp)
                    for (int vv = 0; vv < 4; ++vv) K[x][bp][vv] = 0;
                for (int ap = 0; ap < 4; ++ap) {
                    int idx = x | (ap << 1);
                    int a0 = ap & 1, a1 = (ap >> 1) & 1;
                    int u0 = (sa.u0 >> idx) & 1, u1 = (sa.u1 >> idx) & 1;
                    int sign = ((sa.out >> idx) & 1) ? -1 : 1;
                    for (int bp = 0; bp < 4; ++bp) {
                        int b0 = bp & 1, b1 = (bp >> 1) & 1;
                        for (int v0 = 0; v0 < 2; ++v0)
                            for (int v1 = 0; v1 < 2; ++v1)
                                K[x][bp][v0 | (v1 << 1)] +=
                                    sign * fb.num[u0][v0][a0][b0] * fb.num[u1][v1][a1][b1];
                    }
                }
                int64_t bound_x = 0;
                for (int bp = 0; bp < 4; ++bp) {
                    int64_t m = 0;
                    for (int vv = 0; vv < 4; ++vv) m = std::max(m, std::abs(K[x][bp][vv]));
                    bound_x += m;
                }
                row_bound += 2 * std::min(bound_x, d2);
            }
            if (row_bound < incumbent.load(std::memory_order_relaxed)) continue;

            for (size_t bi = 0; bi < count; ++bi) {
                const BobEntry& be = bob[bi];
                int64_t corr[2][2];
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        int64_t acc = 0;
                        for (int bp = 0; bp < 4; ++bp)
                            acc += be.sign[y][bp] * K[x][bp][be.v0[y][bp] | (be.v1[y][bp] << 1)];
                        corr[x][y] = acc;
                    }
                int64_t all = corr[0][0] + corr[0][1] + corr[1][0] + corr[1][1];
                int64_t best_t = 0;
                for (int sx = 0; sx < 2; ++sx)
                    for (int sy = 0; sy < 2; ++sy) best_t = std::max(best_t, std::abs(all - 2 * corr[sx][sy]));
                if (best_t >= local.value) {
                    local.offer(best_t, ai, bi);
                    int64_t cur = incumbent.load(std::memory_order_relaxed);
                    while (best_t > cur && !incumbent.compare_exchange_weak(cur, best_t)) {
                    }
                }
            }
        }
        bests[tid] = local;
    };

    if (hw == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    PairBest overall;
    for (const PairBest& b : bests)
        if (b.value >= 0) overall.offer(b.value, b.alice, b.bob);

    SearchResult result;
    result.value = Rat(overall.value, d2);
    result.alice_index = overall.alice;
    result.bob_index = overall.bob;
    result.witness.alice = strategies[overall.alice].rep;
    result.witness.bob = strategies[overall.bob].rep;
    return result;
}

}  // namespace nlbox
