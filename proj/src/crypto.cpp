#include "nlbox/crypto.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "nlbox/errors.hpp"

namespace nlbox {

int count11(const std::vector<int>& bits) {
    int count = 0;
    for (size_t i = 0; i + 1 < bits.size(); i += 2)
        if (bits[i] == 1 && bits[i + 1] == 1) ++count;
    return count;  // an odd-length tail contributes nothing
}

int count11(const std::string& bits) {
    std::vector<int> v;
    v.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw BadParam("bit string wants only 0/1");
        v.push_back(ch - '0');
    }
    return count11(v);
}

std::vector<OTRun> ot_run(int x0, int x1, int c) {
    if ((x0 | x1 | c) & ~1) throw BadParam("ot_run wants bits");
    std::vector<OTRun> branches;
    int x = x0 ^ x1;
    for (int a = 0; a < 2; ++a) {
        OTRun run;
        run.x0 = x0;
        run.x1 = x1;
        run.c = c;
        run.weight = Rat(1, 2);
        run.a = a;
        run.b = a ^ (x & c);
        run.m = x0 ^ a;
        run.receiver_output = run.m ^ run.b;
        branches.push_back(run);
    }
    return branches;
}

namespace {

using Dist = std::map<std::vector<int>, Rat>;

Rat statistical_distance(const Dist& p, const Dist& q) {
    Rat total(0);
    auto add = [&](const Dist& a, const Dist& b) {
        for (const auto& [view, w] : a) {
            auto it = b.find(view);
            Rat other = it == b.end() ? Rat(0) : it->second;
            if (w > other) total += w - other;
        }
    };
    add(p, q);
    add(q, p);
    return total / 2;
}

}  // namespace

OTPrivacyReport ot_privacy_report() {
    OTPrivacyReport report{Rat(0), Rat(0)};
    // Sender leak: for each (x0, x1), the view (x0, x1, a, m) under c=0 vs c=1.
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) {
            Dist under[2];
            for (int c = 0; c < 2; ++c)
                for (const OTRun& r : ot_run(x0, x1, c)) under[c][{r.x0, r.x1, r.a, r.m}] += r.weight;
            report.sender_leak = std::max(report.sender_leak, statistical_distance(under[0], under[1]));
        }
    // Receiver leak: fix (c, x_c), vary the unchosen bit; view is (c, b, m).
    for (int c = 0; c < 2; ++c)
        for (int xc = 0; xc < 2; ++xc) {
            Dist under[2];
            for (int other = 0; other < 2; ++other) {
                int x0 = c == 0 ? xc : other;
                int x1 = c == 0 ? other : xc;
                for (const OTRun& r : ot_run(x0, x1, c)) under[other][{r.c, r.b, r.m}] += r.weight;
            }
            report.receiver_leak = std::max(report.receiver_leak, statistical_distance(under[0], under[1]));
        }
    return report;
}

OTReductionReport ot_reduction_attack() {
    // Reduction from OT to 1-2 OT: the sender wants to send beta obliviously.
    // He draws k at random, sets s_k = beta, s_{k bar} = 0, runs 1-2 OT, then
    // announces k. The receiver learns beta exactly when his chosen c hits k.
    OTReductionReport report{Rat(0), Rat(0), Rat(0)};
    Rat honest(0), cheating(0);
    Dist sender_view_honest, sender_view_cheat;
    for (int beta = 0; beta < 2; ++beta)
        for (int k = 0; k < 2; ++k) {
            int s0 = k == 0 ? beta : 0;
            int s1 = k == 1 ? beta : 0;
            // Honest receiver fixes c before k is announced (c = 0 wlog; the
            // box branch enumeration covers his whole view distribution).
            for (const OTRun& r : ot_run(s0, s1, 0)) {
                Rat w = Rat(1, 4) * r.weight;  // (1/2)^2 for (beta, k), times the branch
                if (k == 0 && r.receiver_output == beta) honest += w;  // k = c pins s_k = beta
                sender_view_honest[{beta, k, r.a, r.m}] += w;
            }
            // Cheating receiver delays the box input until k is announced and
            // then uses c = k, so he always reads s_k = beta.
            for (const OTRun& r : ot_run(s0, s1, k)) {
                Rat w = Rat(1, 4) * r.weight;
                if (r.receiver_output == beta) cheating += w;
                sender_view_cheat[{beta, k, r.a, r.m}] += w;
            }
        }
    report.honest_success = honest;
    report.cheating_success = cheating;
    report.sender_view_distance = statistical_distance(sender_view_honest, sender_view_cheat);
    return report;
}

namespace {

int parity_of(const std::vector<int>& bits) {
    int p = 0;
    for (int b : bits) p ^= b;
    return p;
}

// Bob's reveal checks: per-box PR relation, the commit parity condition, and
// consistency of the revealed outputs with the commit message A.
bool reveal_accepted(int claimed_c, const std::vector<int>& x, const std::vector<int>& a, int A,
                     const std::vector<int>& y, const std::vector<int>& b) {
    const int m = int(x.size());
    for (int i = 0; i < m; ++i)
        if ((a[i] ^ b[i]) != (x[i] & y[i])) return false;
    std::vector<int> prefix(x.begin(), x.end() - 1);
    if ((count11(prefix) + x.back() + claimed_c) % 2 != 0) return false;
    return parity_of(a) == A;
}

}  // namespace

BcTranscript bc_honest_run(int c, int n, int k, uint64_t seed) {
    if ((c & ~1) || n < 1 || k < 1) throw BadParam("bc_honest_run wants c in {0,1}, n,k >= 1");
    std::mt19937_64 rng(seed);
    BcTranscript t;
    t.c = c;
    t.n = n;
    t.k = k;
    t.accepted = true;
    const int m = 2 * n + 1;
    for (int round = 0; round < k; ++round) {
        BcRound r;
        r.x.resize(m);
        r.a.resize(m);
        r.y.resize(m);
        r.b.resize(m);
        for (int i = 0; i < m - 1; ++i) r.x[i] = int(rng() & 1);
        std::vector<int> prefix(r.x.begin(), r.x.end() - 1);
        r.x[m - 1] = (count11(prefix) + c) % 2;
        for (int i = 0; i < m; ++i) {
            r.a[i] = int(rng() & 1);
            r.y[i] = int(rng() & 1);
            r.b[i] = r.a[i] ^ (r.x[i] & r.y[i]);
        }
        r.commit_message = parity_of(r.a);
        t.accepted = t.accepted && reveal_accepted(c, r.x, r.a, r.commit_message, r.y, r.b);
        t.rounds.push_back(std::move(r));
    }
    return t;
}

Rat bc_tamper_acceptance_probability(int n) {
    if (n < 1 || n > 2) throw TooLarge("tamper analysis capped at n <= 2");
    const int m = 2 * n + 1;
    // Alice reveals x with the last bit flipped (and the matching bit value
    // claim), keeping a unchanged; count accepting y's exactly.
    long accepted = 0, total = 0;
    for (int xfirst = 0; xfirst < (1 << (m - 1)); ++xfirst) {
        std::vector<int> x(m);
        for (int i = 0; i < m - 1; ++i) x[i] = (xfirst >> i) & 1;
        std::vector<int> prefix(x.begin(), x.end() - 1);
        x[m - 1] = count11(prefix) % 2;  // honest commitment to c = 0
        for (int ybits = 0; ybits < (1 << m); ++ybits) {
            std::vector<int> y(m), a(m, 0), b(m);
            for (int i = 0; i < m; ++i) {
                y[i] = (ybits >> i) & 1;
                b[i] = a[i] ^ (x[i] & y[i]);
            }
            std::vector<int> forged = x;
            forged[m - 1] ^= 1;
            ++total;
            if (reveal_accepted(1, forged, a, parity_of(a), y, b)) ++accepted;
        }
    }
    return Rat(accepted, total);
}

Rat bc_honest_accept_probability(int n, int c) {
    if (n < 1 || n > 2) throw TooLarge("honest enumeration capped at n <= 2");
    if (c & ~1) throw BadParam("c must be a bit");
    const int m = 2 * n + 1;
    long accepted = 0, total = 0;
    for (int xfirst = 0; xfirst < (1 << (m - 1)); ++xfirst) {
        std::vector<int> x(m);
        for (int i = 0; i < m - 1; ++i) x[i] = (xfirst >> i) & 1;
        std::vector<int> prefix(x.begin(), x.end() - 1);
        x[m - 1] = (count11(prefix) + c) % 2;
        for (int abits = 0; abits < (1 << m); ++abits)
            for (int ybits = 0; ybits < (1 << m); ++ybits) {
                std::vector<int> a(m), y(m), b(m);
                for (int i = 0; i < m; ++i) {
                    a[i] = (abits >> i) & 1;
                    y[i] = (ybits >> i) & 1;
                    b[i] = a[i] ^ (x[i] & y[i]);
                }
                ++total;
                accepted += reveal_accepted(c, x, a, parity_of(a), y, b);
            }
    }
    return Rat(accepted, total);
}

Rat bc_hiding_bound(int n, int k) { return Rat(1, 2) + Rat(k, BigInt(1) << (n + 1)); }

Rat bc_binding_curve(int k) {
    if (k < 1) throw BadParam("binding curve wants k >= 1");
    return Rat(1, 2) + Rat(1, BigInt(1) << (k - 1));
}

Rat bc_hiding_advantage(int n, int k) {
    if (k == 0) return Rat(1, 2);
    if (n < 1 || n > 2 || k < 0 || k > 2) throw TooLarge("hiding enumeration capped at n, k <= 2");
    const int m = 2 * n + 1;
    const int views = 1 << (m + 1);  // (b vector, A)
    // Per input string y and commit bit c: the exact distribution of Bob's
    // pre-reveal view, counted in atoms of 1/2^(2n + m), enumerating Alice's
    // free x bits and all box branches.
    std::vector<std::array<std::vector<int64_t>, 2>> view_count(size_t(1) << m);
    for (int ybits = 0; ybits < (1 << m); ++ybits) {
        for (int c = 0; c < 2; ++c) {
            std::vector<int64_t> dist(views, 0);
            for (int xfirst = 0; xfirst < (1 << (m - 1)); ++xfirst) {
                std::vector<int> x(m);
                for (int i = 0; i < m - 1; ++i) x[i] = (xfirst >> i) & 1;
                std::vector<int> prefix(x.begin(), x.end() - 1);
                x[m - 1] = (count11(prefix) + c) % 2;
                for (int abits = 0; abits < (1 << m); ++abits) {
                    int bvec = 0, A = 0;
                    for (int i = 0; i < m; ++i) {
                        int ai = (abits >> i) & 1;
                        A ^= ai;
                        bvec |= (ai ^ (x[i] & ((ybits >> i) & 1))) << i;
                    }
                    ++dist[bvec | (A << m)];
                }
            }
            view_count[ybits][c] = std::move(dist);
        }
    }
    // Optimal guess over per-round input choices: 1/2 sum over joint views of
    // the larger of the two likelihoods.
    const BigInt atom_den = BigInt(1) << ((m - 1) + m);
    int64_t best = 0;
    if (k == 1) {
        for (int y1 = 0; y1 < (1 << m); ++y1) {
            int64_t value = 0;
            for (int v = 0; v < views; ++v) value += std::max(view_count[y1][0][v], view_count[y1][1][v]);
            best = std::max(best, value);
        }
        return Rat(best, 2 * atom_den);
    }
    for (int y1 = 0; y1 < (1 << m); ++y1)
        for (int y2 = 0; y2 < (1 << m); ++y2) {
            int64_t value = 0;
            for (int v1 = 0; v1 < views; ++v1) {
                int64_t p1 = view_count[y1][0][v1], q1 = view_count[y1][1][v1];
                if (p1 == 0 && q1 == 0) continue;
                for (int v2 = 0; v2 < views; ++v2)
                    value += std::max(p1 * view_count[y2][0][v2], q1 * view_count[y2][1][v2]);
            }
            best = std::max(best, value);
        }
    return Rat(best, 2 * atom_den * atom_den);
}

Rat bc_binding_advantage(int n, int k) {
    if (n < 1 || n > 2 || k < 1 || k > 2) throw TooLarge("binding enumeration capped at n, k <= 2");
    const int m = 2 * n + 1;
    // One round, committed bit 0 (symmetric in c): Alice sees (x, a, A) and
    // picks a reveal (x', a') claiming bit 1. Every position where x' differs
    // from x passes with probability 1/2 over Bob's y bit; unmodified
    // positions force a' = a; the A consistency check is parity of a'.
    Rat round_total(0);
    const Rat view_weight(1, BigInt(1) << ((m - 1) + m));
    for (int xfirst = 0; xfirst < (1 << (m - 1)); ++xfirst) {
        std::vector<int> x(m);
        for (int i = 0; i < m - 1; ++i) x[i] = (xfirst >> i) & 1;
        std::vector<int> prefix(x.begin(), x.end() - 1);
        x[m - 1] = count11(prefix) % 2;
        for (int abits = 0; abits < (1 << m); ++abits) {
            int A = __builtin_popcount(abits) & 1;
            Rat view_best(0);
            for (int xp = 0; xp < (1 << m); ++xp) {
                std::vector<int> fx(m);
                for (int i = 0; i < m; ++i) fx[i] = (xp >> i) & 1;
                std::vector<int> fprefix(fx.begin(), fx.end() - 1);
                if ((count11(fprefix) + fx[m - 1] + 1) % 2 != 0) continue;  // must open bit 1
                for (int ap = 0; ap < (1 << m); ++ap) {
                    if ((__builtin_popcount(ap) & 1) != A) continue;  // commit message check
                    int modified = 0;
                    bool dead = false;
                    for (int i = 0; i < m && !dead; ++i) {
                        bool xdiff = fx[i] != x[i];
                        bool adiff = ((ap >> i) & 1) != ((abits >> i) & 1);
                        if (xdiff) ++modified;
                        else if (adiff) dead = true;  // unmodified box check fails surely
                    }
                    if (dead) continue;
                    Rat success = Rat(1, BigInt(1) << modified);
                    view_best = std::max(view_best, success);
                }
            }
            round_total += view_weight * view_best;
        }
    }
    // Rounds are independent and every round's reveal must pass, so the
    // k-round optimum is the per-round optimum to the k-th power.
    Rat result(1);
    for (int i = 0; i < k; ++i) result *= round_total;
    return result;
}

}  // namespace nlbox
