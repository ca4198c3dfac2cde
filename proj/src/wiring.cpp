#include "nlbox/wiring.hpp"

#include <sstream>

#include "nlbox/errors.hpp"

namespace nlbox {

bool LocalStrategy::well_formed() const {
    if (n < 1 || order.size() != static_cast<size_t>(n)) return false;
    std::vector<bool> seen(n, false);
    for (int b : order) {
        if (b < 0 || b >= n || seen[b]) return false;
        seen[b] = true;
    }
    if (input_fns.size() != static_cast<size_t>(n)) return false;
    for (int i = 0; i < n; ++i)
        if (input_fns[i].size() != (size_t(1) << (i + 1))) return false;
    return output_fn.size() == (size_t(1) << (n + 1));
}

namespace {

struct ResolvedSide {
    // box_inputs[j] = bit fed to box j; final = output bit.
    std::array<int, 8> box_inputs{};
    int final_bit = 0;
};

// Walks one party's steps for a fixed external input and fixed per-box
// outcomes, resolving what each box was asked and what the party outputs.
ResolvedSide resolve(const LocalStrategy& s, int external, const int* box_outcomes) {
    ResolvedSide r;
    int step_bits = 0;  // outcomes of steps done so far, step i at bit i
    for (int i = 0; i < s.n; ++i) {
        int idx = external | (step_bits << 1);
        int box = s.order[i];
        r.box_inputs[box] = s.input_fns[i][idx];
        step_bits |= box_outcomes[box] << i;
    }
    r.final_bit = s.output_fn[external | (step_bits << 1)];
    return r;
}

Box compose_deterministic(const LocalStrategy& alice, const LocalStrategy& bob, const std::vector<Box>& boxes) {
    const int n = alice.n;
    if (!alice.well_formed() || !bob.well_formed() || bob.n != n)
        throw SizeMismatch("strategy tables malformed or box counts differ");
    if (boxes.size() != static_cast<size_t>(n))
        throw SizeMismatch("wiring expects " + std::to_string(n) + " boxes");
    for (const Box& b : boxes)
        if (!is_nonsignalling(b).ok) throw SignallingInput("compose requires non-signalling boxes");

    Box out;
    out.t.fill(Rat(0));
    const int branches = 1 << (2 * n);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int br = 0; br < branches; ++br) {
                int a_out[8], b_out[8];
                for (int j = 0; j < n; ++j) {
                    a_out[j] = (br >> (2 * j)) & 1;
                    b_out[j] = (br >> (2 * j + 1)) & 1;
                }
                ResolvedSide ra = resolve(alice, x, a_out);
                ResolvedSide rb = resolve(bob, y, b_out);
                Rat prob(1);
                for (int j = 0; j < n && prob != 0; ++j)
                    prob *= boxes[j].p(a_out[j], b_out[j], ra.box_inputs[j], rb.box_inputs[j]);
                if (prob != 0) out.p(ra.final_bit, rb.final_bit, x, y) += prob;
            }
        }
    }
    return out;
}

}  // namespace

Box compose(const Wiring& wiring, const std::vector<Box>& boxes) {
    if (wiring.components.empty()) return compose_deterministic(wiring.alice, wiring.bob, boxes);
    Rat total(0);
    for (const auto& c : wiring.components) {
        if (c.weight < 0) throw BadWeights("negative shared-randomness weight");
        total += c.weight;
    }
    if (total != 1) throw BadWeights("shared-randomness weights sum to " + rat_str(total));
    Box out;
    out.t.fill(Rat(0));
    for (const auto& c : wiring.components) {
        if (c.weight == 0) continue;
        Box part = compose_deterministic(c.alice, c.bob, boxes);
        for (int i = 0; i < 16; ++i) out.t[i] += c.weight * part.t[i];
    }
    return out;
}

namespace {

LocalStrategy passthrough_strategy(int n) {
    LocalStrategy s;
    s.n = n;
    for (int i = 0; i < n; ++i) {
        s.order.push_back(i);
        std::vector<uint8_t> fn(size_t(1) << (i + 1));
        for (size_t idx = 0; idx < fn.size(); ++idx) fn[idx] = idx & 1;  // feed the external bit
        s.input_fns.push_back(std::move(fn));
    }
    s.output_fn.resize(size_t(1) << (n + 1));
    return s;
}

}  // namespace

Wiring identity_wiring() {
    Wiring w;
    LocalStrategy s = passthrough_strategy(1);
    for (size_t idx = 0; idx < s.output_fn.size(); ++idx) s.output_fn[idx] = (idx >> 1) & 1;
    w.alice = s;
    w.bob = s;
    return w;
}

Wiring fww(int n) {
    if (n < 1) throw BadParam("fww needs n >= 1");
    Wiring w;
    LocalStrategy s = passthrough_strategy(n);
    for (size_t idx = 0; idx < s.output_fn.size(); ++idx) {
        int outcomes = static_cast<int>(idx >> 1);
        s.output_fn[idx] = __builtin_popcount(outcomes) & 1;
    }
    w.alice = s;
    w.bob = s;
    return w;
}

Wiring bs2() {
    Wiring w;
    LocalStrategy s;
    s.n = 2;
    s.order = {0, 1};
    s.input_fns.resize(2);
    s.input_fns[0] = {0, 1};  // first box sees the external bit
    s.input_fns[1].resize(4);
    for (int idx = 0; idx < 4; ++idx) {
        int x = idx & 1, o1 = (idx >> 1) & 1;
        s.input_fns[1][idx] = x & o1;  // second box sees x*a1
    }
    s.output_fn.resize(8);
    for (int idx = 0; idx < 8; ++idx) {
        int o1 = (idx >> 1) & 1, o2 = (idx >> 2) & 1;
        s.output_fn[idx] = o1 ^ o2;
    }
    w.alice = s;
    w.bob = s;
    return w;
}

namespace {

Rat correlated_parameter(const Box& box) {
    // P^C_e has e/2 at the anticorrelated entries of the (1,1) cell.
    Rat eps = 2 * box.p(0, 1, 1, 1);
    if (box == correlated_box(eps)) return eps;
    throw NotCorrelatedForm("composed table is not eps*PR + (1-eps)*C");
}

}  // namespace

std::vector<Rat> iterate_bs_eps(const Rat& eps0, int steps) {
    if (eps0 < 0 || eps0 > 1) throw BadParam("eps outside [0,1]");
    std::vector<Rat> eps_seq{eps0};
    Wiring w = bs2();
    Rat eps = eps0;
    for (int k = 0; k < steps; ++k) {
        Box current = correlated_box(eps);
        Box next = compose(w, {current, current});
        eps = correlated_parameter(next);  // closure check
        eps_seq.push_back(eps);
    }
    return eps_seq;
}

std::vector<Rat> iterate_bs(const Rat& eps0, int steps) {
    std::vector<Rat> chsh_seq;
    for (const Rat& e : iterate_bs_eps(eps0, steps)) chsh_seq.push_back(2 * (e + 1));
    return chsh_seq;
}

LimitReport limit_checks(const Box& box, const Wiring& wiring) {
    int n = wiring.components.empty() ? wiring.alice.n : wiring.components.front().alice.n;
    Box composed = compose(wiring, std::vector<Box>(n, box));
    LimitReport r;
    r.chsh_in = chsh(box);
    r.chsh_out = chsh(composed);
    r.local_preserved = !(r.chsh_in <= 2) || (r.chsh_out <= 2);
    r.strict_preserved = !(r.chsh_in < 4) || (r.chsh_out < 4);
    r.ok = r.local_preserved && r.strict_preserved;
    return r;
}

}  // namespace nlbox
