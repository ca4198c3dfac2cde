#include "nlbox/distcomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nlbox/errors.hpp"

namespace nlbox {

int BoolFn::total_bits() const {
    int total = 0;
    for (int a : arity) total += a;
    return total;
}

bool BoolFn::well_formed() const {
    if (arity.empty()) return false;
    for (int a : arity)
        if (a < 1) return false;
    int total = total_bits();
    return total <= 24 && table.size() == (size_t(1) << total);
}

BoolFn BoolFn::bipartite(int n, uint64_t truth_bits) {
    BoolFn f;
    f.arity = {n, n};
    f.table.resize(size_t(1) << (2 * n));
    for (size_t i = 0; i < f.table.size(); ++i) f.table[i] = (truth_bits >> i) & 1;
    return f;
}

BoolFn BoolFn::nparty(int n, uint64_t truth_bits) {
    BoolFn f;
    f.arity.assign(n, 1);
    f.table.resize(size_t(1) << n);
    for (size_t i = 0; i < f.table.size(); ++i) f.table[i] = (truth_bits >> i) & 1;
    return f;
}

std::vector<uint32_t> anf(const BoolFn& f) {
    if (!f.well_formed()) throw BadParam("malformed BoolFn");
    std::vector<uint8_t> coeff = f.table;
    const int bits = f.total_bits();
    // In-place Moebius transform.
    for (int b = 0; b < bits; ++b) {
        const uint32_t step = uint32_t(1) << b;
        for (uint32_t i = 0; i < coeff.size(); ++i)
            if (i & step) coeff[i] ^= coeff[i ^ step];
    }
    std::vector<uint32_t> monomials;
    for (uint32_t m = 0; m < coeff.size(); ++m)
        if (coeff[m] & 1) monomials.push_back(m);
    return monomials;
}

uint8_t eval_anf(const std::vector<uint32_t>& monomials, uint32_t input) {
    uint8_t acc = 0;
    for (uint32_t m : monomials) acc ^= ((input & m) == m);
    return acc;
}

uint8_t FactoredForm::eval(uint32_t x, uint32_t y) const {
    uint8_t acc = uint8_t(constant & 1);
    for (const Term& t : terms) acc ^= t.p(x) & t.q(y);
    return acc;
}

FactoredForm factor_bipartite(const BoolFn& f) {
    if (f.arity.size() != 2) throw BadParam("factor_bipartite wants a two-party function");
    const int nx = f.arity[0];
    FactoredForm form;
    std::map<uint32_t, std::vector<uint32_t>> by_y;  // y-monomial -> list of x-parts
    for (uint32_t m : anf(f)) {
        uint32_t x_part = m & ((uint32_t(1) << nx) - 1);
        uint32_t y_part = m >> nx;
        if (m == 0) {
            form.constant ^= 1;
            continue;
        }
        by_y[y_part].push_back(x_part);
    }
    for (auto& [y_mon, x_parts] : by_y) form.terms.push_back({std::move(x_parts), y_mon});
    return form;
}

bool factored_valid(const BoolFn& f, const FactoredForm& form) {
    const int nx = f.arity[0], ny = f.arity[1];
    for (uint32_t x = 0; x < (uint32_t(1) << nx); ++x)
        for (uint32_t y = 0; y < (uint32_t(1) << ny); ++y)
            if (form.eval(x, y) != f.eval(x | (y << nx))) return false;
    return true;
}

std::pair<int, int> van_dam_run(const BoolFn& f, uint32_t x, uint32_t y, std::mt19937_64& rng) {
    FactoredForm form = factor_bipartite(f);
    int a = form.constant, b = 0;
    for (const auto& term : form.terms) {
        // Perfect PR box: Alice's outcome is a fair coin, Bob's completes
        // a_i (+) b_i = P_i(x) Q_i(y).
        int ai = int(rng() & 1);
        int bi = ai ^ (term.p(x) & term.q(y));
        a ^= ai;
        b ^= bi;
    }
    return {a, b};
}

bool van_dam_check_all(const BoolFn& f) {
    FactoredForm form = factor_bipartite(f);
    const int nx = f.arity[0], ny = f.arity[1];
    const size_t boxes = form.terms.size();
    for (uint32_t x = 0; x < (uint32_t(1) << nx); ++x) {
        for (uint32_t y = 0; y < (uint32_t(1) << ny); ++y) {
            const uint8_t want = f.eval(x | (y << nx));
            for (uint32_t branch = 0; branch < (uint32_t(1) << boxes); ++branch) {
                int a = form.constant, b = 0;
                for (size_t i = 0; i < boxes; ++i) {
                    int ai = (branch >> i) & 1;
                    int bi = ai ^ (form.terms[i].p(x) & form.terms[i].q(y));
                    a ^= ai;
                    b ^= bi;
                }
                if ((a ^ b) != want) return false;
            }
        }
    }
    return true;
}

Rat van_dam_noisy_success(const BoolFn& f, uint32_t x, uint32_t y, const Rat& eps) {
    if (eps < 0 || eps > 1) throw BadParam("eps outside [0,1]");
    FactoredForm form = factor_bipartite(f);
    const int nx = f.arity[0];
    const uint8_t want = f.eval(x | (y << nx));
    const size_t boxes = form.terms.size();
    // Sum over error patterns: each isotropic box flips its PR relation with
    // probability 1 - eps, independently. The branch coin of each box
    // marginalizes out, so only error patterns matter.
    Rat success(0);
    for (uint32_t errs = 0; errs < (uint32_t(1) << boxes); ++errs) {
        Rat weight(1);
        int parity = form.constant;
        for (size_t i = 0; i < boxes; ++i) {
            bool err = (errs >> i) & 1;
            weight *= err ? (1 - eps) : eps;
            parity ^= (form.terms[i].p(x) & form.terms[i].q(y)) ^ int(err);
        }
        // parity = a (+) b for this pattern (a-coins cancel in the XOR).
        if (parity == want) success += weight;
    }
    return success;
}

Rat noisy_parity_success(int m, const Rat& p) {
    if (m < 0) throw BadParam("negative box count");
    if (p < 0 || p > 1) throw BadParam("p outside [0,1]");
    return (1 + rat_pow(2 * p - 1, unsigned(m))) / 2;
}

Rat chsh_of_success(const Rat& p) { return 8 * p - 4; }

namespace {

/// a + b*sqrt(6) with exact rational coefficients.
struct Surd6 {
    Rat a, b;
    Surd6 operator*(const Surd6& o) const { return {a * o.a + 6 * b * o.b, a * o.b + b * o.a}; }
    Surd6 operator-(const Rat& r) const { return {a - r, b}; }
    Surd6 scaled(const Rat& r) const { return {a * r, b * r}; }
};

}  // namespace

BccWitness bcc_constant() {
    // p = (3 + sqrt 6)/6; the claimed threshold is chsh_of_success(p) with
    // square 32/3.
    Surd6 p{Rat(1, 2), Rat(1, 6)};
    Surd6 chsh_val = p.scaled(Rat(8)) - Rat(4);
    Surd6 square = chsh_val * chsh_val;
    bool ok = (square.a == Rat(32, 3)) && (square.b == 0) && (chsh_val.b > 0);
    return {4.0 * std::sqrt(2.0 / 3.0), ok};
}

namespace {

// Straight-line PR-box program. Slots 0..n-1 hold the parties' input bits,
// slot n is a constant zero, and each box appends two slots (alpha at the
// left party, beta = alpha (+) product of the two fed values at the right).
struct ShareProgram {
    int n = 0;
    struct BoxUse {
        int left_party, left_slot;
        int right_party, right_slot;
    };
    std::vector<BoxUse> boxes;
    std::vector<std::vector<int>> held;   // slots XORed into each party's output
    std::vector<uint32_t> local_masks;    // linear ANF part per party
    int constant = 0;                     // degree-0 term, party 0 folds it in

    int const_zero_slot() const { return n; }
    int first_box_slot() const { return n + 1; }
};

ShareProgram build_program(const BoolFn& f) {
    const int n = int(f.arity.size());
    if (n > 4) throw ArityTooLarge("bp_simulate caps at 4 parties");
    for (int a : f.arity)
        if (a != 1) throw BadParam("bp_simulate wants one bit per party");
    ShareProgram prog;
    prog.n = n;
    prog.held.resize(n);
    prog.local_masks.assign(n, 0);
    int next_slot = prog.first_box_slot();
    auto add_box = [&](int lp, int ls, int rp, int rs) {
        prog.boxes.push_back({lp, ls, rp, rs});
        next_slot += 2;
        return std::pair{next_slot - 2, next_slot - 1};  // (alpha slot, beta slot)
    };
    for (uint32_t mon : anf(f)) {
        int degree = __builtin_popcount(mon);
        if (degree > 4) throw ArityTooLarge("monomial degree exceeds cap");
        if (degree == 0) {
            prog.constant ^= 1;
            continue;
        }
        std::vector<int> parties;
        for (int i = 0; i < n; ++i)
            if ((mon >> i) & 1) parties.push_back(i);
        if (degree == 1) {
            prog.local_masks[parties[0]] ^= 1;
            continue;
        }
        // Share chain: shares of the running product get re-multiplied by the
        // next party's bit, one PR box per existing share.
        std::vector<std::pair<int, int>> shares{{parties[0], parties[0]}};  // (party, slot)
        for (size_t j = 1; j < parties.size(); ++j) {
            int newcomer = parties[j];
            std::vector<std::pair<int, int>> next;
            for (auto [party, slot] : shares) {
                auto [alpha, beta] = add_box(party, slot, newcomer, newcomer);
                next.push_back({party, alpha});
                next.push_back({newcomer, beta});
            }
            shares = std::move(next);
        }
        for (auto [party, slot] : shares) prog.held[party].push_back(slot);
    }
    // Randomization chain: one constant-input box per adjacent pair hands the
    // two parties a shared uniform bit. These cancel in the global parity but
    // spread the output over the whole 1/2^(n-1) manifold, whatever the
    // function shares look like.
    for (int i = 0; i + 1 < n; ++i) {
        auto [alpha, beta] = add_box(i, prog.const_zero_slot(), i + 1, prog.const_zero_slot());
        prog.held[i].push_back(alpha);
        prog.held[i + 1].push_back(beta);
    }
    if (prog.boxes.size() > 22) throw ArityTooLarge("share chain needs too many boxes to enumerate");
    return prog;
}

}  // namespace

NPartyBox bp_simulate(const BoolFn& f) {
    ShareProgram prog = build_program(f);
    const int n = prog.n;
    NPartyBox out;
    out.n = n;
    out.table.assign(size_t(1) << (2 * n), Rat(0));
    const size_t num_boxes = prog.boxes.size();
    const Rat branch_weight(1, BigInt(1) << num_boxes);
    std::vector<int> slots(prog.first_box_slot() + 2 * num_boxes);
    for (uint32_t x = 0; x < (uint32_t(1) << n); ++x) {
        for (uint32_t branch = 0; branch < (uint32_t(1) << num_boxes); ++branch) {
            for (int i = 0; i < n; ++i) slots[i] = (x >> i) & 1;
            slots[prog.const_zero_slot()] = 0;
            for (size_t k = 0; k < num_boxes; ++k) {
                const auto& use = prog.boxes[k];
                int alpha = (branch >> k) & 1;
                int beta = alpha ^ (slots[use.left_slot] & slots[use.right_slot]);
                slots[prog.first_box_slot() + 2 * k] = alpha;
                slots[prog.first_box_slot() + 2 * k + 1] = beta;
            }
            uint32_t a = 0;
            for (int party = 0; party < n; ++party) {
                int bit = (party == 0) ? prog.constant : 0;
                bit ^= prog.local_masks[party] & ((x >> party) & 1);
                for (int slot : prog.held[party]) bit ^= slots[slot];
                a |= uint32_t(bit) << party;
            }
            out.table[a | (x << n)] += branch_weight;
        }
    }
    return out;
}

NPartyBox bp_target(const BoolFn& f) {
    const int n = int(f.arity.size());
    NPartyBox out;
    out.n = n;
    out.table.assign(size_t(1) << (2 * n), Rat(0));
    const Rat on(1, BigInt(1) << (n - 1));
    for (uint32_t x = 0; x < (uint32_t(1) << n); ++x)
        for (uint32_t a = 0; a < (uint32_t(1) << n); ++a)
            if ((__builtin_popcount(a) & 1) == f.eval(x)) out.table[a | (x << n)] = on;
    return out;
}

bool nparty_nonsignalling(const NPartyBox& box) {
    const int n = box.n;
    const uint32_t space = uint32_t(1) << n;
    for (int party = 0; party < n; ++party) {
        const uint32_t flip = uint32_t(1) << party;
        for (uint32_t x = 0; x < space; ++x) {
            if (x & flip) continue;
            // Marginal over this party's output must match for x and x^flip.
            for (uint32_t rest = 0; rest < space; ++rest) {
                if (rest & flip) continue;
                Rat m0(0), m1(0);
                for (int bit = 0; bit < 2; ++bit) {
                    uint32_t a = rest | (uint32_t(bit) << party);
                    m0 += box.p(a, x);
                    m1 += box.p(a, x | flip);
                }
                if (m0 != m1) return false;
            }
        }
    }
    return true;
}

bool nparty_uniform_marginals(const NPartyBox& box) {
    const int n = box.n;
    const uint32_t space = uint32_t(1) << n;
    for (int party = 0; party < n; ++party)
        for (uint32_t x = 0; x < space; ++x) {
            Rat ones(0);
            for (uint32_t a = 0; a < space; ++a)
                if ((a >> party) & 1) ones += box.p(a, x);
            if (ones != Rat(1, 2)) return false;
        }
    return true;
}

bool bp_reconstruction_works(const BoolFn& f) {
    NPartyBox box = bp_simulate(f);
    const int n = box.n;
    const uint32_t space = uint32_t(1) << n;
    for (uint32_t x = 0; x < space; ++x) {
        Rat good(0);
        for (uint32_t a = 0; a < space; ++a)
            if ((__builtin_popcount(a) & 1) == f.eval(x)) good += box.p(a, x);
        if (good != 1) return false;
    }
    return true;
}

}  // namespace nlbox
