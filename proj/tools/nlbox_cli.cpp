// Command-line surface for the non-local box toolkit: box classification,
// distillation sweeps, the two-copy wiring search, game values, the
// communication-complexity constructions and the PR-box protocols.

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nlbox/crypto.hpp"
#include "nlbox/distcomp.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/games.hpp"
#include "nlbox/multigen.hpp"
#include "nlbox/polytope.hpp"
#include "nlbox/wiring.hpp"

namespace {

using namespace nlbox;

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(9) << v;
    return os.str();
}

Box load_box(const std::string& mnemonic, const std::string& path) {
    if (!mnemonic.empty()) return named_box(mnemonic);
    if (!path.empty()) return read_box_file(path);
    throw BadParam("need --box or --file");
}

std::string bits8(uint8_t mask) {
    std::string s(8, '0');
    for (int i = 0; i < 8; ++i)
        if ((mask >> i) & 1) s[i] = '1';
    return s;
}

uint64_t parse_hex(const std::string& hex) {
    uint64_t value = 0;
    std::istringstream is(hex);
    is >> std::hex >> value;
    if (is.fail() || !is.eof()) throw BadParam("--fn wants a hex truth table, got '" + hex + "'");
    return value;
}

int cmd_classify(const std::string& mnemonic, const std::string& path, double tol) {
    Box box = load_box(mnemonic, path);
    if (!is_nonsignalling(box).ok) {
        std::cout << "class=Signalling\n";
        return 0;
    }
    BoxClass tier = is_local(box)                      ? BoxClass::Local
                    : quantum_arcsin_test(box, tol).pass ? BoxClass::QuantumConsistent
                                                         : BoxClass::SuperQuantumNS;
    std::cout << "class=" << to_string(tier) << "\n";
    return 0;
}

int cmd_chsh(const std::string& mnemonic, const std::string& path) {
    std::cout << "chsh=" << rat_str(chsh(load_box(mnemonic, path))) << "\n";
    return 0;
}

int cmd_depolarize(const std::string& mnemonic, const std::string& path, bool canonical) {
    Box box = load_box(mnemonic, path);
    if (canonical) box = canonicalize(box);
    Box out = depolarize(box);
    std::cout << "# eps=" << rat_str(isotropic_parameter(out)) << "\n";
    write_box(std::cout, out);
    return 0;
}

int cmd_decompose(const std::string& mnemonic, const std::string& path) {
    Box box = load_box(mnemonic, path);
    auto d = local_decompose(box);
    if (!d) {
        std::cout << "local=false\n";
        return 0;
    }
    std::cout << "local=true\n";
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int delta = 0; delta < 2; ++delta)
                    std::cout << alpha << beta << gamma << delta << " "
                              << rat_str(d->weights[alpha | (beta << 1) | (gamma << 2) | (delta << 3)]) << "\n";
    return 0;
}

Rat fww_formula(int n, const Rat& eps) { return 3 - rat_pow(1 - 2 * eps, unsigned(n)); }
Rat bs_formula(const Rat& eps) { return 3 * eps - eps * eps + 2; }

int cmd_distill(const std::string& protocol, const std::vector<std::string>& eps_list, const std::vector<int>& n_list,
                int iterate_steps) {
    if (eps_list.empty()) throw BadParam("need at least one --eps");
    if (protocol == "bs" && iterate_steps > 0) {
        std::cout << "protocol,eps,n,chsh_in,chsh_out,formula,match,crossed_bcc\n";
        for (const std::string& eps_text : eps_list) {
            auto eps_path = iterate_bs_eps(parse_rat(eps_text), iterate_steps);
            for (int step = 1; step <= iterate_steps; ++step) {
                Rat in = 2 * (eps_path[step - 1] + 1);
                Rat out = 2 * (eps_path[step] + 1);
                Rat formula = bs_formula(eps_path[step - 1]);
                bool crossed = out * out > Rat(32, 3);
                std::cout << "bs," << rat_str(eps_path[step - 1]) << "," << step << "," << rat_str(in) << ","
                          << rat_str(out) << "," << rat_str(formula) << "," << (out == formula ? "true" : "false")
                          << "," << (crossed ? "true" : "false") << "\n";
            }
        }
        return 0;
    }
    std::cout << "protocol,eps,n,chsh_in,chsh_out,formula,match\n";
    if (protocol == "fww") {
        if (n_list.empty()) throw BadParam("fww needs --n");
        for (int n : n_list)
            for (const std::string& eps_text : eps_list) {
                Rat eps = parse_rat(eps_text);
                Box box = correlated_box(eps);
                Rat out = chsh(compose(fww(n), std::vector<Box>(size_t(n), box)));
                Rat formula = fww_formula(n, eps);
                std::cout << "fww," << rat_str(eps) << "," << n << "," << rat_str(chsh(box)) << "," << rat_str(out)
                          << "," << rat_str(formula) << "," << (out == formula ? "true" : "false") << "\n";
            }
        return 0;
    }
    if (protocol == "bs") {
        for (const std::string& eps_text : eps_list) {
            Rat eps = parse_rat(eps_text);
            Box box = correlated_box(eps);
            Rat out = chsh(compose(bs2(), {box, box}));
            Rat formula = bs_formula(eps);
            std::cout << "bs," << rat_str(eps) << ",2," << rat_str(chsh(box)) << "," << rat_str(out) << ","
                      << rat_str(formula) << "," << (out == formula ? "true" : "false") << "\n";
        }
        return 0;
    }
    throw BadParam("unknown protocol '" + protocol + "'");
}

int cmd_short_search(const std::string& mnemonic, const std::string& path, int threads) {
    Box box = load_box(mnemonic, path);
    auto r = max_chsh_over_wirings(box, threads);
    std::cout << "chsh_in=" << rat_str(chsh(box)) << "\n";
    std::cout << "max_chsh=" << rat_str(r.value) << "\n";
    std::cout << "strategies_per_side=" << enumerate_side_strategies2().size() << "\n";
    const auto& sa = enumerate_side_strategies2()[r.alice_index];
    const auto& sb = enumerate_side_strategies2()[r.bob_index];
    std::cout << "alice_u0=" << bits8(sa.u0) << "\nalice_u1=" << bits8(sa.u1) << "\nalice_out=" << bits8(sa.out)
              << "\n";
    std::cout << "bob_u0=" << bits8(sb.u0) << "\nbob_u1=" << bits8(sb.u1) << "\nbob_out=" << bits8(sb.out) << "\n";
    return 0;
}

void report_xor_game(const XorGame& g, int restarts, double tol, uint64_t seed) {
    Rat wc = classical_value(g);
    Rat tau = trivial_value(g);
    double wq = xor_quantum_value(g, restarts, tol, seed);
    std::cout << "xor=true\n";
    std::cout << "seed=" << seed << "\n";
    std::cout << "omega_c=" << rat_str(wc) << "\n";
    std::cout << "tau=" << rat_str(tau) << "\n";
    std::cout << "omega_q=" << fmt_double(wq) << "\n";
    if (wc == tau) {
        std::cout << "degenerate=true\n";
    } else {
        std::cout << "ratio=" << fmt_double((wq - rat_double(tau)) / rat_double(wc - tau)) << "\n";
        std::cout << "kg_high=" << fmt_double(GameBounds::kg_high()) << "\n";
    }
    std::cout << "thm8=" << (thm8_check(g, restarts, tol, seed) ? "true" : "false") << "\n";
}

int cmd_game(const std::string& path, int restarts, double tol, uint64_t seed) {
    Game g = read_game_file(path);
    if (auto xg = as_xor_game(g)) {
        report_xor_game(*xg, restarts, tol, seed);
    } else {
        std::cout << "xor=false\n";
        std::cout << "omega_c=" << rat_str(classical_value(g)) << "\n";
    }
    return 0;
}

int cmd_nlc(int bits, const std::string& fn_hex, int restarts, double tol, uint64_t seed) {
    uint64_t value = parse_hex(fn_hex);
    std::vector<uint8_t> table(size_t(1) << bits);
    for (size_t i = 0; i < table.size(); ++i) table[i] = (value >> i) & 1;
    report_xor_game(nlc_game(table), restarts, tol, seed);
    return 0;
}

int cmd_vandam(int bits, const std::string& fn_hex, bool check_all, int x, int y, uint64_t seed) {
    BoolFn f = BoolFn::bipartite(bits, parse_hex(fn_hex));
    FactoredForm form = factor_bipartite(f);
    std::cout << "terms=" << form.terms.size() << "\n";
    if (check_all) {
        std::cout << "verified=" << (van_dam_check_all(f) ? "true" : "false") << "\n";
        return 0;
    }
    if (x < 0 || y < 0) throw BadParam("need --x and --y (or --check-all)");
    std::mt19937_64 rng(seed);
    auto [a, b] = van_dam_run(f, uint32_t(x), uint32_t(y), rng);
    std::cout << "a=" << a << "\nb=" << b << "\nxor=" << (a ^ b)
              << "\nf=" << int(f.eval(uint32_t(x) | (uint32_t(y) << bits))) << "\n";
    return 0;
}

int cmd_bp(int n, const std::string& fn_hex, bool dump) {
    BoolFn f = BoolFn::nparty(n, parse_hex(fn_hex));
    NPartyBox sim = bp_simulate(f);
    std::cout << "match=" << (sim.table == bp_target(f).table ? "true" : "false") << "\n";
    std::cout << "nonsignalling=" << (nparty_nonsignalling(sim) ? "true" : "false") << "\n";
    std::cout << "uniform_marginals=" << (nparty_uniform_marginals(sim) ? "true" : "false") << "\n";
    std::cout << "reconstruction=" << (bp_reconstruction_works(f) ? "true" : "false") << "\n";
    if (dump)
        for (uint32_t xbits = 0; xbits < (uint32_t(1) << n); ++xbits)
            for (uint32_t a = 0; a < (uint32_t(1) << n); ++a)
                if (sim.p(a, xbits) != 0) std::cout << a << " " << xbits << " " << rat_str(sim.p(a, xbits)) << "\n";
    return 0;
}

int cmd_ot_demo() {
    bool correct = true;
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int c = 0; c < 2; ++c)
                for (const OTRun& r : ot_run(x0, x1, c)) correct = correct && r.receiver_output == (c ? x1 : x0);
    auto privacy = ot_privacy_report();
    auto attack = ot_reduction_attack();
    std::cout << "correct=" << (correct ? "true" : "false") << "\n";
    std::cout << "sender_leak=" << rat_str(privacy.sender_leak) << "\n";
    std::cout << "receiver_leak=" << rat_str(privacy.receiver_leak) << "\n";
    std::cout << "reduction_honest=" << rat_str(attack.honest_success) << "\n";
    std::cout << "reduction_cheating=" << rat_str(attack.cheating_success) << "\n";
    std::cout << "sender_view_distance=" << rat_str(attack.sender_view_distance) << "\n";
    return 0;
}

int cmd_bc_demo(int n, int k, int bit, uint64_t seed) {
    BcTranscript t = bc_honest_run(bit, n, k, seed);
    std::cout << "accepted=" << (t.accepted ? "true" : "false") << "\n";
    for (int round = 0; round < k; ++round) std::cout << "round" << round << "_A=" << t.rounds[round].commit_message << "\n";
    return 0;
}

int cmd_bc_analyze(int n, int k) {
    std::cout << "hiding=" << rat_str(bc_hiding_advantage(n, k)) << "\n";
    std::cout << "hiding_bound=" << rat_str(bc_hiding_bound(n, k)) << "\n";
    std::cout << "binding=" << rat_str(bc_binding_advantage(n, k)) << "\n";
    std::cout << "binding_curve=" << rat_str(bc_binding_curve(k)) << "\n";
    return 0;
}

TriBox load_tribox(const std::string& name, const std::string& path) {
    if (!path.empty()) return read_tribox_file(path);
    if (name == "xor") return tri_xor_vertex();
    if (name == "det") return tri_deterministic();
    if (name == "pr-det") return tri_pr_deterministic();
    if (name == "uniform") return tri_uniform();
    throw BadParam("unknown tripartite box '" + name + "' (xor, det, pr-det, uniform, or --file)");
}

int cmd_tri(const std::string& name, const std::string& path, bool dimension) {
    if (dimension) {
        std::cout << "dimension=" << tri_dimension() << "\n";
        return 0;
    }
    TriBox box = load_tribox(name, path);
    auto ns = tri_nonsignalling(box);
    std::cout << "nonsignalling_weak=" << (ns.weak ? "true" : "false") << "\n";
    std::cout << "nonsignalling_strong=" << (ns.strong ? "true" : "false") << "\n";
    if (!ns.strong) return 0;
    std::cout << "fully_local=" << (tri_fully_local(box) ? "true" : "false") << "\n";
    std::cout << "two_way_local=" << (tri_two_way_local(box) ? "true" : "false") << "\n";
    return 0;
}

int cmd_genbox(int k, int da, int db, int project, int compose_with, bool dimension, const std::string& path) {
    if (dimension) {
        std::cout << "dimension=" << genbox_ns_dimension(da > 0 ? da : 2, db > 0 ? db : 2) << "\n";
        return 0;
    }
    GenBox box = path.empty() ? d_output_vertex(k, da > 0 ? da : k, db > 0 ? db : k) : read_genbox_file(path);
    if (compose_with > 0) box = compose_coprime(box, d_output_vertex(compose_with));
    if (project > 0) box = project_mod(box, project);
    std::cout << "nonsignalling=" << (genbox_nonsignalling(box) ? "true" : "false") << "\n";
    write_genbox(std::cout, box);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact non-local box toolkit"};
    app.require_subcommand(1);

    std::string box_name, file_path, protocol, fn_hex, tri_name;
    std::vector<std::string> eps_list;
    std::vector<int> n_list;
    int threads = 0, restarts = 200, bits = 2, nparties = 3, bc_n = 1, bc_k = 1, bc_bit = 0;
    int vd_x = -1, vd_y = -1, iterate_steps = 0;
    int gen_k = 2, gen_da = 0, gen_db = 0, gen_project = 0, gen_compose = 0;
    bool check_all = false, canonical = false, dump = false, want_dimension = false;
    double tol = 1e-10;
    uint64_t seed = 1;

    auto* classify_cmd =
        app.add_subcommand("classify", "tier of a box: Signalling/Local/QuantumConsistent/SuperQuantumNS");
    classify_cmd->add_option("--box", box_name, "named box (pr, antipr, c, uniform, iso:p/q, corr:p/q, vertex:bits)");
    classify_cmd->add_option("--file", file_path, "box file");
    double arcsin_tol = 1e-9;
    classify_cmd->add_option("--tol", arcsin_tol, "arcsin-test tolerance");

    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value of a box");
    chsh_cmd->add_option("--box", box_name);
    chsh_cmd->add_option("--file", file_path);

    auto* dep_cmd = app.add_subcommand("depolarize", "project a box onto the isotropic family");
    dep_cmd->add_option("--box", box_name);
    dep_cmd->add_option("--file", file_path);
    dep_cmd->add_flag("--canonicalize", canonical, "move the maximizing symmetrization to canonical position first");

    auto* dec_cmd = app.add_subcommand("decompose", "exact local-vertex decomposition, if one exists");
    dec_cmd->add_option("--box", box_name);
    dec_cmd->add_option("--file", file_path);

    auto* distill_cmd = app.add_subcommand("distill", "distillation protocols on the correlated family (CSV)");
    distill_cmd->add_option("--protocol", protocol, "fww or bs")
        ->required()
        ->check(CLI::IsMember({"fww", "bs"}));
    distill_cmd->add_option("--eps", eps_list, "correlated-box parameter p/q (repeatable)");
    distill_cmd->add_option("--n", n_list, "box count for fww (repeatable)");
    distill_cmd->add_option("--iterate", iterate_steps, "bs only: iterate this many steps");

    auto* search_cmd = app.add_subcommand("short-search", "exhaustive two-box wiring search");
    search_cmd->add_option("--box", box_name);
    search_cmd->add_option("--file", file_path);
    search_cmd->add_option("--threads", threads, "worker cap (0 = hardware)");

    auto* game_cmd = app.add_subcommand("game", "game values from a game file");
    game_cmd->add_option("--file", file_path)->required();
    game_cmd->add_option("--restarts", restarts);
    game_cmd->add_option("--tol", tol);
    game_cmd->add_option("--seed", seed);

    auto* nlc_cmd = app.add_subcommand("nlc", "non-local computation game of f");
    nlc_cmd->add_option("--bits", bits, "input width m of f")->required();
    nlc_cmd->add_option("--fn", fn_hex, "truth table of f, hex")->required();
    nlc_cmd->add_option("--restarts", restarts);
    nlc_cmd->add_option("--tol", tol);
    nlc_cmd->add_option("--seed", seed);

    auto* vd_cmd = app.add_subcommand("vandam", "distributed computation with one PR box per term");
    vd_cmd->add_option("--bits", bits, "bits per side");
    vd_cmd->add_option("--fn", fn_hex, "truth table of f, hex")->required();
    vd_cmd->add_flag("--check-all", check_all, "verify all inputs over all branches");
    vd_cmd->add_option("--x", vd_x);
    vd_cmd->add_option("--y", vd_y);
    vd_cmd->add_option("--seed", seed);

    auto* bp_cmd = app.add_subcommand("bp", "n-party parity-correlation simulation");
    bp_cmd->add_option("--n", nparties, "party count")->required();
    bp_cmd->add_option("--fn", fn_hex, "truth table of f, hex")->required();
    bp_cmd->add_flag("--dump", dump, "print the nonzero table entries");

    auto* ot_cmd = app.add_subcommand("ot", "oblivious transfer protocol analysis");
    auto* ot_demo = ot_cmd->add_subcommand("demo", "run and analyze the 1-2 OT protocol");
    (void)ot_demo;

    auto* bc_cmd = app.add_subcommand("bc", "bit-commitment protocol analysis");
    auto* bc_demo = bc_cmd->add_subcommand("demo", "honest commit/reveal run");
    bc_demo->add_option("--n", bc_n)->required();
    bc_demo->add_option("--k", bc_k)->required();
    bc_demo->add_option("--bit", bc_bit)->required();
    bc_demo->add_option("--seed", seed);
    auto* bc_an = bc_cmd->add_subcommand("analyze", "exact adversary advantages next to the reference bounds");
    bc_an->add_option("--n", bc_n)->required();
    bc_an->add_option("--k", bc_k)->required();

    auto* tri_cmd = app.add_subcommand("tri", "tripartite box checks");
    tri_cmd->add_option("--box", tri_name, "xor, det, pr-det, uniform");
    tri_cmd->add_option("--file", file_path);
    tri_cmd->add_flag("--dimension", want_dimension, "print the tripartite polytope dimension");

    auto* gen_cmd = app.add_subcommand("genbox", "d-output boxes and interconversions");
    gen_cmd->add_option("--vertex", gen_k, "k of the d-output vertex");
    gen_cmd->add_option("--da", gen_da);
    gen_cmd->add_option("--db", gen_db);
    gen_cmd->add_option("--project", gen_project, "reduce outputs mod d");
    gen_cmd->add_option("--compose", gen_compose, "CRT-compose with the d'-output vertex");
    gen_cmd->add_flag("--dimension", want_dimension, "print the polytope dimension for (da, db)");
    gen_cmd->add_option("--file", file_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(box_name, file_path, arcsin_tol);
        if (chsh_cmd->parsed()) return cmd_chsh(box_name, file_path);
        if (dep_cmd->parsed()) return cmd_depolarize(box_name, file_path, canonical);
        if (dec_cmd->parsed()) return cmd_decompose(box_name, file_path);
        if (distill_cmd->parsed()) return cmd_distill(protocol, eps_list, n_list, iterate_steps);
        if (search_cmd->parsed()) return cmd_short_search(box_name, file_path, threads);
        if (game_cmd->parsed()) return cmd_game(file_path, restarts, tol, seed);
        if (nlc_cmd->parsed()) return cmd_nlc(bits, fn_hex, restarts, tol, seed);
        if (vd_cmd->parsed()) return cmd_vandam(bits, fn_hex, check_all, vd_x, vd_y, seed);
        if (bp_cmd->parsed()) return cmd_bp(nparties, fn_hex, dump);
        if (ot_cmd->parsed()) return cmd_ot_demo();
        if (bc_cmd->parsed()) {
            if (bc_demo->parsed()) return cmd_bc_demo(bc_n, bc_k, bc_bit, seed);
            if (bc_an->parsed()) return cmd_bc_analyze(bc_n, bc_k);
            std::cerr << bc_cmd->help() << "\n";
            return 2;
        }
        if (tri_cmd->parsed()) return cmd_tri(tri_name, file_path, want_dimension);
        if (gen_cmd->parsed())
            return cmd_genbox(gen_k, gen_da, gen_db, gen_project, gen_compose, want_dimension, file_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help() << "\n";
    return 2;
}
