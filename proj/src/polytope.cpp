#include "nlbox/polytope.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlbox/errors.hpp"

namespace nlbox {

const VertexSet& VertexSet::instance() {
    static const VertexSet set = [] {
        VertexSet s;
        for (int d = 0; d < 2; ++d)
            for (int g = 0; g < 2; ++g)
                for (int b = 0; b < 2; ++b)
                    for (int a = 0; a < 2; ++a) {
                        std::ostringstream label;
                        label << "local:" << a << b << g << d;
                        s.entries.push_back({local_vertex(a, b, g, d), true, {a, b, g, d}, label.str()});
                    }
        for (int g = 0; g < 2; ++g)
            for (int b = 0; b < 2; ++b)
                for (int a = 0; a < 2; ++a) {
                    std::ostringstream label;
                    label << "nonlocal:" << a << b << g;
                    s.entries.push_back({nonlocal_vertex(a, b, g), false, {a, b, g, -1}, label.str()});
                }
        return s;
    }();
    return set;
}

namespace {

void require_nonsignalling(const Box& box, const char* op) {
    auto report = is_nonsignalling(box);
    if (!report.ok) {
        std::ostringstream os;
        os << op << " needs a non-signalling box (party " << report.witness->party << ", output "
           << report.witness->output << ", input " << report.witness->input << ")";
        throw SignallingInput(os.str());
    }
}

int vertex_weight_index(int alpha, int beta, int gamma, int delta) {
    return alpha | (beta << 1) | (gamma << 2) | (delta << 3);
}

}  // namespace

std::optional<LocalDecomposition> local_decompose(const Box& box) {
    require_nonsignalling(box, "local_decompose");
    // 16 table equations plus explicit weight normalization.
    RatMatrix a(17, std::vector<Rat>(16));
    std::vector<Rat> rhs(17);
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int delta = 0; delta < 2; ++delta) {
                    Box v = local_vertex(alpha, beta, gamma, delta);
                    int col = vertex_weight_index(alpha, beta, gamma, delta);
                    for (int cell = 0; cell < 16; ++cell) a[cell][col] = v.t[cell];
                    a[16][col] = Rat(1);
                }
    for (int cell = 0; cell < 16; ++cell) rhs[cell] = box.t[cell];
    rhs[16] = Rat(1);

    auto sol = lp_feasible_point(a, rhs);
    if (!sol) return std::nullopt;
    LocalDecomposition d;
    for (int i = 0; i < 16; ++i) d.weights[i] = (*sol)[i];
    return d;
}

bool is_local(const Box& box) {
    require_nonsignalling(box, "is_local");
    return chsh(box) <= 2;
}

QuantumTestReport quantum_arcsin_test(const std::array<double, 4>& correlators, double tol) {
    double asn[2][2];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) asn[x][y] = std::asin(correlators[x * 2 + y]);
    QuantumTestReport report;
    report.tolerance = tol;
    report.pass = true;
    int k = 0;
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy) {
            double sum = 0;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) sum += (x == sx && y == sy) ? -asn[x][y] : asn[x][y];
            report.arcsin_sums[k++] = sum;
            if (std::abs(sum) > std::numbers::pi + tol) report.pass = false;
        }
    return report;
}

QuantumTestReport quantum_arcsin_test(const Box& box, double tol) {
    require_nonsignalling(box, "quantum_arcsin_test");
    std::array<double, 4> corr;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) corr[x * 2 + y] = rat_double(correlator(box, x, y));
    return quantum_arcsin_test(corr, tol);
}

bool tsirelson_test(const Box& box) {
    Rat value = chsh(box);
    return value * value <= 8;
}

BoxClass classify(const Box& box) {
    if (!is_nonsignalling(box).ok) return BoxClass::Signalling;
    if (is_local(box)) return BoxClass::Local;
    if (quantum_arcsin_test(box).pass) return BoxClass::QuantumConsistent;
    return BoxClass::SuperQuantumNS;
}

std::string to_string(BoxClass c) {
    switch (c) {
        case BoxClass::Signalling: return "Signalling";
        case BoxClass::Local: return "Local";
        case BoxClass::QuantumConsistent: return "QuantumConsistent";
        case BoxClass::SuperQuantumNS: return "SuperQuantumNS";
    }
    return "?";
}

int ns_dimension() {
    // Variables P(ab|xy), 16 of them. Rows: 4 normalizations and the 8
    // marginal-equality constraints from each side.
    RatMatrix rows;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            std::vector<Rat> row(16, Rat(0));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) row[Box::index(a, b, x, y)] = Rat(1);
            rows.push_back(row);
        }
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) {
            std::vector<Rat> row(16, Rat(0));
            for (int b = 0; b < 2; ++b) {
                row[Box::index(a, b, x, 0)] += 1;
                row[Box::index(a, b, x, 1)] -= 1;
            }
            rows.push_back(row);
        }
    for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) {
            std::vector<Rat> row(16, Rat(0));
            for (int a = 0; a < 2; ++a) {
                row[Box::index(a, b, 0, y)] += 1;
                row[Box::index(a, b, 1, y)] -= 1;
            }
            rows.push_back(row);
        }
    return 16 - rank(rows);
}

int local_polytope_affine_dimension() {
    const auto& vs = VertexSet::instance();
    RatMatrix diffs;
    for (int i = 1; i < 16; ++i) {
        std::vector<Rat> row(16);
        for (int c = 0; c < 16; ++c) row[c] = vs.entries[i].box.t[c] - vs.entries[0].box.t[c];
        diffs.push_back(row);
    }
    return rank(diffs);
}

Box depolarize(const Box& box) {
    require_nonsignalling(box, "depolarize");
    // Average of x->x^alpha, y->y^beta, a->a ^ beta*x ^ alpha*beta ^ gamma,
    // b->b ^ alpha*y ^ gamma over the 8 shared bit triples.
    Box out;
    out.t.fill(Rat(0));
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        int fa = (beta & x) ^ (alpha & beta) ^ gamma;
                        int fb = (alpha & y) ^ gamma;
                        for (int a = 0; a < 2; ++a)
                            for (int b = 0; b < 2; ++b)
                                out.p(a, b, x, y) += box.p(a ^ fa, b ^ fb, x ^ alpha, y ^ beta);
                    }
    for (Rat& v : out.t) v /= 8;
    return out;
}

Box canonicalize(const Box& box) {
    Rat target = chsh(box);
    for (const Relabel& r : relabel_group()) {
        Box candidate = relabel(box, r);
        if (chsh_combinations(candidate)[3] == target) return candidate;  // minus at (1,1)
    }
    // The group acts transitively on the signed symmetrizations, so some
    // element always lands the maximizer at the canonical slot.
    throw std::logic_error("canonicalize: no relabelling reached canonical position");
}

Rat isotropic_parameter(const Box& box) {
    // P_eps = eps*PR + (1-eps)*antiPR; read eps off one entry and verify.
    Rat eps = 2 * box.p(0, 0, 0, 0);
    if (box == isotropic_box(eps)) return eps;
    throw BadParam("box is not of isotropic form");
}

}  // namespace nlbox
