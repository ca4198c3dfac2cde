#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nlbox/box.hpp"
#include "nlbox/lp.hpp"

namespace nlbox {

/// The 24 extreme points of the bipartite non-signalling polytope: the 16
/// deterministic vertices P^{abgd} followed by the 8 non-local P^{abg}.
struct VertexSet {
    struct Entry {
        Box box;
        bool local;
        std::array<int, 4> params;  // (alpha,beta,gamma,delta); delta = -1 for non-local
        std::string label;
    };
    std::vector<Entry> entries;

    static const VertexSet& instance();
};

/// Weights over the 16 deterministic vertices reconstructing a local box.
struct LocalDecomposition {
    std::array<Rat, 16> weights{};  // indexed alpha | beta<<1 | gamma<<2 | delta<<3
};

struct QuantumTestReport {
    std::array<double, 4> arcsin_sums{};  // one per minus-sign placement
    bool pass = false;
    double tolerance = 0;
};

enum class BoxClass { Signalling, Local, QuantumConsistent, SuperQuantumNS };
std::string to_string(BoxClass c);

/// Exact LP feasibility over the 16 deterministic vertices. Returns the
/// simplex's (deterministic) certificate; any feasible certificate is
/// acceptable. Throws SignallingInput if the box signals.
std::optional<LocalDecomposition> local_decompose(const Box& box);

/// CHSH criterion: local iff chsh(box) <= 2 for non-signalling boxes. Agrees
/// with local_decompose on every input; both routes are kept as a cross-check
/// pair.
bool is_local(const Box& box);

/// For all 4 placements of the minus sign, |arcsin X1 + arcsin X2 + arcsin X3
/// - arcsin X4| <= pi + tol. Necessary and sufficient for membership in the
/// quantum set; the boundary (= pi) counts as quantum.
QuantumTestReport quantum_arcsin_test(const Box& box, double tol = 1e-9);

/// Same criterion evaluated on raw correlators (indexed x*2+y), for points
/// like the Tsirelson correlators that no rational table can represent.
QuantumTestReport quantum_arcsin_test(const std::array<double, 4>& correlators, double tol = 1e-9);

/// chsh(box)^2 <= 8, compared exactly in rationals. Necessary for quantum
/// realizability, not sufficient.
bool tsirelson_test(const Box& box);

/// First failing tier: Signalling, then Local, then QuantumConsistent
/// (non-local but arcsin-passing), else SuperQuantumNS.
BoxClass classify(const Box& box);

/// Dimension of the bipartite non-signalling polytope: 16 unknowns minus the
/// exact rank of the normalization + non-signalling constraint system.
int ns_dimension();

/// Affine dimension of the local polytope (span of the 16 deterministic
/// vertices).
int local_polytope_affine_dimension();

/// Average over the 8 shared bit triples (alpha,beta,gamma) of the
/// substituted box. Output is exactly isotropic; the canonical combination
/// S = X00+X01+X10-X11 is preserved exactly. Full CHSH is preserved only when
/// the maximizing symmetrization is already in canonical position (see
/// canonicalize).
Box depolarize(const Box& box);

/// Applies a relabelling moving the CHSH-maximizing symmetrization into
/// canonical position, so that depolarize(canonicalize(b)) preserves chsh(b).
Box canonicalize(const Box& box);

/// Epsilon of an isotropic box (throws BadParam if not of isotropic form).
Rat isotropic_parameter(const Box& box);

}  // namespace nlbox
