#pragma once

#include <random>

#include "nlbox/polytope.hpp"

namespace nlbox::testing {

/// Random rational point of the non-signalling polytope. Half the draws lean
/// heavily on one random vertex so both locality classes show up.
inline Box random_ns_box(std::mt19937_64& rng) {
    const auto& vs = VertexSet::instance().entries;
    std::vector<Box> boxes;
    std::vector<Rat> weights;
    Rat total(0);
    for (const auto& e : vs) {
        int w = int(rng() % 8);
        if (w == 0) continue;
        boxes.push_back(e.box);
        weights.push_back(Rat(w));
        total += w;
    }
    if (rng() & 1) {
        int anchor = int(rng() % vs.size());
        int w = 24 + int(rng() % 200);
        boxes.push_back(vs[anchor].box);
        weights.push_back(Rat(w));
        total += w;
    }
    if (boxes.empty()) return uniform_box();
    for (Rat& w : weights) w /= total;
    return mix(boxes, weights);
}

}  // namespace nlbox::testing
