// Deterministic random states for property checks: a seeded generator
// produces normal-ordered words within a degree budget, with coefficients
// drawn from a fixed sample set.
#pragma once

#include "vx/engine.hpp"
#include "vx/prng.hpp"

#include <vector>

namespace vx {

inline Mode random_mode(const Engine& eng, Prng& rng, int budget) {
    // kinds: oscillators, derivations, matrix currents, g currents, and the
    // Virasoro mode when at least two units of degree remain
    int pick = static_cast<int>(rng.range(0, budget >= 2 ? 4 : 3));
    int lvl = -static_cast<int>(rng.range(1, budget));
    switch (pick) {
        case 0: return mode_u(static_cast<int>(rng.range(1, eng.N())), lvl);
        case 1: return mode_v(static_cast<int>(rng.range(1, eng.N())), lvl);
        case 2:
            return mode_e(static_cast<int>(rng.range(1, eng.N())),
                          static_cast<int>(rng.range(1, eng.N())), lvl);
        case 3: return mode_g(static_cast<int>(rng.index(eng.algebra().dim())), lvl);
        default: {
            int l = -static_cast<int>(rng.range(2, budget));
            return mode_l(l);
        }
    }
}

inline State random_state(const Engine& eng, Prng& rng, int max_degree,
                          const std::vector<RatFunc>& samples) {
    int budget = static_cast<int>(rng.range(0, max_degree));
    Word w;
    while (budget > 0) {
        Mode m = random_mode(eng, rng, budget);
        budget += m.level;
        w.push_back(m);
    }
    return eng.normal_order(w, samples[rng.index(samples.size())]);
}

} // namespace vx
