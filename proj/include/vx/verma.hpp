// Induced highest-weight modules over the vertex engine, truncated at a
// configurable degree.
//
// A module is built from a gl_N weight space W (tensor power of the natural
// representation twisted by a determinant power), a module S for the
// auxiliary Lie algebra, and a lowest Virasoro weight h.  Its elements are
// finite sums
//
//     (creation word) . (basis vector of W ⊗ S) ⊗ (rational coefficient)
//
// with the same canonical word ordering as the algebra itself.  Annihilator
// modes commute rightward through the relations until they reach the top,
// where the zero modes act by: E_ab(0) on the W factor, the auxiliary
// currents on the S factor, L(0) by the scalar h, u_p(0) by zero and
// v_p(0) as d/dx_p on the coefficient.  Creation modes that would push a
// word past the degree cutoff raise std::overflow_error rather than
// silently truncating.
//
// The module carries the full vertex action (`act`), products by pure
// function states (`function_mode`), the coordinate-change transport `psi`
// whose top component twists W by the forward Jacobian matrix, and graded
// character counting.
#pragma once

#include "vx/chart.hpp"
#include "vx/check.hpp"
#include "vx/engine.hpp"
#include "vx/gln_rep.hpp"
#include "vx/prng.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vx {

struct VermaConfig {
    int tensor_power = 1; // W = (C^N)^{tensor k} ...
    int det_power = 0;    // ... twisted by det^m
    std::string s_rep = "trivial"; // "trivial", "natural", or "<alg>:dim<d>"
    Rational h = 0;       // lowest Virasoro weight
    int cutoff = 3;       // hard degree bound
};

/// Parse a module configuration of the shape
///   {"W": {"tensor_power": 1, "det_power": 0}, "S": "sl2:dim2",
///    "h": "1/2", "cutoff": 3}
/// Throws std::invalid_argument on malformed input.
VermaConfig verma_config_from_json_text(const std::string& text);

/// A finite sum of (word, top-basis index) pairs with rational-function
/// coefficients. The top index t encodes the basis vector w_{t / dimS}
/// tensor s_{t % dimS}.
class ModuleState {
public:
    using Key = std::pair<Word, int>;
    struct KeyLess {
        bool operator()(const Key& x, const Key& y) const {
            WordLess wl;
            if (wl(x.first, y.first)) return true;
            if (wl(y.first, x.first)) return false;
            return x.second < y.second;
        }
    };

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Key, RatFunc, KeyLess>& terms() const { return terms_; }

    /// Largest word degree present; -1 for the zero element.
    long degree() const {
        long d = -1;
        for (const auto& [k, f] : terms_) d = std::max(d, word_degree(k.first));
        return d;
    }

    void add(const Word& w, int top, const RatFunc& coeff) {
        if (coeff.is_zero()) return;
        Key key{w, top};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ModuleState operator+(const ModuleState& o) const {
        ModuleState r = *this;
        for (const auto& [k, f] : o.terms_) r.add(k.first, k.second, f);
        return r;
    }
    ModuleState operator-(const ModuleState& o) const {
        ModuleState r = *this;
        for (const auto& [k, f] : o.terms_) r.add(k.first, k.second, -f);
        return r;
    }
    ModuleState& operator+=(const ModuleState& o) {
        for (const auto& [k, f] : o.terms_) add(k.first, k.second, f);
        return *this;
    }
    ModuleState& operator-=(const ModuleState& o) {
        for (const auto& [k, f] : o.terms_) add(k.first, k.second, -f);
        return *this;
    }
    ModuleState operator*(const RatFunc& c) const {
        ModuleState r;
        for (const auto& [k, f] : terms_) r.add(k.first, k.second, f * c);
        return r;
    }
    ModuleState operator*(const Rational& c) const {
        ModuleState r;
        for (const auto& [k, f] : terms_) r.add(k.first, k.second, f * c);
        return r;
    }
    bool operator==(const ModuleState& o) const { return terms_ == o.terms_; }
    bool operator!=(const ModuleState& o) const { return !(*this == o); }

private:
    std::map<Key, RatFunc, KeyLess> terms_;
};

class VermaModule {
public:
    /// Validates the configuration (cutoff >= 0, representable W and S)
    /// and resolves the S description against the engine's algebra.
    /// Throws std::invalid_argument on inconsistent data.
    VermaModule(const Engine& eng, VermaConfig cfg);

    const Engine& engine() const { return *eng_; }
    const VermaConfig& config() const { return cfg_; }
    const GLNRep& w_rep() const { return w_; }
    const GRep& s_rep() const { return s_; }
    int dim_w() const { return w_.dim(); }
    int dim_s() const { return s_.dim; }
    int top_dim() const { return w_.dim() * s_.dim; }
    int top_index(int wi, int si) const { return wi * s_.dim + si; }

    ModuleState zero() const { return ModuleState{}; }
    /// The top vector w_wi ⊗ s_si with coefficient f (0-based indices).
    ModuleState top(int wi, int si, const RatFunc& f) const;
    /// Straighten an arbitrary creation word applied to a top vector.
    ModuleState build(const Word& w, int wi, int si, const RatFunc& f) const;

    /// Apply a single mode. Creations straighten into the word (overflow
    /// past the cutoff throws std::overflow_error); annihilators commute
    /// rightward and act on the top as described above.
    ModuleState apply_mode(const Mode& m, const ModuleState& s) const;

    /// The n-th module product of a pure function state.
    ModuleState function_mode(const RatFunc& f, long n, const ModuleState& m) const;

    /// The full module vertex action a_(n) m.
    ModuleState act(const State& a, long n, const ModuleState& m) const;

    /// Coordinate-change transport: the top component is twisted by the
    /// W-action of the forward Jacobian and coefficients are pulled back;
    /// words are carried along by acting with the images of their modes.
    ModuleState psi(const ChartMap& chart, const ModuleState& m) const;

    /// Check that psi intertwines the degree-zero generator actions
    /// (the oscillator derivative modes and the gl_N zero modes) on a
    /// basis of the top component against each sample coefficient.
    std::vector<CheckResult> verify_top_equivariance(
        const ChartMap& chart, const std::vector<RatFunc>& samples) const;

    /// Graded dimensions over the coefficient field for degrees
    /// 0..cutoff: dim(W ⊗ S) times the number of canonical words.
    std::vector<long> character() const;

    std::string str(const ModuleState& s) const;

private:
    ModuleState prepend(const Mode& m, const ModuleState& s) const;
    ModuleState normal_order(const Word& w, int top, const RatFunc& coeff) const;
    ModuleState apply_annihilator(const Mode& m, const Word& w, int top,
                                  const RatFunc& coeff) const;
    ModuleState top_action(const Mode& m, int top, const RatFunc& coeff) const;

    const Engine* eng_;
    VermaConfig cfg_;
    GLNRep w_;
    GRep s_;
};

/// Seeded random module element: a random creation word of degree at most
/// max_degree applied to a random top vector with a sampled coefficient.
ModuleState random_module_state(const VermaModule& mod, Prng& rng, int max_degree,
                                const std::vector<RatFunc>& samples);

} // namespace vx
