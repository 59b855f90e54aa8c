// Acceptance gate: runs every verification suite on the reference
// configuration and prints one PASS/FAIL line per numbered criterion,
// with the elapsed time of the suite that produced it.  Exits zero only
// if all criteria pass (including the per-suite time budgets).
#include "vx/suites.hpp"

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

using namespace vx;

namespace {

SuiteConfig reference_config() {
    return suite_config_from_json_text(R"({
      "engine": {"N": 2, "algebra": "sl2", "level": "1"},
      "charts": [
        {"name": "identity2", "n": 2,
         "forward": ["x1", "x2"], "inverse": ["x1", "x2"]},
        {"name": "inversion1", "n": 1,
         "forward": ["1/x1"], "inverse": ["1/x1"]},
        {"name": "triangular2", "n": 2,
         "forward": ["x1", "x2 + x1^2"], "inverse": ["x1", "x2 - x1^2"]},
        {"name": "scaleperm2", "n": 2,
         "forward": ["2*x2", "x1"], "inverse": ["x2", "1/2*x1"]}
      ],
      "samples": ["1", "x1", "x1*x2", "1/x1"],
      "seed": 42,
      "degree_bound": 4,
      "suites": ["axioms", "gluing", "cocycle", "omega",
                 "relations", "equivariance", "verma"],
      "verma": {"W": {"tensor_power": 1, "det_power": 0},
                "S": "natural", "h": "1/2", "cutoff": 8}
    })");
}

struct Bucket {
    long total = 0;
    long failed = 0;
    void feed(const CheckResult& r) {
        ++total;
        if (!r.pass) ++failed;
    }
    bool ok() const { return total > 0 && failed == 0; }
    std::string stats() const {
        return std::to_string(total - failed) + "/" + std::to_string(total) +
               " checks";
    }
};

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    SuiteConfig cfg = reference_config();

    auto timed = [&](const char* name, double& seconds) {
        auto t0 = clock::now();
        std::vector<CheckResult> rows = run_suite(cfg, name);
        seconds = std::chrono::duration<double>(clock::now() - t0).count();
        return rows;
    };

    double t_axioms = 0, t_gluing = 0, t_cocycle = 0, t_omega = 0;
    double t_relations = 0, t_equivariance = 0, t_verma = 0;
    auto axioms = timed("axioms", t_axioms);
    auto gluing = timed("gluing", t_gluing);
    auto cocycle = timed("cocycle", t_cocycle);
    auto omega = timed("omega", t_omega);
    auto relations = timed("relations", t_relations);
    auto equivariance = timed("equivariance", t_equivariance);
    auto verma = timed("verma", t_verma);

    Bucket laws, self, affine, borcherds, commutator;
    for (const auto& r : axioms) {
        if (starts_with(r.id, "axioms/vacuum/") ||
            starts_with(r.id, "axioms/grading/") ||
            starts_with(r.id, "axioms/translation/") ||
            starts_with(r.id, "axioms/derivation/"))
            laws.feed(r);
        else if (starts_with(r.id, "axioms/self/"))
            self.feed(r);
        else if (starts_with(r.id, "axioms/affine/"))
            affine.feed(r);
        else if (starts_with(r.id, "axioms/borcherds/"))
            borcherds.feed(r);
        else if (starts_with(r.id, "axioms/commutator/"))
            commutator.feed(r);
    }
    Bucket glue, pairs, conf, families, exact, equi, module;
    for (const auto& r : gluing) glue.feed(r);
    for (const auto& r : cocycle) pairs.feed(r);
    for (const auto& r : omega) conf.feed(r);
    for (const auto& r : relations) {
        if (starts_with(r.id, "relations/exact/"))
            exact.feed(r);
        else
            families.feed(r);
    }
    for (const auto& r : equivariance) equi.feed(r);
    for (const auto& r : verma) module.feed(r);

    struct Line {
        int num;
        std::string label;
        bool pass;
        std::string detail;
    };
    auto fmt = [](double s) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1fs", s);
        return std::string(buf);
    };
    std::vector<Line> lines = {
        {1, "vacuum, grading, translation, and derivation laws",
         laws.ok() && t_axioms < 60.0, laws.stats() + ", " + fmt(t_axioms)},
        {2, "conformal self-products", self.ok(), self.stats()},
        {3, "current relations for every index in dimensions one to three",
         affine.ok(), affine.stats()},
        {4, "main recursion identity on seeded triples",
         borcherds.ok() && t_axioms < 300.0, borcherds.stats() + ", " + fmt(t_axioms)},
        {5, "commutator expansion on seeded pairs", commutator.ok(),
         commutator.stats()},
        {6, "coordinate gluing homomorphisms on all reference transitions",
         glue.ok(), glue.stats()},
        {7, "transition compositions and inverses", pairs.ok(), pairs.stats()},
        {8, "conformal vector transport, factor by factor", conf.ok(),
         conf.stats()},
        {9, "loop-algebra product identity families and operator checks",
         families.ok() && t_relations < 600.0,
         families.stats() + ", " + fmt(t_relations)},
        {10, "loop action transport equivariance, including the written-out "
             "vector-field images",
         equi.ok(), equi.stats()},
        {11, "module transport, function-state expansion, and graded dimensions",
         module.ok(), module.stats()},
        {12, "exact one-forms act trivially", exact.ok(), exact.stats()},
    };

    bool all = true;
    for (const auto& line : lines) {
        all = all && line.pass;
        std::cout << (line.pass ? "PASS" : "FAIL") << "  " << line.num << ". "
                  << line.label << "  (" << line.detail << ")\n";
    }
    double total = t_axioms + t_gluing + t_cocycle + t_omega + t_relations +
                   t_equivariance + t_verma;
    std::cout << (all ? "ACCEPTED" : "REJECTED") << "  (" << fmt(total)
              << " total)\n";
    return all ? 0 : 1;
}
