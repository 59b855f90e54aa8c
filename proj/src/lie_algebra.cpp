#include "vx/lie_algebra.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace vx {

LieAlgebra::LieAlgebra(std::string name,
                       std::vector<std::string> labels,
                       std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets,
                       Mat<Rational> form,
                       Rational dual_coxeter)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      brackets_(std::move(brackets)),
      form_(std::move(form)),
      dual_coxeter_(std::move(dual_coxeter)) {
    int d = dim();
    if (static_cast<int>(form_.size()) != d)
        throw std::invalid_argument("form matrix size does not match basis size");
    for (const auto& row : form_)
        if (static_cast<int>(row.size()) != d)
            throw std::invalid_argument("form matrix is not square");
    for (const auto& [key, terms] : brackets_) {
        if (key.first < 0 || key.first >= d || key.second < 0 || key.second >= d)
            throw std::invalid_argument("bracket index out of range");
        for (const auto& [k, c] : terms)
            if (k < 0 || k >= d)
                throw std::invalid_argument("bracket target index out of range");
    }
}

int LieAlgebra::index_of(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
        if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown basis label: " + label);
}

const std::vector<std::pair<int, Rational>>& LieAlgebra::bracket(int i, int j) const {
    static const std::vector<std::pair<int, Rational>> empty;
    auto it = brackets_.find({i, j});
    return it == brackets_.end() ? empty : it->second;
}

const Mat<Rational>& LieAlgebra::form_inverse() const {
    if (form_inverse_.empty()) form_inverse_ = mat_inverse(form_);
    return form_inverse_;
}

namespace {

// Build an algebra from explicit matrices: structure constants are read off
// commutators via a coordinate map, and the form is the trace form.
LieAlgebra from_matrices(const std::string& name,
                         const std::vector<std::string>& labels,
                         const std::vector<Mat<Rational>>& mats,
                         const std::function<std::vector<Rational>(const Mat<Rational>&)>& coords,
                         const Rational& dual_coxeter) {
    int d = static_cast<int>(labels.size());
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets;
    Mat<Rational> form = mat_zero<Rational>(d, d, 0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            form[i][j] = mat_trace(mat_mul(mats[i], mats[j]));
            if (i == j) continue;
            Mat<Rational> comm = mat_add(mat_mul(mats[i], mats[j]),
                                         mat_scale(mat_mul(mats[j], mats[i]), Rational(-1)));
            std::vector<Rational> c = coords(comm);
            std::vector<std::pair<int, Rational>> terms;
            for (int k = 0; k < d; ++k)
                if (c[k] != 0) terms.emplace_back(k, c[k]);
            if (!terms.empty()) brackets[{i, j}] = std::move(terms);
        }
    }
    return LieAlgebra(name, labels, std::move(brackets), std::move(form), dual_coxeter);
}

Mat<Rational> unit_matrix(int n, int a, int b) { // E_ab, 1-based
    Mat<Rational> m = mat_zero<Rational>(n, n, 0);
    m[a - 1][b - 1] = 1;
    return m;
}

std::vector<Mat<Rational>> sl2_matrices() {
    Mat<Rational> e = unit_matrix(2, 1, 2);
    Mat<Rational> h = mat_add(unit_matrix(2, 1, 1), mat_scale(unit_matrix(2, 2, 2), Rational(-1)));
    Mat<Rational> f = unit_matrix(2, 2, 1);
    return {e, h, f};
}

std::vector<Mat<Rational>> sl3_matrices() {
    Mat<Rational> h1 = mat_add(unit_matrix(3, 1, 1), mat_scale(unit_matrix(3, 2, 2), Rational(-1)));
    Mat<Rational> h2 = mat_add(unit_matrix(3, 2, 2), mat_scale(unit_matrix(3, 3, 3), Rational(-1)));
    return {unit_matrix(3, 1, 2), unit_matrix(3, 1, 3), unit_matrix(3, 2, 3),
            h1, h2,
            unit_matrix(3, 2, 1), unit_matrix(3, 3, 1), unit_matrix(3, 3, 2)};
}

} // namespace

LieAlgebra sl2() {
    auto coords = [](const Mat<Rational>& m) {
        // traceless 2x2: m = c_e E12 + c_h diag(1,-1) + c_f E21
        return std::vector<Rational>{m[0][1], m[0][0], m[1][0]};
    };
    return from_matrices("sl2", {"e", "h", "f"}, sl2_matrices(), coords, 2);
}

LieAlgebra sl3() {
    auto coords = [](const Mat<Rational>& m) {
        // traceless 3x3 in the basis E12,E13,E23,H1,H2,E21,E31,E32 with
        // H1 = diag(1,-1,0), H2 = diag(0,1,-1):
        // diagonal part a11 H1 + (a11+a22) H2, off-diagonal entries direct.
        return std::vector<Rational>{m[0][1], m[0][2], m[1][2],
                                     m[0][0], m[0][0] + m[1][1],
                                     m[1][0], m[2][0], m[2][1]};
    };
    return from_matrices("sl3", {"E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32"},
                         sl3_matrices(), coords, 3);
}

LieAlgebra lie_by_name(const std::string& name) {
    if (name == "sl2") return sl2();
    if (name == "sl3") return sl3();
    throw std::invalid_argument("unknown built-in Lie algebra: " + name);
}

namespace {

Rational rational_from_json(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    throw std::invalid_argument("expected an exact rational (string or integer) in JSON");
}

} // namespace

LieAlgebra lie_from_json_text(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    std::vector<std::string> labels = j.at("basis").get<std::vector<std::string>>();
    int d = static_cast<int>(labels.size());

    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets;
    for (const auto& t : j.at("brackets")) {
        if (!t.is_array() || t.size() != 4)
            throw std::invalid_argument("bracket entries must be [i, j, k, coeff]");
        int i = t[0].get<int>(), jj = t[1].get<int>(), k = t[2].get<int>();
        Rational c = rational_from_json(t[3]);
        if (c == 0) continue;
        auto& terms = brackets[{i, jj}];
        bool merged = false;
        for (auto& [tk, tc] : terms)
            if (tk == k) { tc += c; merged = true; break; }
        if (!merged) terms.emplace_back(k, c);
    }
    for (auto it = brackets.begin(); it != brackets.end();) {
        auto& terms = it->second;
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [](const auto& p) { return p.second == 0; }),
                    terms.end());
        it = terms.empty() ? brackets.erase(it) : std::next(it);
    }

    Mat<Rational> form = mat_zero<Rational>(d, d, 0);
    const auto& fj = j.at("form");
    if (static_cast<int>(fj.size()) != d)
        throw std::invalid_argument("form matrix size does not match basis size");
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) form[r][c] = rational_from_json(fj[r][c]);

    LieAlgebra g(j.value("name", std::string("custom")), std::move(labels),
                 std::move(brackets), std::move(form),
                 rational_from_json(j.at("dual_coxeter")));
    validate_algebra(g);
    return g;
}

namespace {

std::vector<Rational> dense_bracket(const LieAlgebra& g,
                                    const std::vector<Rational>& a,
                                    const std::vector<Rational>& b) {
    int d = g.dim();
    std::vector<Rational> out(d, 0);
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            for (const auto& [k, c] : g.bracket(i, j)) out[k] += a[i] * b[j] * c;
        }
    }
    return out;
}

std::vector<Rational> basis_vec(int d, int i) {
    std::vector<Rational> v(d, 0);
    v[i] = 1;
    return v;
}

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace

void validate_algebra(const LieAlgebra& g) {
    int d = g.dim();
    // antisymmetry
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::vector<Rational> s(d, 0);
            for (const auto& [k, c] : g.bracket(i, j)) s[k] += c;
            for (const auto& [k, c] : g.bracket(j, i)) s[k] += c;
            if (!all_zero(s))
                throw std::invalid_argument(
                    "bracket is not antisymmetric at pair (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
        }
    }
    // Jacobi identity
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int k = j + 1; k < d; ++k) {
                auto ei = basis_vec(d, i), ej = basis_vec(d, j), ek = basis_vec(d, k);
                auto t1 = dense_bracket(g, dense_bracket(g, ei, ej), ek);
                auto t2 = dense_bracket(g, dense_bracket(g, ej, ek), ei);
                auto t3 = dense_bracket(g, dense_bracket(g, ek, ei), ej);
                std::vector<Rational> s(d, 0);
                for (int t = 0; t < d; ++t) s[t] = t1[t] + t2[t] + t3[t];
                if (!all_zero(s))
                    throw std::invalid_argument(
                        "Jacobi identity fails on triple (" + std::to_string(i) + "," +
                        std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
    }
    // form: symmetric and invariant
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (g.form(i, j) != g.form(j, i))
                throw std::invalid_argument("bilinear form is not symmetric");
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                Rational lhs = 0, rhs = 0;
                for (const auto& [t, c] : g.bracket(i, j)) lhs += c * g.form(t, k);
                for (const auto& [t, c] : g.bracket(j, k)) rhs += c * g.form(i, t);
                if (lhs != rhs)
                    throw std::invalid_argument(
                        "bilinear form is not invariant on triple (" + std::to_string(i) + "," +
                        std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
    }
}

GRep GRep::trivial(const LieAlgebra& g) {
    GRep r;
    r.dim = 1;
    r.action.assign(g.dim(), mat_zero<Rational>(1, 1, 0));
    return r;
}

GRep GRep::natural(const LieAlgebra& g) {
    GRep r;
    std::vector<Mat<Rational>> mats;
    if (g.name() == "sl2") mats = sl2_matrices();
    else if (g.name() == "sl3") mats = sl3_matrices();
    else throw std::invalid_argument("no built-in natural representation for " + g.name());
    r.dim = static_cast<int>(mats[0].size());
    r.action = std::move(mats);
    return r;
}

void validate_rep(const LieAlgebra& g, const GRep& rep) {
    int d = g.dim();
    if (static_cast<int>(rep.action.size()) != d)
        throw std::invalid_argument("representation has wrong number of matrices");
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Mat<Rational> comm = mat_add(mat_mul(rep.action[i], rep.action[j]),
                                         mat_scale(mat_mul(rep.action[j], rep.action[i]),
                                                   Rational(-1)));
            Mat<Rational> expect = mat_zero<Rational>(rep.dim, rep.dim, 0);
            for (const auto& [k, c] : g.bracket(i, j))
                expect = mat_add(expect, mat_scale(rep.action[k], c));
            if (comm != expect)
                throw std::invalid_argument(
                    "matrices do not represent the bracket at pair (" + std::to_string(i) +
                    "," + std::to_string(j) + ")");
        }
    }
}

} // namespace vx
