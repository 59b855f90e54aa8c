#include "vx/ratfunc.hpp"

#include <cctype>
#include <stdexcept>

namespace vx {

RatFunc::RatFunc(int nvars)
    : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars())
        throw std::invalid_argument("variable count mismatch");
    canonicalize();
}

RatFunc RatFunc::constant(int nvars, const Rational& c) {
    return from_poly(MultiPoly::constant(nvars, c));
}

RatFunc RatFunc::variable(int nvars, int index) {
    return from_poly(MultiPoly::variable(nvars, index));
}

RatFunc RatFunc::from_poly(MultiPoly p) {
    RatFunc r(p.nvars());
    r.num_ = std::move(p);
    return r;
}

void RatFunc::canonicalize() {
    if (den_.is_zero()) throw std::domain_error("division by zero rational function");
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(num_.nvars(), 1);
        return;
    }
    if (!den_.is_one()) {
        MultiPoly g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
        Rational u = den_.rational_content();
        if (u != 1) {
            Rational inv = Rational(1) / u;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (nvars() != o.nvars()) throw std::invalid_argument("variable count mismatch");
    if (den_.is_one() && o.den_.is_one()) return from_poly(num_ + o.num_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    if (nvars() != o.nvars()) throw std::invalid_argument("variable count mismatch");
    if (den_.is_one() && o.den_.is_one()) return from_poly(num_ - o.num_);
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (nvars() != o.nvars()) throw std::invalid_argument("variable count mismatch");
    if (den_.is_one() && o.den_.is_one()) return from_poly(num_ * o.num_);
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (nvars() != o.nvars()) throw std::invalid_argument("variable count mismatch");
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator*(const Rational& c) const {
    if (c == 0) return RatFunc(nvars());
    RatFunc r = *this;
    r.num_ = r.num_ * c;
    return r;
}

bool RatFunc::operator<(const RatFunc& o) const {
    auto poly_less = [](const MultiPoly& a, const MultiPoly& b) {
        // lexicographic on the ordered term sequences
        auto ia = a.terms().begin(), ib = b.terms().begin();
        for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
            if (GrlexLess{}(ia->first, ib->first)) return -1;
            if (GrlexLess{}(ib->first, ia->first)) return 1;
            if (ia->second < ib->second) return -1;
            if (ib->second < ia->second) return 1;
        }
        if (ib != b.terms().end()) return -1;
        if (ia != a.terms().end()) return 1;
        return 0;
    };
    int c = poly_less(num_, o.num_);
    if (c != 0) return c < 0;
    return poly_less(den_, o.den_) < 0;
}

RatFunc RatFunc::pow(long e) const {
    if (e == 0) return one(nvars());
    RatFunc base = *this;
    if (e < 0) {
        base = one(nvars()) / base;
        e = -e;
    }
    RatFunc acc = one(nvars());
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

RatFunc RatFunc::derivative(int var) const {
    if (den_.is_one()) return from_poly(num_.derivative(var));
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                   den_ * den_);
}

Rational RatFunc::evaluate(const std::vector<Rational>& pt) const {
    Rational d = den_.evaluate(pt);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return num_.evaluate(pt) / d;
}

namespace {

RatFunc poly_at(const MultiPoly& p, const std::vector<RatFunc>& images, int out_vars) {
    RatFunc acc(out_vars);
    for (const auto& [e, c] : p.terms()) {
        RatFunc t = RatFunc::constant(out_vars, c);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (e[i] > 0) t *= images[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

} // namespace

RatFunc RatFunc::substitute(const std::vector<RatFunc>& images) const {
    if (static_cast<int>(images.size()) != nvars())
        throw std::invalid_argument("substitution image count mismatch");
    int out_vars = images.empty() ? 0 : images[0].nvars();
    for (const auto& g : images)
        if (g.nvars() != out_vars)
            throw std::invalid_argument("substitution images disagree on variable count");
    RatFunc n = poly_at(num_, images, out_vars);
    RatFunc d = poly_at(den_, images, out_vars);
    if (d.is_zero())
        throw std::domain_error("substitution makes the denominator vanish identically");
    return n / d;
}

std::string RatFunc::str() const {
    if (num_.is_zero()) return "0";
    if (den_.is_one()) return num_.str();
    std::string ns = num_.str();
    if (num_.term_count() > 1) ns = "(" + ns + ")";
    std::string ds = den_.str();
    // A lone power of one variable is unambiguous as a denominator;
    // anything else gets parentheses.
    int den_vars = 0;
    for (int i = 1; i <= den_.nvars(); ++i)
        if (den_.uses_var(i)) ++den_vars;
    if (den_.term_count() > 1 || den_vars > 1) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

// --------------------------- parser ---------------------------------------

namespace {

class Parser {
public:
    Parser(const std::string& text, int nvars) : text_(text), nvars_(nvars) {}

    RatFunc run() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("unexpected trailing input in expression: " + text_);
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) throw std::invalid_argument("expected integer in expression");
        return std::stol(text_.substr(start, pos_ - start));
    }

    RatFunc expr() {
        RatFunc r = term();
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }

    RatFunc term() {
        RatFunc r = factor();
        for (;;) {
            if (eat('*')) r *= factor();
            else if (eat('/')) r = r / factor();
            else return r;
        }
    }

    RatFunc factor() {
        if (eat('-')) return -factor();
        RatFunc b = base();
        if (eat('^')) {
            long e = integer();
            if (e < 0) throw std::invalid_argument("negative exponent; use division instead");
            return b.pow(e);
        }
        return b;
    }

    RatFunc base() {
        skip_ws();
        if (pos_ >= text_.size()) throw std::invalid_argument("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!eat(')')) throw std::invalid_argument("missing ')' in expression");
            return r;
        }
        if (c == 'x') {
            ++pos_;
            std::size_t digits = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == digits) throw std::invalid_argument("expected variable index after 'x'");
            int idx = std::stoi(text_.substr(digits, pos_ - digits));
            if (idx < 1 || idx > nvars_)
                throw std::invalid_argument("variable index out of range: x" + std::to_string(idx));
            return RatFunc::variable(nvars_, idx);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = integer();
            return RatFunc::constant(nvars_, Rational(static_cast<long>(v)));
        }
        throw std::invalid_argument(std::string("unexpected character '") + c + "' in expression");
    }

    const std::string& text_;
    int nvars_;
    std::size_t pos_ = 0;
};

} // namespace

RatFunc parse_ratfunc(const std::string& text, int nvars) {
    return Parser(text, nvars).run();
}

} // namespace vx
