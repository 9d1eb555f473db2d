#include "qrform/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qrform {

Poly::Poly(long c) {
    if (c != 0) c_.push_back(mpz_class(c));
}

Poly::Poly(mpz_class c) {
    if (c != 0) c_.push_back(std::move(c));
}

Poly Poly::t_power(int k) {
    Poly p;
    p.c_.assign(static_cast<size_t>(k) + 1, mpz_class(0));
    p.c_.back() = 1;
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::low_degree() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<int>(k);
    return -1;
}

mpz_class Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return mpz_class(0);
    return c_[static_cast<size_t>(k)];
}

void Poly::set_coeff(int k, mpz_class v) {
    if (k >= static_cast<int>(c_.size())) {
        if (v == 0) return;
        c_.resize(static_cast<size_t>(k) + 1, mpz_class(0));
    }
    c_[static_cast<size_t>(k)] = std::move(v);
    trim();
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) r.c_[k] += o.c_[k];
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) r.c_[k] -= o.c_[k];
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    r.c_.assign(c_.size() + static_cast<size_t>(k), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<size_t>(k)] = c_[i];
    return r;
}

Poly Poly::shifted_down(int k) const {
    if (k == 0 || is_zero()) return *this;
    Poly r;
    r.c_.assign(c_.begin() + k, c_.end());
    return r;
}

Poly Poly::reversed() const {
    Poly r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.trim();
    return r;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitive() const {
    if (is_zero()) return Poly();
    mpz_class c = content();
    if (c == 1) return *this;
    Poly r = *this;
    for (auto& x : r.c_) x /= c;
    return r;
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
    if (a.is_zero()) return Poly();
    Poly rem = a;
    Poly quo;
    quo.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, mpz_class(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int d = rem.degree() - b.degree();
        mpz_class c = rem.lc() / b.lc();
        quo.c_[static_cast<size_t>(d)] = c;
        for (size_t j = 0; j < b.c_.size(); ++j)
            rem.c_[static_cast<size_t>(d) + j] -= c * b.c_[j];
        rem.trim();
    }
    quo.trim();
    return quo;
}

Poly Poly::pseudo_rem(const Poly& a, const Poly& b) {
    Poly rem = a;
    int d = a.degree() - b.degree();
    if (d < 0) return rem;
    const mpz_class& bl = b.lc();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int k = rem.degree() - b.degree();
        mpz_class c = rem.lc();
        for (auto& x : rem.c_) x *= bl;
        for (size_t j = 0; j < b.c_.size(); ++j)
            rem.c_[static_cast<size_t>(k) + j] -= c * b.c_[j];
        rem.trim();
    }
    return rem;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    Poly x = a.primitive();
    Poly y = b.primitive();
    if (x.is_zero()) x = Poly(1);
    if (y.is_zero()) y = Poly(1);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero() && y.degree() > 0) {
        Poly r = pseudo_rem(x, y).primitive();
        x = y;
        y = r;
    }
    if (!y.is_zero()) return Poly(1);  // nonzero constant remainder: coprime
    if (x.lc() < 0) x = -x;
    return x;
}

mpq_class Poly::eval(const mpq_class& t0) const {
    mpq_class acc = 0;
    for (size_t k = c_.size(); k-- > 0;) {
        acc = acc * t0 + mpq_class(c_[k]);
    }
    return acc;
}

// --- Scalar ---

Scalar::Scalar(long num, long den) : num_(Poly(num)), den_(Poly(den)) {
    if (den == 0) throw DivisionByZero();
    normalize();
}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
}

Scalar Scalar::t_pow(int k) {
    if (k >= 0) return Scalar(Poly::t_power(k), Poly(1));
    return Scalar(Poly(1), Poly::t_power(-k));
}

const Scalar& Scalar::zero() {
    static const Scalar z;
    return z;
}

const Scalar& Scalar::one() {
    static const Scalar o(1);
    return o;
}

bool Scalar::is_one() const {
    return num_.degree() == 0 && den_.degree() == 0 && num_.lc() == 1 && den_.lc() == 1;
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    // pull out common t-powers first (monomial denominators dominate in practice)
    int vn = num_.low_degree();
    int vd = den_.low_degree();
    int v = std::min(vn, vd);
    if (v > 0) {
        num_ = num_.shifted_down(v);
        den_ = den_.shifted_down(v);
    }
    if (den_.degree() > 0 && num_.degree() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divexact(num_.primitive(), g) * Poly(num_.content());
            den_ = Poly::divexact(den_.primitive(), g) * Poly(den_.content());
        }
    }
    mpz_class cn = num_.content();
    mpz_class cd = den_.content();
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (c > 1) {
        Poly pc{c};
        num_ = Poly::divexact(num_, pc);
        den_ = Poly::divexact(den_, pc);
    }
    if (den_.lc() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return Scalar(num_ - o.num_, den_);
    return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar();
    return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw DivisionByZero();
    if (is_zero()) return Scalar();
    return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero();
    return Scalar(den_, num_);
}

Scalar Scalar::pow(int k) const {
    if (k == 0) return one();
    Scalar base = k > 0 ? *this : inv();
    int e = k > 0 ? k : -k;
    Scalar acc = one();
    while (e > 0) {
        if (e & 1) acc *= base;
        base = e > 1 ? base * base : base;
        e >>= 1;
    }
    return acc;
}

Scalar Scalar::subst_t_inverse() const {
    if (is_zero()) return Scalar();
    int dn = num_.degree();
    int dd = den_.degree();
    Poly n = num_.reversed();
    Poly d = den_.reversed();
    if (dd >= dn) return Scalar(n.shifted(dd - dn), d);
    return Scalar(n, d.shifted(dn - dd));
}

std::optional<mpq_class> Scalar::eval(const mpq_class& t0) const {
    mpq_class d = den_.eval(t0);
    if (d == 0) return std::nullopt;
    return num_.eval(t0) / d;
}

namespace {

void print_poly(std::ostringstream& os, const Poly& p) {
    if (p.is_zero()) {
        os << "0";
        return;
    }
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        mpz_class c = p.coeff(k);
        if (c == 0) continue;
        if (c > 0 && !first) os << "+";
        if (c < 0) {
            os << "-";
            c = -c;
        }
        if (k == 0) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << (k == 1 ? "t" : "t^" + std::to_string(k));
        }
        first = false;
    }
}

int poly_terms(const Poly& p) {
    int n = 0;
    for (int k = 0; k <= p.degree(); ++k)
        if (p.coeff(k) != 0) ++n;
    return n;
}

}  // namespace

std::string Scalar::str() const {
    std::ostringstream os;
    if (den_.degree() == 0 && !den_.is_zero() && den_.lc() == 1) {
        print_poly(os, num_);
        return os.str();
    }
    bool pn = poly_terms(num_) > 1;
    if (pn) os << "(";
    print_poly(os, num_);
    if (pn) os << ")";
    os << "/";
    bool pd = poly_terms(den_) > 1 || (den_.degree() == 0 && den_.lc() != 1 && num_.degree() > 0);
    pd = poly_terms(den_) > 1;
    if (pd) os << "(";
    print_poly(os, den_);
    if (pd) os << ")";
    return os.str();
}

// --- expression parser ---

namespace {

struct Parser {
    std::string_view s;
    size_t pos = 0;
    int q_texp;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ConfigError("scalar parse error at position " + std::to_string(pos) + ": " + why +
                          " in '" + std::string(s) + "'");
    }

    long integer() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t ds = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == ds) fail("expected integer");
        return std::stol(std::string(s.substr(start, pos - start)));
    }

    Scalar atom() {
        skip();
        if (eat('(')) {
            Scalar e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        char c = peek();
        if (c == 't') {
            ++pos;
            return Scalar::t_pow(1);
        }
        if (c == 'q') {
            ++pos;
            return Scalar::t_pow(q_texp);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(integer());
        fail("expected atom");
    }

    Scalar factor() {
        skip();
        bool neg = false;
        while (peek() == '-' || peek() == '+') {
            if (eat('-')) neg = !neg;
            else eat('+');
        }
        Scalar a = atom();
        if (eat('^')) {
            long e = integer();
            if (e < -1000 || e > 1000) fail("exponent out of range");
            a = a.pow(static_cast<int>(e));
        }
        return neg ? -a : a;
    }

    Scalar term() {
        Scalar a = factor();
        while (true) {
            if (eat('*')) a *= factor();
            else if (eat('/')) a /= factor();
            else break;
        }
        return a;
    }

    Scalar expr() {
        Scalar a = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                a += term();
            } else if (c == '-') {
                ++pos;
                a -= term();
            } else {
                break;
            }
        }
        return a;
    }
};

}  // namespace

Scalar Scalar::parse(std::string_view s, int q_texp) {
    Parser p{s, 0, q_texp};
    Scalar r = p.expr();
    p.skip();
    if (p.pos != s.size()) p.fail("trailing input");
    return r;
}

}  // namespace qrform
