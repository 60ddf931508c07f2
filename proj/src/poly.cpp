#include "toric/poly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

#include "toric/error.hpp"

namespace toric {

namespace {

constexpr int kMaxExponent = 1 << 20;

int add_exp(int a, int b) {
    int s = a + b;
    if (s > kMaxExponent) throw Error("overflow", "exponent too large");
    return s;
}

std::mutex g_radical_mutex;
std::map<std::string, ParamPoly>& radicals() {
    static std::map<std::string, ParamPoly> r;
    return r;
}

ParamMono mono_mul(const ParamMono& a, const ParamMono& b) {
    ParamMono out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            out.push_back({a[i].first, add_exp(a[i].second, b[j].second)});
            ++i;
            ++j;
        }
    }
    return out;
}

// a / b if b divides a.
std::optional<ParamMono> mono_div(const ParamMono& a, const ParamMono& b) {
    ParamMono out;
    std::size_t i = 0;
    for (const auto& [s, e] : b) {
        while (i < a.size() && a[i].first < s) out.push_back(a[i++]);
        if (i == a.size() || a[i].first != s || a[i].second < e) return std::nullopt;
        if (a[i].second > e) out.push_back({s, a[i].second - e});
        ++i;
    }
    while (i < a.size()) out.push_back(a[i++]);
    return out;
}

int mono_degree(const ParamMono& m) {
    int d = 0;
    for (const auto& p : m) d += p.second;
    return d;
}

std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string mono_string(const ParamMono& m) {
    std::string s;
    for (const auto& [n, e] : m) {
        if (!s.empty()) s += "*";
        s += n;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

// Positive rational gcd of the coefficients.
Rat content_of(const ParamPoly& p) {
    Int num = 0, den = 1;
    for (const auto& [m, c] : p.terms()) {
        num = gcd(num, numerator(c));
        den = lcm(den, denominator(c));
    }
    return Rat(num, den);
}

}  // namespace

bool ParamMonoGreater::operator()(const ParamMono& a, const ParamMono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second) return a[i].second > b[j].second;
            ++i;
            ++j;
        } else {
            return a[i].first < b[j].first;
        }
    }
    return i < a.size() && j == b.size();
}

ParamPoly::ParamPoly(const Rat& c) {
    if (c != 0) terms_[{}] = c;
}

ParamPoly ParamPoly::symbol(const std::string& name) {
    ParamPoly p;
    p.terms_[{{name, 1}}] = 1;
    return p;
}

bool ParamPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rat ParamPoly::constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? Rat(0) : it->second;
}

bool ParamPoly::contains_symbol(const std::string& name) const {
    for (const auto& [m, c] : terms_)
        for (const auto& p : m)
            if (p.first == name) return true;
    return false;
}

void ParamPoly::add_term(ParamMono m, const Rat& c) {
    if (c == 0) return;
    for (auto& [s, e] : m) {
        if (e < 2) continue;
        auto rad = radicand_of(s);
        if (!rad) continue;
        int half = e / 2;
        e %= 2;
        m.erase(std::remove_if(m.begin(), m.end(), [](const auto& p) { return p.second == 0; }), m.end());
        ParamPoly base;
        base.terms_[m] = c;
        ParamPoly pw(1);
        for (int i = 0; i < half; ++i) pw = pw * *rad;
        for (const auto& [mm, cc] : (base * pw).terms_) add_term(mm, cc);
        return;
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.emplace(std::move(m), c);
    else if ((it->second += c) == 0) terms_.erase(it);
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    ParamPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const { return *this + (-o); }

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    ParamPoly r;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) r.add_term(mono_mul(a, b), ca * cb);
    return r;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& o) const {
    if (o.is_zero()) throw Error("division_by_zero", "division by the zero polynomial");
    ParamPoly r = *this, q;
    const auto& [lm, lc] = *o.terms_.begin();
    for (int guard = 0; !r.is_zero(); ++guard) {
        if (guard > 100000) return std::nullopt;
        const auto& [rm, rc] = *r.terms_.begin();
        auto m = mono_div(rm, lm);
        if (!m) return std::nullopt;
        ParamPoly t;
        t.terms_[*m] = rc / lc;
        q = q + t;
        r = r - t * o;
    }
    return q;
}

std::pair<ParamPoly, ParamPoly> ParamPoly::split_linear(const std::string& s) const {
    ParamPoly a, b;
    for (const auto& [m, c] : terms_) {
        auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == s; });
        if (it == m.end()) {
            a.terms_[m] = c;
        } else {
            ParamMono rest = m;
            rest.erase(rest.begin() + (it - m.begin()));
            b.add_term(rest, c);
        }
    }
    return {a, b};
}

std::string ParamPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        Rat a = abs(c);
        std::string t;
        if (m.empty()) t = rat_string(a);
        else if (a == 1) t = mono_string(m);
        else t = rat_string(a) + "*" + mono_string(m);
        if (s.empty()) s = (c < 0 ? "-" : "") + t;
        else s += (c < 0 ? " - " : " + ") + t;
    }
    return s;
}

std::optional<ParamPoly> radicand_of(const std::string& symbol) {
    std::lock_guard<std::mutex> lock(g_radical_mutex);
    auto it = radicals().find(symbol);
    if (it == radicals().end()) return std::nullopt;
    return it->second;
}

ParamScalar::ParamScalar(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("division_by_zero", "zero denominator");
    normalize();
}

ParamScalar ParamScalar::param(const std::string& name) {
    if (radicand_of(name)) throw Error("reserved_symbol", "name is a radical symbol", name);
    ParamScalar s;
    s.num_ = ParamPoly::symbol(name);
    return s;
}

ParamScalar ParamScalar::sqrt(const ParamScalar& radicand) {
    if (radicand.is_zero()) return ParamScalar(0);
    // sqrt(n/d) = sqrt(n*d)/d
    ParamPoly r = radicand.num_ * radicand.den_;
    Rat scale = 1;
    if (r.is_constant()) {
        Rat c = r.constant_term();
        int sign = c < 0 ? -1 : 1;
        // pull out square factors
        Int n = abs(numerator(c) * denominator(c));
        Int out = 1;
        for (Int p = 2; p * p <= n; ++p)
            while (n % (p * p) == 0) {
                n /= p * p;
                out *= p;
            }
        scale = Rat(out, denominator(c));
        if (n == 1 && sign > 0) return ParamScalar(scale) / ParamScalar(ParamPoly(1), radicand.den_);
        r = ParamPoly(Rat(sign * n));
    } else {
        for (const auto& [m, c] : r.terms())
            for (const auto& p : m)
                if (radicand_of(p.first)) throw Error("nested_radical", "radicand contains a radical", r.to_string());
    }
    std::string name = "sqrt(" + r.to_string() + ")";
    {
        std::lock_guard<std::mutex> lock(g_radical_mutex);
        radicals().emplace(name, r);
    }
    ParamScalar root;
    root.num_ = ParamPoly::symbol(name);
    return root * ParamScalar(scale) / ParamScalar(radicand.den_);
}

bool ParamScalar::is_one() const { return num_ == den_; }

void ParamScalar::normalize() {
    if (num_.is_zero()) {
        den_ = ParamPoly(1);
        return;
    }
    // rationalize radicals in the denominator
    for (int guard = 0; guard < 64; ++guard) {
        std::string rad;
        for (const auto& [m, c] : den_.terms()) {
            for (const auto& p : m)
                if (radicand_of(p.first)) { rad = p.first; break; }
            if (!rad.empty()) break;
        }
        if (rad.empty()) break;
        auto [a, b] = den_.split_linear(rad);
        ParamPoly conj = a - b * ParamPoly::symbol(rad);
        num_ = num_ * conj;
        den_ = den_ * conj;
    }
    if (den_.is_constant()) {
        Rat c = den_.constant_term();
        ParamPoly q;
        for (const auto& [m, v] : num_.terms()) q.terms_[m] = v / c;
        num_ = q;
        den_ = ParamPoly(1);
        return;
    }
    // common monomial factor
    ParamMono g = num_.terms().begin()->first;
    auto meet = [&](const ParamPoly& p) {
        for (const auto& [m, c] : p.terms()) {
            ParamMono h;
            std::size_t i = 0, j = 0;
            while (i < g.size() && j < m.size()) {
                if (g[i].first == m[j].first) {
                    h.push_back({g[i].first, std::min(g[i].second, m[j].second)});
                    ++i;
                    ++j;
                } else if (g[i].first < m[j].first) ++i;
                else ++j;
            }
            g = h;
        }
    };
    meet(num_);
    meet(den_);
    if (!g.empty()) {
        auto strip = [&](const ParamPoly& p) {
            ParamPoly q;
            for (const auto& [m, c] : p.terms()) q.terms_[*mono_div(m, g)] = c;
            return q;
        };
        num_ = strip(num_);
        den_ = strip(den_);
    }
    // make the denominator primitive with positive leading coefficient
    Rat k = content_of(den_);
    if (den_.terms().begin()->second < 0) k = -k;
    if (k != 1) {
        ParamPoly a, b;
        for (const auto& [m, c] : num_.terms()) a.terms_[m] = c / k;
        for (const auto& [m, c] : den_.terms()) b.terms_[m] = c / k;
        num_ = a;
        den_ = b;
    }
    if (auto q = num_.divide_exact(den_)) {
        num_ = *q;
        den_ = ParamPoly(1);
    } else if (!num_.is_constant()) {
        if (auto r = den_.divide_exact(num_)) {
            num_ = ParamPoly(1);
            den_ = *r;
            normalize();
        }
    }
}

ParamScalar ParamScalar::operator+(const ParamScalar& o) const {
    if (den_ == o.den_) return ParamScalar(num_ + o.num_, den_);
    return ParamScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ParamScalar ParamScalar::operator-() const {
    ParamScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

ParamScalar ParamScalar::operator-(const ParamScalar& o) const { return *this + (-o); }

ParamScalar ParamScalar::operator*(const ParamScalar& o) const {
    if (den_.is_constant() && o.den_.is_constant()) {
        ParamScalar r;
        r.num_ = num_ * o.num_;
        return r;
    }
    return ParamScalar(num_ * o.num_, den_ * o.den_);
}

ParamScalar ParamScalar::operator/(const ParamScalar& o) const {
    if (o.is_zero()) throw Error("division_by_zero", "division by zero");
    return ParamScalar(num_ * o.den_, den_ * o.num_);
}

bool ParamScalar::operator==(const ParamScalar& o) const { return (num_ * o.den_ - o.num_ * den_).is_zero(); }

std::string ParamScalar::to_string() const {
    if (den_.is_constant()) return num_.to_string();
    auto bare = [](const ParamPoly& p) { return p.terms().size() == 1 && p.terms().begin()->second > 0; };
    std::string n = bare(num_) ? num_.to_string() : "(" + num_.to_string() + ")";
    const auto& [dm, dc] = *den_.terms().begin();
    bool atom = den_.terms().size() == 1 && dc == 1 && dm.size() == 1;
    return n + "/" + (atom ? den_.to_string() : "(" + den_.to_string() + ")");
}

bool ExpsGreater::operator()(const Exps& a, const Exps& b) const {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    return a > b;
}

SparsePoly SparsePoly::constant(std::vector<std::string> vars, const ParamScalar& c) {
    SparsePoly p(std::move(vars));
    p.add_term(Exps(p.vars_.size(), 0), c);
    return p;
}

SparsePoly SparsePoly::variable(std::vector<std::string> vars, const std::string& v) {
    SparsePoly p(std::move(vars));
    Exps e(p.vars_.size(), 0);
    e[static_cast<std::size_t>(p.var_index(v))] = 1;
    p.add_term(e, 1);
    return p;
}

int SparsePoly::var_index(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) throw Error("unknown_variable", "variable not in the ring", v);
    return static_cast<int>(it - vars_.begin());
}

bool SparsePoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                                                [](int x) { return x == 0; }));
}

int SparsePoly::degree(const std::string& v) const {
    std::size_t i = static_cast<std::size_t>(var_index(v));
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

ParamScalar SparsePoly::coefficient(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ParamScalar(0) : it->second;
}

SparsePoly SparsePoly::coefficient_of(const std::string& v, int d) const {
    std::size_t i = static_cast<std::size_t>(var_index(v));
    SparsePoly out(vars_);
    for (const auto& [e, c] : terms_)
        if (e[i] == d) {
            Exps f = e;
            f[i] = 0;
            out.add_term(f, c);
        }
    return out;
}

std::vector<Exps> SparsePoly::monomials() const {
    std::vector<Exps> out;
    for (const auto& [e, c] : terms_) out.push_back(e);
    return out;
}

void SparsePoly::add_term(const Exps& e, const ParamScalar& c) {
    if (e.size() != vars_.size()) throw Error("dimension", "exponent vector does not match the ring");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) terms_.emplace(e, c);
    else if ((it->second += c).is_zero()) terms_.erase(it);
}

void SparsePoly::check_ring(const SparsePoly& o) const {
    if (vars_ != o.vars_) throw Error("ring_mismatch", "polynomials live in different rings");
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    check_ring(o);
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    check_ring(o);
    SparsePoly r(vars_);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            Exps e(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) e[i] = add_exp(a[i], b[i]);
            r.add_term(e, ca * cb);
        }
    return r;
}

SparsePoly SparsePoly::operator*(const ParamScalar& c) const {
    SparsePoly r(vars_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

SparsePoly SparsePoly::pow(int e) const {
    if (e < 0) throw Error("domain", "negative power");
    SparsePoly r = constant(vars_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
        if (e != it->first || c != it->second) return false;
        ++it;
    }
    return true;
}

std::string SparsePoly::monomial_string(const Exps& e) const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars_[i];
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string m = monomial_string(e);
        std::string cs = c.to_string();
        bool simple = c.den().is_constant() && c.num().terms().size() == 1;
        bool neg = simple && c.num().terms().begin()->second < 0;
        if (neg) cs = (-c).to_string();
        std::string t;
        if (m.empty()) t = simple ? cs : "(" + cs + ")";
        else if (simple && cs == "1") t = m;
        else t = (simple ? cs : "(" + cs + ")") + "*" + m;
        if (out.empty()) out = (neg ? "-" : "") + t;
        else out += (neg ? " - " : " + ") + t;
    }
    return out;
}

SparsePoly substitute(const SparsePoly& p, const std::map<std::string, SparsePoly>& bindings) {
    const auto& vars = p.vars();
    std::vector<const SparsePoly*> bound(vars.size(), nullptr);
    for (const auto& [v, q] : bindings) {
        bound[static_cast<std::size_t>(p.var_index(v))] = &q;
        if (q.vars() != vars) throw Error("ring_mismatch", "binding lives in a different ring", v);
    }
    std::vector<std::map<int, SparsePoly>> powers(vars.size());
    auto power = [&](std::size_t i, int e) -> const SparsePoly& {
        auto it = powers[i].find(e);
        if (it != powers[i].end()) return it->second;
        return powers[i].emplace(e, bound[i]->pow(e)).first->second;
    };
    SparsePoly out(vars);
    for (const auto& [e, c] : p.terms()) {
        Exps rest = e;
        SparsePoly t = SparsePoly::constant(vars, c);
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (bound[i] && e[i] > 0) {
                rest[i] = 0;
                t = t * power(i, e[i]);
            }
        SparsePoly m(vars);
        m.add_term(rest, 1);
        out = out + t * m;
    }
    return out;
}

SparsePoly pullback(const SparsePoly& p, const std::map<std::string, MonomialImage>& map,
                    const std::vector<std::string>& domain_vars) {
    SparsePoly out(domain_vars);
    std::vector<const MonomialImage*> img;
    for (const auto& v : p.vars()) {
        auto it = map.find(v);
        img.push_back(it == map.end() ? nullptr : &it->second);
    }
    SparsePoly probe(domain_vars);
    for (const auto& [e, c] : p.terms()) {
        Exps de(domain_vars.size(), 0);
        ParamScalar s = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!img[i]) throw Error("unmapped_variable", "codomain variable has no image", p.vars()[i]);
            for (int k = 0; k < e[i]; ++k) s = s * img[i]->scalar;
            for (const auto& [dv, x] : img[i]->exponents) {
                std::size_t j = static_cast<std::size_t>(probe.var_index(dv));
                de[j] = add_exp(de[j], x * e[i]);
            }
        }
        out.add_term(de, s);
    }
    return out;
}

PseudoDivision pseudo_divide(const SparsePoly& f, const SparsePoly& g, const std::string& var) {
    int d = g.degree(var);
    if (d <= 0) throw Error("constant_divisor", "divisor has degree zero in the variable", var);
    const auto& vars = f.vars();
    std::size_t vi = static_cast<std::size_t>(f.var_index(var));
    SparsePoly lc = g.coefficient_of(var, d);
    bool unit = lc.is_constant();
    ParamScalar lc_inv = unit ? ParamScalar(1) / lc.terms().begin()->second : ParamScalar(1);
    PseudoDivision out{SparsePoly(vars), f, 0};
    while (!out.remainder.is_zero()) {
        int r = out.remainder.degree(var);
        if (r < d) break;
        SparsePoly t = out.remainder.coefficient_of(var, r);
        Exps shift(vars.size(), 0);
        shift[vi] = r - d;
        SparsePoly x(vars);
        x.add_term(shift, 1);
        t = t * x;
        if (unit) {
            t = t * lc_inv;
            out.quotient = out.quotient + t;
            out.remainder = out.remainder - t * g;
        } else {
            out.quotient = out.quotient * lc + t;
            out.remainder = out.remainder * lc - t * g;
            ++out.power;
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    const std::vector<std::string>& vars;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("parse_error", what, s.substr(0, i) + " <here> " + s.substr(i));
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    ParamScalar as_scalar(const SparsePoly& p) const {
        if (!p.is_constant()) throw Error("parse_error", "expected a scalar expression", s);
        return p.is_zero() ? ParamScalar(0) : p.terms().begin()->second;
    }
    SparsePoly expr() {
        SparsePoly r = term();
        while (true) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    SparsePoly term() {
        SparsePoly r = unary();
        while (true) {
            if (eat('*')) r = r * unary();
            else if (eat('/')) {
                ParamScalar d = as_scalar(unary());
                if (d.is_zero()) fail("division by zero");
                r = r * (ParamScalar(1) / d);
            } else return r;
        }
    }
    SparsePoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        SparsePoly b = primary();
        if (eat('^')) {
            skip();
            std::size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (st == i) fail("expected an exponent");
            b = b.pow(std::stoi(s.substr(st, i - st)));
        }
        return b;
    }
    SparsePoly primary() {
        skip();
        if (i == s.size()) fail("unexpected end of input");
        if (eat('(')) {
            SparsePoly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            std::string digits = s.substr(st, i - st);
            Int scale = 1;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    digits += s[i++];
                    scale *= 10;
                }
            }
            digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
            return SparsePoly::constant(vars, Rat(Int(digits), scale));
        }
        if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
            std::size_t st = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            std::string id = s.substr(st, i - st);
            if (id == "sqrt") {
                if (!eat('(')) fail("expected '(' after sqrt");
                ParamScalar a = as_scalar(expr());
                if (!eat(')')) fail("expected ')'");
                return SparsePoly::constant(vars, ParamScalar::sqrt(a));
            }
            if (std::find(vars.begin(), vars.end(), id) != vars.end()) return SparsePoly::variable(vars, id);
            return SparsePoly::constant(vars, ParamScalar::param(id));
        }
        fail("unexpected character");
    }
};

}  // namespace

SparsePoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    Parser p{text, vars};
    SparsePoly r = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

ParamScalar parse_scalar(const std::string& text) {
    SparsePoly p = parse_poly(text, {});
    return p.is_zero() ? ParamScalar(0) : p.terms().begin()->second;
}

}  // namespace toric
