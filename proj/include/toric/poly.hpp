#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

// Monomial in parameter symbols: (name, exponent) sorted by name, exponents positive.
using ParamMono = std::vector<std::pair<std::string, int>>;

struct ParamMonoGreater {
    bool operator()(const ParamMono& a, const ParamMono& b) const;
};

// Polynomial over Q in parameter symbols. Radical symbols are kept at exponent <= 1.
class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(long c) : ParamPoly(Rat(c)) {}
    ParamPoly(const Rat& c);
    static ParamPoly symbol(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    const std::map<ParamMono, Rat, ParamMonoGreater>& terms() const { return terms_; }
    bool contains_symbol(const std::string& name) const;

    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator-() const;
    ParamPoly operator*(const ParamPoly& o) const;
    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }

    // Exact quotient if o divides this, else nullopt.
    std::optional<ParamPoly> divide_exact(const ParamPoly& o) const;
    // Split as a + b*r for a radical symbol r.
    std::pair<ParamPoly, ParamPoly> split_linear(const std::string& r) const;

    std::string to_string() const;

    void add_term(ParamMono m, const Rat& c);

private:
    std::map<ParamMono, Rat, ParamMonoGreater> terms_;
    friend class ParamScalar;
};

// Element of the parameter field: num/den with radicals rationalized out of den.
class ParamScalar {
public:
    ParamScalar() = default;
    ParamScalar(long c) : num_(c), den_(1) {}
    ParamScalar(const Rat& c) : num_(c), den_(1) {}
    ParamScalar(ParamPoly num, ParamPoly den = ParamPoly(1));

    static ParamScalar param(const std::string& name);
    // Formal square root of a parameter expression; r^2 rewrites to the radicand.
    static ParamScalar sqrt(const ParamScalar& radicand);

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    ParamScalar operator+(const ParamScalar& o) const;
    ParamScalar operator-(const ParamScalar& o) const;
    ParamScalar operator-() const;
    ParamScalar operator*(const ParamScalar& o) const;
    ParamScalar operator/(const ParamScalar& o) const;
    ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
    ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
    bool operator==(const ParamScalar& o) const;
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void normalize();
    ParamPoly num_{0}, den_{1};
};

// Radicand of a registered radical symbol, if any.
std::optional<ParamPoly> radicand_of(const std::string& symbol);

using Exps = std::vector<int>;

struct ExpsGreater {
    bool operator()(const Exps& a, const Exps& b) const;  // descending graded lex
};

class SparsePoly {
public:
    SparsePoly() = default;
    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    static SparsePoly constant(std::vector<std::string> vars, const ParamScalar& c);
    static SparsePoly variable(std::vector<std::string> vars, const std::string& v);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exps, ParamScalar, ExpsGreater>& terms() const { return terms_; }
    int var_index(const std::string& v) const;  // throws unknown_variable
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int degree(const std::string& v) const;
    ParamScalar coefficient(const Exps& e) const;
    // Coefficient of v^d as a polynomial in the remaining variables (same ring).
    SparsePoly coefficient_of(const std::string& v, int d) const;
    std::vector<Exps> monomials() const;

    void add_term(const Exps& e, const ParamScalar& c);
    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator-() const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly operator*(const ParamScalar& c) const;
    SparsePoly pow(int e) const;
    bool operator==(const SparsePoly& o) const;
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    std::string to_string() const;
    std::string monomial_string(const Exps& e) const;

private:
    void check_ring(const SparsePoly& o) const;
    std::vector<std::string> vars_;
    std::map<Exps, ParamScalar, ExpsGreater> terms_;
};

SparsePoly substitute(const SparsePoly& p, const std::map<std::string, SparsePoly>& bindings);

struct MonomialImage {
    ParamScalar scalar{1};
    std::map<std::string, int> exponents;  // domain variable -> exponent
};
SparsePoly pullback(const SparsePoly& p, const std::map<std::string, MonomialImage>& map,
                    const std::vector<std::string>& domain_vars);

struct PseudoDivision {
    SparsePoly quotient;
    SparsePoly remainder;
    int power = 0;
};
PseudoDivision pseudo_divide(const SparsePoly& f, const SparsePoly& g, const std::string& var);

// Parse "3*c*b0 + e^2*b1 - sqrt(12)*x/2"; identifiers outside `vars` are parameters.
SparsePoly parse_poly(const std::string& text, const std::vector<std::string>& vars);
ParamScalar parse_scalar(const std::string& text);

}  // namespace toric
