#include "polynomial.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>

#include <json.hpp>

#include "errors.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

// --- Monomial ----------------------------------------------------------------

Monomial Monomial::from_pairs(std::vector<std::pair<int, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    Monomial m;
    for (const auto& [v, e] : pairs) {
        if (e < 0) fail(Errc::invalid_argument, "negative exponent");
        if (e == 0) continue;
        if (!m.exps_.empty() && m.exps_.back().first == v)
            m.exps_.back().second += e;
        else
            m.exps_.emplace_back(v, e);
    }
    return m;
}

Monomial Monomial::var(int v, int exp) { return from_pairs({{v, exp}}); }

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [v, e] : exps_) d += e;
    return d;
}

int Monomial::exponent_of(int v) const {
    for (const auto& [w, e] : exps_)
        if (w == v) return e;
    return 0;
}

std::vector<int> Monomial::support() const {
    std::vector<int> s;
    s.reserve(exps_.size());
    for (const auto& [v, e] : exps_) s.push_back(v);
    return s;
}

Monomial Monomial::without_var(int v) const {
    Monomial m;
    for (const auto& p : exps_)
        if (p.first != v) m.exps_.push_back(p);
    return m;
}

Monomial Monomial::times(const Monomial& other) const {
    std::vector<std::pair<int, int>> merged = exps_;
    merged.insert(merged.end(), other.exps_.begin(), other.exps_.end());
    return from_pairs(std::move(merged));
}

bool MonomialGradedLex::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // Same degree: walk both sparse lists; at the smallest differing variable
    // the larger exponent sorts first.
    auto ia = a.exps().begin(), ea = a.exps().end();
    auto ib = b.exps().begin(), eb = b.exps().end();
    while (ia != ea || ib != eb) {
        int va = (ia != ea) ? ia->first : INT_MAX;
        int vb = (ib != eb) ? ib->first : INT_MAX;
        int v = std::min(va, vb);
        int xa = (va == v) ? ia->second : 0;
        int xb = (vb == v) ? ib->second : 0;
        if (xa != xb) return xa > xb;
        if (va == v) ++ia;
        if (vb == v) ++ib;
    }
    return false;
}

// --- Polynomial ---------------------------------------------------------------

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 0) fail(Errc::invalid_argument, "negative variable count");
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

int Polynomial::degree_in(int v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(v));
    return d;
}

Rat Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

std::vector<int> Polynomial::variables_used() const {
    std::vector<bool> seen(nvars_, false);
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.exps()) seen[v] = true;
    std::vector<int> out;
    for (int v = 0; v < nvars_; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
    if (mpq_sgn(c.get_mpq_t()) == 0) return;
    if (m.max_var() >= nvars_)
        fail(Errc::invalid_argument, "variable index " + std::to_string(m.max_var()) +
                                         " out of range (n=" + std::to_string(nvars_) + ")");
    Rat canonical = c;
    canonical.canonicalize();  // callers may hand over unreduced fractions
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(canonical));
    } else {
        it->second += canonical;
        if (mpq_sgn(it->second.get_mpq_t()) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    out.nvars_ = std::max(nvars_, other.nvars_);
    for (const auto& [m, c] : other.terms_) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial out = *this;
    out.nvars_ = std::max(nvars_, other.nvars_);
    for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out(std::max(nvars_, other.nvars_));
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
}

Polynomial Polynomial::scaled(const Rat& c) const {
    Polynomial out(nvars_);
    if (c == 0) return out;
    for (const auto& [m, coef] : terms_) out.terms_.emplace(m, coef * c);
    return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
}

Polynomial Polynomial::constant(int nvars, const Rat& c) {
    Polynomial p(nvars);
    p.add_term(Monomial::one(), c);
    return p;
}

// --- instance I/O --------------------------------------------------------------

Polynomial parse_instance(const std::string& text) {
    // Guards on structurally valid but hostile documents: exponents are kept
    // small enough that exact powering cannot exhaust memory.
    constexpr long kMaxVariables = 1'000'000;
    constexpr long kMaxExponent = 4096;
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::parse, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("terms"))
        fail(Errc::parse, "instance must be an object with \"n\" and \"terms\"");
    if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 0 ||
        doc["n"].get<long>() > kMaxVariables)
        fail(Errc::parse, "\"n\" must be an integer in [0, " + std::to_string(kMaxVariables) + "]");
    int n = doc["n"].get<int>();
    if (!doc["terms"].is_array()) fail(Errc::parse, "\"terms\" must be an array");

    Polynomial p(n);
    std::size_t pos = 0;
    for (const auto& term : doc["terms"]) {
        const std::string where = "term " + std::to_string(pos);
        if (!term.is_object() || !term.contains("coef") || !term.contains("exps"))
            fail(Errc::parse, where + ": expected {\"coef\", \"exps\"}");
        Rat coef;
        const auto& cj = term["coef"];
        if (cj.is_string()) {
            try {
                coef = rat_from_string(cj.get<std::string>());
            } catch (const Error& e) {
                fail(Errc::parse, where + ": " + e.what());
            }
        } else if (cj.is_number_integer()) {
            coef = Rat(cj.get<long>());
        } else {
            fail(Errc::parse, where + ": coefficient must be a rational string or integer");
        }
        if (!term["exps"].is_array()) fail(Errc::parse, where + ": \"exps\" must be an array");
        std::vector<std::pair<int, int>> pairs;
        long term_degree = 0;
        for (const auto& pe : term["exps"]) {
            if (!pe.is_array() || pe.size() != 2 || !pe[0].is_number_integer() ||
                !pe[1].is_number_integer())
                fail(Errc::parse, where + ": exponent entries must be [var, exp] pairs");
            const long v = pe[0].get<long>(), e = pe[1].get<long>();
            if (v < 0 || v >= n)
                fail(Errc::parse, where + ": variable index " + std::to_string(v) +
                                      " out of range (n=" + std::to_string(n) + ")");
            if (e < 0) fail(Errc::parse, where + ": negative exponent");
            term_degree += e;
            if (e > kMaxExponent || term_degree > kMaxExponent)
                fail(Errc::parse, where + ": exponents beyond the supported degree cap " +
                                      std::to_string(kMaxExponent));
            pairs.emplace_back(static_cast<int>(v), static_cast<int>(e));
        }
        p.add_term(Monomial::from_pairs(std::move(pairs)), coef);
        ++pos;
    }
    return p;
}

std::string serialize_instance(const Polynomial& p) {
    ordered_json doc;
    doc["n"] = p.nvars();
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        ordered_json t;
        t["coef"] = rat_to_string(c);
        ordered_json exps = ordered_json::array();
        for (const auto& [v, e] : m.exps()) exps.push_back(ordered_json::array({v, e}));
        t["exps"] = std::move(exps);
        terms.push_back(std::move(t));
    }
    doc["terms"] = std::move(terms);
    return doc.dump();
}

// --- evaluation ------------------------------------------------------------------

Rat evaluate(const Polynomial& p, const std::vector<Rat>& x) {
    if (static_cast<int>(x.size()) != p.nvars())
        fail(Errc::invalid_argument, "point dimension mismatch");
    Rat sum(0);
    for (const auto& [m, c] : p.terms()) {
        Rat v = c;
        for (const auto& [var, e] : m.exps()) v *= rat_pow(x[var], static_cast<unsigned>(e));
        sum += v;
    }
    return sum;
}

double evaluate(const Polynomial& p, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.nvars())
        fail(Errc::invalid_argument, "point dimension mismatch");
    double sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double v = rat_to_double(c);
        for (const auto& [var, e] : m.exps()) {
            double b = x[var];
            for (int k = 0; k < e; ++k) v *= b;
        }
        sum += v;
    }
    return sum;
}

Polynomial substitute(const Polynomial& p, const std::map<int, Rat>& fixings) {
    for (const auto& [v, val] : fixings) {
        if (v < 0 || v >= p.nvars())
            fail(Errc::invalid_argument, "fixing out-of-range variable " + std::to_string(v));
        if (val < 0 || val > 1)
            fail(Errc::invalid_argument, "fixed value outside [0,1] for variable " + std::to_string(v));
    }
    Polynomial out(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        Rat coef = c;
        std::vector<std::pair<int, int>> kept;
        for (const auto& [v, e] : m.exps()) {
            auto it = fixings.find(v);
            if (it == fixings.end())
                kept.emplace_back(v, e);
            else
                coef *= rat_pow(it->second, static_cast<unsigned>(e));
        }
        out.add_term(Monomial::from_pairs(std::move(kept)), coef);
    }
    return out;
}

std::vector<Polynomial> collect_in_variable(const Polynomial& p, int i) {
    if (i < 0 || i >= p.nvars()) fail(Errc::invalid_argument, "variable index out of range");
    std::vector<Polynomial> out(static_cast<std::size_t>(p.degree_in(i)) + 1, Polynomial(p.nvars()));
    for (const auto& [m, c] : p.terms()) out[m.exponent_of(i)].add_term(m.without_var(i), c);
    return out;
}

ChordDeficit chord_deficit(const Polynomial& p, int i) {
    if (i < 0 || i >= p.nvars()) fail(Errc::invalid_argument, "variable index out of range");
    const Polynomial at0 = substitute(p, {{i, Rat(0)}});
    const Polynomial at1 = substitute(p, {{i, Rat(1)}});
    Polynomial xi(p.nvars());
    xi.add_term(Monomial::var(i), Rat(1));
    Polynomial one_minus_xi = Polynomial::constant(p.nvars(), Rat(1)) - xi;
    Polynomial delta = p - one_minus_xi * at0 - xi * at1;

    // Divide by x_i(1-x_i) in the variable x_i: with delta = sum b_m x_i^m and
    // h = sum h_j x_i^j, the identity delta = x_i h - x_i^2 h forces
    // h_j = b_{j+1} + h_{j-1}.
    std::vector<Polynomial> b = collect_in_variable(delta, i);
    const int top = static_cast<int>(b.size()) - 1;
    Polynomial h(p.nvars());
    if (top >= 2) {
        std::vector<Polynomial> hj(static_cast<std::size_t>(top) - 1, Polynomial(p.nvars()));
        for (int j = 0; j <= top - 2; ++j) {
            hj[j] = b[j + 1];
            if (j >= 1) hj[j] = hj[j] + hj[j - 1];
        }
        for (int j = 0; j <= top - 2; ++j)
            for (const auto& [mono, coef] : hj[j].terms())
                h.add_term(j == 0 ? mono : mono.times(Monomial::var(i, j)), coef);
    }
    Polynomial check = xi * (Polynomial::constant(p.nvars(), Rat(1)) - xi) * h;
    if (!(check == delta))
        fail(Errc::internal, "chord deficit not divisible by x_i(1-x_i); arithmetic bug");
    return ChordDeficit{std::move(delta), std::move(h), true};
}

Polynomial multilinear_from_table(int m, const std::vector<Rat>& table) {
    if (m < 0 || m > kMultilinearArityCap)
        fail(Errc::cap_exceeded, "multilinear arity " + std::to_string(m) + " above cap " +
                                     std::to_string(kMultilinearArityCap));
    const std::size_t size = std::size_t{1} << m;
    if (table.size() != size) fail(Errc::invalid_argument, "table must have 2^m entries");
    std::vector<Rat> c = table;
    for (int bit = 0; bit < m; ++bit)
        for (std::size_t mask = 0; mask < size; ++mask)
            if (mask & (std::size_t{1} << bit)) c[mask] -= c[mask ^ (std::size_t{1} << bit)];
    Polynomial p(m);
    for (std::size_t mask = 0; mask < size; ++mask) {
        if (c[mask] == 0) continue;
        std::vector<std::pair<int, int>> pairs;
        for (int j = 0; j < m; ++j)
            if (mask & (std::size_t{1} << j)) pairs.emplace_back(j, 1);
        p.add_term(Monomial::from_pairs(std::move(pairs)), c[mask]);
    }
    return p;
}

std::vector<double> moebius_transform(int m, std::vector<double> table) {
    const std::size_t size = std::size_t{1} << m;
    if (table.size() != size) fail(Errc::invalid_argument, "table must have 2^m entries");
    for (int bit = 0; bit < m; ++bit)
        for (std::size_t mask = 0; mask < size; ++mask)
            if (mask & (std::size_t{1} << bit)) table[mask] -= table[mask ^ (std::size_t{1} << bit)];
    return table;
}

// --- quadratic view ----------------------------------------------------------------

Rat QuadraticForm::entry(int i, int j) const {
    auto it = q.find(i <= j ? std::make_pair(i, j) : std::make_pair(j, i));
    return it == q.end() ? Rat(0) : it->second;
}

Polynomial QuadraticForm::reconstruct() const {
    Polynomial p(n);
    for (const auto& [ij, v] : q) {
        auto [i, j] = ij;
        if (i == j)
            p.add_term(Monomial::var(i, 2), v);
        else
            p.add_term(Monomial::from_pairs({{i, 1}, {j, 1}}), v * 2);
    }
    for (int i = 0; i < n; ++i) p.add_term(Monomial::var(i), linear[i]);
    p.add_term(Monomial::one(), constant);
    return p;
}

QuadraticForm quadratic_parts(const Polynomial& p) {
    if (p.degree() > 2) fail(Errc::degree, "quadratic_parts requires degree <= 2");
    QuadraticForm f;
    f.n = p.nvars();
    f.linear.assign(p.nvars(), Rat(0));
    f.constant = 0;
    for (const auto& [m, c] : p.terms()) {
        const auto& e = m.exps();
        if (e.empty()) {
            f.constant = c;
        } else if (e.size() == 1 && e[0].second == 1) {
            f.linear[e[0].first] = c;
        } else if (e.size() == 1 && e[0].second == 2) {
            f.q[{e[0].first, e[0].first}] = c;
        } else {
            f.q[{e[0].first, e[1].first}] = c / 2;
        }
    }
    return f;
}

Polynomial relabel_to_compact(const Polynomial& p, const std::vector<int>& vars) {
    std::map<int, int> to_new;
    for (std::size_t k = 0; k < vars.size(); ++k) to_new[vars[k]] = static_cast<int>(k);
    Polynomial out(static_cast<int>(vars.size()));
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [v, e] : m.exps()) {
            auto it = to_new.find(v);
            if (it == to_new.end())
                fail(Errc::internal, "relabel: variable " + std::to_string(v) + " not in block");
            pairs.emplace_back(it->second, e);
        }
        out.add_term(Monomial::from_pairs(std::move(pairs)), c);
    }
    return out;
}

std::size_t encoding_bits(const Polynomial& p) {
    std::size_t bits = 0;
    for (const auto& [m, c] : p.terms()) {
        bits += mpz_sizeinbase(mpq_numref(c.get_mpq_t()), 2);
        bits += mpz_sizeinbase(mpq_denref(c.get_mpq_t()), 2);
        for (const auto& [v, e] : m.exps()) {
            bits += 8 * sizeof(int);  // variable id
            bits += static_cast<std::size_t>(std::bit_width(static_cast<unsigned>(e)));
        }
    }
    return bits;
}

}  // namespace boxpoly
