#include "modq/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace modq {

long long MonicMonomial::total_degree() const {
    long long d = 0;
    for (auto& [v, e] : exps) d += e;
    return d;
}

int MonicMonomial::degree_in(int var) const {
    auto it = exps.find(var);
    return it == exps.end() ? 0 : it->second;
}

int MonicMonomial::eval(const PrimeField& f, const Point& x) const {
    int acc = 1;
    for (auto& [v, e] : exps) {
        if (v < 0 || v >= static_cast<int>(x.size()))
            throw precondition_error("MonicMonomial::eval: variable index out of range");
        acc = f.mul(acc, f.pow(x[v], static_cast<std::uint64_t>(e)));
    }
    return acc;
}

MonicMonomial MonicMonomial::folded(const PrimeField& f) const {
    MonicMonomial r;
    for (auto& [v, e] : exps) r.exps[v] = f.fold_exponent(e);
    return r;
}

MonicMonomial MonicMonomial::operator*(const MonicMonomial& o) const {
    MonicMonomial r = *this;
    for (auto& [v, e] : o.exps) r.exps[v] += e;
    return r;
}

bool MonicMonomial::operator<(const MonicMonomial& o) const {
    long long da = total_degree(), db = o.total_degree();
    if (da != db) return da < db;
    // Lexicographic comparison of the dense exponent vectors: walk both
    // sparse maps in variable order; a missing entry is exponent 0.
    auto a = exps.begin();
    auto b = o.exps.begin();
    while (a != exps.end() || b != o.exps.end()) {
        int va = a == exps.end() ? INT32_MAX : a->first;
        int vb = b == o.exps.end() ? INT32_MAX : b->first;
        if (va < vb) return false; // we have a positive exponent where o has 0
        if (vb < va) return true;
        if (a->second != b->second) return a->second < b->second;
        ++a;
        ++b;
    }
    return false;
}

std::string MonicMonomial::str() const {
    if (exps.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : exps) {
        if (!first) os << '*';
        first = false;
        os << 'x' << (v + 1);
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

MonicMonomial make_monomial(std::initializer_list<std::pair<int, int>> exps) {
    MonicMonomial m;
    for (auto& [v, e] : exps) {
        if (e < 0) throw precondition_error("make_monomial: negative exponent");
        if (e > 0) m.exps[v] += e;
    }
    return m;
}

void ExplicitPolynomial::normalize() { std::sort(terms.begin(), terms.end()); }

bool ExplicitPolynomial::is_normalized() const {
    return std::is_sorted(terms.begin(), terms.end());
}

int ExplicitPolynomial::eval(const Point& x) const {
    PrimeField f(p);
    if (static_cast<int>(x.size()) != n_vars)
        throw precondition_error("ExplicitPolynomial::eval: point has wrong arity");
    int acc = 0;
    for (auto& t : terms) acc = f.add(acc, t.eval(f, x));
    return acc;
}

long long ExplicitPolynomial::max_term_degree() const {
    long long d = 0;
    for (auto& m : distinct_monomials()) d = std::max(d, m.total_degree());
    return d;
}

bool ExplicitPolynomial::is_zecote() const {
    for (auto& m : distinct_monomials())
        if (m.is_constant()) return false;
    return true;
}

std::vector<MonicMonomial> ExplicitPolynomial::distinct_monomials() const {
    std::vector<MonicMonomial> out;
    for (auto& [m, c] : collect(*this).coeffs) {
        (void)c;
        out.push_back(m);
    }
    return out;
}

std::string ExplicitPolynomial::str() const { return collect(*this).str(); }

int CoefficientPolynomial::eval(const Point& x) const {
    PrimeField f(p);
    int acc = 0;
    for (auto& [m, c] : coeffs) acc = f.add(acc, f.mul(c, m.eval(f, x)));
    return acc;
}

std::string CoefficientPolynomial::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : coeffs) {
        if (!first) os << " + ";
        first = false;
        if (m.is_constant())
            os << c;
        else if (c == 1)
            os << m.str();
        else
            os << c << '*' << m.str();
    }
    return os.str();
}

CoefficientPolynomial collect(const ExplicitPolynomial& f) {
    PrimeField field(f.p);
    CoefficientPolynomial r;
    r.p = f.p;
    r.n_vars = f.n_vars;
    for (auto& t : f.terms) {
        int& c = r.coeffs[t];
        c = field.add(c, 1);
    }
    for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
        it = it->second == 0 ? r.coeffs.erase(it) : std::next(it);
    return r;
}

ExplicitPolynomial expand(const CoefficientPolynomial& f) {
    ExplicitPolynomial r;
    r.p = f.p;
    r.n_vars = f.n_vars;
    for (auto& [m, c] : f.coeffs)
        for (int i = 0; i < c; ++i) r.terms.push_back(m);
    // Map iteration is already canonical, but keep the invariant explicit.
    r.normalize();
    return r;
}

CoefficientPolynomial cp_add(const CoefficientPolynomial& a, const CoefficientPolynomial& b) {
    if (a.p != b.p) throw precondition_error("cp_add: mixed characteristics");
    PrimeField f(a.p);
    CoefficientPolynomial r = a;
    r.n_vars = std::max(a.n_vars, b.n_vars);
    for (auto& [m, c] : b.coeffs) {
        int& rc = r.coeffs[m];
        rc = f.add(rc, c);
        if (rc == 0) r.coeffs.erase(m);
    }
    return r;
}

CoefficientPolynomial cp_scale(const CoefficientPolynomial& a, int c) {
    PrimeField f(a.p);
    c = f.reduce(c);
    CoefficientPolynomial r;
    r.p = a.p;
    r.n_vars = a.n_vars;
    if (c == 0) return r;
    for (auto& [m, mc] : a.coeffs) r.coeffs[m] = f.mul(mc, c);
    return r;
}

CoefficientPolynomial cp_mul(const CoefficientPolynomial& a, const CoefficientPolynomial& b) {
    if (a.p != b.p) throw precondition_error("cp_mul: mixed characteristics");
    PrimeField f(a.p);
    CoefficientPolynomial r;
    r.p = a.p;
    r.n_vars = std::max(a.n_vars, b.n_vars);
    for (auto& [ma, ca] : a.coeffs)
        for (auto& [mb, cb] : b.coeffs) {
            MonicMonomial m = ma * mb;
            int& rc = r.coeffs[m];
            rc = f.add(rc, f.mul(ca, cb));
            if (rc == 0) r.coeffs.erase(m);
        }
    return r;
}

CoefficientPolynomial cp_fold(const CoefficientPolynomial& a) {
    PrimeField f(a.p);
    CoefficientPolynomial r;
    r.p = a.p;
    r.n_vars = a.n_vars;
    for (auto& [m, c] : a.coeffs) {
        MonicMonomial fm = m.folded(f);
        int& rc = r.coeffs[fm];
        rc = f.add(rc, c);
        if (rc == 0) r.coeffs.erase(fm);
    }
    return r;
}

bool PolynomialSystem::is_zecote() const {
    for (auto& f : polys)
        if (!f.is_zecote()) return false;
    return true;
}

long long PolynomialSystem::degree_sum() const {
    long long d = 0;
    for (auto& f : polys) d += f.max_term_degree();
    return d;
}

std::vector<int> PolynomialSystem::eval(const Point& x) const {
    std::vector<int> out;
    out.reserve(polys.size());
    for (auto& f : polys) out.push_back(f.eval(x));
    return out;
}

bool PolynomialSystem::vanishes_at(const Point& x) const {
    for (auto& f : polys)
        if (f.eval(x) != 0) return false;
    return true;
}

CWFactor cw_factor(const ExplicitPolynomial& f) {
    PrimeField field(f.p);
    CoefficientPolynomial base = collect(f);
    CoefficientPolynomial acc;
    acc.p = f.p;
    acc.n_vars = f.n_vars;
    acc.coeffs[MonicMonomial{}] = 1;
    for (int i = 0; i < f.p - 1; ++i) acc = cp_fold(cp_mul(acc, base));
    CoefficientPolynomial one;
    one.p = f.p;
    one.n_vars = f.n_vars;
    one.coeffs[MonicMonomial{}] = 1;
    CoefficientPolynomial res = cp_add(one, cp_scale(acc, f.p - 1)); // 1 - f^{p-1}
    CWFactor r;
    r.poly = expand(res);
    return r;
}

std::vector<CWFactor> cw_factors(const PolynomialSystem& sys) {
    std::vector<CWFactor> out;
    out.reserve(sys.polys.size());
    for (auto& f : sys.polys) out.push_back(cw_factor(f));
    return out;
}

bool is_max_degree(const std::vector<CWFactor>& factors, int n_vars,
                   const MonomialTuple& t) {
    if (t.idx.size() != factors.size())
        throw precondition_error("is_max_degree: tuple arity does not match factor count");
    if (factors.empty()) return n_vars == 0;
    PrimeField f(factors.front().poly.p);
    std::vector<long long> deg(static_cast<std::size_t>(n_vars), 0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto& terms = factors[i].poly.terms;
        int j = t.idx[i];
        if (j < 0 || j >= static_cast<int>(terms.size()))
            throw precondition_error("is_max_degree: term index out of range");
        for (auto& [v, e] : terms[j].exps) {
            if (v < 0 || v >= n_vars)
                throw precondition_error("is_max_degree: variable index out of range");
            deg[static_cast<std::size_t>(v)] += e;
        }
    }
    for (int v = 0; v < n_vars; ++v)
        if (f.fold_exponent(deg[static_cast<std::size_t>(v)]) != f.p() - 1) return false;
    return true;
}

namespace {

struct MaxDegreeSearch {
    const std::vector<CWFactor>& factors;
    PrimeField field;
    int n_vars;
    Budget& budget;
    std::vector<int> first_factor_for_var; // factors.size(): variable never occurs
    std::vector<int> last_factor_for_var;  // -1: variable never occurs
    std::vector<std::vector<int>> opened_at; // factor index -> variables it introduces
    // Boundary i sits between factor i (not yet chosen) and factors i+1.. (chosen
    // when processing from the back); the frontier at a boundary holds the
    // variables with occurrences on both sides.
    std::vector<std::vector<int>> frontier;
    // Whether any variable reaches folded degree p-1 depends on its current
    // degree only through the folded class (which encodes both the residue
    // mod p-1 and positivity), so feasibility of the remaining factors is a
    // function of the frontier's folded classes alone and can be memoized.
    std::vector<std::map<std::vector<int>, bool>> memo;
    std::vector<long long> deg;
    MonomialTuple current;
    std::vector<MonomialTuple> out;

    MaxDegreeSearch(const std::vector<CWFactor>& fs, int p, int n, Budget& b)
        : factors(fs), field(p), n_vars(n), budget(b),
          first_factor_for_var(static_cast<std::size_t>(n), static_cast<int>(fs.size())),
          last_factor_for_var(static_cast<std::size_t>(n), -1),
          opened_at(fs.size()), frontier(fs.size() + 1), memo(fs.size() + 1),
          deg(static_cast<std::size_t>(n), 0) {
        for (std::size_t i = fs.size(); i-- > 0;)
            for (auto& t : fs[i].poly.terms)
                for (auto& [v, e] : t.exps) {
                    (void)e;
                    if (v < 0 || v >= n)
                        throw precondition_error("enumerate_max_degree: variable index out of range");
                    first_factor_for_var[static_cast<std::size_t>(v)] = static_cast<int>(i);
                    last_factor_for_var[static_cast<std::size_t>(v)] =
                        std::max(last_factor_for_var[static_cast<std::size_t>(v)],
                                 static_cast<int>(i));
                }
        for (int v = 0; v < n; ++v) {
            int i = first_factor_for_var[static_cast<std::size_t>(v)];
            if (i < static_cast<int>(fs.size()))
                opened_at[static_cast<std::size_t>(i)].push_back(v);
            for (int b2 = i + 1; b2 <= last_factor_for_var[static_cast<std::size_t>(v)]; ++b2)
                frontier[static_cast<std::size_t>(b2)].push_back(v);
        }
        current.idx.assign(fs.size(), 0);
    }

    void run() {
        // A variable that occurs in no factor can never reach degree p-1.
        for (int v = 0; v < n_vars; ++v)
            if (first_factor_for_var[static_cast<std::size_t>(v)] == static_cast<int>(factors.size()))
                return;
        recurse(static_cast<int>(factors.size()) - 1);
    }

    std::vector<int> frontier_state(int boundary) const {
        std::vector<int> key;
        key.reserve(frontier[static_cast<std::size_t>(boundary)].size());
        for (int v : frontier[static_cast<std::size_t>(boundary)])
            key.push_back(field.fold_exponent(deg[static_cast<std::size_t>(v)]));
        return key;
    }

    // Can factors i..0 still drive every remaining variable to folded degree
    // p-1, given the degrees accumulated so far?
    bool feasible(int i) {
        if (i < 0) return true;
        auto key = frontier_state(i + 1);
        auto [it, fresh] = memo[static_cast<std::size_t>(i) + 1].try_emplace(std::move(key), false);
        if (!fresh) return it->second;
        auto& terms = factors[static_cast<std::size_t>(i)].poly.terms;
        bool any = false;
        for (int j = 0; j < static_cast<int>(terms.size()) && !any; ++j) {
            budget.charge(1, "enumerate_max_degree");
            for (auto& [v, e] : terms[static_cast<std::size_t>(j)].exps)
                deg[static_cast<std::size_t>(v)] += e;
            bool ok = true;
            for (int v : opened_at[static_cast<std::size_t>(i)])
                if (field.fold_exponent(deg[static_cast<std::size_t>(v)]) != field.p() - 1) {
                    ok = false;
                    break;
                }
            if (ok) any = feasible(i - 1);
            for (auto& [v, e] : terms[static_cast<std::size_t>(j)].exps)
                deg[static_cast<std::size_t>(v)] -= e;
        }
        it->second = any;
        return any;
    }

    // Factors are processed from the last towards the first: once factor i is
    // chosen, every variable whose earliest occurrence is factor i has its
    // final degree fixed, so the branch dies immediately if the folded degree
    // misses p-1, and infeasible remainders are cut by the memoized frontier
    // check.  (Processing order does not affect the result set.)
    void recurse(int i) {
        if (i < 0) {
            out.push_back(current);
            return;
        }
        auto& terms = factors[static_cast<std::size_t>(i)].poly.terms;
        auto& opened = opened_at[static_cast<std::size_t>(i)];
        for (int j = 0; j < static_cast<int>(terms.size()); ++j) {
            budget.charge(1, "enumerate_max_degree");
            for (auto& [v, e] : terms[static_cast<std::size_t>(j)].exps)
                deg[static_cast<std::size_t>(v)] += e;
            current.idx[static_cast<std::size_t>(i)] = j;
            bool ok = true;
            for (int v : opened)
                if (field.fold_exponent(deg[static_cast<std::size_t>(v)]) != field.p() - 1) {
                    ok = false;
                    break;
                }
            if (ok && feasible(i - 1)) recurse(i - 1);
            for (auto& [v, e] : terms[static_cast<std::size_t>(j)].exps)
                deg[static_cast<std::size_t>(v)] -= e;
        }
    }
};

} // namespace

std::vector<MonomialTuple> enumerate_max_degree(const std::vector<CWFactor>& factors,
                                                int p, int n_vars, Budget& budget) {
    for (auto& f : factors)
        if (f.poly.p != p)
            throw precondition_error("enumerate_max_degree: factor characteristic mismatch");
    if (factors.empty()) {
        if (n_vars == 0) return {MonomialTuple{}};
        return {};
    }
    MaxDegreeSearch s(factors, p, n_vars, budget);
    s.run();
    std::sort(s.out.begin(), s.out.end());
    return std::move(s.out);
}

std::vector<Point> variety(const PolynomialSystem& sys, Budget& budget) {
    std::vector<Point> out;
    Point x(static_cast<std::size_t>(sys.n_vars), 0);
    while (true) {
        budget.charge(1, "variety");
        if (sys.vanishes_at(x)) out.push_back(x);
        int i = sys.n_vars - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == sys.p - 1)
            x[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    return out;
}

CwLemmaReport check_cw_lemma(const PolynomialSystem& sys, Budget& budget) {
    CwLemmaReport rep;
    rep.variety_size = variety(sys, budget).size();
    auto tuples = enumerate_max_degree(cw_factors(sys), sys.p, sys.n_vars, budget);
    rep.max_tuple_count = tuples.size();
    PrimeField f(sys.p);
    int lhs = f.reduce(static_cast<long long>(rep.variety_size % static_cast<std::uint64_t>(sys.p)));
    int rhs = f.mul(sys.n_vars % 2 == 0 ? 1 : f.p() - 1,
                    f.reduce(static_cast<long long>(rep.max_tuple_count % static_cast<std::uint64_t>(sys.p))));
    rep.congruent = lhs == rhs;
    return rep;
}

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

long long parse_int(const std::string& s, std::size_t& i) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw format_error("parse_polynomial: expected integer in '" + s + "'");
    return std::stoll(s.substr(start, i - start));
}

} // namespace

ExplicitPolynomial parse_polynomial(const std::string& text, int p, int n_vars) {
    PrimeField field(p);
    ExplicitPolynomial r;
    r.p = p;
    r.n_vars = n_vars;
    std::size_t i = 0;
    skip_ws(text, i);
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw format_error("parse_polynomial: expected '+' or '-' in '" + text + "'");
        }
        first = false;
        skip_ws(text, i);
        long long coeff = 1;
        MonicMonomial mono;
        bool want_factor = true;
        while (want_factor) {
            skip_ws(text, i);
            if (i >= text.size()) throw format_error("parse_polynomial: dangling term in '" + text + "'");
            if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff = field.mul(field.reduce(coeff), field.reduce(parse_int(text, i)));
            } else if (text[i] == 'x') {
                ++i;
                long long var = parse_int(text, i);
                if (var < 1 || var > n_vars)
                    throw format_error("parse_polynomial: variable x" + std::to_string(var) +
                                       " out of range in '" + text + "'");
                long long exp = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    exp = parse_int(text, i);
                    if (exp < 1) throw format_error("parse_polynomial: exponent must be positive");
                }
                mono.exps[static_cast<int>(var - 1)] += static_cast<int>(exp);
            } else {
                throw format_error("parse_polynomial: unexpected character '" +
                                   std::string(1, text[i]) + "' in '" + text + "'");
            }
            skip_ws(text, i);
            want_factor = i < text.size() && text[i] == '*';
            if (want_factor) ++i;
        }
        int c = field.reduce(sign * field.reduce(coeff));
        for (int k = 0; k < c; ++k) r.terms.push_back(mono);
        skip_ws(text, i);
    }
    r.normalize();
    return r;
}

PolynomialSystem parse_system(const std::vector<std::string>& lines, int p, int n_vars) {
    PolynomialSystem sys;
    sys.p = p;
    sys.n_vars = n_vars;
    for (auto& line : lines) sys.polys.push_back(parse_polynomial(line, p, n_vars));
    return sys;
}

} // namespace modq
