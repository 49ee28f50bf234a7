#include "modq/modsolve.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "modq/error.hpp"
#include "modq/field.hpp"
#include "modq/poly.hpp"

namespace modq {

namespace {

std::vector<int> kernel_vector_fp(const ModMatrix& A, int p) {
    std::size_t m = A.rows(), n = A.cols();
    PrimeField f(p);
    std::vector<std::vector<int>> M(m, std::vector<int>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = f.reduce(A.entries[i][j]);
    std::vector<int> pivot_row_of_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t r = row;
        while (r < m && M[r][col] == 0) ++r;
        if (r == m) continue;
        std::swap(M[r], M[row]);
        int inv = f.inv(M[row][col]);
        for (std::size_t j = col; j < n; ++j) M[row][j] = f.mul(M[row][j], inv);
        for (std::size_t r2 = 0; r2 < m; ++r2) {
            if (r2 == row || M[r2][col] == 0) continue;
            int c = M[r2][col];
            for (std::size_t j = col; j < n; ++j)
                M[r2][j] = f.sub(M[r2][j], f.mul(c, M[row][j]));
        }
        pivot_row_of_col[col] = static_cast<int>(row);
        ++row;
    }
    std::size_t free_col = n;
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_row_of_col[c] < 0) {
            free_col = c;
            break;
        }
    if (free_col == n)
        throw precondition_error("kernel_vector: trivial kernel (need more columns than rank)");
    std::vector<int> x(n, 0);
    x[free_col] = 1;
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_row_of_col[c] >= 0) x[c] = f.neg(M[pivot_row_of_col[c]][free_col]);
    return x;
}

// Columns the recursive solver needs to be guaranteed to succeed: every
// peeled prime costs a factor m+1 (the kernel step needs more columns than
// rows), so (m+1)^{N(q)} in total.
std::uint64_t solver_required_cols(std::size_t m, std::uint64_t q) {
    return checked_pow_u64(m + 1, static_cast<unsigned>(exponent_sum(q)), "modsolve");
}

std::vector<int> recenter_f3(std::vector<int> x) {
    for (int& v : x)
        if (v == 2) v = -1;
    return x;
}

// Peel one prime factor of q: solve the column blocks recursively modulo
// q/q1, divide the block images by q/q1, and combine with a kernel vector of
// that quotient matrix modulo q1.  Signed solving peels 3s before 2s.
std::vector<int> solve_rec(const ModMatrix& A, std::uint64_t q, bool signed_entries) {
    std::size_t m = A.rows(), n = A.cols();
    if (q == 2) return kernel_vector_fp(A, 2);
    if (q == 3 && signed_entries) return recenter_f3(kernel_vector_fp(A, 3));
    std::uint64_t q1 = (signed_entries && q % 3 == 0) ? 3 : 2;
    if (q % q1 != 0)
        throw precondition_error(std::string("modsolve: modulus must be ") +
                                 (signed_entries ? "of the form 2^k 3^l" : "a power of 2"));
    std::uint64_t q2 = q / q1;
    std::uint64_t n1 = m + 1; // columns needed by the top-level kernel step
    std::uint64_t n2 = n / n1;
    if (n2 < solver_required_cols(m, q2))
        throw precondition_error("modsolve: need n >= " +
                                 std::to_string(solver_required_cols(m, q)) + " columns, got " +
                                 std::to_string(n));
    ModMatrix B;
    B.q = q1;
    B.entries.assign(m, std::vector<long long>(n1));
    std::vector<std::vector<int>> ys(n1);
    for (std::uint64_t i = 0; i < n1; ++i) {
        std::uint64_t lo = i * n2;
        std::uint64_t hi = (i + 1 == n1) ? n : lo + n2; // last block absorbs the remainder
        ModMatrix sub;
        sub.q = q2;
        sub.entries.assign(m, std::vector<long long>(hi - lo));
        for (std::size_t r = 0; r < m; ++r)
            for (std::uint64_t j = lo; j < hi; ++j) {
                long long v = A.entries[r][j] % static_cast<long long>(q2);
                sub.entries[r][j - lo] = v < 0 ? v + static_cast<long long>(q2) : v;
            }
        ys[i] = solve_rec(sub, q2, signed_entries);
        for (std::size_t r = 0; r < m; ++r) {
            long long acc = 0;
            for (std::uint64_t j = lo; j < hi; ++j) acc += A.entries[r][j] * ys[i][j - lo];
            if (acc % static_cast<long long>(q2) != 0)
                throw error("modsolve: block image not divisible by the sub-modulus");
            B.entries[r][i] = acc / static_cast<long long>(q2);
        }
    }
    std::vector<int> z = q1 == 2 ? kernel_vector_fp(B, 2) : recenter_f3(kernel_vector_fp(B, 3));
    std::vector<int> x(n, 0);
    for (std::uint64_t i = 0; i < n1; ++i) {
        if (z[i] == 0) continue;
        std::uint64_t lo = i * n2;
        for (std::size_t j = 0; j < ys[i].size(); ++j) x[lo + j] = z[i] * ys[i][j];
    }
    return x;
}

bool is_smooth(std::uint64_t q, bool allow_three) {
    if (q < 2) return false;
    while (q % 2 == 0) q /= 2;
    while (allow_three && q % 3 == 0) q /= 3;
    return q == 1;
}

} // namespace

std::vector<int> kernel_vector_f2(const ModMatrix& A) { return kernel_vector_fp(A, 2); }

std::vector<int> kernel_vector_f3(const ModMatrix& A) {
    return recenter_f3(kernel_vector_fp(A, 3));
}

VecSol solve_bis_pow2(const BisInstance& inst) {
    if (!is_smooth(inst.A.q, false))
        throw precondition_error("solve_bis_pow2: modulus must be a power of 2");
    return VecSol{solve_rec(inst.A, inst.A.q, false)};
}

VecSol solve_sis_2k3l(const SisInstance& inst) {
    if (!is_smooth(inst.A.q, true))
        throw precondition_error("solve_sis_2k3l: modulus must be of the form 2^k 3^l");
    return VecSol{solve_rec(inst.A, inst.A.q, true)};
}

Reduction bis_to_chevalley(const BisInstance& src) {
    const ModMatrix& A = src.A;
    if (!is_prime(A.q)) throw precondition_error("bis_to_chevalley: modulus must be prime");
    int p = static_cast<int>(A.q);
    int n = static_cast<int>(A.cols());
    PrimeField f(p);
    PolynomialSystem sys{p, n, {}};
    for (const auto& row : A.entries) {
        ExplicitPolynomial poly{p, n, {}};
        for (int j = 0; j < n; ++j) {
            int c = f.reduce(row[j]);
            if (c == 0) continue;
            MonicMonomial mono;
            mono.exps[j] = p - 1;
            for (int k = 0; k < c; ++k) poly.terms.push_back(mono);
        }
        poly.normalize();
        sys.polys.push_back(std::move(poly));
    }
    SearchInstance target = ChevalleyInstance::make(std::move(sys));
    auto back = [p, n](const Solution& s) -> Solution {
        const auto* ps = std::get_if<PointSol>(&s);
        if (!ps || ps->x.size() != static_cast<std::size_t>(n)) return VecSol{};
        PrimeField f(p);
        std::vector<int> x(n);
        for (int j = 0; j < n; ++j) x[j] = f.pow(ps->x[j], p - 1);
        return VecSol{std::move(x)};
    };
    return Reduction{std::move(target), back, "bis->chevalley"};
}

Reduction sis_to_chevalley(const SisInstance& src) {
    const ModMatrix& A = src.A;
    if (!is_prime(A.q) || A.q == 2)
        throw precondition_error("sis_to_chevalley: modulus must be an odd prime");
    int p = static_cast<int>(A.q);
    int n = static_cast<int>(A.cols());
    int e = (p - 1) / 2;
    PrimeField f(p);
    PolynomialSystem sys{p, n, {}};
    for (const auto& row : A.entries) {
        ExplicitPolynomial poly{p, n, {}};
        for (int j = 0; j < n; ++j) {
            int c = f.reduce(row[j]);
            if (c == 0) continue;
            MonicMonomial mono;
            mono.exps[j] = e;
            for (int k = 0; k < c; ++k) poly.terms.push_back(mono);
        }
        poly.normalize();
        sys.polys.push_back(std::move(poly));
    }
    SearchInstance target = ChevalleyInstance::make(std::move(sys));
    auto back = [p, n, e](const Solution& s) -> Solution {
        const auto* ps = std::get_if<PointSol>(&s);
        if (!ps || ps->x.size() != static_cast<std::size_t>(n)) return VecSol{};
        PrimeField f(p);
        std::vector<int> x(n);
        for (int j = 0; j < n; ++j) {
            int v = f.pow(ps->x[j], static_cast<std::uint64_t>(e));
            x[j] = v == p - 1 ? -1 : v; // x^{(p-1)/2} is 0 or a square root of 1
        }
        return VecSol{std::move(x)};
    };
    return Reduction{std::move(target), back, "sis->chevalley"};
}

ModMatrix read_matrix(std::istream& in) {
    std::size_t m = 0, n = 0;
    long long q = 0;
    if (!(in >> m >> n >> q) || m < 1 || n < 1 || q < 2)
        throw format_error("matrix file: expected header 'm n q' with m,n >= 1, q >= 2");
    ModMatrix A;
    A.q = static_cast<std::uint64_t>(q);
    A.entries.assign(m, std::vector<long long>(n));
    for (auto& row : A.entries)
        for (auto& v : row)
            if (!(in >> v)) throw format_error("matrix file: too few entries");
    return A;
}

void write_matrix(std::ostream& out, const ModMatrix& A) {
    out << A.rows() << ' ' << A.cols() << ' ' << A.q << '\n';
    for (const auto& row : A.entries) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << '\n';
    }
}

} // namespace modq
