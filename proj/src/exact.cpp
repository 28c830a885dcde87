#include "pgst/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pgst::exact {

namespace {

const Int kZero = 0;

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; static_cast<long>(p) * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

IntPoly::IntPoly(std::initializer_list<long> ascending_coeffs) {
    c_.assign(ascending_coeffs.begin(), ascending_coeffs.end());
    trim();
}

IntPoly::IntPoly(std::vector<Int> ascending_coeffs) : c_(std::move(ascending_coeffs)) {
    trim();
}

IntPoly IntPoly::monomial(Int coeff, std::size_t degree) {
    std::vector<Int> c(degree + 1);
    c[degree] = std::move(coeff);
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& IntPoly::coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : kZero;
}

void IntPoly::set_coeff(std::size_t k, Int value) {
    if (k >= c_.size()) {
        if (value == 0) return;
        c_.resize(k + 1);
    }
    c_[k] = std::move(value);
    trim();
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
    std::vector<Int> c(std::max(c_.size(), rhs.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + rhs.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
    std::vector<Int> c(std::max(c_.size(), rhs.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - rhs.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return IntPoly();
    std::vector<Int> c(c_.size() + rhs.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) c[i + j] += c_[i] * rhs.c_[j];
    return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        Int a = c_[k];
        if (first) {
            if (a < 0) out << "-", a = -a;
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (k == 0 || a != 1) out << a.get_str();
        if (k > 0) {
            out << "x";
            if (k > 1) out << "^" << k;
        }
        first = false;
    }
    return out.str();
}

PolyDivision poly_long_division(const IntPoly& numerator, const IntPoly& divisor) {
    if (divisor.is_zero() || (divisor.coeff(0) != 1 && divisor.coeff(0) != -1))
        throw std::invalid_argument("divisor must have unit constant term");
    const int dn = numerator.degree();
    const int dd = divisor.degree();
    std::vector<Int> rem = numerator.coeffs();
    std::vector<Int> quot;
    const Int& c0 = divisor.coeff(0);
    // Eliminate the lowest remaining coefficient at each step; dividing by
    // c0 = +-1 keeps everything integral.
    for (int i = 0; i + dd <= dn; ++i) {
        Int q = rem[i] * c0;
        if (q != 0)
            for (int j = 0; j <= dd; ++j) rem[i + j] -= q * divisor.coeff(j);
        quot.push_back(std::move(q));
    }
    return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

unsigned euler_phi(unsigned m) {
    if (m == 0) throw std::invalid_argument("euler_phi(0)");
    unsigned result = m;
    unsigned x = m;
    for (unsigned p = 2; static_cast<unsigned long>(p) * p <= x; ++p) {
        if (x % p) continue;
        result -= result / p;
        while (x % p == 0) x /= p;
    }
    if (x > 1) result -= result / x;
    return result;
}

namespace {

std::mutex g_cyclo_mutex;
std::map<unsigned, IntPoly> g_cyclo_memo;

IntPoly cyclotomic_poly_locked(unsigned m) {
    auto it = g_cyclo_memo.find(m);
    if (it != g_cyclo_memo.end()) return it->second;
    IntPoly phi;
    if (m == 1) {
        phi = IntPoly{-1, 1};  // x - 1
    } else {
        // (x^m - 1) / prod of Phi_k over proper divisors k | m.
        std::vector<Int> c(m + 1);
        c[0] = -1;
        c[m] = 1;
        phi = IntPoly(std::move(c));
        for (unsigned k = 1; k < m; ++k) {
            if (m % k) continue;
            auto div = poly_long_division(phi, cyclotomic_poly_locked(k));
            if (!div.remainder.is_zero())
                throw std::logic_error("cyclotomic recursion division not exact");
            phi = std::move(div.quotient);
        }
    }
    g_cyclo_memo.emplace(m, phi);
    return phi;
}

}  // namespace

IntPoly cyclotomic_poly(unsigned m) {
    if (m == 0) throw std::invalid_argument("cyclotomic modulus must be positive");
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    return cyclotomic_poly_locked(m);
}

namespace {

// Reduces a rational-coefficient polynomial modulo the monic Phi, returning
// exactly deg(Phi) coordinates.
std::vector<Rat> reduce_mod_phi(std::vector<Rat> poly, const IntPoly& phi) {
    const std::size_t deg = static_cast<std::size_t>(phi.degree());
    for (std::size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0) continue;
        const Rat c = poly[i];
        poly[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            poly[i - deg + j] -= c * phi.coeff(j);
    }
    poly.resize(deg, Rat(0));
    return poly;
}

}  // namespace

CycloElement::CycloElement(unsigned modulus) : m_(modulus) {
    if (modulus == 0) throw std::invalid_argument("cyclotomic modulus must be positive");
    coords_.assign(euler_phi(modulus), Rat(0));
}

CycloElement CycloElement::from_integer(unsigned modulus, Int value) {
    CycloElement e(modulus);
    e.coords_[0] = Rat(std::move(value));
    return e;
}

CycloElement CycloElement::root_power(unsigned modulus, long exponent) {
    CycloElement e(modulus);
    long r = exponent % static_cast<long>(modulus);
    if (r < 0) r += modulus;
    std::vector<Rat> poly(static_cast<std::size_t>(r) + 1, Rat(0));
    poly[static_cast<std::size_t>(r)] = 1;
    e.coords_ = reduce_mod_phi(std::move(poly), cyclotomic_poly(modulus));
    return e;
}

bool CycloElement::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rat& c) { return c == 0; });
}

bool CycloElement::is_integral() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) {
        return mpz_cmp_ui(mpq_denref(c.get_mpq_t()), 1) == 0;
    });
}

CycloElement& CycloElement::operator+=(const CycloElement& rhs) {
    if (m_ != rhs.m_) throw std::invalid_argument("mixed cyclotomic moduli");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& rhs) {
    if (m_ != rhs.m_) throw std::invalid_argument("mixed cyclotomic moduli");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

CycloElement CycloElement::operator+(const CycloElement& rhs) const {
    CycloElement out = *this;
    out += rhs;
    return out;
}

CycloElement CycloElement::operator-(const CycloElement& rhs) const {
    CycloElement out = *this;
    out -= rhs;
    return out;
}

CycloElement CycloElement::operator*(const CycloElement& rhs) const {
    if (m_ != rhs.m_) throw std::invalid_argument("mixed cyclotomic moduli");
    CycloElement out(m_);
    if (coords_.empty()) return out;
    std::vector<Rat> conv(2 * coords_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coords_.size(); ++j)
            conv[i + j] += coords_[i] * rhs.coords_[j];
    }
    out.coords_ = reduce_mod_phi(std::move(conv), cyclotomic_poly(m_));
    return out;
}

CycloElement CycloElement::operator*(const Int& scalar) const {
    CycloElement out = *this;
    for (Rat& c : out.coords_) c *= scalar;
    return out;
}

bool CycloElement::operator==(const CycloElement& rhs) const noexcept {
    return m_ == rhs.m_ && coords_ == rhs.coords_;
}

std::complex<double> CycloElement::embed() const {
    std::complex<double> acc(0.0, 0.0);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m_);
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        const double c = coords_[j].get_d();
        if (c != 0.0) acc += c * std::polar(1.0, step * static_cast<double>(j));
    }
    return acc;
}

std::vector<CycloElement> exact_path_laplacian_eigenvalues(int n) {
    if (n < 2) throw std::invalid_argument("path length must be >= 2");
    const unsigned m = 2 * static_cast<unsigned>(n);
    std::vector<CycloElement> eigs;
    eigs.reserve(n - 1);
    for (int r = 1; r < n; ++r) {
        CycloElement lambda = CycloElement::from_integer(m, 2);
        lambda -= CycloElement::root_power(m, r);
        lambda -= CycloElement::root_power(m, 2 * n - r);
        eigs.push_back(std::move(lambda));
    }
    return eigs;
}

namespace {

// Unimodular row echelonization over the first `cols` columns; any extra
// columns ride along as an augmented block. Pivots are made positive and
// entries above each pivot are reduced into [0, pivot). Returns the rank.
std::size_t echelonize(std::vector<std::vector<Int>>& rows, std::size_t cols) {
    const std::size_t m = rows.size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < m; ++col) {
        std::size_t sel = pivot_row;
        while (sel < m && rows[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(rows[pivot_row], rows[sel]);
        for (std::size_t i = pivot_row + 1; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            Int g, p, q;
            mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                       rows[pivot_row][col].get_mpz_t(), rows[i][col].get_mpz_t());
            const Int u = rows[pivot_row][col] / g;
            const Int v = rows[i][col] / g;
            auto& top = rows[pivot_row];
            auto& low = rows[i];
            for (std::size_t j = 0; j < top.size(); ++j) {
                Int nt = p * top[j] + q * low[j];
                Int nl = u * low[j] - v * top[j];
                top[j] = std::move(nt);
                low[j] = std::move(nl);
            }
        }
        if (rows[pivot_row][col] < 0)
            for (Int& x : rows[pivot_row]) x = -x;
        for (std::size_t i = 0; i < pivot_row; ++i) {
            if (rows[i][col] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                       rows[pivot_row][col].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                rows[i][j] -= q * rows[pivot_row][j];
        }
        ++pivot_row;
    }
    return pivot_row;
}

void canonicalize_rows(std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return;
    echelonize(rows, rows[0].size());
    while (!rows.empty() &&
           std::all_of(rows.back().begin(), rows.back().end(),
                       [](const Int& x) { return x == 0; }))
        rows.pop_back();
}

bool row_is_primitive(const std::vector<Int>& row) {
    Int g = 0;
    for (const Int& x : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return true;
    }
    return g == 1;
}

}  // namespace

std::vector<std::vector<Int>> integer_kernel(const std::vector<std::vector<Int>>& rows) {
    const std::size_t d = rows.size();
    if (d == 0) return {};
    const std::size_t c = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != c) throw std::invalid_argument("ragged matrix");

    // [A | I]: after unimodular reduction of the A block, the I block of the
    // zero rows is a basis of the (saturated) integer left kernel.
    std::vector<std::vector<Int>> work(d, std::vector<Int>(c + d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < c; ++j) work[i][j] = rows[i][j];
        work[i][c + i] = 1;
    }
    const std::size_t rank = echelonize(work, c);

    std::vector<std::vector<Int>> kernel;
    kernel.reserve(d - rank);
    for (std::size_t i = rank; i < d; ++i)
        kernel.emplace_back(work[i].begin() + c, work[i].end());
    canonicalize_rows(kernel);
    return kernel;
}

RelationLattice relation_lattice(const std::vector<CycloElement>& eigenvalues) {
    RelationLattice lattice;
    lattice.dimension = static_cast<int>(eigenvalues.size());
    if (eigenvalues.empty()) return lattice;

    const unsigned modulus = eigenvalues.front().modulus();
    for (const CycloElement& e : eigenvalues)
        if (e.modulus() != modulus)
            throw std::invalid_argument("eigenvalues must share one cyclotomic modulus");

    const std::size_t d = eigenvalues.size();
    const std::size_t c = eigenvalues.front().coords().size();

    // Column-wise denominator clearing keeps the kernel unchanged.
    std::vector<std::vector<Int>> rows(d, std::vector<Int>(c));
    for (std::size_t j = 0; j < c; ++j) {
        Int lcm = 1;
        for (std::size_t i = 0; i < d; ++i)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                    mpq_denref(eigenvalues[i].coords()[j].get_mpq_t()));
        for (std::size_t i = 0; i < d; ++i) {
            const Rat scaled = eigenvalues[i].coords()[j] * Rat(lcm);
            rows[i][j] = Int(mpq_numref(scaled.get_mpq_t()));
            if (mpz_cmp_ui(mpq_denref(scaled.get_mpq_t()), 1) != 0)
                throw std::logic_error("denominator clearing failed");
        }
    }

    lattice.basis = integer_kernel(rows);

    for (const auto& rel : lattice.basis) {
        CycloElement acc(modulus);
        for (std::size_t i = 0; i < d; ++i) acc += eigenvalues[i] * rel[i];
        if (!acc.is_zero())
            throw std::logic_error("relation basis fails exact re-substitution");
        if (!row_is_primitive(rel))
            throw std::logic_error("relation basis vector is not primitive");
    }
    return lattice;
}

std::vector<int> path_sigma(int n) {
    if (n < 2) throw std::invalid_argument("path length must be >= 2");
    std::vector<int> sigma(n - 1);
    for (int r = 1; r < n; ++r) sigma[r - 1] = r % 2;
    return sigma;
}

bool sigma_weighted_sum_odd(const std::vector<Int>& relation,
                            const std::vector<int>& sigma) {
    if (relation.size() != sigma.size())
        throw std::invalid_argument("relation and sigma lengths differ");
    Int sum = 0;
    for (std::size_t i = 0; i < relation.size(); ++i)
        if (sigma[i]) sum += relation[i];
    return mpz_odd_p(sum.get_mpz_t()) != 0;
}

PGSTDecision decide_pgst_laplacian(int n, std::pair<int, int> pair) {
    if (n < 2) throw std::invalid_argument("chain length must be >= 2");
    const int j = std::min(pair.first, pair.second);
    const int k = std::max(pair.first, pair.second);
    if (j < 1 || k > n || j + k != n + 1)
        throw std::invalid_argument("pair must be a mirror pair (j, n+1-j)");

    PGSTDecision decision;
    decision.model = "laplacian";
    decision.n = n;
    decision.vertex_pair = {j, k};
    decision.sigma = path_sigma(n);
    decision.basis = relation_lattice(exact_path_laplacian_eigenvalues(n)).basis;

    decision.verdict = true;
    for (const auto& rel : decision.basis) {
        if (sigma_weighted_sum_odd(rel, decision.sigma)) {
            decision.verdict = false;
            decision.witness = rel;
            break;
        }
    }
    return decision;
}

PGSTDecision decide_pgst_laplacian(int n) {
    return decide_pgst_laplacian(n, {1, n});
}

PGSTDecision decide_pgst_general(const RelationLattice& lattice,
                                 const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != lattice.dimension)
        throw std::invalid_argument("sigma does not cover the lattice index set");

    PGSTDecision decision;
    decision.model = "general";
    decision.sigma = sigma;
    decision.verdict = true;
    if (lattice.basis.empty()) return decision;

    // Condition (ii) is violated by relations with sum l_r = 0 and odd
    // parity; restrict the parity test to the sum-zero sublattice.
    const std::size_t k = lattice.basis.size();
    std::vector<std::vector<Int>> sums(k, std::vector<Int>(1));
    for (std::size_t i = 0; i < k; ++i)
        for (const Int& x : lattice.basis[i]) sums[i][0] += x;

    const auto coeffs = integer_kernel(sums);
    std::vector<std::vector<Int>> sub_basis;
    sub_basis.reserve(coeffs.size());
    for (const auto& cvec : coeffs) {
        std::vector<Int> row(lattice.dimension, Int(0));
        for (std::size_t i = 0; i < k; ++i) {
            if (cvec[i] == 0) continue;
            for (int j = 0; j < lattice.dimension; ++j)
                row[j] += cvec[i] * lattice.basis[i][j];
        }
        sub_basis.push_back(std::move(row));
    }
    canonicalize_rows(sub_basis);
    decision.basis = sub_basis;

    for (const auto& rel : sub_basis) {
        if (sigma_weighted_sum_odd(rel, sigma)) {
            decision.verdict = false;
            decision.witness = rel;
            break;
        }
    }
    return decision;
}

std::vector<Int> witness_odd_prime(int n) {
    if (n < 3 || n % 2 == 0 || !is_prime(n))
        throw std::invalid_argument("n must be an odd prime");
    std::vector<Int> l(n - 1);
    if (n % 4 == 3) {
        for (int s = 1; s <= n - 2; s += 2) {
            l[s - 1] = n;
            l[n - s - 1] = -(n - 2);
        }
    } else {
        l[0] = -6;
        l[n - 2] = 2 * (n - 2);
        for (int s = 3; s <= n - 2; s += 2) {
            l[s - 1] = -(n + 4);
            l[n - s - 1] = n - 2;
        }
    }
    return l;
}

std::vector<Int> witness_composite(int n, int m, int k) {
    if (m < 2 || k <= 1 || k % 2 == 0 || m * k != n)
        throw std::invalid_argument("need n = m k with k > 1 odd and m >= 2");
    std::vector<Int> l(n - 1, Int(0));
    const auto add = [&](int index, int value) {
        if (index == 0) return;  // coefficient on the zero eigenvalue is arbitrary
        if (index < 1 || index > n - 1)
            throw std::logic_error("composite witness index out of range");
        l[index - 1] += value;
    };
    // (lambda_1 - lambda_2)
    //   + sum_r (-1)^r (lambda_{mr+1} - lambda_{mr+2})
    //   + sum_r (-1)^r (lambda_{mr-1} - lambda_{mr-2}) = 0
    add(1, 1);
    add(2, -1);
    int sign = -1;
    for (int r = 1; r <= (k - 1) / 2; ++r, sign = -sign) {
        add(m * r + 1, sign);
        add(m * r + 2, -sign);
        add(m * r - 1, sign);
        add(m * r - 2, -sign);
    }
    return l;
}

bool is_power_of_two(int n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

std::optional<ConstructiveWitness> constructive_witness(int n) {
    if (n < 2) throw std::invalid_argument("chain length must be >= 2");
    if (is_power_of_two(n)) return std::nullopt;

    ConstructiveWitness w;
    if (n % 2 == 1 && is_prime(n)) {
        w.kind = "odd_prime";
        w.relation = witness_odd_prime(n);
        return w;
    }
    int m = 0, k = 0;
    if (n % 2 == 0) {
        int odd = n;
        while (odd % 2 == 0) odd /= 2;
        m = n / odd;
        k = odd;
    } else {
        int p = 3;
        while (n % p) p += 2;
        m = p;
        k = n / p;
    }
    w.kind = "composite";
    w.factors = WitnessFactors{m, k};
    w.relation = witness_composite(n, m, k);
    return w;
}

IntPoly relation_poly(int n, const std::vector<Int>& relation) {
    if (n < 2) throw std::invalid_argument("chain length must be >= 2");
    if (static_cast<int>(relation.size()) != n - 1)
        throw std::invalid_argument("relation must have n-1 coefficients");
    Int l0 = 0;
    for (const Int& x : relation) l0 -= x;
    std::vector<Int> c(2 * static_cast<std::size_t>(n));
    c[0] = 2 * l0;
    for (int r = 1; r <= n - 1; ++r) c[r] = relation[r - 1];
    for (int r = n + 1; r <= 2 * n - 1; ++r) c[r] = relation[2 * n - r - 1];
    return IntPoly(std::move(c));
}

bool relation_holds_by_division(int n, const std::vector<Int>& relation) {
    const auto division =
        poly_long_division(relation_poly(n, relation), cyclotomic_poly(2 * n));
    return division.remainder.is_zero();
}

bool relation_holds_in_field(int n, const std::vector<Int>& relation) {
    if (static_cast<int>(relation.size()) != n - 1)
        throw std::invalid_argument("relation must have n-1 coefficients");
    const auto eigs = exact_path_laplacian_eigenvalues(n);
    CycloElement acc(eigs.front().modulus());
    for (std::size_t i = 0; i < eigs.size(); ++i) acc += eigs[i] * relation[i];
    return acc.is_zero();
}

}  // namespace pgst::exact
