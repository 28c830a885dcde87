#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pgst::exact {

using Int = mpz_class;
using Rat = mpq_class;

/// Integer polynomial with arbitrary-precision coefficients, stored in
/// ascending degree order and trimmed (no trailing zeros).
class IntPoly {
  public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long> ascending_coeffs);
    explicit IntPoly(std::vector<Int> ascending_coeffs);

    static IntPoly monomial(Int coeff, std::size_t degree);

    bool is_zero() const noexcept { return c_.empty(); }

    /// Degree, or -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    /// Coefficient of x^k; zero beyond the degree.
    const Int& coeff(std::size_t k) const;
    const std::vector<Int>& coeffs() const noexcept { return c_; }

    void set_coeff(std::size_t k, Int value);

    IntPoly operator+(const IntPoly& rhs) const;
    IntPoly operator-(const IntPoly& rhs) const;
    IntPoly operator*(const IntPoly& rhs) const;
    bool operator==(const IntPoly& rhs) const noexcept { return c_ == rhs.c_; }

    std::string to_string() const;

  private:
    void trim();
    std::vector<Int> c_;
};

/// m-th cyclotomic polynomial Phi_m, the minimal polynomial of a primitive
/// m-th root of unity. Computed by dividing x^m - 1 by Phi_k over the proper
/// divisors k of m; results are memoized.
IntPoly cyclotomic_poly(unsigned m);

/// Euler phi(m) = deg Phi_m.
unsigned euler_phi(unsigned m);

struct PolyDivision {
    IntPoly quotient;
    IntPoly remainder;
};

/// Long division run from the low-degree end: numerator = divisor * quotient
/// + remainder, where the remainder has no terms of degree <= deg(numerator)
/// - deg(divisor). Requires the divisor's constant term to be +1 or -1 (true
/// for Phi_{2n}, n >= 2); the remainder vanishes exactly when the divisor
/// divides the numerator.
PolyDivision poly_long_division(const IntPoly& numerator, const IntPoly& divisor);

/// Element of the cyclotomic field Q(zeta_m), held as rational coordinates
/// over the power basis 1, x, ..., x^{phi(m)-1} modulo Phi_m(x). All values
/// arising from path spectra keep integer coordinates.
class CycloElement {
  public:
    explicit CycloElement(unsigned modulus);  // the zero element

    static CycloElement from_integer(unsigned modulus, Int value);

    /// zeta_m^e reduced into the power basis (e may be any integer).
    static CycloElement root_power(unsigned modulus, long exponent);

    unsigned modulus() const noexcept { return m_; }
    const std::vector<Rat>& coords() const noexcept { return coords_; }
    bool is_zero() const noexcept;
    bool is_integral() const noexcept;

    CycloElement& operator+=(const CycloElement& rhs);
    CycloElement& operator-=(const CycloElement& rhs);
    CycloElement operator+(const CycloElement& rhs) const;
    CycloElement operator-(const CycloElement& rhs) const;
    CycloElement operator*(const CycloElement& rhs) const;
    CycloElement operator*(const Int& scalar) const;
    bool operator==(const CycloElement& rhs) const noexcept;

    /// Numerical embedding zeta_m -> exp(2 pi i / m).
    std::complex<double> embed() const;

  private:
    unsigned m_ = 1;
    std::vector<Rat> coords_;
};

/// Nonzero Laplacian eigenvalues of the n-vertex path, as exact elements of
/// Q(zeta_{2n}): lambda_r = 2 - (zeta^r + zeta^{2n-r}) for r = 1..n-1. This
/// order is ascending in value (lambda_r = 2 - 2 cos(pi r / n)); the zero
/// eigenvalue is implicit and excluded.
std::vector<CycloElement> exact_path_laplacian_eigenvalues(int n);

/// Basis of the lattice { l in Z^d : sum_r l_r theta_r = 0 } of integer
/// relations among d field elements. Rows are primitive and in canonical
/// (Hermite-reduced, positive-pivot) form.
struct RelationLattice {
    int dimension = 0;
    std::vector<std::vector<Int>> basis;
};

/// Integer left kernel { l : sum_r l_r row_r = 0 } of a list of integer row
/// vectors, computed by unimodular row reduction to echelon form. The result
/// is a basis of the full (saturated) kernel lattice.
std::vector<std::vector<Int>> integer_kernel(const std::vector<std::vector<Int>>& rows);

/// Relation lattice of exact eigenvalues sharing one cyclotomic modulus.
/// Every basis vector is re-verified by substitution in field arithmetic.
RelationLattice relation_lattice(const std::vector<CycloElement>& eigenvalues);

/// Verdict plus machine-checkable certificate. For a false verdict the
/// witness is a relation with sum_r l_r theta_r = 0 exactly and odd
/// sigma-weighted sum; for a true verdict the basis carries all-even
/// parities. For "general" decisions the basis is the sum-zero sublattice
/// the parity test ran on.
struct PGSTDecision {
    bool verdict = false;
    std::string model;  // "laplacian" or "general"
    int n = 0;          // chain length for laplacian decisions, else 0
    std::pair<int, int> vertex_pair{0, 0};
    std::vector<std::vector<Int>> basis;
    std::vector<int> sigma;
    std::optional<std::vector<Int>> witness;
};

/// Sign bits of the mirror pair on the n-vertex path Laplacian, indexed by
/// the nonzero eigenvalues: sigma_r = r mod 2, r = 1..n-1.
std::vector<int> path_sigma(int n);

/// Exact decision for pretty good state transfer between mirror vertices
/// (j, n+1-j) of the n-vertex Heisenberg (Laplacian) chain: PGST holds iff
/// every integer relation among the nonzero eigenvalues has even
/// sigma-weighted sum. True exactly when n is a power of two.
PGSTDecision decide_pgst_laplacian(int n, std::pair<int, int> pair);
PGSTDecision decide_pgst_laplacian(int n);  // pair (1, n)

/// General criterion for strongly cospectral vertices: PGST fails iff some
/// relation l in the lattice has odd sigma-weighted sum AND sum_r l_r = 0.
/// sigma bits are aligned with the lattice coordinates.
PGSTDecision decide_pgst_general(const RelationLattice& lattice,
                                 const std::vector<int>& sigma);

/// Explicit relation with odd parity for an odd prime n: for n = 3 (mod 4),
/// l_s = n and l_{n-s} = -(n-2) for odd s; for n = 1 (mod 4), l_1 = -6,
/// l_{n-1} = 2(n-2), and l_s = -(n+4), l_{n-s} = n-2 for the other odd s.
std::vector<Int> witness_odd_prime(int n);

/// Explicit relation with odd parity for n = m k, k > 1 odd, m >= 2, built
/// from the alternating cosine identity at q = 1, 2; coefficients landing on
/// the zero eigenvalue are dropped.
std::vector<Int> witness_composite(int n, int m, int k);

struct WitnessFactors {
    int m = 0;
    int k = 0;
};

struct ConstructiveWitness {
    std::string kind;  // "odd_prime" or "composite"
    std::optional<WitnessFactors> factors;
    std::vector<Int> relation;
};

/// The paper-style explicit witness for a chain without PGST; nullopt when
/// n is a power of two. Even n uses m = 2^v against the odd part; odd
/// composite n uses its smallest prime factor as m.
std::optional<ConstructiveWitness> constructive_witness(int n);

bool is_power_of_two(int n);

/// L(x) = 2 l_0 + sum_{r=1}^{n-1} l_r x^r + sum_{r=n+1}^{2n-1} l_{2n-r} x^r
/// with l_0 = -sum l_r; the relation sum l_r lambda_r = 0 holds iff
/// Phi_{2n} divides L(x).
IntPoly relation_poly(int n, const std::vector<Int>& relation);

/// Divisibility route: checks the relation via low-degree-first division.
bool relation_holds_by_division(int n, const std::vector<Int>& relation);

/// Field route: re-substitutes the relation in exact cyclotomic arithmetic.
bool relation_holds_in_field(int n, const std::vector<Int>& relation);

/// Parity of sum_{r: sigma_r = 1} l_r.
bool sigma_weighted_sum_odd(const std::vector<Int>& relation,
                            const std::vector<int>& sigma);

}  // namespace pgst::exact
