// Bounded complexes of free modules over the serial algebra A = k[x]/(x^n):
// chain maps, suspension, truncation, null-homotopy decision, and canonical
// bases of Hom spaces in the homotopy category.
//
// Grading is homological: d_i maps degree i to degree i-1, and the suspension
// raises degrees, so interval complexes satisfy  shift(A_m^n, 1) = A_{m+1}^{n+1}
// with differentials negated.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gcenter/matrix.hpp"

namespace gcenter {

// Element of A = k[x]/(x^n) as the coefficient vector of 1, x, ..., x^{n-1}.
struct AElem {
    std::vector<Scalar> c;
};

class SerialAlgebra {
  public:
    SerialAlgebra(Field f, int n);

    const Field& field() const { return F; }
    int n() const { return n_; }

    AElem zero() const;
    AElem one() const;
    AElem x() const;              // the class of x (zero element when n == 1)
    AElem monomial(int k) const;  // x^k, zero when k >= n
    AElem scalar(const Scalar& s) const;

    AElem add(const AElem& a, const AElem& b) const;
    AElem sub(const AElem& a, const AElem& b) const;
    AElem mul(const AElem& a, const AElem& b) const; // truncates at x^n = 0
    AElem scale(const Scalar& s, const AElem& a) const;
    AElem neg(const AElem& a) const;
    bool is_zero(const AElem& a) const;
    bool eq(const AElem& a, const AElem& b) const;

    // n x n matrix of multiplication by a on coefficient vectors.
    ExactMatrix mult_matrix(const AElem& a) const;

    bool operator==(const SerialAlgebra& o) const { return F == o.F && n_ == o.n_; }

  private:
    Field F;
    int n_;
};

// Matrix over A, row-major; maps act on column vectors.
struct AMat {
    int rows = 0, cols = 0;
    std::vector<AElem> e;

    AMat() = default;
    AMat(const SerialAlgebra& alg, int r, int c);
    AElem& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
    const AElem& at(int r, int c) const { return e[static_cast<size_t>(r) * cols + c]; }
};

AMat amat_identity(const SerialAlgebra& alg, int n);
AMat amat_mul(const SerialAlgebra& alg, const AMat& a, const AMat& b);
AMat amat_add(const SerialAlgebra& alg, const AMat& a, const AMat& b);
AMat amat_sub(const SerialAlgebra& alg, const AMat& a, const AMat& b);
AMat amat_scale(const SerialAlgebra& alg, const Scalar& s, const AMat& a);
AMat amat_neg(const SerialAlgebra& alg, const AMat& a);
bool amat_is_zero(const SerialAlgebra& alg, const AMat& a);
bool amat_eq(const SerialAlgebra& alg, const AMat& a, const AMat& b);

// Bounded complex of free A-modules.  ranks[i - lo] is the free rank in
// degree i; diffs[i - lo] is d_i : X_i -> X_{i-1} (shape rank(i-1) x rank(i),
// so diffs[0] has zero rows).  A default-constructed Complex is the zero
// complex (lo > hi).
struct Complex {
    int lo = 0, hi = -1;
    std::vector<int> ranks;
    std::vector<AMat> diffs;

    int rank(int i) const {
        return (i < lo || i > hi) ? 0 : ranks[static_cast<size_t>(i - lo)];
    }
    const AMat& diff(int i) const { return diffs[static_cast<size_t>(i - lo)]; }
    bool is_zero() const { return lo > hi; }
    bool operator==(const Complex& o) const;
};

// Validates d o d = 0 (throws std::invalid_argument otherwise).
Complex make_complex(const SerialAlgebra& alg, int lo, std::vector<int> ranks,
                     std::vector<AMat> diffs);

// The interval complex A_m^nn: rank one in degrees m..nn, differential
// multiplication by x.  Only defined for n = 2, where x^2 = 0 forces d^2 = 0.
Complex interval_complex(const SerialAlgebra& alg, int m, int nn);

// Suspension: degrees translated by k, differentials scaled by (-1)^k.
Complex shift(const SerialAlgebra& alg, const Complex& x, int k);

// Chain map f : source -> target with components f_i : X_i -> Y_i stored for
// the degree overlap [lo, lo + comps.size() - 1].
struct ChainMap {
    Complex source, target;
    int lo = 0;
    std::vector<AMat> comps;

    AMat comp(const SerialAlgebra& alg, int i) const; // zero-shaped outside range
};

ChainMap zero_map(const SerialAlgebra& alg, const Complex& x, const Complex& y);
ChainMap identity_map(const SerialAlgebra& alg, const Complex& x);
bool is_chain_map(const SerialAlgebra& alg, const ChainMap& f);
bool chain_map_eq(const SerialAlgebra& alg, const ChainMap& f, const ChainMap& g);

ChainMap compose(const SerialAlgebra& alg, const ChainMap& g, const ChainMap& f); // g o f
ChainMap add(const SerialAlgebra& alg, const ChainMap& f, const ChainMap& g);
ChainMap scale(const SerialAlgebra& alg, const Scalar& s, const ChainMap& f);
// Same components, viewed as shift^k(source) -> shift^k(target).
ChainMap shift_map(const SerialAlgebra& alg, const ChainMap& f, int k);

// Truncation at degree nn: the subcomplex in degrees <= nn together with the
// inclusion chain map into x.
std::pair<Complex, ChainMap> truncate(const SerialAlgebra& alg, const Complex& x, int nn);

// Degreewise maps h_i : X_i -> Y_{i+1} witnessing f = d h + h d.
struct Homotopy {
    int lo = 0;
    std::vector<AMat> maps;
};

// Solves f_i = d^Y_{i+1} h_i + h_{i-1} d^X_i over the base field.
std::optional<Homotopy> null_homotopy(const SerialAlgebra& alg, const ChainMap& f);

// Hom(X, Y) in the homotopy category: chain maps modulo null-homotopic ones,
// with a canonical echelonized basis.  Coordinates flatten components in
// degree-ascending, row-major, coefficient-ascending order.
class HomSpace {
  public:
    HomSpace(const SerialAlgebra& alg, Complex x, Complex y);

    int dim() const { return basis_.rank; }
    const Complex& source() const { return x_; }
    const Complex& target() const { return y_; }

    ChainMap basis_map(int j) const;
    // Coordinates of a chain map's homotopy class in the canonical basis.
    std::vector<Scalar> coords(const ChainMap& f) const;
    bool is_null(const ChainMap& f) const;
    ChainMap from_coords(const std::vector<Scalar>& v) const;

    std::vector<Scalar> flatten(const ChainMap& f) const;
    ChainMap unflatten(const std::vector<Scalar>& v) const;

  private:
    SerialAlgebra alg_;
    Complex x_, y_;
    int clo_ = 0, chi_ = -1; // degree overlap carrying components
    int total_ = 0;          // flattened dimension
    std::vector<int> offs_;
    Rref boundaries_; // row space: flattened null-homotopic maps
    Rref basis_;      // canonical representatives of the quotient
};

// Representative chain maps of a basis of Hom_{K^b}(x, y).
std::vector<ChainMap> hom_basis_K(const SerialAlgebra& alg, const Complex& x, const Complex& y);

// The four classes of morphisms between interval complexes (n = 2), written
// as maps A_m^nn -> A_mp^np:
//   'a' (m = mp, m <= np <= nn): single component x in degree m
//   'b' (nn = np, m <= mp <= nn): identity components in degrees mp..nn
//   'c' (m = mp, m <= nn <= np): identity components in degrees m..nn
//   'd' (nn = np, mp <= m <= nn): single component x in degree m
// Throws std::invalid_argument when the index constraints fail.
ChainMap generator_morphism(const SerialAlgebra& alg, char cls, int m, int nn, int mp, int np);

} // namespace gcenter
