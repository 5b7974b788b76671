// Graded centers of triangulated categories, computed exactly on finite
// "window" subcategories.
//
// A window category presents finitely many objects X_0, ..., X_{m-1}
// (typically one representative per suspension orbit) together with exact
// bases of the graded Hom spaces Hom^u(X_i, X_j) = Hom(X_i, Sigma^u X_j) in
// a range of degrees, and the composition tensor
//
//     compose(i, j, l, t, s, g, f)  =  Sigma^t(g) . f
//
// for f in Hom^t(i, j) and g in Hom^s(j, l), landing in Hom^{s+t}(i, l).
//
// A degree-t center element is a tuple (eta_i) with eta_i in Hom^t(i, i)
// satisfying, for every pair (i, j), every degree u in the window's equation
// range and every f in Hom^u(i, j),
//
//     eps * Sigma^u(eta_j) . f  =  Sigma^t(f) . eta_i,
//
// where eps = (-1)^{t u} in signed mode (the Koszul transport rule
// eta_{Sigma X} = (-1)^t Sigma(eta_X) iterated u times; u != 0 equations are
// naturality against morphisms into shifted objects, rewritten through the
// transport rule). Unsigned families carry no transport rule, so each window
// chooses an equation range that expresses plain naturality without ever
// referring to eta at an object outside the window: orbit-compressed windows
// use u = 0 only, while windows closed under suspension keep u != 0 ranges
// whose equations mention window objects only. solve_center finds the full
// solution space of these equations by exact linear algebra and re-verifies
// every basis element against the composition tensor.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcenter/serial.hpp"

namespace gcenter {

class WindowCategory {
  public:
    virtual ~WindowCategory() = default;

    virtual const Field& field() const = 0;
    virtual int object_count() const = 0;
    virtual std::string object_name(int i) const = 0;
    virtual std::string describe() const = 0;

    // dim Hom(X_i, Sigma^u X_j).  Throws std::out_of_range when u lies
    // outside the precomputed envelope (no extrapolation).
    virtual int hom_dim(int i, int j, int u) const = 0;

    // Sigma^t(g) . f for f in Hom^t(i, j), g in Hom^s(j, l), as coordinates
    // in the canonical basis of Hom^{s+t}(i, l).
    virtual std::vector<Scalar> compose(int i, int j, int l, int t, int s,
                                        const std::vector<Scalar>& g,
                                        const std::vector<Scalar>& f) const = 0;

    virtual std::vector<Scalar> identity_coords(int i) const = 0;

    // Inclusive degree range of the naturality/transport equations.
    virtual std::pair<int, int> equation_range(bool with_sign) const = 0;

    // Inclusive range of degrees t for which solve_center and element
    // products are supported on this window.
    virtual std::pair<int, int> degree_range() const = 0;
};

// A degree-t natural-transformation candidate: one morphism coordinate
// vector per window object.
struct CenterElement {
    int degree = 0;
    bool with_sign = true;
    std::vector<std::vector<Scalar>> comps;
};

// Echelonized basis of the degree-t solution space.
struct CenterBasis {
    int degree = 0;
    bool with_sign = true;
    bool degenerate = false;  // window has no objects: zero ring, no unit
    std::vector<int> dims;    // dims[i] = hom_dim(i, i, degree)
    std::vector<int> offsets; // prefix sums of dims
    int total = 0;
    Rref space;               // rows: concatenated coordinates, echelonized
    std::vector<CenterElement> elements;

    int dim() const { return static_cast<int>(elements.size()); }
};

CenterElement zero_center_element(const WindowCategory& w, int t, bool with_sign);
CenterElement identity_center_element(const WindowCategory& w);
bool center_element_is_zero(const CenterElement& e);
bool center_element_eq(const WindowCategory& w, const CenterElement& a, const CenterElement& b);
CenterElement scale_center_element(const WindowCategory& w, const Scalar& s, const CenterElement& e);
CenterElement add_center_elements(const WindowCategory& w, const CenterElement& a, const CenterElement& b);
std::vector<Scalar> concat_coords(const CenterElement& e);
CenterElement element_from_concat(const WindowCategory& w, int t, bool with_sign,
                                  const std::vector<Scalar>& v);

// Checks every equation of the window directly against the composition
// tensor (independent of the assembled linear system).
bool verify_center_element(const WindowCategory& w, const CenterElement& e);

// Solves the full equation system at degree t and returns the echelonized
// solution basis.  Every basis element is re-verified post hoc; a failure
// throws std::logic_error.  Throws std::out_of_range when t is outside the
// window's degree range.
CenterBasis solve_center(const WindowCategory& w, int t, bool with_sign);

// (a b)_X = Sigma^{deg b}(a_X) . b_X, degree deg a + deg b.  Throws
// std::out_of_range when the product degree leaves the window's range.
CenterElement multiply_elements(const WindowCategory& w, const CenterElement& a,
                                const CenterElement& b);

// Coordinates of e in the basis; nullopt when e is not in the solved span.
std::optional<std::vector<Scalar>> coords_of(const CenterBasis& basis, const CenterElement& e);

// Product of basis elements expressed in the degree-(t1+t2) basis; throws
// std::logic_error if the product escapes the solved space.
std::vector<Scalar> multiply(const WindowCategory& w, const CenterBasis& b1, int i,
                             const CenterBasis& b2, int j, const CenterBasis& target);

// e's component at object X (morphism coordinates in Hom^deg(X, X)).
const std::vector<Scalar>& eval_at(const CenterElement& e, int X);

struct NilpotencyVerdict {
    bool nilpotent = true;
    std::string witness; // nonvanishing product word when !nilpotent
};

// Verifies that every product of `bound` factors from the list vanishes.
NilpotencyVerdict nilpotency_check(const WindowCategory& w,
                                   const std::vector<CenterElement>& ideal, int bound);

// ---------------------------------------------------------------------------
// Ring recognition: verify a computed family of bases against a structural
// presentation, checking generator membership, spanning and all relations.
// ---------------------------------------------------------------------------

enum class PresentationKind {
    DualNumbers,           // T(k[zeta], prod_r k): unit line + square-zero
                           // diagonal ideal in degree 0, zeta-power line in
                           // higher degrees, zeta * ideal = 0
    TubeTrivialExtension,  // k[xi]/(xi^D) in degree 0, square-zero degree-1
                           // module with xi acting as zero
    LineField,             // just k: unit line in degree 0, nothing above
    StableSerial,          // k[x]/(x^B) in degree 0, square-zero degree-1
    // zeta block killed by x, invertible degree-2 unit
    StableLaurent,         // n = 2: Laurent line k[g, g^{-1}]
};

struct PresentationQuery {
    PresentationKind kind;
    std::string name;      // printable target description

    int zeta_degree = 2;   // DualNumbers/StableLaurent: degree of the power generator
    int diagonal_count = 0;// DualNumbers: expected square-zero generator count
    int xi_bound = 0;      // TubeTrivialExtension: degree-0 dimension D (xi^D = 0)
    int eta_count = 0;     // TubeTrivialExtension: expected degree-1 dimension
    int x_bound = 0;       // StableSerial: degree-0 dimension B (x^B = 0)
    int zeta_count = 0;    // StableSerial: expected degree-1 dimension

    std::optional<CenterElement> xi;    // TubeTrivialExtension: degree-0 generator
    std::optional<CenterElement> xgen;  // StableSerial: degree-0 generator
    std::optional<CenterElement> tunit; // StableSerial: invertible degree-2 element
    std::optional<CenterElement> tinv;  // StableSerial: its degree -2 inverse (optional)
};

struct RingReport {
    bool match = false;
    std::string target;
    std::vector<std::string> checks; // verified statements, in order
    std::string failure;             // first failing check when !match

    bool operator==(const RingReport&) const = default;
};

RingReport match_presentation(const WindowCategory& w,
                              const std::map<int, CenterBasis>& bases,
                              const PresentationQuery& q);

// ---------------------------------------------------------------------------
// The homotopy category K^b(proj) of the dual numbers k[x]/(x^2), windowed.
// ---------------------------------------------------------------------------

// Objects: interval complexes A_0^r for r = 0..N, one per suspension orbit
// (the orbit of A_m^n is determined by the diagonal r = n - m).  Hom spaces
// are precomputed eagerly for every pair and every degree in an envelope
// wide enough for all equations at degrees [deg_lo, deg_hi] and for products
// of two such degrees.
class KbprojWindow : public WindowCategory {
  public:
    KbprojWindow(const Field& f, int N, int deg_lo, int deg_hi);

    const Field& field() const override { return alg_.field(); }
    int object_count() const override { return static_cast<int>(objects_.size()); }
    std::string object_name(int i) const override;
    std::string describe() const override;
    int hom_dim(int i, int j, int u) const override;
    std::vector<Scalar> compose(int i, int j, int l, int t, int s,
                                const std::vector<Scalar>& g,
                                const std::vector<Scalar>& f) const override;
    std::vector<Scalar> identity_coords(int i) const override;
    std::pair<int, int> equation_range(bool with_sign) const override;
    std::pair<int, int> degree_range() const override { return {deg_lo_, deg_hi_}; }

    const SerialAlgebra& algebra() const { return alg_; }
    const Complex& object(int i) const { return objects_[static_cast<size_t>(i)]; }
    const HomSpace& hom(int i, int j, int u) const;
    int window_size() const { return N_; }
    std::pair<int, int> hom_degree_envelope() const { return {ulo_, uhi_}; }

  private:
    SerialAlgebra alg_;
    int N_;
    int deg_lo_, deg_hi_;
    int ulo_, uhi_;
    std::vector<Complex> objects_;
    std::vector<HomSpace> homs_; // [i][j][u - ulo_], flattened
};

// Coefficients over big.elements reproducing e on objects 0..shared-1 (free
// coefficients set to zero); nullopt when no combination restricts to e.
std::optional<std::vector<Scalar>> match_restriction(const CenterBasis& big,
                                                     const CenterElement& e, int shared);

// ---------------------------------------------------------------------------
// Extension of a window center element along the truncation tower of the
// projective resolution of the simple module (n = 2).
// ---------------------------------------------------------------------------
//
// The resolution of S = A/(x) is ... -x-> A -x-> A -> 0; its truncation at
// level m is the interval complex A_0^m.  Starting from a representative at
// level 0, each step lifts to level m+1 by correcting an arbitrary
// representative xi of e's value there: delta = xi . j - Sigma^t(j) . zeta^m
// is null-homotopic (j the inclusion of truncations), a homotopy h turns it
// into delta' = d h + h d on level m+1, and zeta^{m+1} = xi - delta' agrees
// with zeta^m in all degrees <= m.  Values of e beyond the window are taken
// from the solved center of a depth-sized window through the restriction
// match above.
struct ExtensionResult {
    std::vector<ChainMap> levels; // levels[m]: A_0^m -> shift(A_0^m, t), m = 0..depth
    bool stabilized = false;      // zeta^{m+1}_i == zeta^m_i for i <= m, re-checked
    Scalar ext_class;             // constant coefficient of the frozen degree-t
                                  // component: the induced class in Ext^t(S, S)
};

// Depth-sized window with its solved center at one degree, built once and
// shared by repeated extensions of different elements of that degree.
struct TruncationTower {
    TruncationTower(const Field& f, int depth, int t, bool with_sign);

    int depth;
    KbprojWindow window;
    CenterBasis basis;
};

ExtensionResult extend_to_truncations(const KbprojWindow& w, const CenterElement& e,
                                      int depth);
ExtensionResult extend_to_truncations(const KbprojWindow& w, const TruncationTower& tower,
                                      const CenterElement& e);

} // namespace gcenter
