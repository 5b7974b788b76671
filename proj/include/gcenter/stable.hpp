// The stable module category of k[x]/(x^n), as a window category.
//
// Objects are the nonprojective indecomposables A_l = x^{n-l} k[x]/(x^n) for
// l = 1..n-1.  Hom_A(A_l, A_r) has basis f^{l,r}_s = i^r_s . pi^l_s (project
// A_l onto its length-s quotient, then include that as a submodule of A_r)
// for 1 <= s <= min(l, r); the map f^{l,r}_s factors through a projective --
// and so vanishes stably -- exactly when l + r - n >= s.  Composition is
//
//     f^{r,u}_{s'} . f^{l,r}_s  =  f^{l,u}_{s+s'-r}   if s + s' > r, else 0.
//
// The syzygy functor Omega(A_l) = A_{n-l}, Omega(f^{l,r}_s) =
// f^{n-l,n-r}_{n-r-l+s} is self-inverse and serves as the suspension
// (Sigma = Omega^{-1} = Omega), so the window holds every indecomposable at
// once and all integer degrees are available with period two -- including
// negative ones, where the degree-2 identity family has an inverse.
//
// The stable_model namespace realizes the same data concretely (A_l as
// k[x]/(x^l) with the nilpotent shift, morphisms as commuting matrices,
// syzygies by restricting lifts through projective covers) and is kept as a
// permanent independent oracle for the closed rules above.
#pragma once

#include "gcenter/window.hpp"

namespace gcenter {

class StableWindow final : public WindowCategory {
  public:
    // Requires n >= 2 and deg_lo <= deg_hi.
    StableWindow(const Field& f, int n, int deg_lo, int deg_hi);

    const Field& field() const override { return F_; }
    int object_count() const override { return n_ - 1; }
    std::string object_name(int i) const override;
    std::string describe() const override;
    int hom_dim(int i, int j, int u) const override;
    std::vector<Scalar> compose(int i, int j, int l, int t, int s,
                                const std::vector<Scalar>& g,
                                const std::vector<Scalar>& f) const override;
    std::vector<Scalar> identity_coords(int i) const override;
    std::pair<int, int> equation_range(bool with_sign) const override;
    std::pair<int, int> degree_range() const override { return {deg_lo_, deg_hi_}; }

    int modulus() const { return n_; }
    // Length of Omega^u A_l (period two in u, any sign).
    int omega_length(int l, int u) const;

    // s-indices of the stable basis of Hom(A_l, A_r), ascending.
    static std::vector<int> stable_basis(int n, int l, int r);
    static int stable_dim(int n, int l, int r);

  private:
    Field F_;
    int n_;
    int deg_lo_, deg_hi_;
};

// Degree-0 family acting as multiplication by x: component f^{l,l}_{l-1} at
// A_l where that map survives stably, zero elsewhere.
CenterElement x_family(const StableWindow& w);

// Degree-1 family supported at the single object A_s, where it is the socle
// factorization f^{s,n-s}_1 : A_s -> Omega A_s.
CenterElement socle_family(const StableWindow& w, int s);

// Identity components placed in an even degree d (any sign); d = 2 is the
// shift unit t, d = -2 its inverse.  Throws std::invalid_argument on odd d.
CenterElement shift_unit(const StableWindow& w, int d);

// Presentation query for n >= 3: k[x]/(x^floor(n/2)) in degree 0, a block of
// square-zero socle lines in degree 1 killed by x, and the invertible shift
// unit; the degree-1 count follows the characteristic/parity case split.
PresentationQuery stable_query(const StableWindow& w);

// Presentation query for n = 2: Laurent line on a generator of degree 2
// (degree 1 in characteristic two).
PresentationQuery laurent_query(const StableWindow& w);

// ---------------------------------------------------------------------------
// Matrix model: A_l = k[x]/(x^l) with basis 1, x, ..., x^{l-1}.  Module maps
// A_l -> A_r are the r x l matrices commuting with the nilpotent shifts.
// Flattened vectors are row-major (entry (p, q) at index p*l + q).
// ---------------------------------------------------------------------------

namespace stable_model {

// Multiplication by x on A_l.
ExactMatrix shift_matrix(const Field& F, int l);

// Matrix of f^{l,r}_s: sends x^q to x^{q + r - s} for q < s, else 0.
ExactMatrix basis_matrix(const Field& F, int l, int r, int s);

// Echelon rows spanning {M : M X_l = X_r M}, the full module Hom space.
Rref module_hom_space(const Field& F, int l, int r);

// Echelon rows spanning the maps A_l -> A_r that factor through A_n,
// computed from literal matrix products through the projective.
Rref projective_factoring(const Field& F, int n, int l, int r);

std::vector<Scalar> flatten(const ExactMatrix& m);

// Coefficients of a module map over f^{l,r}_1 .. f^{l,r}_{min(l,r)}.
// Throws std::invalid_argument when m does not commute with the shifts.
std::vector<Scalar> full_coords(const Field& F, int l, int r, const ExactMatrix& m);

// Syzygy of a module map A_l -> A_r (l, r < n), computed independently of
// the closed formula: lift through the projective covers A_n ->> A_l,
// A_n ->> A_r and restrict to the kernels x^l A_n -> x^r A_n.  Returns the
// (n-r) x (n-l) matrix of the restriction in the cyclic bases.
ExactMatrix syzygy_matrix(const Field& F, int n, int l, int r, const ExactMatrix& m);

} // namespace stable_model

// ---------------------------------------------------------------------------
// Comparison with perfect complexes for n = 2: a center element of the
// K^b(proj) window extends along the truncation tower of the resolution of
// the simple module S; its stabilized class in Ext^t(S, S) is an element of
// the one-dimensional stable Hom(S, Sigma^t S), i.e. a scalar multiple of
// the canonical generator of the stable center in degree t.
// ---------------------------------------------------------------------------

struct SingularityImage {
    bool stabilized = false; // extension tower froze below the requested depth
    Scalar cls{};            // induced class in Ext^t(S, S) = k
    CenterElement value;     // the matching stable center element
};

// Requires st.modulus() == 2 over the same field as kb, and e.degree >= 0.
SingularityImage singularity_map(const KbprojWindow& kb, const StableWindow& st,
                                 const CenterElement& e, int depth);

// Same, but reusing a precomputed truncation tower (one deep solve shared by
// every element of the tower's degree and sign mode).
SingularityImage singularity_map(const KbprojWindow& kb, const StableWindow& st,
                                 const TruncationTower& tower, const CenterElement& e);

} // namespace gcenter
