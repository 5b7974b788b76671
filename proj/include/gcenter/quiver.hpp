// Windows over bounded derived categories of nilpotent uniserial quiver
// representations: tubes (cyclic quivers Z_n) and line quivers (A_m).
//
// The underlying abelian categories are hereditary length categories whose
// indecomposables are the uniserial representations M_s^[l] (top vertex s,
// length l).  Every object of the bounded derived category splits into
// shifted stalks, so a window presents the stalks as suspension-orbit
// representatives with graded Hom spaces
//
//     Hom^0(M, N) = Hom(M, N)    computed as ker Phi,
//     Hom^1(M, N) = Ext^1(M, N)  computed as coker Phi,
//     Hom^u(M, N) = 0            for every other u (hereditary),
//
// where Phi sends a vertex-indexed family of linear maps (phi_v) to the
// arrow-indexed family of commuting-square defects phi_{t(a)} M_a - N_a
// phi_{s(a)}.  Degree-0 composition is blockwise matrix composition; mixed
// compositions are the Yoneda actions on cocycle representatives: Sigma(g).f
// is the pushforward g.Z for g in degree 0, and g.f is the pullback Z.f for
// f in degree 0.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gcenter/matrix.hpp"
#include "gcenter/window.hpp"

namespace gcenter {

// A uniserial representation: basis e_0..e_{len-1}, e_j sitting at vertex
// vtx[j], arrows acting by e_j -> e_{j+1} (and e_{len-1} -> 0).
struct UniserialRep {
    int top = 0;
    int len = 0;
    std::vector<int> vtx;             // vtx[j]: vertex carrying basis vector j
    std::vector<std::vector<int>> at; // at[v]: ascending basis indices at vertex v

    int dim_at(int v) const { return static_cast<int>(at[static_cast<size_t>(v)].size()); }
};

class NilpQuiverWindow final : public WindowCategory {
  public:
    // Cyclic quiver with n vertices and arrows v -> v+1 (mod n); objects
    // M_s^[l] for every vertex s and every length 1 <= l <= L.
    static NilpQuiverWindow cyclic(const Field& f, int n, int L);
    // Line quiver with m vertices and arrows v -> v+1 (v < m-1); objects are
    // all interval representations.
    static NilpQuiverWindow line(const Field& f, int m);

    const Field& field() const override { return F_; }
    int object_count() const override { return static_cast<int>(reps_.size()); }
    std::string object_name(int i) const override;
    std::string describe() const override;
    int hom_dim(int i, int j, int u) const override;
    std::vector<Scalar> compose(int i, int j, int l, int t, int s,
                                const std::vector<Scalar>& g,
                                const std::vector<Scalar>& f) const override;
    std::vector<Scalar> identity_coords(int i) const override;
    // {0, 1} signed (Sigma-transported naturality against Hom and Ext
    // morphisms); {0, 0} unsigned (plain naturality among representatives).
    std::pair<int, int> equation_range(bool with_sign) const override;
    std::pair<int, int> degree_range() const override { return {-2, 2}; }

    int vertex_count() const { return n_; }
    bool cyclic_quiver() const { return cyclic_; }
    int length_bound() const { return L_; }
    int object_index(int top, int len) const;
    const UniserialRep& rep(int i) const { return reps_[static_cast<size_t>(i)]; }

    // Coordinates in Hom^0(i, j) of the canonical morphism e_q -> e_{q+step}
    // (quotient to length len_j - step followed by inclusion).  Throws
    // std::invalid_argument when no such morphism exists (vertex mismatch);
    // the zero morphism (step too large) yields zero coordinates.
    std::vector<Scalar> step_morphism(int i, int j, int step) const;

    // Flat dimension bookkeeping for Ext classes (cocycle representatives).
    int cocycle_dim(int i, int j) const;

  private:
    NilpQuiverWindow(const Field& f, int n, int L, bool cyclic);

    struct PairSpaces {
        Rref hom;     // rows: flattened vertex-block maps spanning ker Phi
        Rref ext_quo; // canonical representatives of coker Phi
        Rref ext_mod; // row space of im Phi
        int cdim = 0; // flattened arrow-block dimension
    };

    const PairSpaces& pair(int i, int j) const {
        return pairs_[static_cast<size_t>(i) * reps_.size() + static_cast<size_t>(j)];
    }
    int arrow_count() const;
    int arrow_source(int a) const;
    int arrow_target(int a) const;

    // Expand hom coordinates to flattened vertex-block entries and back.
    std::vector<Scalar> hom_flat(int i, int j, const std::vector<Scalar>& coords) const;
    std::vector<Scalar> ext_flat(int i, int j, const std::vector<Scalar>& coords) const;

    Field F_;
    int n_ = 0;
    int L_ = 0;
    bool cyclic_ = true;
    std::vector<UniserialRep> reps_;
    std::vector<PairSpaces> pairs_;
};

// The degree-0 generator xi ("divide by one full turn"): at every object the
// step-n endomorphism, zero where the length is too short.  Cyclic only.
CenterElement xi_element(const NilpQuiverWindow& w);

// Coordinate rows (in Ext^1(M_i, M_i)) of the classes killed by pullback
// along every radical map from a window object into M_i and by pushforward
// along every radical map from M_i into a window object: the almost-split
// classes visible in the window.
ExactMatrix almost_split_classes(const NilpQuiverWindow& w, int i);

// Degree-1 element supported at object i with the given Ext coordinates.
CenterElement one_hot_ext(const NilpQuiverWindow& w, int i, std::vector<Scalar> cls);

// Presentation targets: truncated power series ring k[xi]/(xi^D), with the
// degree-1 module present exactly in the homogeneous tube (n = 1).
PresentationQuery tube_query(const NilpQuiverWindow& w);
// Line quivers: the center is just the base field.
PresentationQuery line_query(const NilpQuiverWindow& w);

// Combinatorial Euler form sum_v m_v n_v - sum_arrows m_{s(a)} n_{t(a)}; an
// independent oracle for dim Hom - dim Ext^1.
int euler_form(const NilpQuiverWindow& w, int i, int j);

} // namespace gcenter
