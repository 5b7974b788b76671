#include "gcenter/quiver.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace gcenter {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

Rref empty_space(const Field& F, int cols) {
    return Rref{ExactMatrix(F, 0, cols), {}, 0};
}

} // namespace

NilpQuiverWindow::NilpQuiverWindow(const Field& f, int n, int L, bool cyclic)
    : F_(f), n_(n), L_(L), cyclic_(cyclic) {
    require(n >= 1, "quiver window: need at least one vertex");
    require(L >= 1, "quiver window: need positive length bound");

    for (int top = 0; top < n_; ++top) {
        int maxlen = cyclic_ ? L_ : n_ - top; // line reps must fit below the last vertex
        for (int len = 1; len <= std::min(L_, maxlen); ++len) {
            UniserialRep r;
            r.top = top;
            r.len = len;
            r.at.assign(static_cast<size_t>(n_), {});
            for (int j = 0; j < len; ++j) {
                int v = cyclic_ ? (top + j) % n_ : top + j;
                r.vtx.push_back(v);
                r.at[static_cast<size_t>(v)].push_back(j);
            }
            reps_.push_back(std::move(r));
        }
    }

    // Pairwise Hom (ker Phi) and Ext^1 (coker Phi) spaces.
    size_t count = reps_.size();
    pairs_.reserve(count * count);
    for (size_t i = 0; i < count; ++i) {
        const UniserialRep& M = reps_[i];
        for (size_t j = 0; j < count; ++j) {
            const UniserialRep& N = reps_[j];

            std::vector<int> hoff(static_cast<size_t>(n_) + 1, 0);
            for (int v = 0; v < n_; ++v)
                hoff[static_cast<size_t>(v) + 1] =
                    hoff[static_cast<size_t>(v)] + N.dim_at(v) * M.dim_at(v);
            int hdim = hoff[static_cast<size_t>(n_)];

            int arrows = arrow_count();
            std::vector<int> coff(static_cast<size_t>(arrows) + 1, 0);
            for (int a = 0; a < arrows; ++a)
                coff[static_cast<size_t>(a) + 1] =
                    coff[static_cast<size_t>(a)] +
                    N.dim_at(arrow_target(a)) * M.dim_at(arrow_source(a));
            int cdim = coff[static_cast<size_t>(arrows)];

            // Phi(phi)_a = phi_{t(a)} M_a - N_a phi_{s(a)}.
            ExactMatrix phi(F_, cdim, hdim);
            for (int a = 0; a < arrows; ++a) {
                int v = arrow_source(a), w = arrow_target(a);
                const auto& Mv = M.at[static_cast<size_t>(v)];
                const auto& Mw = M.at[static_cast<size_t>(w)];
                const auto& Nv = N.at[static_cast<size_t>(v)];
                const auto& Nw = N.at[static_cast<size_t>(w)];
                int mv = static_cast<int>(Mv.size()), mw = static_cast<int>(Mw.size());
                int nv = static_cast<int>(Nv.size()), nw = static_cast<int>(Nw.size());
                for (int p = 0; p < nw; ++p)
                    for (int q = 0; q < mv; ++q) {
                        int row = coff[static_cast<size_t>(a)] + p * mv + q;
                        for (int r = 0; r < mw; ++r)
                            if (Mw[static_cast<size_t>(r)] == Mv[static_cast<size_t>(q)] + 1) {
                                int col = hoff[static_cast<size_t>(w)] + p * mw + r;
                                phi.at(row, col) = F_.add(phi.at(row, col), F_.one());
                            }
                        for (int r = 0; r < nv; ++r)
                            if (Nw[static_cast<size_t>(p)] == Nv[static_cast<size_t>(r)] + 1) {
                                int col = hoff[static_cast<size_t>(v)] + r * mv + q;
                                phi.at(row, col) = F_.sub(phi.at(row, col), F_.one());
                            }
                    }
            }

            PairSpaces ps{empty_space(F_, hdim), empty_space(F_, cdim),
                          empty_space(F_, cdim), cdim};
            ps.hom = rref(kernel_basis(phi));
            ps.ext_mod = rref(phi.transposed());
            ps.ext_quo = quotient_basis(ExactMatrix::identity(F_, cdim), ps.ext_mod);
            pairs_.push_back(std::move(ps));
        }
    }
}

NilpQuiverWindow NilpQuiverWindow::cyclic(const Field& f, int n, int L) {
    return NilpQuiverWindow(f, n, L, true);
}

NilpQuiverWindow NilpQuiverWindow::line(const Field& f, int m) {
    return NilpQuiverWindow(f, m, m, false);
}

int NilpQuiverWindow::arrow_count() const { return cyclic_ ? n_ : n_ - 1; }
int NilpQuiverWindow::arrow_source(int a) const { return a; }
int NilpQuiverWindow::arrow_target(int a) const { return cyclic_ ? (a + 1) % n_ : a + 1; }

std::string NilpQuiverWindow::object_name(int i) const {
    const UniserialRep& r = rep(i);
    return "M_" + std::to_string(r.top) + "^[" + std::to_string(r.len) + "]";
}

std::string NilpQuiverWindow::describe() const {
    if (cyclic_)
        return "tube Z_" + std::to_string(n_) + " window (lengths <= " +
               std::to_string(L_) + ") over " + F_.name();
    return "line quiver A_" + std::to_string(n_) + " window over " + F_.name();
}

int NilpQuiverWindow::object_index(int top, int len) const {
    for (int i = 0; i < object_count(); ++i)
        if (reps_[static_cast<size_t>(i)].top == top && reps_[static_cast<size_t>(i)].len == len)
            return i;
    throw std::out_of_range("quiver window: no such object");
}

int NilpQuiverWindow::hom_dim(int i, int j, int u) const {
    require(i >= 0 && i < object_count() && j >= 0 && j < object_count(),
            "hom_dim: object index out of range");
    if (u == 0) return pair(i, j).hom.rank;
    if (u == 1) return pair(i, j).ext_quo.rank;
    return 0; // hereditary: nothing in degrees outside {0, 1}
}

int NilpQuiverWindow::cocycle_dim(int i, int j) const { return pair(i, j).cdim; }

std::vector<Scalar> NilpQuiverWindow::hom_flat(int i, int j,
                                               const std::vector<Scalar>& coords) const {
    const Rref& b = pair(i, j).hom;
    require(static_cast<int>(coords.size()) == b.rank, "hom coords: wrong length");
    std::vector<Scalar> v(static_cast<size_t>(b.mat.cols()), F_.zero());
    for (int k = 0; k < b.rank; ++k)
        for (int c = 0; c < b.mat.cols(); ++c)
            v[static_cast<size_t>(c)] =
                F_.add(v[static_cast<size_t>(c)],
                       F_.mul(coords[static_cast<size_t>(k)], b.mat.at(k, c)));
    return v;
}

std::vector<Scalar> NilpQuiverWindow::ext_flat(int i, int j,
                                               const std::vector<Scalar>& coords) const {
    const Rref& b = pair(i, j).ext_quo;
    require(static_cast<int>(coords.size()) == b.rank, "ext coords: wrong length");
    std::vector<Scalar> v(static_cast<size_t>(pair(i, j).cdim), F_.zero());
    for (int k = 0; k < b.rank; ++k)
        for (int c = 0; c < b.mat.cols(); ++c)
            v[static_cast<size_t>(c)] =
                F_.add(v[static_cast<size_t>(c)],
                       F_.mul(coords[static_cast<size_t>(k)], b.mat.at(k, c)));
    return v;
}

std::vector<Scalar> NilpQuiverWindow::compose(int i, int j, int l, int t, int s,
                                              const std::vector<Scalar>& g,
                                              const std::vector<Scalar>& f) const {
    require(static_cast<int>(f.size()) == hom_dim(i, j, t), "compose: bad f length");
    require(static_cast<int>(g.size()) == hom_dim(j, l, s), "compose: bad g length");
    int dT = hom_dim(i, l, t + s);
    std::vector<Scalar> zero(static_cast<size_t>(dT), F_.zero());
    if (dT == 0 || f.empty() || g.empty()) return zero;

    const UniserialRep& M = rep(i);
    const UniserialRep& N = rep(j);
    const UniserialRep& P = rep(l);

    if (t == 0 && s == 0) {
        std::vector<Scalar> Ff = hom_flat(i, j, f);
        std::vector<Scalar> Gg = hom_flat(j, l, g);
        std::vector<int> offF{0}, offG{0}, offP{0};
        for (int v = 0; v < n_; ++v) {
            offF.push_back(offF.back() + N.dim_at(v) * M.dim_at(v));
            offG.push_back(offG.back() + P.dim_at(v) * N.dim_at(v));
            offP.push_back(offP.back() + P.dim_at(v) * M.dim_at(v));
        }
        std::vector<Scalar> prod(static_cast<size_t>(offP.back()), F_.zero());
        for (int v = 0; v < n_; ++v) {
            int mv = M.dim_at(v), nv = N.dim_at(v), pv = P.dim_at(v);
            for (int p = 0; p < pv; ++p)
                for (int q = 0; q < mv; ++q) {
                    Scalar acc = F_.zero();
                    for (int r = 0; r < nv; ++r)
                        acc = F_.add(acc, F_.mul(Gg[static_cast<size_t>(offG[static_cast<size_t>(v)] + p * nv + r)],
                                                 Ff[static_cast<size_t>(offF[static_cast<size_t>(v)] + r * mv + q)]));
                    prod[static_cast<size_t>(offP[static_cast<size_t>(v)] + p * mv + q)] = acc;
                }
        }
        auto c = coords_in_quotient(pair(i, l).hom, empty_space(F_, offP.back()), prod);
        if (!c) throw std::logic_error("compose: product of homomorphisms left ker Phi");
        return *c;
    }

    if ((t == 1 && s == 0) || (t == 0 && s == 1)) {
        // Yoneda action on a cocycle representative: pushforward by the
        // degree-0 map when the degree-1 factor is f, pullback when it is g.
        bool push = (t == 1);
        std::vector<Scalar> Z = push ? ext_flat(i, j, f) : ext_flat(j, l, g);
        std::vector<Scalar> H = push ? hom_flat(j, l, g) : hom_flat(i, j, f);

        const UniserialRep& ZM = push ? M : N; // cocycle domain rep
        const UniserialRep& ZN = push ? N : P; // cocycle codomain rep
        const UniserialRep& HM = push ? N : M; // hom domain rep
        const UniserialRep& HN = push ? P : N; // hom codomain rep

        int arrows = arrow_count();
        std::vector<int> offZ{0}, offH{0}, offR{0};
        for (int a = 0; a < arrows; ++a) {
            offZ.push_back(offZ.back() +
                           ZN.dim_at(arrow_target(a)) * ZM.dim_at(arrow_source(a)));
            offR.push_back(offR.back() +
                           (push ? HN.dim_at(arrow_target(a)) * ZM.dim_at(arrow_source(a))
                                 : ZN.dim_at(arrow_target(a)) * HM.dim_at(arrow_source(a))));
        }
        for (int v = 0; v < n_; ++v) offH.push_back(offH.back() + HN.dim_at(v) * HM.dim_at(v));

        std::vector<Scalar> out(static_cast<size_t>(offR.back()), F_.zero());
        for (int a = 0; a < arrows; ++a) {
            int sv = arrow_source(a), tv = arrow_target(a);
            if (push) {
                // Z'_a = G_{t(a)} Z_a
                int rows = HN.dim_at(tv), mid = ZN.dim_at(tv), cols = ZM.dim_at(sv);
                for (int p = 0; p < rows; ++p)
                    for (int q = 0; q < cols; ++q) {
                        Scalar acc = F_.zero();
                        for (int r = 0; r < mid; ++r)
                            acc = F_.add(acc,
                                         F_.mul(H[static_cast<size_t>(offH[static_cast<size_t>(tv)] + p * mid + r)],
                                                Z[static_cast<size_t>(offZ[static_cast<size_t>(a)] + r * cols + q)]));
                        out[static_cast<size_t>(offR[static_cast<size_t>(a)] + p * cols + q)] = acc;
                    }
            } else {
                // Z'_a = Z_a F_{s(a)}
                int rows = ZN.dim_at(tv), mid = ZM.dim_at(sv), cols = HM.dim_at(sv);
                for (int p = 0; p < rows; ++p)
                    for (int q = 0; q < cols; ++q) {
                        Scalar acc = F_.zero();
                        for (int r = 0; r < mid; ++r)
                            acc = F_.add(acc,
                                         F_.mul(Z[static_cast<size_t>(offZ[static_cast<size_t>(a)] + p * mid + r)],
                                                H[static_cast<size_t>(offH[static_cast<size_t>(sv)] + r * cols + q)]));
                        out[static_cast<size_t>(offR[static_cast<size_t>(a)] + p * cols + q)] = acc;
                    }
            }
        }
        auto c = coords_in_quotient(pair(i, l).ext_quo, pair(i, l).ext_mod, out);
        if (!c) throw std::logic_error("compose: Yoneda action left the cocycle space");
        return *c;
    }

    return zero; // every other degree combination lands in a zero space
}

std::vector<Scalar> NilpQuiverWindow::identity_coords(int i) const {
    const UniserialRep& M = rep(i);
    std::vector<int> off{0};
    for (int v = 0; v < n_; ++v) off.push_back(off.back() + M.dim_at(v) * M.dim_at(v));
    std::vector<Scalar> flat(static_cast<size_t>(off.back()), F_.zero());
    for (int v = 0; v < n_; ++v)
        for (int p = 0; p < M.dim_at(v); ++p)
            flat[static_cast<size_t>(off[static_cast<size_t>(v)] + p * M.dim_at(v) + p)] = F_.one();
    auto c = coords_in_quotient(pair(i, i).hom, empty_space(F_, off.back()), flat);
    if (!c) throw std::logic_error("identity is not a homomorphism?");
    return *c;
}

std::pair<int, int> NilpQuiverWindow::equation_range(bool with_sign) const {
    return {0, with_sign ? 1 : 0};
}

std::vector<Scalar> NilpQuiverWindow::step_morphism(int i, int j, int step) const {
    require(step >= 0, "step morphism: negative step");
    const UniserialRep& M = rep(i);
    const UniserialRep& N = rep(j);
    bool aligned = cyclic_ ? ((M.top - N.top - step) % n_ + n_) % n_ == 0
                           : M.top == N.top + step;
    require(aligned, "step morphism: vertex mismatch");

    std::vector<int> off{0};
    for (int v = 0; v < n_; ++v) off.push_back(off.back() + N.dim_at(v) * M.dim_at(v));
    std::vector<Scalar> flat(static_cast<size_t>(off.back()), F_.zero());
    for (int q = 0; q < M.len; ++q) {
        int tgt = q + step;
        if (tgt >= N.len) continue;
        int v = M.vtx[static_cast<size_t>(q)];
        const auto& Mv = M.at[static_cast<size_t>(v)];
        const auto& Nv = N.at[static_cast<size_t>(v)];
        int qi = -1, pi = -1;
        for (size_t k = 0; k < Mv.size(); ++k)
            if (Mv[k] == q) qi = static_cast<int>(k);
        for (size_t k = 0; k < Nv.size(); ++k)
            if (Nv[k] == tgt) pi = static_cast<int>(k);
        require(qi >= 0 && pi >= 0, "step morphism: inconsistent vertex data");
        flat[static_cast<size_t>(off[static_cast<size_t>(v)] + pi * static_cast<int>(Mv.size()) + qi)] =
            F_.one();
    }
    auto c = coords_in_quotient(pair(i, j).hom, empty_space(F_, off.back()), flat);
    require(c.has_value(), "step morphism: not a homomorphism (length mismatch)");
    return *c;
}

CenterElement xi_element(const NilpQuiverWindow& w) {
    if (!w.cyclic_quiver())
        throw std::invalid_argument("xi element: only defined on tube windows");
    CenterElement e = zero_center_element(w, 0, true);
    for (int i = 0; i < w.object_count(); ++i)
        e.comps[static_cast<size_t>(i)] = w.step_morphism(i, i, w.vertex_count());
    return e;
}

ExactMatrix almost_split_classes(const NilpQuiverWindow& w, int i) {
    const Field& F = w.field();
    int d = w.hom_dim(i, i, 1);
    std::vector<std::vector<Scalar>> rows;

    // Basis of Ext^1(M_i, M_i) as unit coordinate vectors.
    auto unit = [&](int k) {
        std::vector<Scalar> v(static_cast<size_t>(d), F.zero());
        v[static_cast<size_t>(k)] = F.one();
        return v;
    };

    for (int r = 0; r < w.object_count(); ++r) {
        // Radical maps r -> i (pullback constraints).
        std::vector<std::vector<Scalar>> rad_in;
        if (r != i) {
            for (int k = 0; k < w.hom_dim(r, i, 0); ++k) {
                std::vector<Scalar> v(static_cast<size_t>(w.hom_dim(r, i, 0)), F.zero());
                v[static_cast<size_t>(k)] = F.one();
                rad_in.push_back(std::move(v));
            }
        } else {
            for (int step = w.vertex_count(); step < w.rep(i).len; step += w.vertex_count())
                rad_in.push_back(w.step_morphism(i, i, step));
        }
        for (const auto& g : rad_in) {
            int dt = w.hom_dim(r, i, 1);
            if (dt == 0) {
                continue;
            }
            std::vector<std::vector<Scalar>> cols;
            for (int k = 0; k < d; ++k) cols.push_back(w.compose(r, i, i, 0, 1, unit(k), g));
            for (int out = 0; out < dt; ++out) {
                std::vector<Scalar> row(static_cast<size_t>(d), F.zero());
                for (int k = 0; k < d; ++k) row[static_cast<size_t>(k)] = cols[static_cast<size_t>(k)][static_cast<size_t>(out)];
                rows.push_back(std::move(row));
            }
        }

        // Radical maps i -> r (pushforward constraints).
        std::vector<std::vector<Scalar>> rad_out;
        if (r != i) {
            for (int k = 0; k < w.hom_dim(i, r, 0); ++k) {
                std::vector<Scalar> v(static_cast<size_t>(w.hom_dim(i, r, 0)), F.zero());
                v[static_cast<size_t>(k)] = F.one();
                rad_out.push_back(std::move(v));
            }
        } else {
            for (int step = w.vertex_count(); step < w.rep(i).len; step += w.vertex_count())
                rad_out.push_back(w.step_morphism(i, i, step));
        }
        for (const auto& g : rad_out) {
            int dt = w.hom_dim(i, r, 1);
            if (dt == 0) continue;
            std::vector<std::vector<Scalar>> cols;
            for (int k = 0; k < d; ++k) cols.push_back(w.compose(i, i, r, 1, 0, g, unit(k)));
            for (int out = 0; out < dt; ++out) {
                std::vector<Scalar> row(static_cast<size_t>(d), F.zero());
                for (int k = 0; k < d; ++k) row[static_cast<size_t>(k)] = cols[static_cast<size_t>(k)][static_cast<size_t>(out)];
                rows.push_back(std::move(row));
            }
        }
    }

    if (rows.empty()) return ExactMatrix::identity(F, d);
    return kernel_basis(ExactMatrix::from_rows(F, rows));
}

CenterElement one_hot_ext(const NilpQuiverWindow& w, int i, std::vector<Scalar> cls) {
    if (static_cast<int>(cls.size()) != w.hom_dim(i, i, 1))
        throw std::invalid_argument("one_hot_ext: wrong coordinate length");
    CenterElement e = zero_center_element(w, 1, true);
    e.comps[static_cast<size_t>(i)] = std::move(cls);
    return e;
}

PresentationQuery tube_query(const NilpQuiverWindow& w) {
    if (!w.cyclic_quiver())
        throw std::invalid_argument("tube query: only defined on tube windows");
    PresentationQuery q;
    q.kind = PresentationKind::TubeTrivialExtension;
    int D = (w.length_bound() - 1) / w.vertex_count() + 1;
    q.xi_bound = D;
    q.eta_count = w.vertex_count() == 1 ? w.length_bound() : 0;
    q.xi = xi_element(w);
    q.name = "k[xi]/(xi^" + std::to_string(D) + ") + " + std::to_string(q.eta_count) +
             " square-zero degree-1 lines";
    return q;
}

PresentationQuery line_query(const NilpQuiverWindow& w) {
    if (w.cyclic_quiver())
        throw std::invalid_argument("line query: only defined on line-quiver windows");
    PresentationQuery q;
    q.kind = PresentationKind::LineField;
    q.name = "k";
    return q;
}

int euler_form(const NilpQuiverWindow& w, int i, int j) {
    const UniserialRep& M = w.rep(i);
    const UniserialRep& N = w.rep(j);
    int total = 0;
    for (int v = 0; v < w.vertex_count(); ++v) total += M.dim_at(v) * N.dim_at(v);
    int arrows = w.cyclic_quiver() ? w.vertex_count() : w.vertex_count() - 1;
    for (int a = 0; a < arrows; ++a) {
        int sv = a;
        int tv = w.cyclic_quiver() ? (a + 1) % w.vertex_count() : a + 1;
        total -= M.dim_at(sv) * N.dim_at(tv);
    }
    return total;
}

} // namespace gcenter
