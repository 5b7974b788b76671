#include "gcenter/stable.hpp"

#include <sstream>
#include <stdexcept>

namespace gcenter {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

int parity(int u) { return ((u % 2) + 2) % 2; }

// First s-index above the stable cutoff of Hom(A_l, A_r) inside k[x]/(x^n).
int stable_cut(int n, int l, int r) { return std::max(l + r - n, 0); }

} // namespace

StableWindow::StableWindow(const Field& f, int n, int deg_lo, int deg_hi)
    : F_(f), n_(n), deg_lo_(deg_lo), deg_hi_(deg_hi) {
    require(n >= 2, "StableWindow: modulus must be at least 2");
    require(deg_lo <= deg_hi, "StableWindow: empty degree range");
}

std::string StableWindow::object_name(int i) const {
    std::ostringstream os;
    os << "A_" << (i + 1);
    return os.str();
}

std::string StableWindow::describe() const {
    std::ostringstream os;
    os << "stable modules of " << F_.name() << "[x]/(x^" << n_ << "), degrees ["
       << deg_lo_ << ", " << deg_hi_ << "]";
    return os.str();
}

int StableWindow::omega_length(int l, int u) const {
    return parity(u) == 0 ? l : n_ - l;
}

std::vector<int> StableWindow::stable_basis(int n, int l, int r) {
    std::vector<int> out;
    for (int s = stable_cut(n, l, r) + 1; s <= std::min(l, r); ++s) out.push_back(s);
    return out;
}

int StableWindow::stable_dim(int n, int l, int r) {
    return std::max(std::min(l, r) - stable_cut(n, l, r), 0);
}

int StableWindow::hom_dim(int i, int j, int u) const {
    return stable_dim(n_, i + 1, omega_length(j + 1, u));
}

std::vector<Scalar> StableWindow::compose(int i, int j, int l, int t, int s,
                                          const std::vector<Scalar>& g,
                                          const std::vector<Scalar>& f) const {
    const int li = i + 1;
    const int lj = j + 1;
    const int ll = l + 1;
    const int rf = omega_length(lj, t);     // target length of f
    const int rg = omega_length(ll, s);     // target length of g before shifting
    const int rt = omega_length(ll, s + t); // target length of the composite
    require(static_cast<int>(f.size()) == stable_dim(n_, li, rf),
            "StableWindow::compose: f coordinate size mismatch");
    require(static_cast<int>(g.size()) == stable_dim(n_, lj, rg),
            "StableWindow::compose: g coordinate size mismatch");
    std::vector<Scalar> out(static_cast<size_t>(stable_dim(n_, li, rt)), F_.zero());
    const int cut_f = stable_cut(n_, li, rf);
    const int cut_g = stable_cut(n_, lj, rg);
    const int cut_o = stable_cut(n_, li, rt);
    const bool flip = parity(t) == 1; // Sigma^t(g) = Omega(g) for odd t
    for (size_t pb = 0; pb < g.size(); ++pb) {
        if (F_.is_zero(g[pb])) continue;
        int b = cut_g + 1 + static_cast<int>(pb);
        // Omega(f^{lj,rg}_b) = f^{n-lj, n-rg}_{n-rg-lj+b}; for even t the
        // index is unchanged.  Either way the shifted map runs A_rf -> A_rt.
        int b2 = flip ? n_ - rg - lj + b : b;
        for (size_t pa = 0; pa < f.size(); ++pa) {
            if (F_.is_zero(f[pa])) continue;
            int a = cut_f + 1 + static_cast<int>(pa);
            if (a + b2 <= rf) continue;        // composite falls into lower length
            int res = a + b2 - rf;
            if (res <= cut_o) continue;        // factors through the projective
            size_t po = static_cast<size_t>(res - cut_o - 1);
            out[po] = F_.add(out[po], F_.mul(g[pb], f[pa]));
        }
    }
    return out;
}

std::vector<Scalar> StableWindow::identity_coords(int i) const {
    int l = i + 1;
    std::vector<Scalar> v(static_cast<size_t>(stable_dim(n_, l, l)), F_.zero());
    v.back() = F_.one(); // s = l is the largest index and never factors
    return v;
}

std::pair<int, int> StableWindow::equation_range(bool with_sign) const {
    // u = 1 equations are naturality against maps into suspended objects,
    // transported back through the sign rule; all other degrees repeat these
    // two by the period-two suspension.  Unsigned families have no transport
    // rule, and every plain naturality equation already appears at u = 0
    // because each Hom^1(i, j) is Hom^0(i, sigma j) on the same window.
    return {0, with_sign ? 1 : 0};
}

CenterElement x_family(const StableWindow& w) {
    CenterElement e = zero_center_element(w, 0, true);
    const Field& F = w.field();
    int n = w.modulus();
    for (int i = 0; i < w.object_count(); ++i) {
        int l = i + 1;
        int s = l - 1;
        if (s >= 1 && s > std::max(2 * l - n, 0)) {
            size_t pos = static_cast<size_t>(s - std::max(2 * l - n, 0) - 1);
            e.comps[static_cast<size_t>(i)][pos] = F.one();
        }
    }
    return e;
}

CenterElement socle_family(const StableWindow& w, int s) {
    require(s >= 1 && s <= w.modulus() - 1, "socle_family: no such object");
    CenterElement e = zero_center_element(w, 1, true);
    // Hom(A_s, A_{n-s}) has no stable cutoff, so f^{s,n-s}_1 sits first.
    e.comps[static_cast<size_t>(s - 1)][0] = w.field().one();
    return e;
}

CenterElement shift_unit(const StableWindow& w, int d) {
    require(d % 2 == 0, "shift_unit: degree must be even");
    CenterElement e{d, true, {}};
    for (int i = 0; i < w.object_count(); ++i) e.comps.push_back(w.identity_coords(i));
    return e;
}

PresentationQuery stable_query(const StableWindow& w) {
    int n = w.modulus();
    require(n >= 3, "stable_query: the one-object case matches a Laurent line instead");
    bool char2 = w.field().characteristic() == 2;
    int x_bound = n / 2;
    int zeta_count = (char2 && n % 2 == 0) ? n / 2 : (n - 1) / 2;
    PresentationQuery q;
    q.kind = PresentationKind::StableSerial;
    std::ostringstream os;
    os << "k[x]/(x^" << x_bound << ") in degree 0, " << zeta_count
       << " square-zero socle lines in degree 1 killed by x, shift unit t invertible";
    q.name = os.str();
    q.x_bound = x_bound;
    q.zeta_count = zeta_count;
    q.xgen = x_family(w);
    q.tunit = shift_unit(w, 2);
    if (w.degree_range().first <= -2) q.tinv = shift_unit(w, -2);
    return q;
}

PresentationQuery laurent_query(const StableWindow& w) {
    require(w.modulus() == 2, "laurent_query: only the one-object window is a Laurent line");
    bool char2 = w.field().characteristic() == 2;
    PresentationQuery q;
    q.kind = PresentationKind::StableLaurent;
    q.zeta_degree = char2 ? 1 : 2;
    std::ostringstream os;
    os << "Laurent line k[g, g^{-1}] with deg g = " << q.zeta_degree;
    q.name = os.str();
    return q;
}

// ---------------------------------------------------------------------------
// Matrix model
// ---------------------------------------------------------------------------

namespace stable_model {

ExactMatrix shift_matrix(const Field& F, int l) {
    ExactMatrix m(F, l, l);
    for (int q = 0; q + 1 < l; ++q) m.at(q + 1, q) = F.one();
    return m;
}

ExactMatrix basis_matrix(const Field& F, int l, int r, int s) {
    require(s >= 1 && s <= std::min(l, r), "basis_matrix: index out of range");
    ExactMatrix m(F, r, l);
    for (int q = 0; q < s; ++q) m.at(q + r - s, q) = F.one();
    return m;
}

std::vector<Scalar> flatten(const ExactMatrix& m) {
    std::vector<Scalar> v;
    v.reserve(static_cast<size_t>(m.rows()) * static_cast<size_t>(m.cols()));
    for (int p = 0; p < m.rows(); ++p)
        for (int q = 0; q < m.cols(); ++q) v.push_back(m.at(p, q));
    return v;
}

Rref module_hom_space(const Field& F, int l, int r) {
    // Unknown M is r x l; impose M X_l - X_r M = 0 entrywise.
    ExactMatrix eq(F, r * l, r * l);
    auto idx = [l](int p, int q) { return p * l + q; };
    for (int p = 0; p < r; ++p) {
        for (int q = 0; q < l; ++q) {
            int row = idx(p, q);
            if (q + 1 < l) eq.at(row, idx(p, q + 1)) = F.add(eq.at(row, idx(p, q + 1)), F.one());
            if (p - 1 >= 0) eq.at(row, idx(p - 1, q)) = F.sub(eq.at(row, idx(p - 1, q)), F.one());
        }
    }
    return rref(kernel_basis(eq));
}

Rref projective_factoring(const Field& F, int n, int l, int r) {
    std::vector<std::vector<Scalar>> rows;
    for (int s1 = 1; s1 <= std::min(l, n); ++s1) {
        ExactMatrix h = basis_matrix(F, l, n, s1);
        for (int s2 = 1; s2 <= std::min(n, r); ++s2)
            rows.push_back(flatten(basis_matrix(F, n, r, s2).mul(h)));
    }
    return rref(ExactMatrix::from_rows(F, rows));
}

std::vector<Scalar> full_coords(const Field& F, int l, int r, const ExactMatrix& m) {
    require(m.rows() == r && m.cols() == l, "full_coords: matrix shape mismatch");
    std::vector<Scalar> c(static_cast<size_t>(std::min(l, r)), F.zero());
    ExactMatrix rebuilt(F, r, l);
    for (int s = 1; s <= std::min(l, r); ++s) {
        c[static_cast<size_t>(s - 1)] = m.at(r - s, 0);
        if (!F.is_zero(c[static_cast<size_t>(s - 1)]))
            rebuilt = rebuilt.add(basis_matrix(F, l, r, s).scale(c[static_cast<size_t>(s - 1)]));
    }
    require(rebuilt == m, "full_coords: matrix is not a module map");
    return c;
}

ExactMatrix syzygy_matrix(const Field& F, int n, int l, int r, const ExactMatrix& m) {
    require(l >= 1 && l < n && r >= 1 && r < n, "syzygy_matrix: lengths must be 1..n-1");
    std::vector<Scalar> c = full_coords(F, l, r, m); // also validates m
    // Lift: phi(1_{A_l}) = sum_s c_s x^{r-s}, so phi-hat = sum_s c_s X_n^{r-s}
    // on the covers.  Powers of the shift assemble directly.
    ExactMatrix lift(F, n, n);
    for (int s = 1; s <= std::min(l, r); ++s) {
        const Scalar& cs = c[static_cast<size_t>(s - 1)];
        if (F.is_zero(cs)) continue;
        for (int q = 0; q + (r - s) < n; ++q)
            lift.at(q + r - s, q) = F.add(lift.at(q + r - s, q), cs);
    }
    // Restrict to the kernels x^l A_n (basis x^l..x^{n-1}) -> x^r A_n.
    for (int q = l; q < n; ++q)
        for (int p = 0; p < r; ++p)
            require(F.is_zero(lift.at(p, q)),
                    "syzygy_matrix: lift does not preserve the kernel");
    ExactMatrix out(F, n - r, n - l);
    for (int p = 0; p < n - r; ++p)
        for (int q = 0; q < n - l; ++q) out.at(p, q) = lift.at(r + p, l + q);
    return out;
}

} // namespace stable_model

// ---------------------------------------------------------------------------
// Singularity comparison (n = 2)
// ---------------------------------------------------------------------------

namespace {

SingularityImage image_from(const StableWindow& st, const CenterElement& e,
                            const ExtensionResult& ext) {
    SingularityImage out;
    out.stabilized = ext.stabilized;
    out.cls = ext.ext_class;
    out.value = zero_center_element(st, e.degree, e.with_sign);
    out.value.comps[0][0] = ext.ext_class;
    return out;
}

void check_singularity_args(const KbprojWindow& kb, const StableWindow& st,
                            const CenterElement& e) {
    require(st.modulus() == 2, "singularity_map: stable side must be the n = 2 window");
    require(st.field() == kb.field(), "singularity_map: field mismatch");
    require(e.degree >= 0, "singularity_map: perfect-complex degrees are non-negative");
}

} // namespace

SingularityImage singularity_map(const KbprojWindow& kb, const StableWindow& st,
                                 const CenterElement& e, int depth) {
    check_singularity_args(kb, st, e);
    return image_from(st, e, extend_to_truncations(kb, e, depth));
}

SingularityImage singularity_map(const KbprojWindow& kb, const StableWindow& st,
                                 const TruncationTower& tower, const CenterElement& e) {
    check_singularity_args(kb, st, e);
    return image_from(st, e, extend_to_truncations(kb, tower, e));
}

} // namespace gcenter
