#include "gcenter/serial.hpp"

#include <stdexcept>

namespace gcenter {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

bool scalar_eq(const Scalar& a, const Scalar& b) {
    return a.num == b.num && a.den == b.den; // representations are canonical
}

} // namespace

SerialAlgebra::SerialAlgebra(Field f, int n) : F(f), n_(n) {
    require(n >= 1, "serial algebra needs nilpotency degree >= 1");
}

AElem SerialAlgebra::zero() const { return {std::vector<Scalar>(static_cast<size_t>(n_), F.zero())}; }

AElem SerialAlgebra::one() const { return scalar(F.one()); }

AElem SerialAlgebra::x() const { return monomial(1); }

AElem SerialAlgebra::monomial(int k) const {
    AElem a = zero();
    if (k >= 0 && k < n_) a.c[static_cast<size_t>(k)] = F.one();
    return a;
}

AElem SerialAlgebra::scalar(const Scalar& s) const {
    AElem a = zero();
    a.c[0] = s;
    return a;
}

AElem SerialAlgebra::add(const AElem& a, const AElem& b) const {
    AElem r = zero();
    for (int i = 0; i < n_; ++i)
        r.c[static_cast<size_t>(i)] = F.add(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(i)]);
    return r;
}

AElem SerialAlgebra::sub(const AElem& a, const AElem& b) const { return add(a, neg(b)); }

AElem SerialAlgebra::mul(const AElem& a, const AElem& b) const {
    AElem r = zero();
    for (int i = 0; i < n_; ++i)
        for (int j = 0; i + j < n_; ++j)
            r.c[static_cast<size_t>(i + j)] =
                F.add(r.c[static_cast<size_t>(i + j)],
                      F.mul(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(j)]));
    return r;
}

AElem SerialAlgebra::scale(const Scalar& s, const AElem& a) const {
    AElem r = zero();
    for (int i = 0; i < n_; ++i) r.c[static_cast<size_t>(i)] = F.mul(s, a.c[static_cast<size_t>(i)]);
    return r;
}

AElem SerialAlgebra::neg(const AElem& a) const {
    AElem r = zero();
    for (int i = 0; i < n_; ++i) r.c[static_cast<size_t>(i)] = F.neg(a.c[static_cast<size_t>(i)]);
    return r;
}

bool SerialAlgebra::is_zero(const AElem& a) const {
    for (const Scalar& s : a.c)
        if (!F.is_zero(s)) return false;
    return true;
}

bool SerialAlgebra::eq(const AElem& a, const AElem& b) const {
    for (int i = 0; i < n_; ++i)
        if (!F.eq(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(i)])) return false;
    return true;
}

ExactMatrix SerialAlgebra::mult_matrix(const AElem& a) const {
    ExactMatrix m(F, n_, n_);
    for (int c = 0; c < n_; ++c)
        for (int b = 0; b <= c; ++b) m.at(c, b) = a.c[static_cast<size_t>(c - b)];
    return m;
}

AMat::AMat(const SerialAlgebra& alg, int r, int c)
    : rows(r), cols(c), e(static_cast<size_t>(r) * c, alg.zero()) {}

AMat amat_identity(const SerialAlgebra& alg, int n) {
    AMat m(alg, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = alg.one();
    return m;
}

AMat amat_mul(const SerialAlgebra& alg, const AMat& a, const AMat& b) {
    require(a.cols == b.rows, "A-matrix product shape mismatch");
    AMat r(alg, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (alg.is_zero(a.at(i, k))) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = alg.add(r.at(i, j), alg.mul(a.at(i, k), b.at(k, j)));
        }
    return r;
}

AMat amat_add(const SerialAlgebra& alg, const AMat& a, const AMat& b) {
    require(a.rows == b.rows && a.cols == b.cols, "A-matrix sum shape mismatch");
    AMat r(alg, a.rows, a.cols);
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = alg.add(a.e[i], b.e[i]);
    return r;
}

AMat amat_sub(const SerialAlgebra& alg, const AMat& a, const AMat& b) {
    return amat_add(alg, a, amat_neg(alg, b));
}

AMat amat_scale(const SerialAlgebra& alg, const Scalar& s, const AMat& a) {
    AMat r(alg, a.rows, a.cols);
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = alg.scale(s, a.e[i]);
    return r;
}

AMat amat_neg(const SerialAlgebra& alg, const AMat& a) {
    AMat r(alg, a.rows, a.cols);
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = alg.neg(a.e[i]);
    return r;
}

bool amat_is_zero(const SerialAlgebra& alg, const AMat& a) {
    for (const AElem& x : a.e)
        if (!alg.is_zero(x)) return false;
    return true;
}

bool amat_eq(const SerialAlgebra& alg, const AMat& a, const AMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!alg.eq(a.e[i], b.e[i])) return false;
    return true;
}

bool Complex::operator==(const Complex& o) const {
    if (is_zero() && o.is_zero()) return true;
    if (lo != o.lo || hi != o.hi || ranks != o.ranks) return false;
    for (size_t t = 0; t < diffs.size(); ++t) {
        const AMat &a = diffs[t], &b = o.diffs[t];
        if (a.rows != b.rows || a.cols != b.cols) return false;
        for (size_t i = 0; i < a.e.size(); ++i)
            for (size_t c = 0; c < a.e[i].c.size(); ++c)
                if (!scalar_eq(a.e[i].c[c], b.e[i].c[c])) return false;
    }
    return true;
}

Complex make_complex(const SerialAlgebra& alg, int lo, std::vector<int> ranks,
                     std::vector<AMat> diffs) {
    Complex x;
    x.lo = lo;
    x.hi = lo + static_cast<int>(ranks.size()) - 1;
    x.ranks = std::move(ranks);
    x.diffs = std::move(diffs);
    require(x.ranks.size() == x.diffs.size(), "one differential per degree expected");
    for (int i = x.lo; i <= x.hi; ++i) {
        const AMat& d = x.diff(i);
        require(d.rows == x.rank(i - 1) && d.cols == x.rank(i), "differential shape mismatch");
        if (i > x.lo)
            require(amat_is_zero(alg, amat_mul(alg, x.diff(i - 1), x.diff(i))),
                    "d o d != 0");
    }
    return x;
}

Complex interval_complex(const SerialAlgebra& alg, int m, int nn) {
    require(alg.n() == 2, "interval complexes with d = x need x^2 = 0");
    require(m <= nn, "interval needs m <= nn");
    std::vector<int> ranks(static_cast<size_t>(nn - m + 1), 1);
    std::vector<AMat> diffs;
    for (int i = m; i <= nn; ++i) {
        AMat d(alg, i == m ? 0 : 1, 1);
        if (i > m) d.at(0, 0) = alg.x();
        diffs.push_back(d);
    }
    return make_complex(alg, m, std::move(ranks), std::move(diffs));
}

Complex shift(const SerialAlgebra& alg, const Complex& x, int k) {
    if (x.is_zero()) return x;
    Complex y = x;
    y.lo += k;
    y.hi += k;
    if (k % 2 != 0)
        for (AMat& d : y.diffs) d = amat_neg(alg, d);
    return y;
}

AMat ChainMap::comp(const SerialAlgebra& alg, int i) const {
    int idx = i - lo;
    if (idx >= 0 && idx < static_cast<int>(comps.size())) return comps[static_cast<size_t>(idx)];
    return AMat(alg, target.rank(i), source.rank(i));
}

ChainMap zero_map(const SerialAlgebra& alg, const Complex& x, const Complex& y) {
    ChainMap f;
    f.source = x;
    f.target = y;
    f.lo = std::max(x.lo, y.lo);
    int hi = std::min(x.hi, y.hi);
    for (int i = f.lo; i <= hi; ++i) f.comps.emplace_back(alg, y.rank(i), x.rank(i));
    return f;
}

ChainMap identity_map(const SerialAlgebra& alg, const Complex& x) {
    ChainMap f = zero_map(alg, x, x);
    for (int i = x.lo; i <= x.hi; ++i) f.comps[static_cast<size_t>(i - f.lo)] = amat_identity(alg, x.rank(i));
    return f;
}

bool is_chain_map(const SerialAlgebra& alg, const ChainMap& f) {
    const Complex &x = f.source, &y = f.target;
    if (x.is_zero() || y.is_zero()) return true;
    for (int i = std::min(x.lo, y.lo) - 1; i <= std::max(x.hi, y.hi); ++i) {
        if (y.rank(i) == 0 || x.rank(i + 1) == 0) continue;
        AMat lhs = (x.rank(i) > 0) ? amat_mul(alg, f.comp(alg, i), x.diff(i + 1))
                                   : AMat(alg, y.rank(i), x.rank(i + 1));
        AMat rhs = (y.rank(i + 1) > 0) ? amat_mul(alg, y.diff(i + 1), f.comp(alg, i + 1))
                                       : AMat(alg, y.rank(i), x.rank(i + 1));
        if (!amat_eq(alg, lhs, rhs)) return false;
    }
    return true;
}

bool chain_map_eq(const SerialAlgebra& alg, const ChainMap& f, const ChainMap& g) {
    if (!(f.source == g.source) || !(f.target == g.target)) return false;
    const Complex &x = f.source, &y = f.target;
    int lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
    for (int i = lo; i <= hi; ++i)
        if (!amat_eq(alg, f.comp(alg, i), g.comp(alg, i))) return false;
    return true;
}

ChainMap compose(const SerialAlgebra& alg, const ChainMap& g, const ChainMap& f) {
    require(f.target == g.source, "compose: target/source mismatch");
    ChainMap r = zero_map(alg, f.source, g.target);
    for (size_t t = 0; t < r.comps.size(); ++t) {
        int i = r.lo + static_cast<int>(t);
        if (g.source.rank(i) == 0) continue; // middle object vanishes: composite is zero
        r.comps[t] = amat_mul(alg, g.comp(alg, i), f.comp(alg, i));
    }
    return r;
}

ChainMap add(const SerialAlgebra& alg, const ChainMap& f, const ChainMap& g) {
    require(f.source == g.source && f.target == g.target, "add: complexes differ");
    ChainMap r = zero_map(alg, f.source, f.target);
    for (size_t t = 0; t < r.comps.size(); ++t) {
        int i = r.lo + static_cast<int>(t);
        r.comps[t] = amat_add(alg, f.comp(alg, i), g.comp(alg, i));
    }
    return r;
}

ChainMap scale(const SerialAlgebra& alg, const Scalar& s, const ChainMap& f) {
    ChainMap r = f;
    for (AMat& m : r.comps) m = amat_scale(alg, s, m);
    return r;
}

ChainMap shift_map(const SerialAlgebra& alg, const ChainMap& f, int k) {
    ChainMap r;
    r.source = shift(alg, f.source, k);
    r.target = shift(alg, f.target, k);
    r.lo = f.lo + k;
    r.comps = f.comps;
    return r;
}

std::pair<Complex, ChainMap> truncate(const SerialAlgebra& alg, const Complex& x, int nn) {
    if (x.is_zero() || nn >= x.hi) return {x, identity_map(alg, x)};
    if (nn < x.lo) {
        Complex z; // zero complex
        ChainMap f;
        f.source = z;
        f.target = x;
        return {z, f};
    }
    Complex t;
    t.lo = x.lo;
    t.hi = nn;
    t.ranks.assign(x.ranks.begin(), x.ranks.begin() + (nn - x.lo + 1));
    t.diffs.assign(x.diffs.begin(), x.diffs.begin() + (nn - x.lo + 1));
    ChainMap f = zero_map(alg, t, x);
    for (int i = t.lo; i <= t.hi; ++i)
        f.comps[static_cast<size_t>(i - f.lo)] = amat_identity(alg, t.rank(i));
    return {t, f};
}

namespace {

// Flattened index bookkeeping for the component spaces of maps X -> Y living
// in a degree interval: one block per degree, row-major entries, n field
// coordinates per A-entry.
struct BlockIndex {
    int lo = 0, hi = -1;
    int n = 1;
    std::vector<int> offs; // per degree in [lo, hi], plus total at the end
    std::vector<std::pair<int, int>> shapes;

    int total() const { return offs.empty() ? 0 : offs.back(); }
    int offset(int i) const { return offs[static_cast<size_t>(i - lo)]; }
    bool contains(int i) const { return i >= lo && i <= hi; }
    int entry(int i, int p, int q, int c) const {
        const auto& sh = shapes[static_cast<size_t>(i - lo)];
        return offset(i) + (p * sh.second + q) * n + c;
    }
};

BlockIndex component_index(const SerialAlgebra& alg, const Complex& x, const Complex& y) {
    BlockIndex b;
    b.n = alg.n();
    b.lo = std::max(x.lo, y.lo);
    b.hi = std::min(x.hi, y.hi);
    int off = 0;
    for (int i = b.lo; i <= b.hi; ++i) {
        b.offs.push_back(off);
        b.shapes.emplace_back(y.rank(i), x.rank(i));
        off += y.rank(i) * x.rank(i) * b.n;
    }
    b.offs.push_back(off);
    return b;
}

// Maps h_i : X_i -> Y_{i+1}.
BlockIndex homotopy_index(const SerialAlgebra& alg, const Complex& x, const Complex& y) {
    BlockIndex b;
    b.n = alg.n();
    b.lo = std::max(x.lo, y.lo - 1);
    b.hi = std::min(x.hi, y.hi - 1);
    int off = 0;
    for (int i = b.lo; i <= b.hi; ++i) {
        b.offs.push_back(off);
        b.shapes.emplace_back(y.rank(i + 1), x.rank(i));
        off += y.rank(i + 1) * x.rank(i) * b.n;
    }
    b.offs.push_back(off);
    return b;
}

// Into rows [eqbase ...] of m, add sign * (known * unknown) where the unknown
// block has index uidx at degree ui and the equation block has shape er x ec.
void add_left_mul(const SerialAlgebra& alg, ExactMatrix& m, int eqbase, int er, int ec,
                  const AMat& known, const BlockIndex& uidx, int ui, int sign) {
    if (!uidx.contains(ui)) return;
    const Field& F = alg.field();
    int n = alg.n();
    for (int p = 0; p < er; ++p)
        for (int r = 0; r < known.cols; ++r) {
            const AElem& g = known.at(p, r);
            if (alg.is_zero(g)) continue;
            ExactMatrix L = alg.mult_matrix(g);
            for (int q = 0; q < ec; ++q)
                for (int c1 = 0; c1 < n; ++c1)
                    for (int c2 = 0; c2 < n; ++c2) {
                        if (F.is_zero(L.at(c1, c2))) continue;
                        Scalar v = sign < 0 ? F.neg(L.at(c1, c2)) : L.at(c1, c2);
                        int row = eqbase + (p * ec + q) * n + c1;
                        int col = uidx.entry(ui, r, q, c2);
                        m.at(row, col) = F.add(m.at(row, col), v);
                    }
        }
}

// Same, for sign * (unknown * known); multiplication in A is commutative, so
// the coefficient action is the same multiplication matrix.
void add_right_mul(const SerialAlgebra& alg, ExactMatrix& m, int eqbase, int er, int ec,
                   const BlockIndex& uidx, int ui, const AMat& known, int sign) {
    if (!uidx.contains(ui)) return;
    const Field& F = alg.field();
    int n = alg.n();
    for (int s = 0; s < known.rows; ++s)
        for (int q = 0; q < ec; ++q) {
            const AElem& g = known.at(s, q);
            if (alg.is_zero(g)) continue;
            ExactMatrix L = alg.mult_matrix(g);
            for (int p = 0; p < er; ++p)
                for (int c1 = 0; c1 < n; ++c1)
                    for (int c2 = 0; c2 < n; ++c2) {
                        if (F.is_zero(L.at(c1, c2))) continue;
                        Scalar v = sign < 0 ? F.neg(L.at(c1, c2)) : L.at(c1, c2);
                        int row = eqbase + (p * ec + q) * n + c1;
                        int col = uidx.entry(ui, p, s, c2);
                        m.at(row, col) = F.add(m.at(row, col), v);
                    }
        }
}

// Columns: component coordinates.  Rows: the chain-map equations
// f_i d^X_{i+1} - d^Y_{i+1} f_{i+1} = 0.
ExactMatrix chain_constraints(const SerialAlgebra& alg, const Complex& x, const Complex& y,
                              const BlockIndex& fidx) {
    const Field& F = alg.field();
    int n = alg.n();
    int eq_rows = 0;
    for (int i = std::min(x.lo, y.lo) - 1; x.lo <= x.hi && i <= std::max(x.hi, y.hi); ++i)
        eq_rows += y.rank(i) * x.rank(i + 1) * n;
    ExactMatrix m(F, eq_rows, fidx.total());
    int eqbase = 0;
    for (int i = std::min(x.lo, y.lo) - 1; x.lo <= x.hi && i <= std::max(x.hi, y.hi); ++i) {
        int er = y.rank(i), ec = x.rank(i + 1);
        if (er == 0 || ec == 0) continue;
        if (x.rank(i) > 0) add_right_mul(alg, m, eqbase, er, ec, fidx, i, x.diff(i + 1), +1);
        if (y.rank(i + 1) > 0) add_left_mul(alg, m, eqbase, er, ec, y.diff(i + 1), fidx, i + 1, -1);
        eqbase += er * ec * n;
    }
    return m;
}

// Columns: homotopy coordinates.  Rows: component coordinates of d h + h d.
ExactMatrix homotopy_boundary(const SerialAlgebra& alg, const Complex& x, const Complex& y,
                              const BlockIndex& fidx, const BlockIndex& hidx) {
    ExactMatrix m(alg.field(), fidx.total(), hidx.total());
    for (int i = fidx.lo; i <= fidx.hi; ++i) {
        int er = y.rank(i), ec = x.rank(i);
        if (er == 0 || ec == 0) continue;
        int eqbase = fidx.offset(i);
        if (y.rank(i + 1) > 0) add_left_mul(alg, m, eqbase, er, ec, y.diff(i + 1), hidx, i, +1);
        if (x.rank(i - 1) > 0) add_right_mul(alg, m, eqbase, er, ec, hidx, i - 1, x.diff(i), +1);
    }
    return m;
}

} // namespace

std::optional<Homotopy> null_homotopy(const SerialAlgebra& alg, const ChainMap& f) {
    const Complex &x = f.source, &y = f.target;
    const Field& F = alg.field();
    if (x.is_zero() || y.is_zero()) return Homotopy{};
    BlockIndex fidx = component_index(alg, x, y);
    BlockIndex hidx = homotopy_index(alg, x, y);
    ExactMatrix b = homotopy_boundary(alg, x, y, fidx, hidx);
    std::vector<Scalar> rhs(static_cast<size_t>(fidx.total()), F.zero());
    for (int i = fidx.lo; i <= fidx.hi; ++i) {
        AMat c = f.comp(alg, i);
        for (int p = 0; p < c.rows; ++p)
            for (int q = 0; q < c.cols; ++q)
                for (int k = 0; k < alg.n(); ++k)
                    rhs[static_cast<size_t>(fidx.entry(i, p, q, k))] = c.at(p, q).c[static_cast<size_t>(k)];
    }
    LinSolve ls = solve(b, rhs);
    if (!ls.ok) return std::nullopt;
    Homotopy h;
    h.lo = hidx.lo;
    for (int i = hidx.lo; i <= hidx.hi; ++i) {
        AMat hm(alg, y.rank(i + 1), x.rank(i));
        for (int p = 0; p < hm.rows; ++p)
            for (int q = 0; q < hm.cols; ++q)
                for (int k = 0; k < alg.n(); ++k)
                    hm.at(p, q).c[static_cast<size_t>(k)] =
                        ls.particular[static_cast<size_t>(hidx.entry(i, p, q, k))];
        h.maps.push_back(hm);
    }
    return h;
}

HomSpace::HomSpace(const SerialAlgebra& alg, Complex x, Complex y)
    : alg_(alg), x_(std::move(x)), y_(std::move(y)),
      boundaries_{ExactMatrix(alg.field(), 0, 0), {}, 0},
      basis_{ExactMatrix(alg.field(), 0, 0), {}, 0} {
    BlockIndex fidx = component_index(alg_, x_, y_);
    clo_ = fidx.lo;
    chi_ = fidx.hi;
    total_ = fidx.total();
    offs_ = fidx.offs;
    if (x_.is_zero() || y_.is_zero() || total_ == 0) {
        boundaries_ = Rref{ExactMatrix(alg_.field(), 0, total_), {}, 0};
        basis_ = Rref{ExactMatrix(alg_.field(), 0, total_), {}, 0};
        return;
    }
    ExactMatrix constraints = chain_constraints(alg_, x_, y_, fidx);
    ExactMatrix chain_maps = kernel_basis(constraints);
    BlockIndex hidx = homotopy_index(alg_, x_, y_);
    ExactMatrix b = homotopy_boundary(alg_, x_, y_, fidx, hidx);
    boundaries_ = rref(b.transposed());
    basis_ = quotient_basis(chain_maps, boundaries_);
}

std::vector<Scalar> HomSpace::flatten(const ChainMap& f) const {
    std::vector<Scalar> v(static_cast<size_t>(total_), alg_.field().zero());
    for (int i = clo_; i <= chi_; ++i) {
        AMat c = f.comp(alg_, i);
        int off = offs_[static_cast<size_t>(i - clo_)];
        int n = alg_.n();
        for (int p = 0; p < c.rows; ++p)
            for (int q = 0; q < c.cols; ++q)
                for (int k = 0; k < n; ++k)
                    v[static_cast<size_t>(off + (p * c.cols + q) * n + k)] =
                        c.at(p, q).c[static_cast<size_t>(k)];
    }
    return v;
}

ChainMap HomSpace::unflatten(const std::vector<Scalar>& v) const {
    require(static_cast<int>(v.size()) == total_, "flattened chain map has wrong length");
    ChainMap f = zero_map(alg_, x_, y_);
    for (int i = clo_; i <= chi_; ++i) {
        AMat& c = f.comps[static_cast<size_t>(i - f.lo)];
        int off = offs_[static_cast<size_t>(i - clo_)];
        int n = alg_.n();
        for (int p = 0; p < c.rows; ++p)
            for (int q = 0; q < c.cols; ++q)
                for (int k = 0; k < n; ++k)
                    c.at(p, q).c[static_cast<size_t>(k)] =
                        v[static_cast<size_t>(off + (p * c.cols + q) * n + k)];
    }
    return f;
}

ChainMap HomSpace::basis_map(int j) const { return unflatten(basis_.mat.row(j)); }

std::vector<Scalar> HomSpace::coords(const ChainMap& f) const {
    require(f.source == x_ && f.target == y_, "coords: map between different complexes");
    auto c = coords_in_quotient(basis_, boundaries_, flatten(f));
    require(c.has_value(), "coords: not a chain map modulo homotopy");
    return *c;
}

bool HomSpace::is_null(const ChainMap& f) const {
    for (const Scalar& s : coords(f))
        if (s.num != 0) return false;
    return true;
}

ChainMap HomSpace::from_coords(const std::vector<Scalar>& v) const {
    require(static_cast<int>(v.size()) == dim(), "from_coords: wrong length");
    const Field& F = alg_.field();
    std::vector<Scalar> flat(static_cast<size_t>(total_), F.zero());
    for (int j = 0; j < dim(); ++j)
        for (int k = 0; k < total_; ++k)
            flat[static_cast<size_t>(k)] =
                F.add(flat[static_cast<size_t>(k)], F.mul(v[static_cast<size_t>(j)], basis_.mat.at(j, k)));
    return unflatten(flat);
}

std::vector<ChainMap> hom_basis_K(const SerialAlgebra& alg, const Complex& x, const Complex& y) {
    HomSpace hs(alg, x, y);
    std::vector<ChainMap> out;
    for (int j = 0; j < hs.dim(); ++j) out.push_back(hs.basis_map(j));
    return out;
}

ChainMap generator_morphism(const SerialAlgebra& alg, char cls, int m, int nn, int mp, int np) {
    require(alg.n() == 2, "generator morphisms are defined over the dual numbers");
    require(m <= nn && mp <= np, "generator morphism needs valid intervals");
    Complex x = interval_complex(alg, m, nn);
    Complex y = interval_complex(alg, mp, np);
    ChainMap f = zero_map(alg, x, y);
    auto set_x_at = [&](int deg) { f.comps[static_cast<size_t>(deg - f.lo)].at(0, 0) = alg.x(); };
    auto set_id_range = [&](int a, int b) {
        for (int i = a; i <= b; ++i) f.comps[static_cast<size_t>(i - f.lo)].at(0, 0) = alg.one();
    };
    switch (cls) {
        case 'a':
            require(mp == m && m <= np && np <= nn, "class (a) needs m = m' and m <= n' <= n");
            set_x_at(m);
            break;
        case 'b':
            require(np == nn && m <= mp && mp <= nn, "class (b) needs n = n' and m <= m' <= n");
            set_id_range(mp, nn);
            break;
        case 'c':
            require(mp == m && m <= nn && nn <= np, "class (c) needs m = m' and m <= n <= n'");
            set_id_range(m, nn);
            break;
        case 'd':
            require(np == nn && mp <= m && m <= nn, "class (d) needs n = n' and m' <= m <= n");
            set_x_at(m);
            break;
        default:
            require(false, "generator class must be one of a, b, c, d");
    }
    return f;
}

} // namespace gcenter
