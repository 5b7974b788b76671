#include "gcenter/matrix.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace gcenter {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

// --- F_p: plain Gauss-Jordan ---
Rref rref_fp(ExactMatrix w) {
    const Field& F = w.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < w.rows(); ++i)
            if (!F.is_zero(w.at(i, c))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < w.cols(); ++j) std::swap(w.at(pr, j), w.at(r, j));
        Scalar piv_inv = F.inv(w.at(r, c));
        for (int j = c; j < w.cols(); ++j) w.at(r, j) = F.mul(w.at(r, j), piv_inv);
        for (int i = 0; i < w.rows(); ++i) {
            if (i == r || F.is_zero(w.at(i, c))) continue;
            Scalar factor = w.at(i, c);
            for (int j = c; j < w.cols(); ++j)
                w.at(i, j) = F.sub(w.at(i, j), F.mul(factor, w.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    ExactMatrix out(F, r, w.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < w.cols(); ++j) out.at(i, j) = w.at(i, j);
    return {out, pivots, r};
}

// --- Q: fraction-free Bareiss forward sweep over GMP integers, exact ---
// --- rational back-substitution.  Intermediate minors can be huge; only ---
// --- the final reduced entries must fit the 64-bit Scalar. ---
Scalar narrow_q(const mpq_class& v) {
    mpq_class r = v;
    r.canonicalize();
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw std::overflow_error("reduced echelon entry exceeds 64-bit rational range");
    return {r.get_num().get_si(), r.get_den().get_si()};
}

Rref rref_q(const ExactMatrix& in) {
    const Field& F = in.field();
    const int rows = in.rows(), cols = in.cols();
    std::vector<std::vector<mpz_class>> w(static_cast<size_t>(rows),
                                          std::vector<mpz_class>(static_cast<size_t>(cols)));
    // Clear denominators row by row; scaling rows preserves the row space.
    for (int i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < cols; ++j) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(),
                                                  static_cast<unsigned long>(in.at(i, j).den));
        for (int j = 0; j < cols; ++j)
            w[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                mpz_class(static_cast<long>(in.at(i, j).num)) * (l / static_cast<long>(in.at(i, j).den));
    }
    std::vector<int> pivots;
    int r = 0;
    mpz_class prev = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (w[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r) std::swap(w[static_cast<size_t>(pr)], w[static_cast<size_t>(r)]);
        const mpz_class piv = w[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int i = r + 1; i < rows; ++i) {
            auto& wi = w[static_cast<size_t>(i)];
            const auto& wr = w[static_cast<size_t>(r)];
            const mpz_class head = wi[static_cast<size_t>(c)];
            for (int j = c; j < cols; ++j) {
                mpz_class t = piv * wi[static_cast<size_t>(j)] - head * wr[static_cast<size_t>(j)];
                mpz_divexact(wi[static_cast<size_t>(j)].get_mpz_t(), t.get_mpz_t(),
                             prev.get_mpz_t()); // exact by Bareiss
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    // Back-substitute with exact rationals on the surviving rows.
    std::vector<std::vector<mpq_class>> q(static_cast<size_t>(r),
                                          std::vector<mpq_class>(static_cast<size_t>(cols)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j)
            q[static_cast<size_t>(i)][static_cast<size_t>(j)] = w[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int k = r - 1; k >= 0; --k) {
        auto& qk = q[static_cast<size_t>(k)];
        int c = pivots[static_cast<size_t>(k)];
        const mpq_class piv = qk[static_cast<size_t>(c)];
        for (int j = c; j < cols; ++j) qk[static_cast<size_t>(j)] /= piv;
        for (int i = 0; i < k; ++i) {
            auto& qi = q[static_cast<size_t>(i)];
            const mpq_class factor = qi[static_cast<size_t>(c)];
            if (factor == 0) continue;
            for (int j = c; j < cols; ++j) qi[static_cast<size_t>(j)] -= factor * qk[static_cast<size_t>(j)];
        }
    }
    ExactMatrix out(F, r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = narrow_q(q[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    return {out, pivots, r};
}

} // namespace

ExactMatrix ExactMatrix::identity(Field f, int n) {
    ExactMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

ExactMatrix ExactMatrix::from_rows(Field f, const std::vector<std::vector<Scalar>>& rows) {
    int rc = static_cast<int>(rows.size());
    int cc = rc == 0 ? 0 : static_cast<int>(rows[0].size());
    ExactMatrix m(f, rc, cc);
    for (int i = 0; i < rc; ++i) {
        require(static_cast<int>(rows[static_cast<size_t>(i)].size()) == cc, "ragged rows");
        for (int j = 0; j < cc; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

ExactMatrix ExactMatrix::mul(const ExactMatrix& rhs) const {
    require(cols_ == rhs.rows_ && F == rhs.F, "matrix product shape mismatch");
    ExactMatrix out(F, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& s = at(i, k);
            if (F.is_zero(s)) continue;
            for (int j = 0; j < rhs.cols_; ++j)
                out.at(i, j) = F.add(out.at(i, j), F.mul(s, rhs.at(k, j)));
        }
    return out;
}

ExactMatrix ExactMatrix::add(const ExactMatrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_ && F == rhs.F, "matrix sum shape mismatch");
    ExactMatrix out(F, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.add(a_[i], rhs.a_[i]);
    return out;
}

ExactMatrix ExactMatrix::sub(const ExactMatrix& rhs) const { return add(rhs.neg()); }

ExactMatrix ExactMatrix::scale(const Scalar& s) const {
    ExactMatrix out(F, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.mul(a_[i], s);
    return out;
}

ExactMatrix ExactMatrix::neg() const {
    ExactMatrix out(F, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.neg(a_[i]);
    return out;
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix out(F, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

std::vector<Scalar> ExactMatrix::apply(const std::vector<Scalar>& v) const {
    require(static_cast<int>(v.size()) == cols_, "matrix-vector shape mismatch");
    std::vector<Scalar> out(static_cast<size_t>(rows_), F.zero());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out[static_cast<size_t>(i)] = F.add(out[static_cast<size_t>(i)], F.mul(at(i, j), v[static_cast<size_t>(j)]));
    return out;
}

std::vector<Scalar> ExactMatrix::row(int r) const {
    std::vector<Scalar> out(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) out[static_cast<size_t>(j)] = at(r, j);
    return out;
}

void ExactMatrix::set_row(int r, const std::vector<Scalar>& v) {
    require(static_cast<int>(v.size()) == cols_, "row width mismatch");
    for (int j = 0; j < cols_; ++j) at(r, j) = v[static_cast<size_t>(j)];
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& below) const {
    require(cols_ == below.cols_ && F == below.F, "vstack width mismatch");
    ExactMatrix out(F, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = below.at(i, j);
    return out;
}

bool ExactMatrix::is_zero() const {
    for (const Scalar& s : a_)
        if (s.num != 0) return false;
    return true;
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || F != rhs.F) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (!F.eq(a_[i], rhs.a_[i])) return false;
    return true;
}

Rref rref(const ExactMatrix& m) {
    return m.field().is_fp() ? rref_fp(m) : rref_q(m);
}

ExactMatrix kernel_basis(const ExactMatrix& a) {
    const Field& F = a.field();
    Rref r = rref(a);
    std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
    for (int c : r.pivots) is_pivot[static_cast<size_t>(c)] = true;
    ExactMatrix out(F, a.cols() - r.rank, a.cols());
    int k = 0;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        out.at(k, j) = F.one();
        for (int i = 0; i < r.rank; ++i)
            out.at(k, r.pivots[static_cast<size_t>(i)]) = F.neg(r.mat.at(i, j));
        ++k;
    }
    return rref(out).mat; // echelonize for a canonical basis
}

LinSolve solve(const ExactMatrix& a, const std::vector<Scalar>& b) {
    require(static_cast<int>(b.size()) == a.rows(), "rhs length mismatch");
    const Field& F = a.field();
    ExactMatrix aug(F, a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[static_cast<size_t>(i)];
    }
    Rref r = rref(aug);
    LinSolve out{false, {}, kernel_basis(a)};
    for (int c : r.pivots)
        if (c == a.cols()) return out; // inconsistent
    out.ok = true;
    out.particular.assign(static_cast<size_t>(a.cols()), F.zero());
    for (int i = 0; i < r.rank; ++i)
        out.particular[static_cast<size_t>(r.pivots[static_cast<size_t>(i)])] = r.mat.at(i, a.cols());
    return out;
}

std::vector<Scalar> reduce_mod(const Rref& basis, std::vector<Scalar> v) {
    const Field& F = basis.mat.field();
    require(static_cast<int>(v.size()) == basis.mat.cols() || basis.rank == 0, "reduce_mod width mismatch");
    for (int k = 0; k < basis.rank; ++k) {
        int c = basis.pivots[static_cast<size_t>(k)];
        Scalar coeff = v[static_cast<size_t>(c)];
        if (F.is_zero(coeff)) continue;
        for (int j = 0; j < basis.mat.cols(); ++j)
            v[static_cast<size_t>(j)] = F.sub(v[static_cast<size_t>(j)], F.mul(coeff, basis.mat.at(k, j)));
    }
    return v;
}

Rref quotient_basis(const ExactMatrix& c, const Rref& b) {
    ExactMatrix reduced(c.field(), c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i) reduced.set_row(i, reduce_mod(b, c.row(i)));
    return rref(reduced);
}

std::optional<std::vector<Scalar>> coords_in_quotient(const Rref& quo, const Rref& b,
                                                      std::vector<Scalar> v) {
    const Field& F = quo.mat.field();
    v = reduce_mod(b, std::move(v));
    std::vector<Scalar> coords(static_cast<size_t>(quo.rank), F.zero());
    for (int k = 0; k < quo.rank; ++k) {
        int c = quo.pivots[static_cast<size_t>(k)];
        Scalar coeff = v[static_cast<size_t>(c)];
        coords[static_cast<size_t>(k)] = coeff;
        if (F.is_zero(coeff)) continue;
        for (int j = 0; j < quo.mat.cols(); ++j)
            v[static_cast<size_t>(j)] = F.sub(v[static_cast<size_t>(j)], F.mul(coeff, quo.mat.at(k, j)));
    }
    for (const Scalar& s : v)
        if (s.num != 0) return std::nullopt;
    return coords;
}

} // namespace gcenter
