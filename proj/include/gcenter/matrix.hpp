// Dense exact matrices with reduced row echelon form, kernel bases and
// linear solving.  Everything downstream (chain-map spaces, naturality
// systems, Ext cokernels) reduces to these three operations.
#pragma once

#include <optional>
#include <vector>

#include "gcenter/field.hpp"

namespace gcenter {

class ExactMatrix {
  public:
    ExactMatrix(Field f, int rows, int cols)
        : F(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, f.zero()) {}
    static ExactMatrix identity(Field f, int n);
    static ExactMatrix from_rows(Field f, const std::vector<std::vector<Scalar>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Scalar& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Field& field() const { return F; }

    ExactMatrix mul(const ExactMatrix& rhs) const;
    ExactMatrix add(const ExactMatrix& rhs) const;
    ExactMatrix sub(const ExactMatrix& rhs) const;
    ExactMatrix scale(const Scalar& s) const;
    ExactMatrix neg() const;
    ExactMatrix transposed() const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const; // A v
    std::vector<Scalar> row(int r) const;
    void set_row(int r, const std::vector<Scalar>& v);
    ExactMatrix vstack(const ExactMatrix& below) const;

    bool is_zero() const;
    bool operator==(const ExactMatrix& rhs) const;

  private:
    Field F;
    int rows_, cols_;
    std::vector<Scalar> a_;
};

struct Rref {
    ExactMatrix mat;          // reduced row echelon form, zero rows dropped
    std::vector<int> pivots;  // pivot column of each surviving row
    int rank = 0;
};

Rref rref(const ExactMatrix& m);

// Rows form the canonical (rref) basis of {x : A x = 0}.
ExactMatrix kernel_basis(const ExactMatrix& a);

struct LinSolve {
    bool ok = false;
    std::vector<Scalar> particular; // one solution of A x = b when ok
    ExactMatrix kernel;             // rows span the homogeneous solutions
};

LinSolve solve(const ExactMatrix& a, const std::vector<Scalar>& b);

// --- subspace helpers (rows-as-vectors convention) ---

// Eliminate the pivot coordinates of `basis` from v (v need not lie in the span).
std::vector<Scalar> reduce_mod(const Rref& basis, std::vector<Scalar> v);

// Canonical basis of rowspace(c) modulo rowspace(b): each c-row reduced mod b,
// then echelonized.  Deterministic representatives of the quotient space.
Rref quotient_basis(const ExactMatrix& c, const Rref& b);

// Coordinates of v in the rows of `quo` after reducing modulo `b`;
// nullopt if v does not lie in rowspace(quo) + rowspace(b).
std::optional<std::vector<Scalar>> coords_in_quotient(const Rref& quo, const Rref& b,
                                                      std::vector<Scalar> v);

} // namespace gcenter
