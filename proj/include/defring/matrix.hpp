#pragma once

#include "defring/galois_ring.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace defring {

// Dense row-major matrix.  The ring is passed to every operation rather
// than stored; any type with the GaloisRing arithmetic interface works.
template <class E>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<E> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    E& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const E& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const Matrix&) const = default;
};

using GrMatrix = Matrix<GrElem>;

template <class Ring, class E = typename Ring::Elem>
Matrix<E> identity_matrix(const Ring& R, int n)
{
    Matrix<E> I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = R.one();
    return I;
}

template <class Ring, class E>
Matrix<E> mat_mul(const Ring& R, const Matrix<E>& x, const Matrix<E>& y)
{
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    Matrix<E> z(x.rows, y.cols);
    for (auto& e : z.a) e = R.zero();
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const E& e = x.at(i, k);
            if (R.is_zero(e)) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) = R.add(z.at(i, j), R.mul(e, y.at(k, j)));
        }
    return z;
}

template <class Ring, class E>
Matrix<E> mat_add(const Ring& R, const Matrix<E>& x, const Matrix<E>& y)
{
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("mat_add: dimension mismatch");
    Matrix<E> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = R.add(x.a[i], y.a[i]);
    return z;
}

template <class Ring, class E>
Matrix<E> mat_sub(const Ring& R, const Matrix<E>& x, const Matrix<E>& y)
{
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("mat_sub: dimension mismatch");
    Matrix<E> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = R.sub(x.a[i], y.a[i]);
    return z;
}

template <class Ring, class E>
Matrix<E> mat_scale(const Ring& R, const Matrix<E>& x, const E& s)
{
    Matrix<E> z = x;
    for (auto& e : z.a) e = R.mul(s, e);
    return z;
}

template <class Ring, class E>
Matrix<E> mat_neg(const Ring& R, const Matrix<E>& x)
{
    Matrix<E> z = x;
    for (auto& e : z.a) e = R.neg(e);
    return z;
}

template <class E>
Matrix<E> mat_transpose(const Matrix<E>& x)
{
    Matrix<E> z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

template <class Ring, class E>
bool mat_is_zero(const Ring& R, const Matrix<E>& x)
{
    for (const auto& e : x.a)
        if (!R.is_zero(e)) return false;
    return true;
}

template <class Ring, class E>
std::vector<E> mat_vec(const Ring& R, const Matrix<E>& x, std::span<const E> v)
{
    if (static_cast<int>(v.size()) != x.cols) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<E> out(x.rows, R.zero());
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out[i] = R.add(out[i], R.mul(x.at(i, j), v[j]));
    return out;
}

// Gauss-Jordan over a local ring: some entry of each column is a unit.
// Throws std::domain_error if x is not invertible.
template <class Ring, class E>
Matrix<E> mat_inverse(const Ring& R, const Matrix<E>& x)
{
    if (x.rows != x.cols) throw std::invalid_argument("mat_inverse: not square");
    const int n = x.rows;
    std::vector<std::vector<E>> A(n, std::vector<E>(2 * n, R.zero()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = x.at(i, j);
        A[i][n + i] = R.one();
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n && piv < 0; ++i)
            if (R.is_unit(A[i][c])) piv = i;
        if (piv < 0) throw std::domain_error("matrix is not invertible");
        std::swap(A[c], A[piv]);
        const E s = R.inv(A[c][c]);
        for (auto& e : A[c]) e = R.mul(e, s);
        for (int i = 0; i < n; ++i) {
            if (i == c || R.is_zero(A[i][c])) continue;
            const E f = A[i][c];
            for (int j = 0; j < 2 * n; ++j) A[i][j] = R.sub(A[i][j], R.mul(f, A[c][j]));
        }
    }
    Matrix<E> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = A[i][n + j];
    return inv;
}

template <class Ring, class E>
Matrix<E> mat_pow(const Ring& R, Matrix<E> x, std::uint64_t e)
{
    Matrix<E> r = identity_matrix<Ring, E>(R, x.rows);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mat_mul(R, r, x);
        if (e > 1) x = mat_mul(R, x, x);
    }
    return r;
}

// Entrywise reduction to a lower precision in the same tower.
GrMatrix mat_reduce(const GaloisRing& from, const GrMatrix& x, const GaloisRing& to);
// Entrywise valuation >= v.
bool mat_divisible_by_p_power(const GaloisRing& R, const GrMatrix& x, int v);

// det(X I - x), low degree first, monic of degree rows.  Division free.
std::vector<GrElem> charpoly(const GaloisRing& R, const GrMatrix& x);

std::string mat_to_string(const GaloisRing& R, const GrMatrix& x);

struct HowellResult {
    GrMatrix form;                // nonzero rows only
    GrMatrix transform;           // transform * input == form
    std::vector<int> pivot_cols;  // pivot column of each row of form
    std::vector<int> pivot_vals;  // pivot entry is p^{pivot_vals[i]}
};

// Howell normal form of the row span.  Works over any GR(p^m, d).
HowellResult howell_form(const GaloisRing& R, const GrMatrix& x, bool with_transform = true);

// Reduces v by the rows of a Howell form; returns the remainder (zero iff v is in the span).
std::vector<GrElem> howell_reduce(const GaloisRing& R, const HowellResult& h, std::vector<GrElem> v);

// log_p of the number of elements in the row span described by h.
int howell_log_size(const GaloisRing& R, const HowellResult& h);

// Valuations of the Smith invariant factors of the row span (one per nonzero factor).
std::vector<int> smith_valuations(const GaloisRing& R, GrMatrix x);

struct LinearSolution {
    std::vector<GrElem> particular;
    GrMatrix kernel;  // rows generate {y : A y = 0}; rows are a Howell form
};

// Solves A y = b.  std::nullopt when there is no solution.
std::optional<LinearSolution> solve_linear(const GaloisRing& R, const GrMatrix& A, std::span<const GrElem> b);

}  // namespace defring
