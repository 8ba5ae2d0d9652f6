#include "defring/matrix.hpp"

#include "defring/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace defring {

namespace {

using Row = std::vector<GrElem>;

void check_dims(bool ok, const char* what)
{
    if (!ok) throw std::invalid_argument(what);
}

// row_i -= s * row_j
void axpy(const GaloisRing& R, Row& dst, const Row& src, const GrElem& s, int from = 0)
{
    if (R.is_zero(s)) return;
    for (std::size_t k = from; k < dst.size(); ++k)
        if (!R.is_zero(src[k])) dst[k] = R.sub(dst[k], R.mul(s, src[k]));
}

void row_scale(const GaloisRing& R, Row& r, const GrElem& s)
{
    for (auto& e : r) e = R.mul(e, s);
}

bool row_zero(const GaloisRing& R, const Row& r)
{
    return std::all_of(r.begin(), r.end(), [&](const GrElem& e) { return R.is_zero(e); });
}

}  // namespace

GrMatrix mat_reduce(const GaloisRing& from, const GrMatrix& x, const GaloisRing& to)
{
    GrMatrix z = x;
    for (auto& e : z.a) e = from.reduce_to(e, to);
    return z;
}

bool mat_divisible_by_p_power(const GaloisRing& R, const GrMatrix& x, int v)
{
    return std::all_of(x.a.begin(), x.a.end(), [&](const GrElem& e) { return R.valuation(e) >= v; });
}

std::vector<GrElem> charpoly(const GaloisRing& R, const GrMatrix& x)
{
    check_dims(x.rows == x.cols, "charpoly: not square");
    const int n = x.rows;
    if (n == 0) return {R.one()};
    if (n == 1) return {R.neg(x.at(0, 0)), R.one()};
    // x = [[a, Rw], [C, N]]; det(XI - x) = (X - a) p_N(X) - Rw adj(XI - N) C.
    const int r = n - 1;
    GrMatrix N(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) N.at(i, j) = x.at(i + 1, j + 1);
    const std::vector<GrElem> pn = charpoly(R, N);
    std::vector<GrElem> s(r);
    GrMatrix B = identity_matrix(R, r);
    for (int k = r - 1; k >= 0; --k) {
        GrElem acc = R.zero();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                acc = R.add(acc, R.mul(x.at(0, i + 1), R.mul(B.at(i, j), x.at(j + 1, 0))));
        s[k] = acc;
        if (k > 0) {
            B = mat_mul(R, N, B);
            for (int i = 0; i < r; ++i) B.at(i, i) = R.add(B.at(i, i), pn[k]);
        }
    }
    std::vector<GrElem> out(n + 1);
    for (int i = 0; i <= r; ++i) {
        out[i + 1] = R.add(out[i + 1], pn[i]);
        out[i] = R.sub(out[i], R.mul(x.at(0, 0), pn[i]));
    }
    for (int k = 0; k < r; ++k) out[k] = R.sub(out[k], s[k]);
    return out;
}

std::string mat_to_string(const GaloisRing& R, const GrMatrix& x)
{
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < x.rows; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < x.cols; ++j) os << (j ? "," : "") << R.to_string(x.at(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

HowellResult howell_form(const GaloisRing& R, const GrMatrix& x, bool with_transform)
{
    const int cols = x.cols;
    const int m = R.m();
    std::vector<Row> H;
    std::vector<Row> U;
    for (int i = 0; i < x.rows; ++i) {
        H.emplace_back(x.a.begin() + static_cast<std::ptrdiff_t>(i) * cols,
                       x.a.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols);
        if (with_transform) {
            U.emplace_back(x.rows);
            U.back()[i] = R.one();
        }
    }
    std::vector<int> pcols, pvals;
    std::size_t r = 0;
    for (int c = 0; c < cols; ++c) {
        std::size_t best = H.size();
        int best_v = m;
        for (std::size_t i = r; i < H.size(); ++i) {
            const int v = R.valuation(H[i][c]);
            if (v < best_v) {
                best_v = v;
                best = i;
                if (v == 0) break;
            }
        }
        if (best == H.size()) continue;
        std::swap(H[r], H[best]);
        if (with_transform) std::swap(U[r], U[best]);
        const GrElem unit = R.inv(R.divide_by_p_power(H[r][c], best_v));
        row_scale(R, H[r], unit);
        if (with_transform) row_scale(R, U[r], unit);
        for (std::size_t i = r + 1; i < H.size(); ++i) {
            if (R.is_zero(H[i][c])) continue;
            const GrElem s = R.divide_by_p_power(H[i][c], best_v);
            axpy(R, H[i], H[r], s, c);
            if (with_transform) axpy(R, U[i], U[r], s);
        }
        if (best_v > 0) {
            const GrElem ann = R.p_power(m - best_v);
            Row extra = H[r];
            row_scale(R, extra, ann);
            if (!row_zero(R, extra)) {
                H.push_back(std::move(extra));
                if (with_transform) {
                    Row ue = U[r];
                    row_scale(R, ue, ann);
                    U.push_back(std::move(ue));
                }
            }
        }
        pcols.push_back(c);
        pvals.push_back(best_v);
        ++r;
    }
    // Reduce entries above each pivot to canonical remainders.
    for (std::size_t k = 0; k < r; ++k) {
        const int c = pcols[k];
        const int v = pvals[k];
        for (std::size_t i = 0; i < k; ++i) {
            const GrElem e = H[i][c];
            const GrElem rem = R.remainder_mod_p_power(e, v);
            if (rem == e) continue;
            const GrElem s = R.divide_by_p_power(R.sub(e, rem), v);
            axpy(R, H[i], H[k], s, c);
            if (with_transform) axpy(R, U[i], U[k], s);
        }
    }
    HowellResult out;
    out.form = GrMatrix(static_cast<int>(r), cols);
    out.transform = GrMatrix(with_transform ? static_cast<int>(r) : 0, x.rows);
    for (std::size_t i = 0; i < r; ++i) {
        std::copy(H[i].begin(), H[i].end(), out.form.a.begin() + static_cast<std::ptrdiff_t>(i) * cols);
        if (with_transform)
            std::copy(U[i].begin(), U[i].end(),
                      out.transform.a.begin() + static_cast<std::ptrdiff_t>(i) * x.rows);
    }
    out.pivot_cols = std::move(pcols);
    out.pivot_vals = std::move(pvals);
    return out;
}

std::vector<GrElem> howell_reduce(const GaloisRing& R, const HowellResult& h, std::vector<GrElem> v)
{
    check_dims(static_cast<int>(v.size()) == h.form.cols, "howell_reduce: dimension mismatch");
    for (std::size_t k = 0; k < h.pivot_cols.size(); ++k) {
        const int c = h.pivot_cols[k];
        const int pv = h.pivot_vals[k];
        if (R.is_zero(v[c])) continue;
        if (R.valuation(v[c]) < pv) {
            // Not reducible at this pivot: leave canonical remainder and continue.
            const GrElem rem = R.remainder_mod_p_power(v[c], pv);
            const GrElem s = R.divide_by_p_power(R.sub(v[c], rem), pv);
            for (int j = c; j < h.form.cols; ++j) v[j] = R.sub(v[j], R.mul(s, h.form.at(static_cast<int>(k), j)));
            continue;
        }
        const GrElem s = R.divide_by_p_power(v[c], pv);
        for (int j = c; j < h.form.cols; ++j) v[j] = R.sub(v[j], R.mul(s, h.form.at(static_cast<int>(k), j)));
    }
    return v;
}

int howell_log_size(const GaloisRing& R, const HowellResult& h)
{
    int total = 0;
    for (int v : h.pivot_vals) total += R.d() * (R.m() - v);
    return total;
}

std::vector<int> smith_valuations(const GaloisRing& R, GrMatrix x)
{
    std::vector<int> out;
    const int rows = x.rows, cols = x.cols;
    std::vector<int> rperm(rows), cperm(cols);
    for (int k = 0;; ++k) {
        int bi = -1, bj = -1, bv = R.m();
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                const int v = R.valuation(x.at(i, j));
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        for (int j = 0; j < cols; ++j) std::swap(x.at(k, j), x.at(bi, j));
        for (int i = 0; i < rows; ++i) std::swap(x.at(i, k), x.at(i, bj));
        const GrElem unit = R.inv(R.divide_by_p_power(x.at(k, k), bv));
        for (int j = k; j < cols; ++j) x.at(k, j) = R.mul(x.at(k, j), unit);
        for (int i = k + 1; i < rows; ++i) {
            const GrElem s = R.divide_by_p_power(x.at(i, k), bv);
            for (int j = k; j < cols; ++j) x.at(i, j) = R.sub(x.at(i, j), R.mul(s, x.at(k, j)));
        }
        for (int j = k + 1; j < cols; ++j) {
            const GrElem s = R.divide_by_p_power(x.at(k, j), bv);
            for (int i = k; i < rows; ++i) x.at(i, j) = R.sub(x.at(i, j), R.mul(s, x.at(i, k)));
        }
        out.push_back(bv);
        if (k + 1 >= rows || k + 1 >= cols) break;
    }
    return out;
}

std::optional<LinearSolution> solve_linear(const GaloisRing& R, const GrMatrix& A, std::span<const GrElem> b)
{
    check_dims(static_cast<int>(b.size()) == A.rows, "solve_linear: dimension mismatch");
    const int eqs = A.rows;
    const int k = A.cols;
    // Rows of [A^T | I] span {(y^T A^T, y^T)}.
    GrMatrix aug(k, eqs + k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < eqs; ++j) aug.at(i, j) = A.at(j, i);
        aug.at(i, eqs + i) = R.one();
    }
    const HowellResult h = howell_form(R, aug, false);
    std::vector<GrElem> v(eqs + k);
    std::copy(b.begin(), b.end(), v.begin());
    for (std::size_t r = 0; r < h.pivot_cols.size(); ++r) {
        const int c = h.pivot_cols[r];
        if (c >= eqs) break;
        if (R.is_zero(v[c])) continue;
        if (R.valuation(v[c]) < h.pivot_vals[r]) return std::nullopt;
        const GrElem s = R.divide_by_p_power(v[c], h.pivot_vals[r]);
        for (int j = c; j < eqs + k; ++j) v[j] = R.sub(v[j], R.mul(s, h.form.at(static_cast<int>(r), j)));
    }
    for (int j = 0; j < eqs; ++j)
        if (!R.is_zero(v[j])) return std::nullopt;
    LinearSolution sol;
    sol.particular.resize(k);
    for (int i = 0; i < k; ++i) sol.particular[i] = R.neg(v[eqs + i]);
    int first = 0;
    while (first < static_cast<int>(h.pivot_cols.size()) && h.pivot_cols[first] < eqs) ++first;
    sol.kernel = GrMatrix(static_cast<int>(h.pivot_cols.size()) - first, k);
    for (int r = first; r < static_cast<int>(h.pivot_cols.size()); ++r)
        for (int i = 0; i < k; ++i) sol.kernel.at(r - first, i) = h.form.at(r, eqs + i);
    return sol;
}

}  // namespace defring
