#include "adtcap/matrix.hpp"

#include <stdexcept>
#include <string>

namespace adtcap {

FMatrix FMatrix::identity(size_t n, FieldSpec field) {
    FMatrix m(n, n, field);
    for (size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

FMatrix FMatrix::from_rows(const std::vector<std::vector<uint32_t>>& rows, FieldSpec field) {
    size_t nc = rows.empty() ? 0 : rows.front().size();
    FMatrix m(rows.size(), nc, field);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc)
            throw std::invalid_argument("ragged row list");
        for (size_t c = 0; c < nc; ++c)
            m.set(r, c, rows[r][c]);
    }
    return m;
}

FMatrix FMatrix::transposed() const {
    FMatrix t(cols_, rows_, field_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            t.set(c, r, at(r, c));
    return t;
}

FMatrix FMatrix::select(std::span<const size_t> row_idx, std::span<const size_t> col_idx) const {
    FMatrix s(row_idx.size(), col_idx.size(), field_);
    for (size_t r = 0; r < row_idx.size(); ++r)
        for (size_t c = 0; c < col_idx.size(); ++c)
            s.set(r, c, at(row_idx[r], col_idx[c]));
    return s;
}

size_t rank(const FMatrix& m) {
    const FieldSpec& f = m.field();
    size_t nr = m.rows(), nc = m.cols();
    if (nr == 0 || nc == 0)
        return 0;

    std::vector<std::vector<uint32_t>> a(nr, std::vector<uint32_t>(nc));
    for (size_t r = 0; r < nr; ++r)
        for (size_t c = 0; c < nc; ++c)
            a[r][c] = m.at(r, c);

    size_t rk = 0;
    for (size_t col = 0; col < nc && rk < nr; ++col) {
        size_t piv = rk;
        while (piv < nr && a[piv][col] == 0)
            ++piv;
        if (piv == nr)
            continue;
        std::swap(a[rk], a[piv]);
        uint32_t pinv = f.inv(a[rk][col]);
        for (size_t r = rk + 1; r < nr; ++r) {
            if (a[r][col] == 0)
                continue;
            uint32_t factor = f.mul(a[r][col], pinv);
            for (size_t c = col; c < nc; ++c)
                a[r][c] = f.sub(a[r][c], f.mul(factor, a[rk][c]));
        }
        ++rk;
    }
    return rk;
}

std::optional<DependencySolution> solve_dependency(const FMatrix& basis,
                                                   std::span<const uint32_t> target_row) {
    const FieldSpec& f = basis.field();
    size_t k = basis.rows(), n = basis.cols();
    if (target_row.size() != n)
        throw std::invalid_argument("solve_dependency: target length " +
                                    std::to_string(target_row.size()) + " != basis cols " +
                                    std::to_string(n));

    // Solve basis^T * c = target^T; rows of the augmented system are the n
    // coordinates, columns the k unknown coefficients.
    std::vector<std::vector<uint32_t>> aug(n, std::vector<uint32_t>(k + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j)
            aug[i][j] = basis.at(j, i);
        aug[i][k] = target_row[i] % f.p;
    }

    std::vector<size_t> pivot_row_of(k, SIZE_MAX);
    size_t rk = 0;
    for (size_t col = 0; col < k && rk < n; ++col) {
        size_t piv = rk;
        while (piv < n && aug[piv][col] == 0)
            ++piv;
        if (piv == n)
            continue;
        std::swap(aug[rk], aug[piv]);
        uint32_t pinv = f.inv(aug[rk][col]);
        for (size_t c = col; c <= k; ++c)
            aug[rk][c] = f.mul(aug[rk][c], pinv);
        for (size_t r = 0; r < n; ++r) {
            if (r == rk || aug[r][col] == 0)
                continue;
            uint32_t factor = aug[r][col];
            for (size_t c = col; c <= k; ++c)
                aug[r][c] = f.sub(aug[r][c], f.mul(factor, aug[rk][c]));
        }
        pivot_row_of[col] = rk;
        ++rk;
    }

    // Any leftover nonzero in the target column marks an inconsistent system,
    // i.e. the target row is independent of the basis.
    for (size_t r = rk; r < n; ++r)
        if (aug[r][k] != 0)
            return std::nullopt;

    DependencySolution sol;
    for (size_t j = 0; j < k; ++j) {
        // With a full-row-rank basis every unknown has a pivot; treat a
        // missing one as coefficient zero (caller violated the contract in
        // some benign way, e.g. duplicate basis rows in debug experiments).
        uint32_t cj = pivot_row_of[j] == SIZE_MAX ? 0 : aug[pivot_row_of[j]][k];
        if (cj != 0) {
            sol.lambda.push_back(j);
            sol.coeffs.push_back(cj);
        }
    }
    return sol;
}

bool check_forward(const DependencySolution& sol, std::span<const uint32_t> basis_col_at_y,
                   uint32_t t_xy, FieldSpec field) {
    if (basis_col_at_y.size() != sol.lambda.size())
        throw std::invalid_argument("check_forward: column slice does not match lambda size");
    uint32_t acc = 0;
    for (size_t j = 0; j < sol.coeffs.size(); ++j)
        acc = field.add(acc, field.mul(sol.coeffs[j], basis_col_at_y[j] % field.p));
    return (t_xy % field.p) != acc;
}

std::vector<size_t> removable_rows(const FMatrix& m, size_t y_col) {
    const FieldSpec& f = m.field();
    size_t n = m.rows();
    if (n != m.cols())
        throw std::invalid_argument("removable_rows: matrix must be square");
    if (y_col >= n)
        throw std::invalid_argument("removable_rows: column out of range");
    if (n == 1)
        return {0};  // deleting the single row/column leaves the empty matrix, rank 0 = k

    // Left null vector of m with column y_col deleted: the n x (n-1) matrix
    // has rank n-1 when m is full rank, so the null space has dimension one
    // and a row is removable exactly where the null vector is nonzero.
    size_t nr = n - 1;  // rows of the transposed system
    std::vector<std::vector<uint32_t>> a(nr, std::vector<uint32_t>(n));
    {
        size_t rr = 0;
        for (size_t c = 0; c < n; ++c) {
            if (c == y_col)
                continue;
            for (size_t r = 0; r < n; ++r)
                a[rr][r] = m.at(r, c);
            ++rr;
        }
    }

    std::vector<size_t> pivot_col(nr, SIZE_MAX);
    size_t rk = 0;
    for (size_t col = 0; col < n && rk < nr; ++col) {
        size_t piv = rk;
        while (piv < nr && a[piv][col] == 0)
            ++piv;
        if (piv == nr)
            continue;
        std::swap(a[rk], a[piv]);
        uint32_t pinv = f.inv(a[rk][col]);
        for (size_t c = col; c < n; ++c)
            a[rk][c] = f.mul(a[rk][c], pinv);
        for (size_t r = 0; r < nr; ++r) {
            if (r == rk || a[r][col] == 0)
                continue;
            uint32_t factor = a[r][col];
            for (size_t c = col; c < n; ++c)
                a[r][c] = f.sub(a[r][c], f.mul(factor, a[rk][c]));
        }
        pivot_col[rk] = col;
        ++rk;
    }

    std::vector<size_t> out;
    if (rk < nr)
        return out;  // precondition violated: null space dimension > 1

    std::vector<bool> is_pivot(n, false);
    for (size_t r = 0; r < nr; ++r)
        is_pivot[pivot_col[r]] = true;
    size_t free_col = SIZE_MAX;
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col == SIZE_MAX)
        return out;

    std::vector<uint32_t> v(n, 0);
    v[free_col] = 1;
    for (size_t r = 0; r < nr; ++r)
        v[pivot_col[r]] = f.neg(a[r][free_col]);

    for (size_t i = 0; i < n; ++i)
        if (v[i] != 0)
            out.push_back(i);
    return out;
}

size_t find_removable_input(const FMatrix& m, size_t y_col) {
    auto rows = removable_rows(m, y_col);
    if (rows.empty())
        throw std::invalid_argument(
            "find_removable_input: no removable row; input was not full rank");
    return rows.front();
}

}  // namespace adtcap
