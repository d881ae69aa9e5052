#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "adtcap/field.hpp"

namespace adtcap {

/// Dense row-major matrix over F_p. Entries are always reduced to [0, p).
class FMatrix {
public:
    FMatrix() : rows_(0), cols_(0), field_(2) {}
    FMatrix(size_t rows, size_t cols, FieldSpec field)
        : rows_(rows), cols_(cols), field_(field), e_(rows * cols, 0) {}

    static FMatrix identity(size_t n, FieldSpec field);
    static FMatrix from_rows(const std::vector<std::vector<uint32_t>>& rows, FieldSpec field);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    uint32_t at(size_t r, size_t c) const { return e_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v) { e_[r * cols_ + c] = v % field_.p; }

    std::span<const uint32_t> row(size_t r) const {
        return {e_.data() + r * cols_, cols_};
    }

    FMatrix transposed() const;
    /// Submatrix over the given row/column index lists, in the given order.
    FMatrix select(std::span<const size_t> row_idx, std::span<const size_t> col_idx) const;

    bool operator==(const FMatrix&) const = default;

private:
    size_t rows_, cols_;
    FieldSpec field_;
    std::vector<uint32_t> e_;
};

/// Rank over F_p via Gaussian elimination; 0 for empty matrices.
size_t rank(const FMatrix& m);

/// The unique expression of a row in terms of a full-row-rank basis:
/// lambda lists the participating basis rows (ascending), coeffs the
/// matching nonzero coefficients.
struct DependencySolution {
    std::vector<size_t> lambda;
    std::vector<uint32_t> coeffs;

    bool operator==(const DependencySolution&) const = default;
};

/// Expresses target_row as a combination of basis rows, if possible.
/// Returns nullopt when target_row is independent of the basis.
/// The caller guarantees basis has full row rank; the combination is then
/// unique and every returned coefficient is nonzero.
std::optional<DependencySolution> solve_dependency(const FMatrix& basis,
                                                   std::span<const uint32_t> target_row);

/// O(|lambda|) test whether appending column y would raise the rank:
/// true iff t_xy differs from the lambda-combination of the basis rows'
/// entries in that column.
bool check_forward(const DependencySolution& sol, std::span<const uint32_t> basis_col_at_y,
                   uint32_t t_xy, FieldSpec field);

/// For a full-rank (k+1)x(k+1) matrix, rows whose removal together with
/// column y_col leaves a full-rank k x k minor. Nonzero entries of the left
/// null vector of the column-deleted matrix; never empty when the
/// precondition holds.
std::vector<size_t> removable_rows(const FMatrix& m, size_t y_col);

/// Smallest removable row (see removable_rows). Throws std::invalid_argument
/// if none exists, which means the full-rank precondition was violated.
size_t find_removable_input(const FMatrix& m, size_t y_col);

}  // namespace adtcap
