// Copyright 2026 The qsurgery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSURGERY_GF2_H
#define QSURGERY_GF2_H

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsurgery {

/// Bit-packed vector over GF(2).
class GF2Vector {
   public:
    GF2Vector() = default;
    explicit GF2Vector(size_t len);

    static GF2Vector from_support(size_t len, std::span<const size_t> support);
    static GF2Vector from_support(size_t len, std::initializer_list<size_t> support);
    static GF2Vector from_bits(std::initializer_list<int> bits);

    size_t len() const { return len_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool value = true);
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    size_t weight() const;
    bool any() const;
    bool none() const { return !any(); }
    /// Parity of the overlap with `other` (the GF(2) dot product).
    bool dot(const GF2Vector &other) const;
    size_t overlap(const GF2Vector &other) const;

    GF2Vector &operator^=(const GF2Vector &other);
    GF2Vector &operator&=(const GF2Vector &other);
    GF2Vector &operator|=(const GF2Vector &other);
    friend GF2Vector operator^(GF2Vector a, const GF2Vector &b) { return a ^= b; }
    friend GF2Vector operator&(GF2Vector a, const GF2Vector &b) { return a &= b; }
    friend GF2Vector operator|(GF2Vector a, const GF2Vector &b) { return a |= b; }
    bool operator==(const GF2Vector &other) const = default;

    /// Sorted positions holding 1.
    std::vector<size_t> support() const;
    /// Index of the lowest set bit, or len() when zero.
    size_t first_one() const;

    /// Copy with `extra` zero bits appended.
    GF2Vector resized(size_t new_len) const;
    /// Entries at `positions`, in order.
    GF2Vector restrict_to(std::span<const size_t> positions) const;

    std::span<const uint64_t> words() const { return words_; }
    size_t hash() const;
    std::string str() const;

   private:
    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

struct GF2VectorHash {
    size_t operator()(const GF2Vector &v) const { return v.hash(); }
};

/// Binary matrix stored as bit-packed rows.
class GF2Matrix {
   public:
    GF2Matrix() = default;
    GF2Matrix(size_t rows, size_t cols);
    GF2Matrix(std::initializer_list<std::initializer_list<int>> dense);

    static GF2Matrix identity(size_t n);
    static GF2Matrix from_rows(size_t cols, std::vector<GF2Vector> rows);
    static GF2Matrix from_supports(size_t cols, const std::vector<std::vector<size_t>> &rows);

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool value = true) { rows_[r].set(c, value); }

    const GF2Vector &row(size_t r) const { return rows_[r]; }
    GF2Vector &row(size_t r) { return rows_[r]; }
    const std::vector<GF2Vector> &row_data() const { return rows_; }
    void append_row(GF2Vector row);
    GF2Vector column(size_t c) const;

    /// Number of nonzero entries.
    size_t nnz() const;
    size_t max_row_weight() const;
    size_t max_col_weight() const;

    GF2Matrix transpose() const;
    /// this · x
    GF2Vector apply(const GF2Vector &x) const;
    GF2Matrix operator*(const GF2Matrix &other) const;
    bool is_zero() const;
    bool operator==(const GF2Matrix &other) const = default;

    /// Columns at `positions`, in order.
    GF2Matrix select_columns(std::span<const size_t> positions) const;
    /// Matrix with `extra` all-zero columns appended.
    GF2Matrix widened(size_t new_cols) const;

    /// Text form: `rows cols` then `row: col col ...` for each nonzero row.
    std::string to_text() const;
    static GF2Matrix from_text(std::string_view text);

   private:
    size_t cols_ = 0;
    std::vector<GF2Vector> rows_;
};

/// Direct sums and stacking.
GF2Matrix vstack(const GF2Matrix &top, const GF2Matrix &bottom);
GF2Matrix block_diagonal(const GF2Matrix &a, const GF2Matrix &b);
GF2Matrix kron(const GF2Matrix &a, const GF2Matrix &b);

struct RrefResult {
    GF2Matrix matrix;
    std::vector<size_t> pivots;
    size_t rank = 0;
};

/// Reduced row echelon form. Pivot rows are chosen by lowest row index.
RrefResult rref(const GF2Matrix &m);
size_t rank(const GF2Matrix &m);

/// Basis (as rows) of {x : m·x = 0}.
GF2Matrix kernel(const GF2Matrix &m);

/// Some x with m·x = b, or nullopt when b is outside the column space.
std::optional<GF2Vector> solve(const GF2Matrix &m, const GF2Vector &b);

/// Coefficients c with Σ c_i·row_i = v, or nullopt when v is outside the row space.
std::optional<GF2Vector> row_space_member(const GF2Matrix &m, const GF2Vector &v);

/// Inverse of a square matrix, nullopt when singular.
std::optional<GF2Matrix> inverse(const GF2Matrix &m);

/// Incremental row-space membership oracle. Rows are reduced as they arrive and
/// each reduced row remembers which inserted rows it is made of.
class RowSpace {
   public:
    explicit RowSpace(size_t cols) : cols_(cols) {}

    /// Returns true when the row was independent of those already inserted.
    bool insert(const GF2Vector &row);
    bool contains(const GF2Vector &v) const;
    /// Inserted-row combination reproducing v.
    std::optional<GF2Vector> combination(const GF2Vector &v) const;
    /// Reduce v against the current basis (zero iff v is in the span).
    GF2Vector reduce(GF2Vector v) const;

    size_t rank() const { return basis_.size(); }
    size_t inserted() const { return inserted_; }
    size_t cols() const { return cols_; }

   private:
    size_t cols_;
    size_t inserted_ = 0;
    std::vector<GF2Vector> basis_;
    std::vector<GF2Vector> combos_;
    std::vector<size_t> pivots_;
};

}  // namespace qsurgery

#endif
