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

#include "qsurgery/gf2.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace qsurgery {

namespace {

size_t word_count(size_t len) { return (len + 63) / 64; }

void require_same_len(const GF2Vector &a, const GF2Vector &b, const char *what) {
    if (a.len() != b.len()) {
        std::ostringstream ss;
        ss << what << ": length mismatch " << a.len() << " vs " << b.len();
        throw std::invalid_argument(ss.str());
    }
}

}  // namespace

GF2Vector::GF2Vector(size_t len) : len_(len), words_(word_count(len), 0) {}

GF2Vector GF2Vector::from_support(size_t len, std::span<const size_t> support) {
    GF2Vector v(len);
    for (size_t i : support) {
        if (i >= len) {
            throw std::out_of_range("GF2Vector::from_support: position out of range");
        }
        v.set(i);
    }
    return v;
}

GF2Vector GF2Vector::from_support(size_t len, std::initializer_list<size_t> support) {
    return from_support(len, std::span<const size_t>(support.begin(), support.size()));
}

GF2Vector GF2Vector::from_bits(std::initializer_list<int> bits) {
    GF2Vector v(bits.size());
    size_t i = 0;
    for (int b : bits) {
        v.set(i++, b != 0);
    }
    return v;
}

void GF2Vector::set(size_t i, bool value) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

size_t GF2Vector::weight() const {
    size_t w = 0;
    for (uint64_t word : words_) {
        w += std::popcount(word);
    }
    return w;
}

bool GF2Vector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
}

bool GF2Vector::dot(const GF2Vector &other) const { return overlap(other) & 1; }

size_t GF2Vector::overlap(const GF2Vector &other) const {
    require_same_len(*this, other, "GF2Vector::overlap");
    size_t w = 0;
    for (size_t i = 0; i < words_.size(); i++) {
        w += std::popcount(words_[i] & other.words_[i]);
    }
    return w;
}

GF2Vector &GF2Vector::operator^=(const GF2Vector &other) {
    require_same_len(*this, other, "GF2Vector::xor");
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

GF2Vector &GF2Vector::operator&=(const GF2Vector &other) {
    require_same_len(*this, other, "GF2Vector::and");
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

GF2Vector &GF2Vector::operator|=(const GF2Vector &other) {
    require_same_len(*this, other, "GF2Vector::or");
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] |= other.words_[i];
    }
    return *this;
}

std::vector<size_t> GF2Vector::support() const {
    std::vector<size_t> out;
    for (size_t w = 0; w < words_.size(); w++) {
        uint64_t word = words_[w];
        while (word) {
            out.push_back(w * 64 + std::countr_zero(word));
            word &= word - 1;
        }
    }
    return out;
}

size_t GF2Vector::first_one() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return w * 64 + std::countr_zero(words_[w]);
        }
    }
    return len_;
}

GF2Vector GF2Vector::resized(size_t new_len) const {
    GF2Vector out(new_len);
    size_t keep = std::min(words_.size(), out.words_.size());
    std::copy_n(words_.begin(), keep, out.words_.begin());
    if (new_len < len_ && (new_len & 63)) {
        out.words_.back() &= (uint64_t{1} << (new_len & 63)) - 1;
    }
    return out;
}

GF2Vector GF2Vector::restrict_to(std::span<const size_t> positions) const {
    GF2Vector out(positions.size());
    for (size_t i = 0; i < positions.size(); i++) {
        if (get(positions[i])) {
            out.set(i);
        }
    }
    return out;
}

size_t GF2Vector::hash() const {
    size_t h = 0x9e3779b97f4a7c15ULL ^ len_;
    for (uint64_t w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::string GF2Vector::str() const {
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

GF2Matrix::GF2Matrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, GF2Vector(cols)) {}

GF2Matrix::GF2Matrix(std::initializer_list<std::initializer_list<int>> dense) {
    cols_ = dense.size() ? dense.begin()->size() : 0;
    for (const auto &r : dense) {
        if (r.size() != cols_) {
            throw std::invalid_argument("GF2Matrix: ragged initializer");
        }
        GF2Vector v(cols_);
        size_t c = 0;
        for (int b : r) {
            v.set(c++, b != 0);
        }
        rows_.push_back(std::move(v));
    }
}

GF2Matrix GF2Matrix::identity(size_t n) {
    GF2Matrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i);
    }
    return m;
}

GF2Matrix GF2Matrix::from_rows(size_t cols, std::vector<GF2Vector> rows) {
    GF2Matrix m(0, cols);
    for (auto &r : rows) {
        m.append_row(std::move(r));
    }
    return m;
}

GF2Matrix GF2Matrix::from_supports(size_t cols, const std::vector<std::vector<size_t>> &rows) {
    GF2Matrix m(0, cols);
    for (const auto &r : rows) {
        m.append_row(GF2Vector::from_support(cols, r));
    }
    return m;
}

void GF2Matrix::append_row(GF2Vector row) {
    if (row.len() != cols_) {
        throw std::invalid_argument("GF2Matrix::append_row: width mismatch");
    }
    rows_.push_back(std::move(row));
}

GF2Vector GF2Matrix::column(size_t c) const {
    GF2Vector out(rows());
    for (size_t r = 0; r < rows(); r++) {
        if (rows_[r].get(c)) {
            out.set(r);
        }
    }
    return out;
}

size_t GF2Matrix::nnz() const {
    size_t total = 0;
    for (const auto &r : rows_) {
        total += r.weight();
    }
    return total;
}

size_t GF2Matrix::max_row_weight() const {
    size_t best = 0;
    for (const auto &r : rows_) {
        best = std::max(best, r.weight());
    }
    return best;
}

size_t GF2Matrix::max_col_weight() const {
    std::vector<size_t> counts(cols_, 0);
    for (const auto &r : rows_) {
        for (size_t c : r.support()) {
            counts[c]++;
        }
    }
    return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix t(cols_, rows());
    for (size_t r = 0; r < rows(); r++) {
        for (size_t c : rows_[r].support()) {
            t.set(c, r);
        }
    }
    return t;
}

GF2Vector GF2Matrix::apply(const GF2Vector &x) const {
    if (x.len() != cols_) {
        throw std::invalid_argument("GF2Matrix::apply: dimension mismatch");
    }
    GF2Vector out(rows());
    for (size_t r = 0; r < rows(); r++) {
        if (rows_[r].dot(x)) {
            out.set(r);
        }
    }
    return out;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix &other) const {
    if (cols_ != other.rows()) {
        throw std::invalid_argument("GF2Matrix::operator*: dimension mismatch");
    }
    GF2Matrix out(rows(), other.cols());
    for (size_t r = 0; r < rows(); r++) {
        for (size_t k : rows_[r].support()) {
            out.rows_[r] ^= other.rows_[k];
        }
    }
    return out;
}

bool GF2Matrix::is_zero() const {
    return std::none_of(rows_.begin(), rows_.end(), [](const GF2Vector &r) { return r.any(); });
}

GF2Matrix GF2Matrix::select_columns(std::span<const size_t> positions) const {
    GF2Matrix out(0, positions.size());
    for (const auto &r : rows_) {
        out.append_row(r.restrict_to(positions));
    }
    return out;
}

GF2Matrix GF2Matrix::widened(size_t new_cols) const {
    GF2Matrix out(0, new_cols);
    for (const auto &r : rows_) {
        out.append_row(r.resized(new_cols));
    }
    return out;
}

std::string GF2Matrix::to_text() const {
    std::ostringstream ss;
    ss << rows() << " " << cols_ << "\n";
    for (size_t r = 0; r < rows(); r++) {
        if (rows_[r].none()) {
            continue;
        }
        ss << r << ":";
        for (size_t c : rows_[r].support()) {
            ss << " " << c;
        }
        ss << "\n";
    }
    return ss.str();
}

GF2Matrix GF2Matrix::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    auto fail = [&](const std::string &why) {
        std::ostringstream ss;
        ss << "matrix text line " << line_no << ": " << why;
        throw std::invalid_argument(ss.str());
    };

    GF2Matrix m;
    bool have_header = false;
    long last_row = -1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream ls(line);
        if (!have_header) {
            long r, c;
            if (!(ls >> r >> c) || r < 0 || c < 0) {
                fail("expected header `rows cols`");
            }
            std::string rest;
            if (ls >> rest) {
                fail("trailing characters after header");
            }
            m = GF2Matrix(static_cast<size_t>(r), static_cast<size_t>(c));
            have_header = true;
            continue;
        }
        long r;
        char colon;
        if (!(ls >> r >> colon) || colon != ':') {
            fail("expected `row: col col ...`");
        }
        if (r < 0 || static_cast<size_t>(r) >= m.rows()) {
            fail("row index out of range");
        }
        if (r <= last_row) {
            fail("rows must appear in increasing order");
        }
        last_row = r;
        long c;
        long last_col = -1;
        while (ls >> c) {
            if (c < 0 || static_cast<size_t>(c) >= m.cols()) {
                fail("column index out of range");
            }
            if (c <= last_col) {
                fail("columns must be strictly increasing");
            }
            last_col = c;
            m.set(static_cast<size_t>(r), static_cast<size_t>(c));
        }
        if (!ls.eof()) {
            fail("unexpected token");
        }
    }
    if (!have_header) {
        line_no = 0;
        fail("missing header");
    }
    return m;
}

GF2Matrix vstack(const GF2Matrix &top, const GF2Matrix &bottom) {
    if (top.cols() != bottom.cols()) {
        throw std::invalid_argument("vstack: width mismatch");
    }
    GF2Matrix out = top;
    for (const auto &r : bottom.row_data()) {
        out.append_row(r);
    }
    return out;
}

GF2Matrix block_diagonal(const GF2Matrix &a, const GF2Matrix &b) {
    GF2Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c : a.row(r).support()) {
            out.set(r, c);
        }
    }
    for (size_t r = 0; r < b.rows(); r++) {
        for (size_t c : b.row(r).support()) {
            out.set(a.rows() + r, a.cols() + c);
        }
    }
    return out;
}

GF2Matrix kron(const GF2Matrix &a, const GF2Matrix &b) {
    GF2Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac : a.row(ar).support()) {
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc : b.row(br).support()) {
                    out.set(ar * b.rows() + br, ac * b.cols() + bc);
                }
            }
        }
    }
    return out;
}

RrefResult rref(const GF2Matrix &m) {
    RrefResult res;
    res.matrix = m;
    auto &rows = res.matrix;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); c++) {
        size_t p = r;
        while (p < m.rows() && !rows.get(p, c)) {
            p++;
        }
        if (p == m.rows()) {
            continue;
        }
        std::swap(rows.row(p), rows.row(r));
        for (size_t i = 0; i < m.rows(); i++) {
            if (i != r && rows.get(i, c)) {
                rows.row(i) ^= rows.row(r);
            }
        }
        res.pivots.push_back(c);
        r++;
    }
    res.rank = r;
    return res;
}

size_t rank(const GF2Matrix &m) {
    RowSpace space(m.cols());
    for (const auto &row : m.row_data()) {
        space.insert(row);
    }
    return space.rank();
}

GF2Matrix kernel(const GF2Matrix &m) {
    RrefResult red = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : red.pivots) {
        is_pivot[p] = true;
    }
    GF2Matrix basis(0, m.cols());
    for (size_t f = 0; f < m.cols(); f++) {
        if (is_pivot[f]) {
            continue;
        }
        GF2Vector x(m.cols());
        x.set(f);
        for (size_t i = 0; i < red.rank; i++) {
            if (red.matrix.get(i, f)) {
                x.set(red.pivots[i]);
            }
        }
        if (m.apply(x).any()) {
            throw std::logic_error("kernel: produced vector outside the kernel");
        }
        basis.append_row(std::move(x));
    }
    return basis;
}

std::optional<GF2Vector> solve(const GF2Matrix &m, const GF2Vector &b) {
    if (b.len() != m.rows()) {
        throw std::invalid_argument("solve: right-hand side length does not match row count");
    }
    auto x = row_space_member(m.transpose(), b);
    if (x && m.apply(*x) != b) {
        throw std::logic_error("solve: residual is nonzero");
    }
    return x;
}

std::optional<GF2Vector> row_space_member(const GF2Matrix &m, const GF2Vector &v) {
    if (v.len() != m.cols()) {
        throw std::invalid_argument("row_space_member: vector length does not match column count");
    }
    RowSpace space(m.cols());
    for (const auto &row : m.row_data()) {
        space.insert(row);
    }
    return space.combination(v);
}

std::optional<GF2Matrix> inverse(const GF2Matrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("inverse: matrix is not square");
    }
    size_t n = m.rows();
    GF2Matrix out(n, n);
    for (size_t c = 0; c < n; c++) {
        auto x = solve(m, GF2Vector::from_support(n, {c}));
        if (!x) {
            return std::nullopt;
        }
        for (size_t r : x->support()) {
            out.set(r, c);
        }
    }
    return out;
}

bool RowSpace::insert(const GF2Vector &row) {
    if (row.len() != cols_) {
        throw std::invalid_argument("RowSpace::insert: width mismatch");
    }
    GF2Vector combo(inserted_ + 1);
    combo.set(inserted_);
    inserted_++;
    GF2Vector r = row;
    for (size_t i = 0; i < basis_.size(); i++) {
        if (r.get(pivots_[i])) {
            r ^= basis_[i];
            combo ^= combos_[i].resized(combo.len());
        }
    }
    size_t p = r.first_one();
    if (p == cols_) {
        return false;
    }
    // Keep earlier basis rows clear of the new pivot so reduction is one pass.
    for (size_t i = 0; i < basis_.size(); i++) {
        if (basis_[i].get(p)) {
            basis_[i] ^= r;
            combos_[i] = combos_[i].resized(combo.len()) ^ combo;
        }
    }
    basis_.push_back(std::move(r));
    combos_.push_back(std::move(combo));
    pivots_.push_back(p);
    return true;
}

GF2Vector RowSpace::reduce(GF2Vector v) const {
    for (size_t i = 0; i < basis_.size(); i++) {
        if (v.get(pivots_[i])) {
            v ^= basis_[i];
        }
    }
    return v;
}

bool RowSpace::contains(const GF2Vector &v) const { return reduce(v).none(); }

std::optional<GF2Vector> RowSpace::combination(const GF2Vector &v) const {
    if (v.len() != cols_) {
        throw std::invalid_argument("RowSpace::combination: width mismatch");
    }
    GF2Vector r = v;
    GF2Vector combo(inserted_);
    for (size_t i = 0; i < basis_.size(); i++) {
        if (r.get(pivots_[i])) {
            r ^= basis_[i];
            combo ^= combos_[i].resized(inserted_);
        }
    }
    if (r.any()) {
        return std::nullopt;
    }
    return combo;
}

}  // namespace qsurgery
