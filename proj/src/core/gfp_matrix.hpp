#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/fp.hpp"

namespace qtc {

/// Dense row-major matrix over Z_p.
class GfpMatrix {
 public:
  GfpMatrix(uint32_t p, size_t rows, size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  uint32_t p() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  std::span<uint32_t> row(size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const uint32_t> row(size_t r) const { return {a_.data() + r * cols_, cols_}; }

  /// Accumulates v (any integer) into entry (r, c) mod p.
  void add_at(size_t r, size_t c, int64_t v) {
    uint32_t& e = a_[r * cols_ + c];
    e = add_mod(e, residue_mod(v, p_), p_);
  }

  uint32_t* data() { return a_.data(); }
  const uint32_t* data() const { return a_.data(); }

 private:
  uint32_t p_;
  size_t rows_, cols_;
  std::vector<uint32_t> a_;
};

/// Reduced row echelon form over a flat row-major buffer. Returns the pivot
/// columns (one per pivot row); rank is their count. Rows below the rank are
/// zeroed.
std::vector<size_t> rref_buffer(uint32_t* data, size_t rows, size_t cols, const Reducer& red);

/// In-place RREF; returns pivot columns.
std::vector<size_t> rref_in_place(GfpMatrix& m);

size_t rank_gfp(const GfpMatrix& m);

/// Basis of the right kernel {v : M v = 0}, one vector per free column.
std::vector<std::vector<uint32_t>> nullspace_gfp(const GfpMatrix& m);

/// Membership of v in the row space of a matrix already in RREF.
/// Throws errc::dimension_mismatch when sizes differ.
bool in_rowspace(std::span<const uint32_t> v, const GfpMatrix& m_rref,
                 std::span<const size_t> pivots);

/// One row per line, space-separated residues.
std::string matrix_text(const GfpMatrix& m);

}  // namespace qtc
