#include "core/gfp_matrix.hpp"

#include <sstream>

namespace qtc {

std::vector<size_t> rref_buffer(uint32_t* data, size_t rows, size_t cols, const Reducer& red) {
  const uint32_t p = red.p();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = r;
    while (pr < rows && data[pr * cols + c] == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r) {
      for (size_t j = c; j < cols; ++j) std::swap(data[pr * cols + j], data[r * cols + j]);
    }
    uint32_t* prow = data + r * cols;
    uint32_t inv = inv_mod(prow[c], p);
    if (inv != 1) {
      for (size_t j = c; j < cols; ++j) prow[j] = red.reduce(uint64_t(prow[j]) * inv);
    }
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint32_t* irow = data + i * cols;
      uint32_t m = irow[c];
      if (m == 0) continue;
      uint32_t mm = p - m;  // add (p - m) * pivot row
      for (size_t j = c; j < cols; ++j) {
        irow[j] = red.reduce(irow[j] + uint64_t(mm) * prow[j]);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<size_t> rref_in_place(GfpMatrix& m) {
  Reducer red(m.p());
  return rref_buffer(m.data(), m.rows(), m.cols(), red);
}

size_t rank_gfp(const GfpMatrix& m) {
  GfpMatrix copy = m;
  return rref_in_place(copy).size();
}

std::vector<std::vector<uint32_t>> nullspace_gfp(const GfpMatrix& m) {
  GfpMatrix r = m;
  std::vector<size_t> pivots = rref_in_place(r);
  const uint32_t p = m.p();
  const size_t cols = m.cols();

  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<uint32_t>> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<uint32_t> v(cols, 0);
    v[free_c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = neg_mod(r.at(i, free_c), p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_rowspace(std::span<const uint32_t> v, const GfpMatrix& m_rref,
                 std::span<const size_t> pivots) {
  if (v.size() != m_rref.cols()) fail(errc::dimension_mismatch, "vector length != matrix width");
  const uint32_t p = m_rref.p();
  Reducer red(p);
  std::vector<uint32_t> w(v.begin(), v.end());
  for (size_t i = 0; i < pivots.size(); ++i) {
    uint32_t coef = w[pivots[i]];
    if (coef == 0) continue;
    uint32_t mm = p - coef;
    auto prow = m_rref.row(i);
    for (size_t j = pivots[i]; j < w.size(); ++j) {
      w[j] = red.reduce(w[j] + uint64_t(mm) * prow[j]);
    }
  }
  for (uint32_t e : w) {
    if (e != 0) return false;
  }
  return true;
}

std::string matrix_text(const GfpMatrix& m) {
  std::ostringstream out;
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m.at(r, c);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qtc
