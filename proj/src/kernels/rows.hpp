#pragma once

#include <algorithm>
#include <cstddef>

namespace octosimd::kernels {

// Visits the x-rows of an n^3 block (x fastest) intersected with the flat
// range [begin, end), calling body(j, k, ib, ie) for each partial row.
template <class Body>
void for_each_row(int n, std::size_t begin, std::size_t end, Body&& body) {
  const std::size_t row_len = static_cast<std::size_t>(n);
  std::size_t flat = begin;
  while (flat < end) {
    const std::size_t row = flat / row_len;
    const std::size_t row_end = std::min(end, (row + 1) * row_len);
    body(static_cast<int>(row % row_len), static_cast<int>(row / row_len), static_cast<int>(flat - row * row_len),
         static_cast<int>(row_end - row * row_len));
    flat = row_end;
  }
}

}  // namespace octosimd::kernels
