#pragma once

#include <cstddef>
#include <string>

namespace codeweft::rparse {

// Lines and columns are 1-based; columns count bytes. Offsets index the
// original text, end_offset is one past the last byte.
struct SrcSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;
  std::size_t begin_offset = 0;
  std::size_t end_offset = 0;

  static SrcSpan cover(const SrcSpan &first, const SrcSpan &last) {
    return SrcSpan{first.start_line, first.start_col, last.end_line, last.end_col,
                   first.begin_offset, last.end_offset};
  }

  [[nodiscard]] std::string to_string() const {
    return std::to_string(start_line) + ":" + std::to_string(start_col) + "-" +
           std::to_string(end_line) + ":" + std::to_string(end_col);
  }
};

}  // namespace codeweft::rparse
