#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sqjc {

// Shortest round-trip decimal in scientific form, e.g. 1e+00, -5e-01, 1e-300.
std::string format_double(double value);
std::string format_int(std::int64_t value);

// Compact decimal form for filenames and labels (49, 0.5, 10).
std::string format_label(double value);

// Writes header + rows as CSV: LF line endings, UTF-8, no trailing
// whitespace, no quoting (cells are numeric strings). Rows must be
// rectangular (DomainError otherwise); I/O failures carry the path.
void emit_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows);

}  // namespace sqjc
