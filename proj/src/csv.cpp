#include "sqjc/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "sqjc/errors.hpp"

namespace sqjc {

namespace {

std::string to_chars_string(double value, std::chars_format fmt) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, value, fmt);
    return std::string(buf, r.ptr);
}

}  // namespace

std::string format_double(double value) {
    return to_chars_string(value, std::chars_format::scientific);
}

std::string format_int(std::int64_t value) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, r.ptr);
}

std::string format_label(double value) {
    return to_chars_string(value, std::chars_format::general);
}

void emit_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    if (header.empty()) throw DomainError("emit_csv: header must not be empty");
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw DomainError("emit_csv: row width " + std::to_string(row.size()) +
                              " does not match header width " + std::to_string(header.size()));
        }
    }
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("emit_csv: cannot create directory " +
                                     path.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
    auto write_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out.put(',');
            out.write(cells[i].data(), static_cast<std::streamsize>(cells[i].size()));
        }
        out.put('\n');
    };
    write_line(header);
    for (const auto& row : rows) write_line(row);
    out.flush();
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

}  // namespace sqjc
