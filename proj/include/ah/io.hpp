#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ah {

// RFC 4180 CSV built in memory: CRLF line endings, fields quoted only when
// needed, doubles printed with %.17g so files round-trip bit-exactly.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);

    void add_field(const std::string& s);
    void add_field(double x);
    void add_field(long x);
    void end_row();

    const std::string& str() const { return out_; }

    static std::string format_double(double x);

private:
    std::string out_;
    bool row_open_ = false;
};

// Write via temp file + rename so partially written outputs never appear.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// FNV-1a 64-bit checksum as a fixed-width hex string.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace ah
