#include "ah/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ah {

CsvBuilder::CsvBuilder(std::vector<std::string> header) {
    for (const auto& h : header) add_field(h);
    end_row();
}

void CsvBuilder::add_field(const std::string& s) {
    if (row_open_) out_ += ',';
    row_open_ = true;
    const bool needs_quote = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quote) {
        out_ += s;
        return;
    }
    out_ += '"';
    for (char ch : s) {
        if (ch == '"') out_ += '"';
        out_ += ch;
    }
    out_ += '"';
}

void CsvBuilder::add_field(double x) { add_field(format_double(x)); }

void CsvBuilder::add_field(long x) { add_field(std::to_string(x)); }

void CsvBuilder::end_row() {
    out_ += "\r\n";
    row_open_ = false;
}

std::string CsvBuilder::format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write_file_atomic: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_file_atomic: rename failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ah
