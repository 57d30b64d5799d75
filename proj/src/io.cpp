#include "qcalab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qcalab/errors.hpp"

namespace qcalab {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        } else {
            out += f;
        }
    }
    out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            if (!field.empty() || !row.empty()) {
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
            }
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_to_csv(const ComplexMatrix& m) {
    std::string out;
    std::vector<std::string> header;
    header.reserve(2 * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        header.push_back("re" + std::to_string(j));
        header.push_back("im" + std::to_string(j));
    }
    out += csv_line(header);
    std::vector<std::string> fields;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        fields.clear();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            fields.push_back(format_double(m(i, j).real()));
            fields.push_back(format_double(m(i, j).imag()));
        }
        out += csv_line(fields);
    }
    return out;
}

std::string real_matrix_to_csv(const std::vector<double>& row_major, std::size_t n) {
    std::string out;
    std::vector<std::string> header;
    for (std::size_t j = 0; j < n; ++j) header.push_back("c" + std::to_string(j));
    out += csv_line(header);
    std::vector<std::string> fields;
    for (std::size_t i = 0; i < n; ++i) {
        fields.clear();
        for (std::size_t j = 0; j < n; ++j) fields.push_back(format_double(row_major[i * n + j]));
        out += csv_line(fields);
    }
    return out;
}

}  // namespace qcalab
