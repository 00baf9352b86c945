#include "rieszdec/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rieszdec/errors.hpp"
#include "rieszdec/report.hpp"

namespace rieszdec::io {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> position_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) throw ParseError("cannot read file: " + path.string());
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open file for writing: " + path.string());
    out << text;
    if (!out.good()) throw Error("cannot write file: " + path.string());
}

Matrix parse_matrix_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = position_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("matrix file: invalid JSON at line " + std::to_string(line) +
                             ", column " + std::to_string(col),
                         line, col);
    }

    if (!j.is_object()) throw ParseError("matrix file: top-level value must be an object");
    for (const char* field : {"rows", "cols", "entries"}) {
        if (!j.contains(field)) {
            throw ParseError(std::string("matrix file: missing field \"") + field + "\"");
        }
    }
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        throw ParseError("matrix file: \"rows\" and \"cols\" must be integers");
    }
    const long long rows = j["rows"].get<long long>();
    const long long cols = j["cols"].get<long long>();
    if (rows < 1 || cols < 1) {
        throw ParseError("matrix file: \"rows\" and \"cols\" must be positive");
    }
    if (rows > 4096 || cols > 4096) {
        throw ParseError("matrix file: dimensions exceed the supported desk scale");
    }
    const auto& entries = j["entries"];
    if (!entries.is_array()) throw ParseError("matrix file: \"entries\" must be an array");
    const std::size_t expected = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (entries.size() != expected) {
        throw ParseError("matrix file: \"entries\" has " + std::to_string(entries.size()) +
                         " elements, expected rows*cols = " + std::to_string(expected));
    }

    Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t k = 0; k < expected; ++k) {
        const auto& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError("matrix file: entries[" + std::to_string(k) +
                             "] must be a [re, im] pair of numbers");
        }
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw ParseError("matrix file: entries[" + std::to_string(k) + "] is not finite");
        }
        m.entries()[k] = Complex(re, im);
    }
    return m;
}

Matrix parse_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string lineText;
    std::size_t lineNo = 0;

    if (!std::getline(in, lineText)) throw ParseError("matrix market: empty file", 1);
    ++lineNo;
    {
        std::istringstream header(lineText);
        std::string banner, object, format, field, symmetry;
        header >> banner >> object >> format >> field >> symmetry;
        if (lower(banner) != "%%matrixmarket" || lower(object) != "matrix" ||
            lower(format) != "array" || lower(field) != "complex" ||
            lower(symmetry) != "general") {
            throw ParseError("matrix market: unsupported header (expected "
                             "\"%%MatrixMarket matrix array complex general\")",
                             1);
        }
    }

    std::size_t rows = 0, cols = 0;
    bool haveDims = false;
    std::vector<double> numbers;
    std::size_t needed = 0;
    while (std::getline(in, lineText)) {
        ++lineNo;
        std::size_t start = lineText.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (lineText[start] == '%') continue;
        std::istringstream fields(lineText);
        if (!haveDims) {
            long long r = 0, c = 0;
            if (!(fields >> r >> c) || r < 1 || c < 1) {
                throw ParseError("matrix market: invalid size line at line " +
                                     std::to_string(lineNo),
                                 lineNo);
            }
            rows = static_cast<std::size_t>(r);
            cols = static_cast<std::size_t>(c);
            needed = 2 * rows * cols;
            haveDims = true;
            continue;
        }
        double value = 0.0;
        while (fields >> value) {
            if (numbers.size() == needed) {
                throw ParseError("matrix market: extra data at line " + std::to_string(lineNo),
                                 lineNo);
            }
            if (!std::isfinite(value)) {
                throw ParseError("matrix market: non-finite value at line " +
                                     std::to_string(lineNo),
                                 lineNo);
            }
            numbers.push_back(value);
        }
        if (!fields.eof()) {
            throw ParseError("matrix market: malformed number at line " + std::to_string(lineNo),
                             lineNo);
        }
    }
    if (!haveDims) throw ParseError("matrix market: missing size line", lineNo);
    if (numbers.size() != needed) {
        throw ParseError("matrix market: expected " + std::to_string(needed / 2) +
                             " entries, found " + std::to_string(numbers.size() / 2),
                         lineNo);
    }

    // column-major body
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        const std::size_t i = k % rows;
        const std::size_t j = k / rows;
        m(i, j) = Complex(numbers[2 * k], numbers[2 * k + 1]);
    }
    return m;
}

LoadedMatrix read_matrix_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    LoadedMatrix loaded;
    loaded.digest = fnv1a64_hex(text);

    const std::size_t start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '%') {
        loaded.format = MatrixFormat::matrix_market;
        loaded.matrix = parse_matrix_market(text);
    } else {
        loaded.format = MatrixFormat::json;
        loaded.matrix = parse_matrix_json(text);
    }
    return loaded;
}

std::string matrix_to_json_text(const Matrix& a) {
    return report::dump(report::to_json(a)) + "\n";
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& a) {
    write_file(path, matrix_to_json_text(a));
}

} // namespace rieszdec::io
