#include "cosparse/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cosparse {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

Matrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    long rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 1 || cols < 1)
        throw IoError("matrix text: bad header");
    Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            if (!(in >> m(i, j)))
                throw IoError("matrix text: truncated data");
    double extra;
    if (in >> extra) throw IoError("matrix text: trailing data");
    return m;
}

void write_matrix(const std::string& path, const Matrix& m) {
    write_file_atomic(path, format_matrix(m));
}

Matrix read_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

std::string format_signal_csv(const Vector& x) {
    std::ostringstream out;
    out << "index,value\n";
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out << i << ',' << format_double(x(i)) << '\n';
    return out.str();
}

Vector parse_signal_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "index,value")
        throw IoError("signal csv: bad header");
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("signal csv: bad row");
        long idx = std::stol(line.substr(0, comma));
        if (idx != static_cast<long>(vals.size()))
            throw IoError("signal csv: indices must be 0,1,2,...");
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    Vector x(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) x(i) = vals[i];
    return x;
}

std::string format_index_csv(const std::vector<int>& idx) {
    std::ostringstream out;
    out << "index\n";
    for (int i : idx) out << i << '\n';
    return out.str();
}

std::vector<int> parse_index_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "index")
        throw IoError("index csv: bad header");
    std::vector<int> idx;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        idx.push_back(std::stoi(line));
    }
    return idx;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cosparse
