#include "hyptimes/format.hpp"

#include "hyptimes/errors.hpp"
#include "hyptimes/sequence.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyptimes {

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot rename into " + path.string());
    }
}

std::vector<RealSequence> read_sequences_csv(std::istream& in) {
    std::vector<RealSequence> out;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t,") == std::string::npos) continue;
        std::vector<double> values;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            const auto e = cell.find_last_not_of(" \t");
            const std::string token = cell.substr(b, e - b + 1);
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || !std::isfinite(v))
                throw InvalidParameter("row " + std::to_string(row) + ": not a finite real: '" +
                                       token + "'");
            values.push_back(v);
        }
        out.push_back(Eigen::Map<const RealSequence>(values.data(),
                                                     static_cast<Eigen::Index>(values.size())));
    }
    return out;
}

std::string format_sequence_row(const RealSequence& a) {
    std::string out;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += format_real(a(i));
    }
    return out;
}

} // namespace hyptimes
