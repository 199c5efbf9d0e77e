#include "genpow/csv.hpp"
#include "genpow/errors.hpp"

#include <cstdio>

namespace genpow {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw ConfigError("cannot open output file: " + path);
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ << ',';
        out_ << names[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& reals, const cvec& complexes) {
    bool first = true;
    for (double v : reals) {
        if (!first) out_ << ',';
        out_ << format_double(v);
        first = false;
    }
    for (const cplx& c : complexes) {
        if (!first) out_ << ',';
        out_ << format_double(c.real()) << ',' << format_double(c.imag());
        first = false;
    }
    out_ << '\n';
}

}  // namespace genpow
