#ifndef GENPOW_CSV_HPP
#define GENPOW_CSV_HPP

#include "genpow/grid.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace genpow {

/// Column-oriented CSV writer with full double precision (17 significant
/// digits) so downstream plotting introduces no rounding.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    /// Appends re/im pairs for each complex value after the leading reals.
    void row(const std::vector<double>& reals, const cvec& complexes);

  private:
    std::ofstream out_;
};

std::string format_double(double v);

}  // namespace genpow

#endif
