#pragma once

// Locale-independent CSV emission with round-trip float formatting.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wittenlab/ssf.hpp"

namespace wittenlab {

/// 17 significant digits in "%.17g" style, independent of the locale, so every
/// double survives a text round trip bit for bit.
[[nodiscard]] std::string format_double(double x);

/// Parses a double written by format_double (also accepts "inf", "-inf").
[[nodiscard]] double parse_double(std::string_view s);

/// Header line then one line per row, comma separated.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a numeric table written by write_csv. Throws PreconditionError on a
/// ragged row or an unparsable cell.
[[nodiscard]] CsvTable read_csv(std::istream& is);

/// `breakpoint,value_right_of_breakpoint`; the first data row is
/// `-inf,<left tail>`.
void write_step_csv(std::ostream& os, const StepFunction& f);
[[nodiscard]] StepFunction read_step_csv(std::istream& is);

/// `abscissa,ordinate`.
void write_sampled_csv(std::ostream& os, const SampledFunction& f);
[[nodiscard]] SampledFunction read_sampled_csv(std::istream& is);

}  // namespace wittenlab
