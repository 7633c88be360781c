#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ecrelay/sim.hpp"

namespace ecrelay {

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double x);

std::string csv_header();
std::string csv_row(const SweepRow& row);

/// Header plus one line per row, '\n' separated; byte-identical for
/// identical rows.
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace ecrelay
