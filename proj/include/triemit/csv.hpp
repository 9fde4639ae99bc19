// csv.hpp — Deterministic number formatting for CSV and report output:
// 15 significant digits, '.' decimal separator, locale independent.

#pragma once

#include <string>

namespace triemit {

std::string format_double(double value);

} // namespace triemit
