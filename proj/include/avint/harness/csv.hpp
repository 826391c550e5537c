/**
 * @file csv.hpp
 * @brief Deterministic CSV output: 17 significant digits, '.' decimal, '\n' line ends.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace avint {

[[nodiscard]] std::string format_number(double value);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
/// Creates parent directories as needed; throws std::runtime_error on I/O failure.
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

}  // namespace avint
