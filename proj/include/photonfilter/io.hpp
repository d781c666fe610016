#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "photonfilter/dynamics.hpp"
#include "photonfilter/field.hpp"
#include "photonfilter/pulses.hpp"

namespace photonfilter {

/// Comma-delimited text with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double real(std::size_t row, const std::string& name) const;
  const std::string& text(std::size_t row, const std::string& name) const;
};

/// Shortest text that reads back to the same double.
std::string format_real(double value);

void write_table(std::ostream& out, const Table& table);
Table read_table(std::istream& in);
Table read_table(const std::filesystem::path& path);

/// Columns n, p_plus, p_minus, source.
void write_filter_function(std::ostream& out, const FilterFunction<double>& filter);
FilterFunction<double> read_filter_function(std::istream& in);

/// Columns n, P_n.
void write_distribution(std::ostream& out, const PhotonDistribution<double>& dist);
PhotonDistribution<double> read_distribution(std::istream& in);

/// {"kind": "...", "amplitude": g0, <named parameters>, "support": [t0, t1]}
nlohmann::json pulse_to_json(const Pulse<double>& pulse);
Pulse<double> pulse_from_json(const nlohmann::json& j);

}  // namespace photonfilter
