#include "photonfilter/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace photonfilter {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& text) {
  double value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::runtime_error("not a number: '" + text + "'");
  }
  return value;
}

FilterSource parse_source(const std::string& tag) {
  for (auto s : {FilterSource::Numeric, FilterSource::ZeroDetuningAnalytic,
                 FilterSource::RosenZenerAnalytic}) {
    if (to_string(s) == tag) return s;
  }
  throw std::runtime_error("unknown filter source '" + tag + "'");
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

double Table::real(std::size_t row, const std::string& name) const {
  return parse_real(rows.at(row).at(column(name)));
}

const std::string& Table::text(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

std::string format_real(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buffer, ptr);
}

void write_table(std::ostream& out, const Table& table) {
  auto write_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("ragged table row");
    write_row(row);
  }
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("missing header row");
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("row has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_table(in);
}

void write_filter_function(std::ostream& out, const FilterFunction<double>& filter) {
  Table table{{"n", "p_plus", "p_minus", "source"}, {}};
  const std::string source(to_string(filter.source));
  for (int n = 0; n <= filter.n_max(); ++n) {
    table.rows.push_back({std::to_string(n), format_real(filter.p_plus(n)),
                          format_real(filter.p_minus(n)), source});
  }
  write_table(out, table);
}

FilterFunction<double> read_filter_function(std::istream& in) {
  const Table table = read_table(in);
  const std::size_t size = table.rows.size();
  if (size < 1) throw std::runtime_error("empty filter function");
  FilterFunction<double> f;
  f.p_plus.resize(static_cast<Eigen::Index>(size));
  f.p_minus.resize(static_cast<Eigen::Index>(size));
  for (std::size_t row = 0; row < size; ++row) {
    if (table.real(row, "n") != static_cast<double>(row)) {
      throw std::runtime_error("filter rows must be n = 0, 1, 2, ...");
    }
    const auto i = static_cast<Eigen::Index>(row);
    f.p_plus(i) = table.real(row, "p_plus");
    f.p_minus(i) = table.real(row, "p_minus");
  }
  f.source = parse_source(table.text(0, "source"));
  return f;
}

void write_distribution(std::ostream& out, const PhotonDistribution<double>& dist) {
  Table table{{"n", "P_n"}, {}};
  for (int n = 0; n <= dist.n_max(); ++n) {
    table.rows.push_back({std::to_string(n), format_real(dist[n])});
  }
  write_table(out, table);
}

PhotonDistribution<double> read_distribution(std::istream& in) {
  const Table table = read_table(in);
  Vector<double> w(static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    if (table.real(row, "n") != static_cast<double>(row)) {
      throw std::runtime_error("distribution rows must be n = 0, 1, 2, ...");
    }
    w(static_cast<Eigen::Index>(row)) = table.real(row, "P_n");
  }
  return PhotonDistribution<double>::from_weights(w);
}

nlohmann::json pulse_to_json(const Pulse<double>& pulse) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(pulse.kind()));
  j["amplitude"] = pulse.amplitude();
  for (const auto& [name, value] : pulse.parameters()) {
    if (name == "l") {
      j[name] = static_cast<int>(value);
    } else {
      j[name] = value;
    }
  }
  j["support"] = {pulse.t_start(), pulse.t_end()};
  return j;
}

Pulse<double> pulse_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("pulse must be a JSON object");
  const std::string tag = j.at("kind").get<std::string>();
  const auto kind = pulse_kind_from_string(tag);
  if (!kind) throw std::invalid_argument("unknown pulse kind '" + tag + "'");
  const double amplitude = j.at("amplitude").get<double>();
  std::map<std::string, double> params;
  std::optional<std::pair<double, double>> support;
  for (const auto& [key, value] : j.items()) {
    if (key == "kind" || key == "amplitude") continue;
    if (key == "support") {
      if (!value.is_array() || value.size() != 2) {
        throw std::invalid_argument("support must be [t_start, t_end]");
      }
      support = std::make_pair(value[0].get<double>(), value[1].get<double>());
      continue;
    }
    params[key] = value.get<double>();
  }
  Pulse<double> pulse = make_pulse(*kind, amplitude, params, support);
  const auto known = pulse.parameters();
  for (const auto& [key, value] : params) {
    if (!known.contains(key)) {
      throw std::invalid_argument("parameter '" + key + "' does not apply to " + tag);
    }
  }
  return pulse;
}

}  // namespace photonfilter
