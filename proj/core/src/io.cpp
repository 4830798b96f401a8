#include "lisdev/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lisdev/error.hpp"
#include "lisdev/tableaux.hpp"

namespace lisdev {

using nlohmann::json;

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

json parse_json(std::istream& in, const char* what) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

Density read_density_json(std::istream& in) {
  const json doc = parse_json(in, "density");
  if (!doc.contains("m") || !doc.contains("cells")) {
    throw ValidationError("density JSON needs fields \"m\" and \"cells\"");
  }
  try {
    return make_grid_density(doc.at("m").get<std::size_t>(), doc.at("cells").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("density JSON has wrong field types: ") + e.what());
  }
}

Density read_density_file(const std::string& path) {
  auto in = open_input(path);
  return read_density_json(in);
}

void write_density_json(std::ostream& out, const Density& density) {
  out << "{\"m\": " << density.resolution() << ", \"cells\": [";
  const auto cells = density.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? ", " : "") << format_double(cells[k]);
  out << "]}\n";
}

PointSample read_sample_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("sample CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y") throw ValidationError("sample CSV must start with header \"x,y\"");
  PointSample sample;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("sample CSV row " + std::to_string(row) + " lacks a comma");
    Point p;
    try {
      std::size_t used = 0;
      p.x = std::stod(line.substr(0, comma), &used);
      p.y = std::stod(line.substr(comma + 1), &used);
    } catch (const std::exception&) {
      throw ValidationError("sample CSV row " + std::to_string(row) + " is not numeric");
    }
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw ValidationError("sample CSV row " + std::to_string(row) + " lies outside the unit square");
    }
    sample.points.push_back(p);
  }
  return sample;
}

PointSample read_sample_file(const std::string& path) {
  auto in = open_input(path);
  return read_sample_csv(in);
}

void write_sample_csv(std::ostream& out, const PointSample& sample) {
  out << "x,y\n";
  for (const auto& p : sample.points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

std::string shape_to_json(const YoungShape& shape) { return json(shape.columns()).dump(); }

YoungShape shape_from_json(const std::string& text) {
  try {
    return YoungShape(json::parse(text).get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("shape must be a JSON array of column lengths: ") + e.what());
  }
}

ShapeCurve read_curve_json(std::istream& in) {
  const json doc = parse_json(in, "curve");
  try {
    return ShapeCurve(doc.at("x").get<std::vector<double>>(), doc.at("f").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("curve JSON needs numeric arrays \"x\" and \"f\": ") + e.what());
  }
}

ShapeCurve read_curve_file(const std::string& path) {
  auto in = open_input(path);
  return read_curve_json(in);
}

}  // namespace lisdev
