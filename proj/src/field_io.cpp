#include "lcdual/field_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace lcdual::io {

namespace {

double parse_double(std::string_view text, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedFile, "bad number '" + std::string(text) + "' on line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

void write_field(std::ostream& os, const Field2D& field) {
  const auto& g = field.grid();
  nlohmann::ordered_json header;
  header["schema"] = kFieldSchema;
  header["chart"] = to_string(g.chart);
  header["layout"] = to_string(g.layout);
  header["n_r"] = g.n_r;
  header["n_theta"] = g.n_theta;
  header["r_max"] = g.r_max;
  header["encoding"] = "csv";
  os << header.dump() << '\n';

  char buf[64];
  for (const cplx& z : field.values()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
    os << buf;
  }
}

Field2D read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::MalformedFile, "missing header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("header is not JSON: ") + e.what());
  }

  PolarGrid grid;
  try {
    if (header.at("schema").get<std::string>() != kFieldSchema) {
      throw Error(ErrorCode::MalformedFile, "unsupported schema " + header.at("schema").get<std::string>());
    }
    const auto chart = header.at("chart").get<std::string>();
    if (chart != "x-plane" && chart != "u-plane") throw Error(ErrorCode::MalformedFile, "unknown chart " + chart);
    grid.chart = chart == "x-plane" ? Chart::XPlane : Chart::UPlane;
    const auto layout = header.value("layout", std::string("cell-centered"));
    if (layout != "cell-centered" && layout != "nodal") throw Error(ErrorCode::MalformedFile, "unknown layout " + layout);
    grid.layout = layout == "nodal" ? RadialLayout::Nodal : RadialLayout::CellCentered;
    grid.n_r = header.at("n_r").get<int>();
    grid.n_theta = header.at("n_theta").get<int>();
    grid.r_max = header.at("r_max").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("bad header: ") + e.what());
  }
  grid.validate();

  std::vector<cplx> values;
  values.reserve(grid.size());
  std::size_t line_no = 1;
  while (values.size() < grid.size() && std::getline(is, line)) {
    ++line_no;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::MalformedFile, "line " + std::to_string(line_no) + " lacks a comma");
    const std::string_view view(line);
    values.emplace_back(parse_double(view.substr(0, comma), line_no), parse_double(view.substr(comma + 1), line_no));
  }
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::MalformedFile,
                "expected " + std::to_string(grid.size()) + " samples, found " + std::to_string(values.size()));
  }
  Field2D field(grid, std::move(values));
  if (!field.all_finite()) throw Error(ErrorCode::MalformedFile, "non-finite sample");
  return field;
}

void write_field_file(const std::string& path, const Field2D& field) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  write_field(os, field);
}

Field2D read_field_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  return read_field(is);
}

}  // namespace lcdual::io
