#include "recordlab/io.hpp"

#include "recordlab/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace recordlab {

namespace {

static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

double number(const std::string& s, int line) {
  std::string low = s;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "inf" || low == "+inf") return kInf;
  if (low == "-inf") return -kInf;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), ErrorKind::Io,
          "line " + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

struct Line {
  int number;
  std::vector<std::string> cells;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::stringstream ss(text);
  std::string raw;
  int no = 0;
  while (std::getline(ss, raw)) {
    ++no;
    const std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    out.push_back({no, split(t)});
  }
  return out;
}

Matrix to_matrix(const std::vector<Line>& lines) {
  require(!lines.empty(), ErrorKind::Io, "no numeric rows");
  const std::size_t cols = lines[0].cells.size();
  Matrix m(lines.size(), cols);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    require(lines[r].cells.size() == cols, ErrorKind::Io,
            "line " + std::to_string(lines[r].number) + ": expected " + std::to_string(cols) + " values");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(lines[r].cells[c], lines[r].number);
  }
  return m;
}

template <class F>
auto as_io(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw Error(ErrorKind::Io, where + ": " + e.what());
    throw;
  }
}

}  // namespace

Matrix parse_csv_matrix(const std::string& text) { return to_matrix(content_lines(text)); }

Matrix read_csv_matrix(const std::string& path) {
  return as_io(path, [&] { return parse_csv_matrix(slurp(path)); });
}

CorrelationModel parse_model(const std::string& text, TailRule tail) {
  auto lines = content_lines(text);
  require(!lines.empty(), ErrorKind::Io, "empty model file");
  bool table = false;
  if (lines[0].cells.size() == 2 && lines[0].cells[0] == "lag") {
    table = true;
    lines.erase(lines.begin());
  }
  const Matrix m = to_matrix(lines);
  if (!table) table = m.cols() == 2 && m.rows() != 2;
  if (!table) {
    require(m.rows() == m.cols(), ErrorKind::Io, "model matrix must be square (or use a lag,value table)");
    return CorrelationModel::explicit_matrix(m);
  }
  require(m.cols() == 2, ErrorKind::Io, "lag table rows need exactly two values");
  std::vector<double> rhos;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    require(m(r, 0) == double(r + 1), ErrorKind::Io,
            "line " + std::to_string(lines[r].number) + ": lags must run 1, 2, ... without gaps");
    rhos.push_back(m(r, 1));
  }
  return CorrelationModel::tabulated(rhos, tail);
}

CorrelationModel read_model_file(const std::string& path, TailRule tail) {
  return as_io(path, [&] { return parse_model(slurp(path), tail); });
}

CrossCorrelationModel parse_cross(const std::string& text) {
  const auto lines = content_lines(text);
  std::map<int, std::vector<Line>> sections;
  int current = -1;
  for (const auto& l : lines) {
    if (!l.cells.empty() && l.cells[0] == "lag") {
      require(l.cells.size() == 2, ErrorKind::Io, "line " + std::to_string(l.number) + ": expected lag,<h>");
      current = static_cast<int>(number(l.cells[1], l.number));
      require(current >= 0 && !sections.count(current), ErrorKind::Io,
              "line " + std::to_string(l.number) + ": invalid or repeated lag");
      sections[current];
      continue;
    }
    require(current >= 0, ErrorKind::Io, "line " + std::to_string(l.number) + ": data before the first lag line");
    sections[current].push_back(l);
  }
  require(!sections.empty(), ErrorKind::Io, "no lag sections");
  std::vector<Matrix> blocks;
  for (const auto& [lag, rows] : sections) {
    require(lag == static_cast<int>(blocks.size()), ErrorKind::Io, "lags must run 0, 1, ... without gaps");
    Matrix b = to_matrix(rows);
    require(b.rows() == b.cols(), ErrorKind::Io, "lag " + std::to_string(lag) + " block is not square");
    require(blocks.empty() || b.rows() == blocks[0].rows(), ErrorKind::Io, "blocks differ in size");
    blocks.push_back(std::move(b));
  }
  return CrossCorrelationModel::tabulated(std::move(blocks));
}

CrossCorrelationModel read_cross_file(const std::string& path) {
  return as_io(path, [&] { return parse_cross(slurp(path)); });
}

void write_binary(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot write " + path);
  const std::uint32_t version = 1;
  const std::uint64_t rows = m.rows(), cols = m.cols();
  out.write("RLAB", 4);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  out.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(double)));
  require(static_cast<bool>(out), ErrorKind::Io, "write failed: " + path);
}

Matrix read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t rows = 0, cols = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  require(in && std::memcmp(magic, "RLAB", 4) == 0 && version == 1, ErrorKind::Io, path + ": not a RLAB v1 file");
  Matrix m(rows, cols);
  in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(double)));
  require(static_cast<bool>(in), ErrorKind::Io, path + ": truncated data");
  return m;
}

}  // namespace recordlab
