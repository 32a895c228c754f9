#include "kreinlab_cli/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace kreinlab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Parses a leading double; returns the number of characters consumed.
std::size_t leading_double(std::string_view s, double& out) {
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  const auto res = std::from_chars(body.data(), body.data() + body.size(), out);
  if (res.ec != std::errc()) return 0;
  return static_cast<std::size_t>(res.ptr - s.data());
}

[[noreturn]] void bad_token(std::string_view token) {
  throw ParseError("complex literal a+bj", "cannot parse complex literal '" + std::string(token) + "'");
}

double entry_part(const nlohmann::json& v, std::size_t index) {
  if (!v.is_number()) {
    throw ParseError("entries are [re, im] number pairs", "entry " + std::to_string(index) + " is not numeric");
  }
  return v.get<double>();
}

}  // namespace

Complex parse_complex(std::string_view token) {
  const std::string_view s = trim(token);
  if (s.empty()) bad_token(token);
  double first = 0.0;
  const std::size_t n1 = leading_double(s, first);
  if (n1 == 0) bad_token(token);
  std::string_view rest = s.substr(n1);
  if (rest.empty()) return {first, 0.0};
  if (rest == "j") return {0.0, first};
  if (rest.front() != '+' && rest.front() != '-') bad_token(token);
  double second = 0.0;
  const std::size_t n2 = leading_double(rest, second);
  if (n2 == 0 || rest.substr(n2) != "j") bad_token(token);
  return {first, second};
}

CMatrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("valid JSON", e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
    throw ParseError("object with rows, cols, entries", "matrix JSON lacks rows, cols or entries");
  }
  if (!doc["rows"].is_number_unsigned() || !doc["cols"].is_number_unsigned() || !doc["entries"].is_array()) {
    throw ParseError("rows, cols non-negative integers; entries an array", "malformed matrix header");
  }
  const auto rows = doc["rows"].get<std::size_t>();
  const auto cols = doc["cols"].get<std::size_t>();
  const nlohmann::json& entries = doc["entries"];
  if (entries.size() != rows * cols) {
    throw ParseError("entry count = rows*cols", "expected " + std::to_string(rows * cols) + " entries, found " +
                                                    std::to_string(entries.size()));
  }
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const nlohmann::json& e = entries[k];
    Complex z;
    if (e.is_array() && e.size() == 2) {
      z = {entry_part(e[0], k), entry_part(e[1], k)};
    } else if (e.is_number()) {
      z = {e.get<double>(), 0.0};
    } else {
      throw ParseError("entries are [re, im] number pairs", "entry " + std::to_string(k) + " is malformed");
    }
    m(static_cast<Index>(k / cols), static_cast<Index>(k % cols)) = z;
  }
  return m;
}

CMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    std::vector<Complex> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      row.push_back(parse_complex(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("rows of equal length", "CSV row " + std::to_string(rows.size() + 1) + " has " +
                                                   std::to_string(row.size()) + " entries");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("at least one row", "CSV matrix is empty");
  CMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("readable input file", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::string ext = path.extension().string();
  if (ext == ".json") return parse_matrix_json(text);
  if (ext == ".csv") return parse_matrix_csv(text);
  const std::string_view body = trim(text);
  return !body.empty() && body.front() == '{' ? parse_matrix_json(text) : parse_matrix_csv(text);
}

nlohmann::ordered_json matrix_to_json(const CMatrix& m) {
  nlohmann::ordered_json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      // Signed zeros print as "-0.0"; fold them so reports stay stable.
      entries.push_back({m(i, j).real() + 0.0, m(i, j).imag() + 0.0});
    }
  }
  out["entries"] = std::move(entries);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x + 0.0);
  return std::string(buf, res.ptr);
}

std::string matrix_to_csv(const CMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      const double im = m(i, j).imag() + 0.0;
      out += format_double(m(i, j).real());
      out += std::signbit(im) ? "-" : "+";
      out += format_double(std::abs(im));
      out += 'j';
    }
    out += '\n';
  }
  return out;
}

}  // namespace kreinlab::cli
