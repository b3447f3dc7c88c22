#include "monotone/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace monotone::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(',', pos);
    out.push_back(trim(line.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (!have_header) {
      for (auto c : cells) t.header.emplace_back(c);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size())
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(t.header.size()) + " fields");
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) {
      try {
        row.push_back(parse_double(c));
      } catch (const Error& e) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(Errc::ParseError, "missing header row");
  return t;
}

// Rebuilds a rectangular grid from `d` coordinate columns and scatters the
// remaining `k` value columns into row-major order.
std::pair<std::vector<Axis>, std::vector<std::vector<double>>> gather_grid(const Table& t,
                                                                         std::size_t d,
                                                                         std::size_t k) {
  if (t.rows.empty()) throw Error(Errc::ParseError, "no data rows");
  std::vector<std::vector<double>> coords(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (const auto& r : t.rows) coords[a].push_back(r[a]);
    std::sort(coords[a].begin(), coords[a].end());
    coords[a].erase(std::unique(coords[a].begin(), coords[a].end()), coords[a].end());
  }
  std::size_t total = 1;
  for (const auto& c : coords) total *= c.size();
  if (total != t.rows.size())
    throw Error(Errc::ShapeMismatch, "rows do not form a complete rectangular grid (" +
                                         std::to_string(t.rows.size()) + " rows, " +
                                         std::to_string(total) + " nodes)");

  std::vector<std::vector<double>> values(k, std::vector<double>(total));
  std::vector<bool> seen(total, false);
  for (const auto& r : t.rows) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < d; ++a) {
      const auto pos = std::lower_bound(coords[a].begin(), coords[a].end(), r[a]) - coords[a].begin();
      flat = flat * coords[a].size() + static_cast<std::size_t>(pos);
    }
    if (seen[flat]) throw Error(Errc::ShapeMismatch, "duplicate grid node");
    seen[flat] = true;
    for (std::size_t j = 0; j < k; ++j) values[j][flat] = r[d + j];
  }
  std::vector<Axis> axes;
  for (auto& c : coords) axes.emplace_back(std::move(c));
  return {std::move(axes), std::move(values)};
}

void write_rows(std::ostream& out, const std::vector<Axis>& axes,
                const std::vector<const std::vector<double>*>& columns) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> idx(d, 0);
  const std::size_t total = columns.front()->size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < d; ++a) out << format_double(axes[a].coords()[idx[a]]) << ',';
    for (std::size_t j = 0; j < columns.size(); ++j)
      out << format_double((*columns[j])[flat]) << (j + 1 < columns.size() ? ',' : '\n');
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < axes[a].size()) break;
      idx[a] = 0;
    }
  }
}

void write_header(std::ostream& out, std::size_t d, std::string_view tail) {
  for (std::size_t a = 0; a < d; ++a) out << 'x' << (a + 1) << ',';
  out << tail << '\n';
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(Errc::ParseError, "cannot format number");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw Error(Errc::ParseError, "not a number: '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw Error(Errc::NonFiniteValue, "non-finite number '" + std::string(text) + "'");
  return v;
}

GriddedFunction read_grid(std::istream& in) {
  const auto t = read_table(in);
  if (t.header.size() < 2 || t.header.back() != "value")
    throw Error(Errc::ParseError, "grid CSV header must be x1,...,xd,value");
  auto [axes, values] = gather_grid(t, t.header.size() - 1, 1);
  return GriddedFunction(std::move(axes), std::move(values[0]));
}

void write_grid(std::ostream& out, const GriddedFunction& f) {
  write_header(out, f.dim(), "value");
  write_rows(out, f.axes(), {&f.values()});
}

Band read_band(std::istream& in) {
  const auto t = read_table(in);
  const auto n = t.header.size();
  if (n < 3 || t.header[n - 2] != "lower" || t.header[n - 1] != "upper")
    throw Error(Errc::ParseError, "band CSV header must be x1,...,xd,lower,upper");
  auto [axes, values] = gather_grid(t, n - 2, 2);
  return Band(GriddedFunction(axes, std::move(values[0])), GriddedFunction(axes, std::move(values[1])));
}

void write_band(std::ostream& out, const Band& b) {
  write_header(out, b.lower().dim(), "lower,upper");
  write_rows(out, b.lower().axes(), {&b.lower().values(), &b.upper().values()});
}

Dataset read_dataset(std::istream& in) {
  const auto t = read_table(in);
  if (t.header.size() != 2) throw Error(Errc::ParseError, "dataset CSV must have exactly two columns x,y");
  Dataset d;
  for (const auto& r : t.rows) {
    d.x.push_back(r[0]);
    d.y.push_back(r[1]);
  }
  d.validate();
  return d;
}

GriddedFunction read_grid(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_grid(in);
}

Band read_band(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_band(in);
}

Dataset read_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dataset(in);
}

void write_grid(const std::filesystem::path& path, const GriddedFunction& f) {
  auto out = open_out(path);
  write_grid(out, f);
}

void write_band(const std::filesystem::path& path, const Band& b) {
  auto out = open_out(path);
  write_band(out, b);
}

}  // namespace monotone::csv
