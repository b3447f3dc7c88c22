#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "monotone/bands.hpp"
#include "monotone/estimators.hpp"
#include "monotone/grid.hpp"

namespace monotone::csv {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

// Long format: header `x1,...,xd,value`, one row per node, any row order.
GriddedFunction read_grid(std::istream& in);
void write_grid(std::ostream& out, const GriddedFunction& f);

// Long format: header `x1,...,xd,lower,upper`.
Band read_band(std::istream& in);
void write_band(std::ostream& out, const Band& b);

// Two columns `x,y` with a header row.
Dataset read_dataset(std::istream& in);

GriddedFunction read_grid(const std::filesystem::path& path);
Band read_band(const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);
void write_grid(const std::filesystem::path& path, const GriddedFunction& f);
void write_band(const std::filesystem::path& path, const Band& b);

}  // namespace monotone::csv
