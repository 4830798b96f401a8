#pragma once

// File formats:
//   density  JSON {"m": int, "cells": [m*m floats, row-major, rows indexed by y]}
//   sample   CSV with header "x,y", one point per row, 17 significant digits
//   shape    JSON array of column lengths
//   curve    JSON {"x": [...], "f": [...]} knots of a ShapeCurve

#include <iosfwd>
#include <string>
#include <vector>

#include "lisdev/model.hpp"

namespace lisdev {

class YoungShape;
class ShapeCurve;

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_double(double value);

Density read_density_json(std::istream& in);
Density read_density_file(const std::string& path);
void write_density_json(std::ostream& out, const Density& density);

PointSample read_sample_csv(std::istream& in);
PointSample read_sample_file(const std::string& path);
void write_sample_csv(std::ostream& out, const PointSample& sample);

std::string shape_to_json(const YoungShape& shape);
YoungShape shape_from_json(const std::string& text);

ShapeCurve read_curve_json(std::istream& in);
ShapeCurve read_curve_file(const std::string& path);

}  // namespace lisdev
