#pragma once

#include <string>

namespace raed {

// Line chart of mean vs axis_value, one series per (algorithm, extra_axes)
// pair, error bars from the stderr column. Input must carry the exact
// benchmark CSV header; malformed rows raise std::invalid_argument. A CSV
// with no data rows still yields a valid SVG and sets *warning.
std::string plot_csv_to_svg(const std::string& csv_text, std::string* warning = nullptr);

}  // namespace raed
