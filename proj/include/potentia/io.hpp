#ifndef POTENTIA_IO_HPP
#define POTENTIA_IO_HPP

#include "potentia/charge.hpp"
#include "potentia/uniqueness.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace potentia {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"d": 2, "atoms": [{"x": [0.0, 0.0], "w": 1.0}, ...]}
DiscreteCharge charge_from_json(const nlohmann::json& doc);
nlohmann::ordered_json charge_to_json(const DiscreteCharge& charge);

/// Either a bare array of coordinate arrays or {"points": [...]}; every point
/// must have `dimension` coordinates.
std::vector<Point> points_from_json(const nlohmann::json& doc, int dimension);

/// Parses "x1,x2,..." into a point.
Point parse_point(const std::string& text);

nlohmann::json read_json_file(const std::string& path);

nlohmann::ordered_json report_to_json(const UniquenessReport& report);

} // namespace potentia

#endif // POTENTIA_IO_HPP
