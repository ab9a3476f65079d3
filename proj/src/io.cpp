#include "potentia/io.hpp"

#include <fstream>
#include <sstream>

namespace potentia {

namespace {

Point point_from_json(const nlohmann::json& coords, int dimension)
{
    if (!coords.is_array())
        throw ParseError("coordinates must be an array");
    if (static_cast<int>(coords.size()) != dimension)
        throw ParseError("coordinate count " + std::to_string(coords.size()) + " does not match d = "
                         + std::to_string(dimension));
    Point y(dimension);
    for (int k = 0; k < dimension; ++k) {
        if (!coords[k].is_number())
            throw ParseError("coordinates must be numbers");
        y(k) = coords[k].get<double>();
    }
    return y;
}

} // namespace

DiscreteCharge charge_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("atoms"))
        throw ParseError("charge must be an object with \"d\" and \"atoms\"");
    if (!doc["d"].is_number_integer() || doc["d"].get<int>() < 1)
        throw ParseError("\"d\" must be a positive integer");
    const int d = doc["d"].get<int>();
    const auto& list = doc["atoms"];
    if (!list.is_array())
        throw ParseError("\"atoms\" must be an array");
    std::vector<PointCharge> atoms;
    atoms.reserve(list.size());
    for (const auto& atom : list) {
        if (!atom.is_object() || !atom.contains("x") || !atom.contains("w") || !atom["w"].is_number())
            throw ParseError("each atom needs \"x\" and a numeric \"w\"");
        atoms.push_back({point_from_json(atom["x"], d), atom["w"].get<double>()});
    }
    try {
        return DiscreteCharge(d, std::move(atoms));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

nlohmann::ordered_json charge_to_json(const DiscreteCharge& charge)
{
    nlohmann::ordered_json doc;
    doc["d"] = charge.dimension();
    doc["atoms"] = nlohmann::ordered_json::array();
    for (const auto& a : charge.atoms()) {
        nlohmann::ordered_json atom;
        atom["x"] = std::vector<double>(a.location.data(), a.location.data() + a.location.size());
        atom["w"] = a.weight;
        doc["atoms"].push_back(std::move(atom));
    }
    return doc;
}

std::vector<Point> points_from_json(const nlohmann::json& doc, int dimension)
{
    const nlohmann::json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("points"))
            throw ParseError("targets object needs a \"points\" array");
        list = &doc["points"];
    }
    if (!list->is_array())
        throw ParseError("targets must be an array of points");
    std::vector<Point> points;
    points.reserve(list->size());
    for (const auto& p : *list)
        points.push_back(point_from_json(p, dimension));
    return points;
}

Point parse_point(const std::string& text)
{
    std::vector<double> coords;
    std::stringstream stream(text);
    std::string field;
    while (std::getline(stream, field, ',')) {
        try {
            std::size_t used = 0;
            coords.push_back(std::stod(field, &used));
            if (used != field.size())
                throw ParseError("bad coordinate '" + field + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad coordinate '" + field + "'");
        }
    }
    if (coords.empty())
        throw ParseError("empty point");
    return Eigen::Map<const Point>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

nlohmann::ordered_json report_to_json(const UniquenessReport& report)
{
    nlohmann::ordered_json doc;
    doc["check"] = "uniqueness";
    doc["mass_gap"] = report.mass_gap;
    doc["equality_defect"] = report.equality_defect;
    doc["potential_defect"] = report.potential_defect;
    doc["H_defect"] = report.H_defect;
    doc["hypothesis_ok"] = report.hypothesis_ok;
    doc["pass"] = report.pass;
    return doc;
}

} // namespace potentia
