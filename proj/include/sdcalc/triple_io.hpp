#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "sdcalc/levy.hpp"

namespace sdcalc {

/// Schema violation with the JSON field path of the offending entry.
class TripleParseError : public std::invalid_argument {
public:
    TripleParseError(const std::string& path, const std::string& what)
        : std::invalid_argument(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Parses {"dim": d, "shift": [...], "covariance": [row-major...],
/// "atoms": [[[point...], mass], ...]}. An optional "timechange" array of
/// positive exponents marks the measure as the image of the atoms under
/// the composed mapping with that multiset. Unknown keys are rejected.
LevyTriple parse_triple(const nlohmann::json& doc);
LevyTriple parse_triple_file(const std::string& path);

/// Emits a triple back into the same schema. Transformed measures
/// require a multiset-tagged time change.
nlohmann::json triple_to_json(const LevyTriple& triple);

}  // namespace sdcalc
