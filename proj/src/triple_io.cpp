#include "sdcalc/triple_io.hpp"

#include <fstream>

namespace sdcalc {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw TripleParseError(path, "expected a number");
    return j.get<double>();
}

Vec vector_at(const json& j, const std::string& path, int dim) {
    if (!j.is_array()) throw TripleParseError(path, "expected an array");
    if (static_cast<int>(j.size()) != dim)
        throw TripleParseError(path, "expected " + std::to_string(dim) + " entries");
    Vec out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number_at(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

LevyTriple parse_triple(const json& doc) {
    if (!doc.is_object()) throw TripleParseError("$", "expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "dim" && key != "shift" && key != "covariance" && key != "atoms" &&
            key != "timechange")
            throw TripleParseError("$." + key, "unknown field");
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw TripleParseError("$.dim", "expected an integer");
    const int dim = doc["dim"].get<int>();
    if (dim < 1 || dim > 3) throw TripleParseError("$.dim", "must be in 1..3");
    if (!doc.contains("shift")) throw TripleParseError("$.shift", "missing");
    Vec shift = vector_at(doc["shift"], "$.shift", dim);
    if (!doc.contains("covariance")) throw TripleParseError("$.covariance", "missing");
    Vec covariance = vector_at(doc["covariance"], "$.covariance", dim * dim);

    std::vector<MeasureAtom> atoms;
    if (doc.contains("atoms")) {
        const json& arr = doc["atoms"];
        if (!arr.is_array()) throw TripleParseError("$.atoms", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "$.atoms[" + std::to_string(i) + "]";
            const json& entry = arr[i];
            if (!entry.is_array() || entry.size() != 2)
                throw TripleParseError(path, "expected [[point...], mass]");
            MeasureAtom atom;
            atom.point = vector_at(entry[0], path + "[0]", dim);
            atom.mass = number_at(entry[1], path + "[1]");
            atoms.push_back(std::move(atom));
        }
    }
    try {
        FiniteAtomicMeasure atomic(dim, std::move(atoms));
        if (doc.contains("timechange")) {
            const json& tc = doc["timechange"];
            if (!tc.is_array() || tc.empty())
                throw TripleParseError("$.timechange", "expected a non-empty array");
            std::vector<double> betas;
            for (std::size_t i = 0; i < tc.size(); ++i)
                betas.push_back(
                    number_at(tc[i], "$.timechange[" + std::to_string(i) + "]"));
            return LevyTriple::make(
                dim, std::move(shift), std::move(covariance),
                TransformedMeasure{std::move(atomic),
                                   build_law(BetaMultiset::from_values(betas))});
        }
        return LevyTriple::make(dim, std::move(shift), std::move(covariance),
                                std::move(atomic));
    } catch (const TripleParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw TripleParseError("$", e.what());
    }
}

LevyTriple parse_triple_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TripleParseError(path, "cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw TripleParseError(path, e.what());
    }
    return parse_triple(doc);
}

nlohmann::json triple_to_json(const LevyTriple& triple) {
    const FiniteAtomicMeasure* atomic = std::get_if<FiniteAtomicMeasure>(&triple.measure);
    const TransformedMeasure* transformed = std::get_if<TransformedMeasure>(&triple.measure);
    if (transformed) {
        if (!transformed->timechange.source())
            throw std::invalid_argument(
                "transformed measure lacks a multiset tag; cannot serialize");
        atomic = &transformed->base;
    }
    json doc;
    doc["dim"] = triple.dim;
    doc["shift"] = triple.shift;
    doc["covariance"] = triple.covariance;
    json atoms = json::array();
    for (const MeasureAtom& a : atomic->atoms()) atoms.push_back({a.point, a.mass});
    doc["atoms"] = atoms;
    if (transformed) doc["timechange"] = transformed->timechange.source()->expanded();
    return doc;
}

}  // namespace sdcalc
