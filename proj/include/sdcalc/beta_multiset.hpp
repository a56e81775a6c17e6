#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdcalc {

/// A finite multiset of positive real exponents: distinct values kept in
/// ascending order, each with a multiplicity >= 1. This is the index set
/// of a composed random-integral mapping; equal doubles are grouped
/// exactly as represented (no tolerance).
class BetaMultiset {
public:
    struct Entry {
        double value;
        int multiplicity;
    };

    static BetaMultiset from_values(std::span<const double> values) {
        if (values.empty()) throw std::invalid_argument("empty exponent multiset");
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<Entry> entries;
        for (double v : sorted) {
            if (!(v > 0.0))
                throw std::invalid_argument("non-positive exponent " + std::to_string(v));
            if (!entries.empty() && entries.back().value == v)
                ++entries.back().multiplicity;
            else
                entries.push_back({v, 1});
        }
        return BetaMultiset(std::move(entries));
    }

    static BetaMultiset from_values(std::initializer_list<double> values) {
        return from_values(std::span<const double>(values.begin(), values.size()));
    }

    static BetaMultiset from_entries(std::span<const Entry> raw) {
        std::vector<double> expanded;
        for (const Entry& e : raw) {
            if (e.multiplicity < 1)
                throw std::invalid_argument("multiplicity must be >= 1");
            for (int i = 0; i < e.multiplicity; ++i) expanded.push_back(e.value);
        }
        return from_values(expanded);
    }

    const std::vector<Entry>& entries() const { return entries_; }

    /// Total size K = sum of multiplicities.
    int size() const {
        int k = 0;
        for (const Entry& e : entries_) k += e.multiplicity;
        return k;
    }

    bool all_distinct() const {
        return std::all_of(entries_.begin(), entries_.end(),
                           [](const Entry& e) { return e.multiplicity == 1; });
    }

    /// Ascending list with each value repeated per its multiplicity.
    std::vector<double> expanded() const {
        std::vector<double> out;
        out.reserve(size());
        for (const Entry& e : entries_)
            for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.value);
        return out;
    }

    std::vector<double> distinct_values() const {
        std::vector<double> out;
        out.reserve(entries_.size());
        for (const Entry& e : entries_) out.push_back(e.value);
        return out;
    }

    bool operator==(const BetaMultiset& other) const {
        if (entries_.size() != other.entries_.size()) return false;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].value != other.entries_[i].value ||
                entries_[i].multiplicity != other.entries_[i].multiplicity)
                return false;
        return true;
    }

private:
    explicit BetaMultiset(std::vector<Entry> entries) : entries_(std::move(entries)) {}
    std::vector<Entry> entries_;
};

/// Parses a shell-friendly multiset spec: comma-separated items, each
/// either a value ("1.5") or value-times-multiplicity ("2x3").
inline BetaMultiset parse_multiset_spec(const std::string& spec) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        if (item.empty()) throw std::invalid_argument("empty item in multiset spec '" + spec + "'");
        std::size_t xpos = item.find('x');
        try {
            std::size_t used = 0;
            if (xpos == std::string::npos) {
                double v = std::stod(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                values.push_back(v);
            } else {
                double v = std::stod(item.substr(0, xpos), &used);
                if (used != xpos) throw std::invalid_argument(item);
                std::string mult_str = item.substr(xpos + 1);
                int m = std::stoi(mult_str, &used);
                if (used != mult_str.size() || m < 1) throw std::invalid_argument(item);
                for (int i = 0; i < m; ++i) values.push_back(v);
            }
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("cannot parse multiset item '" + item + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("multiset item out of range: '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return BetaMultiset::from_values(values);
}

}  // namespace sdcalc
