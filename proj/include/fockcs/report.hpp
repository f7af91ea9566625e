#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fockcs {

enum class CheckStatus { pass, warn, fail, info };

std::string to_string(CheckStatus s);

/// How `measured` is compared against the threshold(s).
enum class Comparison { at_most, at_least, within, none };

struct CheckRecord {
    std::string id;
    /// What property is being checked, or "plumbing".
    std::string anchor;
    double measured = 0.0;
    Comparison comparison = Comparison::none;
    double threshold = 0.0;
    double threshold_hi = 0.0;  // upper bound for Comparison::within
    CheckStatus status = CheckStatus::info;
    /// Truncation-sensitive checks are downgraded to warn below the calibrated dimension.
    bool truncation_sensitive = false;
    std::string note;
};

CheckRecord check_at_most(std::string id, std::string anchor, double measured, double threshold);
CheckRecord check_at_least(std::string id, std::string anchor, double measured, double threshold);
CheckRecord check_within(std::string id, std::string anchor, double measured, double lo, double hi);
CheckRecord check_true(std::string id, std::string anchor, bool ok, std::string note = {});
CheckRecord info(std::string id, std::string anchor, double measured, std::string note = {});

struct Report {
    std::string scenario;
    std::vector<CheckRecord> records;
    nlohmann::json provenance = nlohmann::json::object();
    nlohmann::json artifacts = nlohmann::json::object();

    void add(CheckRecord r) { records.push_back(std::move(r)); }
    bool any_fail() const;
    const CheckRecord* find(const std::string& id) const;
    /// Downgrade failing truncation-sensitive records to warn.
    void soften_truncation_failures(const std::string& why);

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

/// Writes via a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace fockcs
