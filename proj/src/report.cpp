#include "fockcs/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fockcs/core.hpp"
#include "fockcs/serialize.hpp"

namespace fockcs {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::warn: return "warn";
        case CheckStatus::fail: return "fail";
        case CheckStatus::info: return "info";
    }
    return "info";
}

namespace {

const char* comparison_name(Comparison c) {
    switch (c) {
        case Comparison::at_most: return "<=";
        case Comparison::at_least: return ">=";
        case Comparison::within: return "in";
        case Comparison::none: return "none";
    }
    return "none";
}

// JSON has no inf/nan
nlohmann::json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

CheckRecord make(std::string id, std::string anchor, double measured, Comparison cmp, double lo = 0.0,
                 double hi = 0.0) {
    CheckRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.measured = measured;
    r.comparison = cmp;
    r.threshold = lo;
    r.threshold_hi = hi;
    return r;
}

}  // namespace

CheckRecord check_at_most(std::string id, std::string anchor, double measured, double threshold) {
    CheckRecord r = make(std::move(id), std::move(anchor), measured, Comparison::at_most, threshold);
    r.status = measured <= threshold ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckRecord check_at_least(std::string id, std::string anchor, double measured, double threshold) {
    CheckRecord r = make(std::move(id), std::move(anchor), measured, Comparison::at_least, threshold);
    r.status = measured >= threshold ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckRecord check_within(std::string id, std::string anchor, double measured, double lo, double hi) {
    CheckRecord r = make(std::move(id), std::move(anchor), measured, Comparison::within, lo, hi);
    r.status = measured >= lo && measured <= hi ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckRecord check_true(std::string id, std::string anchor, bool ok, std::string note) {
    CheckRecord r = make(std::move(id), std::move(anchor), ok ? 1.0 : 0.0, Comparison::at_least, 1.0);
    r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    r.note = std::move(note);
    return r;
}

CheckRecord info(std::string id, std::string anchor, double measured, std::string note) {
    CheckRecord r = make(std::move(id), std::move(anchor), measured, Comparison::none);
    r.note = std::move(note);
    return r;
}

bool Report::any_fail() const {
    for (const auto& r : records)
        if (r.status == CheckStatus::fail) return true;
    return false;
}

const CheckRecord* Report::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

void Report::soften_truncation_failures(const std::string& why) {
    for (auto& r : records) {
        if (r.truncation_sensitive && r.status == CheckStatus::fail) {
            r.status = CheckStatus::warn;
            r.note += r.note.empty() ? why : "; " + why;
        }
    }
}

nlohmann::json Report::to_json() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j{{"id", r.id},
                         {"anchor", r.anchor},
                         {"measured", number(r.measured)},
                         {"comparison", comparison_name(r.comparison)},
                         {"status", to_string(r.status)}};
        if (r.comparison != Comparison::none) j["threshold"] = number(r.threshold);
        if (r.comparison == Comparison::within) j["threshold_hi"] = number(r.threshold_hi);
        if (!r.note.empty()) j["note"] = r.note;
        recs.push_back(std::move(j));
    }
    nlohmann::json out{{"scenario", scenario},
                       {"status", any_fail() ? "fail" : "pass"},
                       {"records", recs},
                       {"provenance", provenance}};
    if (!artifacts.empty()) out["artifacts"] = artifacts;
    return out;
}

std::string Report::to_csv() const {
    std::string out = "id,anchor,measured,comparison,threshold,threshold_hi,status\n";
    for (const auto& r : records) {
        out += r.id + ",\"" + r.anchor + "\"," + format_double(r.measured) + "," + comparison_name(r.comparison) + ",";
        if (r.comparison != Comparison::none) out += format_double(r.threshold);
        out += ",";
        if (r.comparison == Comparison::within) out += format_double(r.threshold_hi);
        out += "," + to_string(r.status) + "\n";
    }
    return out;
}

void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace fockcs
