#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qgd {

enum class CheckStatus { Pass, Fail, Skipped };

struct Check {
    std::string id;     // stable machine name, unique within a report
    std::string anchor; // the mathematical law being checked, human readable
    CheckStatus status = CheckStatus::Pass;
    std::optional<std::string> witness; // present exactly when status == Fail
};

struct Report {
    std::string subject;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, std::string>> digests; // (name, sha256)
    bool sampled = false;
    std::uint64_t seed = 0;

    void pass(const std::string& id, const std::string& anchor) {
        checks.push_back({id, anchor, CheckStatus::Pass, std::nullopt});
    }
    void fail(const std::string& id, const std::string& anchor, const std::string& witness) {
        checks.push_back({id, anchor, CheckStatus::Fail, witness});
    }
    void skip(const std::string& id, const std::string& anchor) {
        checks.push_back({id, anchor, CheckStatus::Skipped, std::nullopt});
    }
    void record(const std::string& id, const std::string& anchor, bool ok,
                const std::function<std::string()>& witness) {
        if (ok) pass(id, anchor);
        else fail(id, anchor, witness());
    }
    void absorb(const Report& other, const std::string& prefix);

    int total() const { return static_cast<int>(checks.size()); }
    int failed() const;
    int skipped() const;
    int passed() const { return total() - failed() - skipped(); }
    bool ok() const { return failed() == 0; }
    const Check* first_failure() const;

    // Canonical ordering by check id; ids must be unique.
    void sort();

    std::string to_text() const;
    std::string to_json() const;
};

std::string sha256_hex(const std::string& bytes);

} // namespace qgd
