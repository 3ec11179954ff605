#include "qgd/report.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <sstream>

#include "json.hpp"

namespace qgd {

void Report::absorb(const Report& other, const std::string& prefix) {
    for (Check c : other.checks) {
        c.id = prefix + "." + c.id;
        checks.push_back(std::move(c));
    }
    sampled = sampled || other.sampled;
}

int Report::failed() const {
    int n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::Fail;
    return n;
}

int Report::skipped() const {
    int n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::Skipped;
    return n;
}

const Check* Report::first_failure() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return &c;
    return nullptr;
}

void Report::sort() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const Check& a, const Check& b) { return a.id < b.id; });
}

namespace {
const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "skipped";
    }
}
} // namespace

std::string Report::to_text() const {
    std::ostringstream os;
    if (!subject.empty()) os << "== " << subject << "\n";
    for (const auto& c : checks) {
        os << "  [" << status_name(c.status) << "] " << c.id << "  (" << c.anchor << ")";
        if (c.witness) os << "\n      witness: " << *c.witness;
        os << "\n";
    }
    os << "  summary: " << total() << " checks, " << passed() << " passed, " << failed()
       << " failed, " << skipped() << " skipped\n";
    return os.str();
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["subject"] = subject;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["anchor"] = c.anchor;
        jc["status"] = status_name(c.status);
        if (c.witness) jc["witness"] = *c.witness;
        j["checks"].push_back(jc);
    }
    j["summary"] = {{"total", total()},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"skipped", skipped()}};
    j["inputs"] = nlohmann::json::array();
    for (const auto& [name, digest] : digests)
        j["inputs"].push_back({{"name", name}, {"sha256", digest}});
    if (sampled) {
        j["sampled"] = true;
        j["seed"] = seed;
    }
    return j.dump(2);
}

// SHA-256 (FIPS 180-4), compact implementation for input digests.
namespace {

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

constexpr std::array<std::uint32_t, 64> kSha256K = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

} // namespace

std::string sha256_hex(const std::string& bytes) {
    std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                      0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::string msg = bytes;
    const std::uint64_t bitlen = static_cast<std::uint64_t>(bytes.size()) * 8;
    msg += static_cast<char>(0x80);
    while (msg.size() % 64 != 56) msg += '\0';
    for (int i = 7; i >= 0; --i) msg += static_cast<char>((bitlen >> (8 * i)) & 0xff);

    for (size_t off = 0; off < msg.size(); off += 64) {
        std::array<std::uint32_t, 64> w{};
        for (int t = 0; t < 16; ++t)
            w[t] = (static_cast<std::uint8_t>(msg[off + 4 * t]) << 24) |
                   (static_cast<std::uint8_t>(msg[off + 4 * t + 1]) << 16) |
                   (static_cast<std::uint8_t>(msg[off + 4 * t + 2]) << 8) |
                   static_cast<std::uint8_t>(msg[off + 4 * t + 3]);
        for (int t = 16; t < 64; ++t) {
            std::uint32_t s0 = rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3);
            std::uint32_t s1 = rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10);
            w[t] = w[t - 16] + s0 + w[t - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, hh] = h;
        for (int t = 0; t < 64; ++t) {
            std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = hh + s1 + ch + kSha256K[t] + w[t];
            std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = s0 + maj;
            hh = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d;
        h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (std::uint32_t v : h)
        for (int i = 7; i >= 0; --i) out += hex[(v >> (4 * i)) & 0xf];
    return out;
}

} // namespace qgd
