#include "qgd/scalar.hpp"

#include <cctype>

namespace qgd {

std::string GaussianRational::str() const {
    auto rat = [](const mpq_class& q) { return q.get_str(); };
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out += rat(re_);
    if (im_ != 0) {
        if (!out.empty() && im_ > 0) out += "+";
        if (im_ == 1) out += "i";
        else if (im_ == -1) out += "-i";
        else out += rat(im_) + "*i";
    }
    return out;
}

namespace {

// Parses an optionally signed rational "n" or "n/d" starting at pos.
bool parse_rat(const std::string& s, size_t& pos, mpq_class& out) {
    size_t start = pos;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) { pos = start; return false; }
    std::string body = s.substr(digits, pos - digits);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t d2 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == d2) { pos = start; return false; }
        body += "/" + s.substr(d2, pos - d2);
    }
    try {
        out = mpq_class(body);
    } catch (...) {
        pos = start;
        return false;
    }
    if (out.get_den() == 0) { pos = start; return false; }
    if (negative) out = -out;
    out.canonicalize();
    return true;
}

} // namespace

std::optional<GaussianRational> GaussianRational::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return std::nullopt;

    mpq_class re = 0, im = 0;
    size_t pos = 0;
    while (pos < s.size()) {
        // "i", "+i", "-i" without an explicit coefficient
        size_t save = pos;
        mpq_class sign = 1;
        size_t p = pos;
        if (s[p] == '+') ++p;
        else if (s[p] == '-') { sign = -1; ++p; }
        if (p < s.size() && s[p] == 'i' ) {
            im += sign;
            pos = p + 1;
            continue;
        }
        mpq_class q;
        if (!parse_rat(s, pos, q)) return std::nullopt;
        if (pos < s.size() && (s[pos] == '*' || s[pos] == 'i')) {
            if (s[pos] == '*') {
                ++pos;
                if (pos >= s.size() || s[pos] != 'i') return std::nullopt;
            }
            ++pos; // consume 'i'
            im += q;
        } else {
            re += q;
        }
        if (pos == save) return std::nullopt;
    }
    return GaussianRational(re, im);
}

} // namespace qgd
