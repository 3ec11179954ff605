#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace qgd {

// Exact element of Q(i).  Both parts are arbitrary-precision rationals kept
// in canonical form (lowest terms, positive denominator) by GMP.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long n) : re_(n) {}
    GaussianRational(const mpq_class& re) : re_(re) { canonicalize(); }
    GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) { canonicalize(); }
    GaussianRational(long num, long den) : re_(num, den) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        canonicalize();
    }

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_; im_ += o.im_; return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_; im_ -= o.im_; return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = r; im_ = i; return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    // Multiplicative inverse; throws on zero (division by zero is the one
    // arithmetic error this type can produce).
    GaussianRational inv() const {
        mpq_class n = re_ * re_ + im_ * im_;
        if (n == 0) throw std::domain_error("division by zero in Q(i)");
        return GaussianRational(re_ / n, -im_ / n);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inv();
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order used only for deterministic pivot choices and printing.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    // Textual form "a/b+c/d*i" with zero parts omitted ("0" for zero).
    std::string str() const;
    static std::optional<GaussianRational> parse(const std::string& s);

private:
    void canonicalize() { re_.canonicalize(); im_.canonicalize(); }

    mpq_class re_{0};
    mpq_class im_{0};
};

using Scalar = GaussianRational;

} // namespace qgd
