#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace grpd {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

/// Error categories; the CLI maps these onto exit codes.
enum class ErrorKind { Parse, Validation, Cutoff, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Representative of q mod 1 in [0, 1).
inline Rational frac_part(const Rational& q) { return q - Rational(floor_of(q)); }

inline Integer lcm_of_denominators(const QVector& v) {
    Integer l = 1;
    for (const auto& q : v) {
        if (q != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    return l;
}

inline bool is_zero(const QVector& v) {
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

inline bool is_integral(const QVector& v) {
    for (const auto& q : v)
        if (!is_integral(q)) return false;
    return true;
}

inline QVector add(const QVector& a, const QVector& b) {
    QVector r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline QVector sub(const QVector& a, const QVector& b) {
    QVector r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline QVector scale(const Rational& s, const QVector& a) {
    QVector r(a);
    for (auto& q : r) q *= s;
    return r;
}

inline Rational dot(const QVector& a, const QVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace grpd
