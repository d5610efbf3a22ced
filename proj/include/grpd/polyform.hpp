#pragma once

#include "grpd/cochain.hpp"

#include <bit>

namespace grpd {

/// ∫_{Δ^q} s_1^{a_1} ... s_q^{a_q} ds_1...ds_q = (prod a_i!) / (q + sum a_i)!.
inline Rational dirichlet_integral(const std::vector<unsigned>& exps) {
    Integer num = 1, den = 1;
    unsigned total = 0;
    for (unsigned a : exps) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), a);
        num *= f;
        total += a;
    }
    mpz_fac_ui(den.get_mpz_t(), total + unsigned(exps.size()));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Sum of terms  p(s) ds_J ⊗ a  with p a monomial in s_1..s_q (s_0 = 1 - sum s_i is
/// eliminated), J ⊆ {1..q} as a bitmask (bit i-1 for ds_i), a a total cochain.
/// Products use (ds_J a)(ds_J' b) = (-1)^{|a||J'|} ds_J ds_J' (a u b);
/// d = d_s + D with D(p ds_J a) = (-1)^{|J|} p ds_J Da.
class PolySimplexForm {
public:
    struct Key {
        unsigned mask = 0;
        std::vector<unsigned> exps;
        size_t degree = 0;  // cochain degree
        auto operator<=>(const Key&) const = default;
    };

    PolySimplexForm(const TotalComplex& t, size_t q) : t_(&t), q_(q) {}

    size_t q() const { return q_; }
    const TotalComplex& complex() const { return *t_; }
    const std::map<Key, QVector>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds coeff * s^exps ds_mask ⊗ a.
    void add_term(unsigned mask, std::vector<unsigned> exps, const Rational& coeff, const TotalCochain& a) {
        if (exps.size() != q_) throw Error(ErrorKind::Internal, "PolySimplexForm: exponent vector length");
        if (coeff == 0) return;
        Key k{mask, std::move(exps), a.degree};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            QVector v = scale(coeff, a.coords);
            if (!grpd::is_zero(v)) terms_.emplace(std::move(k), std::move(v));
            return;
        }
        for (size_t i = 0; i < it->second.size(); ++i) it->second[i] += coeff * a.coords[i];
        if (grpd::is_zero(it->second)) terms_.erase(it);
    }

    /// The cochain a as a constant form.
    static PolySimplexForm constant(const TotalComplex& t, size_t q, const TotalCochain& a) {
        PolySimplexForm f(t, q);
        f.add_term(0, std::vector<unsigned>(q, 0), 1, a);
        return f;
    }

    /// s_j ⊗ a for j in 0..q (s_0 expanded as 1 - sum s_i).
    static PolySimplexForm coordinate(const TotalComplex& t, size_t q, size_t j, const TotalCochain& a) {
        PolySimplexForm f(t, q);
        std::vector<unsigned> e(q, 0);
        if (j == 0) {
            f.add_term(0, e, 1, a);
            for (size_t i = 0; i < q; ++i) {
                e[i] = 1;
                f.add_term(0, e, -1, a);
                e[i] = 0;
            }
        } else {
            e[j - 1] = 1;
            f.add_term(0, e, 1, a);
        }
        return f;
    }

    /// ds_j ⊗ a for j in 0..q (ds_0 = -sum ds_i).
    static PolySimplexForm differential(const TotalComplex& t, size_t q, size_t j, const TotalCochain& a) {
        PolySimplexForm f(t, q);
        std::vector<unsigned> e(q, 0);
        if (j == 0) {
            for (size_t i = 0; i < q; ++i) f.add_term(1u << i, e, -1, a);
        } else {
            f.add_term(1u << (j - 1), e, 1, a);
        }
        return f;
    }

    PolySimplexForm operator+(const PolySimplexForm& o) const {
        PolySimplexForm r = *this;
        r += o;
        return r;
    }
    PolySimplexForm& operator+=(const PolySimplexForm& o) {
        for (const auto& [k, v] : o.terms_) add_term(k.mask, k.exps, 1, {k.degree, v});
        return *this;
    }
    PolySimplexForm scaled(const Rational& s) const {
        PolySimplexForm r(*t_, q_);
        for (const auto& [k, v] : terms_) r.add_term(k.mask, k.exps, s, {k.degree, v});
        return r;
    }

    /// Sign of ds_A ds_B in terms of ds_{A ∪ B}, 0 when they overlap.
    static int wedge_sign(unsigned a, unsigned b) {
        if (a & b) return 0;
        // count pairs (i in a, j in b) with i > j
        int inversions = 0;
        for (unsigned bb = b; bb; bb &= bb - 1) {
            unsigned j = std::countr_zero(bb);
            inversions += std::popcount(a >> (j + 1));
        }
        return inversions % 2 ? -1 : 1;
    }

    PolySimplexForm operator*(const PolySimplexForm& o) const {
        PolySimplexForm r(*t_, q_);
        for (const auto& [ka, va] : terms_)
            for (const auto& [kb, vb] : o.terms_) {
                int sign = wedge_sign(ka.mask, kb.mask);
                if (sign == 0) continue;
                if ((ka.degree * std::popcount(kb.mask)) % 2) sign = -sign;
                auto prod = cup(*t_, {ka.degree, va}, {kb.degree, vb});
                if (prod.coords.empty()) continue;
                std::vector<unsigned> e(q_);
                for (size_t i = 0; i < q_; ++i) e[i] = ka.exps[i] + kb.exps[i];
                r.add_term(ka.mask | kb.mask, std::move(e), sign, prod);
            }
        return r;
    }

    PolySimplexForm power(size_t k) const {
        PolySimplexForm r = constant(*t_, q_, TotalCochain::unit(*t_));
        for (size_t i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// d_s + D.
    PolySimplexForm d_total() const {
        PolySimplexForm r(*t_, q_);
        for (const auto& [k, v] : terms_) {
            // d_s: sum_i (d p / d s_i) ds_i ds_J
            for (size_t i = 0; i < q_; ++i) {
                if (k.exps[i] == 0) continue;
                int sign = wedge_sign(1u << i, k.mask);
                if (sign == 0) continue;
                auto e = k.exps;
                e[i] -= 1;
                r.add_term(k.mask | (1u << i), std::move(e), sign * int(k.exps[i]), {k.degree, v});
            }
            if (k.degree + 1 < t_->degrees()) {
                auto dv = D(*t_, {k.degree, v});
                r.add_term(k.mask, k.exps, std::popcount(k.mask) % 2 ? -1 : 1, dv);
            }
        }
        return r;
    }

    /// Restriction to face i of Δ^q (the face s_i = 0), as a form on Δ^{q-1}.
    PolySimplexForm restrict_to_face(size_t i) const {
        if (q_ == 0) throw Error(ErrorKind::Internal, "restrict_to_face: no faces of a point");
        PolySimplexForm r(*t_, q_ - 1);
        for (const auto& [k, v] : terms_) {
            if (i > 0) {
                if (k.exps[i - 1] > 0 || (k.mask >> (i - 1) & 1)) continue;
                std::vector<unsigned> e;
                for (size_t j = 0; j < q_; ++j)
                    if (j != i - 1) e.push_back(k.exps[j]);
                unsigned low = k.mask & ((1u << (i - 1)) - 1);
                unsigned high = k.mask >> i;
                r.add_term(low | (high << (i - 1)), std::move(e), 1, {k.degree, v});
                continue;
            }
            // face 0: s_1 = 1 - sum_{j>=2} s_j, ds_1 = -sum_{j>=2} ds_j; new variables t_j = s_{j+1}
            PolySimplexForm piece(*t_, q_ - 1);
            std::vector<unsigned> rest(k.exps.begin() + 1, k.exps.end());
            // (1 - sum t)^a expanded as a polynomial
            std::map<std::vector<unsigned>, Rational> poly{{std::vector<unsigned>(q_ - 1, 0), Rational(1)}};
            for (unsigned a = 0; a < k.exps[0]; ++a) {
                std::map<std::vector<unsigned>, Rational> next;
                for (const auto& [m, c] : poly) {
                    next[m] += c;
                    for (size_t j = 0; j < q_ - 1; ++j) {
                        auto m2 = m;
                        ++m2[j];
                        next[m2] -= c;
                    }
                }
                poly = std::move(next);
            }
            std::vector<std::pair<unsigned, int>> masks;
            if (k.mask & 1u) {
                unsigned others = k.mask >> 1;
                for (size_t j = 0; j < q_ - 1; ++j) {
                    // ds_1 -> -ds_{j+2}, i.e. new bit j; ds_1 sits first in the wedge
                    if (others >> j & 1) continue;
                    int sign = -wedge_sign(1u << j, others);
                    masks.push_back({others | (1u << j), sign});
                }
            } else {
                masks.push_back({k.mask >> 1, 1});
            }
            for (const auto& [m, c] : poly) {
                if (c == 0) continue;
                std::vector<unsigned> e(q_ - 1);
                for (size_t j = 0; j < q_ - 1; ++j) e[j] = m[j] + rest[j];
                for (const auto& [mask, sign] : masks) r.add_term(mask, e, c * sign, {k.degree, v});
            }
        }
        return r;
    }

    /// ∫_{Δ^q}: terms with ds_1...ds_q only, Dirichlet weights; result has degree `degree`.
    TotalCochain integrate(size_t degree) const {
        TotalCochain out = TotalCochain::zero(*t_, degree);
        const unsigned full = q_ == 0 ? 0 : (1u << q_) - 1;
        for (const auto& [k, v] : terms_) {
            if (k.mask != full || k.degree != degree) continue;
            Rational w = dirichlet_integral(k.exps);
            for (size_t i = 0; i < v.size(); ++i) out.coords[i] += w * v[i];
        }
        return out;
    }

private:
    const TotalComplex* t_;
    size_t q_;
    std::map<Key, QVector> terms_;
};

/// Fiber integration over Δ^q of the part of total degree q + degree.
inline TotalCochain simplex_integrate(const PolySimplexForm& f, size_t degree) { return f.integrate(degree); }

}  // namespace grpd
