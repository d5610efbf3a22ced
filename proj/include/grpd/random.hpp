#pragma once

#include "grpd/bundles.hpp"

#include <random>

namespace grpd {

/// Small exact random data for property checks. Draws go through the engine directly
/// (no std distributions) so sequences agree across standard libraries.
class RandomSource {
public:
    explicit RandomSource(uint64_t seed) : eng_(seed) {}

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) { return lo + long(eng_() % uint64_t(hi - lo + 1)); }
    bool coin(unsigned percent) { return eng_() % 100 < percent; }

    Rational rational(long span = 3, long max_den = 3) {
        return make_rational(uniform(-span, span), uniform(1, max_den));
    }

    TotalCochain cochain(const TotalComplex& t, size_t k, bool integral = false, unsigned density = 60) {
        auto a = TotalCochain::zero(t, k);
        for (auto& x : a.coords)
            if (coin(density)) x = integral ? Rational(Integer(uniform(-2, 2))) : rational();
        return a;
    }

    /// A random integral 2-cocycle: an integral coboundary plus a random combination of
    /// free and torsion generators of H^2(Z).
    TotalCochain integral_cocycle(const TotalComplex& t, size_t k) {
        auto c = D(t, cochain(t, k - 1, true));
        auto h = integral_cohomology(t.complex, k);
        for (const auto& g : h.free_generators) c = c + Rational(Integer(uniform(-2, 2))) * TotalCochain{k, g};
        for (const auto& g : h.torsion_generators) c = c + Rational(Integer(uniform(0, 3))) * TotalCochain{k, g};
        return c;
    }

    DifferentialCocycle bundle(const TotalComplex& t) {
        return DifferentialCocycle::from_connection(t, integral_cocycle(t, 2), cochain(t, 1));
    }

    ConnectionFamily family(const TotalComplex& t, size_t q) {
        auto c = integral_cocycle(t, 2);
        std::vector<TotalCochain> hs;
        for (size_t j = 0; j <= q; ++j) hs.push_back(cochain(t, 1));
        return ConnectionFamily::from_connections(t, c, hs);
    }

    Gauge gauge(const TotalComplex& t) { return {cochain(t, 1, true), cochain(t, 0)}; }

    /// Random integral cochain complex with the given dimensions: d_k = A_k B_k with
    /// B_k A_{k-1} = 0 arranged by building each d_k on the kernel of d_{k-1}'s transpose.
    FreeComplex integer_complex(const std::vector<size_t>& dims) {
        FreeComplex c(dims, Ring::Integers);
        for (size_t k = 0; k + 1 < dims.size(); ++k) {
            // rows of d_k must vanish on im d_{k-1}: pick integer combinations of an
            // integral basis of the left kernel of d_{k-1}
            QMatrix prev = c.dense_diff(long(k) - 1);
            QMatrix allowed;  // columns: row vectors allowed in d_k
            if (prev.cols() == 0) {
                allowed = QMatrix::identity(dims[k]);
            } else {
                ZMatrix pt = to_integer(prev.transpose());
                allowed = to_rational(detail::integer_kernel(pt));
            }
            for (size_t i = 0; i < dims[k + 1]; ++i) {
                QVector row(dims[k], Rational(0));
                for (size_t b = 0; b < allowed.cols(); ++b) {
                    if (!coin(50)) continue;
                    long f = uniform(-2, 2);
                    for (size_t j = 0; j < dims[k]; ++j) row[j] += f * allowed(j, b);
                }
                for (size_t j = 0; j < dims[k]; ++j)
                    if (row[j] != 0) c.diffs[k].add(i, j, row[j]);
            }
        }
        return c;
    }

    /// Random filtration by weights in [0, max_weight] on each basis vector, closed up so
    /// that d never lowers weight: a basis vector's weight is capped by the weights of
    /// the targets of its differential.
    Filtration weight_filtration(const FreeComplex& c, size_t max_weight) {
        std::vector<std::vector<size_t>> w(c.degrees());
        for (size_t k = c.degrees(); k-- > 0;) {
            w[k].resize(c.dims[k]);
            auto d = c.diff(k);
            for (size_t j = 0; j < c.dims[k]; ++j) {
                size_t cap = max_weight;
                if (k + 1 < c.degrees())
                    for (const auto& [i, v] : d.column(j)) cap = std::min(cap, w[k + 1][i]);
                w[k][j] = size_t(uniform(0, long(cap)));
            }
        }
        return Filtration::by_weight(c, w, max_weight, "random");
    }

    uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace grpd
