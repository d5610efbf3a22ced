#pragma once

#include "grpd/random.hpp"

namespace fixtures {

using namespace grpd;

inline SimplicialSet circle_space() { return SimplicialSet::from_complex(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Cover circle_cover() { return Cover::spanned(circle_space(), {{0, 1}, {1, 2}, {0, 2}}); }

inline NerveDiagram circle_model(size_t R) { return cech_nerve(circle_cover(), R); }
inline NerveDiagram point_model(size_t R) { return constant_nerve(SimplicialSet::discrete(1), R); }
inline NerveDiagram cyclic_model(size_t m, size_t R) { return nerve(cyclic_group(m), R); }

inline TotalComplex integral(const NerveDiagram& n) { return total_complex(n, CoefficientSpec{Ring::Integers, LatticeTag::Integers}); }

struct Named {
    std::string name;
    TotalComplex t;
};

/// The desk models used throughout: point, circle (three-arc Cech), [*/Z2].
inline std::vector<Named> desk_models(size_t R) {
    std::vector<Named> out;
    out.push_back({"point", integral(point_model(R))});
    out.push_back({"circle", integral(circle_model(R))});
    out.push_back({"Z2", integral(cyclic_model(2, R))});
    return out;
}

}  // namespace fixtures
