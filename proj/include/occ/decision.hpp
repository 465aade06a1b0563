#pragma once

namespace occ {

//! Positive margin means inside the target region. Exact ties count as target.
struct Decision {
    bool is_target = false;
    double margin = 0.0;
};

inline Decision decide(double margin) noexcept { return Decision{margin >= 0.0, margin}; }

} // namespace occ
