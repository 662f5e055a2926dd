#pragma once

#include "jcsim/types.hpp"

namespace jcsim {

// Two-level operators in the fixed basis order (|e>, |g>).

inline Matrix2 qubit_identity() { return Matrix2::Identity(); }

inline Matrix2 sigma_z() {
    Matrix2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline Matrix2 sigma_plus() {  // |e><g|
    Matrix2 m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}

inline Matrix2 sigma_minus() {  // |g><e|
    Matrix2 m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}

inline Matrix2 sigma_y() {
    Matrix2 m;
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

}  // namespace jcsim
