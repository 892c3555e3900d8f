#pragma once

#include <vector>

#include "dcdaf/matrix.hpp"

namespace dcdaf {

// Controls for the leading DCD solver. H bounds the solution amplitude and
// must be a power of two so every step size mu = H*2^-y is exact in binary
// floating point; M_b is the bit depth of the step-size ladder; N_u caps the
// number of element updates per solve.
struct DcdConfig {
    double H = 1.0;
    int Mb = 16;
    int Nu = 8;
};

struct DcdSolution {
    std::vector<double> delta_w;
    std::vector<double> residual;
    int updates_performed = 0;
    long long additions_count = 0;
};

// Solve R*dw = b approximately using only sign tests, comparisons, additions
// and power-of-two scalings. R must be symmetric with a strictly positive
// diagonal. The returned residual equals b - R*delta_w up to round-off.
DcdSolution dcd_solve(const Matrix& R, const std::vector<double>& b, const DcdConfig& cfg);

// Upper bound on the additions one solve may perform: 2*Nu*M + Mb.
long long count_ops(const DcdConfig& cfg, int M);

}  // namespace dcdaf
