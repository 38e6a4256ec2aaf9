#pragma once

#include <stdexcept>
#include <string>

namespace psiq {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// series-core
struct non_divisible : error {
    int index;
    explicit non_divisible(int idx)
        : error("coefficient at index " + std::to_string(idx) +
                " not divisible by requested scalar"),
          index(idx) {}
};

// padic-core
struct zero_denominator : error {
    zero_denominator() : error("zero denominator") {}
};
struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};
struct insufficient_precision : error {
    explicit insufficient_precision(const std::string& what)
        : error("insufficient precision: " + what) {}
};
struct non_unit : error {
    non_unit() : error("operand is not a unit (valuation != 0)") {}
};

// psi-solver
struct no_convergence : error {
    int max_iter;
    explicit no_convergence(int m)
        : error("fixed-point iteration did not stabilize within " +
                std::to_string(m) + " iterations"),
          max_iter(m) {}
};
struct truncation_mismatch : error {
    truncation_mismatch() : error("series truncation degrees do not line up") {}
};
struct non_integral_inverse : error {
    non_integral_inverse() : error("compositional inverse has a non-integer coefficient") {}
};

// polygons
struct all_infinite : error {
    all_infinite() : error("no finite valuations: polygon undefined") {}
};

// witt
struct non_integral : error {
    explicit non_integral(const std::string& what)
        : error("exact division failed: " + what) {}
};
struct ring_mismatch : error {
    ring_mismatch() : error("Witt vectors live over different rings") {}
};
struct length_mismatch : error {
    length_mismatch() : error("Witt vectors have different lengths") {}
};
struct unsupported_ring : error {
    explicit unsupported_ring(const std::string& what)
        : error("operation not defined over this ring: " + what) {}
};

// analysis
struct insufficient_series_truncation : error {
    int needed;
    explicit insufficient_series_truncation(int m)
        : error("series truncation too small, need degree " + std::to_string(m)),
          needed(m) {}
};
struct newton_stall : error {
    newton_stall() : error("Newton iteration stalled before reaching target residual") {}
};
struct count_mismatch : error {
    count_mismatch() : error("zero count does not match polygon side length") {}
};
struct zero_digit : error {
    zero_digit() : error("Teichmuller limit is degenerate: digit is zero") {}
};

}  // namespace psiq
