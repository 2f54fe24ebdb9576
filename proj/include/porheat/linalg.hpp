#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace porheat {

/// Compressed sparse row matrix.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(std::size_t rows, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols,
              std::vector<double> vals);

    std::size_t rows() const { return rows_; }
    std::size_t nonzeros() const { return vals_.size(); }

    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;
    std::vector<double> diagonal() const;
    /// Entry (r, c); zero when not stored.
    double at(std::size_t r, std::size_t c) const;

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& cols() const { return cols_; }
    const std::vector<double>& vals() const { return vals_; }

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<double> vals_;
};

/// Accumulates (row, col, value) entries; duplicates are summed.
class TripletBuilder {
public:
    explicit TripletBuilder(std::size_t rows) : rows_(rows) {}

    void add(std::size_t r, std::size_t c, double v);
    std::size_t rows() const { return rows_; }
    CsrMatrix build() const;

private:
    struct Entry {
        std::size_t r;
        std::size_t c;
        double v;
    };
    std::size_t rows_;
    std::vector<Entry> entries_;
};

struct SolveReport {
    int iterations = 0;
    double residual = 0.0;  // relative, ||b - Ax|| / ||b||
    bool converged = false;
};

struct SolveOptions {
    double tolerance = 1e-10;
    int max_iterations = 10000;
    /// Treat constants as the kernel: project b and the iterates to zero mean.
    bool project_constants = false;
    /// Called after every iteration with the current iterate (tests only).
    std::function<void(int, std::span<const double>)> on_iterate;
};

struct SolveResult {
    std::vector<double> x;
    SolveReport report;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, SolveReport report)
        : std::runtime_error(what), report_(report) {}
    const SolveReport& report() const { return report_; }

private:
    SolveReport report_;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive
/// (semi-)definite systems. `guess` may be empty.
SolveResult cg_solve(const CsrMatrix& a, std::span<const double> b, const SolveOptions& opts,
                     std::span<const double> guess = {});

/// Jacobi-preconditioned BiCGStab for the nonsymmetric systems produced by
/// upwind convection.
SolveResult bicgstab_solve(const CsrMatrix& a, std::span<const double> b,
                           const SolveOptions& opts, std::span<const double> guess = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
void remove_mean(std::span<double> v);

}  // namespace porheat
