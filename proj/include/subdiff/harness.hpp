#pragma once

#include <string>
#include <vector>

#include "subdiff/solver.hpp"
#include "subdiff/space.hpp"
#include "subdiff/types.hpp"

namespace subdiff::harness {

enum class SourceOp { Product, Convolution };
enum class OutputFormat { Csv, Table, Both };

/// Norm used for the self-difference columns.  Nodal reproduces the reference
/// tables; Weighted is the quadrature-weighted discrete L2 norm.
enum class NormKind { Nodal, Weighted };

/// Benchmark experiment: scheme x N sweep over
///   u(x,0) = sin(x) sqrt(1-x^2),
///   g(x,t) = (1 + t^mu + t^{alpha mu}) o (1-t)^beta e^x (1 + 1_(0,1)(x)),
/// with o either the pointwise product or the Laplace convolution.
struct ExperimentConfig {
    double alpha = 0.7;
    double T = 1.0;
    std::vector<solver::SchemeKind> schemes;
    std::vector<int> steps;  // strictly increasing, each double the previous
    std::string space_mode = "cheb";  // "cheb" | "fd"
    int resolution = 32;
    int quad_nodes = 64;
    SourceOp op = SourceOp::Product;
    double mu = 0.8;
    double beta = 0.0;
    std::string initial = "example";  // "example" | "zero"
    NormKind norm = NormKind::Nodal;
    OutputFormat format = OutputFormat::Both;
    bool corr_every_step = false;
    bool force_incompatible = false;

    // oracle-check problem: v = v_coeff phi_k, q = q_coeff phi_k, source t^mu q
    int mode_k = 1;
    double v_coeff = 0.0;
    double q_coeff = 1.0;
};

/// Reads the flat JSON config (schema 1); throws ConfigError with the
/// offending field named.
ExperimentConfig load_config(const std::string& path);

struct TableRow {
    std::string scheme;
    int steps = 0;
    double error = 0.0;  // NaN is a valid cell
    double rate = 0.0;
    bool has_rate = false;
    bool incompatible = false;
};

struct ConvergenceTable {
    std::vector<TableRow> rows;
};

/// Norm of uA - uB at the shared final time.
double self_difference(const space::SpatialOperator& A, const GridFunction& uA,
                       const GridFunction& uB, NormKind norm = NormKind::Nodal);

/// log2(coarse / fine); NaN passes through.
double empirical_rate(double coarse, double fine);

/// Runs the scheme x N sweep: for each listed N the error cell is
/// ||u^N - u^{2N}|| at t = T, and the rate column compares consecutive cells.
ConvergenceTable run_experiment(const ExperimentConfig& cfg);

/// Direct-error companion: ||u^N(T) - u_exact(T)|| against the separable
/// reference for the monomial eigenmode problem.
ConvergenceTable run_oracle_check(const ExperimentConfig& cfg);

std::string to_csv(const ConvergenceTable& t);
std::string to_text(const ConvergenceTable& t);

/// True when a non-finite cell appears without a sanctioned reason (the
/// Corr-BDF2 singular-source NaN is the only expected one).
bool has_unexpected_nan(const ConvergenceTable& t, const ExperimentConfig& cfg);

}  // namespace subdiff::harness
