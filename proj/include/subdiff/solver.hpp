#pragma once

#include <span>
#include <string>
#include <vector>

#include "subdiff/cq.hpp"
#include "subdiff/source.hpp"
#include "subdiff/space.hpp"
#include "subdiff/types.hpp"

namespace subdiff::solver {

enum class SchemeKind { BDF2, CorrBDF2, ID1BDF2, ID2BDF2, ID3BDF2 };

/// k-fold integral order the scheme pairs with (0 for BDF2 / Corr-BDF2).
int regularization_order(SchemeKind s);

const char* scheme_name(SchemeKind s);

/// Parses "bdf2", "corr-bdf2", "id1-bdf2", "id2-bdf2", "id3-bdf2" (and the
/// printed names).  Throws ConfigError on anything else.
SchemeKind scheme_from_name(const std::string& name);

struct SolveOptions {
    int quad_nodes = 64;           // Gauss-Jacobi size for source tabulation
    bool corr_every_step = false;  // apply the Corr-BDF2 correction at every step
    bool keep_history = true;
};

struct SolveResult {
    std::vector<GridFunction> v_history;  // V^0..V^N (empty unless keep_history)
    GridFunction u_final;                 // u^N = V^N + v
    double max_step_residual = 0.0;
    double wall_seconds = 0.0;
    bool singular_source_poisoned = false;  // Corr-BDF2 read a singular g(0)
};

/// Right side of the chosen scheme at step n >= 1:
///   BDF2       A v + g^n
///   Corr-BDF2  A v + g^n, with (3/2) A v + (1/2) g^0 + g^1 at the first step
///   IDk        tau^{-k} sum_j d_j ( t_{n-j}^k / k!  A v + G^{n-j} )
/// where d are the BDF2 power weights and G the k-fold integral table.
GridFunction rhs_at_step(SchemeKind scheme, int n, const TimeGrid& grid,
                         const space::SpatialOperator& A, const GridFunction& v,
                         const source::RegularizedSource& reg,
                         bool corr_every_step = false);

/// One convolution-quadrature step: solves
///   (w_0 tau^{-alpha} I - A) V^n = rhs - tau^{-alpha} sum_{j=1}^{n} w_j V^{n-j}
/// where history holds V^0..V^{n-1}.
GridFunction step(const TimeGrid& grid, double alpha, const space::SpatialOperator& A,
                  const cq::WeightSequence& w, std::span<const GridFunction> history,
                  const GridFunction& rhs);

/// Advances V^0 = 0 through all N steps and returns u^N = V^N + v.
/// Throws IncompatibleScheme when the scheme's regularization order cannot
/// absorb the source singularity (the message names the minimal admissible
/// scheme).
SolveResult solve(SchemeKind scheme, double alpha, const TimeGrid& grid,
                  const space::SpatialOperator& A, const GridFunction& v,
                  const source::SourceSpec& g, const SolveOptions& opt = {});

}  // namespace subdiff::solver
