#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace subdiff {

/// Nodal values of a function on the interior grid of a spatial operator.
using GridFunction = std::vector<double>;

/// Uniform partition t_n = n*tau of [0, T] with tau = T/N.
struct TimeGrid {
    double T = 1.0;
    int N = 2;
    double tau = 0.5;

    static TimeGrid make(double T, int N) {
        if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: T must be positive");
        if (N < 2) throw std::invalid_argument("TimeGrid: N must be >= 2");
        return TimeGrid{T, N, T / N};
    }

    /// t_n, with t_N pinned to T so rounding in tau never moves the endpoint.
    double t(int n) const { return n == N ? T : n * tau; }
};

/// Requested a source value at t = 0 where t^mu is unbounded (mu < 0).
class SingularAtZero : public std::domain_error {
public:
    explicit SingularAtZero(const std::string& what) : std::domain_error(what) {}
};

/// The scheme's k-fold regularization cannot absorb the source singularity.
/// The message names the minimal admissible scheme.
class IncompatibleScheme : public std::invalid_argument {
public:
    IncompatibleScheme(const std::string& what, int minimal_k)
        : std::invalid_argument(what), minimal_k_(minimal_k) {}
    int minimal_regularization() const noexcept { return minimal_k_; }

private:
    int minimal_k_;
};

/// Experiment configuration rejected; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subdiff
