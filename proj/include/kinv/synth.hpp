/*!
  \file synth.hpp
  \brief Inversion-complexity bounds and optimal synthesis over M + {omega}

  The synthesizer realizes a system F with at most
  ceil(log_{u(omega)}(d(F)+1)) omega gates. Each recursion level splits
  E_k^n into level classes T_1..T_s whose internal decrease is below
  s^(R-1), realizes the clamped systems recursively, merges them through an
  s-connector and selects the active class with one shared omega gate.
*/
#pragma once

#include <kinv/chains.hpp>
#include <kinv/circuit.hpp>
#include <kinv/kfunc.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kinv
{

/*! \brief Smallest R >= 0 with base^R >= value (base >= 2, value >= 1). */
int ceil_log( long long base, long long value );

struct bounds_report
{
  int d_F;
  int lower;
  int upper;
  std::optional<int> exact;
  int d_B;
  int u_B;
};

bounds_report bounds( function_system const& system, basis const& b, size_limits const& limits = {} );

struct level_partition
{
  unsigned k;
  unsigned n;
  /*! classes[i] holds the table indices of T_{i+1}, ascending */
  std::vector<std::vector<std::size_t>> classes;
  /*! class number (0-based) of every point */
  std::vector<std::size_t> class_of;
  int threshold;
  /*! the beta tuples, one per class; empty until bind_omega */
  std::vector<point> beta;
  /*! levels[i] = omega(beta[i]), strictly decreasing */
  std::vector<kvalue> levels;

  std::size_t num_classes() const noexcept { return classes.size(); }
};

/*!
  \brief Splits E_k^n into s classes with threshold s^(R-1).

  T_i takes every point of the residual poset whose maximum chain decrease
  (within the residual) stays below the threshold; the last class takes
  the remainder.
*/
level_partition compute_partition( function_system const& system, unsigned s, int R,
                                   size_limits const& limits = {} );

/*! \brief Fills beta/levels from the inversion-power witness of omega (needs u(omega) >= s). */
void bind_omega( level_partition& partition, kfunction const& omega, size_limits const& limits = {} );

/*!
  \brief Checks disjoint cover, down-closure, within-class decrease and the
  beta chain (when bound). Empty result means all invariants hold.
*/
std::vector<std::string> check_partition( level_partition const& partition, function_system const& system,
                                          kfunction const* omega = nullptr, size_limits const& limits = {} );

/*! \brief The system F_i: 0 below class i, F on class i, k-1 above (class is 0-based). */
function_system clamp_system( function_system const& system, level_partition const& partition, std::size_t i,
                              size_limits const& limits = {} );

/*!
  \brief Circuit over inputs `input_names` whose outputs Z_1..Z_s are the
  class indicators, using one omega gate (none when s = 1).
*/
circuit selector_fragment( level_partition const& partition, basis_function const& omega,
                           std::vector<std::string> const& input_names );

/*!
  \brief s-connector: inputs z_1..z_s followed by the shared inputs; on the
  unit pattern e_i it realizes circuits[i]. Its omega weight equals the
  maximum weight among `circuits`.
*/
circuit build_connector( std::vector<circuit> const& circuits, basis_function const& omega );

/*! \brief True iff the connector equations hold on every unit z-pattern. */
bool check_connector( circuit const& connector, std::vector<function_system> const& targets,
                      size_limits const& limits = {} );

struct connector_record
{
  circuit connector;
  std::vector<function_system> targets;
};

/*! \brief Optional instrumentation of one synthesize() run. */
struct synthesis_trace
{
  std::vector<std::pair<level_partition, function_system>> partitions;
  std::vector<connector_record> connectors;
};

circuit synthesize( function_system const& system, basis_function const& omega,
                    synthesis_trace* trace = nullptr, size_limits const& limits = {} );

/*! \brief The omega of `b` with the largest inversion power (first on ties). */
basis_function const& best_omega( basis const& b, size_limits const& limits = {} );

enum class standard_basis
{
  post,
  lukasiewicz
};

basis make_standard_basis( standard_basis kind, unsigned k );

/*! \brief T(k,n) = (k-1)n - floor((k-1)n/k) + 1. */
long long shannon_t( unsigned k, unsigned n );

/*!
  \brief Shannon function value for single functions (m absent) or
  systems of m >= 2 functions; the log base is u(B) of the chosen basis.
*/
int shannon_value( unsigned k, unsigned n, std::optional<unsigned> m, standard_basis kind );

} // namespace kinv
