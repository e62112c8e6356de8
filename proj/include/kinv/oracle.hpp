/*!
  \file oracle.hpp
  \brief Brute-force reference computations

  Everything here enumerates chains or function spaces exhaustively and
  shares no code path with the DP in chains.hpp beyond the value types.
*/
#pragma once

#include <kinv/kfunc.hpp>

#include <cstdint>
#include <map>
#include <optional>

namespace kinv::oracle
{

/*! \brief Largest k^n the chain enumerators accept. */
inline constexpr std::size_t max_enumeration_points = 12u;

/*! \brief Largest function space (or system space) an exhaustive scan accepts. */
inline constexpr std::uint64_t max_scan_space = std::uint64_t{ 1 } << 26;

/*! \brief Max jump count over every chain of E_k^n, by DFS enumeration. */
int decrease_bruteforce( function_system const& system, std::size_t max_points = max_enumeration_points );

/*! \brief Max strictly decreasing subsequence length over every chain. */
int inversion_power_bruteforce( kfunction const& f, std::size_t max_points = max_enumeration_points );

struct scan_report
{
  unsigned k;
  unsigned n;
  unsigned m;
  int max_decrease;
  std::map<int, std::uint64_t> histogram;
  std::optional<function_system> extremal_example;
  std::uint64_t scanned;
  bool sampled;

  /*! \brief Associative merge of two partial scans of disjoint slices. */
  void merge( scan_report const& other );
};

struct sampling
{
  std::uint64_t samples;
  std::uint64_t seed = 0u;
};

/*! \brief Size of P_k(n)^m, or nullopt when it exceeds 2^63. */
std::optional<std::uint64_t> system_space_size( unsigned k, unsigned n, unsigned m );

/*! \brief Exhaustive scan of all single functions of P_k(n). */
scan_report scan_single_functions( unsigned k, unsigned n );

/*!
  \brief Max decrease over all m-member systems of P_k(n), exhaustively or
  over `sample.samples` seeded random systems.
*/
scan_report scan_systems( unsigned k, unsigned n, unsigned m, std::optional<sampling> sample = std::nullopt );

/*! \brief Scan of the index range [first, last) of the m-member system space. */
scan_report scan_system_range( unsigned k, unsigned n, unsigned m, std::uint64_t first, std::uint64_t last );

} // namespace kinv::oracle
