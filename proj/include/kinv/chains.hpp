/*!
  \file chains.hpp
  \brief Decrease and inversion power via longest-path DP over E_k^n

  Points are processed in a linear extension of the componentwise order
  (coordinate sum, then table index). Edges range over all comparable
  pairs, not only covering pairs.
*/
#pragma once

#include <kinv/kfunc.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace kinv
{

/*! \brief Non-empty sequence of distinct, componentwise increasing points. */
class chain
{
public:
  explicit chain( std::vector<point> points );

  std::vector<point> const& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  point const& initial() const { return points_.front(); }
  point const& terminal() const { return points_.back(); }

private:
  std::vector<point> points_;
};

enum class witness_kind
{
  decrease,
  inversion_power
};

struct chain_witness
{
  chain witness;
  int value;
  witness_kind kind;
};

struct basis_profile_t
{
  int d_B;
  int u_B;
};

/*! \brief Point subset used to restrict chains; indexed by table index. */
using point_mask = std::vector<bool>;

/*! \brief Number of consecutive jumps of the system along the chain. */
int decrease_over_chain( chain const& c, function_system const& system );

/*! \brief Length of the longest strictly decreasing value subsequence along the chain. */
int inversion_power_over_chain( chain const& c, kfunction const& f );

/*!
  \brief Maximum decrease of any chain ending at each point.

  Entries for points outside the mask are -1. With a mask, chains are
  restricted to masked points.
*/
std::vector<int> decrease_profile( function_system const& system,
                                   point_mask const* mask = nullptr,
                                   size_limits const& limits = {} );

struct decrease_result
{
  int value;
  chain_witness witness;
};

decrease_result decrease( function_system const& system,
                          point_mask const* mask = nullptr,
                          size_limits const& limits = {} );

struct inversion_power_result
{
  int value;
  chain_witness witness;
};

inversion_power_result inversion_power( kfunction const& f, size_limits const& limits = {} );

basis_profile_t basis_profile( basis const& b, size_limits const& limits = {} );

/*! \brief Points of E_k^n in the DP linear extension (sum, then index). */
std::vector<std::size_t> linear_extension( unsigned k, unsigned n );

} // namespace kinv
