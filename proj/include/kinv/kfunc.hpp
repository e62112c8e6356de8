/*!
  \file kfunc.hpp
  \brief Functions of k-valued logic stored as explicit value tables

  A function f : E_k^n -> E_k is kept as a table of k^n values where the
  point (x_1, ..., x_n) lives at index sum x_i * k^(n-i), i.e. x_1 is the
  most significant digit.
*/
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinv
{

using kvalue = std::uint8_t;

/*! \brief Caps on k and on the number of points an algorithm may touch. */
struct size_limits
{
  unsigned max_k = 16u;
  /*! points of E_k^n accepted by the chain/partition algorithms */
  std::size_t max_analysis_points = 4096u;
  /*! entries a single value table may hold */
  std::size_t max_table_points = std::size_t{ 1 } << 20;
};

/*! \brief Raised when an input exceeds a configured size guard. */
class size_guard_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Returns k^n, or nullopt when it exceeds `cap`. */
std::optional<std::size_t> checked_power( unsigned k, unsigned n, std::size_t cap );

/*! \brief Throws size_guard_error unless k^n <= limits.max_analysis_points. */
std::size_t require_analysis_size( unsigned k, unsigned n, size_limits const& limits );

/*! \brief A tuple of E_k^n. */
class point
{
public:
  point() = default;
  point( unsigned k, std::vector<kvalue> coords );

  unsigned k() const noexcept { return k_; }
  std::size_t size() const noexcept { return coords_.size(); }
  kvalue operator[]( std::size_t i ) const { return coords_[i]; }
  std::vector<kvalue> const& coords() const noexcept { return coords_; }

  bool operator==( point const& ) const = default;

private:
  unsigned k_ = 2u;
  std::vector<kvalue> coords_;
};

/*! \brief Componentwise order a <= b. Throws on dimension or k mismatch. */
bool leq_point( point const& a, point const& b );

/*! \brief Table index of a point (x_1 most significant). */
std::size_t index_of( point const& p );

/*! \brief Inverse of index_of. */
point point_of( std::size_t index, unsigned k, unsigned n );

class kfunction
{
public:
  kfunction( unsigned k, unsigned n, std::vector<kvalue> table, size_limits const& limits = {} );

  /*! \brief Builds a table by evaluating `fn` on every point in index order. */
  template<class Fn>
  static kfunction from_fn( unsigned k, unsigned n, Fn&& fn, size_limits const& limits = {} );

  unsigned k() const noexcept { return k_; }
  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::vector<kvalue> const& table() const noexcept { return table_; }

  kvalue at( std::size_t index ) const { return table_.at( index ); }
  kvalue operator()( point const& p ) const;
  kvalue operator()( std::span<kvalue const> args ) const;

  bool operator==( kfunction const& ) const = default;

private:
  unsigned k_;
  unsigned n_;
  std::vector<kvalue> table_;
};

class function_system
{
public:
  explicit function_system( std::vector<kfunction> members );

  unsigned k() const noexcept { return k_; }
  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  kfunction const& operator[]( std::size_t i ) const { return members_[i]; }
  std::vector<kfunction> const& members() const noexcept { return members_; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==( function_system const& ) const = default;

private:
  unsigned k_;
  unsigned n_;
  std::vector<kfunction> members_;
};

struct basis_function
{
  std::string name;
  kfunction function;
};

/*! \brief Basis M + {omega_1, ..., omega_p}; the monotone class is implicit. */
class basis
{
public:
  basis( unsigned k, std::vector<basis_function> omegas );

  unsigned k() const noexcept { return k_; }
  std::vector<basis_function> const& omegas() const noexcept { return omegas_; }

  /*! \brief Index of an omega with this exact table, if declared. */
  std::optional<std::size_t> find( kfunction const& f ) const;

private:
  unsigned k_;
  std::vector<basis_function> omegas_;
};

/*! \brief True iff a <= b and some member of the system drops from a to b. */
bool is_jump( point const& a, point const& b, function_system const& system );

/*! \brief Monotonicity w.r.t. 0 < 1 < ... < k-1, checked on covering pairs. */
bool is_monotone( kfunction const& f );

/*! \brief Monotonicity checked on every comparable pair (slow reference). */
bool is_monotone_all_pairs( kfunction const& f );

kfunction post_negation( unsigned k );
kfunction lukasiewicz_negation( unsigned k );

enum class monotone_kind
{
  constant,   ///< n-ary constant, param = the value
  projection, ///< x_param (1-based)
  phi,        ///< unary: k-1 if z != 0, else 0
  threshold,  ///< unary lambda_j: 1 if x >= j, else 0 (1 <= j <= k-1)
  minimum,
  maximum
};

kfunction named_monotone( monotone_kind kind, unsigned param, unsigned k, unsigned n );

/*! \brief B_P = M + {x+1 mod k}. */
basis post_basis( unsigned k );
/*! \brief B_L = M + {k-1-x}. */
basis lukasiewicz_basis( unsigned k );

template<class Fn>
kfunction kfunction::from_fn( unsigned k, unsigned n, Fn&& fn, size_limits const& limits )
{
  auto const size = checked_power( k, n, limits.max_table_points );
  if ( !size )
  {
    throw size_guard_error( "value table of k^n entries exceeds the table size guard" );
  }
  std::vector<kvalue> table( *size );
  for ( std::size_t i = 0; i < *size; ++i )
  {
    table[i] = static_cast<kvalue>( fn( point_of( i, k, n ) ) );
  }
  return kfunction( k, n, std::move( table ), limits );
}

} // namespace kinv
