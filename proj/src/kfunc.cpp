#include <kinv/kfunc.hpp>

#include <algorithm>

namespace kinv
{

std::optional<std::size_t> checked_power( unsigned k, unsigned n, std::size_t cap )
{
  std::size_t result = 1u;
  for ( unsigned i = 0; i < n; ++i )
  {
    if ( k != 0u && result > cap / k )
    {
      return std::nullopt;
    }
    result *= k;
  }
  if ( result > cap )
  {
    return std::nullopt;
  }
  return result;
}

std::size_t require_analysis_size( unsigned k, unsigned n, size_limits const& limits )
{
  auto const size = checked_power( k, n, limits.max_analysis_points );
  if ( !size )
  {
    throw size_guard_error( "k^n = " + std::to_string( k ) + "^" + std::to_string( n ) +
                            " exceeds the analysis size guard of " +
                            std::to_string( limits.max_analysis_points ) + " points" );
  }
  return *size;
}

point::point( unsigned k, std::vector<kvalue> coords )
    : k_( k ), coords_( std::move( coords ) )
{
  if ( k < 2u )
  {
    throw std::invalid_argument( "k must be at least 2" );
  }
  for ( auto v : coords_ )
  {
    if ( v >= k )
    {
      throw std::invalid_argument( "point coordinate outside E_k" );
    }
  }
}

bool leq_point( point const& a, point const& b )
{
  if ( a.size() != b.size() || a.k() != b.k() )
  {
    throw std::invalid_argument( "leq_point: points of different dimension or k" );
  }
  for ( std::size_t j = 0; j < a.size(); ++j )
  {
    if ( a[j] > b[j] )
    {
      return false;
    }
  }
  return true;
}

std::size_t index_of( point const& p )
{
  std::size_t index = 0u;
  for ( auto v : p.coords() )
  {
    index = index * p.k() + v;
  }
  return index;
}

point point_of( std::size_t index, unsigned k, unsigned n )
{
  std::vector<kvalue> coords( n );
  for ( unsigned i = n; i-- > 0; )
  {
    coords[i] = static_cast<kvalue>( index % k );
    index /= k;
  }
  return point( k, std::move( coords ) );
}

kfunction::kfunction( unsigned k, unsigned n, std::vector<kvalue> table, size_limits const& limits )
    : k_( k ), n_( n ), table_( std::move( table ) )
{
  if ( k < 2u )
  {
    throw std::invalid_argument( "k must be at least 2" );
  }
  if ( k > limits.max_k || k > 256u )
  {
    throw size_guard_error( "k = " + std::to_string( k ) + " exceeds the configured cap of " +
                            std::to_string( limits.max_k ) );
  }
  auto const size = checked_power( k, n, limits.max_table_points );
  if ( !size )
  {
    throw size_guard_error( "value table of k^n entries exceeds the table size guard" );
  }
  if ( table_.size() != *size )
  {
    throw std::invalid_argument( "value table has " + std::to_string( table_.size() ) +
                                 " entries, expected k^n = " + std::to_string( *size ) );
  }
  if ( std::any_of( table_.begin(), table_.end(), [k]( kvalue v ) { return v >= k; } ) )
  {
    throw std::invalid_argument( "value table entry outside E_k" );
  }
}

kvalue kfunction::operator()( point const& p ) const
{
  if ( p.size() != n_ || p.k() != k_ )
  {
    throw std::invalid_argument( "point does not match the function's k and n" );
  }
  return table_[index_of( p )];
}

kvalue kfunction::operator()( std::span<kvalue const> args ) const
{
  std::size_t index = 0u;
  for ( auto v : args )
  {
    index = index * k_ + v;
  }
  return table_[index];
}

function_system::function_system( std::vector<kfunction> members )
    : members_( std::move( members ) )
{
  if ( members_.empty() )
  {
    throw std::invalid_argument( "a function system needs at least one member" );
  }
  k_ = members_.front().k();
  n_ = members_.front().n();
  for ( auto const& f : members_ )
  {
    if ( f.k() != k_ || f.n() != n_ )
    {
      throw std::invalid_argument( "system members must share k and n" );
    }
  }
}

basis::basis( unsigned k, std::vector<basis_function> omegas )
    : k_( k ), omegas_( std::move( omegas ) )
{
  if ( omegas_.empty() )
  {
    throw std::invalid_argument( "a basis needs at least one non-monotone function" );
  }
  for ( auto const& w : omegas_ )
  {
    if ( w.function.k() != k )
    {
      throw std::invalid_argument( "basis function '" + w.name + "' has a different k" );
    }
    if ( is_monotone( w.function ) )
    {
      throw std::invalid_argument( "basis function '" + w.name + "' is monotone; omega must be non-monotone" );
    }
  }
}

std::optional<std::size_t> basis::find( kfunction const& f ) const
{
  for ( std::size_t i = 0; i < omegas_.size(); ++i )
  {
    if ( omegas_[i].function == f )
    {
      return i;
    }
  }
  return std::nullopt;
}

bool is_jump( point const& a, point const& b, function_system const& system )
{
  if ( a.size() != system.n() || b.size() != system.n() || a.k() != system.k() || b.k() != system.k() )
  {
    throw std::invalid_argument( "is_jump: points do not match the system" );
  }
  if ( !leq_point( a, b ) )
  {
    return false;
  }
  auto const ia = index_of( a );
  auto const ib = index_of( b );
  return std::any_of( system.begin(), system.end(),
                      [&]( kfunction const& f ) { return f.at( ia ) > f.at( ib ); } );
}

bool is_monotone( kfunction const& f )
{
  auto const k = f.k();
  auto const size = f.size();
  /* stride of coordinate j is k^(n-1-j); a covering pair raises one digit by 1 */
  std::size_t stride = 1u;
  for ( unsigned j = 0; j < f.n(); ++j, stride *= k )
  {
    for ( std::size_t i = 0; i < size; ++i )
    {
      if ( ( i / stride ) % k + 1u < k && f.at( i ) > f.at( i + stride ) )
      {
        return false;
      }
    }
  }
  return true;
}

bool is_monotone_all_pairs( kfunction const& f )
{
  auto const size = f.size();
  std::vector<point> points;
  points.reserve( size );
  for ( std::size_t i = 0; i < size; ++i )
  {
    points.push_back( point_of( i, f.k(), f.n() ) );
  }
  for ( std::size_t a = 0; a < size; ++a )
  {
    for ( std::size_t b = 0; b < size; ++b )
    {
      if ( leq_point( points[a], points[b] ) && f.at( a ) > f.at( b ) )
      {
        return false;
      }
    }
  }
  return true;
}

kfunction post_negation( unsigned k )
{
  if ( k < 2u )
  {
    throw std::invalid_argument( "post_negation: k must be at least 2" );
  }
  return kfunction::from_fn( k, 1u, [k]( point const& p ) { return ( p[0] + 1u ) % k; } );
}

kfunction lukasiewicz_negation( unsigned k )
{
  if ( k < 2u )
  {
    throw std::invalid_argument( "lukasiewicz_negation: k must be at least 2" );
  }
  return kfunction::from_fn( k, 1u, [k]( point const& p ) { return k - 1u - p[0]; } );
}

kfunction named_monotone( monotone_kind kind, unsigned param, unsigned k, unsigned n )
{
  if ( k < 2u )
  {
    throw std::invalid_argument( "named_monotone: k must be at least 2" );
  }
  auto require_unary = [n]( char const* name ) {
    if ( n != 1u )
    {
      throw std::invalid_argument( std::string( name ) + " is unary" );
    }
  };

  switch ( kind )
  {
  case monotone_kind::constant:
    if ( param >= k )
    {
      throw std::invalid_argument( "constant value outside E_k" );
    }
    return kfunction::from_fn( k, n, [param]( point const& ) { return param; } );
  case monotone_kind::projection:
    if ( param < 1u || param > n )
    {
      throw std::invalid_argument( "projection index must be in 1..n" );
    }
    return kfunction::from_fn( k, n, [param]( point const& p ) { return p[param - 1u]; } );
  case monotone_kind::phi:
    require_unary( "phi" );
    return kfunction::from_fn( k, 1u, [k]( point const& p ) { return p[0] != 0u ? k - 1u : 0u; } );
  case monotone_kind::threshold:
    require_unary( "threshold" );
    if ( param < 1u || param > k - 1u )
    {
      throw std::invalid_argument( "threshold lambda_j needs 1 <= j <= k-1" );
    }
    return kfunction::from_fn( k, 1u, [param]( point const& p ) { return p[0] >= param ? 1u : 0u; } );
  case monotone_kind::minimum:
  case monotone_kind::maximum:
    if ( n < 1u )
    {
      throw std::invalid_argument( "min/max need at least one argument" );
    }
    return kfunction::from_fn( k, n, [kind]( point const& p ) {
      auto const& c = p.coords();
      return kind == monotone_kind::minimum ? *std::min_element( c.begin(), c.end() )
                                             : *std::max_element( c.begin(), c.end() );
    } );
  }
  throw std::invalid_argument( "unknown monotone kind" );
}

basis post_basis( unsigned k )
{
  return basis( k, { { "post", post_negation( k ) } } );
}

basis lukasiewicz_basis( unsigned k )
{
  return basis( k, { { "luk", lukasiewicz_negation( k ) } } );
}

} // namespace kinv
