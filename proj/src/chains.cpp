#include <kinv/chains.hpp>

#include <algorithm>
#include <numeric>

namespace kinv
{

namespace
{

/* flat coordinate store so comparable-pair tests avoid allocating */
class poset_table
{
public:
  poset_table( unsigned k, unsigned n, std::size_t size )
      : n_( n ), size_( size ), coords_( size * n )
  {
    for ( std::size_t i = 0; i < size; ++i )
    {
      auto rest = i;
      for ( unsigned j = n; j-- > 0; )
      {
        coords_[i * n + j] = static_cast<kvalue>( rest % k );
        rest /= k;
      }
    }
  }

  bool leq( std::size_t a, std::size_t b ) const
  {
    auto const* pa = &coords_[a * n_];
    auto const* pb = &coords_[b * n_];
    for ( unsigned j = 0; j < n_; ++j )
    {
      if ( pa[j] > pb[j] )
      {
        return false;
      }
    }
    return true;
  }

  std::size_t size() const noexcept { return size_; }

private:
  unsigned n_;
  std::size_t size_;
  std::vector<kvalue> coords_;
};

bool system_drops( function_system const& system, std::size_t a, std::size_t b )
{
  return std::any_of( system.begin(), system.end(),
                      [&]( kfunction const& f ) { return f.at( a ) > f.at( b ); } );
}

chain chain_from_parents( std::vector<std::ptrdiff_t> const& parent, std::size_t end, unsigned k, unsigned n )
{
  std::vector<point> points;
  for ( auto at = static_cast<std::ptrdiff_t>( end ); at >= 0; at = parent[static_cast<std::size_t>( at )] )
  {
    points.push_back( point_of( static_cast<std::size_t>( at ), k, n ) );
  }
  std::reverse( points.begin(), points.end() );
  return chain( std::move( points ) );
}

struct dp_state
{
  std::vector<int> value;
  std::vector<std::ptrdiff_t> parent;
};

dp_state run_decrease_dp( function_system const& system, point_mask const* mask, size_limits const& limits )
{
  auto const size = require_analysis_size( system.k(), system.n(), limits );
  if ( mask && mask->size() != size )
  {
    throw std::invalid_argument( "domain mask size does not match k^n" );
  }
  poset_table const poset( system.k(), system.n(), size );
  auto const order = linear_extension( system.k(), system.n() );
  auto const in_mask = [mask]( std::size_t i ) { return !mask || ( *mask )[i]; };

  dp_state state{ std::vector<int>( size, -1 ), std::vector<std::ptrdiff_t>( size, -1 ) };
  for ( std::size_t pos = 0; pos < order.size(); ++pos )
  {
    auto const b = order[pos];
    if ( !in_mask( b ) )
    {
      continue;
    }
    int best = 0;
    std::ptrdiff_t best_parent = -1;
    for ( std::size_t q = 0; q < pos; ++q )
    {
      auto const a = order[q];
      if ( !in_mask( a ) || !poset.leq( a, b ) )
      {
        continue;
      }
      auto const candidate = state.value[a] + ( system_drops( system, a, b ) ? 1 : 0 );
      if ( candidate > best ||
           ( candidate == best && best > 0 && static_cast<std::ptrdiff_t>( a ) < best_parent ) )
      {
        best = candidate;
        best_parent = static_cast<std::ptrdiff_t>( a );
      }
    }
    state.value[b] = best;
    state.parent[b] = best_parent;
  }
  return state;
}

} // namespace

chain::chain( std::vector<point> points )
    : points_( std::move( points ) )
{
  if ( points_.empty() )
  {
    throw std::invalid_argument( "a chain has at least one point" );
  }
  for ( std::size_t i = 1; i < points_.size(); ++i )
  {
    if ( !leq_point( points_[i - 1], points_[i] ) || points_[i - 1] == points_[i] )
    {
      throw std::invalid_argument( "chain points must be distinct and componentwise increasing" );
    }
  }
}

int decrease_over_chain( chain const& c, function_system const& system )
{
  int count = 0;
  auto const& pts = c.points();
  for ( std::size_t i = 1; i < pts.size(); ++i )
  {
    if ( is_jump( pts[i - 1], pts[i], system ) )
    {
      ++count;
    }
  }
  return count;
}

int inversion_power_over_chain( chain const& c, kfunction const& f )
{
  auto const& pts = c.points();
  std::vector<int> longest( pts.size(), 1 );
  for ( std::size_t i = 0; i < pts.size(); ++i )
  {
    for ( std::size_t j = 0; j < i; ++j )
    {
      if ( f( pts[j] ) > f( pts[i] ) )
      {
        longest[i] = std::max( longest[i], longest[j] + 1 );
      }
    }
  }
  return *std::max_element( longest.begin(), longest.end() );
}

std::vector<std::size_t> linear_extension( unsigned k, unsigned n )
{
  auto const size = checked_power( k, n, std::numeric_limits<std::size_t>::max() / 2 ).value();
  std::vector<std::size_t> weight( size );
  for ( std::size_t i = 0; i < size; ++i )
  {
    std::size_t sum = 0u;
    for ( auto rest = i; rest > 0; rest /= k )
    {
      sum += rest % k;
    }
    weight[i] = sum;
  }
  std::vector<std::size_t> order( size );
  std::iota( order.begin(), order.end(), std::size_t{ 0 } );
  std::stable_sort( order.begin(), order.end(),
                    [&]( std::size_t a, std::size_t b ) { return weight[a] < weight[b]; } );
  return order;
}

std::vector<int> decrease_profile( function_system const& system, point_mask const* mask, size_limits const& limits )
{
  return run_decrease_dp( system, mask, limits ).value;
}

decrease_result decrease( function_system const& system, point_mask const* mask, size_limits const& limits )
{
  auto const state = run_decrease_dp( system, mask, limits );
  std::ptrdiff_t end = -1;
  int best = -1;
  for ( std::size_t i = 0; i < state.value.size(); ++i )
  {
    if ( state.value[i] > best )
    {
      best = state.value[i];
      end = static_cast<std::ptrdiff_t>( i );
    }
  }
  if ( end < 0 )
  {
    throw std::invalid_argument( "decrease: the domain mask selects no points" );
  }
  auto witness = chain_from_parents( state.parent, static_cast<std::size_t>( end ), system.k(), system.n() );
  return { best, { std::move( witness ), best, witness_kind::decrease } };
}

inversion_power_result inversion_power( kfunction const& f, size_limits const& limits )
{
  auto const size = require_analysis_size( f.k(), f.n(), limits );
  poset_table const poset( f.k(), f.n(), size );
  auto const order = linear_extension( f.k(), f.n() );

  std::vector<int> length( size, 1 );
  std::vector<std::ptrdiff_t> parent( size, -1 );
  for ( std::size_t pos = 0; pos < order.size(); ++pos )
  {
    auto const b = order[pos];
    for ( std::size_t q = 0; q < pos; ++q )
    {
      auto const a = order[q];
      if ( f.at( a ) <= f.at( b ) || !poset.leq( a, b ) )
      {
        continue;
      }
      auto const candidate = length[a] + 1;
      if ( candidate > length[b] ||
           ( candidate == length[b] && parent[b] >= 0 && static_cast<std::ptrdiff_t>( a ) < parent[b] ) )
      {
        length[b] = candidate;
        parent[b] = static_cast<std::ptrdiff_t>( a );
      }
    }
  }
  auto const end = static_cast<std::size_t>( std::max_element( length.begin(), length.end() ) - length.begin() );
  auto witness = chain_from_parents( parent, end, f.k(), f.n() );
  return { length[end], { std::move( witness ), length[end], witness_kind::inversion_power } };
}

basis_profile_t basis_profile( basis const& b, size_limits const& limits )
{
  basis_profile_t profile{ 0, 1 };
  for ( auto const& w : b.omegas() )
  {
    profile.d_B = std::max( profile.d_B, decrease( function_system( { w.function } ), nullptr, limits ).value );
    profile.u_B = std::max( profile.u_B, inversion_power( w.function, limits ).value );
  }
  return profile;
}

} // namespace kinv
