#include <kinv/oracle.hpp>

#include <kinv/chains.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace kinv::oracle
{

namespace
{

std::size_t require_enumerable( unsigned k, unsigned n, std::size_t max_points = max_enumeration_points )
{
  auto const size = checked_power( k, n, max_points );
  if ( !size )
  {
    throw size_guard_error( "brute-force chain enumeration is limited to k^n <= " + std::to_string( max_points ) );
  }
  return *size;
}

/* strictly-above relation, listed in ascending index order */
std::vector<std::vector<std::size_t>> strict_successors( unsigned k, unsigned n, std::size_t size )
{
  std::vector<point> points;
  for ( std::size_t i = 0; i < size; ++i )
  {
    points.push_back( point_of( i, k, n ) );
  }
  std::vector<std::vector<std::size_t>> above( size );
  for ( std::size_t a = 0; a < size; ++a )
  {
    for ( std::size_t b = 0; b < size; ++b )
    {
      if ( a != b && leq_point( points[a], points[b] ) )
      {
        above[a].push_back( b );
      }
    }
  }
  return above;
}

/* calls visit(chain) for every chain of E_k^n */
void for_each_chain( unsigned k, unsigned n, std::size_t max_points,
                     std::function<void( std::vector<std::size_t> const& )> const& visit )
{
  auto const size = require_enumerable( k, n, max_points );
  auto const above = strict_successors( k, n, size );
  std::vector<std::size_t> current;
  std::function<void()> extend = [&]() {
    visit( current );
    for ( auto next : above[current.back()] )
    {
      current.push_back( next );
      extend();
      current.pop_back();
    }
  };
  for ( std::size_t start = 0; start < size; ++start )
  {
    current.assign( 1u, start );
    extend();
  }
}

std::uint64_t saturating_pow( std::uint64_t base, std::uint64_t exp )
{
  std::uint64_t result = 1u;
  for ( std::uint64_t i = 0; i < exp; ++i )
  {
    if ( base != 0u && result > ( std::uint64_t{ 1 } << 63 ) / base )
    {
      return 0u;
    }
    result *= base;
  }
  return result;
}

/* the function with number `code` in base-k digit order, entry 0 most significant */
kfunction function_from_code( unsigned k, unsigned n, std::size_t entries, std::uint64_t code )
{
  std::vector<kvalue> table( entries );
  for ( std::size_t i = entries; i-- > 0; )
  {
    table[i] = static_cast<kvalue>( code % k );
    code /= k;
  }
  return kfunction( k, n, std::move( table ) );
}

void record( scan_report& report, function_system const& system )
{
  auto const d = decrease_bruteforce( system );
  ++report.histogram[d];
  ++report.scanned;
  if ( d > report.max_decrease )
  {
    report.max_decrease = d;
    report.extremal_example = system;
  }
}

} // namespace

int decrease_bruteforce( function_system const& system, std::size_t max_points )
{
  auto const& members = system.members();
  int best = 0;
  for_each_chain( system.k(), system.n(), max_points, [&]( std::vector<std::size_t> const& c ) {
    int jumps = 0;
    for ( std::size_t i = 1; i < c.size(); ++i )
    {
      for ( auto const& f : members )
      {
        if ( f.at( c[i - 1] ) > f.at( c[i] ) )
        {
          ++jumps;
          break;
        }
      }
    }
    best = std::max( best, jumps );
  } );
  return best;
}

int inversion_power_bruteforce( kfunction const& f, std::size_t max_points )
{
  int best = 1;
  for_each_chain( f.k(), f.n(), max_points, [&]( std::vector<std::size_t> const& c ) {
    /* longest strictly decreasing subsequence of the values along c */
    std::vector<int> longest( c.size(), 1 );
    for ( std::size_t i = 0; i < c.size(); ++i )
    {
      for ( std::size_t j = 0; j < i; ++j )
      {
        if ( f.at( c[j] ) > f.at( c[i] ) )
        {
          longest[i] = std::max( longest[i], longest[j] + 1 );
        }
      }
      best = std::max( best, longest[i] );
    }
  } );
  return best;
}

void scan_report::merge( scan_report const& other )
{
  for ( auto const& [d, count] : other.histogram )
  {
    histogram[d] += count;
  }
  scanned += other.scanned;
  sampled = sampled || other.sampled;
  if ( other.max_decrease > max_decrease )
  {
    max_decrease = other.max_decrease;
    extremal_example = other.extremal_example;
  }
}

std::optional<std::uint64_t> system_space_size( unsigned k, unsigned n, unsigned m )
{
  auto const entries = checked_power( k, n, 63u );
  if ( !entries )
  {
    return std::nullopt;
  }
  auto const single = saturating_pow( k, *entries );
  if ( single == 0u )
  {
    return std::nullopt;
  }
  auto const total = saturating_pow( single, m );
  if ( total == 0u )
  {
    return std::nullopt;
  }
  return total;
}

scan_report scan_system_range( unsigned k, unsigned n, unsigned m, std::uint64_t first, std::uint64_t last )
{
  auto const entries = require_enumerable( k, n );
  auto const single = system_space_size( k, n, 1u ).value();
  scan_report report{ k, n, m, -1, {}, std::nullopt, 0u, false };
  for ( auto code = first; code < last; ++code )
  {
    std::vector<kfunction> members;
    auto rest = code;
    for ( unsigned j = 0; j < m; ++j )
    {
      members.push_back( function_from_code( k, n, entries, rest % single ) );
      rest /= single;
    }
    std::reverse( members.begin(), members.end() );
    record( report, function_system( std::move( members ) ) );
  }
  return report;
}

scan_report scan_single_functions( unsigned k, unsigned n )
{
  return scan_systems( k, n, 1u );
}

scan_report scan_systems( unsigned k, unsigned n, unsigned m, std::optional<sampling> sample )
{
  if ( m < 1u )
  {
    throw std::invalid_argument( "scan_systems needs m >= 1" );
  }
  auto const entries = require_enumerable( k, n );
  auto const space = system_space_size( k, n, m );

  if ( !sample )
  {
    if ( !space || *space > max_scan_space )
    {
      throw size_guard_error( "function space exceeds 2^26; use sampling" );
    }
    return scan_system_range( k, n, m, 0u, *space );
  }

  std::mt19937_64 rng( sample->seed );
  std::uniform_int_distribution<unsigned> digit( 0u, k - 1u );
  scan_report report{ k, n, m, -1, {}, std::nullopt, 0u, true };
  for ( std::uint64_t t = 0; t < sample->samples; ++t )
  {
    std::vector<kfunction> members;
    for ( unsigned j = 0; j < m; ++j )
    {
      std::vector<kvalue> table( entries );
      for ( auto& v : table )
      {
        v = static_cast<kvalue>( digit( rng ) );
      }
      members.emplace_back( k, n, std::move( table ) );
    }
    record( report, function_system( std::move( members ) ) );
  }
  return report;
}

} // namespace kinv::oracle
