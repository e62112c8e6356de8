#include <catch_amalgamated.hpp>

#include <kinv/synth.hpp>

#include "support/generators.hpp"

#include <algorithm>

using namespace kinv;

namespace
{

kfunction xor2()
{
  return kfunction( 2, 2, { 0, 1, 1, 0 } );
}

kfunction unary( unsigned k, std::vector<kvalue> table )
{
  return kfunction( k, 1, std::move( table ) );
}

/* classes by brute force: every subset of the residual that forms a chain is scored */
std::vector<std::vector<std::size_t>> partition_oracle( function_system const& system, unsigned s, int threshold )
{
  auto const k = system.k();
  auto const n = system.n();
  auto const size = static_cast<std::size_t>( *checked_power( k, n, 12 ) );
  std::vector<std::vector<std::size_t>> classes( s );
  std::vector<bool> residual( size, true );
  for ( unsigned i = 0; i + 1u < s; ++i )
  {
    std::vector<std::size_t> members;
    std::vector<std::size_t> pool;
    for ( std::size_t a = 0; a < size; ++a )
    {
      if ( residual[a] )
      {
        pool.push_back( a );
      }
    }
    std::vector<int> best( size, 0 );
    for ( std::size_t mask = 1; mask < ( std::size_t{ 1 } << pool.size() ); ++mask )
    {
      std::vector<point> pts;
      for ( std::size_t j = 0; j < pool.size(); ++j )
      {
        if ( mask >> j & 1u )
        {
          pts.push_back( point_of( pool[j], k, n ) );
        }
      }
      bool ordered = true;
      for ( std::size_t j = 1; j < pts.size(); ++j )
      {
        ordered = ordered && leq_point( pts[j - 1], pts[j] );
      }
      if ( !ordered )
      {
        continue;
      }
      auto const end = index_of( pts.back() );
      best[end] = std::max( best[end], decrease_over_chain( chain( pts ), system ) );
    }
    for ( auto a : pool )
    {
      if ( best[a] < threshold )
      {
        classes[i].push_back( a );
      }
    }
    for ( auto a : classes[i] )
    {
      residual[a] = false;
    }
  }
  for ( std::size_t a = 0; a < size; ++a )
  {
    if ( residual[a] )
    {
      classes[s - 1u].push_back( a );
    }
  }
  return classes;
}

circuit one_not( unsigned k, bool negate )
{
  circuit c( k );
  auto const x = c.add_input( "x1" );
  auto const w = c.add_basis_function( { "post", post_negation( k ) } );
  auto const g = c.add_omega( w, { x } );
  c.add_output( negate ? g : x );
  return c;
}

std::vector<kvalue> connector_at( circuit const& g, std::vector<kvalue> assignment )
{
  return evaluate( g, point( g.k(), std::move( assignment ) ) );
}

void check_round_trip( kfunction const& f, standard_basis kind )
{
  auto const b = make_standard_basis( kind, f.k() );
  auto const& omega = best_omega( b );
  function_system const system( { f } );
  synthesis_trace trace;
  auto const c = synthesize( system, omega, &trace );
  auto const report = bounds( system, b );

  REQUIRE( validate( c, b ).empty() );
  REQUIRE( realized_system( c )[0] == f );
  REQUIRE( report.exact );
  REQUIRE( inversion_weight( c ) == *report.exact );
  REQUIRE( inversion_weight( c ) == ceil_log( inversion_power( omega.function ).value, report.d_F + 1 ) );
  for ( auto const& [partition, target] : trace.partitions )
  {
    REQUIRE( check_partition( partition, target, &omega.function ).empty() );
    REQUIRE( partition.classes ==
             partition_oracle( target, static_cast<unsigned>( partition.num_classes() ), partition.threshold ) );
  }
  for ( auto const& record : trace.connectors )
  {
    REQUIRE( check_connector( record.connector, record.targets ) );
  }
}

} // namespace

TEST_CASE( "ceil_log", "[synth]" )
{
  CHECK( ceil_log( 2, 1 ) == 0 );
  CHECK( ceil_log( 2, 2 ) == 1 );
  CHECK( ceil_log( 2, 3 ) == 2 );
  CHECK( ceil_log( 2, 4 ) == 2 );
  CHECK( ceil_log( 2, 5 ) == 3 );
  CHECK( ceil_log( 3, 3 ) == 1 );
  CHECK( ceil_log( 3, 10 ) == 3 );
  CHECK( ceil_log( 10, 1000 ) == 3 );
  CHECK( ceil_log( 10, 1001 ) == 4 );
  CHECK_THROWS_AS( ceil_log( 1, 4 ), std::invalid_argument );
  CHECK_THROWS_AS( ceil_log( 2, 0 ), std::invalid_argument );
}

TEST_CASE( "bounds", "[synth]" )
{
  function_system const negations( { kfunction( 2, 2, { 1, 1, 0, 0 } ), kfunction( 2, 2, { 1, 0, 1, 0 } ) } );
  auto const r = bounds( negations, post_basis( 2 ) );
  CHECK( r.d_F == 2 );
  CHECK( r.lower == 2 );
  CHECK( r.upper == 2 );
  CHECK( r.exact == 2 );
  CHECK( r.d_B == 1 );
  CHECK( r.u_B == 2 );

  auto const luk = bounds( function_system( { lukasiewicz_negation( 3 ) } ), lukasiewicz_basis( 3 ) );
  CHECK( luk.d_F == 2 );
  CHECK( luk.exact == 1 );

  auto const mono = bounds( function_system( { named_monotone( monotone_kind::maximum, 0, 3, 2 ) } ),
                            post_basis( 3 ) );
  CHECK( mono.exact == 0 );

  /* d(w) + 1 > u(w) leaves the bounds apart */
  basis const wide( 4, { { "w", unary( 4, { 1, 0, 1, 0 } ) } } );
  auto const saw = kfunction::from_fn( 4, 2, []( point const& x ) {
    return static_cast<kvalue>( 3 - ( x.coords()[0] + x.coords()[1] ) % 4 );
  } );
  auto const gap = bounds( function_system( { saw } ), wide );
  CHECK( gap.d_F == 5 );
  CHECK( gap.d_B == 2 );
  CHECK( gap.u_B == 2 );
  CHECK( gap.lower == 2 );
  CHECK( gap.upper == 3 );
  CHECK_FALSE( gap.exact );

  std::mt19937_64 rng( 53 );
  for ( int t = 0; t < 100; ++t )
  {
    auto const [k, n] = testing::random_shape( rng, 27 );
    auto const b = testing::random_basis( rng, k );
    auto const report = bounds( testing::random_system( rng, k, n, 2 ), b );
    REQUIRE( report.lower <= report.upper );
    REQUIRE( report.exact.has_value() == ( report.d_B + 1 == report.u_B ) );
    if ( report.exact )
    {
      REQUIRE( *report.exact == report.lower );
      REQUIRE( *report.exact == report.upper );
    }
  }

  CHECK_THROWS_AS( bounds( negations, post_basis( 3 ) ), std::invalid_argument );
}

TEST_CASE( "level partitions", "[synth]" )
{
  function_system const x( { xor2() } );
  auto p = compute_partition( x, 2, 1 );
  CHECK( p.threshold == 1 );
  CHECK( p.classes == std::vector<std::vector<std::size_t>>{ { 0, 1, 2 }, { 3 } } );
  CHECK( p.class_of == std::vector<std::size_t>{ 0, 0, 0, 1 } );
  CHECK( p.beta.empty() );
  auto const not2 = post_negation( 2 );
  bind_omega( p, post_negation( 2 ) );
  CHECK( p.levels == std::vector<kvalue>{ 1, 0 } );
  CHECK( check_partition( p, x, &not2 ).empty() );

  function_system const mono( { named_monotone( monotone_kind::minimum, 0, 2, 2 ) } );
  auto const q = compute_partition( mono, 2, 1 );
  CHECK( q.classes == std::vector<std::vector<std::size_t>>{ { 0, 1, 2, 3 }, {} } );

  function_system const neg( { lukasiewicz_negation( 3 ) } );
  auto const r = compute_partition( neg, 2, 2 );
  CHECK( r.threshold == 2 );
  CHECK( r.classes == std::vector<std::vector<std::size_t>>{ { 0, 1 }, { 2 } } );

  /* s^R below d + 1 leaves a class with too much decrease */
  CHECK_THROWS_AS( compute_partition( neg, 1, 3 ), std::logic_error );
  CHECK_THROWS_AS( compute_partition( neg, 2, 1 ), std::logic_error );

  CHECK_THROWS_AS( compute_partition( neg, 0, 1 ), std::invalid_argument );
  CHECK_THROWS_AS( compute_partition( neg, 2, 0 ), std::invalid_argument );
  auto unbound = compute_partition( neg, 3, 1 );
  CHECK_THROWS_AS( bind_omega( unbound, post_negation( 3 ) ), std::invalid_argument );
}

TEST_CASE( "partition checks catch broken partitions", "[synth]" )
{
  function_system const x( { xor2() } );
  auto p = compute_partition( x, 2, 1 );

  auto overlap = p;
  overlap.classes[1].push_back( 2 );
  CHECK_FALSE( check_partition( overlap, x ).empty() );

  auto inverted = p;
  inverted.classes = { { 3 }, { 0, 1, 2 } };
  inverted.class_of = { 1, 1, 1, 0 };
  CHECK_FALSE( check_partition( inverted, x ).empty() );

  auto coarse = p;
  coarse.classes = { { 0, 1, 2, 3 }, {} };
  coarse.class_of = { 0, 0, 0, 0 };
  CHECK_FALSE( check_partition( coarse, x ).empty() );

  auto const not2 = post_negation( 2 );
  bind_omega( p, not2 );
  auto flat = p;
  flat.levels = { 1, 1 };
  CHECK_FALSE( check_partition( flat, x, &not2 ).empty() );
}

TEST_CASE( "partitions agree with a brute-force oracle", "[synth][property]" )
{
  std::mt19937_64 rng( 31 );
  for ( int t = 0; t < 300; ++t )
  {
    auto const [k, n] = testing::random_shape( rng, 9 );
    auto const m = std::uniform_int_distribution<unsigned>( 1u, 2u )( rng );
    auto const system = testing::random_system( rng, k, n, m );
    auto const s = std::uniform_int_distribution<unsigned>( 2u, 4u )( rng );
    auto const R = std::max( 1, ceil_log( s, decrease( system ).value + 1 ) ) +
                   std::uniform_int_distribution<int>( 0, 1 )( rng );
    auto const p = compute_partition( system, s, R );
    REQUIRE( check_partition( p, system ).empty() );
    REQUIRE( p.classes == partition_oracle( system, s, p.threshold ) );
  }
}

TEST_CASE( "clamped systems", "[synth]" )
{
  function_system const x( { xor2() } );
  auto const p = compute_partition( x, 2, 1 );
  CHECK( clamp_system( x, p, 0 )[0] == named_monotone( monotone_kind::maximum, 0, 2, 2 ) );
  CHECK( clamp_system( x, p, 1 )[0] == named_monotone( monotone_kind::constant, 0, 2, 2 ) );
  CHECK_THROWS_AS( clamp_system( x, p, 2 ), std::invalid_argument );

  std::mt19937_64 rng( 37 );
  for ( int t = 0; t < 200; ++t )
  {
    auto const [k, n] = testing::random_shape( rng, 27 );
    auto const system = testing::random_system( rng, k, n, 2 );
    auto const s = std::uniform_int_distribution<unsigned>( 2u, 3u )( rng );
    auto const d = decrease( system ).value;
    auto const R = std::max( 1, ceil_log( s, d + 1 ) );
    auto const part = compute_partition( system, s, R );
    for ( std::size_t i = 0; i < s; ++i )
    {
      auto const clamped = clamp_system( system, part, i );
      REQUIRE( decrease( clamped ).value <= part.threshold - 1 );
      for ( auto a : part.classes[i] )
      {
        REQUIRE( clamped[0].at( a ) == system[0].at( a ) );
        REQUIRE( clamped[1].at( a ) == system[1].at( a ) );
      }
    }
  }
}

TEST_CASE( "selector fragment", "[synth]" )
{
  function_system const x( { xor2() } );
  auto p = compute_partition( x, 2, 1 );
  bind_omega( p, post_negation( 2 ) );
  basis_function const omega{ "post", post_negation( 2 ) };
  auto const sel = selector_fragment( p, omega, { "x1", "x2" } );
  CHECK( inversion_weight( sel ) == 1 );
  auto const z = realized_system( sel );
  CHECK( z[0].table() == std::vector<kvalue>{ 1, 1, 1, 0 } );
  CHECK( z[1].table() == std::vector<kvalue>{ 0, 0, 0, 1 } );

  auto q = compute_partition( function_system( { lukasiewicz_negation( 3 ) } ), 3, 1 );
  bind_omega( q, lukasiewicz_negation( 3 ) );
  auto const sel3 = selector_fragment( q, { "luk", lukasiewicz_negation( 3 ) }, { "x1" } );
  CHECK( inversion_weight( sel3 ) == 1 );
  auto const z3 = realized_system( sel3 );
  CHECK( z3[0].table() == std::vector<kvalue>{ 1, 0, 0 } );
  CHECK( z3[1].table() == std::vector<kvalue>{ 0, 1, 0 } );
  CHECK( z3[2].table() == std::vector<kvalue>{ 0, 0, 1 } );

  auto one = compute_partition( function_system( { named_monotone( monotone_kind::minimum, 0, 2, 2 ) } ), 1, 1 );
  bind_omega( one, post_negation( 2 ) );
  auto const trivial = selector_fragment( one, omega, { "x1", "x2" } );
  CHECK( inversion_weight( trivial ) == 0 );
  CHECK( realized_system( trivial )[0].table() == std::vector<kvalue>{ 1, 1, 1, 1 } );
}

TEST_CASE( "connectors", "[synth]" )
{
  basis_function const omega{ "post", post_negation( 2 ) };

  circuit identity( 2 );
  identity.add_output( identity.add_input( "x1" ) );
  circuit one( 2 );
  one.add_input( "x1" );
  one.add_output( one.add_constant( 1 ) );
  auto const base = build_connector( { identity, one }, omega );
  CHECK( base.inputs() == std::vector<std::string>{ "z1", "z2", "x1" } );
  CHECK( inversion_weight( base ) == 0 );
  CHECK( connector_at( base, { 1, 0, 0 } ) == std::vector<kvalue>{ 0 } );
  CHECK( connector_at( base, { 1, 0, 1 } ) == std::vector<kvalue>{ 1 } );
  CHECK( connector_at( base, { 0, 1, 0 } ) == std::vector<kvalue>{ 1 } );
  CHECK( connector_at( base, { 0, 1, 1 } ) == std::vector<kvalue>{ 1 } );

  auto const g = build_connector( { one_not( 2, true ), one_not( 2, false ) }, omega );
  CHECK( inversion_weight( g ) == 1 );
  CHECK( validate( g, post_basis( 2 ) ).empty() );
  for ( kvalue v = 0; v < 2; ++v )
  {
    CHECK( connector_at( g, { 1, 0, v } ) == std::vector<kvalue>{ static_cast<kvalue>( 1 - v ) } );
    CHECK( connector_at( g, { 0, 1, v } ) == std::vector<kvalue>{ v } );
  }

  auto const dead = build_connector( { one_not( 2, true ) }, omega );
  CHECK( dead.inputs() == std::vector<std::string>{ "z1", "x1" } );
  CHECK( inversion_weight( dead ) == 1 );
  CHECK( connector_at( dead, { 1, 0 } ) == std::vector<kvalue>{ 1 } );
  CHECK( connector_at( dead, { 0, 1 } ) == std::vector<kvalue>{ 0 } );

  circuit clash( 2 );
  clash.add_output( clash.add_input( "z1" ) );
  auto const renamed = build_connector( { clash, clash }, omega );
  CHECK( renamed.inputs().front() == "z_1" );

  CHECK_THROWS_AS( build_connector( { one_not( 3, true ) }, omega ), std::invalid_argument );
}

TEST_CASE( "connectors on random circuits", "[synth][property]" )
{
  std::mt19937_64 rng( 41 );
  for ( int t = 0; t < 150; ++t )
  {
    auto const k = std::uniform_int_distribution<unsigned>( 2u, 3u )( rng );
    basis const b( k, { { "post", post_negation( k ) } } );
    auto const n = std::uniform_int_distribution<unsigned>( 1u, 2u )( rng );
    auto const s = std::uniform_int_distribution<std::size_t>( 1u, 3u )( rng );
    auto const outputs = testing::random_circuit( rng, b, n, 6 ).outputs().size();
    std::vector<circuit> parts;
    std::vector<function_system> targets;
    int max_weight = 0;
    while ( parts.size() < s )
    {
      auto c = testing::random_circuit( rng, b, n, 6 );
      if ( c.outputs().size() != outputs )
      {
        continue;
      }
      max_weight = std::max( max_weight, inversion_weight( c ) );
      targets.push_back( realized_system( c ) );
      parts.push_back( std::move( c ) );
    }
    auto const g = build_connector( parts, b.omegas()[0] );
    REQUIRE( validate( g, b ).empty() );
    REQUIRE( inversion_weight( g ) == max_weight );
    REQUIRE( check_connector( g, targets ) );
  }
}

TEST_CASE( "synthesis", "[synth]" )
{
  auto const post3 = best_omega( post_basis( 3 ) );
  auto const luk3 = best_omega( lukasiewicz_basis( 3 ) );

  auto const mono = synthesize( function_system( { named_monotone( monotone_kind::threshold, 1, 3, 1 ) } ), post3 );
  CHECK( inversion_weight( mono ) == 0 );
  CHECK( realized_system( mono )[0] == named_monotone( monotone_kind::threshold, 1, 3, 1 ) );

  function_system const neg( { lukasiewicz_negation( 3 ) } );
  auto const over_post = synthesize( neg, post3 );
  CHECK( inversion_weight( over_post ) == 2 );
  CHECK( realized_system( over_post ) == neg );
  auto const over_luk = synthesize( neg, luk3 );
  CHECK( inversion_weight( over_luk ) == 1 );
  CHECK( realized_system( over_luk ) == neg );

  function_system const negations( { kfunction( 2, 2, { 1, 1, 0, 0 } ), kfunction( 2, 2, { 1, 0, 1, 0 } ) } );
  auto const two = synthesize( negations, best_omega( post_basis( 2 ) ) );
  CHECK( inversion_weight( two ) == 2 );
  CHECK( realized_system( two ) == negations );
  CHECK( two.inputs() == std::vector<std::string>{ "x1", "x2" } );

  CHECK_THROWS_AS( synthesize( neg, { "min", named_monotone( monotone_kind::phi, 0, 3, 1 ) } ),
                   std::invalid_argument );
  CHECK_THROWS_AS( synthesize( neg, best_omega( post_basis( 2 ) ) ), std::invalid_argument );
}

TEST_CASE( "synthesis with other omegas", "[synth]" )
{
  basis_function const rot{ "rot", unary( 3, { 2, 0, 1 } ) };
  function_system const neg( { lukasiewicz_negation( 3 ) } );
  auto const c = synthesize( neg, rot );
  CHECK( realized_system( c ) == neg );
  CHECK( inversion_weight( c ) == 2 );

  basis_function const nand{ "nand", kfunction( 2, 2, { 1, 1, 1, 0 } ) };
  function_system const x( { xor2() } );
  auto const g = synthesize( x, nand );
  CHECK( realized_system( g ) == x );
  CHECK( inversion_weight( g ) == 1 );
  CHECK( validate( g, basis( 2, { nand } ) ).empty() );
}

TEST_CASE( "synthesis round trip over P_3(1) and P_2(2)", "[synth][property]" )
{
  for ( auto kind : { standard_basis::post, standard_basis::lukasiewicz } )
  {
    for ( auto const& f : testing::all_functions( 3, 1 ) )
    {
      check_round_trip( f, kind );
    }
    for ( auto const& f : testing::all_functions( 2, 2 ) )
    {
      check_round_trip( f, kind );
    }
  }
}

TEST_CASE( "synthesis meets the upper bound on random systems", "[synth][property]" )
{
  std::mt19937_64 rng( 43 );
  for ( int t = 0; t < 150; ++t )
  {
    auto const [k, n] = testing::random_shape( rng, 27 );
    auto const b = testing::random_basis( rng, k );
    auto const& omega = best_omega( b );
    auto const m = std::uniform_int_distribution<unsigned>( 1u, 3u )( rng );
    auto const system = testing::random_system( rng, k, n, m );
    synthesis_trace trace;
    auto const c = synthesize( system, omega, &trace );
    auto const d = decrease( system ).value;
    REQUIRE( validate( c, b ).empty() );
    REQUIRE( realized_system( c ) == system );
    REQUIRE( inversion_weight( c ) <= ceil_log( inversion_power( omega.function ).value, d + 1 ) );
    REQUIRE( check_decrease_bound( c, b ) );
    for ( auto const& [partition, target] : trace.partitions )
    {
      REQUIRE( check_partition( partition, target, &omega.function ).empty() );
    }
    for ( auto const& record : trace.connectors )
    {
      REQUIRE( check_connector( record.connector, record.targets ) );
    }
  }
}

TEST_CASE( "Shannon values", "[synth]" )
{
  CHECK( shannon_t( 3, 2 ) == 4 );
  CHECK( shannon_t( 3, 1 ) == 3 );
  CHECK( shannon_t( 2, 3 ) == 3 );
  CHECK( shannon_t( 2, 2 ) == 2 );
  CHECK( shannon_t( 2, 1 ) == 2 );
  CHECK( shannon_t( 4, 3 ) == 8 );

  CHECK( shannon_value( 3, 2, std::nullopt, standard_basis::post ) == 2 );
  CHECK( shannon_value( 2, 3, std::nullopt, standard_basis::post ) == 2 );
  CHECK( shannon_value( 3, 1, 2u, standard_basis::post ) == 2 );
  CHECK( shannon_value( 3, 2, std::nullopt, standard_basis::lukasiewicz ) == 2 );
  CHECK( shannon_value( 3, 1, std::nullopt, standard_basis::lukasiewicz ) == 1 );
  CHECK( shannon_value( 5, 2, 3u, standard_basis::lukasiewicz ) == 2 );

  for ( unsigned n = 1; n <= 8; ++n )
  {
    CHECK( shannon_t( 2, n ) - 1 == static_cast<long long>( ( n + 1 ) / 2 ) );
  }
  CHECK_THROWS_AS( shannon_value( 3, 0, std::nullopt, standard_basis::post ), std::invalid_argument );
  CHECK_THROWS_AS( shannon_value( 3, 2, 1u, standard_basis::post ), std::invalid_argument );
}
