#include <kinv/synth.hpp>

#include <algorithm>
#include <stdexcept>

namespace kinv
{

int ceil_log( long long base, long long value )
{
  if ( base < 2 || value < 1 )
  {
    throw std::invalid_argument( "ceil_log needs base >= 2 and value >= 1" );
  }
  int r = 0;
  for ( long long p = 1; p < value; p *= base )
  {
    ++r;
  }
  return r;
}

bounds_report bounds( function_system const& system, basis const& b, size_limits const& limits )
{
  if ( system.k() != b.k() )
  {
    throw std::invalid_argument( "bounds: system and basis use different k" );
  }
  auto const profile = basis_profile( b, limits );
  auto const d = decrease( system, nullptr, limits ).value;
  bounds_report report{ d, ceil_log( profile.d_B + 1, d + 1 ), ceil_log( profile.u_B, d + 1 ), std::nullopt,
                        profile.d_B, profile.u_B };
  if ( profile.d_B + 1 == profile.u_B )
  {
    report.exact = report.lower;
  }
  return report;
}

/* level partition */

level_partition compute_partition( function_system const& system, unsigned s, int R, size_limits const& limits )
{
  if ( s < 1u || R < 1 )
  {
    throw std::invalid_argument( "compute_partition needs s >= 1 and R >= 1" );
  }
  auto const size = require_analysis_size( system.k(), system.n(), limits );
  long long threshold = 1;
  for ( int i = 0; i + 1 < R; ++i )
  {
    threshold = std::min<long long>( threshold * s, static_cast<long long>( size ) + 1 );
  }

  level_partition p{ system.k(), system.n(), std::vector<std::vector<std::size_t>>( s ),
                     std::vector<std::size_t>( size, 0u ), static_cast<int>( threshold ), {}, {} };
  point_mask residual( size, true );
  for ( std::size_t i = 0; i + 1 < s; ++i )
  {
    auto const profile = decrease_profile( system, &residual, limits );
    for ( std::size_t a = 0; a < size; ++a )
    {
      if ( residual[a] && profile[a] < p.threshold )
      {
        p.classes[i].push_back( a );
        p.class_of[a] = i;
      }
    }
    for ( auto a : p.classes[i] )
    {
      residual[a] = false;
    }
  }
  for ( std::size_t a = 0; a < size; ++a )
  {
    if ( residual[a] )
    {
      p.classes[s - 1u].push_back( a );
      p.class_of[a] = s - 1u;
    }
  }

  auto const violations = check_partition( p, system, nullptr, limits );
  if ( !violations.empty() )
  {
    throw std::logic_error( "compute_partition: " + violations.front() );
  }
  return p;
}

void bind_omega( level_partition& partition, kfunction const& omega, size_limits const& limits )
{
  auto const power = inversion_power( omega, limits );
  auto const s = partition.num_classes();
  if ( static_cast<std::size_t>( power.value ) < s )
  {
    throw std::invalid_argument( "bind_omega: inversion power of omega is below the class count" );
  }
  auto const& pts = power.witness.witness.points();
  partition.beta.assign( pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>( s ) );
  partition.levels.clear();
  for ( auto const& b : partition.beta )
  {
    partition.levels.push_back( omega( b ) );
  }
}

std::vector<std::string> check_partition( level_partition const& partition, function_system const& system,
                                          kfunction const* omega, size_limits const& limits )
{
  std::vector<std::string> violations;
  auto const size = require_analysis_size( system.k(), system.n(), limits );
  if ( partition.k != system.k() || partition.n != system.n() || partition.class_of.size() != size )
  {
    violations.push_back( "partition shape does not match the system" );
    return violations;
  }

  std::vector<int> hits( size, 0 );
  for ( std::size_t i = 0; i < partition.num_classes(); ++i )
  {
    for ( auto a : partition.classes[i] )
    {
      if ( a >= size || partition.class_of[a] != i )
      {
        violations.push_back( "class lists and class_of disagree" );
        return violations;
      }
      ++hits[a];
    }
  }
  if ( std::any_of( hits.begin(), hits.end(), []( int h ) { return h != 1; } ) )
  {
    violations.push_back( "classes are not a disjoint cover of E_k^n" );
  }

  std::vector<point> points;
  points.reserve( size );
  for ( std::size_t a = 0; a < size; ++a )
  {
    points.push_back( point_of( a, system.k(), system.n() ) );
  }
  for ( std::size_t a = 0; a < size; ++a )
  {
    for ( std::size_t b = 0; b < size; ++b )
    {
      if ( partition.class_of[a] > partition.class_of[b] && leq_point( points[a], points[b] ) )
      {
        violations.push_back( "down-closure fails: a point lies below a point of an earlier class" );
        a = size;
        break;
      }
    }
  }

  for ( std::size_t i = 0; i < partition.num_classes(); ++i )
  {
    if ( partition.classes[i].empty() )
    {
      continue;
    }
    point_mask mask( size, false );
    for ( auto a : partition.classes[i] )
    {
      mask[a] = true;
    }
    if ( decrease( system, &mask, limits ).value >= partition.threshold )
    {
      violations.push_back( "class T_" + std::to_string( i + 1u ) + " contains a chain with decrease >= threshold" );
    }
  }

  if ( omega && !partition.beta.empty() )
  {
    if ( partition.beta.size() != partition.num_classes() || partition.levels.size() != partition.beta.size() )
    {
      violations.push_back( "beta chain length differs from the class count" );
    }
    else
    {
      try
      {
        chain const beta_chain( partition.beta );
        static_cast<void>( beta_chain );
      }
      catch ( std::invalid_argument const& )
      {
        violations.push_back( "beta tuples do not form an increasing chain" );
      }
      for ( std::size_t i = 0; i < partition.beta.size(); ++i )
      {
        if ( ( *omega )( partition.beta[i] ) != partition.levels[i] )
        {
          violations.push_back( "level b_i differs from omega(beta_i)" );
        }
        if ( i > 0 && partition.levels[i - 1] <= partition.levels[i] )
        {
          violations.push_back( "omega does not strictly decrease along the beta chain" );
        }
      }
    }
  }
  return violations;
}

function_system clamp_system( function_system const& system, level_partition const& partition, std::size_t i,
                              size_limits const& limits )
{
  if ( i >= partition.num_classes() )
  {
    throw std::invalid_argument( "clamp_system: class index out of range" );
  }
  auto const top = static_cast<kvalue>( system.k() - 1u );
  std::vector<kfunction> members;
  for ( auto const& f : system )
  {
    auto table = f.table();
    for ( std::size_t a = 0; a < table.size(); ++a )
    {
      auto const c = partition.class_of[a];
      table[a] = c < i ? kvalue{ 0 } : ( c > i ? top : table[a] );
    }
    members.emplace_back( system.k(), system.n(), std::move( table ), limits );
  }
  function_system clamped( std::move( members ) );
  if ( decrease( clamped, nullptr, limits ).value > partition.threshold - 1 )
  {
    throw std::logic_error( "clamp_system: clamped system exceeds threshold - 1" );
  }
  return clamped;
}

/* selector and connector */

namespace
{

kfunction min2( unsigned k )
{
  return named_monotone( monotone_kind::minimum, 0u, k, 2u );
}

kfunction max2( unsigned k )
{
  return named_monotone( monotone_kind::maximum, 0u, k, 2u );
}

/* max_i min(phi_i, v_i) with binary gates */
signal select_combine( circuit& c, std::vector<signal> const& phi, std::vector<signal> const& values )
{
  auto acc = c.add_monotone( min2( c.k() ), { phi[0], values[0] } );
  for ( std::size_t i = 1; i < phi.size(); ++i )
  {
    auto const term = c.add_monotone( min2( c.k() ), { phi[i], values[i] } );
    acc = c.add_monotone( max2( c.k() ), { acc, term } );
  }
  return acc;
}

std::vector<std::string> selector_names( std::vector<std::string> const& shared, std::size_t s )
{
  std::string prefix = "z";
  auto clashes = [&]( std::string const& p ) {
    for ( std::size_t i = 0; i < s; ++i )
    {
      if ( std::find( shared.begin(), shared.end(), p + std::to_string( i + 1u ) ) != shared.end() )
      {
        return true;
      }
    }
    return false;
  };
  while ( clashes( prefix ) )
  {
    prefix += "_";
  }
  std::vector<std::string> names;
  for ( std::size_t i = 0; i < s; ++i )
  {
    names.push_back( prefix + std::to_string( i + 1u ) );
  }
  return names;
}

circuit pad_weight( circuit const& c, int target, basis_function const& omega )
{
  auto deficit = target - inversion_weight( c );
  if ( deficit <= 0 )
  {
    return c;
  }
  circuit padded( c.k() );
  std::vector<signal> inputs;
  for ( auto const& name : c.inputs() )
  {
    inputs.push_back( padded.add_input( name ) );
  }
  auto const wi = padded.add_basis_function( omega );
  for ( ; deficit > 0; --deficit )
  {
    std::vector<signal> zeros;
    for ( unsigned j = 0; j < omega.function.n(); ++j )
    {
      zeros.push_back( padded.add_constant( 0u ) );
    }
    padded.add_omega( wi, std::move( zeros ) );
  }
  padded.set_outputs( padded.append( c, inputs ) );
  return padded;
}

circuit connect( std::vector<circuit> const& circuits, basis_function const& omega, int r )
{
  auto const k = circuits.front().k();
  auto const s = circuits.size();
  auto const& shared_names = circuits.front().inputs();
  auto const m = circuits.front().outputs().size();

  circuit g( k );
  std::vector<signal> z;
  for ( auto const& name : selector_names( shared_names, s ) )
  {
    z.push_back( g.add_input( name ) );
  }
  std::vector<signal> shared;
  for ( auto const& name : shared_names )
  {
    shared.push_back( g.add_input( name ) );
  }
  auto const phi_table = named_monotone( monotone_kind::phi, 0u, k, 1u );
  std::vector<signal> phi;
  for ( auto zi : z )
  {
    phi.push_back( g.add_monotone( phi_table, { zi } ) );
  }

  if ( r == 0 )
  {
    std::vector<std::vector<signal>> outs;
    for ( auto const& c : circuits )
    {
      outs.push_back( g.append( c, shared ) );
    }
    std::vector<signal> result;
    for ( std::size_t j = 0; j < m; ++j )
    {
      std::vector<signal> column;
      for ( std::size_t i = 0; i < s; ++i )
      {
        column.push_back( outs[i][j] );
      }
      result.push_back( select_combine( g, phi, column ) );
    }
    g.set_outputs( std::move( result ) );
    return g;
  }

  std::vector<excision> cuts;
  std::vector<circuit> residuals;
  for ( auto const& c : circuits )
  {
    cuts.push_back( excise_first_omega( c ) );
    auto const& cut = cuts.back();
    if ( !( c.basis_functions()[cut.basis_index].function == omega.function ) )
    {
      throw std::invalid_argument( "build_connector: circuit uses an omega other than the connector's" );
    }
    residuals.push_back( cut.residual );
  }
  auto const inner = connect( residuals, omega, r - 1 );

  /* the excised gate's arguments are computed by the monotone prefix before it */
  auto const q = omega.function.n();
  std::vector<std::vector<signal>> h( s );
  for ( std::size_t i = 0; i < s; ++i )
  {
    auto const node_map = g.inline_nodes( circuits[i], shared, cuts[i].position );
    for ( auto a : cuts[i].arguments )
    {
      h[i].push_back( a.from == signal::source::input ? shared[a.index] : node_map[a.index] );
    }
  }
  std::vector<signal> y_args;
  for ( unsigned l = 0; l < q; ++l )
  {
    std::vector<signal> column;
    for ( std::size_t i = 0; i < s; ++i )
    {
      column.push_back( h[i][l] );
    }
    y_args.push_back( select_combine( g, phi, column ) );
  }
  auto const y = g.add_omega( g.add_basis_function( omega ), std::move( y_args ) );

  std::vector<signal> inner_map = z;
  inner_map.insert( inner_map.end(), shared.begin(), shared.end() );
  inner_map.push_back( y );
  g.set_outputs( g.append( inner, inner_map ) );
  return g;
}

} // namespace

circuit selector_fragment( level_partition const& partition, basis_function const& omega,
                           std::vector<std::string> const& input_names )
{
  auto const k = partition.k;
  auto const n = partition.n;
  if ( input_names.size() != n || omega.function.k() != k )
  {
    throw std::invalid_argument( "selector_fragment: inputs or omega do not match the partition" );
  }
  circuit c( k );
  std::vector<signal> x;
  for ( auto const& name : input_names )
  {
    x.push_back( c.add_input( name ) );
  }
  auto const s = partition.num_classes();
  if ( s == 1u )
  {
    c.add_output( c.add_constant( 1u ) );
    return c;
  }
  if ( partition.beta.size() != s )
  {
    throw std::invalid_argument( "selector_fragment: partition has no bound beta chain" );
  }

  auto const size = partition.class_of.size();
  auto table_over_x = [&]( auto&& value_of_class ) {
    std::vector<kvalue> table( size );
    for ( std::size_t a = 0; a < size; ++a )
    {
      table[a] = static_cast<kvalue>( value_of_class( partition.class_of[a] ) );
    }
    return kfunction( k, n, std::move( table ) );
  };

  std::vector<signal> xi;
  for ( unsigned l = 0; l < omega.function.n(); ++l )
  {
    xi.push_back( c.add_monotone( table_over_x( [&]( std::size_t cls ) { return partition.beta[cls][l]; } ), x ) );
  }
  auto const w = c.add_omega( c.add_basis_function( omega ), std::move( xi ) );

  std::vector<signal> outputs;
  for ( std::size_t i = 0; i < s; ++i )
  {
    auto const level = partition.levels[i];
    auto const lambda = kfunction::from_fn( k, 1u, [level]( point const& p ) { return p[0] >= level ? 1u : 0u; } );
    auto const lam = c.add_monotone( lambda, { w } );
    auto const mu = c.add_monotone( table_over_x( [i]( std::size_t cls ) { return cls >= i ? 1u : 0u; } ), x );
    outputs.push_back( c.add_monotone( min2( k ), { lam, mu } ) );
  }
  c.set_outputs( std::move( outputs ) );
  return c;
}

circuit build_connector( std::vector<circuit> const& circuits, basis_function const& omega )
{
  if ( circuits.empty() )
  {
    throw std::invalid_argument( "build_connector needs at least one circuit" );
  }
  auto const& first = circuits.front();
  for ( auto const& c : circuits )
  {
    if ( c.k() != first.k() || c.num_inputs() != first.num_inputs() || c.outputs().size() != first.outputs().size() )
    {
      throw std::invalid_argument( "build_connector: circuits differ in k, inputs or outputs" );
    }
  }
  if ( omega.function.k() != first.k() || is_monotone( omega.function ) )
  {
    throw std::invalid_argument( "build_connector: omega must be a non-monotone function over the same k" );
  }

  if ( circuits.size() == 1u )
  {
    circuit g( first.k() );
    g.add_input( selector_names( first.inputs(), 1u ).front() );
    std::vector<signal> shared;
    for ( auto const& name : first.inputs() )
    {
      shared.push_back( g.add_input( name ) );
    }
    g.set_outputs( g.append( first, shared ) );
    return g;
  }

  int r = 0;
  for ( auto const& c : circuits )
  {
    r = std::max( r, inversion_weight( c ) );
  }
  std::vector<circuit> padded;
  for ( auto const& c : circuits )
  {
    padded.push_back( pad_weight( c, r, omega ) );
  }
  return connect( padded, omega, r );
}

bool check_connector( circuit const& connector, std::vector<function_system> const& targets,
                      size_limits const& limits )
{
  auto const s = targets.size();
  if ( s == 0u || connector.num_inputs() < s )
  {
    return false;
  }
  auto const n = static_cast<unsigned>( connector.num_inputs() - s );
  auto const size = require_analysis_size( connector.k(), n, limits );
  for ( std::size_t i = 0; i < s; ++i )
  {
    auto const& target = targets[i];
    if ( target.n() != n || target.k() != connector.k() || target.size() != connector.outputs().size() )
    {
      return false;
    }
    for ( std::size_t a = 0; a < size; ++a )
    {
      auto const x = point_of( a, connector.k(), n );
      std::vector<kvalue> assignment( s, 0u );
      assignment[i] = 1u;
      assignment.insert( assignment.end(), x.coords().begin(), x.coords().end() );
      auto const values = evaluate( connector, point( connector.k(), std::move( assignment ) ) );
      for ( std::size_t j = 0; j < target.size(); ++j )
      {
        if ( values[j] != target[j].at( a ) )
        {
          return false;
        }
      }
    }
  }
  return true;
}

/* synthesis */

namespace
{

struct synthesizer
{
  basis_function const& omega;
  unsigned s;
  synthesis_trace* trace;
  size_limits const& limits;
  std::vector<std::string> names;

  circuit run( function_system const& system, int R )
  {
    circuit c( system.k() );
    std::vector<signal> x;
    for ( auto const& name : names )
    {
      x.push_back( c.add_input( name ) );
    }
    c.add_basis_function( omega );

    if ( R == 0 )
    {
      std::vector<signal> outs;
      for ( auto const& f : system )
      {
        if ( !is_monotone( f ) )
        {
          throw std::logic_error( "synthesize: zero-decrease system with a non-monotone member" );
        }
        outs.push_back( c.add_monotone( f, x ) );
      }
      c.set_outputs( std::move( outs ) );
      return c;
    }

    auto partition = compute_partition( system, s, R, limits );
    bind_omega( partition, omega.function, limits );
    if ( trace )
    {
      trace->partitions.emplace_back( partition, system );
    }

    std::vector<function_system> clamped;
    std::vector<circuit> parts;
    for ( std::size_t i = 0; i < partition.num_classes(); ++i )
    {
      clamped.push_back( clamp_system( system, partition, i, limits ) );
      auto const d_i = decrease( clamped.back(), nullptr, limits ).value;
      parts.push_back( run( clamped.back(), ceil_log( s, d_i + 1 ) ) );
    }
    auto connector = build_connector( parts, omega );
    if ( trace )
    {
      trace->connectors.push_back( { connector, clamped } );
    }

    auto const selector = selector_fragment( partition, omega, names );
    auto inputs_of_connector = c.append( selector, x );
    inputs_of_connector.insert( inputs_of_connector.end(), x.begin(), x.end() );
    c.set_outputs( c.append( connector, inputs_of_connector ) );
    return c;
  }
};

} // namespace

circuit synthesize( function_system const& system, basis_function const& omega, synthesis_trace* trace,
                    size_limits const& limits )
{
  if ( omega.function.k() != system.k() )
  {
    throw std::invalid_argument( "synthesize: omega and system use different k" );
  }
  if ( is_monotone( omega.function ) )
  {
    throw std::invalid_argument( "synthesize: omega must be non-monotone" );
  }
  auto const s = static_cast<unsigned>( inversion_power( omega.function, limits ).value );
  auto const d = decrease( system, nullptr, limits ).value;

  std::vector<std::string> names;
  for ( unsigned i = 0; i < system.n(); ++i )
  {
    names.push_back( "x" + std::to_string( i + 1u ) );
  }
  synthesizer engine{ omega, s, trace, limits, std::move( names ) };
  return engine.run( system, ceil_log( s, d + 1 ) ).pruned().renumbered();
}

basis_function const& best_omega( basis const& b, size_limits const& limits )
{
  std::size_t best = 0u;
  int best_power = 0;
  for ( std::size_t i = 0; i < b.omegas().size(); ++i )
  {
    auto const u = inversion_power( b.omegas()[i].function, limits ).value;
    if ( u > best_power )
    {
      best_power = u;
      best = i;
    }
  }
  return b.omegas()[best];
}

basis make_standard_basis( standard_basis kind, unsigned k )
{
  return kind == standard_basis::post ? post_basis( k ) : lukasiewicz_basis( k );
}

long long shannon_t( unsigned k, unsigned n )
{
  auto const total = static_cast<long long>( k - 1u ) * n;
  return total - total / k + 1;
}

int shannon_value( unsigned k, unsigned n, std::optional<unsigned> m, standard_basis kind )
{
  if ( n < 1u )
  {
    throw std::invalid_argument( "shannon_value needs n >= 1" );
  }
  if ( m && *m < 2u )
  {
    throw std::invalid_argument( "shannon_value: the system form needs m >= 2" );
  }
  auto const profile = basis_profile( make_standard_basis( kind, k ) );
  auto const target = m ? static_cast<long long>( k - 1u ) * n + 1 : shannon_t( k, n );
  return ceil_log( profile.u_B, target );
}

} // namespace kinv
