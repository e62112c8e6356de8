#include <kinv/circuit.hpp>

#include <algorithm>

namespace kinv
{

namespace
{

bool refers_before( signal s, std::size_t num_inputs, std::size_t node_index )
{
  return s.from == signal::source::input ? s.index < num_inputs : s.index < node_index;
}

void check_args( circuit const& c, std::vector<signal> const& args )
{
  for ( auto const& a : args )
  {
    if ( !refers_before( a, c.num_inputs(), c.nodes().size() ) )
    {
      throw invalid_circuit( "gate argument refers to a missing input or node" );
    }
  }
}

signal remap( signal s, std::span<signal const> input_map, std::vector<signal> const& node_map )
{
  return s.from == signal::source::input ? input_map[s.index] : node_map[s.index];
}

} // namespace

circuit::circuit( unsigned k )
    : k_( k )
{
  if ( k < 2u )
  {
    throw std::invalid_argument( "circuit: k must be at least 2" );
  }
}

circuit::circuit( unsigned k, std::vector<std::string> inputs, std::vector<basis_function> basis,
                  std::vector<node> nodes, std::vector<signal> outputs )
    : k_( k ), inputs_( std::move( inputs ) ), basis_( std::move( basis ) ), nodes_( std::move( nodes ) ),
      outputs_( std::move( outputs ) )
{
  names_.insert( inputs_.begin(), inputs_.end() );
  for ( auto const& nd : nodes_ )
  {
    names_.insert( nd.id );
  }
}

std::string circuit::fresh_name( std::string const& stem ) const
{
  if ( !names_.contains( stem ) )
  {
    return stem;
  }
  for ( std::size_t i = 2u;; ++i )
  {
    auto candidate = stem + std::to_string( i );
    if ( !names_.contains( candidate ) )
    {
      return candidate;
    }
  }
}

std::string circuit::next_node_id()
{
  for ( ;; )
  {
    auto candidate = "g" + std::to_string( id_counter_++ );
    if ( !names_.contains( candidate ) )
    {
      return candidate;
    }
  }
}

signal circuit::add_input( std::string name )
{
  if ( !names_.insert( name ).second )
  {
    throw std::invalid_argument( "duplicate input name '" + name + "'" );
  }
  inputs_.push_back( std::move( name ) );
  return signal::input( inputs_.size() - 1u );
}

std::size_t circuit::add_basis_function( basis_function const& w )
{
  if ( w.function.k() != k_ )
  {
    throw std::invalid_argument( "basis function has a different k" );
  }
  for ( std::size_t i = 0; i < basis_.size(); ++i )
  {
    if ( basis_[i].function == w.function )
    {
      return i;
    }
  }
  auto name = w.name;
  while ( std::any_of( basis_.begin(), basis_.end(), [&]( auto const& e ) { return e.name == name; } ) )
  {
    name += "'";
  }
  basis_.push_back( { std::move( name ), w.function } );
  return basis_.size() - 1u;
}

signal circuit::add_monotone( kfunction f, std::vector<signal> args )
{
  if ( f.k() != k_ || f.n() != args.size() )
  {
    throw invalid_circuit( "gate table does not match k or the argument count" );
  }
  check_args( *this, args );
  auto id = next_node_id();
  names_.insert( id );
  nodes_.push_back( { std::move( id ), node_kind::monotone, std::move( f ), std::move( args ), 0u } );
  return signal::node( nodes_.size() - 1u );
}

signal circuit::add_omega( std::size_t basis_index, std::vector<signal> args )
{
  if ( basis_index >= basis_.size() )
  {
    throw invalid_circuit( "omega gate refers to an undeclared basis function" );
  }
  auto const& f = basis_[basis_index].function;
  if ( f.n() != args.size() )
  {
    throw invalid_circuit( "omega gate argument count does not match its arity" );
  }
  check_args( *this, args );
  auto id = next_node_id();
  names_.insert( id );
  nodes_.push_back( { std::move( id ), node_kind::omega, f, std::move( args ), basis_index } );
  return signal::node( nodes_.size() - 1u );
}

signal circuit::add_constant( kvalue c )
{
  return add_monotone( named_monotone( monotone_kind::constant, c, k_, 0u ), {} );
}

void circuit::add_output( signal s )
{
  if ( !refers_before( s, inputs_.size(), nodes_.size() ) )
  {
    throw invalid_circuit( "output refers to a missing input or node" );
  }
  outputs_.push_back( s );
}

void circuit::set_outputs( std::vector<signal> outputs )
{
  outputs_.clear();
  for ( auto s : outputs )
  {
    add_output( s );
  }
}

std::vector<signal> circuit::inline_nodes( circuit const& other, std::span<signal const> input_map,
                                           std::size_t node_count )
{
  if ( other.k() != k_ )
  {
    throw std::invalid_argument( "inline_nodes: circuits over different k" );
  }
  if ( input_map.size() != other.num_inputs() )
  {
    throw std::invalid_argument( "inline_nodes: input map does not cover every input" );
  }
  node_count = std::min( node_count, other.nodes().size() );
  std::vector<signal> node_map;
  node_map.reserve( node_count );
  for ( std::size_t i = 0; i < node_count; ++i )
  {
    auto const& nd = other.nodes()[i];
    std::vector<signal> args;
    args.reserve( nd.args.size() );
    for ( auto a : nd.args )
    {
      args.push_back( remap( a, input_map, node_map ) );
    }
    if ( nd.kind == node_kind::omega )
    {
      auto const bi = add_basis_function( other.basis_functions()[nd.basis_index] );
      node_map.push_back( add_omega( bi, std::move( args ) ) );
    }
    else
    {
      node_map.push_back( add_monotone( nd.function, std::move( args ) ) );
    }
  }
  return node_map;
}

std::vector<signal> circuit::append( circuit const& other, std::span<signal const> input_map )
{
  auto const node_map = inline_nodes( other, input_map, other.nodes().size() );
  std::vector<signal> outs;
  outs.reserve( other.outputs().size() );
  for ( auto s : other.outputs() )
  {
    outs.push_back( remap( s, input_map, node_map ) );
  }
  return outs;
}

circuit circuit::pruned() const
{
  std::vector<bool> live( nodes_.size(), false );
  for ( auto s : outputs_ )
  {
    if ( s.from == signal::source::node )
    {
      live[s.index] = true;
    }
  }
  for ( std::size_t i = nodes_.size(); i-- > 0; )
  {
    if ( nodes_[i].kind == node_kind::omega )
    {
      live[i] = true;
    }
    if ( !live[i] )
    {
      continue;
    }
    for ( auto a : nodes_[i].args )
    {
      if ( a.from == signal::source::node )
      {
        live[a.index] = true;
      }
    }
  }

  std::vector<signal> node_map( nodes_.size(), signal::node( 0u ) );
  std::vector<node> kept;
  for ( std::size_t i = 0; i < nodes_.size(); ++i )
  {
    if ( !live[i] )
    {
      continue;
    }
    auto nd = nodes_[i];
    for ( auto& a : nd.args )
    {
      if ( a.from == signal::source::node )
      {
        a = node_map[a.index];
      }
    }
    node_map[i] = signal::node( kept.size() );
    kept.push_back( std::move( nd ) );
  }
  std::vector<signal> outputs;
  for ( auto s : outputs_ )
  {
    outputs.push_back( s.from == signal::source::input ? s : node_map[s.index] );
  }
  return circuit( k_, inputs_, basis_, std::move( kept ), std::move( outputs ) );
}

circuit circuit::renumbered() const
{
  auto copy_nodes = nodes_;
  for ( std::size_t i = 0; i < copy_nodes.size(); ++i )
  {
    copy_nodes[i].id = "g" + std::to_string( i );
  }
  circuit result( k_, inputs_, basis_, std::move( copy_nodes ), outputs_ );
  result.id_counter_ = nodes_.size();
  return result;
}

std::string const& circuit::name_of( signal s ) const
{
  return s.from == signal::source::input ? inputs_.at( s.index ) : nodes_.at( s.index ).id;
}

namespace
{

std::vector<std::string> collect_violations( circuit const& c, basis const* b )
{
  std::vector<std::string> violations;
  if ( b && b->k() != c.k() )
  {
    violations.push_back( "circuit k differs from basis k" );
  }

  std::set<std::string> seen;
  for ( auto const& name : c.inputs() )
  {
    if ( !seen.insert( name ).second )
    {
      violations.push_back( "duplicate name '" + name + "'" );
    }
  }
  for ( auto const& nd : c.nodes() )
  {
    if ( !seen.insert( nd.id ).second )
    {
      violations.push_back( "duplicate name '" + nd.id + "'" );
    }
  }
  for ( auto const& w : c.basis_functions() )
  {
    if ( w.function.k() != c.k() )
    {
      violations.push_back( "basis function '" + w.name + "' has a different k" );
    }
  }

  for ( std::size_t i = 0; i < c.nodes().size(); ++i )
  {
    auto const& nd = c.nodes()[i];
    auto const where = "node " + nd.id + ": ";
    for ( auto a : nd.args )
    {
      if ( !refers_before( a, c.num_inputs(), i ) )
      {
        violations.push_back( where + "argument does not refer to an earlier node or input" );
      }
    }
    if ( nd.function.k() != c.k() )
    {
      violations.push_back( where + "gate function has a different k" );
    }
    if ( nd.function.n() != nd.args.size() )
    {
      violations.push_back( where + "arity does not match the argument count" );
    }
    if ( nd.kind == node_kind::monotone )
    {
      if ( !is_monotone( nd.function ) )
      {
        violations.push_back( where + "non-monotone table in weight-0 gate" );
      }
      continue;
    }
    if ( nd.basis_index >= c.basis_functions().size() ||
         !( c.basis_functions()[nd.basis_index].function == nd.function ) )
    {
      violations.push_back( where + "omega gate does not match its declared basis function" );
    }
    if ( is_monotone( nd.function ) )
    {
      violations.push_back( where + "ω must be non-monotone" );
    }
    else if ( b && !b->find( nd.function ) )
    {
      violations.push_back( where + "omega gate function is not in the basis" );
    }
  }

  if ( c.outputs().empty() )
  {
    violations.push_back( "circuit has no outputs" );
  }
  for ( auto s : c.outputs() )
  {
    if ( !refers_before( s, c.num_inputs(), c.nodes().size() ) )
    {
      violations.push_back( "output refers to a missing input or node" );
    }
  }
  return violations;
}

/* evaluates every node into `values`; assumes check_structure passed */
void evaluate_into( circuit const& c, std::span<kvalue const> inputs, std::vector<kvalue>& values )
{
  values.resize( c.nodes().size() );
  std::vector<kvalue> args;
  for ( std::size_t i = 0; i < c.nodes().size(); ++i )
  {
    auto const& nd = c.nodes()[i];
    args.clear();
    for ( auto a : nd.args )
    {
      args.push_back( a.from == signal::source::input ? inputs[a.index] : values[a.index] );
    }
    values[i] = nd.function( std::span<kvalue const>( args ) );
  }
}

kvalue read_signal( signal s, std::span<kvalue const> inputs, std::vector<kvalue> const& values )
{
  return s.from == signal::source::input ? inputs[s.index] : values[s.index];
}

} // namespace

std::vector<std::string> validate( circuit const& c, basis const& b )
{
  return collect_violations( c, &b );
}

std::vector<std::string> validate( circuit const& c )
{
  return collect_violations( c, nullptr );
}

void check_structure( circuit const& c )
{
  for ( std::size_t i = 0; i < c.nodes().size(); ++i )
  {
    auto const& nd = c.nodes()[i];
    if ( nd.function.k() != c.k() || nd.function.n() != nd.args.size() )
    {
      throw invalid_circuit( "node " + nd.id + ": arity or k mismatch" );
    }
    for ( auto a : nd.args )
    {
      if ( !refers_before( a, c.num_inputs(), i ) )
      {
        throw invalid_circuit( "node " + nd.id + ": argument does not refer to an earlier node or input" );
      }
    }
  }
  for ( auto s : c.outputs() )
  {
    if ( !refers_before( s, c.num_inputs(), c.nodes().size() ) )
    {
      throw invalid_circuit( "output refers to a missing input or node" );
    }
  }
}

std::vector<kvalue> evaluate( circuit const& c, point const& assignment )
{
  check_structure( c );
  if ( assignment.size() != c.num_inputs() || assignment.k() != c.k() )
  {
    throw std::invalid_argument( "evaluate: assignment does not match the circuit inputs" );
  }
  std::vector<kvalue> values;
  auto const& in = assignment.coords();
  evaluate_into( c, in, values );
  std::vector<kvalue> result;
  for ( auto s : c.outputs() )
  {
    result.push_back( read_signal( s, in, values ) );
  }
  return result;
}

function_system realized_system( circuit const& c, size_limits const& limits )
{
  check_structure( c );
  if ( c.outputs().empty() )
  {
    throw invalid_circuit( "circuit has no outputs" );
  }
  auto const n = static_cast<unsigned>( c.num_inputs() );
  auto const size = require_analysis_size( c.k(), n, limits );
  std::vector<std::vector<kvalue>> tables( c.outputs().size(), std::vector<kvalue>( size ) );
  std::vector<kvalue> values;
  for ( std::size_t i = 0; i < size; ++i )
  {
    auto const p = point_of( i, c.k(), n );
    evaluate_into( c, p.coords(), values );
    for ( std::size_t o = 0; o < c.outputs().size(); ++o )
    {
      tables[o][i] = read_signal( c.outputs()[o], p.coords(), values );
    }
  }
  std::vector<kfunction> members;
  for ( auto& t : tables )
  {
    members.emplace_back( c.k(), n, std::move( t ), limits );
  }
  return function_system( std::move( members ) );
}

int inversion_weight( circuit const& c )
{
  return static_cast<int>( std::count_if( c.nodes().begin(), c.nodes().end(),
                                          []( node const& nd ) { return nd.kind == node_kind::omega; } ) );
}

excision excise_first_omega( circuit const& c )
{
  auto const it = std::find_if( c.nodes().begin(), c.nodes().end(),
                                []( node const& nd ) { return nd.kind == node_kind::omega; } );
  if ( it == c.nodes().end() )
  {
    throw std::invalid_argument( "excise_first_omega: circuit has no omega gate" );
  }
  auto const position = static_cast<std::size_t>( it - c.nodes().begin() );
  auto const y_input = c.num_inputs();

  auto inputs = c.inputs();
  inputs.push_back( c.fresh_name( "y" ) );

  auto shift = [&]( signal s ) {
    if ( s.from == signal::source::input || s.index < position )
    {
      return s;
    }
    return s.index == position ? signal::input( y_input ) : signal::node( s.index - 1u );
  };

  std::vector<node> nodes;
  nodes.reserve( c.nodes().size() - 1u );
  for ( std::size_t i = 0; i < c.nodes().size(); ++i )
  {
    if ( i == position )
    {
      continue;
    }
    auto nd = c.nodes()[i];
    for ( auto& a : nd.args )
    {
      a = shift( a );
    }
    nodes.push_back( std::move( nd ) );
  }
  std::vector<signal> outputs;
  for ( auto s : c.outputs() )
  {
    outputs.push_back( shift( s ) );
  }

  return { circuit( c.k(), std::move( inputs ), c.basis_functions(), std::move( nodes ), std::move( outputs ) ),
           it->args, it->basis_index, y_input, position };
}

circuit reinsert_omega( excision const& e )
{
  auto const& r = e.residual;
  auto inputs = r.inputs();
  inputs.erase( inputs.begin() + static_cast<std::ptrdiff_t>( e.y_input ) );

  auto shift = [&]( signal s ) {
    if ( s.from == signal::source::input )
    {
      if ( s.index == e.y_input )
      {
        return signal::node( e.position );
      }
      return signal::input( s.index > e.y_input ? s.index - 1u : s.index );
    }
    return s.index < e.position ? s : signal::node( s.index + 1u );
  };

  std::vector<node> nodes;
  for ( std::size_t i = 0; i <= r.nodes().size(); ++i )
  {
    if ( i == e.position )
    {
      std::vector<signal> args;
      for ( auto a : e.arguments )
      {
        args.push_back( shift( a ) );
      }
      auto const& w = r.basis_functions().at( e.basis_index );
      nodes.push_back( { r.fresh_name( "g" ), node_kind::omega, w.function, std::move( args ), e.basis_index } );
    }
    if ( i == r.nodes().size() )
    {
      break;
    }
    auto nd = r.nodes()[i];
    for ( auto& a : nd.args )
    {
      a = shift( a );
    }
    nodes.push_back( std::move( nd ) );
  }
  std::vector<signal> outputs;
  for ( auto s : r.outputs() )
  {
    outputs.push_back( shift( s ) );
  }
  return circuit( r.k(), std::move( inputs ), r.basis_functions(), std::move( nodes ), std::move( outputs ) );
}

bool check_decrease_bound( circuit const& c, basis const& b, size_limits const& limits )
{
  auto const violations = validate( c, b );
  if ( !violations.empty() )
  {
    throw invalid_circuit( "check_decrease_bound: " + violations.front() );
  }
  auto const d = decrease( realized_system( c, limits ), nullptr, limits ).value;
  auto const base = static_cast<long long>( basis_profile( b, limits ).d_B ) + 1;
  long long bound = 1;
  for ( int i = 0; i < inversion_weight( c ) && bound <= d; ++i )
  {
    bound *= base;
  }
  return static_cast<long long>( d ) <= bound - 1;
}

} // namespace kinv
