#include <kinv/io.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace kinv::io
{

namespace
{

using json = nlohmann::json;

json parse_json( std::string_view text )
{
  try
  {
    return json::parse( text.begin(), text.end() );
  }
  catch ( json::parse_error const& e )
  {
    throw parse_error( std::string( "malformed JSON: " ) + e.what() );
  }
}

json const& field( json const& object, char const* key )
{
  if ( !object.is_object() || !object.contains( key ) )
  {
    throw parse_error( std::string( "missing field \"" ) + key + "\"" );
  }
  return object.at( key );
}

unsigned read_unsigned( json const& value, char const* what )
{
  if ( !value.is_number_integer() || value.get<long long>() < 0 || value.get<long long>() > 1'000'000 )
  {
    throw parse_error( std::string( what ) + " must be a non-negative integer" );
  }
  return value.get<unsigned>();
}

std::string read_string( json const& value, char const* what )
{
  if ( !value.is_string() )
  {
    throw parse_error( std::string( what ) + " must be a string" );
  }
  return value.get<std::string>();
}

std::vector<kvalue> read_values( json const& value, unsigned k )
{
  if ( !value.is_array() )
  {
    throw parse_error( "value table must be an array" );
  }
  std::vector<kvalue> values;
  values.reserve( value.size() );
  for ( auto const& v : value )
  {
    if ( !v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= static_cast<long long>( k ) )
    {
      throw parse_error( "value table entries must be integers in 0..k-1" );
    }
    values.push_back( static_cast<kvalue>( v.get<int>() ) );
  }
  return values;
}

/* wraps construction errors other than size guards as parse errors */
template<class Fn>
auto guarded( Fn&& fn )
{
  try
  {
    return fn();
  }
  catch ( size_guard_error const& )
  {
    throw;
  }
  catch ( parse_error const& )
  {
    throw;
  }
  catch ( std::invalid_argument const& e )
  {
    throw parse_error( e.what() );
  }
}

unsigned arity_of_table( std::size_t entries, unsigned k )
{
  unsigned n = 0u;
  std::size_t size = 1u;
  while ( size < entries )
  {
    size *= k;
    ++n;
  }
  if ( size != entries )
  {
    throw parse_error( "basis value table length is not a power of k" );
  }
  return n;
}

unsigned read_k( json const& doc, size_limits const& limits )
{
  auto const k = read_unsigned( field( doc, "k" ), "k" );
  if ( k < 2u )
  {
    throw parse_error( "k must be at least 2" );
  }
  if ( k > limits.max_k )
  {
    throw size_guard_error( "k exceeds the configured cap" );
  }
  return k;
}

ordered_json values_json( kfunction const& f )
{
  ordered_json arr = ordered_json::array();
  for ( auto v : f.table() )
  {
    arr.push_back( static_cast<int>( v ) );
  }
  return arr;
}

} // namespace

function_system parse_system( std::string_view text, size_limits const& limits )
{
  auto const doc = parse_json( text );
  auto const k = read_k( doc, limits );
  auto const n = read_unsigned( field( doc, "n" ), "n" );
  return guarded( [&] {
    std::vector<kfunction> members;
    if ( doc.contains( "values" ) )
    {
      members.emplace_back( k, n, read_values( doc.at( "values" ), k ), limits );
    }
    else
    {
      auto const& functions = field( doc, "functions" );
      if ( !functions.is_array() || functions.empty() )
      {
        throw parse_error( "\"functions\" must be a non-empty array" );
      }
      for ( auto const& values : functions )
      {
        members.emplace_back( k, n, read_values( values, k ), limits );
      }
    }
    return function_system( std::move( members ) );
  } );
}

std::string write_system( function_system const& system )
{
  ordered_json doc;
  doc["k"] = system.k();
  doc["n"] = system.n();
  doc["functions"] = ordered_json::array();
  for ( auto const& f : system )
  {
    doc["functions"].push_back( values_json( f ) );
  }
  return doc.dump() + "\n";
}

std::string write_function( kfunction const& f )
{
  ordered_json doc;
  doc["k"] = f.k();
  doc["n"] = f.n();
  doc["values"] = values_json( f );
  return doc.dump() + "\n";
}

namespace
{

std::vector<basis_function> read_basis_array( json const& arr, unsigned k, size_limits const& limits )
{
  if ( !arr.is_array() )
  {
    throw parse_error( "\"basis\" must be an array" );
  }
  std::vector<basis_function> result;
  for ( auto const& entry : arr )
  {
    auto name = read_string( field( entry, "name" ), "basis name" );
    auto values = read_values( field( entry, "values" ), k );
    auto const q = arity_of_table( values.size(), k );
    result.push_back( { std::move( name ), guarded( [&] { return kfunction( k, q, std::move( values ), limits ); } ) } );
  }
  return result;
}

} // namespace

basis parse_basis( std::string_view text, size_limits const& limits )
{
  auto const doc = parse_json( text );
  auto const k = read_k( doc, limits );
  auto omegas = read_basis_array( field( doc, "basis" ), k, limits );
  return guarded( [&] { return basis( k, std::move( omegas ) ); } );
}

std::string write_basis( basis const& b )
{
  ordered_json doc;
  doc["k"] = b.k();
  doc["basis"] = ordered_json::array();
  for ( auto const& w : b.omegas() )
  {
    ordered_json entry;
    entry["name"] = w.name;
    entry["values"] = values_json( w.function );
    doc["basis"].push_back( std::move( entry ) );
  }
  return doc.dump() + "\n";
}

circuit parse_circuit( std::string_view text, size_limits const& limits )
{
  auto const doc = parse_json( text );
  auto const k = read_k( doc, limits );

  auto const& inputs_json = field( doc, "inputs" );
  auto const& nodes_json = field( doc, "nodes" );
  auto const& outputs_json = field( doc, "outputs" );
  if ( !inputs_json.is_array() || !nodes_json.is_array() || !outputs_json.is_array() )
  {
    throw parse_error( "\"inputs\", \"nodes\" and \"outputs\" must be arrays" );
  }
  auto basis_list = read_basis_array( field( doc, "basis" ), k, limits );

  std::map<std::string, signal> names;
  std::vector<std::string> inputs;
  for ( auto const& in : inputs_json )
  {
    auto name = read_string( in, "input name" );
    if ( !names.emplace( name, signal::input( inputs.size() ) ).second )
    {
      throw parse_error( "duplicate name '" + name + "'" );
    }
    inputs.push_back( std::move( name ) );
  }
  for ( std::size_t i = 0; i < nodes_json.size(); ++i )
  {
    auto name = read_string( field( nodes_json[i], "id" ), "node id" );
    if ( !names.emplace( name, signal::node( i ) ).second )
    {
      throw parse_error( "duplicate name '" + name + "'" );
    }
  }
  auto resolve = [&]( json const& ref ) {
    auto const name = read_string( ref, "signal reference" );
    auto const it = names.find( name );
    if ( it == names.end() )
    {
      throw parse_error( "unknown signal '" + name + "'" );
    }
    return it->second;
  };

  std::vector<node> nodes;
  for ( auto const& nj : nodes_json )
  {
    auto id = read_string( field( nj, "id" ), "node id" );
    auto const kind = read_string( field( nj, "kind" ), "node kind" );
    auto const& args_json = field( nj, "args" );
    if ( !args_json.is_array() )
    {
      throw parse_error( "node args must be an array" );
    }
    std::vector<signal> args;
    for ( auto const& a : args_json )
    {
      args.push_back( resolve( a ) );
    }
    if ( kind == "monotone" )
    {
      auto values = read_values( field( nj, "table" ), k );
      auto const arity = static_cast<unsigned>( args.size() );
      auto f = guarded( [&] { return kfunction( k, arity, std::move( values ), limits ); } );
      nodes.push_back( { std::move( id ), node_kind::monotone, std::move( f ), std::move( args ), 0u } );
    }
    else if ( kind == "omega" )
    {
      auto const ref = read_string( field( nj, "basis" ), "basis reference" );
      auto const it = std::find_if( basis_list.begin(), basis_list.end(),
                                    [&]( basis_function const& w ) { return w.name == ref; } );
      if ( it == basis_list.end() )
      {
        throw parse_error( "omega gate refers to unknown basis function '" + ref + "'" );
      }
      auto const bi = static_cast<std::size_t>( it - basis_list.begin() );
      nodes.push_back( { std::move( id ), node_kind::omega, it->function, std::move( args ), bi } );
    }
    else
    {
      throw parse_error( "node kind must be \"monotone\" or \"omega\"" );
    }
  }

  std::vector<signal> outputs;
  for ( auto const& o : outputs_json )
  {
    outputs.push_back( resolve( o ) );
  }
  return circuit( k, std::move( inputs ), std::move( basis_list ), std::move( nodes ), std::move( outputs ) );
}

std::string write_circuit( circuit const& c )
{
  auto block = []( std::vector<std::string> const& lines ) {
    if ( lines.empty() )
    {
      return std::string( "[]" );
    }
    std::string out = "[\n";
    for ( std::size_t i = 0; i < lines.size(); ++i )
    {
      out += "    " + lines[i] + ( i + 1u < lines.size() ? ",\n" : "\n" );
    }
    return out + "  ]";
  };

  ordered_json inputs = ordered_json::array();
  for ( auto const& name : c.inputs() )
  {
    inputs.push_back( name );
  }

  std::vector<std::string> basis_lines;
  for ( auto const& w : c.basis_functions() )
  {
    ordered_json entry;
    entry["name"] = w.name;
    entry["values"] = values_json( w.function );
    basis_lines.push_back( entry.dump() );
  }

  std::vector<std::string> node_lines;
  for ( auto const& nd : c.nodes() )
  {
    ordered_json entry;
    entry["id"] = nd.id;
    if ( nd.kind == node_kind::monotone )
    {
      entry["kind"] = "monotone";
      entry["table"] = values_json( nd.function );
    }
    else
    {
      entry["kind"] = "omega";
      entry["basis"] = c.basis_functions().at( nd.basis_index ).name;
    }
    ordered_json args = ordered_json::array();
    for ( auto a : nd.args )
    {
      args.push_back( c.name_of( a ) );
    }
    entry["args"] = std::move( args );
    node_lines.push_back( entry.dump() );
  }

  ordered_json outputs = ordered_json::array();
  for ( auto s : c.outputs() )
  {
    outputs.push_back( c.name_of( s ) );
  }

  std::ostringstream out;
  out << "{\n"
      << "  \"k\": " << c.k() << ",\n"
      << "  \"inputs\": " << inputs.dump() << ",\n"
      << "  \"basis\": " << block( basis_lines ) << ",\n"
      << "  \"nodes\": " << block( node_lines ) << ",\n"
      << "  \"outputs\": " << outputs.dump() << "\n"
      << "}\n";
  return out.str();
}

ordered_json to_json( point const& p )
{
  ordered_json arr = ordered_json::array();
  for ( auto v : p.coords() )
  {
    arr.push_back( static_cast<int>( v ) );
  }
  return arr;
}

ordered_json to_json( chain const& c )
{
  ordered_json arr = ordered_json::array();
  for ( auto const& p : c.points() )
  {
    arr.push_back( to_json( p ) );
  }
  return arr;
}

ordered_json to_json( bounds_report const& report )
{
  ordered_json doc;
  doc["d_F"] = report.d_F;
  doc["lower"] = report.lower;
  doc["upper"] = report.upper;
  doc["exact"] = report.exact ? ordered_json( *report.exact ) : ordered_json( nullptr );
  doc["d_B"] = report.d_B;
  doc["u_B"] = report.u_B;
  return doc;
}

std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw parse_error( "cannot open '" + path + "'" );
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file( std::string const& path, std::string const& contents )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !( out << contents ) )
  {
    throw std::runtime_error( "cannot write '" + path + "'" );
  }
}

} // namespace kinv::io
