#include <kinv/cli.hpp>

#include <kinv/circuit.hpp>
#include <kinv/io.hpp>
#include <kinv/oracle.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace kinv::cli
{

namespace
{

std::string chain_text( chain const& c )
{
  return io::to_json( c ).dump();
}

std::string optional_text( std::optional<int> const& v )
{
  return v ? std::to_string( *v ) : std::string( "none" );
}

void write_bounds( std::ostream& out, bounds_report const& b )
{
  out << "d_B: " << b.d_B << "\n"
      << "u_B: " << b.u_B << "\n"
      << "lower: " << b.lower << "\n"
      << "upper: " << b.upper << "\n"
      << "exact: " << optional_text( b.exact ) << "\n";
}

size_limits limits_with( std::size_t max_points )
{
  size_limits limits;
  if ( max_points > 0u )
  {
    limits.max_analysis_points = max_points;
  }
  return limits;
}

int cmd_analyze( std::string const& system_path, std::string const& basis_spec, bool as_json,
                 size_limits const& limits, std::ostream& out )
{
  auto const system = io::parse_system( io::read_file( system_path ), limits );
  auto const b = resolve_basis( basis_spec, system.k(), limits );
  auto const report = analyze( system, b, limits );
  out << ( as_json ? format_json( report ) : format_text( report ) );
  return exit_code::ok;
}

int cmd_synthesize( std::string const& system_path, std::string const& basis_spec, std::string const& out_path,
                    size_limits const& limits, std::ostream& out, std::ostream& err )
{
  auto const system = io::parse_system( io::read_file( system_path ), limits );
  auto const b = resolve_basis( basis_spec, system.k(), limits );
  auto const& omega = best_omega( b, limits );
  auto const report = bounds( system, b, limits );

  auto const result = synthesize( system, omega, nullptr, limits );

  auto const weight = inversion_weight( result );
  auto const violations = validate( result, b );
  bool const realized = violations.empty() && realized_system( result, limits ) == system;
  if ( !realized || weight > report.upper )
  {
    err << "self-verification failed: "
        << ( !violations.empty() ? violations.front() : ( realized ? "weight above bound" : "realization mismatch" ) )
        << "\n";
    return exit_code::self_verification;
  }

  io::write_file( out_path, io::write_circuit( result ) );
  out << "omega: " << omega.name << "\n"
      << "weight: " << weight << "\n"
      << "d_F: " << report.d_F << "\n";
  write_bounds( out, report );
  out << "out: " << out_path << "\n";
  return exit_code::ok;
}

int cmd_verify( std::string const& circuit_path, std::string const& system_path, std::string const& basis_spec,
                size_limits const& limits, std::ostream& out, std::ostream& err )
{
  auto const c = io::parse_circuit( io::read_file( circuit_path ), limits );
  auto const system = io::parse_system( io::read_file( system_path ), limits );
  auto const b = resolve_basis( basis_spec, system.k(), limits );

  auto const violations = validate( c, b );
  if ( !violations.empty() )
  {
    for ( auto const& v : violations )
    {
      err << "invalid circuit: " << v << "\n";
    }
    return exit_code::invalid_over_basis;
  }
  if ( c.num_inputs() != system.n() || c.outputs().size() != system.size() || !( realized_system( c, limits ) == system ) )
  {
    err << "realization mismatch\n";
    return exit_code::mismatch;
  }
  if ( !check_decrease_bound( c, b, limits ) )
  {
    err << "decrease exceeds (d(B)+1)^weight - 1\n";
    return exit_code::bound_violation;
  }

  auto const report = bounds( system, b, limits );
  auto const weight = inversion_weight( c );
  out << "valid: yes\n"
      << "realizes: yes\n"
      << "weight: " << weight << "\n"
      << "d_F: " << report.d_F << "\n";
  write_bounds( out, report );
  out << "optimal: "
      << ( report.exact ? ( weight == *report.exact ? "yes" : "no" ) : ( weight <= report.lower ? "yes" : "unknown" ) )
      << "\n";
  return exit_code::ok;
}

int cmd_shannon( unsigned k, unsigned n, std::optional<unsigned> m, std::string const& basis_spec, bool scan,
                 std::uint64_t sample, std::uint64_t seed, bool as_json, std::ostream& out, std::ostream& err )
{
  if ( basis_spec != "bp" && basis_spec != "bl" )
  {
    throw io::parse_error( "shannon supports --basis bp or bl" );
  }
  auto const kind = basis_spec == "bp" ? standard_basis::post : standard_basis::lukasiewicz;
  auto const value = shannon_value( k, n, m, kind );
  auto const max_decrease = m ? static_cast<long long>( k - 1u ) * n : shannon_t( k, n ) - 1;

  io::ordered_json doc;
  doc["k"] = k;
  doc["n"] = n;
  doc["m"] = m ? io::ordered_json( *m ) : io::ordered_json( nullptr );
  doc["basis"] = basis_spec;
  doc["max_decrease_formula"] = max_decrease;
  doc["value"] = value;

  int status = exit_code::ok;
  if ( scan )
  {
    auto const members = m.value_or( 1u );
    auto const report = sample > 0u ? oracle::scan_systems( k, n, members, oracle::sampling{ sample, seed } )
                                    : oracle::scan_systems( k, n, members );
    bool const confirmed = report.sampled ? report.max_decrease <= max_decrease
                                          : report.max_decrease == max_decrease;
    doc["scan_mode"] = report.sampled ? "sampled" : "exhaustive";
    doc["scanned"] = report.scanned;
    doc["scan_max_decrease"] = report.max_decrease;
    io::ordered_json histogram = io::ordered_json::object();
    for ( auto const& [d, count] : report.histogram )
    {
      histogram[std::to_string( d )] = count;
    }
    doc["histogram"] = histogram;
    if ( report.extremal_example )
    {
      io::ordered_json ex = io::ordered_json::array();
      for ( auto const& f : *report.extremal_example )
      {
        ex.push_back( f.table() );
      }
      doc["extremal_example"] = ex;
    }
    doc["scan"] = confirmed ? "confirmed" : "mismatch";
    if ( !confirmed )
    {
      err << "scan mismatch: max decrease " << report.max_decrease << " vs formula " << max_decrease << "\n";
      status = exit_code::mismatch;
    }
  }

  if ( as_json )
  {
    out << doc.dump() << "\n";
  }
  else
  {
    for ( auto const& [key, v] : doc.items() )
    {
      if ( v.is_object() )
      {
        std::string line;
        for ( auto const& [hk, hv] : v.items() )
        {
          line += ( line.empty() ? "" : " " ) + hk + "=" + hv.dump();
        }
        out << key << ": " << line << "\n";
      }
      else
      {
        out << key << ": " << ( v.is_string() ? v.get<std::string>() : ( v.is_null() ? "none" : v.dump() ) ) << "\n";
      }
    }
  }
  return status;
}

} // namespace

analysis_report analyze( function_system const& system, basis const& b, size_limits const& limits )
{
  auto const d = decrease( system, nullptr, limits );
  auto report = bounds( system, b, limits );
  std::vector<int> u;
  std::vector<chain> witnesses;
  for ( auto const& f : system )
  {
    auto const power = inversion_power( f, limits );
    u.push_back( power.value );
    witnesses.push_back( power.witness.witness );
  }
  return { system.k(), system.n(), d.value, std::move( u ), report, d.witness.witness, std::move( witnesses ) };
}

std::string format_text( analysis_report const& report )
{
  std::ostringstream out;
  out << "k: " << report.k << "\n"
      << "n: " << report.n << "\n"
      << "members: " << report.u.size() << "\n"
      << "d_F: " << report.d_F << "\n"
      << "u:";
  for ( auto u : report.u )
  {
    out << " " << u;
  }
  out << "\n";
  write_bounds( out, report.bounds );
  out << "witness: " << chain_text( report.decrease_witness ) << "\n";
  for ( std::size_t i = 0; i < report.power_witnesses.size(); ++i )
  {
    out << "u_witness[" << i << "]: " << chain_text( report.power_witnesses[i] ) << "\n";
  }
  return out.str();
}

std::string format_json( analysis_report const& report )
{
  io::ordered_json doc;
  doc["k"] = report.k;
  doc["n"] = report.n;
  doc["d_F"] = report.d_F;
  doc["u"] = report.u;
  doc["bounds"] = io::to_json( report.bounds );
  doc["witness"] = io::to_json( report.decrease_witness );
  doc["u_witnesses"] = io::ordered_json::array();
  for ( auto const& c : report.power_witnesses )
  {
    doc["u_witnesses"].push_back( io::to_json( c ) );
  }
  return doc.dump() + "\n";
}

basis resolve_basis( std::string const& spec, unsigned k, size_limits const& limits )
{
  if ( spec == "bp" )
  {
    return post_basis( k );
  }
  if ( spec == "bl" )
  {
    return lukasiewicz_basis( k );
  }
  if ( spec.rfind( "file:", 0 ) == 0 )
  {
    auto b = io::parse_basis( io::read_file( spec.substr( 5 ) ), limits );
    if ( b.k() != k )
    {
      throw io::parse_error( "basis file k differs from the system k" );
    }
    return b;
  }
  throw io::parse_error( "basis must be bp, bl or file:PATH" );
}

int run( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Inversion complexity of k-valued logic functions" };
  app.require_subcommand( 1 );

  std::string basis_spec = "bp";
  std::size_t max_points = 0u;
  bool as_json = false;
  app.add_option( "--max-points", max_points, "Override the analysis size guard (points of E_k^n)" );

  std::string system_path;
  std::string circuit_path;
  std::string out_path;

  auto* analyze_cmd = app.add_subcommand( "analyze", "Decrease, inversion power and complexity bounds" );
  analyze_cmd->add_option( "system", system_path, "Function or system file" )->required();
  analyze_cmd->add_option( "--basis", basis_spec, "bp, bl or file:PATH" );
  analyze_cmd->add_flag( "--json", as_json, "Emit JSON instead of key: value lines" );

  auto* synth_cmd = app.add_subcommand( "synthesize", "Build a circuit with the optimal omega count" );
  synth_cmd->add_option( "system", system_path, "Function or system file" )->required();
  synth_cmd->add_option( "--basis", basis_spec, "bp, bl or file:PATH" );
  synth_cmd->add_option( "--out", out_path, "Circuit output file" )->required();

  auto* verify_cmd = app.add_subcommand( "verify", "Check a circuit against a system and basis" );
  verify_cmd->add_option( "circuit", circuit_path, "Circuit file" )->required();
  verify_cmd->add_option( "system", system_path, "Function or system file" )->required();
  verify_cmd->add_option( "--basis", basis_spec, "bp, bl or file:PATH" );

  unsigned k = 0u;
  unsigned n = 0u;
  unsigned m = 0u;
  bool scan = false;
  std::uint64_t sample = 0u;
  std::uint64_t seed = 0u;
  auto* shannon_cmd = app.add_subcommand( "shannon", "Shannon function values, optionally checked by scan" );
  shannon_cmd->add_option( "--k", k, "Logic valence" )->required()->check( CLI::Range( 2u, 16u ) );
  shannon_cmd->add_option( "--n", n, "Number of arguments" )->required()->check( CLI::PositiveNumber );
  shannon_cmd->add_option( "--m", m, "System size (>= 2); omit for single functions" );
  shannon_cmd->add_option( "--basis", basis_spec, "bp or bl" );
  shannon_cmd->add_flag( "--scan", scan, "Confirm the maximal decrease by brute force" );
  shannon_cmd->add_option( "--sample", sample, "Scan this many random systems instead of all" );
  shannon_cmd->add_option( "--seed", seed, "Seed for --sample" );
  shannon_cmd->add_flag( "--json", as_json, "Emit JSON" );

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( CLI::CallForHelp const& )
  {
    out << app.help();
    return exit_code::ok;
  }
  catch ( CLI::ParseError const& e )
  {
    err << e.what() << "\n";
    return exit_code::parse_failure;
  }

  auto const limits = limits_with( max_points );
  try
  {
    if ( analyze_cmd->parsed() )
    {
      return cmd_analyze( system_path, basis_spec, as_json, limits, out );
    }
    if ( synth_cmd->parsed() )
    {
      return cmd_synthesize( system_path, basis_spec, out_path, limits, out, err );
    }
    if ( verify_cmd->parsed() )
    {
      return cmd_verify( circuit_path, system_path, basis_spec, limits, out, err );
    }
    std::optional<unsigned> members;
    if ( shannon_cmd->count( "--m" ) > 0u )
    {
      if ( m < 2u )
      {
        throw io::parse_error( "--m must be at least 2" );
      }
      members = m;
    }
    return cmd_shannon( k, n, members, basis_spec, scan, sample, seed, as_json, out, err );
  }
  catch ( size_guard_error const& e )
  {
    err << "size guard: " << e.what() << "\n";
    return exit_code::size_guard;
  }
  catch ( io::parse_error const& e )
  {
    err << "parse error: " << e.what() << "\n";
    return exit_code::parse_failure;
  }
  catch ( std::invalid_argument const& e )
  {
    err << "invalid input: " << e.what() << "\n";
    return exit_code::parse_failure;
  }
  catch ( std::logic_error const& e )
  {
    err << "internal invariant failed: " << e.what() << "\n";
    return exit_code::self_verification;
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace kinv::cli
