/*!
  \file io.hpp
  \brief JSON-compatible text formats for functions, systems, bases and circuits

  function: {"k": K, "n": N, "values": [...]}
  system:   {"k": K, "n": N, "functions": [[...], ...]}
  basis:    {"k": K, "basis": [{"name": S, "values": [...]}, ...]}
  circuit:  {"k", "inputs", "basis", "nodes", "outputs"} in that key order,
            with one node per line in the canonical writer.
*/
#pragma once

#include <kinv/chains.hpp>
#include <kinv/circuit.hpp>
#include <kinv/kfunc.hpp>
#include <kinv/synth.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace kinv::io
{

class parse_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using ordered_json = nlohmann::ordered_json;

/*! \brief Accepts either a function file ("values") or a system file ("functions"). */
function_system parse_system( std::string_view text, size_limits const& limits = {} );
std::string write_system( function_system const& system );
std::string write_function( kfunction const& f );

basis parse_basis( std::string_view text, size_limits const& limits = {} );
std::string write_basis( basis const& b );

circuit parse_circuit( std::string_view text, size_limits const& limits = {} );
/*! \brief Canonical, byte-stable text form. */
std::string write_circuit( circuit const& c );

ordered_json to_json( point const& p );
ordered_json to_json( chain const& c );
ordered_json to_json( bounds_report const& report );

std::string read_file( std::string const& path );
void write_file( std::string const& path, std::string const& contents );

} // namespace kinv::io
