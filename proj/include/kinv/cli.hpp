/*!
  \file cli.hpp
  \brief Command-line front end: analyze, synthesize, verify, shannon

  Exit codes: 0 ok, 2 parse/usage error, 3 size guard, 4 synthesis
  self-verification failure, 5 realization or scan mismatch, 6 circuit
  invalid over the basis, 7 circuit violates the decrease/weight bound.
*/
#pragma once

#include <kinv/chains.hpp>
#include <kinv/kfunc.hpp>
#include <kinv/synth.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace kinv::cli
{

enum exit_code : int
{
  ok = 0,
  parse_failure = 2,
  size_guard = 3,
  self_verification = 4,
  mismatch = 5,
  invalid_over_basis = 6,
  bound_violation = 7
};

struct analysis_report
{
  unsigned k;
  unsigned n;
  int d_F;
  std::vector<int> u;
  bounds_report bounds;
  chain decrease_witness;
  std::vector<chain> power_witnesses;
};

analysis_report analyze( function_system const& system, basis const& b, size_limits const& limits = {} );

std::string format_text( analysis_report const& report );
std::string format_json( analysis_report const& report );

/*! \brief "bp", "bl" or "file:PATH"; bp/bl are instantiated for `k`. */
basis resolve_basis( std::string const& spec, unsigned k, size_limits const& limits = {} );

/*! \brief Runs one command line (args excludes the program name). */
int run( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace kinv::cli
