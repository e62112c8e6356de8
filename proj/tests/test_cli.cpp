#include <catch_amalgamated.hpp>

#include <kinv/cli.hpp>
#include <kinv/io.hpp>

#include <filesystem>
#include <random>
#include <sstream>

using namespace kinv;
namespace fs = std::filesystem;

namespace
{

struct result
{
  int code;
  std::string out;
  std::string err;
};

result run( std::vector<std::string> const& args )
{
  std::ostringstream out, err;
  auto const code = cli::run( args, out, err );
  return { code, out.str(), err.str() };
}

class scratch
{
public:
  scratch()
  {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ( "kinv-cli-" + std::to_string( rd() ) );
    fs::create_directories( dir_ );
  }
  ~scratch() { fs::remove_all( dir_ ); }

  std::string file( std::string const& name, std::string const& contents ) const
  {
    auto const path = ( dir_ / name ).string();
    io::write_file( path, contents );
    return path;
  }
  std::string path( std::string const& name ) const { return ( dir_ / name ).string(); }

private:
  fs::path dir_;
};

bool has_line( std::string const& text, std::string const& line )
{
  std::istringstream in( text );
  for ( std::string l; std::getline( in, l ); )
  {
    if ( l == line )
    {
      return true;
    }
  }
  return false;
}

std::string const negations_json = R"({"k":2,"n":2,"functions":[[1,1,0,0],[1,0,1,0]]})";

/* two independent NOT gates, one per input */
std::string const two_nots = R"({
  "k": 2,
  "inputs": ["x","y"],
  "basis": [{"name":"post","values":[1,0]}],
  "nodes": [
    {"id":"nx","kind":"omega","basis":"post","args":["x"]},
    {"id":"ny","kind":"omega","basis":"post","args":["y"]}
  ],
  "outputs": ["nx","ny"]
})";

} // namespace

TEST_CASE( "analyze", "[cli]" )
{
  scratch tmp;
  auto const sys = tmp.file( "negations.json", negations_json );
  auto const text = run( { "analyze", sys } );
  REQUIRE( text.code == 0 );
  CHECK( has_line( text.out, "d_F: 2" ) );
  CHECK( has_line( text.out, "u: 2 2" ) );
  CHECK( has_line( text.out, "exact: 2" ) );
  CHECK( has_line( text.out, "witness: [[0,0],[0,1],[1,1]]" ) );

  auto const json = run( { "analyze", sys, "--json" } );
  REQUIRE( json.code == 0 );
  auto const doc = nlohmann::json::parse( json.out );
  CHECK( doc["d_F"] == 2 );
  CHECK( doc["bounds"]["exact"] == 2 );
  CHECK( doc["bounds"]["u_B"] == 2 );

  auto const neg = tmp.file( "neg.json", R"({"k":3,"n":1,"values":[2,1,0]})" );
  auto const bl = run( { "analyze", neg, "--basis", "bl", "--json" } );
  REQUIRE( bl.code == 0 );
  CHECK( nlohmann::json::parse( bl.out )["bounds"]["exact"] == 1 );

  auto const basis_file = tmp.file( "rot.json", R"({"k":3,"basis":[{"name":"rot","values":[2,0,1]}]})" );
  auto const custom = run( { "analyze", neg, "--basis", "file:" + basis_file, "--json" } );
  REQUIRE( custom.code == 0 );
  CHECK( nlohmann::json::parse( custom.out )["bounds"]["upper"] == 2 );
}

TEST_CASE( "synthesize then verify", "[cli]" )
{
  scratch tmp;
  auto const neg = tmp.file( "neg.json", R"({"k":3,"n":1,"values":[2,1,0]})" );
  for ( auto const& [spec, weight] : std::vector<std::pair<std::string, int>>{ { "bp", 2 }, { "bl", 1 } } )
  {
    auto const out = tmp.path( "neg_" + spec + ".circuit.json" );
    auto const s = run( { "synthesize", neg, "--basis", spec, "--out", out } );
    REQUIRE( s.code == 0 );
    CHECK( has_line( s.out, "weight: " + std::to_string( weight ) ) );
    auto const v = run( { "verify", out, neg, "--basis", spec } );
    REQUIRE( v.code == 0 );
    CHECK( has_line( v.out, "realizes: yes" ) );
    CHECK( has_line( v.out, "optimal: yes" ) );
    CHECK( has_line( v.out, "weight: " + std::to_string( weight ) ) );
  }
}

TEST_CASE( "verify a hand-built circuit", "[cli]" )
{
  scratch tmp;
  auto const sys = tmp.file( "negations.json", negations_json );
  auto const c = tmp.file( "two_nots.circuit.json", two_nots );
  auto const v = run( { "verify", c, sys } );
  REQUIRE( v.code == 0 );
  CHECK( has_line( v.out, "weight: 2" ) );
  CHECK( has_line( v.out, "optimal: yes" ) );
}

TEST_CASE( "exit codes", "[cli]" )
{
  scratch tmp;
  auto const sys = tmp.file( "negations.json", negations_json );
  auto const c = tmp.file( "two_nots.circuit.json", two_nots );

  CHECK( run( { "analyze", tmp.file( "bad.json", "{\"k\":2" ) } ).code == cli::parse_failure );
  CHECK( run( { "frobnicate" } ).code == cli::parse_failure );
  CHECK( run( {} ).code == cli::parse_failure );
  CHECK( run( { "analyze", sys, "--basis", "bq" } ).code == cli::parse_failure );
  CHECK( run( { "shannon", "--k", "3", "--n", "2", "--m", "1" } ).code == cli::parse_failure );
  CHECK( run( { "shannon", "--k", "1", "--n", "2" } ).code == cli::parse_failure );

  auto const guarded = run( { "--max-points", "2", "analyze", sys } );
  CHECK( guarded.code == cli::size_guard );
  CHECK( guarded.err.find( "size guard" ) != std::string::npos );
  CHECK( run( { "shannon", "--k", "3", "--n", "2", "--m", "2", "--scan" } ).code == cli::size_guard );

  auto const other = tmp.file( "nand.json", R"({"k":2,"n":2,"functions":[[1,1,1,0],[1,0,1,0]]})" );
  auto const mismatch = run( { "verify", c, other } );
  CHECK( mismatch.code == cli::mismatch );
  CHECK( mismatch.err.find( "realization mismatch" ) != std::string::npos );

  auto const luk = tmp.file( "luk.circuit.json", R"({"k":3,"inputs":["x"],"basis":[{"name":"luk","values":[2,1,0]}],
    "nodes":[{"id":"g","kind":"omega","basis":"luk","args":["x"]}],"outputs":["g"]})" );
  auto const neg = tmp.file( "neg.json", R"({"k":3,"n":1,"values":[2,1,0]})" );
  CHECK( run( { "verify", luk, neg, "--basis", "bl" } ).code == cli::ok );
  auto const invalid = run( { "verify", luk, neg, "--basis", "bp" } );
  CHECK( invalid.code == cli::invalid_over_basis );
  CHECK( invalid.err.find( "invalid circuit" ) != std::string::npos );

  CHECK( run( { "analyze", tmp.path( "missing.json" ) } ).code == cli::parse_failure );
  CHECK( run( { "synthesize", sys, "--out", tmp.path( "no/such/dir/out.json" ) } ).code == 1 );
}

TEST_CASE( "shannon", "[cli]" )
{
  auto const single = run( { "shannon", "--k", "3", "--n", "2", "--json" } );
  REQUIRE( single.code == 0 );
  auto const doc = nlohmann::json::parse( single.out );
  CHECK( doc["value"] == 2 );
  CHECK( doc["max_decrease_formula"] == 3 );

  auto const boolean = run( { "shannon", "--k", "2", "--n", "3" } );
  CHECK( has_line( boolean.out, "value: 2" ) );

  auto const system = run( { "shannon", "--k", "3", "--n", "1", "--m", "2", "--scan", "--json" } );
  REQUIRE( system.code == 0 );
  auto const sdoc = nlohmann::json::parse( system.out );
  CHECK( sdoc["value"] == 2 );
  CHECK( sdoc["scan"] == "confirmed" );
  CHECK( sdoc["scan_max_decrease"] == 2 );
  CHECK( sdoc["scanned"] == 729 );

  auto const scanned = run( { "shannon", "--k", "2", "--n", "3", "--scan" } );
  REQUIRE( scanned.code == 0 );
  CHECK( has_line( scanned.out, "scan: confirmed" ) );
  CHECK( has_line( scanned.out, "scan_max_decrease: 2" ) );

  auto const luk = run( { "shannon", "--k", "3", "--n", "1", "--basis", "bl" } );
  CHECK( has_line( luk.out, "value: 1" ) );
}

TEST_CASE( "output is deterministic", "[cli]" )
{
  scratch tmp;
  auto const sys = tmp.file( "negations.json", negations_json );
  CHECK( run( { "analyze", sys } ).out == run( { "analyze", sys } ).out );

  auto const a = tmp.path( "a.circuit.json" );
  auto const b = tmp.path( "b.circuit.json" );
  REQUIRE( run( { "synthesize", sys, "--out", a } ).code == 0 );
  REQUIRE( run( { "synthesize", sys, "--out", b } ).code == 0 );
  CHECK( io::read_file( a ) == io::read_file( b ) );

  std::vector<std::string> const sampled{ "shannon", "--k", "3", "--n", "2", "--m", "2",
                                          "--scan",  "--sample", "300", "--seed", "5" };
  auto const first = run( sampled );
  REQUIRE( first.code == 0 );
  CHECK( has_line( first.out, "scan_mode: sampled" ) );
  CHECK( first.out == run( sampled ).out );
}
