#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <proofsys/branching_program.hpp>
#include <proofsys/circuit_io.hpp>
#include <proofsys/expression.hpp>
#include <proofsys/regular.hpp>
#include <proofsys/verify.hpp>

namespace proofsys::cli
{

enum ExitCode
{
  ok = 0,
  failed = 1,
  usage = 2
};

inline constexpr const char* language_help = R"(Language expressions (--lang, --expr):
  regular:<automaton-file>:<n>   threshold:<n>:<t>   exact:<n>:<t>
  cycles:<n>   ustconn:<n>   unreach:<n>
  co-sac:<verifier-file>   sac:<verifier-file>   padded:<verifier-file>[:sac]
  finite(w1, w2, ...)   union(e1, e2, ...)   reverse(e)   upclose(e)
  concat({w1, ...}, e)   concat(e, {w1, ...})
  morphism(h0, h1, e)   inverse(h0, h1, e)
Words are 0/1 strings, `eps` is the empty word. Graph words are row-major
adjacency matrices.
Exit codes: 0 pass, 1 verification failure, 2 usage or input error.)";

namespace detail
{

inline void write_file( const std::string& path, const std::string& text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !( out << text ) )
  {
    throw error( "cannot write " + path );
  }
}

struct SynthArgs
{
  std::string family;
  std::string expr;
  std::string dfa, bp, verifier, variant = "co-sac";
  std::optional<std::size_t> n, t;
  std::string out, layout;
};

inline std::size_t required( const std::optional<std::size_t>& v, const char* flag, const std::string& family )
{
  if ( !v )
  {
    throw CLI::ValidationError( family + " needs " + flag );
  }
  return *v;
}

inline int synth( const SynthArgs& a, std::ostream& out )
{
  Circuit circuit;
  std::string layout;
  const auto& f = a.family;
  if ( !a.expr.empty() )
  {
    if ( !f.empty() )
    {
      throw CLI::ValidationError( "give either a family or --expr" );
    }
    circuit = parse_system( a.expr ).circuit;
  }
  else if ( f == "regular" )
  {
    if ( a.dfa.empty() )
    {
      throw CLI::ValidationError( "regular needs --dfa" );
    }
    auto sys = synth_regular( parse_automaton( read_file( a.dfa ) ), required( a.n, "--n", f ) );
    circuit = std::move( sys.circuit );
    layout = sys.layout.to_text();
  }
  else if ( f == "structured" )
  {
    if ( a.bp.empty() )
    {
      throw CLI::ValidationError( "structured needs --bp" );
    }
    auto sys = synth_structured( parse_branching_program( read_file( a.bp ) ) );
    circuit = std::move( sys.circuit );
    layout = sys.layout.to_text();
  }
  else if ( f == "threshold" || f == "exact" )
  {
    const auto n = required( a.n, "--n", f ), t = required( a.t, "--t", f );
    auto sys = f == "threshold" ? synth_threshold( n, t ) : synth_exact_count( n, t );
    circuit = std::move( sys.circuit );
    layout = sys.layout.to_text();
  }
  else if ( f == "cycles" || f == "ustconn" || f == "unreach" )
  {
    const auto n = required( a.n, "--n", f );
    circuit = f == "cycles" ? synth_cycles( n ) : f == "ustconn" ? synth_ustconn( n ) : synth_unreach( n );
  }
  else if ( f == "co-sac" || f == "sac" || f == "padded" )
  {
    if ( a.verifier.empty() )
    {
      throw CLI::ValidationError( f + " needs --verifier" );
    }
    const auto v = parse_verifier( read_file( a.verifier ) );
    if ( f == "padded" )
    {
      if ( a.n && *a.n != v.x_bits + 2 )
      {
        throw CLI::ValidationError( "padded length must be " + std::to_string( v.x_bits + 2 ) + " for this verifier" );
      }
      circuit = padded_system( v, a.variant == "sac" ).circuit;
    }
    else
    {
      circuit = f == "sac" ? synth_sac( v ) : synth_co_sac( v );
    }
  }
  else
  {
    throw CLI::ValidationError( f.empty() ? "synth needs a family or --expr" : "unknown family '" + f + "'" );
  }
  write_file( a.out, serialize( circuit ) );
  if ( !a.layout.empty() )
  {
    if ( layout.empty() )
    {
      throw CLI::ValidationError( "this family has no proof layout" );
    }
    write_file( a.layout, layout );
  }
  out << "wrote " << a.out << ": " << circuit.num_inputs() << " inputs, " << circuit.num_outputs() << " outputs, "
      << metrics( circuit ).size << " gates\n";
  return ok;
}

} // namespace detail

/// Runs the command line `args` (without the program name).
inline int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Synthesize and check circuit proof systems", "proofsys" };
  app.footer( language_help );
  app.require_subcommand( 1 );

  detail::SynthArgs s;
  auto* synth = app.add_subcommand( "synth", "Build a proof-system circuit" );
  synth->add_option( "family", s.family,
                     "regular | structured | threshold | exact | cycles | ustconn | unreach | co-sac | sac | padded" );
  synth->add_option( "--expr", s.expr, "Language expression instead of a family" );
  synth->add_option( "--dfa", s.dfa, "Automaton file (regular)" );
  synth->add_option( "--bp", s.bp, "Branching program file (structured)" );
  synth->add_option( "--verifier", s.verifier, "Verifier file (co-sac, sac, padded)" );
  synth->add_option( "--variant", s.variant, "padded: sac or co-sac" )->check( CLI::IsMember( { "sac", "co-sac" } ) );
  synth->add_option( "--n", s.n, "Length or vertex count" );
  synth->add_option( "--t", s.t, "Count" );
  synth->add_option( "--out", s.out, "Circuit file to write" )->required();
  synth->add_option( "--layout", s.layout, "Also write the proof layout" );

  std::string circuit_file, input, lang, mode = "exhaustive", word;
  std::uint64_t budget = default_budget, seed = 1, samples = 1u << 16;
  auto* ev = app.add_subcommand( "eval", "Evaluate a circuit on one proof" );
  ev->add_option( "--circuit", circuit_file, "Circuit file" )->required();
  ev->add_option( "--input", input, "Proof bits" )->required();

  auto* verify = app.add_subcommand( "verify", "Check a circuit against a language" );
  verify->add_option( "--circuit", circuit_file, "Circuit file" )->required();
  verify->add_option( "--lang", lang, "Language expression" )->required();
  verify->add_option( "--mode", mode, "exhaustive: range equality; sample: soundness on random and mutated proofs; "
                                      "witness: completeness over the slice" )
      ->check( CLI::IsMember( { "exhaustive", "sample", "witness" } ) );
  verify->add_option( "--budget", budget, "Enumeration budget" );
  verify->add_option( "--samples", samples, "Trials in sample mode" );
  verify->add_option( "--seed", seed, "Random seed" );

  std::optional<std::size_t> bound_cone, bound_depth, bound_alt;
  auto* stats = app.add_subcommand( "stats", "Print circuit metrics, optionally against bounds" );
  stats->add_option( "--circuit", circuit_file, "Circuit file" )->required();
  stats->add_option( "--bound-cone", bound_cone, "Maximum cone size" );
  stats->add_option( "--bound-depth", bound_depth, "Maximum depth" );
  stats->add_option( "--bound-alt", bound_alt, "Maximum alternations" );

  auto* witness = app.add_subcommand( "witness", "Print a proof for a member word" );
  witness->add_option( "--lang", lang, "Language expression" )->required();
  witness->add_option( "--word", word, "Member word" )->required();

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( const CLI::ParseError& e )
  {
    // help requests exit 0 and print the (sub)command's help
    return app.exit( e, out, err ) == 0 ? ok : usage;
  }

  try
  {
    if ( synth->parsed() )
    {
      return detail::synth( s, out );
    }
    if ( ev->parsed() )
    {
      const auto c = parse_circuit( read_file( circuit_file ) );
      out << to_string( eval( c, parse_bits( input ) ) ) << "\n";
      return ok;
    }
    if ( verify->parsed() )
    {
      const auto c = parse_circuit( read_file( circuit_file ) );
      const auto sys = parse_system( lang );
      if ( sys.circuit.num_outputs() != c.num_outputs() )
      {
        err << "error: circuit has " << c.num_outputs() << " outputs, language words have length "
            << sys.circuit.num_outputs() << "\n";
        return usage;
      }
      Report r;
      if ( mode == "exhaustive" )
      {
        r = check_range( c, sys.language, budget );
      }
      else if ( mode == "sample" )
      {
        r = check_soundness( c, sys.language, { 0, samples, seed, sys.witness } );
      }
      else
      {
        r = check_completeness( c, sys.language, sys.witness, budget );
      }
      out << r.text();
      return r.pass() ? ok : failed;
    }
    if ( stats->parsed() )
    {
      const auto c = parse_circuit( read_file( circuit_file ) );
      const auto r = locality_audit( c, { bound_cone, bound_depth, bound_alt } );
      const auto& m = *r.metrics;
      out << "inputs " << c.num_inputs() << "\noutputs " << c.num_outputs() << "\nsize " << m.size << "\ndepth "
          << m.depth << "\nalternations " << m.alternations << "\nmax cone " << m.max_cone() << "\n";
      if ( r.trials > 0 )
      {
        for ( const auto& v : r.violations )
        {
          out << v.reason << "\n";
        }
        out << r.line() << "\n";
      }
      return r.pass() ? ok : failed;
    }
    if ( witness->parsed() )
    {
      const auto sys = parse_system( lang );
      const auto w = parse_bits( word );
      if ( w.size() != sys.circuit.num_outputs() )
      {
        err << "error: word has length " << w.size() << ", language words have length " << sys.circuit.num_outputs()
            << "\n";
        return usage;
      }
      try
      {
        out << to_string( sys.witness( w ) ) << "\n";
      }
      catch ( const witness_error& e )
      {
        err << "not in the language: " << e.what() << "\n";
        return failed;
      }
      return ok;
    }
  }
  catch ( const CLI::ValidationError& e )
  {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  catch ( const error& e )
  {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

} // namespace proofsys::cli
