#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bits.hpp"
#include "circuit.hpp"
#include "combinators.hpp"
#include "errors.hpp"
#include "languages.hpp"

namespace proofsys
{

enum class CheckMode
{
  exhaustive,
  sampled,
  witness
};

inline const char* to_string( CheckMode mode )
{
  switch ( mode )
  {
  case CheckMode::exhaustive:
    return "exhaustive";
  case CheckMode::sampled:
    return "sampled";
  case CheckMode::witness:
    return "witness";
  }
  return "?";
}

struct Violation
{
  Bits proof;
  Bits output;
  std::string reason;
};

/// Outcome of one check. Only the first `max_recorded` violations are kept;
/// `violation_count` counts all of them.
struct Report
{
  static constexpr std::size_t max_recorded = 8;

  std::string check;
  CheckMode mode = CheckMode::exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t violation_count = 0;
  std::uint64_t mutated = 0; ///< sampled trials that were perturbed honest proofs
  std::vector<Violation> violations;
  std::optional<CircuitMetrics> metrics;

  bool pass() const noexcept { return violation_count == 0; }

  void add( Bits proof, Bits output, std::string reason )
  {
    ++violation_count;
    if ( violations.size() < max_recorded )
    {
      violations.push_back( { std::move( proof ), std::move( output ), std::move( reason ) } );
    }
  }

  /// Folds in a report of the same check over a disjoint part of the inputs.
  void merge( const Report& other )
  {
    trials += other.trials;
    mutated += other.mutated;
    for ( const auto& v : other.violations )
    {
      if ( violations.size() < max_recorded )
      {
        violations.push_back( v );
      }
    }
    violation_count += other.violation_count;
  }

  /// `PASS|FAIL <check> <trials> <violations>`
  std::string line() const
  {
    return std::string( pass() ? "PASS" : "FAIL" ) + " " + check + " " + std::to_string( trials ) + " " +
           std::to_string( violation_count );
  }

  std::string text() const
  {
    std::string out = "check " + check + " (" + to_string( mode ) + ")\n";
    out += "trials " + std::to_string( trials );
    out += mutated ? " (" + std::to_string( mutated ) + " mutated)\n" : "\n";
    out += "violations " + std::to_string( violation_count ) + "\n";
    if ( metrics )
    {
      out += "depth " + std::to_string( metrics->depth ) + ", size " + std::to_string( metrics->size ) +
             ", alternations " + std::to_string( metrics->alternations ) + ", max cone " +
             std::to_string( metrics->max_cone() ) + "\n";
    }
    for ( const auto& v : violations )
    {
      out += "  ";
      if ( !v.proof.empty() || !v.output.empty() )
      {
        out += proofsys::to_string( v.proof ) + " -> " + proofsys::to_string( v.output ) + ": ";
      }
      out += v.reason + "\n";
    }
    return out + line() + "\n";
  }
};

namespace detail
{

/// Membership with a memo table; malformed words count as non-members.
class MemberCache
{
public:
  explicit MemberCache( const LanguageSpec& spec ) : spec_( &spec ) {}

  bool operator()( const Bits& word )
  {
    auto key = proofsys::to_string( word );
    if ( const auto it = memo_.find( key ); it != memo_.end() )
    {
      return it->second;
    }
    const bool in = member_quiet( *spec_, word );
    if ( memo_.size() < ( std::size_t{ 1 } << 20 ) )
    {
      memo_.emplace( std::move( key ), in );
    }
    return in;
  }

private:
  const LanguageSpec* spec_;
  std::unordered_map<std::string, bool> memo_;
};

/// Evaluates up to 64 proofs at once and hands each (proof, output) pair to
/// `visit`.
template<typename Visit>
void eval_batch( Evaluator& ev, std::size_t m, std::span<const Bits> proofs, Visit&& visit )
{
  std::vector<std::uint64_t> lanes( m, 0 );
  for ( std::size_t l = 0; l < proofs.size(); ++l )
  {
    for ( std::size_t i = 0; i < m; ++i )
    {
      lanes[i] |= std::uint64_t{ proofs[l][i] } << l;
    }
  }
  const auto& out = ev.eval_lanes( lanes );
  Bits word( out.size() );
  for ( std::size_t l = 0; l < proofs.size(); ++l )
  {
    for ( std::size_t k = 0; k < out.size(); ++k )
    {
      word[k] = ( out[k] >> l ) & 1u;
    }
    visit( proofs[l], word );
  }
}

} // namespace detail

struct SoundnessOptions
{
  std::uint64_t budget = default_budget; ///< exhaustive when 2^m fits
  std::uint64_t samples = 1u << 16;       ///< trials in sampled mode
  std::uint64_t seed = 1;
  WitnessFn witness;                      ///< enables mutation probes
};

/*! \brief Every proof maps into the language.
 *
 * Exhaustive when 2^m <= budget. Otherwise half the trials are uniform
 * random proofs and, given a witness generator, half are honest proofs of
 * random members with 1 to 3 bits flipped.
 */
inline Report check_soundness( const Circuit& c, const LanguageSpec& spec, const SoundnessOptions& options = {} )
{
  Report r;
  r.check = "soundness";
  const auto m = c.num_inputs();
  const bool exhaustive = m < 63 && ( std::uint64_t{ 1 } << m ) <= options.budget;
  r.mode = exhaustive ? CheckMode::exhaustive : CheckMode::sampled;
  detail::MemberCache in( spec );
  Evaluator ev( c );
  auto visit = [&]( const Bits& proof, const Bits& word ) {
    ++r.trials;
    if ( !in( word ) )
    {
      r.add( proof, word, "output not in the language" );
    }
  };
  std::vector<Bits> batch;
  if ( exhaustive )
  {
    const auto total = std::uint64_t{ 1 } << m;
    for ( std::uint64_t t = 0; t < total; ++t )
    {
      batch.push_back( bits_of( t, m ) );
      if ( batch.size() == 64 || t + 1 == total )
      {
        detail::eval_batch( ev, m, batch, visit );
        batch.clear();
      }
    }
    return r;
  }
  Rng rng( options.seed );
  std::vector<Bits> pool;
  if ( options.witness )
  {
    for ( int attempt = 0; attempt < 256; ++attempt )
    {
      const auto w = random_member( spec, c.num_outputs(), rng, 256 );
      if ( !w )
      {
        continue;
      }
      try
      {
        auto proof = options.witness( *w );
        if ( proof.size() == m )
        {
          pool.push_back( std::move( proof ) );
        }
      }
      catch ( const error& )
      {
      }
    }
  }
  for ( std::uint64_t t = 0; t < options.samples; ++t )
  {
    if ( !pool.empty() && t % 2 == 1 && m > 0 )
    {
      auto proof = pool[uniform_below( rng, pool.size() )];
      const auto flips = 1 + uniform_below( rng, 3 );
      for ( std::uint64_t f = 0; f < flips; ++f )
      {
        proof[uniform_below( rng, m )] ^= 1u;
      }
      ++r.mutated;
      batch.push_back( std::move( proof ) );
    }
    else
    {
      batch.push_back( random_bits( rng, m ) );
    }
    if ( batch.size() == 64 || t + 1 == options.samples )
    {
      detail::eval_batch( ev, m, batch, visit );
      batch.clear();
    }
  }
  return r;
}

/// Every member of the slice of length c.num_outputs() has a witness that
/// the circuit maps back to it.
inline Report check_completeness( const Circuit& c, const LanguageSpec& spec, const WitnessFn& witness,
                                  std::uint64_t budget = default_budget )
{
  Report r;
  r.check = "completeness";
  r.mode = CheckMode::witness;
  Evaluator ev( c );
  for_each_member( spec, c.num_outputs(), budget, [&]( const Bits& w ) {
    ++r.trials;
    Bits proof;
    try
    {
      proof = witness( w );
    }
    catch ( const error& e )
    {
      r.add( {}, {}, "no witness for " + to_string( w ) + ": " + e.what() );
      return true;
    }
    if ( proof.size() != c.num_inputs() )
    {
      r.add( proof, w, "witness has " + std::to_string( proof.size() ) + " bits, circuit reads " +
                           std::to_string( c.num_inputs() ) );
      return true;
    }
    const auto y = ev( proof );
    if ( y != w )
    {
      r.add( proof, y, "witness for " + to_string( w ) + " maps elsewhere" );
    }
    return true;
  } );
  return r;
}

/// Range equality by full enumeration: every proof is evaluated and the set
/// of outputs compared with the slice. Needs 2^m <= budget.
inline Report check_range( const Circuit& c, const LanguageSpec& spec, std::uint64_t budget = default_budget )
{
  Report r;
  r.check = "range";
  r.mode = CheckMode::exhaustive;
  const auto m = c.num_inputs();
  if ( m >= 63 || ( std::uint64_t{ 1 } << m ) > budget )
  {
    throw budget_error( "range enumeration needs 2^" + std::to_string( m ) + " proofs, budget is " +
                        std::to_string( budget ) );
  }
  std::set<Bits> range;
  Evaluator ev( c );
  detail::MemberCache in( spec );
  std::vector<Bits> batch;
  const auto total = std::uint64_t{ 1 } << m;
  for ( std::uint64_t t = 0; t < total; ++t )
  {
    batch.push_back( bits_of( t, m ) );
    if ( batch.size() == 64 || t + 1 == total )
    {
      detail::eval_batch( ev, m, batch, [&]( const Bits& proof, const Bits& word ) {
        ++r.trials;
        if ( range.insert( word ).second && !in( word ) )
        {
          r.add( proof, word, "output not in the language" );
        }
      } );
      batch.clear();
    }
  }
  for_each_member( spec, c.num_outputs(), budget, [&]( const Bits& w ) {
    if ( !range.count( w ) )
    {
      r.add( {}, {}, "member " + to_string( w ) + " is not an output" );
    }
    return true;
  } );
  return r;
}

struct LocalityBounds
{
  std::optional<std::size_t> max_cone;
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_alternations;
};

/// Compares the metrics with the bounds; each exceeded bound is one
/// violation naming the worst output.
inline Report locality_audit( const Circuit& c, const LocalityBounds& bounds )
{
  Report r;
  r.check = "locality";
  r.mode = CheckMode::exhaustive;
  r.metrics = metrics( c );
  const auto& m = *r.metrics;
  auto audit = [&]( const char* name, const std::optional<std::size_t>& bound, const std::vector<std::size_t>& per_output ) {
    if ( !bound )
    {
      return;
    }
    ++r.trials;
    if ( per_output.empty() )
    {
      return;
    }
    const auto worst = std::max_element( per_output.begin(), per_output.end() );
    if ( *worst > *bound )
    {
      r.add( {}, {}, std::string( name ) + " " + std::to_string( *worst ) + " > " + std::to_string( *bound ) +
                         " at output " + std::to_string( worst - per_output.begin() ) );
    }
  };
  audit( "cone", bounds.max_cone, m.cone_sizes );
  audit( "depth", bounds.max_depth, m.output_depths );
  audit( "alternations", bounds.max_alternations, m.output_alternations );
  return r;
}

} // namespace proofsys
