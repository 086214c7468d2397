#pragma once

#include "logic.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "semantics.hpp"
#include "setfam.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace infra::io
{

using json = nlohmann::json;

[[nodiscard]] inline json read_json_file( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        throw Error( ErrorKind::InvalidFile, "cannot open " + path );
    try
    {
        return json::parse( in );
    }
    catch ( const json::exception& e )
    {
        throw Error( ErrorKind::InvalidFile, path + ": " + e.what() );
    }
}

template < typename T >
[[nodiscard]] T field( const json& j, const char* key, const char* what )
{
    if ( !j.is_object() || !j.contains( key ) )
        throw Error( ErrorKind::InvalidFile, std::string( what ) + " lacks \"" + key + "\"" );
    try
    {
        return j.at( key ).get< T >();
    }
    catch ( const json::exception& e )
    {
        throw Error( ErrorKind::InvalidFile, std::string( what ) + " field \"" + key + "\": " + e.what() );
    }
}

[[nodiscard]] inline json labels_of( const Universe& u, mask_t bits ) { return Subset{ u, bits }.labels(); }

// ---------------------------------------------------------------------------
// Space files: {"universe": [...], "family": [[...], ...], "generalized": false}
// ---------------------------------------------------------------------------

[[nodiscard]] inline json space_to_json( const InfraTopology& t )
{
    json family = json::array();
    for ( mask_t m : t.masks() )
        family.push_back( labels_of( t.universe(), m ) );
    return { { "universe", t.universe().labels() }, { "family", family }, { "generalized", t.generalized() } };
}

[[nodiscard]] inline InfraTopology space_from_json( const json& j )
{
    const auto labels = field< std::vector< std::string > >( j, "universe", "space" );
    const auto family = field< std::vector< std::vector< std::string > > >( j, "family", "space" );
    const bool generalized = j.is_object() && j.contains( "generalized" ) ? field< bool >( j, "generalized", "space" )
                                                                          : false;
    const Universe u = Universe::make( labels );
    std::vector< mask_t > masks;
    for ( const auto& member : family )
        masks.push_back( subset_of( u, member ).bits() );
    return InfraTopology::make( u, std::move( masks ), generalized );
}

[[nodiscard]] inline InfraTopology load_space( const std::string& path ) { return space_from_json( read_json_file( path ) ); }

// ---------------------------------------------------------------------------
// Classification reports
// ---------------------------------------------------------------------------

[[nodiscard]] inline json report_to_json( const ClassificationReport& r )
{
    return {
            { "subset", r.subset.labels() },
            { "i_interior", r.i_interior.labels() },
            { "i_closure", r.i_closure.labels() },
            { "infra_open", r.infra_open },
            { "infra_closed", r.infra_closed },
            { "i_genuine", r.i_genuine },
            { "strictly_i_genuine", r.strictly_i_genuine },
            { "c_genuine", r.c_genuine },
            { "ps_infra_open", r.ps_infra_open },
            { "ps_infra_closed", r.ps_infra_closed },
            { "ps_dense", r.ps_dense },
            { "strictly_dense", r.strictly_dense },
    };
}

[[nodiscard]] inline ClassificationReport report_from_json( const Universe& u, const json& j )
{
    auto set = [ & ]( const char* key ) {
        return subset_of( u, field< std::vector< std::string > >( j, key, "report" ) );
    };
    auto flag = [ & ]( const char* key ) { return field< bool >( j, key, "report" ); };
    ClassificationReport r;
    r.subset = set( "subset" );
    r.i_interior = set( "i_interior" );
    r.i_closure = set( "i_closure" );
    r.infra_open = flag( "infra_open" );
    r.infra_closed = flag( "infra_closed" );
    r.i_genuine = flag( "i_genuine" );
    r.strictly_i_genuine = flag( "strictly_i_genuine" );
    r.c_genuine = flag( "c_genuine" );
    r.ps_infra_open = flag( "ps_infra_open" );
    r.ps_infra_closed = flag( "ps_infra_closed" );
    r.ps_dense = flag( "ps_dense" );
    r.strictly_dense = flag( "strictly_dense" );
    return r;
}

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

[[nodiscard]] inline RawModel raw_model_from_json( const json& j )
{
    RawModel raw;
    raw.worlds = field< std::vector< std::string > >( j, "worlds", "model" );
    raw.tau = field< std::vector< std::vector< std::string > > >( j, "tau", "model" );
    raw.y1 = field< std::vector< std::string > >( j, "y1", "model" );
    if ( j.contains( "y2" ) )
        raw.y2 = field< std::vector< std::string > >( j, "y2", "model" );
    if ( j.contains( "f" ) )
        raw.f = field< std::map< std::string, std::string > >( j, "f", "model" );
    if ( j.contains( "n" ) )
        raw.n = field< std::map< std::string, std::vector< std::vector< std::string > > > >( j, "n", "model" );
    if ( j.contains( "valuation" ) )
        raw.valuation = field< std::map< std::string, std::vector< std::string > > >( j, "valuation", "model" );
    return raw;
}

[[nodiscard]] inline GitModel model_from_json( const json& j ) { return validate_model( raw_model_from_json( j ) ); }

[[nodiscard]] inline GitModel load_model( const std::string& path ) { return model_from_json( read_json_file( path ) ); }

[[nodiscard]] inline json model_to_json( const GitModel& m )
{
    const auto& w = m.worlds();
    json tau = json::array();
    for ( mask_t x : m.tau().masks() )
        tau.push_back( labels_of( w, x ) );
    json f = json::object();
    json n = json::object();
    for ( std::size_t i = 0; i < m.size(); ++i )
    {
        if ( m.in_y1( i ) )
            f[ w.label( i ) ] = w.label( *m.link( i ) );
        else
        {
            json family = json::array();
            for ( mask_t s : m.neighborhoods( i ) )
                family.push_back( labels_of( w, s ) );
            n[ w.label( i ) ] = family;
        }
    }
    json valuation = json::object();
    for ( const auto& [ var, s ] : m.valuation() )
        valuation[ var ] = labels_of( w, s );
    return { { "worlds", w.labels() }, { "tau", tau },   { "y1", labels_of( w, m.y1() ) },
             { "f", f },               { "n", n },       { "valuation", valuation } };
}

// ---------------------------------------------------------------------------
// Derivation files
// ---------------------------------------------------------------------------

[[nodiscard]] inline Justification parse_justification( const std::string& text )
{
    std::istringstream in( text );
    std::string word;
    in >> word;
    std::vector< std::size_t > args;
    long long value = 0;
    while ( in >> value )
    {
        if ( value < 0 )
            throw Error( ErrorKind::InvalidFile, "negative step index in \"" + text + "\"" );
        args.push_back( static_cast< std::size_t >( value ) );
    }
    if ( !in.eof() )
        throw Error( ErrorKind::InvalidFile, "malformed justification \"" + text + "\"" );

    auto need = [ & ]( std::size_t count ) {
        if ( args.size() != count )
            throw Error( ErrorKind::InvalidFile, "\"" + word + "\" takes " + std::to_string( count ) + " index(es)" );
    };
    if ( word == "premise" )
        return need( 0 ), Justification{ just::Premise{} };
    if ( word == "axiom" )
        return need( 0 ), Justification{ just::Axiom{} };
    if ( word == "mp" )
        return need( 2 ), Justification{ just::MP{ args[ 0 ], args[ 1 ] } };
    if ( word == "re_box" )
        return need( 1 ), Justification{ just::REBox{ args[ 0 ] } };
    if ( word == "re_bbox" )
        return need( 1 ), Justification{ just::REBBox{ args[ 0 ] } };
    if ( word == "mon_box" )
        return need( 1 ), Justification{ just::MonBox{ args[ 0 ] } };
    if ( word == "nec" )
        return need( 1 ), Justification{ just::Nec{ args[ 0 ] } };
    throw Error( ErrorKind::InvalidFile, "unknown justification \"" + text + "\"" );
}

[[nodiscard]] inline Derivation derivation_from_json( const json& j )
{
    Derivation d;
    if ( j.contains( "premises" ) )
        for ( const auto& p : field< std::vector< std::string > >( j, "premises", "derivation" ) )
            d.premises.push_back( parse( p ) );
    if ( !j.contains( "steps" ) || !j.at( "steps" ).is_array() )
        throw Error( ErrorKind::InvalidFile, "derivation lacks a \"steps\" array" );
    for ( const auto& step : j.at( "steps" ) )
        d.steps.push_back( { parse( field< std::string >( step, "formula", "step" ) ),
                             parse_justification( field< std::string >( step, "by", "step" ) ) } );
    return d;
}

[[nodiscard]] inline json derivation_to_json( const Derivation& d )
{
    json premises = json::array();
    for ( const auto& p : d.premises )
        premises.push_back( render( p ) );
    json steps = json::array();
    for ( const auto& s : d.steps )
        steps.push_back( { { "formula", render( s.formula ) }, { "by", to_string( s.by ) } } );
    return { { "premises", premises }, { "steps", steps } };
}

[[nodiscard]] inline Derivation load_derivation( const std::string& path )
{
    return derivation_from_json( read_json_file( path ) );
}

// ---------------------------------------------------------------------------
// Witness bundles: a space file plus an annotation block naming A and B.
// ---------------------------------------------------------------------------

[[nodiscard]] inline json witness_case_to_json( const oracle::WitnessCase& c )
{
    json j = space_to_json( c.space );
    j[ "annotation" ] = { { "A", c.a.labels() }, { "B", c.b.labels() } };
    return j;
}

[[nodiscard]] inline json witness_to_json( const oracle::WitnessBundle& b )
{
    json j = {
            { "property", b.property },
            { "quantifier", b.quantifier == oracle::Quantifier::May ? "may" : "must" },
            { "statement", b.statement },
            { "verified", b.verified },
            { "searched", b.searched },
            { "notes", b.notes },
    };
    if ( b.witness )
        j[ "witness" ] = witness_case_to_json( *b.witness );
    if ( b.seeded )
    {
        j[ "seeded" ] = witness_case_to_json( *b.seeded );
        j[ "seeded_verifies" ] = b.seeded_verifies;
    }
    return j;
}

} // namespace infra::io
