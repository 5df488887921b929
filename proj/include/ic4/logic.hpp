#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ic4
{

enum class var_role : std::uint8_t
{
    state_current,
    state_next,
    input,
    auxiliary
};

class var
{
    std::uint32_t _index = 0;

public:
    constexpr var() = default;
    constexpr explicit var( std::uint32_t index ) : _index{ index } {}

    [[nodiscard]] constexpr std::uint32_t index() const { return _index; }

    constexpr auto operator<=>( const var& ) const = default;
};

// Encoded as 2 * var + sign, sign = 1 for the negative polarity.
class literal
{
    std::uint32_t _code = 0;

    constexpr explicit literal( std::uint32_t code, int /* raw */ ) : _code{ code } {}

public:
    constexpr literal() = default;
    constexpr explicit literal( var v, bool negative = false )
        : _code{ 2 * v.index() + ( negative ? 1u : 0u ) } {}

    [[nodiscard]] static constexpr literal from_code( std::uint32_t code ) { return literal{ code, 0 }; }

    [[nodiscard]] constexpr var variable() const { return var{ _code >> 1 }; }
    [[nodiscard]] constexpr bool negative() const { return ( _code & 1u ) != 0; }
    [[nodiscard]] constexpr std::uint32_t code() const { return _code; }

    // The literal's value under the given value of its variable.
    [[nodiscard]] constexpr bool holds( bool var_value ) const { return var_value != negative(); }

    [[nodiscard]] constexpr literal operator!() const { return literal{ _code ^ 1u, 0 }; }

    [[nodiscard]] constexpr literal substitute( var v ) const { return literal{ v, negative() }; }

    constexpr auto operator<=>( const literal& ) const = default;
};

// DIMACS-style rendering: variable index + 1, minus sign for negative.
std::string to_string( literal lit );

// Thrown when a clause or cube would contain both polarities of a variable.
class tautology_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a state is queried on a variable outside its domain.
class domain_error : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

namespace detail
{

// Sorts by variable index, drops duplicates, rejects complementary pairs.
std::vector< literal > canonicalize( std::vector< literal > lits );

} // namespace detail

class cube;

class clause
{
    std::vector< literal > _literals;

    struct trusted {};
    clause( std::vector< literal > lits, trusted ) : _literals{ std::move( lits ) } {}

    friend class cube;

public:
    clause() = default;
    explicit clause( std::vector< literal > lits ) : _literals{ detail::canonicalize( std::move( lits ) ) } {}
    clause( std::initializer_list< literal > lits ) : clause{ std::vector< literal >( lits ) } {}

    [[nodiscard]] std::span< const literal > literals() const { return _literals; }
    [[nodiscard]] std::size_t size() const { return _literals.size(); }
    [[nodiscard]] bool empty() const { return _literals.empty(); }
    [[nodiscard]] auto begin() const { return _literals.begin(); }
    [[nodiscard]] auto end() const { return _literals.end(); }

    [[nodiscard]] bool contains( literal lit ) const { return std::ranges::binary_search( _literals, lit ); }

    // Copy of this clause without the literal at position `pos`.
    [[nodiscard]] clause without( std::size_t pos ) const;

    // True iff the literals of this clause form a subset of that's literals.
    [[nodiscard]] bool subsumes( const clause& that ) const
    {
        return size() <= that.size() && std::ranges::includes( that._literals, _literals );
    }

    auto operator<=>( const clause& ) const = default;
};

class cube
{
    std::vector< literal > _literals;

    struct trusted {};
    cube( std::vector< literal > lits, trusted ) : _literals{ std::move( lits ) } {}

    friend class clause;

public:
    cube() = default;
    explicit cube( std::vector< literal > lits ) : _literals{ detail::canonicalize( std::move( lits ) ) } {}
    cube( std::initializer_list< literal > lits ) : cube{ std::vector< literal >( lits ) } {}

    [[nodiscard]] std::span< const literal > literals() const { return _literals; }
    [[nodiscard]] std::size_t size() const { return _literals.size(); }
    [[nodiscard]] bool empty() const { return _literals.empty(); }
    [[nodiscard]] auto begin() const { return _literals.begin(); }
    [[nodiscard]] auto end() const { return _literals.end(); }

    [[nodiscard]] clause negate() const;

    auto operator<=>( const cube& ) const = default;
};

[[nodiscard]] clause negate_cube( const cube& c );
[[nodiscard]] cube negate_clause( const clause& c );

// Full assignment to the state-current variables 0 .. size() - 1.
class state
{
    std::vector< bool > _values;

public:
    state() = default;
    explicit state( std::vector< bool > values ) : _values{ std::move( values ) } {}

    [[nodiscard]] std::size_t size() const { return _values.size(); }
    [[nodiscard]] bool operator[]( std::size_t i ) const { return _values[ i ]; }
    [[nodiscard]] const std::vector< bool >& values() const { return _values; }

    // Throws domain_error if the variable is not one of this state's.
    [[nodiscard]] bool value( var v ) const;

    // Bit i of the result is latch i. Requires size() <= 64.
    [[nodiscard]] std::uint64_t pack() const;
    [[nodiscard]] static state unpack( std::uint64_t bits, std::size_t size );

    auto operator<=>( const state& ) const = default;
};

[[nodiscard]] cube state_to_cube( const state& s );

// True iff some literal of cl is true in s. Throws domain_error when cl
// mentions a variable s does not assign.
[[nodiscard]] bool satisfies( const state& s, const clause& cl );

// True iff s agrees with every literal of c.
[[nodiscard]] bool satisfies( const state& s, const cube& c );

[[nodiscard]] inline bool subsumes( const clause& a, const clause& b ) { return a.subsumes( b ); }

std::string to_string( const clause& cl );
std::string to_string( const cube& c );
std::string to_string( const state& s );

} // namespace ic4
