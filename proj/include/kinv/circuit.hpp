/*!
  \file circuit.hpp
  \brief Circuits over bases M + {omega_1, ..., omega_p}

  Nodes are stored in a topological order fixed by the node list; the
  "first" omega gate is the one with the smallest list index. Monotone
  gates carry explicit value tables and have weight 0, omega gates refer to
  a declared basis entry and have weight 1. Constants are 0-ary monotone
  gates.
*/
#pragma once

#include <kinv/chains.hpp>
#include <kinv/kfunc.hpp>

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace kinv
{

struct signal
{
  enum class source
  {
    input,
    node
  };

  source from;
  std::size_t index;

  static signal input( std::size_t i ) { return { source::input, i }; }
  static signal node( std::size_t i ) { return { source::node, i }; }

  bool operator==( signal const& ) const = default;
};

enum class node_kind
{
  monotone,
  omega
};

struct node
{
  std::string id;
  node_kind kind;
  kfunction function;
  std::vector<signal> args;
  /*! index into circuit::basis_functions() for omega gates */
  std::size_t basis_index = 0u;
};

class circuit
{
public:
  explicit circuit( unsigned k );

  /*! \brief Assembles a circuit from raw parts without semantic checks (see validate). */
  circuit( unsigned k, std::vector<std::string> inputs, std::vector<basis_function> basis,
           std::vector<node> nodes, std::vector<signal> outputs );

  unsigned k() const noexcept { return k_; }
  std::vector<std::string> const& inputs() const noexcept { return inputs_; }
  std::vector<basis_function> const& basis_functions() const noexcept { return basis_; }
  std::vector<node> const& nodes() const noexcept { return nodes_; }
  std::vector<signal> const& outputs() const noexcept { return outputs_; }
  std::size_t num_inputs() const noexcept { return inputs_.size(); }

  signal add_input( std::string name );
  /*! \brief Declares an omega (deduplicated by table) and returns its index. */
  std::size_t add_basis_function( basis_function const& w );
  signal add_monotone( kfunction f, std::vector<signal> args );
  signal add_omega( std::size_t basis_index, std::vector<signal> args );
  signal add_constant( kvalue c );
  void add_output( signal s );
  void set_outputs( std::vector<signal> outputs );

  /*!
    \brief Copies the first `node_count` nodes of `other` into this circuit.

    `input_map[i]` supplies the signal feeding input i of `other`. Returns
    the signal each copied node maps to.
  */
  std::vector<signal> inline_nodes( circuit const& other, std::span<signal const> input_map,
                                    std::size_t node_count );

  /*! \brief Copies all of `other` and returns the signals of its outputs. */
  std::vector<signal> append( circuit const& other, std::span<signal const> input_map );

  /*! \brief Name not yet used by an input or node, tried as stem, stem2, stem3, ... */
  std::string fresh_name( std::string const& stem ) const;

  /*! \brief Drops monotone nodes that feed neither an output nor an omega gate. */
  circuit pruned() const;

  /*! \brief Same circuit with node ids renumbered g0, g1, ... */
  circuit renumbered() const;

  /*! \brief Human-readable name of a signal (input name or node id). */
  std::string const& name_of( signal s ) const;

private:
  std::string next_node_id();

  unsigned k_;
  std::vector<std::string> inputs_;
  std::vector<basis_function> basis_;
  std::vector<node> nodes_;
  std::vector<signal> outputs_;
  std::set<std::string> names_;
  std::size_t id_counter_ = 0u;
};

/*! \brief Structural and basis violations; empty means valid. */
std::vector<std::string> validate( circuit const& c, basis const& b );

/*! \brief Violations checked against the circuit's own declared basis only. */
std::vector<std::string> validate( circuit const& c );

/*! \brief Throws std::invalid_argument on DAG/arity/k violations. */
void check_structure( circuit const& c );

class invalid_circuit : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

std::vector<kvalue> evaluate( circuit const& c, point const& assignment );

function_system realized_system( circuit const& c, size_limits const& limits = {} );

int inversion_weight( circuit const& c );

struct excision
{
  /*! circuit with the gate removed and one extra input appended last */
  circuit residual;
  /*! the removed gate's arguments, valid in `residual` */
  std::vector<signal> arguments;
  std::size_t basis_index;
  /*! index of the new input */
  std::size_t y_input;
  /*! list position the removed gate occupied */
  std::size_t position;
};

excision excise_first_omega( circuit const& c );

/*! \brief Inverse of excise_first_omega: puts omega(arguments) back in place of the extra input. */
circuit reinsert_omega( excision const& e );

/*! \brief d(realized) <= (d(B)+1)^weight - 1. */
bool check_decrease_bound( circuit const& c, basis const& b, size_limits const& limits = {} );

} // namespace kinv
