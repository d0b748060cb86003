#pragma once

#include <map>
#include <string>
#include <vector>

#include "falsify/idm.hpp"
#include "falsify/sim.hpp"

namespace falsify {

/// Margin used for the constant-true atom so min/max arithmetic stays
/// finite.
inline constexpr double kRhoTop = 1e6;

/// Named real-valued sequences of a shared length.
struct SignalTrace {
  std::map<std::string, std::vector<double>> signals;
  double ts = 0.1;

  std::size_t length() const;  // throws if empty or lengths differ
  const std::vector<double>& at(const std::string& name) const;
};

/// Atomic predicate: margin(t) = scale * (sum_i coeff_i * signal_i[t] + c).
/// Positive margin means the predicate holds.
struct Atom {
  struct Term {
    std::string signal;
    double coeff = 1.0;
  };
  std::vector<Term> terms;
  double constant = 0.0;
  double scale = 1.0;
};

/// Temporal-logic syntax tree with quantitative semantics. Globally and
/// Eventually range over the full remaining horizon.
struct Formula {
  enum class Kind { Atom, True, Not, And, Or, Implies, Globally, Eventually };

  Kind kind = Kind::True;
  Atom atom;                       // valid when kind == Atom
  std::vector<Formula> children;

  static Formula make_atom(Atom a);
  /// signal >= threshold
  static Formula ge(const std::string& signal, double threshold,
                    double scale = 1.0);
  /// signal <= threshold
  static Formula le(const std::string& signal, double threshold,
                    double scale = 1.0);
  static Formula top();
  static Formula negation(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula globally(Formula f);
  static Formula eventually(Formula f);
};

/// Robustness of f over w for every start index, computed bottom-up with
/// suffix scans (one pass per temporal node).
std::vector<double> robustness_signal(const Formula& f, const SignalTrace& w);

/// Robustness at start index t. Negative iff the finite-trace semantics
/// judge the formula violated.
double robustness(const Formula& f, const SignalTrace& w, std::size_t t);

/// The ACC specification: G(S_U and, per mode i, (M_i => S_i) and
/// (G M_i => G F T_i)), over the signals u_h, v_h and gap.
Formula build_acc_spec(const IdmParams& prm, const SimConfig& cfg);

/// Reward of a robustness value: exp(-rho) plus optional constraint
/// penalty (zero when the scenario constraints hold).
double reward_from_robustness(double rho, double penalty = 0.0);

/// Signals of a simulated trace, keyed by the CSV column names
/// (t, s_h, v_h, u_h, s_f, v_f, u_f, gap, t_h).
SignalTrace signals_of_trace(const Trace& tr);

/// Prefix mini-language, e.g. "(G (and (ge u_h -3.5) (le v_h 30)))".
/// Grammar:
///   expr := (G expr) | (F expr) | (not expr)
///         | (and expr expr+) | (or expr expr+) | (implies expr expr)
///         | (ge SIGNAL CONST) | (le SIGNAL CONST) | (true)
Formula parse_formula(const std::string& text);
std::string format_formula(const Formula& f);

/// Parses a CSV with a header row into a SignalTrace (one signal per
/// column).
SignalTrace parse_signal_csv(const std::string& csv, double ts = 0.1);

}  // namespace falsify
