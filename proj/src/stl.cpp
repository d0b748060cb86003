#include "falsify/stl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace falsify {

std::size_t SignalTrace::length() const {
  if (signals.empty()) throw std::invalid_argument("SignalTrace: no signals");
  const std::size_t n = signals.begin()->second.size();
  for (const auto& [name, seq] : signals) {
    if (seq.size() != n)
      throw std::invalid_argument("SignalTrace: length mismatch for " + name);
  }
  if (n == 0) throw std::invalid_argument("SignalTrace: empty signals");
  return n;
}

const std::vector<double>& SignalTrace::at(const std::string& name) const {
  const auto it = signals.find(name);
  if (it == signals.end())
    throw std::invalid_argument("SignalTrace: unknown signal " + name);
  return it->second;
}

Formula Formula::make_atom(Atom a) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(a);
  return f;
}

Formula Formula::ge(const std::string& signal, double threshold, double scale) {
  Atom a;
  a.terms.push_back({signal, 1.0});
  a.constant = -threshold;
  a.scale = scale;
  return make_atom(std::move(a));
}

Formula Formula::le(const std::string& signal, double threshold, double scale) {
  Atom a;
  a.terms.push_back({signal, -1.0});
  a.constant = threshold;
  a.scale = scale;
  return make_atom(std::move(a));
}

Formula Formula::top() {
  Formula f;
  f.kind = Kind::True;
  return f;
}

Formula Formula::negation(Formula f) {
  Formula out;
  out.kind = Kind::Not;
  out.children.push_back(std::move(f));
  return out;
}

Formula Formula::conj(std::vector<Formula> fs) {
  Formula out;
  out.kind = Kind::And;
  out.children = std::move(fs);
  return out;
}

Formula Formula::disj(std::vector<Formula> fs) {
  Formula out;
  out.kind = Kind::Or;
  out.children = std::move(fs);
  return out;
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  Formula out;
  out.kind = Kind::Implies;
  out.children.push_back(std::move(lhs));
  out.children.push_back(std::move(rhs));
  return out;
}

Formula Formula::globally(Formula f) {
  Formula out;
  out.kind = Kind::Globally;
  out.children.push_back(std::move(f));
  return out;
}

Formula Formula::eventually(Formula f) {
  Formula out;
  out.kind = Kind::Eventually;
  out.children.push_back(std::move(f));
  return out;
}

namespace {

std::vector<double> atom_margins(const Atom& a, const SignalTrace& w,
                                 std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double v = a.constant;
    for (const auto& term : a.terms) v += term.coeff * w.at(term.signal)[t];
    out[t] = a.scale * v;
  }
  return out;
}

std::vector<double> eval_all(const Formula& f, const SignalTrace& w,
                             std::size_t n) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return atom_margins(f.atom, w, n);
    case Formula::Kind::True:
      return std::vector<double>(n, kRhoTop);
    case Formula::Kind::Not: {
      auto v = eval_all(f.children.at(0), w, n);
      for (auto& x : v) x = -x;
      return v;
    }
    case Formula::Kind::And: {
      if (f.children.empty())
        throw std::invalid_argument("Formula: empty conjunction");
      auto acc = eval_all(f.children[0], w, n);
      for (std::size_t c = 1; c < f.children.size(); ++c) {
        const auto v = eval_all(f.children[c], w, n);
        for (std::size_t t = 0; t < n; ++t) acc[t] = std::min(acc[t], v[t]);
      }
      return acc;
    }
    case Formula::Kind::Or: {
      if (f.children.empty())
        throw std::invalid_argument("Formula: empty disjunction");
      auto acc = eval_all(f.children[0], w, n);
      for (std::size_t c = 1; c < f.children.size(); ++c) {
        const auto v = eval_all(f.children[c], w, n);
        for (std::size_t t = 0; t < n; ++t) acc[t] = std::max(acc[t], v[t]);
      }
      return acc;
    }
    case Formula::Kind::Implies: {
      const auto lhs = eval_all(f.children.at(0), w, n);
      auto rhs = eval_all(f.children.at(1), w, n);
      for (std::size_t t = 0; t < n; ++t) rhs[t] = std::max(-lhs[t], rhs[t]);
      return rhs;
    }
    case Formula::Kind::Globally: {
      auto v = eval_all(f.children.at(0), w, n);
      // suffix min
      for (std::size_t t = n - 1; t-- > 0;) v[t] = std::min(v[t], v[t + 1]);
      return v;
    }
    case Formula::Kind::Eventually: {
      auto v = eval_all(f.children.at(0), w, n);
      for (std::size_t t = n - 1; t-- > 0;) v[t] = std::max(v[t], v[t + 1]);
      return v;
    }
  }
  throw std::logic_error("Formula: unknown kind");
}

}  // namespace

std::vector<double> robustness_signal(const Formula& f, const SignalTrace& w) {
  return eval_all(f, w, w.length());
}

double robustness(const Formula& f, const SignalTrace& w, std::size_t t) {
  const std::size_t n = w.length();
  if (t >= n) throw std::out_of_range("robustness: index out of range");
  return eval_all(f, w, n)[t];
}

Formula build_acc_spec(const IdmParams& prm, const SimConfig& cfg) {
  using F = Formula;

  // S_U: commanded acceleration within bounds at all times.
  F s_u = F::conj({F::ge("u_h", cfg.a_h_min), F::le("u_h", cfg.a_h_max)});

  // M1: set speed mode, v_d <= gap/t_h_d, as margin gap - v_d*t_h_d.
  F m1 = F::ge("gap", prm.v_d * prm.t_h_d);
  F s1 = F::top();
  F t1 = F::le("v_h", prm.v_d);

  // M2: time gap mode.
  F m2 = F::negation(m1);
  // S2: v <= gap/t_h_min as margin gap - t_h_min*v.
  Atom s2_atom;
  s2_atom.terms.push_back({"gap", 1.0});
  s2_atom.terms.push_back({"v_h", -prm.t_h_min});
  F s2 = F::make_atom(std::move(s2_atom));
  // T2: gap - t_h_d*v >= 0.
  Atom t2_atom;
  t2_atom.terms.push_back({"gap", 1.0});
  t2_atom.terms.push_back({"v_h", -prm.t_h_d});
  F t2 = F::make_atom(std::move(t2_atom));

  F mode1 = F::conj({F::implies(m1, s1),
                     F::implies(F::globally(m1),
                                F::globally(F::eventually(t1)))});
  F mode2 = F::conj({F::implies(m2, s2),
                     F::implies(F::globally(m2),
                                F::globally(F::eventually(t2)))});

  return F::globally(F::conj({std::move(s_u), std::move(mode1), std::move(mode2)}));
}

double reward_from_robustness(double rho, double penalty) {
  return std::exp(-rho) + penalty;
}

SignalTrace signals_of_trace(const Trace& tr) {
  SignalTrace w;
  w.ts = tr.ts;
  const std::size_t n = tr.size();
  std::vector<double> t(n), s_h(n), v_h(n), s_f(n), v_f(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = k * tr.ts;
    s_h[k] = tr.host[k].s;
    v_h[k] = tr.host[k].v;
    s_f[k] = tr.front[k].s;
    v_f[k] = tr.front[k].v;
  }
  w.signals["t"] = std::move(t);
  w.signals["s_h"] = std::move(s_h);
  w.signals["v_h"] = std::move(v_h);
  w.signals["u_h"] = tr.u_host;
  w.signals["s_f"] = std::move(s_f);
  w.signals["v_f"] = std::move(v_f);
  w.signals["u_f"] = tr.u_front;
  w.signals["gap"] = tr.gap;
  w.signals["t_h"] = tr.headway;
  return w;
}

namespace {

struct Tokenizer {
  std::vector<std::string> tokens;
  std::size_t pos = 0;

  explicit Tokenizer(const std::string& text) {
    std::string cur;
    for (char c : text) {
      if (c == '(' || c == ')') {
        if (!cur.empty()) {
          tokens.push_back(cur);
          cur.clear();
        }
        tokens.push_back(std::string(1, c));
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) {
          tokens.push_back(cur);
          cur.clear();
        }
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
  }

  const std::string& next() {
    if (pos >= tokens.size())
      throw std::invalid_argument("formula: unexpected end of input");
    return tokens[pos++];
  }
  const std::string& peek() const {
    if (pos >= tokens.size())
      throw std::invalid_argument("formula: unexpected end of input");
    return tokens[pos];
  }
  bool done() const { return pos >= tokens.size(); }
};

double parse_number(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("formula: expected a number, got '" + tok + "'");
  }
  if (used != tok.size())
    throw std::invalid_argument("formula: expected a number, got '" + tok + "'");
  return v;
}

Formula parse_expr(Tokenizer& tk) {
  if (tk.next() != "(")
    throw std::invalid_argument("formula: expected '('");
  const std::string op = tk.next();
  Formula out;
  if (op == "G" || op == "F" || op == "not") {
    Formula inner = parse_expr(tk);
    out = op == "G"   ? Formula::globally(std::move(inner))
          : op == "F" ? Formula::eventually(std::move(inner))
                      : Formula::negation(std::move(inner));
  } else if (op == "and" || op == "or") {
    std::vector<Formula> kids;
    while (tk.peek() != ")") kids.push_back(parse_expr(tk));
    if (kids.size() < 2)
      throw std::invalid_argument("formula: '" + op + "' needs >= 2 operands");
    out = op == "and" ? Formula::conj(std::move(kids))
                      : Formula::disj(std::move(kids));
  } else if (op == "implies") {
    Formula lhs = parse_expr(tk);
    Formula rhs = parse_expr(tk);
    out = Formula::implies(std::move(lhs), std::move(rhs));
  } else if (op == "ge" || op == "le") {
    const std::string sig = tk.next();
    const double thr = parse_number(tk.next());
    out = op == "ge" ? Formula::ge(sig, thr) : Formula::le(sig, thr);
  } else if (op == "true") {
    out = Formula::top();
  } else {
    throw std::invalid_argument("formula: unknown operator '" + op + "'");
  }
  if (tk.next() != ")")
    throw std::invalid_argument("formula: expected ')'");
  return out;
}

void format_rec(const Formula& f, std::string& out) {
  char buf[64];
  switch (f.kind) {
    case Formula::Kind::Atom: {
      const Atom& a = f.atom;
      if (a.terms.size() == 1 && a.scale == 1.0) {
        const auto& term = a.terms[0];
        if (term.coeff == 1.0) {
          std::snprintf(buf, sizeof(buf), "%.9g", -a.constant);
          out += "(ge " + term.signal + " " + buf + ")";
          return;
        }
        if (term.coeff == -1.0) {
          std::snprintf(buf, sizeof(buf), "%.9g", a.constant);
          out += "(le " + term.signal + " " + buf + ")";
          return;
        }
      }
      // general affine atom, printed as a flat ge over a synthetic signal
      // expression; only single-signal atoms round-trip through the parser
      out += "(ge [";
      for (std::size_t i = 0; i < a.terms.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g*%s", a.terms[i].coeff,
                      a.terms[i].signal.c_str());
        if (i) out += "+";
        out += buf;
      }
      std::snprintf(buf, sizeof(buf), "%.9g", -a.constant);
      out += "] ";
      out += buf;
      out += ")";
      return;
    }
    case Formula::Kind::True:
      out += "(true)";
      return;
    case Formula::Kind::Not:
      out += "(not ";
      format_rec(f.children[0], out);
      out += ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      out += f.kind == Formula::Kind::And ? "(and" : "(or";
      for (const auto& c : f.children) {
        out += " ";
        format_rec(c, out);
      }
      out += ")";
      return;
    }
    case Formula::Kind::Implies:
      out += "(implies ";
      format_rec(f.children[0], out);
      out += " ";
      format_rec(f.children[1], out);
      out += ")";
      return;
    case Formula::Kind::Globally:
      out += "(G ";
      format_rec(f.children[0], out);
      out += ")";
      return;
    case Formula::Kind::Eventually:
      out += "(F ";
      format_rec(f.children[0], out);
      out += ")";
      return;
  }
}

}  // namespace

Formula parse_formula(const std::string& text) {
  Tokenizer tk(text);
  Formula f = parse_expr(tk);
  if (!tk.done())
    throw std::invalid_argument("formula: trailing tokens after expression");
  return f;
}

std::string format_formula(const Formula& f) {
  std::string out;
  format_rec(f, out);
  return out;
}

SignalTrace parse_signal_csv(const std::string& csv, double ts) {
  SignalTrace w;
  w.ts = ts;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> names;
  {
    std::istringstream hl(line);
    std::string cell;
    while (std::getline(hl, cell, ',')) names.push_back(cell);
  }
  if (names.empty()) throw std::invalid_argument("trace csv: no columns");

  std::vector<std::vector<double>> cols(names.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream rl(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(rl, cell, ',')) {
      if (i >= names.size())
        throw std::invalid_argument("trace csv: too many cells in a row");
      cols[i].push_back(parse_number(cell));
      ++i;
    }
    if (i != names.size())
      throw std::invalid_argument("trace csv: ragged row");
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    w.signals[names[i]] = std::move(cols[i]);
  w.length();  // validate
  return w;
}

}  // namespace falsify
