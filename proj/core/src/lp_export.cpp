#include "drlift/counterpart.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

namespace drlift {

// Free MPS. Objective sense is emitted via OBJSENSE so external solvers see
// maximization problems unchanged.
void write_mps(const CounterpartLP& lp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);

  out << "NAME drlift\n";
  out << "OBJSENSE\n " << (lp.maximize ? "MAX" : "MIN") << "\n";
  out << "ROWS\n N obj\n";
  for (const LpRow& row : lp.rows()) {
    out << ' ' << (row.sense == Sense::Ge ? 'G' : 'E') << ' ' << row.name << "\n";
  }

  // Column-major gather of the triplet entries.
  std::vector<int> heads(lp.num_cols(), -1);
  std::vector<int> next(lp.num_entries(), -1);
  for (int e = 0; e < lp.num_entries(); ++e) {
    const int col = lp.entry_cols()[e];
    next[e] = heads[col];
    heads[col] = e;
  }

  const double inf = std::numeric_limits<double>::infinity();
  out << "COLUMNS\n";
  bool in_integer = false;
  for (int c = 0; c < lp.num_cols(); ++c) {
    const LpColumn& col = lp.cols()[c];
    const bool integer = col.kind == ColKind::Binary;
    if (integer != in_integer) {
      out << (integer ? " MARKER M1 'MARKER' 'INTORG'\n" : " MARKER M1 'MARKER' 'INTEND'\n");
      in_integer = integer;
    }
    if (col.obj != 0.0) out << ' ' << col.name << " obj " << col.obj << "\n";
    for (int e = heads[c]; e != -1; e = next[e]) {
      out << ' ' << col.name << ' ' << lp.rows()[lp.entry_rows()[e]].name << ' '
          << lp.entry_values()[e] << "\n";
    }
  }
  if (in_integer) out << " MARKER M1 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (const LpRow& row : lp.rows()) {
    if (row.rhs != 0.0) out << " rhs " << row.name << ' ' << row.rhs << "\n";
  }

  out << "BOUNDS\n";
  for (const LpColumn& col : lp.cols()) {
    if (col.lb == -inf && col.ub == inf) {
      out << " FR bnd " << col.name << "\n";
    } else if (col.lb == 0.0 && col.ub == inf) {
      // default
    } else {
      if (col.lb == -inf) {
        out << " MI bnd " << col.name << "\n";
      } else if (col.lb != 0.0) {
        out << " LO bnd " << col.name << ' ' << col.lb << "\n";
      }
      if (col.ub != inf) out << " UP bnd " << col.name << ' ' << col.ub << "\n";
    }
  }
  out << "ENDATA\n";
}

}  // namespace drlift
