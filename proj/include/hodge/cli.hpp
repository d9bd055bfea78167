#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hodge/complexes.hpp"
#include "hodge/documents.hpp"
#include "hodge/error.hpp"
#include "hodge/int_linalg.hpp"
#include "hodge/spectral.hpp"
#include "hodge/steinberg.hpp"

namespace hodge::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, usage_error = 2 };

/// Invalid flag combination detected after CLI11 accepted the arguments.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Range>
std::string join(const Range& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

inline void print_grid_machine(std::ostream& out, const Grid<std::size_t>& g) {
  for (std::size_t r = 0; r <= g.max_p(); ++r)
    for (std::size_t s = 0; s <= g.max_q(); ++s) out << r << ' ' << s << ' ' << g(r, s) << '\n';
}

/// s runs down the rows (top row is the largest s), r across the columns.
inline void print_grid_table(std::ostream& out, const Grid<std::size_t>& g, const std::string& title,
                             const char* row_label = "s", const char* col_label = "r") {
  out << title << '\n';
  for (std::size_t s = g.max_q() + 1; s-- > 0;) {
    out << std::setw(3) << row_label << '=' << std::setw(2) << s << " |";
    for (std::size_t r = 0; r <= g.max_p(); ++r) out << std::setw(4) << g(r, s);
    out << '\n';
  }
  out << "       +" << std::string(4 * (g.max_p() + 1), '-') << '\n' << "        ";
  for (std::size_t r = 0; r <= g.max_p(); ++r) out << std::setw(3) << col_label << r;
  out << '\n';
}

inline void print_signed_grid(std::ostream& out, const steinberg::StatedTableDiff& d, bool machine) {
  const std::size_t top = d.computed.extent();
  if (machine) {
    for (std::size_t r = 0; r <= top; ++r)
      for (std::size_t s = 0; s <= top; ++s)
        out << r << ' ' << s << ' ' << long(d.computed.grid(r, s)) - long(d.stated(r, s)) << '\n';
    return;
  }
  out << "difference (computed - stated)\n";
  for (std::size_t s = top + 1; s-- > 0;) {
    out << "  s=" << std::setw(2) << s << " |";
    for (std::size_t r = 0; r <= top; ++r) out << std::setw(4) << long(d.computed.grid(r, s)) - long(d.stated(r, s));
    out << '\n';
  }
}

struct CalcArgs {
  int d = 0;
  int dp = 0;
  std::size_t m10 = 0, m01 = 0, m11 = 0;
  bool compare = false;
  std::string format = "machine";

  steinberg::InducedSpectrum spectrum() const { return {m10, m01, m11}; }
  bool machine() const { return format == "machine"; }
};

inline void add_calc_flags(CLI::App* sub, CalcArgs& a) {
  sub->add_option("--d", a.d, "dimension of the first factor")->required();
  sub->add_option("--dp", a.dp, "dimension of the second factor")->required();
  sub->add_option("--m10", a.m10, "multiplicity of Steinberg x trivial")->required();
  sub->add_option("--m01", a.m01, "multiplicity of trivial x Steinberg")->required();
  sub->add_option("--m11", a.m11, "multiplicity of Steinberg x Steinberg")->required();
  sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"table", "machine"}));
}

inline void require_stated_case(const CalcArgs& a) {
  if (a.d % 2 != 0 || a.dp % 2 != 0 || a.d > a.dp)
    throw UsageError("--compare-paper: no reference table for d=" + std::to_string(a.d) + ", dp=" +
                     std::to_string(a.dp) + "; the reference table covers only even d <= dp");
}

inline int run_e2(const CalcArgs& a, std::ostream& out) {
  if (a.compare) require_stated_case(a);
  const auto table = steinberg::e2_table(a.d, a.dp, a.spectrum());
  if (!a.compare) {
    if (a.machine()) print_grid_machine(out, table.grid);
    else print_grid_table(out, table.grid, "E2 dimensions");
    return ok;
  }
  const auto diff = steinberg::stated_table_diff(a.d, a.dp, a.spectrum());
  if (a.machine()) {
    out << "# computed\n";
    print_grid_machine(out, diff.computed.grid);
    out << "# stated\n";
    print_grid_machine(out, diff.stated);
    out << "# diff\n";
    print_signed_grid(out, diff, true);
  } else {
    print_grid_table(out, diff.computed.grid, "computed E2 (four-term sum)");
    print_grid_table(out, diff.stated, "stated E2 table");
    print_signed_grid(out, diff, false);
  }
  out << (a.machine() ? "# " : "") << "differing cells: " << diff.cell_diffs.size() << '\n';
  return ok;
}

inline int run_betti(const CalcArgs& a, std::ostream& out) {
  if (a.compare) require_stated_case(a);
  const auto prof = steinberg::betti_profile(a.d, a.dp, a.spectrum());
  if (a.machine()) {
    out << join(prof.b) << '\n';
    for (std::size_t n = 0; n < prof.filtration.size(); ++n) out << "F " << n << " : " << join(prof.filtration[n]) << '\n';
  } else {
    out << "  n    b_n   dim F^0 .. F^{n+1}\n";
    for (std::size_t n = 0; n < prof.b.size(); ++n)
      out << std::setw(3) << n << std::setw(7) << prof.b[n] << "   " << join(prof.filtration[n]) << '\n';
  }
  if (a.compare) {
    const auto diff = steinberg::stated_table_diff(a.d, a.dp, a.spectrum());
    out << (a.machine() ? "# stated\n" : "stated Betti numbers\n") << join(diff.betti_stated) << '\n';
    std::vector<long> delta;
    for (std::size_t n = 0; n < diff.betti_computed.size(); ++n)
      delta.push_back(long(diff.betti_computed[n]) - long(diff.betti_stated[n]));
    out << (a.machine() ? "# diff\n" : "difference (computed - stated)\n") << join(delta) << '\n';
  }
  return ok;
}

inline int run_filtration(const CalcArgs& a, int n, std::ostream& out) {
  out << join(steinberg::covering_filtration_dims(a.d, a.dp, a.spectrum(), n)) << '\n';
  return ok;
}

inline Axis parse_axis(const std::string& s) { return s == "row" ? Axis::row : Axis::column; }

inline int run_ss(const std::string& input, const std::string& axis, bool pages, const std::string& format,
                  std::ostream& out) {
  const DoubleComplex k = documents::parse_double_complex(read_file(input));
  const SpectralPages sp = spectral_pages(k, parse_axis(axis));
  const bool machine = format == "machine";
  auto dims_of = [](const Grid<PageCell>& g) {
    Grid<std::size_t> d(g.max_p(), g.max_q(), 0);
    for (std::size_t p = 0; p <= g.max_p(); ++p)
      for (std::size_t q = 0; q <= g.max_q(); ++q) d(p, q) = g(p, q).dim;
    return d;
  };
  out << "# axis " << to_string(sp.filtration_axis) << '\n';
  out << "# stable_page " << sp.stable_page << '\n';
  if (pages) {
    for (std::size_t r = 1; r <= sp.last_page(); ++r) {
      if (machine) {
        out << "# page " << r << '\n';
        print_grid_machine(out, dims_of(sp.page(r)));
      } else {
        print_grid_table(out, dims_of(sp.page(r)), "E_" + std::to_string(r), "q", "p");
      }
      const auto& ranks = sp.d_ranks[r - 1];
      for (std::size_t p = 0; p <= ranks.max_p(); ++p)
        for (std::size_t q = 0; q <= ranks.max_q(); ++q)
          if (ranks(p, q) != 0) out << "# d" << r << ' ' << p << ' ' << q << " rank " << ranks(p, q) << '\n';
    }
  }
  if (machine) {
    out << "# limit\n";
    print_grid_machine(out, sp.limit);
  } else {
    print_grid_table(out, sp.limit, "E_inf", "q", "p");
  }
  return ok;
}

inline int run_kunneth(const std::string& a, const std::string& b, std::ostream& out) {
  const auto c = documents::parse_cochain_complex(read_file(a));
  const auto d = documents::parse_cochain_complex(read_file(b));
  const auto report = kunneth_check(c, d);
  for (const auto& row : report.degrees)
    out << row.degree << ' ' << row.lhs << ' ' << row.rhs << ' ' << (row.pass() ? "ok" : "FAIL") << '\n';
  return report.passed() ? ok : validation_failure;
}

inline int run_uct(const std::string& input, long mod, std::ostream& out) {
  if (mod < 2) throw UsageError("--mod must be >= 2");
  const auto c = documents::parse_chain_complex(read_file(input));
  const auto report = uct_check(c, std::uint64_t(mod));
  if (!report.cross_checked) out << "# modulus " << mod << " is not prime: invariant-factor side only\n";
  for (const auto& row : report.degrees) {
    out << row.degree << ' ';
    if (row.mod_homology) out << *row.mod_homology;
    else out << '-';
    out << ' ' << row.tensor_term << ' ' << row.tor_term << ' '
        << (row.mod_homology ? (row.pass() ? "ok" : "FAIL") : "unchecked") << '\n';
  }
  return report.passed() ? ok : validation_failure;
}

inline void print_int_matrix(std::ostream& out, const IntMatrix& m, const char* name) {
  out << name << " =\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << "]\n";
  }
}

inline int run_snf(const std::string& input, const std::string& format, std::ostream& out) {
  const IntMatrix a = documents::parse_int_matrix(read_file(input));
  const SmithForm s = smith_normal_form(a);
  std::string diag;
  for (const auto& d : s.diagonal) diag += (diag.empty() ? "" : " ") + d.get_str();
  out << diag << '\n';
  if (format == "table") {
    print_int_matrix(out, s.U, "U");
    print_int_matrix(out, s.D, "D");
    print_int_matrix(out, s.V, "V");
    out << "cokernel " << cokernel_structure(a).to_string() << '\n';
  }
  return ok;
}

inline int run_oppose(const std::string& input, int n, std::ostream& out) {
  const DoubleComplex k = documents::parse_double_complex(read_file(input));
  const FiltrationChain first = filtration_on_total(k, Axis::column, n);
  const FiltrationChain second = filtration_on_total(k, Axis::row, n);
  out << "dim_H " << first.ambient_dim() << '\n';
  out << "col " << join(first.dims()) << '\n';
  out << "row " << join(second.dims()) << '\n';
  out << "opposite " << (opposite_check(first, second) ? "true" : "false") << '\n';
  out << "criterion " << (dimension_criterion(first, second) ? "true" : "false") << '\n';
  return ok;
}

}  // namespace detail

/// Runs one subcommand. `args` excludes the program name. Diagnostics go to
/// `err` as a single line.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact homological algebra calculator", "hodgecalc"};
  app.require_subcommand(1);

  detail::CalcArgs calc;
  CLI::App* e2 = app.add_subcommand("e2", "E2 page of the covering spectral sequence");
  detail::add_calc_flags(e2, calc);
  e2->add_flag("--compare-paper", calc.compare, "also print the reference table and the difference");

  CLI::App* betti = app.add_subcommand("betti", "Betti numbers and covering filtration profile");
  detail::add_calc_flags(betti, calc);
  betti->add_flag("--compare-paper", calc.compare, "also print the reference Betti formula and the difference");

  int degree = 0;
  CLI::App* filtration = app.add_subcommand("filtration", "dimensions of the covering filtration on H^n");
  detail::add_calc_flags(filtration, calc);
  filtration->add_option("--n", degree, "total degree")->required();

  std::string input, axis = "col", format = "machine";
  bool pages = false;
  CLI::App* ss = app.add_subcommand("ss", "spectral sequence of a double complex");
  ss->add_option("--input", input, "double complex document")->required();
  ss->add_option("--axis", axis, "filtration axis")->check(CLI::IsMember({"row", "col"}));
  ss->add_flag("--pages", pages, "print every page and the ranks of its differentials");
  ss->add_option("--format", format, "output format")->check(CLI::IsMember({"table", "machine"}));

  std::string file_a, file_b;
  CLI::App* kunneth = app.add_subcommand("kunneth", "Kunneth check for two cochain complexes");
  kunneth->add_option("--a", file_a, "first complex document")->required();
  kunneth->add_option("--b", file_b, "second complex document")->required();

  long modulus = 0;
  CLI::App* uct = app.add_subcommand("uct", "universal coefficient check for an integral chain complex");
  uct->add_option("--input", input, "chain complex document")->required();
  uct->add_option("--mod", modulus, "coefficient modulus")->required();

  CLI::App* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--input", input, "matrix document")->required();
  snf->add_option("--format", format, "output format")->check(CLI::IsMember({"table", "machine"}));

  CLI::App* oppose = app.add_subcommand("oppose", "compare the two filtrations on H^n of a double complex");
  oppose->add_option("--input", input, "double complex document")->required();
  oppose->add_option("--n", degree, "total degree")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "usage error: " << msg << '\n';
    return usage_error;
  }

  try {
    if (e2->parsed()) return detail::run_e2(calc, out);
    if (betti->parsed()) return detail::run_betti(calc, out);
    if (filtration->parsed()) return detail::run_filtration(calc, degree, out);
    if (ss->parsed()) return detail::run_ss(input, axis, pages, format, out);
    if (kunneth->parsed()) return detail::run_kunneth(file_a, file_b, out);
    if (uct->parsed()) return detail::run_uct(input, modulus, out);
    if (snf->parsed()) return detail::run_snf(input, format, out);
    if (oppose->parsed()) return detail::run_oppose(input, degree, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return validation_failure;
  }
  return usage_error;
}

}  // namespace hodge::cli
