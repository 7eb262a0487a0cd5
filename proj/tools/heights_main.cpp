#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "heights/csv.hpp"
#include "heights/errors.hpp"

namespace {

struct Flags {
  std::string field = "Q";
  unsigned e = 1;
  double H = 2.0;
  std::string grid;
  std::string mode = "census";
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  unsigned precision_bits = 128;
  unsigned threads = 1;
  bool count_only = false;
  std::string out;
};

struct Recorded {
  CLI::Option* field = nullptr;
  CLI::Option* e = nullptr;
  CLI::Option* H = nullptr;
  CLI::Option* grid = nullptr;
  CLI::Option* mode = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* precision_bits = nullptr;
  CLI::Option* count_only = nullptr;
};

std::string mark(const CLI::Option* o) { return (o && o->count()) ? "" : " (default)"; }

// The thread count never appears here: output is identical for any --threads.
std::vector<std::string> config_lines(const std::string& command, const Flags& f,
                                      const Recorded& r, bool with_H, bool with_grid,
                                      bool with_mc, bool with_prec) {
  std::vector<std::string> lines;
  lines.push_back("command=" + command);
  lines.push_back("field=" + f.field + mark(r.field));
  lines.push_back("e=" + std::to_string(f.e) + mark(r.e));
  if (with_H) lines.push_back("H=" + heights::csv_double(f.H) + mark(r.H));
  if (with_grid) {
    lines.push_back("grid=" + f.grid + mark(r.grid));
    lines.push_back("mode=" + f.mode + mark(r.mode));
  }
  if (with_mc) {
    lines.push_back("samples=" + std::to_string(f.samples) + mark(r.samples));
    lines.push_back("seed=" + std::to_string(f.seed) + mark(r.seed));
  }
  if (with_prec) {
    lines.push_back("precision-bits=" + std::to_string(f.precision_bits) +
                    mark(r.precision_bits));
  }
  if (r.count_only)
    lines.push_back(std::string("count-only=") + (f.count_only ? "1" : "0") +
                    mark(r.count_only));
  return lines;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad grid entry: " + item);
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::invalid_argument("bad grid entry: " + item);
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("grid must list at least one bound");
  return grid;
}

heights::CensusOptions census_options(const Flags& f) {
  heights::CensusOptions opts;
  opts.threads = f.threads;
  opts.precision_bits = static_cast<mpfr_prec_t>(f.precision_bits);
  opts.count_only = f.count_only;
  return opts;
}

int run_constants(const Flags& f, const Recorded& r) {
  heights::NumberField k = heights::field_from_string(f.field);
  Output out(f.out);
  write_constants_csv(out.stream(), k, f.e,
                      config_lines("constants", f, r, false, false, false, false));
  std::cerr << "constants field=" << f.field << " e_max=" << f.e << "\n";
  return 0;
}

int run_census(const Flags& f, const Recorded& r) {
  heights::NumberField k = heights::field_from_string(f.field);
  heights::CensusList list;
  std::vector<heights::MonicPolynomial> reducible;
  heights::CensusResult res =
      heights::irreducible_census(k, f.e, f.H, census_options(f), &list, &reducible);
  Output out(f.out);
  if (!f.count_only) {
    write_census_csv(out.stream(), k, res, list.polys, reducible,
                     config_lines("census", f, r, true, false, false, true));
  }
  std::cerr << "census field=" << f.field << " e=" << f.e << " H=" << heights::csv_double(f.H)
            << ": total=" << res.total << " reducible=" << res.reducible
            << " irreducible=" << res.irreducible
            << " predicted=" << heights::csv_double(res.predicted)
            << " ratio=" << heights::csv_double(res.ratio)
            << " boundary_warnings=" << res.boundary_warnings << "\n";
  return 0;
}

int run_integers(const Flags& f, const Recorded& r) {
  heights::NumberField k = heights::field_from_string(f.field);
  heights::CensusOptions opts = census_options(f);
  opts.count_only = true;  // only counts feed the summary
  heights::CensusResult res = heights::count_integers(k, f.e, f.H, opts);
  heights::PredictionRow row;
  row.H = res.H;
  row.exact = res.integer_count;
  row.has_exact = true;
  row.leading_value = res.predicted;
  row.ratio = res.ratio;
  row.q = k.unit_rank_q();
  row.boundary_warnings = res.boundary_warnings;
  Output out(f.out);
  heights::write_convergence_csv(out.stream(), {row},
                                 config_lines("integers", f, r, true, false, false, true));
  std::cerr << "integers field=" << f.field << " e=" << f.e << " H=" << heights::csv_double(f.H)
            << ": N=" << res.integer_count << " irreducible=" << res.irreducible
            << " predicted=" << heights::csv_double(res.predicted)
            << " ratio=" << heights::csv_double(res.ratio)
            << " boundary_warnings=" << res.boundary_warnings << "\n";
  return 0;
}

int run_volume(const Flags& f, const Recorded& r) {
  heights::VolumeEstimate est;
  if (f.field == "R") {
    est = heights::volume_mc(heights::VolumeMode::PlainReal, nullptr, f.e, f.H, f.samples,
                             f.seed, f.threads);
  } else if (f.field == "C") {
    est = heights::volume_mc(heights::VolumeMode::PlainComplex, nullptr, f.e, f.H, f.samples,
                             f.seed, f.threads);
  } else {
    heights::NumberField k = heights::field_from_string(f.field);
    est = heights::volume_mc(heights::VolumeMode::Field, &k, f.e, f.H, f.samples, f.seed,
                             f.threads);
  }
  Output out(f.out);
  write_volume_csv(out.stream(), est, config_lines("volume", f, r, true, false, true, false));
  std::cerr << "volume field=" << f.field << " n=" << f.e << " T=" << heights::csv_double(f.H)
            << ": estimate=" << heights::csv_double(est.estimate)
            << " standard_error=" << heights::csv_double(est.standard_error) << "\n";
  return 0;
}

int run_convergence(const Flags& f, const Recorded& r) {
  heights::NumberField k = heights::field_from_string(f.field);
  heights::ConvergenceMode mode;
  if (f.mode == "census")
    mode = heights::ConvergenceMode::Census;
  else if (f.mode == "integers")
    mode = heights::ConvergenceMode::Integers;
  else
    throw std::invalid_argument("mode must be census or integers");
  std::vector<double> grid = parse_grid(f.grid);
  std::vector<heights::PredictionRow> rows =
      heights::convergence_table(k, f.e, grid, mode, census_options(f));
  Output out(f.out);
  write_convergence_csv(out.stream(), rows,
                        config_lines("convergence", f, r, false, true, false, true));
  std::cerr << "convergence field=" << f.field << " e=" << f.e << " mode=" << f.mode
            << " rows=" << rows.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mahler-measure censuses, height counts and body volumes over number fields"};
  app.require_subcommand(1);

  Flags f;
  Recorded rec[5];

  auto* c_constants = app.add_subcommand(
      "constants", "Exact volume constants and reciprocity ratios for a field");
  auto* c_census = app.add_subcommand(
      "census", "Enumerate monic polynomials with bounded relative Mahler measure");
  auto* c_integers = app.add_subcommand(
      "integers", "Count algebraic integers of bounded height and degree");
  auto* c_volume = app.add_subcommand("volume", "Monte Carlo volume of a Mahler body");
  auto* c_convergence = app.add_subcommand(
      "convergence", "Exact counts against leading-term predictions along a bound grid");

  CLI::App* subs[5] = {c_constants, c_census, c_integers, c_volume, c_convergence};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = subs[i];
    Recorded& r = rec[i];
    r.field = sub->add_option("--field", f.field,
                              "Field: Q, quadratic:<d> or custom:<path>"
                              " (volume also accepts R or C for plain modes)");
    r.e = sub->add_option("--e", f.e,
                          sub == c_constants ? "Largest degree row e_max"
                          : sub == c_volume  ? "Body dimension n"
                                             : "Polynomial degree e")
              ->check(CLI::Range(1, 64));
    if (sub != c_constants && sub != c_convergence) {
      r.H = sub->add_option("--H", f.H,
                            sub == c_volume ? "Body bound T"
                            : sub == c_integers
                                ? "Height bound for the counted integers"
                                : "Relative Mahler measure bound H")
                ->required();
    }
    if (sub == c_convergence) {
      r.grid = sub->add_option("--grid", f.grid, "Comma-separated ascending bounds, each > 1")
                   ->required();
      r.mode = sub->add_option("--mode", f.mode, "census or integers");
    }
    if (sub == c_volume) {
      r.samples = sub->add_option("--samples", f.samples, "Monte Carlo sample count");
      r.seed = sub->add_option("--seed", f.seed, "Random seed");
    }
    if (sub == c_census || sub == c_integers || sub == c_convergence) {
      r.precision_bits =
          sub->add_option("--precision-bits", f.precision_bits, "Base working precision")
              ->check(CLI::Range(64, 16384));
    }
    if (sub == c_census)
      r.count_only = sub->add_flag("--count-only", f.count_only,
                                   "Report counts only; skip the polynomial list");
    if (sub != c_constants)
      sub->add_option("--threads", f.threads, "Worker threads (never affects the output)")
          ->check(CLI::Range(1, 256));
    sub->add_option("--out", f.out, "Write CSV here instead of standard output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 1;
  }

  try {
    if (c_constants->parsed()) return run_constants(f, rec[0]);
    if (c_census->parsed()) return run_census(f, rec[1]);
    if (c_integers->parsed()) return run_integers(f, rec[2]);
    if (c_volume->parsed()) return run_volume(f, rec[3]);
    if (c_convergence->parsed()) return run_convergence(f, rec[4]);
    std::cerr << "error: no command\n";
    return 1;
  } catch (const heights::resource_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const heights::numeric_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}
