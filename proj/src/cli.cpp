#include "slopelab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "slopelab/adic_disk.hpp"
#include "slopelab/error.hpp"
#include "slopelab/hn_kottwitz.hpp"
#include "slopelab/json_io.hpp"
#include "slopelab/legendre.hpp"
#include "slopelab/selftest.hpp"

namespace slopelab {

namespace {

using json_io::Json;

constexpr const char* kModule = "cli";

const CLI::Validator kPrime(
    [](std::string& s) -> std::string {
      try {
        std::size_t used = 0;
        long p = std::stol(s, &used);
        if (used == s.size() && is_prime(p)) return {};
      } catch (const std::exception&) {
      }
      return "p must be a prime, got " + s;
    },
    "PRIME");

const CLI::Validator kSlopes(
    [](std::string& s) -> std::string {
      try {
        SlopeMultiset::parse(s);
        return {};
      } catch (const Error& e) {
        return e.what();
      }
    },
    "SLOPES");

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, kModule, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, kModule, "cannot write " + path);
  return f;
}

Json checks_json(const std::vector<CheckResult>& checks, bool& passed) {
  Json a = Json::array();
  passed = true;
  for (const auto& c : checks) {
    a.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    passed = passed && c.passed;
  }
  return a;
}

void error_record(std::ostream& err, std::string_view module, std::string_view kind, std::string_view message) {
  Json e{{"error", Json{{"module", module}, {"kind", kind}, {"message", message}}}};
  err << e.dump() << '\n';
}

struct Options {
  std::uint64_t seed = 0;
  int jobs = 1;
  long prec = kDefaultPrecision;

  std::string file;
  std::string a, b, slopes;
  std::size_t rank = 0;
  std::vector<long> mu;
  long p = 7, d = 1, h = 2;
  int samples = 20;
  std::string closed, point;
  std::vector<std::string> opens;
  std::string svg, csv, grid = "default";
};

int cmd_slopes(const Options& o, std::ostream& out) {
  auto m = json_io::isocrystal_from_json(json_io::parse(read_file(o.file)), o.prec);
  const auto slopes = newton_slopes(m);
  Json dm = Json::array();
  for (const auto& c : dm_class(m)) dm.push_back(Json{{"slope", to_string(c.slope)}, {"multiplicity", c.multiplicity}});
  Json j{{"slopes", json_io::to_json(slopes)}, {"polygon", json_io::to_json(np_from_multiset(slopes))}, {"dm_class", dm}};
  out << j.dump() << '\n';
  return 0;
}

int cmd_tube(const Options& o, std::ostream& out) {
  LocallyClosed z;
  if (!o.closed.empty()) z.closed = parse_polynomial(o.closed);
  for (const auto& g : o.opens) z.opens.push_back(parse_polynomial(g));
  auto x = AdicDiskPoint::parse(o.p, o.point);
  auto r = tube_membership(x, z);
  Json witness;
  if (r.witness_kind == WitnessKind::Finite) witness = r.witness;
  else if (r.witness_kind == WitnessKind::NoWitness) witness = "none";
  Json j{{"point", x.to_string()},
         {"specialization", specialize(x).to_string()},
         {"in", r.in},
         {"witness", witness},
         {"spmax_in", spmax_preimage_membership(x, z)}};
  out << j.dump() << '\n';
  return 0;
}

int cmd_legendre(const Options& o, std::ostream& out) {
  std::vector<LegendrePoint> grid;
  if (o.grid == "default") {
    grid = default_grid(o.p);
  } else {
    std::ifstream in(o.grid);
    if (!in) throw Error(ErrorKind::InvalidArgument, kModule, "cannot read grid " + o.grid);
    grid = read_grid(o.p, in);
  }
  auto rows = emit_partition(o.p, grid, o.jobs);
  if (!o.svg.empty()) {
    auto f = open_output(o.svg);
    write_svg(o.p, rows, f);
  }
  if (o.csv.empty()) {
    write_csv(rows, out);
  } else {
    auto f = open_output(o.csv);
    write_csv(rows, f);
    out << Json{{"rows", rows.size()}, {"supersingular_disks", count_supersingular_disks(o.p, rows)}}.dump() << '\n';
  }
  return 0;
}

int cmd_dlambda(const Options& o, std::ostream& out) {
  auto ctx = DLambdaContext::make(o.p, o.d, o.h, o.prec);
  bool passed = false;
  Json checks = checks_json(run_dlambda_checks(ctx, o.seed, o.samples), passed);
  Json j{{"p", o.p}, {"d", o.d}, {"h", o.h}, {"prec", o.prec}, {"checks", checks}, {"passed", passed}};
  out << j.dump() << '\n';
  return passed ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slope computations: Newton polygons, isocrystals, division algebras, adic disks"};
  app.name("slopelab");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads for parallel sweeps")->check(CLI::Range(1, 1024))->capture_default_str();
  // CLI11 drops environment values that fail validation, so read it here
  if (const char* env = std::getenv("SLOPELAB_PREC")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || v < 8) {
      error_record(err, kModule, "UsageError", std::string("SLOPELAB_PREC must be an integer >= 8, got ") + env);
      return 2;
    }
    o.prec = v;
  }
  app.add_option("--prec", o.prec, "Working p-adic precision in digits (default from SLOPELAB_PREC)")
      ->check(CLI::Range(8L, 100000L))
      ->capture_default_str();

  auto* slopes = app.add_subcommand("slopes", "Newton slopes of an isocrystal given as JSON");
  slopes->add_option("file", o.file, "Isocrystal JSON file")->required()->check(CLI::ExistingFile);

  auto* np = app.add_subcommand("np", "Newton polygon calculus");
  np->require_subcommand(1);
  auto* dom = np->add_subcommand("dominance", "Compare two slope multisets");
  dom->add_option("--a", o.a, "First multiset, e.g. -1/2,-1/2")->required()->check(kSlopes);
  dom->add_option("--b", o.b, "Second multiset")->required()->check(kSlopes);
  auto* poly = np->add_subcommand("polygon", "Breakpoints of the polygon of a multiset");
  poly->add_option("--slopes", o.slopes, "Slope multiset")->required()->check(kSlopes);

  auto* kott = app.add_subcommand("kottwitz", "Enumerate B(GL_r, mu)");
  kott->add_option("--rank", o.rank, "r")->required()->check(CLI::Range(1, 12));
  kott->add_option("--mu", o.mu, "Integer cocharacter, e.g. 0,0,1")->required()->delimiter(',');

  auto* dl = app.add_subcommand("dlambda", "Cyclic division algebra D_lambda");
  dl->require_subcommand(1);
  dl->set_help_flag("--help", "Print this help message and exit");  // frees -h for the denominator
  dl->add_option("--p", o.p, "Prime")->required()->check(kPrime);
  dl->add_option("--d", o.d, "Numerator of lambda")->required();
  dl->add_option("--h", o.h, "Denominator of lambda")->required()->check(CLI::Range(1, 12));
  dl->add_option("--samples", o.samples, "Random elements per check")->check(CLI::Range(1, 1000))->capture_default_str();
  auto* dl_check = dl->add_subcommand("check", "Run the property suite");

  auto* tube = app.add_subcommand("tube", "Tube membership in the closed unit disk");
  tube->add_option("--p", o.p, "Prime")->required()->check(kPrime);
  tube->add_option("--closed", o.closed, "Polynomial f with Z inside V(f mod p)");
  tube->add_option("--open", o.opens, "Polynomials g with Z inside the union of D(g mod p)");
  tube->add_option("--point", o.point, "classical:a, disk:a:s or rank2:a:s:minus|plus")->required();

  auto* leg = app.add_subcommand("legendre", "Newton partition of the Legendre family");
  leg->add_option("--p", o.p, "Odd prime")->required()->check(kPrime);
  leg->add_option("--svg", o.svg, "Write the SVG picture here");
  leg->add_option("--csv", o.csv, "Write the CSV here instead of stdout");
  leg->add_option("--grid", o.grid, "'default' or a file of point descriptors")->capture_default_str();

  auto* hn = app.add_subcommand("hn-check", "Filtration dominance checks from a JSON document");
  hn->add_option("file", o.file, "hn-check JSON file")->required()->check(CLI::ExistingFile);

  auto* self = app.add_subcommand("selftest", "Run the invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_record(err, kModule, "UsageError", e.what());
    return 2;
  }

  try {
    if (*slopes) return cmd_slopes(o, out);
    if (*dom) {
      out << Json(std::string(to_string(dominance(SlopeMultiset::parse(o.a), SlopeMultiset::parse(o.b))))).dump() << '\n';
      return 0;
    }
    if (*poly) {
      auto m = SlopeMultiset::parse(o.slopes);
      out << Json{{"slopes", json_io::to_json(m)}, {"breakpoints", json_io::to_json(np_from_multiset(m))}}.dump() << '\n';
      return 0;
    }
    if (*kott) {
      Json a = Json::array();
      for (const auto& nu : kottwitz_set(o.rank, o.mu)) a.push_back(json_io::to_json(nu));
      out << a.dump() << '\n';
      return 0;
    }
    if (*dl_check) return cmd_dlambda(o, out);
    if (*tube) return cmd_tube(o, out);
    if (*leg) return cmd_legendre(o, out);
    if (*hn) {
      auto report = json_io::run_hn_check(json_io::parse(read_file(o.file)), o.jobs, o.prec);
      out << report.dump() << '\n';
      return report.at("passed").get<bool>() ? 0 : 1;
    }
    if (*self) {
      bool passed = false;
      Json checks = checks_json(run_selftest(o.seed, o.jobs), passed);
      out << Json{{"seed", o.seed}, {"checks", checks}, {"passed", passed}}.dump() << '\n';
      return passed ? 0 : 1;
    }
  } catch (const Error& e) {
    error_record(err, e.module(), to_string(e.kind()), e.what());
    return 1;
  } catch (const nlohmann::json::exception& e) {
    error_record(err, "json_io", to_string(ErrorKind::ParseError), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_record(err, kModule, "InternalError", e.what());
    return 1;
  }
  error_record(err, kModule, "UsageError", "no subcommand");
  return 2;
}

}  // namespace slopelab
