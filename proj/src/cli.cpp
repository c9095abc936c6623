#include "modpl/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "modpl/field_data.hpp"
#include "modpl/heuristics.hpp"
#include "modpl/parallel.hpp"
#include "modpl/verify_tables.hpp"

namespace modpl {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string data_dir;
  unsigned workers = default_workers();
  std::string format = "csv";
};

std::string join(const std::vector<u64>& v, const char* sep = " ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

void emit_reports(const std::vector<ScanReport>& reports, const Common& c, std::ostream& out, std::ostream& err) {
  if (c.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::json::parse(to_json(r)));
    out << arr.dump(2) << '\n';
  } else {
    bool header = true;
    for (const auto& r : reports) {
      out << to_csv(r, header);
      header = false;
    }
  }
  for (const auto& r : reports) {
    err << r.meta.field_id << " " << r.meta.mode << " [" << r.meta.range.lo << ", " << r.meta.range.hi << "]: "
        << r.hits.size() << " hit(s) {" << join(r.hit_primes(), ", ") << "} in " << std::fixed << std::setprecision(3)
        << r.meta.wall_time_s << "s, checksum " << checksum_hex(r.checksum()) << '\n';
    for (const auto& w : r.meta.warnings) err << "  warning: " << w << '\n';
  }
}

u64 parse_u64_arg(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  }
}

i64 parse_i64_arg(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  }
}

PrimeRange checked_range(u64 lo, u64 hi) {
  try {
    return PrimeRange(lo, hi);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string fmt_value(const HeuristicValue& v) {
  std::ostringstream s;
  s << v.exact.str() << " " << std::setprecision(12) << v.approx;
  return s.str();
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mod-p unit criteria: quadratic and cubic scans, Wieferich primes, heuristics"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--data-dir", common.data_dir, "Field and table data directory (overrides $MODPL_DATA_DIR)");
  app.add_option("--workers", common.workers, "Worker threads")->check(CLI::PositiveNumber);

  // scan-quad
  auto* quad = app.add_subcommand("scan-quad", "Real quadratic eps^(p^2-1) == 1 mod p^2 scan");
  std::string quad_d;
  u64 quad_pmax = 10000;
  bool quad_full = false;
  quad->add_option("--d", quad_d, "D or 'all'")->required();
  quad->add_option("--pmax", quad_pmax, "Scan primes 3 <= p < pmax");
  quad->add_flag("--full-verdicts", quad_full, "Also list clear and excluded primes");
  quad->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));

  // scan-cubic
  auto* cubic = app.add_subcommand("scan-cubic", "Complex cubic z-invariant scan");
  std::string cubic_delta, cubic_mode = "ordinary";
  u64 cubic_pmax = 200000;
  bool cubic_full = false;
  cubic->add_option("--delta", cubic_delta, "Discriminant or 'all'")->required();
  cubic->add_option("--pmax", cubic_pmax, "Scan primes p <= pmax");
  cubic->add_option("--mode", cubic_mode)->check(CLI::IsMember({"h2", "ordinary"}));
  cubic->add_flag("--full-verdicts", cubic_full, "Also list clear and excluded primes");
  cubic->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));

  // h5
  auto* h5 = app.add_subcommand("h5", "H5 exclusion sets");
  std::string h5_delta;
  h5->add_option("--delta", h5_delta, "Discriminant or 'all'")->required();
  h5->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));

  // wieferich
  auto* wief = app.add_subcommand("wieferich", "Primes with base^(p-1) == 1 mod p^2");
  u64 wief_base = 2, wief_pmin = 3, wief_pmax = 10000000;
  wief->add_option("--base", wief_base)->check(CLI::Range(u64{2}, ~u64{0}));
  wief->add_option("--pmin", wief_pmin);
  wief->add_option("--pmax", wief_pmax)->required();

  // heuristics
  auto* heur = app.add_subcommand("heuristics", "Closed-form probabilities and densities");
  heur->require_subcommand(1);
  u64 hp = 0;
  unsigned hn = 1, hm = 1;
  auto* inj = heur->add_subcommand("injective-prob", "P(random F_p^n -> F_p^m is injective)");
  inj->add_option("-p", hp)->required();
  inj->add_option("-n", hn)->required();
  inj->add_option("-m", hm)->required();
  auto* mc = heur->add_subcommand("monte-carlo", "Seeded Monte-Carlo estimate of the same probability");
  u64 mc_trials = 1000000, mc_seed = 42;
  mc->add_option("-p", hp)->required();
  mc->add_option("-n", hn)->required();
  mc->add_option("-m", hm)->required();
  mc->add_option("--trials", mc_trials);
  mc->add_option("--seed", mc_seed);
  auto* dens = heur->add_subcommand("densities", "Level-raising case densities i..iv");
  dens->add_option("-p", hp)->required();
  auto* mult = heur->add_subcommand("mult-dist", "Multiplicity distribution (#k0)^(1-i)(1-1/#k0)");
  u64 k0 = 3;
  unsigned imax = 5;
  mult->add_option("--k0", k0)->required();
  mult->add_option("--imax", imax);
  auto* mert = heur->add_subcommand("mertens", "sum_{p<=X} 1/p against log log X");
  u64 hx = 1000000;
  mert->add_option("-X", hx)->required();
  auto* expc = heur->add_subcommand("expected-count", "sum_{p<=X} 1/p^d");
  unsigned hd = 1;
  expc->add_option("-X", hx)->required();
  expc->add_option("-d", hd, "Exponent (1 for the 1/p model)");

  // verify-tables
  auto* verify = app.add_subcommand("verify-tables", "Recompute the reference tables and diff");
  std::string table = "all";
  u64 verify_pmax = 0;
  verify->add_option("--table", table)->check(CLI::IsMember({"quad_table", "h5_table", "cubic_ordinary_table", "all"}));
  verify->add_option("--pmax", verify_pmax, "Override the scan bound (default 10000 quad, 200000 cubic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  if (!common.data_dir.empty()) ::setenv(kDataDirEnv, common.data_dir.c_str(), 1);

  try {
    if (*quad) {
      auto fields = load_quad_fields(quad_fields_file());
      std::vector<QuadFieldRecord> chosen;
      if (quad_d == "all") {
        chosen = fields;
      } else {
        const u64 D = parse_u64_arg(quad_d, "D");
        for (const auto& f : fields)
          if (f.D == D) chosen.push_back(f);
        if (chosen.empty()) throw UsageError("D=" + quad_d + " is not in " + quad_fields_file().string());
      }
      if (quad_pmax <= kQuadMinPrime) throw UsageError("--pmax must exceed 3");
      const PrimeRange range = checked_range(kQuadMinPrime, quad_pmax - 1);
      std::vector<ScanReport> reports;
      for (const auto& rec : chosen) reports.push_back(scan_quadratic(rec, range, {quad_full, common.workers}));
      emit_reports(reports, common, out, err);
      return kExitOk;
    }

    if (*cubic || *h5) {
      auto fields = load_cubic_fields(cubic_fields_file());
      const std::string& sel = *cubic ? cubic_delta : h5_delta;
      std::vector<CubicFieldRecord> chosen;
      if (sel == "all") {
        chosen = fields;
      } else {
        const i64 delta = parse_i64_arg(sel, "delta");
        for (const auto& f : fields)
          if (f.delta == delta) chosen.push_back(f);
        if (chosen.empty()) throw UsageError("delta=" + sel + " is not in " + cubic_fields_file().string());
      }
      if (*h5) {
        if (common.format == "json") {
          nlohmann::json arr = nlohmann::json::array();
          for (const auto& rec : chosen) {
            arr.push_back({{"delta", rec.delta}, {"S", rec.ramified}, {"h5", rec.h5.reported}, {"h5_raw", rec.h5.raw}});
          }
          out << arr.dump(2) << '\n';
        } else {
          out << "delta,S,h5,h5_raw\n";
          for (const auto& rec : chosen) {
            out << rec.delta << ',' << join(rec.ramified) << ',' << join(rec.h5.reported) << ',' << join(rec.h5.raw) << '\n';
          }
        }
        return kExitOk;
      }
      const PrimeRange range = checked_range(2, cubic_pmax);
      const CubicMode mode = parse_cubic_mode(cubic_mode);
      std::vector<ScanReport> reports;
      for (const auto& rec : chosen) reports.push_back(scan_cubic(rec, range, mode, {cubic_full, common.workers}));
      emit_reports(reports, common, out, err);
      return kExitOk;
    }

    if (*wief) {
      const auto primes = wieferich_scan(wief_base, checked_range(std::max<u64>(wief_pmin, 2), wief_pmax), common.workers);
      out << "base,p\n";
      for (u64 p : primes) out << wief_base << ',' << p << '\n';
      err << "wieferich base " << wief_base << ": " << primes.size() << " prime(s)\n";
      return kExitOk;
    }

    if (*heur) {
      if (*inj) {
        out << fmt_value(injective_probability(hp, hn, hm)) << '\n';
      } else if (*mc) {
        const auto r = monte_carlo_injective(hp, hn, hm, mc_trials, mc_seed, common.workers);
        const auto exact = injective_probability(hp, hn, hm);
        out << "trials=" << r.trials << " successes=" << r.successes << " frequency=" << std::setprecision(10)
            << r.frequency << " std_error=" << r.std_error << " seed=" << r.seed << " exact=" << exact.exact.str()
            << '\n';
      } else if (*dens) {
        const auto d = level_raising_densities(hp);
        const char* names[] = {"i", "ii", "iii", "iv"};
        for (int k = 0; k < 4; ++k) out << names[k] << ' ' << fmt_value(d[static_cast<std::size_t>(k)]) << '\n';
      } else if (*mult) {
        for (unsigned i = 1; i <= imax; ++i) out << i << ' ' << fmt_value(multiplicity_distribution(k0, i)) << '\n';
        out << ">1 " << fmt_value(multiplicity_above_one(k0)) << '\n';
      } else if (*mert) {
        const auto m = mertens_count(hx);
        out << std::setprecision(12) << "sum=" << m.sum << " loglog=" << m.loglog << '\n';
      } else if (*expc) {
        const double v = hd <= 1 ? expected_exceptional_count(hx, ExceptionalModel::one_over_p)
                                 : expected_exceptional_count(hx, ExceptionalModel::one_over_p_power, hd);
        out << std::setprecision(12) << v << '\n';
      }
      return kExitOk;
    }

    if (*verify) {
      bool ok = true;
      const bool all = table == "all";
      if (all || table == "quad_table") {
        const auto fields = load_quad_fields(quad_fields_file());
        const auto ref = load_reference_table(reference_table_file("quad_table"), "quad_table");
        const auto diff = verify_quad_table(fields, ref, verify_pmax ? verify_pmax : 10000, common.workers);
        out << diff.render();
        ok = ok && diff.pass();
      }
      if (all || table == "h5_table" || table == "cubic_ordinary_table") {
        const auto fields = load_cubic_fields(cubic_fields_file());
        if (all || table == "h5_table") {
          const auto ref = load_reference_table(reference_table_file("h5_table"), "h5_table");
          const auto diff = verify_h5_table(fields, ref);
          out << diff.render();
          ok = ok && diff.pass();
        }
        if (all || table == "cubic_ordinary_table") {
          const auto ref = load_reference_table(reference_table_file("cubic_ordinary_table"), "cubic_ordinary_table");
          const auto diff = verify_cubic_table(fields, ref, verify_pmax ? verify_pmax : 200000, common.workers);
          out << diff.render();
          ok = ok && diff.pass();
        }
      }
      return ok ? kExitOk : kExitFailedCheck;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitBadData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailedCheck;
  }
  return kExitOk;
}

}  // namespace modpl
