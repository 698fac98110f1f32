#pragma once

#include <cerrno>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetplane/contactization.hpp"
#include "jetplane/pdesing.hpp"
#include "jetplane/polar.hpp"
#include "jetplane/serialize.hpp"

namespace jetplane {

using OrderedJson = nlohmann::ordered_json;

// Exit statuses: verification failures and malformed inputs are distinct.
constexpr int kExitPass = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitBadInput = 2;

struct RunConfig {
  std::string subcommand;
  int n = 3, m = 1, k = 2, s = 1;
  std::uint64_t seed = 1;
  int samples = 5;
  std::string input_path;
  std::string format = "text";  // "text" | "json"
  bool verify = false;          // contactize: also run the seeded sweep
  // grid bounds (inclusive)
  int n_min = 2, n_max = 4;
  int m_min = 1, m_max = 2;
  int k_min = 2, k_max = 4;
};

struct CliResult {
  int exit_code = 0;
  std::string output;
};

// ---------------------------------------------------------------------------
// Environment defaults: JETPLANE_SEED and JETPLANE_GRID_{N,M,K}{MIN,MAX}
// override the built-in defaults for values the command line left unset.
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t parse_env_u64(const char* name, const char* value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value, &end, 10);
  if (errno != 0 || end == value || *end != '\0' || value[0] == '-')
    throw std::invalid_argument(std::string(name) +
                                ": invalid unsigned integer '" + value + "'");
  return static_cast<std::uint64_t>(v);
}

inline int parse_env_int(const char* name, const char* value) {
  const std::uint64_t v = parse_env_u64(name, value);
  if (v < 1 || v > 16)
    throw std::invalid_argument(std::string(name) + ": out of range [1, 16]");
  return static_cast<int>(v);
}

}  // namespace detail

// Which values the command line set explicitly. Each environment variable
// only fills in the one value whose flag was left unset, so e.g. an explicit
// --m-max does not stop JETPLANE_GRID_NMAX from applying.
struct ExplicitFlags {
  bool seed = false;
  bool n_min = false, n_max = false;
  bool m_min = false, m_max = false;
  bool k_min = false, k_max = false;
};

inline void apply_env_defaults(RunConfig& cfg, const ExplicitFlags& given) {
  if (!given.seed) {
    if (const char* v = std::getenv("JETPLANE_SEED"))
      cfg.seed = detail::parse_env_u64("JETPLANE_SEED", v);
  }
  struct Slot {
    const char* name;
    int* target;
    bool skip;
  };
  const Slot slots[] = {
      {"JETPLANE_GRID_NMIN", &cfg.n_min, given.n_min},
      {"JETPLANE_GRID_NMAX", &cfg.n_max, given.n_max},
      {"JETPLANE_GRID_MMIN", &cfg.m_min, given.m_min},
      {"JETPLANE_GRID_MMAX", &cfg.m_max, given.m_max},
      {"JETPLANE_GRID_KMIN", &cfg.k_min, given.k_min},
      {"JETPLANE_GRID_KMAX", &cfg.k_max, given.k_max},
  };
  for (const auto& s : slots)
    if (!s.skip)
      if (const char* v = std::getenv(s.name))
        *s.target = detail::parse_env_int(s.name, v);
}

// ---------------------------------------------------------------------------
// Rendering helpers.
// ---------------------------------------------------------------------------

namespace detail {

inline OrderedJson rational_json(const Rational& q) {
  OrderedJson j;
  j["num"] = q.get_num().get_str();
  j["den"] = q.get_den().get_str();
  return j;
}

inline OrderedJson fiber_point_json(const FiberPoint3& t) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& v : t.u) arr.push_back(rational_json(v));
  return arr;
}

inline OrderedJson measured(long value, const char* provenance) {
  OrderedJson j;
  j["value"] = value;
  j["provenance"] = provenance;
  return j;
}

inline const char* yn(bool b) { return b ? "yes" : "no"; }

inline std::string fiber_point_text(const FiberPoint3& t) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ", ";
    s += to_string(t.u[i]);
  }
  return s + ")";
}

inline CliResult finish(const RunConfig& cfg, const OrderedJson& j,
                        const std::string& text, bool pass) {
  CliResult r;
  r.exit_code = pass ? kExitPass : kExitFalsified;
  r.output = (cfg.format == "json") ? j.dump(2) + "\n" : text;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

inline CliResult run_dims(const RunConfig& cfg) {
  const Context ctx(cfg.n, cfg.m, cfg.k);
  const DimReport rep = dim_report(ctx, cfg.s);
  const bool pass = rep.consistent;

  OrderedJson j;
  j["subcommand"] = "dims";
  j["context"] = {{"n", ctx.n}, {"m", ctx.m}, {"k", ctx.k}};
  j["s"] = cfg.s;
  j["dim_flag"] = detail::measured(rep.dim_flag, "FORMULA");
  j["dim_is"] = detail::measured(rep.dim_is, "FORMULA");
  j["fiber_dim"] = detail::measured(rep.fiber_dim, "FORMULA");
  j["fiber_rank"] = detail::measured(rep.fiber_rank_oracle, "RANK");
  j["fiber_consistent"] = rep.consistent;
  if (ctx.k >= 2) {
    j["dim_polar"] = detail::measured(dim_polar_formula(ctx, cfg.s), "FORMULA");
    j["sharp_rank"] =
        detail::measured(sharp_rank_formula(ctx, cfg.s), "FORMULA");
  }
  j["pass"] = pass;

  std::ostringstream t;
  t << "dims n=" << ctx.n << " m=" << ctx.m << " k=" << ctx.k << " s=" << cfg.s
    << "\n";
  t << "dim_flag " << rep.dim_flag << " FORMULA\n";
  t << "dim_is " << rep.dim_is << " FORMULA\n";
  t << "fiber_dim " << rep.fiber_dim << " FORMULA\n";
  t << "fiber_rank " << rep.fiber_rank_oracle << " RANK\n";
  t << "fiber_consistent " << detail::yn(rep.consistent) << "\n";
  if (ctx.k >= 2) {
    t << "dim_polar " << dim_polar_formula(ctx, cfg.s) << " FORMULA\n";
    t << "sharp_rank " << sharp_rank_formula(ctx, cfg.s) << " FORMULA\n";
  }
  t << "pass " << detail::yn(pass) << "\n";
  return detail::finish(cfg, j, t.str(), pass);
}

inline CliResult run_check(const RunConfig& cfg) {
  if (cfg.input_path.empty())
    throw std::invalid_argument("check: --input <file> is required");
  const CartanSubspace cs = read_subspace_file(cfg.input_path);
  const Context& ctx = cs.context();
  const bool horizontal = is_horizontal(cs);
  const bool isotropic = is_isotropic(cs);
  const bool integral = is_integral_element(cs);

  OrderedJson j;
  j["subcommand"] = "check";
  j["context"] = {{"n", ctx.n}, {"m", ctx.m}, {"k", ctx.k}};
  j["dim"] = cs.dim();
  j["shadow_dim"] = shadow(cs).dim();
  j["horizontal"] = horizontal;
  j["isotropic"] = isotropic;
  j["integral"] = integral;
  j["pass"] = integral;

  std::ostringstream t;
  t << "check n=" << ctx.n << " m=" << ctx.m << " k=" << ctx.k << "\n";
  t << "dim " << cs.dim() << "\n";
  t << "shadow_dim " << shadow(cs).dim() << "\n";
  t << "horizontal " << detail::yn(horizontal) << "\n";
  t << "isotropic " << detail::yn(isotropic) << "\n";
  t << "integral " << detail::yn(integral) << "\n";
  t << "pass " << detail::yn(integral) << "\n";
  return detail::finish(cfg, j, t.str(), integral);
}

inline CliResult run_fiber(const RunConfig& cfg) {
  if (cfg.input_path.empty())
    throw std::invalid_argument("fiber: --input <file> is required");
  const CartanSubspace cs = read_subspace_file(cfg.input_path);
  const Context& ctx = cs.context();
  const SymPoly p = fiber_representative(cs);  // validates the preconditions
  const bool roundtrip = (lift(ctx, shadow(cs), p) == cs);
  const auto& monos = monomials(ctx.n, ctx.k);

  OrderedJson j;
  j["subcommand"] = "fiber";
  j["context"] = {{"n", ctx.n}, {"m", ctx.m}, {"k", ctx.k}};
  j["dim"] = cs.dim();
  OrderedJson coefs = OrderedJson::array();
  std::ostringstream t;
  t << "fiber n=" << ctx.n << " m=" << ctx.m << " k=" << ctx.k
    << " dim=" << cs.dim() << "\n";
  for (int jj = 0; jj < ctx.m; ++jj)
    for (size_t idx = 0; idx < monos.size(); ++idx) {
      const Rational& v = p.coef(static_cast<int>(idx), jj);
      if (v == 0) continue;
      OrderedJson entry;
      entry["component"] = jj + 1;
      entry["exponents"] = monos[idx];
      entry["value"] = detail::rational_json(v);
      coefs.push_back(std::move(entry));
      t << "coef component=" << (jj + 1) << " exponents=";
      for (size_t e = 0; e < monos[idx].size(); ++e)
        t << (e ? "," : "") << monos[idx][e];
      t << " value=" << to_string(v) << "\n";
    }
  j["coefficients"] = std::move(coefs);
  j["roundtrip_exact"] = roundtrip;
  j["pass"] = roundtrip;
  t << "roundtrip_exact " << detail::yn(roundtrip) << "\n";
  t << "pass " << detail::yn(roundtrip) << "\n";
  return detail::finish(cfg, j, t.str(), roundtrip);
}

inline CliResult run_verify_theorem1(const RunConfig& cfg) {
  const Context ctx(cfg.n, cfg.m, cfg.k);
  if (cfg.samples < 1)
    throw std::invalid_argument("verify-theorem1: --samples must be >= 1");
  const Theorem1Report rep =
      verify_theorem1(ctx, cfg.s, cfg.seed, cfg.samples);

  OrderedJson j;
  j["subcommand"] = "verify-theorem1";
  j["context"] = {{"n", ctx.n}, {"m", ctx.m}, {"k", ctx.k}};
  j["s"] = cfg.s;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["dim_is"] = detail::measured(rep.dim_is, "FORMULA");
  j["fiber_dim"] = detail::measured(rep.fiber_dim, "FORMULA");
  OrderedJson results = OrderedJson::array();
  std::ostringstream body;
  for (const auto& s : rep.samples) {
    OrderedJson r;
    r["index"] = s.index;
    r["stabilizer_ok"] = s.stabilizer_ok;
    r["rank_ok"] = s.rank_ok;
    r["transitivity_ok"] = s.transitivity_ok;
    r["stabilizer_dim"] = s.stabilizer_dim;
    r["fiber_rank"] = detail::measured(s.fiber_rank, "RANK");
    results.push_back(std::move(r));
    if (!(s.stabilizer_ok && s.rank_ok && s.transitivity_ok))
      body << "FAIL sample " << s.index << ": stabilizer="
           << detail::yn(s.stabilizer_ok) << " rank=" << detail::yn(s.rank_ok)
           << " transitivity=" << detail::yn(s.transitivity_ok)
           << " fiber_rank=" << s.fiber_rank << " (RANK)\n";
  }
  j["results"] = std::move(results);
  j["pass"] = rep.all_ok;

  std::ostringstream t;
  t << "verify-theorem1 n=" << ctx.n << " m=" << ctx.m << " k=" << ctx.k
    << " s=" << cfg.s << " seed=" << cfg.seed << " samples=" << cfg.samples
    << "\n";
  t << "dim_is " << rep.dim_is << " FORMULA\n";
  t << "fiber_dim " << rep.fiber_dim << " FORMULA\n";
  t << body.str();
  t << "all_ok " << detail::yn(rep.all_ok) << "\n";
  return detail::finish(cfg, j, t.str(), rep.all_ok);
}

inline CliResult run_polar(const RunConfig& cfg) {
  const Context ctx(cfg.n, cfg.m, cfg.k);
  if (cfg.samples < 1)
    throw std::invalid_argument("polar: --samples must be >= 1");
  const PolarReport rep = verify_polar(ctx, cfg.s, cfg.seed, cfg.samples);

  OrderedJson j;
  j["subcommand"] = "polar";
  j["context"] = {{"n", ctx.n}, {"m", ctx.m}, {"k", ctx.k}};
  j["s"] = cfg.s;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["tangent_dim"] = detail::measured(rep.tangent_dim_expected, "FORMULA");
  j["polar_dim"] = detail::measured(rep.polar_dim_expected, "FORMULA");
  j["sharp_rank"] = detail::measured(rep.sharp_rank_expected, "FORMULA");
  OrderedJson results = OrderedJson::array();
  std::ostringstream body;
  for (const auto& s : rep.samples) {
    OrderedJson r;
    r["index"] = s.index;
    r["tangent_dim"] = detail::measured(s.tangent_dim, "RANK");
    r["polar_dim"] = detail::measured(s.polar_dim, "RANK");
    r["sharp_rank"] = detail::measured(s.sharp_rank, "RANK");
    r["tangent_ok"] = s.tangent_ok;
    r["polar_ok"] = s.polar_ok;
    r["sharp_rank_ok"] = s.sharp_rank_ok;
    results.push_back(std::move(r));
    if (!(s.tangent_ok && s.polar_ok && s.sharp_rank_ok))
      body << "FAIL sample " << s.index << ": tangent=" << s.tangent_dim
           << " polar=" << s.polar_dim << " sharp=" << s.sharp_rank
           << " (RANK)\n";
  }
  j["results"] = std::move(results);
  j["pass"] = rep.all_ok;

  std::ostringstream t;
  t << "polar n=" << ctx.n << " m=" << ctx.m << " k=" << ctx.k
    << " s=" << cfg.s << " seed=" << cfg.seed << " samples=" << cfg.samples
    << "\n";
  t << "tangent_dim " << rep.tangent_dim_expected << " FORMULA\n";
  t << "polar_dim " << rep.polar_dim_expected << " FORMULA\n";
  t << "sharp_rank " << rep.sharp_rank_expected << " FORMULA\n";
  t << body.str();
  t << "all_ok " << detail::yn(rep.all_ok) << "\n";
  return detail::finish(cfg, j, t.str(), rep.all_ok);
}

inline CliResult run_contactize(const RunConfig& cfg) {
  const auto frame = polar_frame(cfg.n, cfg.m);
  const Chart chart = line_chart(cfg.n, cfg.m);

  OrderedJson j;
  j["subcommand"] = "contactize";
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["chart"] = chart.names;
  j["frame_size"] = frame.size();
  OrderedJson fields = OrderedJson::array();
  for (const auto& f : frame) fields.push_back(f.to_string());
  j["frame"] = std::move(fields);

  std::ostringstream t;
  t << "contactize n=" << cfg.n << " m=" << cfg.m << "\n";
  t << "chart";
  for (const auto& name : chart.names) t << " " << name;
  t << "\n";
  t << "frame_size " << frame.size() << "\n";
  for (size_t i = 0; i < frame.size(); ++i)
    t << "frame[" << i << "] " << frame[i].to_string() << "\n";

  bool pass = true;
  if (cfg.verify) {
    if (cfg.samples < 1)
      throw std::invalid_argument("contactize: --samples must be >= 1");
    const ContactReport rep =
        kernel_condition_check(cfg.n, cfg.m, cfg.seed, cfg.samples);
    pass = rep.all_ok;
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["polar_dim_expected"] = detail::measured(rep.polar_dim_expected,
                                               "FORMULA");
    OrderedJson results = OrderedJson::array();
    for (const auto& s : rep.samples) {
      OrderedJson r;
      r["index"] = s.index;
      r["polar_dim"] = detail::measured(s.polar_dim, "RANK");
      r["frame_spans_polar"] = s.frame_spans_polar;
      r["membership_matches"] = s.membership_matches;
      results.push_back(std::move(r));
      if (!(s.frame_spans_polar && s.membership_matches))
        t << "FAIL sample " << s.index << ": polar_dim=" << s.polar_dim
          << " spans=" << detail::yn(s.frame_spans_polar)
          << " membership=" << detail::yn(s.membership_matches) << "\n";
    }
    j["results"] = std::move(results);
    t << "polar_dim_expected " << rep.polar_dim_expected << " FORMULA\n";
    t << "seed " << cfg.seed << " samples " << cfg.samples << "\n";
    t << "all_ok " << detail::yn(rep.all_ok) << "\n";
  }
  j["pass"] = pass;
  t << "pass " << detail::yn(pass) << "\n";
  return detail::finish(cfg, j, t.str(), pass);
}

inline CliResult run_ma_example(const RunConfig& cfg) {
  const MaExampleReport rep = ma_example(cfg.seed);
  const char* verdict =
      rep.not_contact_equivalent ? "NOT_CONTACT_EQUIVALENT" : "INCONCLUSIVE";

  OrderedJson j;
  j["subcommand"] = "ma-example";
  j["seed"] = cfg.seed;
  j["equation"] = "u_xxy*u_yyy - u_xyy^2";
  j["control_equation"] = "u_xxx + u_yyy";
  OrderedJson fibers = OrderedJson::array();
  for (const auto& s : rep.fiber_samples) {
    OrderedJson r;
    r["c"] = detail::rational_json(s.c);
    r["on_equation"] = s.on_equation;
    r["symbol_vanishes"] = s.symbol_vanishes;
    fibers.push_back(std::move(r));
  }
  j["fiber_samples"] = std::move(fibers);
  j["family_on_locus"] = rep.family_on_locus;
  OrderedJson lines = OrderedJson::array();
  for (const auto& s : rep.line_samples) {
    OrderedJson r;
    r["a"] = detail::rational_json(s.a);
    r["c"] = detail::rational_json(s.c);
    r["status"] = to_string(s.status);
    r["witness"] = detail::fiber_point_json(s.witness);
    r["witness_verified"] = s.witness_verified;
    r["lower_bound"] = s.lower_bound;
    lines.push_back(std::move(r));
  }
  j["line_samples"] = std::move(lines);
  j["all_members_verified"] = rep.all_members_verified;
  j["lower_bound_holds"] = rep.lower_bound_holds;
  OrderedJson control;
  control["status"] = to_string(rep.control_status);
  control["witness"] = detail::fiber_point_json(rep.control_witness);
  control["upper_bound"] = rep.control_upper_bound;
  j["control"] = std::move(control);
  j["verdict"] = verdict;
  j["pass"] = rep.not_contact_equivalent;

  std::ostringstream t;
  t << "ma-example seed=" << cfg.seed << "\n";
  t << "equation u_xxy*u_yyy - u_xyy^2\n";
  t << "control u_xxx + u_yyy\n";
  t << "fiber_samples " << rep.fiber_samples.size() << " family_on_locus="
    << detail::yn(rep.family_on_locus) << "\n";
  for (size_t i = 0; i < rep.line_samples.size(); ++i) {
    const auto& s = rep.line_samples[i];
    t << "line " << i << ": a=" << to_string(s.a) << " c=" << to_string(s.c)
      << " status=" << to_string(s.status)
      << " witness=" << detail::fiber_point_text(s.witness)
      << " verified=" << detail::yn(s.witness_verified)
      << " lower_bound=" << s.lower_bound << "\n";
  }
  t << "all_members_verified " << detail::yn(rep.all_members_verified) << "\n";
  t << "lower_bound_holds " << detail::yn(rep.lower_bound_holds) << "\n";
  t << "control status=" << to_string(rep.control_status)
    << " witness=" << detail::fiber_point_text(rep.control_witness)
    << " upper_bound=" << rep.control_upper_bound << "\n";
  t << "verdict " << verdict << "\n";
  return detail::finish(cfg, j, t.str(), rep.not_contact_equivalent);
}

inline CliResult run_grid(const RunConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_min > cfg.n_max || cfg.m_min < 1 ||
      cfg.m_min > cfg.m_max || cfg.k_min < 1 || cfg.k_min > cfg.k_max)
    throw std::invalid_argument("grid: empty or invalid parameter ranges");
  if (cfg.samples < 1)
    throw std::invalid_argument("grid: --samples must be >= 1");

  OrderedJson cells = OrderedJson::array();
  std::ostringstream body;
  long failures = 0, total = 0;
  // Cells are emitted sorted by (n, m, k, s).
  for (int n = cfg.n_min; n <= cfg.n_max; ++n)
    for (int m = cfg.m_min; m <= cfg.m_max; ++m)
      for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        const Context ctx(n, m, k);
        for (int s = 1; s <= n; ++s) {
          ++total;
          const DimReport dr = dim_report(ctx, s);
          const bool t1 =
              verify_theorem1(ctx, s, cfg.seed, cfg.samples).all_ok;
          const bool has_polar = (k >= 2);
          const bool pol =
              has_polar ? verify_polar(ctx, s, cfg.seed, cfg.samples).all_ok
                        : true;
          const bool ok = dr.consistent && t1 && pol;
          if (!ok) ++failures;

          OrderedJson c;
          c["n"] = n;
          c["m"] = m;
          c["k"] = k;
          c["s"] = s;
          c["dims_consistent"] = dr.consistent;
          c["theorem1_ok"] = t1;
          if (has_polar)
            c["polar_ok"] = pol;
          else
            c["polar_ok"] = nullptr;
          c["ok"] = ok;
          cells.push_back(std::move(c));

          body << "cell n=" << n << " m=" << m << " k=" << k << " s=" << s
               << ": dims=" << detail::yn(dr.consistent)
               << " theorem1=" << detail::yn(t1)
               << " polar=" << (has_polar ? detail::yn(pol) : "skip")
               << (ok ? "" : "  <-- FAIL") << "\n";
        }
      }

  const bool pass = (failures == 0);
  OrderedJson j;
  j["subcommand"] = "grid";
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["bounds"] = {{"n_min", cfg.n_min}, {"n_max", cfg.n_max},
                 {"m_min", cfg.m_min}, {"m_max", cfg.m_max},
                 {"k_min", cfg.k_min}, {"k_max", cfg.k_max}};
  j["cells"] = std::move(cells);
  j["total"] = total;
  j["failures"] = failures;
  j["pass"] = pass;

  std::ostringstream t;
  t << "grid n=" << cfg.n_min << ".." << cfg.n_max << " m=" << cfg.m_min
    << ".." << cfg.m_max << " k=" << cfg.k_min << ".." << cfg.k_max
    << " seed=" << cfg.seed << " samples=" << cfg.samples << "\n";
  t << body.str();
  t << "cells " << total << " failures " << failures << "\n";
  t << "pass " << detail::yn(pass) << "\n";
  return detail::finish(cfg, j, t.str(), pass);
}

// Dispatch with the documented exit-code contract: malformed input (including
// bad parameters and serialization errors) exits 2 with a diagnostic, and any
// falsified verification exits 1 with its certificate in the report.
inline CliResult run_cli(const RunConfig& cfg) {
  try {
    if (cfg.format != "text" && cfg.format != "json")
      throw std::invalid_argument("unknown output format: " + cfg.format);
    if (cfg.subcommand == "dims") return run_dims(cfg);
    if (cfg.subcommand == "check") return run_check(cfg);
    if (cfg.subcommand == "fiber") return run_fiber(cfg);
    if (cfg.subcommand == "verify-theorem1") return run_verify_theorem1(cfg);
    if (cfg.subcommand == "polar") return run_polar(cfg);
    if (cfg.subcommand == "contactize") return run_contactize(cfg);
    if (cfg.subcommand == "ma-example") return run_ma_example(cfg);
    if (cfg.subcommand == "grid") return run_grid(cfg);
    throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
  } catch (const ParseError& e) {
    return {kExitBadInput, std::string("error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kExitBadInput, std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitFalsified, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace jetplane
