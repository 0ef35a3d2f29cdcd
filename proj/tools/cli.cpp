#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "orthodisk/bessel.hpp"
#include "orthodisk/bound.hpp"
#include "orthodisk/geometry.hpp"
#include "orthodisk/katz_tao.hpp"
#include "orthodisk/parallel.hpp"
#include "orthodisk/report.hpp"
#include "orthodisk/search.hpp"
#include "orthodisk/tubes.hpp"

#ifndef ORTHODISK_VERSION
#define ORTHODISK_VERSION "0.0.0"
#endif

namespace orthodisk::cli {
namespace {

using report::Json;

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io_error", what) {}
};

// Precision used for zeros computed on the fly.
constexpr double kZeroTol = 1e-13;

struct Params {
  int threads = 0;

  std::string out, manifest, points, alphabet = "bessel", zeros, kind;
  int n_max = 0;
  double tol = 1e-9;
  double zeros_tol = 1e-12;
  int scales = 10;
  double delta = 0.0, eps = 0.0, eps_prime = 0.0, K = 100.0, s = 0.0, C = 1.0;
  double R = 0.0;
  double scan_R = 5.0;
  long budget = 1'000'000;
  int max_points = 64;
  std::uint64_t seed = 0;
  long triangles = 1000;
  std::vector<double> square;
  long count = 0;
  double spacing = 1.0;
  int depth = 0;
};

struct Context {
  std::vector<std::pair<std::string, std::string>> inputs;

  std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    inputs.emplace_back(path, sha256_file(path));
    return in;
  }
};

PointSet load_points(Context& ctx, const std::string& path) {
  auto in = ctx.open(path);
  return read_points_csv(in);
}

std::shared_ptr<const bessel::ZeroTable> zero_table(Context& ctx, const Params& p, double d_max) {
  if (!p.zeros.empty()) {
    auto in = ctx.open(p.zeros);
    return std::make_shared<const bessel::ZeroTable>(bessel::read_csv(in));
  }
  const int n_max = static_cast<int>(std::ceil(2.0 * d_max)) + 2;
  return std::make_shared<const bessel::ZeroTable>(bessel::compute_zeros(n_max, kZeroTol));
}

DistanceAlphabet make_alphabet(Context& ctx, const Params& p, double d_max) {
  if (p.alphabet == "bessel") return DistanceAlphabet::bessel(zero_table(ctx, p, d_max), p.tol);
  if (p.alphabet == "integers") return DistanceAlphabet::integers(p.tol);
  if (p.alphabet == "shifted") return DistanceAlphabet::shifted(p.tol);
  throw InvalidArgument("unknown alphabet '" + p.alphabet + "'");
}

katz_tao::SquareSpec square_for(const PointSet& a, const std::vector<double>& given) {
  if (given.size() == 3) return {Point(given[0], given[1]), given[2]};
  const double R = a.scale();
  const katz_tao::SquareSpec upper{Point(0, 0), R};
  bool all_in = true;
  for (Eigen::Index i = 0; i < a.size() && all_in; ++i) all_in = upper.contains(a[i]);
  if (all_in) return upper;
  return {Point(-R, -R), 2.0 * R};
}

std::string json_text(const Json& j) { return report::dump(j); }

std::string cmd_zeros(Context&, const Params& p) {
  const auto table = bessel::compute_zeros(p.n_max, p.zeros_tol);
  std::ostringstream s;
  bessel::write_csv(s, table);
  return s.str();
}

std::string cmd_sumfree(Context&, const Params& p) {
  const auto table = bessel::compute_zeros(p.n_max, kZeroTol);
  return json_text(report::to_json(bessel::sum_free_margin(table), p.n_max));
}

std::string cmd_check(Context& ctx, const Params& p) {
  const auto a = load_points(ctx, p.points);
  const auto dists = distance_set(a);
  const double d_max = dists.empty() ? 1.0 : dists.back();
  const auto alphabet = make_alphabet(ctx, p, d_max);
  Json j = report::to_json(check_distances(a, alphabet));
  j["alphabet"] = alphabet.name();
  j["tol"] = alphabet.tol();
  j["n_points"] = a.size();
  return json_text(j);
}

std::string cmd_analyze(Context& ctx, const Params& p) {
  const auto a = load_points(ctx, p.points);
  Json j = {{"n_points", a.size()}, {"R", a.scale()}, {"profile", report::to_json(katz_tao::dimension_profile(a, p.scales))}};
  if (a.size() >= 2) {
    const auto l2 = lemma2_ratio(a);
    j["separation"] = {{"ratio", l2.ratio}, {"t", l2.t}};
  }
  return json_text(j);
}

std::string cmd_certify(Context& ctx, const Params& p) {
  const auto a = load_points(ctx, p.points);
  return json_text(report::to_json(katz_tao::certify(a, square_for(a, p.square), p.delta, p.s, p.C)));
}

std::string cmd_tubes(Context& ctx, const Params& p) {
  const auto a = load_points(ctx, p.points);
  const auto q = square_for(a, p.square);
  const auto unit = katz_tao::rescale_to_unit(a, q);
  return json_text({{"delta", p.delta}, {"s", p.s}, {"tubes", report::to_json(tubes::tube_report(unit, p.delta, p.s))}});
}

std::string cmd_prop(Context& ctx, const Params& p) {
  const auto a = load_points(ctx, p.points);
  const auto unit = katz_tao::rescale_to_unit(a, square_for(a, p.square));
  return json_text(report::to_json(tubes::proposition_tubes(unit, p.delta, p.eps, p.eps_prime, p.K)));
}

std::string cmd_triple(Context& ctx, const Params& p) {
  const auto a = load_points(ctx, p.points);
  const auto q = square_for(a, p.square);
  Json j = report::to_json(tubes::find_separated_triple(a, q, p.delta, p.eps));
  j["square"] = {{"x", q.corner.x()}, {"y", q.corner.y()}, {"w", q.side}};
  return json_text(j);
}

search::SearchConfig search_config(Context& ctx, const Params& p, double R) {
  if (!(R > 0.0)) throw InvalidArgument("--R must be positive");
  const double d_max = 2.0 * std::numbers::sqrt2 * R;
  return {R, make_alphabet(ctx, p, d_max), p.tol, p.max_points, p.budget, p.seed};
}

std::string cmd_search(Context& ctx, const Params& p) {
  const auto config = search_config(ctx, p, p.R);
  const auto res = search::search_max(config);
  Json j = report::to_json(res);
  j["partial"] = !res.exhausted;
  j["alphabet"] = config.alphabet.name();
  j["R"] = config.R;
  j["tol"] = config.tol;
  j["collinear_triples"] = search::collinear_scan(config.alphabet, 2.0 * std::numbers::sqrt2 * config.R).size();
  return json_text(j);
}

std::string cmd_scan4(Context& ctx, const Params& p) {
  if (p.triangles < 0) throw InvalidArgument("--triangles must be >= 0");
  const auto config = search_config(ctx, p, p.scan_R);
  Json j = report::to_json(search::four_point_scan(config, static_cast<std::size_t>(p.triangles)));
  j["alphabet"] = config.alphabet.name();
  j["seed"] = p.seed;
  return json_text(j);
}

std::string cmd_bound(Context&, const Params& p) {
  const auto opt = bound::optimize_u(p.R, p.eps);
  Json j = report::to_json(opt);
  j["at_boundary"] = opt.at_boundary;
  return json_text(j);
}

std::string cmd_generate(Context&, const Params& p) {
  const bound::GenerateParams g{p.delta, p.count, p.spacing, p.R, p.s, p.depth};
  std::ostringstream s;
  write_points_csv(s, bound::generate(bound::parse_kind(p.kind), g));
  return s.str();
}

using Action = std::function<std::string(Context&, const Params&)>;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string option_value(const CLI::Option* opt) {
  if (opt->count() > 0) {
    std::string v;
    for (const auto& r : opt->results()) v += (v.empty() ? "" : ",") + r;
    return v;
  }
  return opt->get_default_str();
}

void print_error(std::ostream& err, const std::string& code, const std::string& message, int required = 0) {
  nlohmann::ordered_json j = {{"error", code}, {"message", message}};
  if (required > 0) j["required_n_max"] = required;
  err << j.dump() << std::endl;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Params p;
  CLI::App app{"Orthogonal exponentials for the disk: numerical experiments", "orthodisk"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ORTHODISK_VERSION);
  auto* threads_opt = app.add_option("--threads", p.threads, "Worker threads (0 = hardware concurrency)")
                          ->envname("ORTHODISK_THREADS")
                          ->check(CLI::NonNegativeNumber);

  std::vector<std::pair<CLI::App*, Action>> commands;
  auto add = [&](const std::string& name, const std::string& help, Action action) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", p.out, "Artifact path (default: standard output)");
    sub->add_option("--manifest", p.manifest, "Manifest path (default: <out>.manifest.json)");
    commands.emplace_back(sub, std::move(action));
    return sub;
  };
  auto alphabet_opt = [&](CLI::App* sub) {
    sub->add_option("--alphabet", p.alphabet, "Distance alphabet")
        ->check(CLI::IsMember({"bessel", "integers", "shifted"}));
    sub->add_option("--zeros", p.zeros, "Zero table CSV for the bessel alphabet (computed when omitted)");
  };

  auto* zeros = add("zeros", "Certified zeros of J1(2 pi r) as CSV", cmd_zeros);
  zeros->add_option("--n-max", p.n_max, "Number of zeros")->required();
  zeros->add_option("--tol", p.zeros_tol, "Certified half-width");

  auto* sumfree = add("sumfree", "Sum-free margin of the zero alphabet", cmd_sumfree);
  sumfree->add_option("--n-max", p.n_max, "Number of zeros")->required();

  auto* check = add("check", "Check pairwise distances against an alphabet", cmd_check);
  check->add_option("--points", p.points, "Point CSV")->required();
  alphabet_opt(check);
  check->add_option("--tol", p.tol, "Matching tolerance");

  auto* analyze = add("analyze", "Occupied-cell dimension profile", cmd_analyze);
  analyze->add_option("--points", p.points, "Point CSV")->required();
  analyze->add_option("--scales", p.scales, "Number of dyadic scales");

  auto* certify = add("certify", "Katz-Tao (delta, s, C) certification", cmd_certify);
  certify->add_option("--points", p.points, "Point CSV")->required();
  certify->add_option("--delta", p.delta, "delta")->required();
  certify->add_option("--s", p.s, "Exponent s")->required();
  certify->add_option("--C", p.C, "Constant C");
  certify->add_option("--square", p.square, "Square x,y,w")->delimiter(',')->expected(3);

  auto* tubes_cmd = add("tubes", "Per-tube counts and energies", cmd_tubes);
  tubes_cmd->add_option("--points", p.points, "Point CSV")->required();
  tubes_cmd->add_option("--delta", p.delta, "Tube width")->required();
  tubes_cmd->add_option("--s", p.s, "Energy exponent")->required();
  tubes_cmd->add_option("--square", p.square, "Square x,y,w")->delimiter(',')->expected(3);

  auto* prop = add("prop", "Qualifying tubes with small energy", cmd_prop);
  prop->add_option("--points", p.points, "Point CSV")->required();
  prop->add_option("--delta", p.delta, "Tube width")->required();
  prop->add_option("--eps", p.eps, "eps")->required();
  prop->add_option("--eps-prime", p.eps_prime, "eps'")->required();
  prop->add_option("--K", p.K, "Energy constant");
  prop->add_option("--square", p.square, "Square x,y,w")->delimiter(',')->expected(3);

  auto* triple = add("triple", "Separated triple in a thin strip", cmd_triple);
  triple->add_option("--points", p.points, "Point CSV")->required();
  triple->add_option("--delta", p.delta, "delta")->required();
  triple->add_option("--eps", p.eps, "eps")->required();
  triple->add_option("--square", p.square, "Square x,y,w")->delimiter(',')->expected(3);

  auto* search_cmd = add("search", "Largest configuration with alphabet distances", cmd_search);
  alphabet_opt(search_cmd);
  search_cmd->add_option("--R", p.R, "Half-side of the box")->required();
  search_cmd->add_option("--tol", p.tol, "Matching tolerance");
  search_cmd->add_option("--budget", p.budget, "Node budget")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-points", p.max_points, "Stop growing at this size");
  search_cmd->add_option("--seed", p.seed, "Seed");

  auto* scan4 = add("scan4", "Fourth-distance residuals over random triangles", cmd_scan4);
  alphabet_opt(scan4);
  scan4->add_option("--triangles", p.triangles, "Number of triangles");
  scan4->add_option("--seed", p.seed, "Seed");
  scan4->add_option("--R", p.scan_R, "Half-side of the box");
  scan4->add_option("--tol", p.tol, "Hit tolerance");

  auto* bound_cmd = add("bound", "Optimal scale u and the resulting bound", cmd_bound);
  bound_cmd->add_option("--R", p.R, "R")->required();
  bound_cmd->add_option("--eps", p.eps, "eps");

  auto* generate = add("generate", "Benchmark point sets as CSV", cmd_generate);
  generate->add_option("--kind", p.kind, "Generator")
      ->required()
      ->check(CLI::IsMember({"grid", "circle", "line_ap", "cluster", "worst_case", "cantor"}));
  generate->add_option("--delta", p.delta, "delta (grid, circle, cluster)");
  generate->add_option("--count", p.count, "Point count (line_ap, cluster)");
  generate->add_option("--spacing", p.spacing, "Spacing (line_ap)");
  generate->add_option("--R", p.R, "R (worst_case)");
  generate->add_option("--s", p.s, "Exponent (cantor)");
  generate->add_option("--depth", p.depth, "Depth (cantor)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ORTHODISK_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kExitUsage;
  }

  const int threads = p.threads > 0 ? p.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  set_default_threads(threads);

  for (const auto& [sub, action] : commands) {
    if (!sub->parsed()) continue;
    const auto start = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.subcommand = sub->get_name();
    manifest.version = ORTHODISK_VERSION;
    try {
      Context ctx;
      const std::string artifact = action(ctx, p);
      if (p.out.empty())
        out << artifact;
      else
        write_file(p.out, artifact);

      for (const CLI::Option* opt : sub->get_options()) {
        const auto& names = opt->get_lnames();
        if (names.empty() || names.front() == "help") continue;
        manifest.params.emplace_back(names.front(), option_value(opt));
      }
      manifest.params.emplace_back("threads", option_value(threads_opt));
      manifest.inputs = ctx.inputs;
      manifest.duration_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string path = !p.manifest.empty() ? p.manifest
                               : !p.out.empty()    ? p.out + ".manifest.json"
                                                   : "orthodisk-" + manifest.subcommand + ".manifest.json";
      write_file(path, report::dump(manifest.to_json()));
    } catch (const IoError& e) {
      print_error(err, e.code(), e.what());
      return kExitIo;
    } catch (const OutOfRange& e) {
      print_error(err, e.code(), e.what(), e.required_n_max());
      return kExitFailure;
    } catch (const Error& e) {
      print_error(err, e.code(), e.what());
      return kExitFailure;
    } catch (const std::exception& e) {
      print_error(err, "internal", e.what());
      return kExitFailure;
    }
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"orthodisk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace orthodisk::cli
