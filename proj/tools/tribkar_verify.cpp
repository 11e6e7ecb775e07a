// Command-line front end for the exact and statistical checks.
//
//   tribkar-verify verify-main --n-max 8
//   tribkar-verify mc --class 4 --N 30 --samples 1000000 --format csv --out mc.csv
//   tribkar-verify export --n 10 --theta "(1,2,3,4)(5,7,8)(9,10)" --sigma "(4,8,10)(5,6)" \
//       --g 1,-1,-1,1,0,0,-1,1,-1,1 --format dot
//
// Exit status: 0 when every check passes, 1 on a mismatch, 2 on bad usage.

#include <tribkar.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using namespace tribkar;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Verdict {
  std::string check;
  bool pass = true;
  std::string lhs;
  std::string rhs;
  std::string note;
};

struct Report {
  std::string command;
  ojson parameters = ojson::object();
  std::uint64_t seed = 0;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, double>> timings;
  // Set by commands that have a format of their own.
  std::optional<std::string> csv;
  std::optional<std::string> dot;
  std::optional<ojson> payload;

  bool pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
  }
  void add(std::string check, bool pass, std::string lhs, std::string rhs, std::string note = {}) {
    verdicts.push_back({std::move(check), pass, std::move(lhs), std::move(rhs), std::move(note)});
  }
};

struct Options {
  std::uint64_t seed = 17;
  std::string format = "table";
  std::string out;
  int jobs = 1;
  bool timings = false;
  bool unsafe = false;
  int n_max = 8;
  int n = 4;
  int trials = 0;
  std::string lambda;
  int N = 2;
  long samples = 100000;
  double tolerance = 4.0;
  std::string theta, sigma, g, tree = "mobile";
};

template <typename T>
std::string text(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string text(const Rational& r) { return to_string(r); }
std::string text(const Integer& z) { return to_string(z); }

NumericalPartition parse_class(const std::string& s) {
  try {
    return NumericalPartition::parse(s);
  } catch (const std::exception& e) {
    throw UsageError("bad class '" + s + "': " + e.what());
  }
}

void cap(bool unsafe, bool within, const std::string& what) {
  if (!unsafe && !within) throw UsageError(what + " (override with --unsafe-sizes)");
}

/// Runs work(i) for i in [0,count) on `jobs` threads; stops handing out new
/// items once stop() returns true.
template <typename Work, typename Stop>
void run_pool(int count, int jobs, Work&& work, Stop&& stop) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count && !stop(); i = next++) work(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::clamp(jobs, 1, std::max(1, count)); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

Report verify_main(const Options& o) {
  cap(o.unsafe, o.n_max <= 10, "verify-main is capped at --n-max 10");
  Report r{"verify-main"};
  r.parameters["n_max"] = o.n_max;
  r.parameters["class"] = o.lambda;
  std::vector<NumericalPartition> classes;
  if (!o.lambda.empty()) {
    classes.push_back(parse_class(o.lambda));
  } else {
    for (int n = 2; n <= o.n_max; n += 2)
      for (const auto& lambda : partitions_of(n)) classes.push_back(lambda);
  }
  std::vector<std::optional<MainTheoremCheck>> results(classes.size());
  std::atomic<bool> failed{false};
  run_pool(
      static_cast<int>(classes.size()), o.jobs,
      [&](int i) {
        auto c = main_theorem_check(class_representative(classes[i]));
        if (!c.holds()) failed = true;
        results[i] = std::move(c);
      },
      [&] { return failed.load(); });
  for (const auto& res : results) {
    if (!res) continue;
    const Integer scaled = res->denominator > 0 ? Integer(res->denominator) * res->maps : Integer(res->maps);
    r.add(res->lambda.to_string(), res->holds(), text(res->gjdm), text(scaled),
          "|Map|=" + text(res->maps) + " d=" + text(res->denominator));
  }
  return r;
}

Report tutte_cmd(const Options& o) {
  cap(o.unsafe, o.n_max <= 8, "tutte is capped at --n-max 8");
  Report r{"tutte"};
  r.parameters["n_max"] = o.n_max;
  for (int n = 2; n <= o.n_max; n += 2)
    for (const auto& lambda : partitions_of(n)) {
      if (!lambda.is_eulerian()) continue;
      const auto t = tutte(lambda);
      const long rooted = rooted_map_count_bruteforce(lambda);
      const long maps = count_maps(class_representative(lambda));
      r.add(lambda.to_string() + " rooted", Rational(rooted) == t.mstar, text(rooted), text(t.mstar));
      r.add(lambda.to_string() + " maps", Rational(maps) == t.m, text(maps), text(t.m));
    }
  return r;
}

Report thooft_cmd(const Options& o) {
  cap(o.unsafe, o.n_max <= 12, "thooft is capped at --n-max 12");
  if (o.n_max > 14) throw UsageError("cumulant polynomials stop at n = 14");
  Report r{"thooft"};
  r.parameters["n_max"] = o.n_max;
  for (int n = 1; n <= o.n_max; ++n)
    for (const auto& lambda : partitions_of(n)) {
      const Integer lead = thooft_leading(lambda);
      const long maps = count_maps(class_representative(lambda));
      r.add(lambda.to_string(), lead == maps, text(lead), text(maps), cumulant_polynomial(lambda).to_string());
    }
  return r;
}

Report bkar_cmd(const Options& o) {
  if (o.n < 2) throw UsageError("bkar needs --n >= 2");
  cap(o.unsafe, o.n <= 5, "bkar is capped at --n 5");
  const int trials = o.trials > 0 ? o.trials : 100;
  Report r{"bkar"};
  r.parameters["n"] = o.n;
  r.parameters["trials"] = trials;
  gen::Engine rng(o.seed);
  for (int t = 0; t < trials; ++t) {
    const auto theta = gen::set_partition(rng, o.n);
    const auto f = gen::q_monomial(rng, o.n, 4);
    const auto res = bkar_check(theta, f);
    r.add(theta.to_string() + " " + f.to_string(), res.holds(), text(res.lhs), text(res.rhs),
          "product form " + text(res.clinch));
  }
  return r;
}

Report maintool_cmd(const Options& o) {
  const int trials = o.trials > 0 ? o.trials : 50;
  Report r{"maintool"};
  r.parameters["trials"] = trials;
  gen::Engine rng(o.seed);
  for (int t = 0; t < trials; ++t) {
    const int n = gen::uniform_int(rng, 1, 4);
    const int N = gen::uniform_int(rng, 1, 2);
    const int copies = 2 * N + 1;
    const auto theta = gen::set_partition(rng, n);
    const CovarianceSpec c(gen::psd_matrix(rng, n), copies);
    std::vector<Polynomial> polys;
    std::string label = theta.to_string();
    for (const auto& block : theta.blocks()) {
      Polynomial f;
      for (int k = gen::uniform_int(rng, 1, 2); k > 0; --k) f += gen::z_monomial(rng, block, t % 2 ? 1 : copies, 3);
      std::string terms = f.to_string();
      terms.pop_back();
      for (std::size_t at; (at = terms.find('\n')) != std::string::npos;) terms.replace(at, 1, " + ");
      label += " [" + terms + "]";
      polys.push_back(f);
    }
    const auto res = maintool_check(theta, polys, c);
    r.add(label, res.holds(), text(res.lhs), text(res.rhs), "N=" + text(N));
  }
  return r;
}

Report expansion_cmd(const Options& o) {
  const auto lambda = parse_class(o.lambda.empty() ? "2,2" : o.lambda);
  Report r{"expansion"};
  r.parameters["class"] = lambda.to_string();
  r.parameters["N"] = o.N;
  RefinedExpansion e;
  try {
    e = refined_expansion_check(lambda, o.N, o.unsafe);
  } catch (const std::length_error& err) {
    throw UsageError(std::string(err.what()) + " (override with --unsafe-sizes)");
  }
  const std::string ex = text(e.exact);
  r.add("Motzkin sum", e.exact == e.motzkin, ex, text(e.motzkin));
  r.add("tree and height sum", e.exact == e.steroid, ex, text(e.steroid), text(e.tree_terms) + " terms");
  r.add("quadruple sum", e.exact == e.progress, ex, text(e.progress), text(e.quadruples) + " quadruples");
  r.add("culled terms vanish", e.culled_nonzero == 0, text(e.culled_nonzero), "0", text(e.culled_terms) + " culled");
  r.add("closed form", e.closed_form_mismatches == 0, text(e.closed_form_mismatches), "0");
  r.add("top degree in heights", e.killzero_mismatches == 0, text(e.killzero_mismatches), "0");
  return r;
}

Report mc_cmd(const Options& o) {
  const auto lambda = parse_class(o.lambda.empty() ? "2" : o.lambda);
  if (o.N < 1) throw UsageError("--N must be positive");
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  cap(o.unsafe, lambda.size() <= 14, "exact values stop at n = 14");
  Report r{"mc"};
  r.parameters["class"] = lambda.to_string();
  r.parameters["N"] = o.N;
  r.parameters["samples"] = o.samples;
  r.parameters["tolerance_se"] = o.tolerance;
  const auto est = mc_cumulant(lambda, o.N, o.samples, o.seed, o.jobs);
  const Integer exact = cumulant_polynomial(lambda).evaluate(o.N);
  const double z = std::abs(est.estimate - exact.get_d()) / est.stderr_;
  r.add(lambda.to_string() + " N=" + text(o.N), z <= o.tolerance, text(est.estimate), text(exact),
        "stderr " + text(est.stderr_) + ", " + text(z) + " se");
  std::ostringstream csv;
  csv.precision(12);
  csv << "lambda,N,samples,estimate,stderr,exact,seed\n";
  csv << '"' << lambda.to_string() << "\"," << o.N << ',' << o.samples << ',' << est.estimate << ','
      << est.stderr_ << ',' << exact << ',' << o.seed << '\n';
  r.csv = csv.str();
  return r;
}

DMotz parse_signs(const std::string& spec, int n) {
  std::string body = spec;
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    body.assign(std::istreambuf_iterator<char>(in), {});
  }
  DMotz g;
  std::string token;
  for (char ch : body + ",") {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (token.empty()) continue;
      try {
        g.push_back(std::stoi(token));
      } catch (const std::exception&) {
        throw UsageError("bad sign '" + token + "'");
      }
      token.clear();
    } else {
      token += ch;
    }
  }
  if (static_cast<int>(g.size()) != n) throw UsageError("g needs " + text(n) + " values, got " + text(g.size()));
  return g;
}

Report export_cmd(const Options& o) {
  if (o.theta.empty() || o.sigma.empty()) throw UsageError("export needs --theta and --sigma");
  Permutation theta, sigma;
  try {
    theta = Permutation::parse(o.theta, o.n);
    sigma = Permutation::parse(o.sigma, o.n);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  Report r{"export"};
  r.parameters["n"] = o.n;
  r.parameters["theta"] = theta.to_string();
  r.parameters["sigma"] = sigma.to_string();
  r.parameters["tree"] = o.tree;
  const bool gj = is_gj(theta, sigma);
  r.add("Goulden-Jackson pair", gj, text(theta.num_orbits() + sigma.num_orbits()), text(o.n + 1));
  if (!gj) return r;
  ColoredTree t;
  if (o.tree == "sv") {
    t = sv_tree(theta, sigma);
  } else {
    if (o.g.empty()) throw UsageError("--g is required for colored and mobile trees");
    const DMotz g = parse_signs(o.g, o.n);
    r.parameters["g"] = g;
    const bool ok = is_dmotz(theta, sigma, g);
    r.add("dMotz function", ok, ok ? "yes" : "no", "yes");
    if (!ok) return r;
    const auto h = antiderivative(theta, sigma, g, HeightNormalization::MinIsZero);
    std::string hs;
    for (int i = 0; i < o.n; ++i) hs += (i ? "," : "") + text(h[i]);
    r.add("heights", true, hs, "", "normalized to minimum 0");
    t = o.tree == "mobile" ? mobile(theta, sigma, g) : color_tree(theta, sigma, g);
  }
  r.dot = tree_dot(t);
  r.payload = ojson::parse(to_json(t).dump());
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const Report& r, const std::string& format, bool timings) {
  std::ostringstream os;
  if (format == "json") {
    ojson j;
    j["schema"] = "v1";
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["parameters"] = r.parameters;
    j["verdicts"] = ojson::array();
    for (const auto& v : r.verdicts)
      j["verdicts"].push_back({{"check", v.check}, {"pass", v.pass}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"note", v.note}});
    j["pass"] = r.pass();
    if (r.payload) j["tree"] = *r.payload;
    if (timings) {
      j["timings"] = ojson::object();
      for (const auto& [k, s] : r.timings) j["timings"][k] = s;
    }
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    if (r.csv) return *r.csv;
    os << "check,pass,lhs,rhs,note\n";
    for (const auto& v : r.verdicts)
      os << csv_field(v.check) << ',' << (v.pass ? "true" : "false") << ',' << csv_field(v.lhs) << ','
         << csv_field(v.rhs) << ',' << csv_field(v.note) << '\n';
  } else if (format == "dot") {
    if (!r.dot) throw UsageError("--format dot is only available for export");
    return *r.dot;
  } else {
    std::size_t w = 5;
    for (const auto& v : r.verdicts) w = std::max(w, v.check.size());
    os << r.command << " (seed " << r.seed << ")\n";
    for (const auto& v : r.verdicts) {
      os << (v.pass ? "PASS " : "FAIL ") << v.check << std::string(w - v.check.size() + 2, ' ') << v.lhs;
      if (!v.rhs.empty()) os << " vs " << v.rhs;
      if (!v.note.empty()) os << "  [" << v.note << "]";
      os << '\n';
    }
    if (timings)
      for (const auto& [k, s] : r.timings) os << "time " << k << ": " << s << " s\n";
    os << (r.pass() ? "all " + text(r.verdicts.size()) + " checks pass" : "MISMATCH") << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte-Carlo checks for map counts, cumulant expansions and GUE traces"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json", "csv", "dot"}));
  app.add_option("--out", o.out, "write the formatted report here (the table still goes to stdout)");
  app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timings", o.timings, "include wall-clock timings");
  app.add_flag("--unsafe-sizes", o.unsafe, "lift the default size caps");

  std::map<std::string, std::function<Report(const Options&)>> commands;
  auto sub = [&](const std::string& name, const std::string& help, auto fn) {
    commands[name] = fn;
    return app.add_subcommand(name, help);
  };
  auto* vm = sub("verify-main", "maps against GJdM triples, one class at a time", verify_main);
  vm->add_option("--n-max", o.n_max, "largest even n")->check(CLI::PositiveNumber);
  vm->add_option("--class", o.lambda, "only this cycle type, e.g. 4 or 2,2");
  sub("tutte", "rooted and unrooted map counts against closed forms", tutte_cmd)
      ->add_option("--n-max", o.n_max, "largest n")->check(CLI::PositiveNumber);
  sub("thooft", "leading cumulant coefficients against planar map counts", thooft_cmd)
      ->add_option("--n-max", o.n_max, "largest n")->check(CLI::PositiveNumber);
  auto* bk = sub("bkar", "tree interpolation identity on random q-monomials", bkar_cmd);
  bk->add_option("--n", o.n, "number of points");
  bk->add_option("--trials", o.trials, "number of random cases");
  sub("maintool", "cumulant tree expansion on random Gaussian polynomials", maintool_cmd)
      ->add_option("--trials", o.trials, "number of random cases");
  auto* ex = sub("expansion", "refined Motzkin expansion at small n and N", expansion_cmd);
  ex->add_option("--class", o.lambda, "cycle type: 2, 4 or 2,2");
  ex->add_option("--N", o.N, "matrix size");
  auto* mc = sub("mc", "Monte-Carlo trace cumulant from the tridiagonal model", mc_cmd);
  mc->add_option("--class", o.lambda, "cycle type");
  mc->add_option("--N", o.N, "matrix size");
  mc->add_option("--samples", o.samples, "number of samples");
  mc->add_option("--tolerance", o.tolerance, "allowed distance in standard errors");
  auto* exp = sub("export", "tree drawings of a GJ pair with a dMotz function", export_cmd);
  exp->add_option("--n", o.n, "ground set size")->required();
  exp->add_option("--theta", o.theta, "cycle notation");
  exp->add_option("--sigma", o.sigma, "cycle notation");
  exp->add_option("--g", o.g, "comma-separated signs or a file holding them");
  exp->add_option("--tree", o.tree, "which tree")->check(CLI::IsMember({"sv", "colored", "mobile"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    Report r = commands.at(name)(o);
    r.seed = o.seed;
    r.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    const std::string body = render(r, o.format, o.timings);
    if (o.out.empty()) {
      std::cout << body;
    } else {
      std::cout << render(r, "table", o.timings);
      std::ofstream file(o.out);
      if (!file) throw UsageError("cannot write " + o.out);
      file << body;
    }
    return r.pass() ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
}
