// glt: lattice search, collocation points, merit evaluation, integration
// benchmarks and PINN experiments from the command line.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "glt/glt.hpp"

namespace {

using glt::format_double;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::string out;
  unsigned workers = 0;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    T v{};
    std::istringstream is(item);
    if (!(is >> v) || !is.eof()) throw std::invalid_argument(std::string("cannot parse ") + what + " '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string join_doubles(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::string version_line(const std::string& command) {
  return std::string("# glt ") + glt::kVersion + " " + command + "\n";
}

/// Output goes to a buffer and is committed only when the command succeeds.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buf_; }
  void commit() {
    if (path_.empty() || path_ == "-") {
      std::cout << buf_.str();
      return;
    }
    const std::string tmp = path_ + ".partial";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
      f << buf_.str();
      if (!f) throw std::runtime_error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

glt::GeneratingVector vector_from_flags(std::int64_t n, std::size_t s, const std::string& z, unsigned workers) {
  if (!z.empty()) {
    auto zs = parse_list<std::int64_t>(z, "z");
    if (zs.size() != s) throw std::invalid_argument("--z has " + std::to_string(zs.size()) + " entries, --s is " + std::to_string(s));
    return glt::GeneratingVector(n, std::move(zs));
  }
  return glt::lattice_for(n, s, workers);
}

// search ---------------------------------------------------------------------

struct SearchFlags {
  std::string n_list;
  std::size_t s = 2;
  int alpha = 2;
};

void cmd_search(const SearchFlags& f, const GlobalFlags& g) {
  auto ns = parse_list<std::int64_t>(f.n_list, "n");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (f.alpha != 2 && f.alpha != 4 && f.alpha != 6) throw std::invalid_argument("--alpha must be 2, 4 or 6");

  std::vector<std::string> comments;
  std::vector<glt::TableRow> table;
  if (!g.out.empty() && g.out != "-" && std::filesystem::exists(g.out)) {
    std::ifstream in(g.out);
    std::string line;
    while (std::getline(in, line))
      if (line.rfind("# ", 0) == 0) comments.push_back(line.substr(2));
    in.clear();
    in.seekg(0);
    table = glt::read_table(in);
    if (!table.empty() && table.front().gv.dim() != f.s)
      throw std::invalid_argument("table " + g.out + " holds s = " + std::to_string(table.front().gv.dim()) +
                                  " vectors, requested s = " + std::to_string(f.s));
  }
  if (comments.empty()) comments.push_back(std::string("glt ") + glt::kVersion + " search");
  const std::string config = "config s=" + std::to_string(f.s) + " alpha=" + std::to_string(f.alpha) + " n=" + join(ns);
  if (std::find(comments.begin(), comments.end(), config) == comments.end()) comments.push_back(config);
  std::vector<glt::TableRow> rows;
  for (auto n : ns) {
    const auto best = glt::korobov_search(n, f.s, f.alpha, g.workers);
    rows.push_back({best.gv, static_cast<double>(f.alpha), best.p_alpha});
  }
  glt::merge_table_rows(table, rows);
  Output out(g.out);
  glt::write_table(out.stream(), table, comments);
  out.commit();
}

// points ---------------------------------------------------------------------

struct PointsFlags {
  std::string kind = "glt";
  std::int64_t n = 0;
  std::size_t s = 2;
  std::string z;
  std::int64_t m = 0;
  bool no_shift = false;
  bool shift_sobol = false;
  bool skip_origin = false;
};

void cmd_points(const PointsFlags& f, const GlobalFlags& g) {
  const auto tag = glt::parse_sampler_tag(f.kind);
  glt::SamplerKind kind;
  switch (tag) {
    case glt::SamplerTag::UniformRandom: kind = glt::SamplerKind::uniform_random(); break;
    case glt::SamplerTag::Lhs: kind = glt::SamplerKind::lhs(); break;
    case glt::SamplerTag::Sobol: kind = glt::SamplerKind::sobol(f.shift_sobol, f.skip_origin); break;
    case glt::SamplerTag::UniformGrid: kind = glt::SamplerKind::grid(f.m, !f.no_shift); break;
    case glt::SamplerTag::GoodLattice:
      kind = glt::SamplerKind::good_lattice(vector_from_flags(f.n, f.s, f.z, g.workers), !f.no_shift);
      break;
  }
  const auto batch = glt::sample(kind, f.n, f.s, g.seed);
  Output out(g.out);
  auto& os = out.stream();
  os << version_line("points");
  os << "# config kind=" << glt::to_string(tag) << " n=" << f.n << " s=" << f.s << " seed=" << g.seed;
  if (kind.lattice) os << " z=" << join(std::vector<std::int64_t>(kind.lattice->z().begin(), kind.lattice->z().end()));
  if (batch.kind.tag == glt::SamplerTag::UniformGrid) os << " m=" << batch.kind.grid_m;
  if (kind.skip_origin) os << " skip_origin=1";
  os << " shift=" << (batch.shift ? join_doubles(*batch.shift) : std::string("none")) << "\n";
  for (std::size_t k = 0; k < f.s; ++k) os << (k ? "," : "") << "x" << k + 1;
  os << "\n";
  for (std::size_t j = 0; j < batch.points.size(); ++j) os << join_doubles(batch.points.row(j)) << "\n";
  out.commit();
}

// merit ----------------------------------------------------------------------

struct MeritFlags {
  std::int64_t n = 0;
  std::string z;
  std::string table;
  double alpha = 2.0;
  std::int64_t box = 1 << 14;
};

void cmd_merit(const MeritFlags& f, const GlobalFlags& g) {
  std::vector<glt::GeneratingVector> vectors;
  if (!f.table.empty()) {
    std::ifstream in(f.table);
    if (!in) throw std::runtime_error("cannot open " + f.table);
    for (auto& r : glt::read_table(in)) vectors.push_back(r.gv);
  } else {
    if (f.z.empty()) throw std::invalid_argument("merit: give --n and --z, or --table");
    vectors.emplace_back(f.n, parse_list<std::int64_t>(f.z, "z"));
  }
  const glt::Smoothness alpha{f.alpha};
  Output out(g.out);
  auto& os = out.stream();
  os << version_line("merit");
  os << "# config alpha=" << format_double(f.alpha) << " mode=" << (alpha.exact_mode() ? "exact" : "truncated")
     << (alpha.exact_mode() ? "" : " box=" + std::to_string(f.box)) << "\n";
  std::size_t smax = 0;
  for (auto& v : vectors) smax = std::max(smax, v.dim());
  os << "n";
  for (std::size_t k = 1; k <= smax; ++k) os << ",z" << k;
  os << ",alpha,p_alpha\n";
  for (const auto& v : vectors) {
    if (v.dim() != smax) throw std::invalid_argument("merit: mixed dimensions");
    os << v.n();
    for (auto zk : v.z()) os << "," << zk;
    os << "," << format_double(f.alpha) << "," << format_double(glt::p_alpha(v, alpha, f.box)) << "\n";
  }
  out.commit();
}

// bench ----------------------------------------------------------------------

struct BenchFlags {
  std::string integrand = "korobov_worst";
  std::size_t s = 2;
  std::string kinds = "mc,lhs,sobol,glt";
  std::string schedule;
  std::int64_t trials = 100;
  std::string transforms;
  std::string summary;
};

void cmd_bench(const BenchFlags& f, const GlobalFlags& g) {
  const auto integrand = glt::find_integrand(f.integrand, f.s);
  glt::BenchConfig cfg;
  for (auto& k : parse_list<std::string>(f.kinds, "kind")) cfg.kinds.push_back(glt::parse_sampler_tag(k));
  cfg.trials = f.trials;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  if (!f.transforms.empty()) cfg.transforms = glt::TransformChain::parse(f.transforms);
  // Either "55,89,144" for every kind, or "glt=55,89;sobol=64,128".
  if (!f.schedule.empty()) {
    if (f.schedule.find('=') == std::string::npos) {
      const auto ns = parse_list<std::int64_t>(f.schedule, "n");
      for (auto k : cfg.kinds) cfg.schedules[k] = ns;
    } else {
      std::stringstream ss(f.schedule);
      std::string part;
      while (std::getline(ss, part, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--schedule: expected kind=n1,n2,... in '" + part + "'");
        cfg.schedules[glt::parse_sampler_tag(part.substr(0, eq))] = parse_list<std::int64_t>(part.substr(eq + 1), "n");
      }
    }
  }
  const auto records = glt::run_bench(integrand, cfg);

  std::ostringstream config;
  config << "# config integrand=" << f.integrand << " s=" << f.s << " kinds=" << f.kinds << " trials=" << f.trials
         << " seed=" << g.seed << " transforms=" << (f.transforms.empty() ? "none" : cfg.transforms->to_string())
         << " schedule=" << (f.schedule.empty() ? "default" : f.schedule) << "\n";

  Output out(g.out);
  auto& os = out.stream();
  os << version_line("bench") << config.str();
  os << "integrand,kind,n,trial,seed,abs_error\n";
  for (const auto& r : records)
    os << r.integrand << "," << glt::to_string(r.kind) << "," << r.n << "," << r.trial << "," << r.seed << ","
       << format_double(r.abs_error) << "\n";

  const auto rows = glt::summarize(records);
  std::optional<Output> sum;
  if (!f.summary.empty()) {
    sum.emplace(f.summary);
    auto& ss = sum->stream();
    ss << version_line("bench summary") << config.str();
    ss << "integrand,kind,n,mean,std,max\n";
    for (const auto& r : rows)
      ss << r.integrand << "," << glt::to_string(r.kind) << "," << r.n << "," << format_double(r.mean) << ","
         << format_double(r.std) << "," << format_double(r.max) << "\n";
    for (auto k : cfg.kinds) {
      std::size_t distinct = 0;
      for (const auto& r : rows) distinct += r.kind == k && r.std > 0.0;
      if (distinct < 4) continue;
      const auto fit = glt::fit_slope(rows, k);
      ss << "# fit kind=" << glt::to_string(k) << " slope=" << format_double(fit.slope)
         << " intercept=" << format_double(fit.intercept) << " residual=" << format_double(fit.residual) << "\n";
    }
  }
  out.commit();
  if (sum) sum->commit();
}

// pinn -----------------------------------------------------------------------

struct PinnFlags {
  std::size_t s = 2;
  int k = 2;
  std::string kind = "glt";
  std::int64_t n = 89;
  std::int64_t iters = 20000;
  std::string seeds;
  std::int64_t checkpoint = 1000;
  double lr = 1e-3;
  std::string hidden = "32,32";
  std::size_t eval_grid = 201;
  bool no_resample = false;
};

void cmd_pinn(const PinnFlags& f, const GlobalFlags& g) {
  const auto seeds = f.seeds.empty() ? std::vector<std::uint64_t>{g.seed} : parse_list<std::uint64_t>(f.seeds, "seed");
  const glt::PoissonProblem problem{f.s, f.k};
  glt::TrainConfig base;
  const auto tag = glt::parse_sampler_tag(f.kind);
  base.kind = glt::randomized_kind(tag, f.n, f.s, g.workers);
  base.n = f.n;
  base.iterations = f.iters;
  base.hidden = parse_list<int>(f.hidden, "width");
  base.learning_rate = f.lr;
  base.checkpoint_every = f.checkpoint;
  base.eval_points_per_axis = f.eval_grid;
  base.resample = !f.no_resample;

  std::vector<glt::TrainReport> reports(seeds.size());
  glt::parallel_chunks(seeds.size(), g.workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      auto cfg = base;
      cfg.seed = seeds[i];
      reports[i] = glt::train(problem, cfg);
    }
  });

  Output out(g.out);
  auto& os = out.stream();
  os << version_line("pinn");
  os << "# config s=" << f.s << " k=" << f.k << " kind=" << glt::to_string(tag) << " n=" << f.n << " iters=" << f.iters
     << " seeds=" << join(seeds) << " hidden=" << f.hidden << " lr=" << format_double(f.lr)
     << " checkpoint=" << f.checkpoint << " eval_grid=" << f.eval_grid << " resample=" << !f.no_resample;
  if (base.kind.lattice)
    os << " z=" << join(std::vector<std::int64_t>(base.kind.lattice->z().begin(), base.kind.lattice->z().end()));
  os << "\n";
  os << "seed,kind,n,iter,loss,rel_error\n";
  bool diverged = false;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (const auto& c : reports[i].checkpoints)
      os << seeds[i] << "," << glt::to_string(tag) << "," << f.n << "," << c.iteration << "," << format_double(c.loss)
         << "," << format_double(c.rel_error) << "\n";
    if (reports[i].diverged_at) {
      os << "# diverged seed=" << seeds[i] << " iter=" << *reports[i].diverged_at << "\n";
      diverged = true;
    }
  }
  out.commit();
  if (diverged) throw std::runtime_error("training diverged for at least one seed (see output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Good lattice collocation points: search, sampling, merit, benchmarks, PINN training"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", glt::kVersion);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Base seed for all randomness");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--workers", g.workers, "Worker threads (0 = available parallelism)");

  SearchFlags sf;
  auto* search = app.add_subcommand("search", "Korobov-form search for good generating vectors");
  search->add_option("--n", sf.n_list, "Comma-separated point counts")->required();
  search->add_option("--s", sf.s, "Dimension")->check(CLI::Range(1, 64));
  search->add_option("--alpha", sf.alpha, "Smoothness (2, 4 or 6)");

  PointsFlags pf;
  auto* points = app.add_subcommand("points", "Emit collocation points");
  points->add_option("--kind", pf.kind, "mc, grid, lhs, sobol or glt");
  points->add_option("--n", pf.n, "Number of points")->required();
  points->add_option("--s", pf.s, "Dimension")->check(CLI::Range(1, 64));
  points->add_option("--z", pf.z, "Generating vector for glt (default: Fibonacci or searched)");
  points->add_option("--m", pf.m, "Grid points per axis");
  points->add_flag("--no-shift", pf.no_shift, "Disable the random shift for glt and grid");
  points->add_flag("--shift-sobol", pf.shift_sobol, "Randomly shift Sobol points");
  points->add_flag("--skip-origin", pf.skip_origin, "Start the Sobol sequence at index 1");

  MeritFlags mf;
  auto* merit = app.add_subcommand("merit", "Evaluate the figure of merit P_alpha");
  merit->add_option("--n", mf.n, "Modulus");
  merit->add_option("--z", mf.z, "Comma-separated generating vector");
  merit->add_option("--table", mf.table, "Evaluate every vector of a generator table");
  merit->add_option("--alpha", mf.alpha, "Smoothness (> 1; exact for 2, 4, 6)");
  merit->add_option("--box", mf.box, "Truncation box for non-even alpha");

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Integration-error benchmark");
  bench->add_option("--integrand", bf.integrand, "korobov_worst (korobov2), prod_sine, prod_linear, poisson_residual_surrogate, constant");
  bench->add_option("--s", bf.s, "Dimension")->check(CLI::Range(1, 8));
  bench->add_option("--kinds", bf.kinds, "Comma-separated sampler kinds");
  bench->add_option("--schedule", bf.schedule, "n values: '55,89,...' or 'glt=55,89;sobol=64,128'");
  bench->add_option("--trials", bf.trials, "Trials per (kind, n)");
  bench->add_option("--transforms", bf.transforms, "Per-axis transform chain, e.g. 'poly3,id'");
  bench->add_option("--summary", bf.summary, "Summary CSV path");

  PinnFlags nf;
  auto* pinn = app.add_subcommand("pinn", "Train a physics-informed network on Poisson's equation");
  pinn->add_option("--s", nf.s, "Dimension")->check(CLI::Range(1, 8));
  pinn->add_option("--k", nf.k, "Forcing mode");
  pinn->add_option("--kind", nf.kind, "Sampler kind");
  pinn->add_option("--n", nf.n, "Collocation points per iteration");
  pinn->add_option("--iters", nf.iters, "Training iterations");
  pinn->add_option("--seeds", nf.seeds, "Comma-separated trial seeds (default: --seed)");
  pinn->add_option("--checkpoint", nf.checkpoint, "Checkpoint interval");
  pinn->add_option("--lr", nf.lr, "Initial step size");
  pinn->add_option("--hidden", nf.hidden, "Hidden widths, e.g. 32,32");
  pinn->add_option("--eval-grid", nf.eval_grid, "Evaluation grid points per axis");
  pinn->add_flag("--no-resample", nf.no_resample, "Reuse one batch for all iterations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*search) cmd_search(sf, g);
    else if (*points) cmd_points(pf, g);
    else if (*merit) cmd_merit(mf, g);
    else if (*bench) cmd_bench(bf, g);
    else if (*pinn) cmd_pinn(nf, g);
  } catch (const std::exception& e) {
    std::cerr << "glt: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
