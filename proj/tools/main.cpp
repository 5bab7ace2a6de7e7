#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"

#include "homembed/bank_io.hpp"
#include "homembed/embedding.hpp"
#include "homembed/graph.hpp"
#include "homembed/graph6.hpp"
#include "homembed/isomorphism.hpp"
#include "homembed/kernel.hpp"
#include "homembed/sampler.hpp"
#include "homembed/wl.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace homembed;
using homembed::cli::manifest_path;
using homembed::cli::RunManifest;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

/// Reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<Graph> read_graphs(const fs::path& path) {
  if (!fs::exists(path)) throw UsageError("cannot open " + path.string());
  return read_graph6_file(path);
}

/// Mode recorded by the embed run that produced `emb_path`, if its manifest exists.
std::optional<EmbeddingMode> recorded_mode(const fs::path& emb_path) {
  std::ifstream in(manifest_path(emb_path), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const auto j = ordered_json::parse(in);
    return parse_embedding_mode(j.at("flags").at("mode").get<std::string>());
  } catch (const std::exception& e) {
    throw UsageError("unreadable manifest " + manifest_path(emb_path).string() + ": " + e.what());
  }
}

EmbeddingMatrix load_embedding(const fs::path& path, const std::string& mode_flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::optional<EmbeddingMode> mode =
      mode_flag.empty() ? recorded_mode(path) : std::optional(parse_embedding_mode(mode_flag));
  return read_embedding_csv(in, mode);
}

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct SampleArgs {
  std::size_t n = 0, count = 0;
  std::uint64_t seed = 0;
  unsigned d = 2;
  std::string lambda_mode = "shifted";
  double vertex_keep = 1.0, edge_keep = 0.5;
  std::optional<std::size_t> treewidth_cap;
  fs::path out;
};

int run_sample(const SampleArgs& a) {
  Timer timer;
  SamplerConfig cfg;
  cfg.n = a.n;
  cfg.d = a.d;
  cfg.lambda_mode = parse_lambda_mode(a.lambda_mode);
  cfg.vertex_keep_prob = a.vertex_keep;
  cfg.edge_keep_prob = a.edge_keep;
  cfg.treewidth_cap = a.treewidth_cap;
  cfg.seed = a.seed;
  if (a.count < 1) throw UsageError("--count must be at least 1");
  write_bank(a.out, sample_bank(cfg, a.count));

  RunManifest m;
  m.subcommand = "sample";
  m.flags = {{"n", a.n}, {"count", a.count}, {"seed", a.seed}, {"d", a.d}, {"lambda_mode", a.lambda_mode},
             {"vertex_keep", a.vertex_keep}, {"edge_keep", a.edge_keep},
             {"treewidth_cap", a.treewidth_cap ? ordered_json(*a.treewidth_cap) : ordered_json(nullptr)},
             {"out", a.out.string()}};
  m.outputs = {a.out};
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  return kExitOk;
}

struct BankArgs {
  fs::path graphs, out;
};

int run_bank_explicit(const BankArgs& a) {
  Timer timer;
  write_bank(a.out, explicit_bank(read_graphs(a.graphs)));
  RunManifest m;
  m.subcommand = "bank";
  m.flags = {{"graphs", a.graphs.string()}, {"out", a.out.string()}};
  m.inputs = {a.graphs};
  m.outputs = {a.out};
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  return kExitOk;
}

struct EmbedArgs {
  fs::path graphs, bank, out;
  std::string mode = "hom";
  unsigned threads = 1;
};

int run_embed(const EmbedArgs& a) {
  Timer timer;
  const auto graphs = read_graphs(a.graphs);
  if (!fs::exists(a.bank)) throw UsageError("cannot open " + a.bank.string());
  const auto bank = read_bank(a.bank);
  const auto mode = parse_embedding_mode(a.mode);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].vertex_count() > bank.config.n) {
      std::cerr << "warning: graph " << i << " has " << graphs[i].vertex_count() << " vertices, more than the bank's n = "
                << bank.config.n << "\n";
    }
  }
  const auto emb = embed(graphs, bank, mode, a.threads);
  {
    auto out = open_output(a.out);
    write_embedding_csv(out, emb);
  }
  RunManifest m;
  m.subcommand = "embed";
  // Thread count is excluded: it never changes the output.
  m.flags = {{"graphs", a.graphs.string()}, {"bank", a.bank.string()}, {"mode", a.mode}, {"out", a.out.string()}};
  m.inputs = {a.graphs};
  m.bank = a.bank;
  m.outputs = {a.out};
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  return kExitOk;
}

struct GramArgs {
  fs::path emb, out;
  std::string kernel = "dot";
  std::string mode;
};

int run_gram(const GramArgs& a) {
  Timer timer;
  const auto emb = load_embedding(a.emb, a.mode);
  if (a.kernel == "min" && emb.mode != EmbeddingMode::truncated) {
    throw UsageError("--kernel min needs a truncated-mode embedding, got " + std::string(to_string(emb.mode)));
  }
  if (a.kernel != "min" && a.kernel != "dot") throw UsageError("--kernel must be dot or min");
  GramMatrix g;
  try {
    g = gram(emb);
  } catch (const std::overflow_error& e) {
    throw UsageError(e.what());
  }
  {
    auto out = open_output(a.out);
    write_gram_csv(out, g);
  }
  RunManifest m;
  m.subcommand = "gram";
  m.flags = {{"emb", a.emb.string()}, {"kernel", a.kernel}, {"mode", std::string(to_string(emb.mode))},
             {"out", a.out.string()}};
  m.inputs = {a.emb};
  m.outputs = {a.out};
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  return kExitOk;
}

struct HoeffdingArgs {
  double eps = 0, delta = 0;
  std::optional<std::uint64_t> sample_size, max_n;
};

int run_hoeffding(const HoeffdingArgs& a) {
  if (a.sample_size.has_value() == a.max_n.has_value()) {
    throw UsageError("give exactly one of --sample-size and --max-n");
  }
  const auto l = a.sample_size ? hoeffding_samples(a.eps, a.delta, *a.sample_size)
                               : hoeffding_samples_all(a.eps, a.delta, *a.max_n);
  std::cout << l << "\n";
  return kExitOk;
}

struct DistinguishArgs {
  fs::path emb, out;
  std::optional<fs::path> labels;
  double tolerance = kRowTolerance;
  std::string mode;
};

int run_distinguish(const DistinguishArgs& a) {
  Timer timer;
  const auto emb = load_embedding(a.emb, a.mode);
  std::optional<std::vector<std::string>> labels;
  if (a.labels) labels = read_lines(*a.labels);
  const auto report = distinguishability_report(emb, labels, a.tolerance);
  {
    auto out = open_output(a.out);
    out << report_to_json(report);
  }
  std::cout << report.pairs_distinguished << "/" << report.pairs_total << " pairs distinguished\n";
  RunManifest m;
  m.subcommand = "distinguish";
  m.flags = {{"emb", a.emb.string()},
             {"labels", a.labels ? ordered_json(a.labels->string()) : ordered_json(nullptr)},
             {"tolerance", a.tolerance},
             {"mode", std::string(to_string(emb.mode))},
             {"out", a.out.string()}};
  m.inputs = {a.emb};
  if (a.labels) m.inputs.push_back(*a.labels);
  m.outputs = {a.out};
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  return kExitOk;
}

struct Wl1Args {
  fs::path graphs, out;
};

int run_wl1(const Wl1Args& a) {
  Timer timer;
  const auto graphs = read_graphs(a.graphs);
  {
    auto out = open_output(a.out);
    out << "graph_id,signature_hex\n";
    for (std::size_t i = 0; i < graphs.size(); ++i) out << i << ',' << wl1_signature(graphs[i]).hex() << '\n';
  }
  RunManifest m;
  m.subcommand = "wl1";
  m.flags = {{"graphs", a.graphs.string()}, {"out", a.out.string()}};
  m.inputs = {a.graphs};
  m.outputs = {a.out};
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  return kExitOk;
}

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::vector<std::size_t> skips;
  std::vector<std::string> parts;
  fs::path out;
  std::optional<fs::path> labels_out;
};

Graph parse_part(const std::string& part) {
  const auto colon = part.find(':');
  if (colon == std::string::npos) throw UsageError("union part '" + part + "' must look like family:n");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(part.substr(colon + 1), &used);
    if (used != part.size() - colon - 1) throw std::invalid_argument(part);
  } catch (const std::logic_error&) {
    throw UsageError("union part '" + part + "' has a bad vertex count");
  }
  return generate(parse_family(part.substr(0, colon)), n);
}

int run_gen(const GenArgs& a) {
  Timer timer;
  std::vector<Graph> graphs;
  std::vector<std::string> labels;
  if (a.family == "csl") {
    if (a.skips.empty()) throw UsageError("--family csl needs --skips");
    for (auto s : a.skips) {
      graphs.push_back(generate_csl(a.n, s));
      labels.push_back("skip" + std::to_string(s));
    }
  } else if (a.family == "union") {
    if (a.parts.empty()) throw UsageError("--family union needs --parts");
    Graph g;
    for (const auto& p : a.parts) g = disjoint_union(g, parse_part(p));
    graphs.push_back(g);
  } else if (a.family == "all") {
    graphs = enumerate_nonisomorphic(a.n);
  } else {
    graphs.push_back(generate(parse_family(a.family), a.n));
  }
  {
    auto out = open_output(a.out);
    write_graph6(out, graphs);
  }
  RunManifest m;
  m.subcommand = "gen";
  m.flags = {{"family", a.family}, {"n", a.n}, {"skips", a.skips}, {"parts", a.parts}, {"out", a.out.string()}};
  m.outputs = {a.out};
  if (!labels.empty()) {
    const fs::path labels_path = a.labels_out.value_or(fs::path(a.out.string() + ".labels"));
    {
      auto out = open_output(labels_path);
      for (const auto& l : labels) out << l << '\n';
    }
    m.flags["labels_out"] = labels_path.string();
    m.outputs.push_back(labels_path);
  }
  m.wall_clock_seconds = timer.seconds();
  m.write_beside(a.out);
  std::cout << graphs.size() << " graphs written to " << a.out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random homomorphism-count graph embeddings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);

  int status = kExitOk;
  std::function<int()> action;

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Sample a pattern bank");
  s->add_option("--n", sample.n, "Largest dataset graph size")->required()->check(CLI::PositiveNumber);
  s->add_option("--count", sample.count, "Number of patterns")->required();
  s->add_option("--seed", sample.seed, "Random seed")->envname("HOMEMBED_SEED");
  s->add_option("--d", sample.d, "Runtime exponent")->capture_default_str()->check(CLI::PositiveNumber);
  s->add_option("--lambda-mode", sample.lambda_mode)->capture_default_str()->check(CLI::IsMember({"paper-strict", "shifted"}));
  s->add_option("--vertex-keep", sample.vertex_keep)->capture_default_str();
  s->add_option("--edge-keep", sample.edge_keep)->capture_default_str();
  s->add_option("--treewidth-cap", sample.treewidth_cap, "Clamp the treewidth bound");
  s->add_option("--out", sample.out)->required();
  s->callback([&] { action = [&] { return run_sample(sample); }; });

  BankArgs bank;
  auto* b = app.add_subcommand("bank", "Build a bank from explicit pattern graphs");
  b->add_option("--graphs", bank.graphs, "graph6 file of patterns")->required();
  b->add_option("--out", bank.out)->required();
  b->callback([&] { action = [&] { return run_bank_explicit(bank); }; });

  EmbedArgs emb;
  auto* e = app.add_subcommand("embed", "Embed graphs with a pattern bank");
  e->add_option("--graphs", emb.graphs)->required();
  e->add_option("--bank", emb.bank)->required();
  e->add_option("--mode", emb.mode)
      ->capture_default_str()
      ->check(CLI::IsMember({"hom", "density", "truncated", "log1p", "standardized"}));
  e->add_option("--threads", emb.threads, "Worker threads (0 = all cores)")->envname("HOMEMBED_THREADS");
  e->add_option("--out", emb.out)->required();
  e->callback([&] { action = [&] { return run_embed(emb); }; });

  GramArgs gram_args;
  auto* g = app.add_subcommand("gram", "Gram matrix of an embedding");
  g->add_option("--emb", gram_args.emb)->required();
  g->add_option("--kernel", gram_args.kernel)->capture_default_str()->check(CLI::IsMember({"dot", "min"}));
  g->add_option("--mode", gram_args.mode, "Embedding mode; read from the embed manifest when omitted");
  g->add_option("--out", gram_args.out)->required();
  g->callback([&] { action = [&] { return run_gram(gram_args); }; });

  HoeffdingArgs hoeff;
  auto* h = app.add_subcommand("hoeffding", "Number of patterns for an (eps, delta) guarantee");
  h->add_option("--eps", hoeff.eps)->required();
  h->add_option("--delta", hoeff.delta)->required();
  auto* size_opt = h->add_option("--sample-size", hoeff.sample_size, "Size of the graph set S");
  h->add_option("--max-n", hoeff.max_n, "Cover every graph with at most this many vertices")->excludes(size_opt);
  h->callback([&] { action = [&] { return run_hoeffding(hoeff); }; });

  DistinguishArgs dist;
  auto* d = app.add_subcommand("distinguish", "Count pairs of graphs with different embeddings");
  d->add_option("--emb", dist.emb)->required();
  d->add_option("--labels", dist.labels, "One class label per graph, one per line");
  d->add_option("--tolerance", dist.tolerance)->capture_default_str();
  d->add_option("--mode", dist.mode, "Embedding mode; read from the embed manifest when omitted");
  d->add_option("--out", dist.out)->required();
  d->callback([&] { action = [&] { return run_distinguish(dist); }; });

  Wl1Args wl;
  auto* w = app.add_subcommand("wl1", "1-WL color refinement signatures");
  w->add_option("--graphs", wl.graphs)->required();
  w->add_option("--out", wl.out)->required();
  w->callback([&] { action = [&] { return run_wl1(wl); }; });

  GenArgs gen;
  auto* gn = app.add_subcommand("gen", "Generate graph families as graph6");
  gn->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"csl", "cycle", "path", "complete", "edgeless", "union", "all"}));
  gn->add_option("--n", gen.n, "Vertex count (largest size for 'all')");
  gn->add_option("--skips", gen.skips, "CSL skip lengths")->delimiter(',');
  gn->add_option("--parts", gen.parts, "Union parts as family:n")->delimiter(',');
  gn->add_option("--labels-out", gen.labels_out, "CSL class labels (default <out>.labels)");
  gn->add_option("--out", gen.out)->required();
  gn->callback([&] { action = [&] { return run_gen(gen); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitUsage;
  }

  try {
    status = action();
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const Graph6FileError& ex) {
    std::cerr << "error: graph6 " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kExitInternal;
  }
  return status;
}
