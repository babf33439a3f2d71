// triadnet: command-line front end for the triadnet library.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "triadnet/dynamics.hpp"
#include "triadnet/errors.hpp"
#include "triadnet/graph.hpp"
#include "triadnet/measures.hpp"
#include "triadnet/motif_stats.hpp"
#include "triadnet/nospam.hpp"
#include "triadnet/randomizer.hpp"
#include "triadnet/sentiment.hpp"
#include "triadnet/sts.hpp"
#include "triadnet/trgm.hpp"
#include "triadnet/triads.hpp"

#ifndef TRIADNET_VERSION
#define TRIADNET_VERSION "0.0.0"
#endif

using namespace triadnet;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kCsvVersion = "v1";

// Shortest decimal form that reads back to the same double.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

Json json_num(double x) { return std::isfinite(x) ? Json(x) : Json(num(x)); }

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

char flag_char(ZFlag f) {
  switch (f) {
    case ZFlag::ok: return '.';
    case ZFlag::degenerate_zero: return '0';
    case ZFlag::degenerate_infinite: return 'i';
  }
  return '?';
}

struct Run {
  unsigned workers = 0;
  std::string output = "-";
  std::string manifest;
  bool error_json = false;
  std::uint64_t seed = 0;
  int exit_code = 0;
  Json inputs = Json::array();
  std::ostringstream out;

  std::string read_input(const std::string& path) {
    std::string data;
    if (path == "-") {
      data.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream f(path, std::ios::binary);
      if (!f) throw IngestionError("cannot open '" + path + "'");
      data.assign(std::istreambuf_iterator<char>(f), {});
    }
    inputs.push_back({{"path", path}, {"bytes", data.size()}, {"sha256", sha256_hex(data)}});
    return data;
  }

  LoadedGraph directed(const std::string& path) {
    std::istringstream in(read_input(path));
    return parse_edge_list(in);
  }
  LoadedSignedGraph signed_graph(const std::string& path) {
    std::istringstream in(read_input(path));
    return parse_signed_edge_list(in);
  }

  void csv_header(const std::string& kind, const std::string& columns) {
    out << "# triadnet " << kind << ' ' << kCsvVersion << '\n' << columns << '\n';
  }
};

Run run;

unsigned env_workers(unsigned requested) {
  const char* env = std::getenv("TRIADNET_WORKERS");
  if (!env || !*env) return requested;
  unsigned v = 0;
  const auto r = std::from_chars(env, env + std::strlen(env), v);
  if (r.ec != std::errc() || *r.ptr != '\0') throw UndefinedInputError("TRIADNET_WORKERS must be a non-negative integer");
  return v;
}

EnsembleOptions ensemble(std::size_t instances, double steps_per_edge) {
  EnsembleOptions e;
  e.instances = instances;
  e.steps_per_edge = steps_per_edge;
  e.seed = run.seed;
  e.workers = run.workers;
  return e;
}

VarianceMode variance_mode(const std::string& s) {
  return s == "sample" ? VarianceMode::sample : VarianceMode::population;
}

const std::vector<std::string> kVarianceModes = {"population", "sample"};

// Whitespace-separated numbers, '#' comments.
std::vector<double> read_numbers(const std::string& text) {
  std::vector<double> v;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string tok;
    while (ss >> tok) {
      double x = 0;
      const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
        throw ParseError(line_no, "not a number: '" + tok + "'");
      v.push_back(x);
    }
  }
  return v;
}

std::string node_label(const std::vector<std::string>& labels, std::size_t i) {
  return i < labels.size() ? labels[i] : std::to_string(i);
}

std::vector<std::vector<double>> mapped_rows(const MappedProfiles& m) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : m.m) rows.emplace_back(p.begin(), p.end());
  return rows;
}

void write_clusters(const std::vector<std::size_t>& labels, const std::vector<std::string>& names) {
  run.csv_header("clusters", "node,label,cluster");
  for (std::size_t i = 0; i < labels.size(); ++i)
    run.out << i << ',' << node_label(names, i) << ',' << labels[i] << '\n';
}

// ---- subcommands ----------------------------------------------------------

struct StatsArgs {
  std::string input;
  std::string format = "json";
  std::string measure;
};

void cmd_stats(const StatsArgs& a) {
  const auto loaded = run.directed(a.input);
  const auto& g = loaded.graph;
  if (a.format == "json") {
    const auto weak = connected_components(g, ComponentMode::weak);
    const auto strong = connected_components(g, ComponentMode::strong);
    std::size_t largest = 0;
    for (const auto& c : weak) largest = std::max(largest, c.size());
    const auto paths = shortest_path_stats(g);
    Json j;
    j["nodes"] = g.node_count();
    j["arcs"] = g.arc_count();
    j["density"] = json_num(g.node_count() > 1 ? density(g) : std::nan(""));
    j["weak_components"] = weak.size();
    j["strong_components"] = strong.size();
    j["largest_weak_component"] = largest;
    j["average_clustering"] = json_num(average_clustering(g));
    j["global_clustering"] = json_num(global_clustering(g));
    j["triangles"] = triangle_count(g);
    j["average_path_length"] = paths.average_length ? Json(*paths.average_length) : Json(nullptr);
    j["diameter"] = paths.diameter ? Json(*paths.diameter) : Json(nullptr);
    j["reachable_pairs"] = paths.reachable_pairs;
    j["unreachable_pairs"] = paths.unreachable_pairs;
    j["duplicate_arcs"] = loaded.duplicate_arcs;
    j["self_arcs"] = loaded.self_arcs;
    run.out << j.dump(2) << '\n';
    return;
  }
  const auto deg = degrees(g);
  const auto cl = local_clustering(g);
  const auto bt = betweenness(g);
  const auto pr = pagerank(g);
  std::map<std::string, std::vector<double>> columns;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    columns["in_degree"].push_back(static_cast<double>(deg[i].in));
    columns["out_degree"].push_back(static_cast<double>(deg[i].out));
  }
  columns["clustering"] = cl;
  columns["betweenness"] = bt;
  columns["pagerank"] = pr;
  const std::vector<std::string> order = {"in_degree", "out_degree", "clustering", "betweenness", "pagerank"};
  if (!a.measure.empty()) {
    run.csv_header("stats." + a.measure, "node_id,label,value");
    for (std::size_t i = 0; i < g.node_count(); ++i)
      run.out << i << ',' << loaded.labels[i] << ',' << num(columns[a.measure][i]) << '\n';
    return;
  }
  std::string header = "node_id,label";
  for (const auto& c : order) header += ',' + c;
  run.csv_header("stats", header);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    run.out << i << ',' << loaded.labels[i];
    for (const auto& c : order) run.out << ',' << num(columns[c][i]);
    run.out << '\n';
  }
}

struct CensusArgs {
  std::string input;
  bool connected_only = false;
};

void cmd_census(const CensusArgs& a) {
  const auto g = run.directed(a.input).graph;
  const Census c = census(g, a.connected_only);
  run.csv_header("census", "pattern_id,name,count");
  for (int id = 1; id <= kPatternCount; ++id)
    run.out << id << ',' << pattern_info(id).name << ',' << c[id - 1] << '\n';
}

struct MotifArgs {
  std::string input;
  std::size_t instances = 1000;
  double steps_per_edge = 100;
  std::string variance = "population";
  std::string format = "json";
};

void cmd_motifs(const MotifArgs& a) {
  const auto g = run.directed(a.input).graph;
  ZProfileOptions opts;
  opts.ensemble = ensemble(a.instances, a.steps_per_edge);
  opts.variance = variance_mode(a.variance);
  const ZProfile z = z_profile(g, opts);
  PatternVector sp;
  try {
    sp = significance_profile(z);
  } catch (const UndefinedProfileError&) {
    sp.fill(std::nan(""));  // all-zero Z vector
  }
  if (a.format == "json") {
    Json j;
    Json names = Json::array(), counts = Json::array(), mean = Json::array(), sigma = Json::array(),
         zs = Json::array(), sps = Json::array(), flags = Json::array();
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) {
      names.push_back(pattern_info(static_cast<int>(k) + 4).name);
      counts.push_back(z.original[k]);
      mean.push_back(json_num(z.mean[k]));
      sigma.push_back(json_num(z.sigma[k]));
      zs.push_back(json_num(z.z[k]));
      sps.push_back(json_num(sp[k]));
      flags.push_back(to_string(z.flags[k]));
    }
    j["patterns"] = names;
    j["counts"] = counts;
    j["mean"] = mean;
    j["sigma"] = sigma;
    j["z"] = zs;
    j["sp"] = sps;
    j["flags"] = flags;
    j["instances"] = z.instances;
    j["variance"] = a.variance;
    run.out << j.dump(2) << '\n';
    return;
  }
  run.csv_header("motifs", "pattern_id,name,count,mean,sigma,z,sp,flag");
  for (std::size_t k = 0; k < kConnectedPatternCount; ++k) {
    const int id = static_cast<int>(k) + 4;
    run.out << id << ',' << pattern_info(id).name << ',' << num(z.original[k]) << ',' << num(z.mean[k]) << ','
            << num(z.sigma[k]) << ',' << num(z.z[k]) << ',' << num(sp[k]) << ',' << to_string(z.flags[k])
            << '\n';
  }
}

struct NospamArgs {
  std::string input;
  bool signed_input = false;
  bool mapped = false;
  bool homogeneity = false;
  bool homophily = false;
  std::size_t cluster = 0;
  std::size_t instances = 1000;
  double steps_per_edge = 100;
  std::string variance = "population";
};

void write_z_table(const NodeZProfile& z, const std::vector<std::string>& labels, const std::string& prefix) {
  std::string header = "node,label";
  for (std::size_t c = 0; c < z.width; ++c) header += ',' + prefix + std::to_string(c + 1);
  header += ",flags";
  run.csv_header(prefix == "o" ? "nospam.directed" : "nospam.signed", header);
  for (std::size_t i = 0; i < z.nodes; ++i) {
    run.out << i << ',' << node_label(labels, i);
    std::string flags;
    for (std::size_t c = 0; c < z.width; ++c) {
      run.out << ',' << num(z.z_at(i, c));
      flags += flag_char(z.flag_at(i, c));
    }
    run.out << ',' << flags << '\n';
  }
}

void cmd_nospam(const NospamArgs& a) {
  NospamOptions opts;
  opts.ensemble = ensemble(a.instances, a.steps_per_edge);
  opts.variance = variance_mode(a.variance);
  if (a.signed_input) {
    const auto loaded = run.signed_graph(a.input);
    if (a.mapped || a.homogeneity) throw UndefinedInputError("--mapped and --homogeneity need a directed graph");
    const NodeZProfile z = nospam_signed(loaded.graph, opts);
    if (a.homophily) {
      Json j;
      j["homophily"] = json_num(homophily(z, loaded.graph));
      run.out << j.dump(2) << '\n';
    } else if (a.cluster > 0) {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < z.nodes; ++i) rows.push_back(z.defined_row(i));
      write_clusters(complete_link_cluster(rows).cut_count(a.cluster), loaded.labels);
    } else {
      write_z_table(z, loaded.labels, "s");
    }
    return;
  }
  const auto loaded = run.directed(a.input);
  const NospamResult r = nospam_directed(loaded.graph, opts);
  if (a.homophily) {
    Json j;
    j["homophily"] = json_num(homophily(r.nodes, loaded.graph));
    run.out << j.dump(2) << '\n';
    return;
  }
  if (!a.mapped && !a.homogeneity && a.cluster == 0) {
    write_z_table(r.nodes, loaded.labels, "o");
    return;
  }
  const MappedProfiles m = map_profiles(r.nodes);
  if (a.homogeneity) {
    const Homogeneity h = homogeneity(m, r.whole);
    const Histogram hist = ffl_heterogeneity_histogram(m);
    Json j;
    j["mean"] = json_num(h.mean);
    j["stddev"] = json_num(h.stddev);
    j["nodes_used"] = h.nodes_used;
    j["nodes_excluded"] = h.nodes_excluded;
    Json per = Json::array();
    for (double x : h.per_node) per.push_back(json_num(x));
    j["per_node"] = per;
    Json ffl;
    ffl["lower"] = hist.lower;
    ffl["bin_width"] = hist.width;
    ffl["counts"] = hist.counts;
    ffl["fraction_below_one"] = json_num(hist.fraction_small);
    ffl["max"] = json_num(hist.max_value);
    Json top = Json::array();
    for (auto n : hist.top_nodes) top.push_back(node_label(loaded.labels, n));
    ffl["top_nodes"] = top;
    j["ffl_histogram"] = ffl;
    run.out << j.dump(2) << '\n';
  } else if (a.cluster > 0) {
    write_clusters(complete_link_cluster(mapped_rows(m)).cut_count(a.cluster), loaded.labels);
  } else {
    std::string header = "node,label";
    for (int id = 4; id <= kPatternCount; ++id) header += ",m_" + pattern_info(id).name;
    run.csv_header("nospam.mapped", header);
    for (std::size_t i = 0; i < m.nodes; ++i) {
      run.out << i << ',' << node_label(loaded.labels, i);
      for (double x : m.m[i]) run.out << ',' << num(x);
      run.out << '\n';
    }
  }
}

struct StsArgs {
  std::uint32_t order = 0;
  std::string validate;
};

void cmd_sts(const StsArgs& a) {
  if (!a.validate.empty()) {
    std::istringstream in(run.read_input(a.validate));
    const SteinerTripleSystem s = read_triples(in);
    const StsReport rep = validate(s);
    Json j;
    j["ok"] = rep.ok;
    j["order"] = s.order;
    j["expected_triples"] = rep.expected_triples;
    j["actual_triples"] = rep.actual_triples;
    j["uncovered_pairs"] = rep.uncovered.size();
    j["multiply_covered_pairs"] = rep.multiply_covered.size();
    j["bad_triples"] = rep.bad_triples.size();
    j["summary"] = rep.summary();
    run.out << j.dump(2) << '\n';
    if (!rep.ok) run.exit_code = 1;
    return;
  }
  write_triples(run.out, sts_construct(a.order));
}

struct TrgmArgs {
  std::uint32_t order = 0;
  std::string counts;
  std::string dist;
  std::optional<double> er;
  bool degree_dist = false;
  std::string direction = "in";
  std::size_t correlate = 0;
  double bin_width = 0.05;
  std::size_t min_bin_count = 10;
  std::size_t instances = 100;
  double steps_per_edge = 100;
};

PatternDistribution distribution_from(const std::vector<double>& v) {
  if (v.size() != kPatternCount) throw UndefinedInputError("expected 16 pattern probabilities");
  PatternDistribution p{};
  std::copy(v.begin(), v.end(), p.begin());
  check_distribution(p);
  return p;
}

void trgm_correlate(const TrgmArgs& a, const SteinerTripleSystem& s) {
  // Uniform-simplex pattern counts, grouped by expected density.
  struct Sample {
    PatternDistribution p;
    PatternVector z;
    double density;
  };
  std::vector<Sample> samples;
  const double triples = static_cast<double>(s.triples.size());
  for (std::size_t i = 0; i < a.correlate; ++i) {
    const PatternCounts t = uniform_simplex_counts(a.order, derive_seed(run.seed, 2 * i));
    Sample smp;
    for (int k = 0; k < kPatternCount; ++k) smp.p[k] = static_cast<double>(t[k]) / triples;
    smp.density = expected_density(smp.p);
    const DirectedGraph g = sample_trgm(s, t, derive_seed(run.seed, 2 * i + 1));
    ZProfileOptions opts;
    opts.ensemble = ensemble(a.instances, a.steps_per_edge);
    opts.ensemble.seed = derive_seed(run.seed, 2 * i + 1);
    smp.z = finite_z(z_profile(g, opts));
    samples.push_back(smp);
  }
  std::map<long long, std::vector<const Sample*>> bins;
  for (const auto& smp : samples) bins[static_cast<long long>(std::floor(smp.density / a.bin_width))].push_back(&smp);
  run.csv_header("trgm.correlation", "bin_lower,bin_upper,samples,z_pattern,p_pattern,r,p_value");
  for (const auto& [bin, members] : bins) {
    if (members.size() < a.min_bin_count) continue;
    std::vector<PatternDistribution> ps;
    std::vector<PatternVector> zs;
    for (const auto* m : members) {
      ps.push_back(m->p);
      zs.push_back(m->z);
    }
    const CorrelationMatrix c = p_to_z_correlation(ps, zs);
    for (std::size_t i = 0; i < c.rows; ++i)
      for (std::size_t j = 0; j < c.cols; ++j)
        run.out << num(bin * a.bin_width) << ',' << num((bin + 1) * a.bin_width) << ',' << members.size() << ','
                << pattern_info(static_cast<int>(i) + 4).name << ',' << pattern_info(static_cast<int>(j) + 1).name
                << ',' << num(c.at(i, j)) << ',' << num(c.p_value[i * c.cols + j]) << '\n';
  }
}

void cmd_trgm(const TrgmArgs& a) {
  const SteinerTripleSystem s = sts_construct(a.order);
  if (a.correlate > 0) {
    trgm_correlate(a, s);
    return;
  }
  std::optional<PatternDistribution> p;
  std::optional<PatternCounts> t;
  if (!a.counts.empty()) {
    const auto v = read_numbers(run.read_input(a.counts));
    if (v.size() != kPatternCount) throw UndefinedInputError("expected 16 pattern counts");
    PatternCounts c{};
    for (int k = 0; k < kPatternCount; ++k) {
      if (v[k] < 0 || v[k] != std::floor(v[k])) throw UndefinedInputError("pattern counts must be non-negative integers");
      c[k] = static_cast<std::uint64_t>(v[k]);
    }
    check_counts(c, a.order);
    t = c;
  } else if (!a.dist.empty()) {
    p = distribution_from(read_numbers(run.read_input(a.dist)));
  } else if (a.er) {
    p = er_distribution(*a.er);
  } else {
    throw UndefinedInputError("one of --counts, --dist or --er is required");
  }
  if (a.degree_dist) {
    PatternDistribution law{};
    if (p) {
      law = *p;
    } else {
      for (int k = 0; k < kPatternCount; ++k) law[k] = static_cast<double>((*t)[k]) / s.triples.size();
    }
    const auto d = degree_distribution(law, a.order, a.direction == "out" ? DegreeDirection::out : DegreeDirection::in);
    run.csv_header("trgm.degree", "kappa,probability");
    for (std::size_t k = 0; k < d.size(); ++k) run.out << k << ',' << num(d[k]) << '\n';
    return;
  }
  const DirectedGraph g = t ? sample_trgm(s, *t, run.seed) : sample_trgm(s, *p, run.seed);
  run.out << "# triadnet trgm order " << a.order << " seed " << run.seed << '\n';
  write_edge_list(run.out, g);
}

struct RandomizeArgs {
  std::string input;
  bool signed_input = false;
  double steps_per_edge = 100;
};

void cmd_randomize(const RandomizeArgs& a) {
  if (a.signed_input) {
    const auto loaded = run.signed_graph(a.input);
    const auto steps = switch_steps(loaded.graph.edge_count(), a.steps_per_edge);
    write_signed_edge_list(run.out, randomize_signed(loaded.graph, steps, run.seed), &loaded.labels);
    return;
  }
  const auto loaded = run.directed(a.input);
  const auto steps = switch_steps(link_count(loaded.graph), a.steps_per_edge);
  write_edge_list(run.out, randomize_directed(loaded.graph, steps, run.seed), &loaded.labels);
}

struct DynamicsArgs {
  std::string input;
  std::size_t grid = 64;
  std::size_t repeats = 10;
  OscillatorParams p;
  std::optional<double> coupling;
};

void cmd_dynamics(DynamicsArgs a) {
  const auto g = run.directed(a.input).graph;
  SweepOptions opts;
  opts.base = a.p;
  opts.base.seed = run.seed;
  opts.workers = run.workers;
  if (a.coupling) {
    opts.base.b = *a.coupling;
    opts.auto_coupling = false;
  }
  const SweepResult r = theta_sweep(g, theta_grid(a.grid), a.repeats, opts);
  run.csv_header("dynamics", "theta,output,output_se,corr,corr_se");
  for (std::size_t i = 0; i < r.theta.size(); ++i)
    run.out << num(r.theta[i]) << ',' << num(r.output[i]) << ',' << num(r.output_se[i]) << ','
            << num(r.correlation[i]) << ',' << num(r.correlation_se[i]) << '\n';
}

struct RemovalArgs {
  std::string input;
  std::string rank = "degree";
  std::string pattern = "030T";
  std::size_t max_removals = 0;
  bool recompute = false;
  std::string normalization = "row";
  std::size_t instances = 1000;
  double steps_per_edge = 100;
};

int pattern_by_name(const std::string& name) {
  for (int id = kFirstConnectedPattern; id <= kPatternCount; ++id)
    if (pattern_info(id).name == name || std::to_string(id) == name) return id;
  throw UndefinedInputError("unknown connected pattern '" + name + "'");
}

void cmd_removal(const RemovalArgs& a) {
  const auto loaded = run.directed(a.input);
  RemovalOptions opts;
  opts.max_removals = a.max_removals;
  opts.recompute = a.recompute;
  opts.normalization = a.normalization == "column" ? Normalization::column : Normalization::row;
  opts.seed = run.seed;
  if (a.rank == "degree") opts.ranking = RemovalRanking::degree;
  else if (a.rank == "pagerank") opts.ranking = RemovalRanking::pagerank;
  else if (a.rank == "betweenness") opts.ranking = RemovalRanking::betweenness;
  else if (a.rank == "random") opts.ranking = RemovalRanking::random;
  else {
    const int id = pattern_by_name(a.pattern);
    NospamOptions nopts;
    nopts.ensemble = ensemble(a.instances, a.steps_per_edge);
    const MappedProfiles m = map_profiles(nospam_directed(loaded.graph, nopts).nodes);
    opts.ranking = RemovalRanking::scores;
    for (const auto& row : m.m) {
      const double x = row[ZProfile::index(id)];
      opts.scores.push_back(std::isnan(x) ? -std::numeric_limits<double>::infinity() : x);
    }
  }
  const auto steps = removal_experiment(loaded.graph, opts);
  run.csv_header("removal", "step,node,edges_removed_cum,delta");
  for (const auto& s : steps)
    run.out << s.step << ',' << (s.node ? node_label(loaded.labels, *s.node) : "") << ',' << s.edges_removed << ','
            << num(s.delta) << '\n';
}

struct ClusterArgs {
  std::string input;
  std::optional<std::size_t> k;
  std::optional<double> threshold;
  bool merges = false;
};

// Profile CSV as written by nospam: feature columns start with "o", "s" or "m_".
void cmd_cluster(const ClusterArgs& a) {
  std::istringstream in(run.read_input(a.input));
  std::string line;
  std::vector<std::string> header;
  std::vector<std::size_t> features;
  std::size_t label_col = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    return f;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line);
    if (header.empty()) {
      header = f;
      for (std::size_t c = 0; c < f.size(); ++c) {
        const auto& h = f[c];
        if (h == "label") label_col = c;
        const bool orbit = h.size() > 1 && (h[0] == 'o' || h[0] == 's') &&
                           std::all_of(h.begin() + 1, h.end(), [](char ch) { return std::isdigit(ch); });
        if (orbit || h.rfind("m_", 0) == 0) features.push_back(c);
      }
      if (features.empty()) throw ParseError(line_no, "no profile columns (o*, s*, m_*) in header");
      continue;
    }
    if (f.size() != header.size()) throw ParseError(line_no, "column count differs from header");
    labels.push_back(f[label_col]);
    std::vector<double> row;
    for (auto c : features) {
      const std::string& cell = f[c];
      if (cell == "nan") row.push_back(std::nan(""));
      else if (cell == "inf" || cell == "-inf") row.push_back(std::nan(""));  // degenerate, treated as undefined
      else {
        double x = 0;
        const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), x);
        if (r.ec != std::errc() || r.ptr != cell.data() + cell.size()) throw ParseError(line_no, "bad number '" + cell + "'");
        row.push_back(x);
      }
    }
    rows.push_back(std::move(row));
  }
  const Dendrogram d = complete_link_cluster(rows);
  if (a.merges) {
    run.csv_header("cluster.merges", "merge,a,b,distance,size");
    for (std::size_t i = 0; i < d.merges.size(); ++i)
      run.out << i << ',' << d.merges[i].a << ',' << d.merges[i].b << ',' << num(d.merges[i].distance) << ','
              << d.merges[i].size << '\n';
    return;
  }
  if (a.k) write_clusters(d.cut_count(*a.k), labels);
  else if (a.threshold) write_clusters(d.cut_threshold(*a.threshold), labels);
  else throw UndefinedInputError("one of --k, --threshold or --merges is required");
}

void cmd_patterns() {
  Json j;
  Json ps = Json::array();
  for (int id = 1; id <= kPatternCount; ++id) {
    const auto& p = pattern_info(id);
    Json e;
    e["id"] = p.id;
    e["name"] = p.name;
    e["representative"] = p.representative;
    e["canonical"] = p.canonical;
    e["arcs"] = p.arcs;
    e["mutual_dyads"] = p.mutual_dyads;
    e["connected"] = p.connected;
    e["closed"] = p.closed;
    e["configurations"] = p.configurations;
    e["orbits"] = p.orbits;
    ps.push_back(e);
  }
  Json os = Json::array();
  for (int id = 1; id <= kOrbitCount; ++id) {
    const auto& o = orbit_info(id);
    os.push_back({{"id", o.id}, {"pattern", o.pattern}, {"index", o.index}, {"size", o.size},
                  {"rooted_code", o.rooted_code}});
  }
  Json ss = Json::array();
  for (int id = 1; id <= kSignedPatternCount; ++id) {
    const auto& s = signed_pattern_info(id);
    const char* pos = s.position == SignedPosition::path_end      ? "path_end"
                      : s.position == SignedPosition::path_middle ? "path_middle"
                                                                  : "triangle";
    ss.push_back({{"id", s.id}, {"name", s.name}, {"position", pos}, {"signs", s.signs}, {"balanced", s.balanced}});
  }
  j["code_bits"] = {"a->b", "b->a", "a->c", "c->a", "b->c", "c->b"};
  j["patterns"] = ps;
  j["orbits"] = os;
  j["signed_patterns"] = ss;
  run.out << j.dump(2) << '\n';
}

struct AggregateArgs {
  std::string input;
  int month = 1;
  std::string countries;
};

void cmd_aggregate(const AggregateArgs& a) {
  std::istringstream in(run.read_input(a.input));
  const auto records = parse_sentiment(in);
  std::optional<std::vector<std::string>> whitelist;
  if (!a.countries.empty()) {
    std::istringstream cin_(run.read_input(a.countries));
    whitelist = parse_token_list(cin_);
  }
  const auto m = aggregate_signed_month(records, a.month, whitelist ? &*whitelist : nullptr);
  run.out << "# triadnet aggregate-signed month " << a.month << " nodes " << m.labels.size() << " inconsistent "
          << m.inconsistent_pairs << '\n';
  write_signed_edge_list(run.out, m.graph, &m.labels);
}

// ---- driver ---------------------------------------------------------------

Json manifest(const CLI::App& app, const CLI::App* sub) {
  Json flags = Json::object();
  for (const auto* a : {&app, sub})
    for (const auto* opt : a->get_options()) {
      if (opt->get_name() == "--help" || opt->get_name() == "--version") continue;
      const auto& res = opt->results();
      std::string name = opt->get_name();
      if (res.empty()) {
        if (!opt->get_default_str().empty()) flags[name] = opt->get_default_str();
        continue;
      }
      flags[name] = res.size() == 1 ? Json(res[0]) : Json(res);
    }
  Json j;
  j["tool"] = "triadnet";
  j["version"] = TRIADNET_VERSION;
  j["command"] = sub->get_name();
  j["flags"] = flags;
  j["workers"] = run.workers;
  j["rng_seed"] = run.seed;
  j["inputs"] = run.inputs;
  j["output"] = run.output;
  return j;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IngestionError("cannot write '" + path + "'");
  f << data;
}

int report_error(const std::string& kind, const std::string& message, std::optional<std::size_t> line) {
  if (run.error_json) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    if (line) j["line"] = *line;
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << "triadnet: " << kind << " error: " << message << '\n';
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triad census, motif statistics, triadic random graphs and oscillator dynamics"};
  app.set_version_flag("--version", TRIADNET_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", run.workers, "Worker threads (0 = all cores); TRIADNET_WORKERS overrides")
      ->capture_default_str();
  app.add_option("-o,--output", run.output, "Output file, '-' for stdout")->capture_default_str();
  app.add_option("--manifest", run.manifest, "Run manifest path (default: OUTPUT.manifest.json when --output is a file)");
  app.add_flag("--error-json", run.error_json, "Report errors as one JSON object on stderr");
  auto seed_option = [](CLI::App* sub) {
    sub->add_option("--seed", run.seed, "Random seed")->capture_default_str();
  };

  std::function<void()> action;

  StatsArgs stats;
  auto* s_stats = app.add_subcommand("stats", "Classical measures: JSON summary or per-node CSV");
  s_stats->add_option("input", stats.input, "Edge list ('-' for stdin)")->required();
  s_stats->add_option("--format", stats.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  s_stats->add_option("--measure", stats.measure, "Single per-node measure as (node_id, value) CSV")
      ->check(CLI::IsMember({"in_degree", "out_degree", "clustering", "betweenness", "pagerank"}));
  s_stats->callback([&] {
    if (!stats.measure.empty()) stats.format = "csv";
    action = [&] { cmd_stats(stats); };
  });

  CensusArgs cen;
  auto* s_census = app.add_subcommand("census", "Triad census over the 16 directed patterns");
  s_census->add_option("input", cen.input)->required();
  s_census->add_flag("--connected-only", cen.connected_only, "Skip patterns with fewer than two occupied dyads");
  s_census->callback([&] { action = [&] { cmd_census(cen); }; });

  MotifArgs mot;
  auto* s_motifs = app.add_subcommand("motifs", "Whole-graph Z scores against the switching null model");
  s_motifs->add_option("input", mot.input)->required();
  s_motifs->add_option("--instances", mot.instances)->capture_default_str();
  s_motifs->add_option("--steps-per-edge", mot.steps_per_edge)->capture_default_str();
  s_motifs->add_option("--variance", mot.variance)->check(CLI::IsMember(kVarianceModes))->capture_default_str();
  s_motifs->add_option("--format", mot.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  seed_option(s_motifs);
  s_motifs->callback([&] { action = [&] { cmd_motifs(mot); }; });

  NospamArgs nos;
  auto* s_nospam = app.add_subcommand("nospam", "Node-specific pattern Z scores");
  s_nospam->add_option("input", nos.input)->required();
  s_nospam->add_flag("--signed", nos.signed_input, "Input is a signed edge list");
  auto* f_mapped = s_nospam->add_flag("--mapped", nos.mapped, "Emit per-pattern orbit means");
  auto* f_hom = s_nospam->add_flag("--homogeneity", nos.homogeneity, "Emit node/whole-graph profile correlations");
  auto* f_hph = s_nospam->add_flag("--homophily", nos.homophily, "Emit neighbor profile similarity excess");
  auto* f_cl = s_nospam->add_option("--cluster", nos.cluster, "Complete-link clusters cut at k");
  f_mapped->excludes(f_hom)->excludes(f_hph)->excludes(f_cl);
  f_hom->excludes(f_hph)->excludes(f_cl);
  f_hph->excludes(f_cl);
  s_nospam->add_option("--instances", nos.instances)->capture_default_str();
  s_nospam->add_option("--steps-per-edge", nos.steps_per_edge)->capture_default_str();
  s_nospam->add_option("--variance", nos.variance)->check(CLI::IsMember(kVarianceModes))->capture_default_str();
  seed_option(s_nospam);
  s_nospam->callback([&] { action = [&] { cmd_nospam(nos); }; });

  StsArgs sts;
  auto* s_sts = app.add_subcommand("sts", "Steiner triple systems");
  auto* o_order = s_sts->add_option("--order", sts.order, "Construct a system of this order");
  auto* o_val = s_sts->add_option("--validate", sts.validate, "Validate triples from FILE ('-' for stdin)");
  o_order->excludes(o_val);
  s_sts->require_option(1);
  s_sts->callback([&] { action = [&] { cmd_sts(sts); }; });

  TrgmArgs tr;
  auto* s_trgm = app.add_subcommand("trgm", "Triadic random graphs on a Steiner triple system");
  s_trgm->add_option("--order", tr.order)->required();
  auto* o_counts = s_trgm->add_option("--counts", tr.counts, "FILE with 16 pattern counts");
  auto* o_dist = s_trgm->add_option("--dist", tr.dist, "FILE with 16 pattern probabilities");
  auto* o_er = s_trgm->add_option("--er", tr.er, "Erdos-Renyi pattern law with arc probability p");
  o_counts->excludes(o_dist)->excludes(o_er);
  o_dist->excludes(o_er);
  s_trgm->add_flag("--degree-dist", tr.degree_dist, "Emit the exact degree law instead of a graph");
  s_trgm->add_option("--direction", tr.direction)->check(CLI::IsMember({"in", "out"}))->capture_default_str();
  s_trgm->add_option("--correlate", tr.correlate, "Samples for the density-binned P-to-Z correlation recipe");
  s_trgm->add_option("--bin-width", tr.bin_width)->capture_default_str();
  s_trgm->add_option("--min-bin-count", tr.min_bin_count, "Skip bins with fewer samples")->capture_default_str();
  s_trgm->add_option("--instances", tr.instances, "Null-model instances per sample (--correlate)")->capture_default_str();
  s_trgm->add_option("--steps-per-edge", tr.steps_per_edge)->capture_default_str();
  seed_option(s_trgm);
  s_trgm->callback([&] { action = [&] { cmd_trgm(tr); }; });

  RandomizeArgs rnd;
  auto* s_rand = app.add_subcommand("randomize", "One degree-preserving randomization");
  s_rand->add_option("input", rnd.input)->required();
  s_rand->add_flag("--signed", rnd.signed_input);
  s_rand->add_option("--steps-per-edge", rnd.steps_per_edge)->capture_default_str();
  seed_option(s_rand);
  s_rand->callback([&] { action = [&] { cmd_randomize(rnd); }; });

  DynamicsArgs dyn;
  auto* s_dyn = app.add_subcommand("dynamics", "Noise-driven coupled linear oscillators swept over theta");
  s_dyn->add_option("input", dyn.input)->required();
  s_dyn->add_option("--theta-grid", dyn.grid, "Grid points on [0, 2 pi)")->capture_default_str();
  s_dyn->add_option("--repeats", dyn.repeats)->capture_default_str();
  s_dyn->add_option("--steps", dyn.p.steps)->capture_default_str();
  s_dyn->add_option("--transient", dyn.p.transient)->capture_default_str();
  s_dyn->add_option("--dt", dyn.p.dt)->capture_default_str();
  s_dyn->add_option("--a", dyn.p.a, "Damping")->capture_default_str();
  s_dyn->add_option("--omega", dyn.p.omega)->capture_default_str();
  s_dyn->add_option("--noise", dyn.p.noise)->capture_default_str();
  s_dyn->add_option("--sample-every", dyn.p.sample_every)->capture_default_str();
  s_dyn->add_option("--coupling", dyn.coupling, "Coupling b (default 0.8 / spectral radius)");
  seed_option(s_dyn);
  s_dyn->callback([&] { action = [&] { cmd_dynamics(dyn); }; });

  RemovalArgs rem;
  auto* s_rem = app.add_subcommand("removal", "Spectral gap under targeted node removal");
  s_rem->add_option("input", rem.input)->required();
  s_rem->add_option("--rank", rem.rank)
      ->check(CLI::IsMember({"degree", "pagerank", "betweenness", "random", "pattern"}))
      ->capture_default_str();
  s_rem->add_option("--pattern", rem.pattern, "Pattern for --rank pattern (name or id)")->capture_default_str();
  s_rem->add_option("--max-removals", rem.max_removals, "0 = until exhausted")->capture_default_str();
  s_rem->add_flag("--recompute", rem.recompute, "Re-rank after every removal");
  s_rem->add_option("--normalization", rem.normalization)
      ->check(CLI::IsMember({"row", "column"}))
      ->capture_default_str();
  s_rem->add_option("--instances", rem.instances, "Null-model instances (--rank pattern)")->capture_default_str();
  s_rem->add_option("--steps-per-edge", rem.steps_per_edge)->capture_default_str();
  seed_option(s_rem);
  s_rem->callback([&] { action = [&] { cmd_removal(rem); }; });

  ClusterArgs clu;
  auto* s_clu = app.add_subcommand("cluster", "Complete-link clustering of a profile CSV");
  s_clu->add_option("input", clu.input)->required();
  auto* o_k = s_clu->add_option("--k", clu.k, "Number of clusters");
  auto* o_t = s_clu->add_option("--threshold", clu.threshold, "Merge distance cut");
  auto* o_m = s_clu->add_flag("--merges", clu.merges, "Emit the merge sequence");
  o_k->excludes(o_t)->excludes(o_m);
  o_t->excludes(o_m);
  s_clu->callback([&] { action = [&] { cmd_cluster(clu); }; });

  std::string emit = "table";
  auto* s_pat = app.add_subcommand("patterns", "Pattern, orbit and signed-pattern tables as JSON");
  s_pat->add_option("--emit", emit)->check(CLI::IsMember({"table"}))->capture_default_str();
  s_pat->callback([&] { action = [&] { cmd_patterns(); }; });

  AggregateArgs agg;
  auto* s_agg = app.add_subcommand("aggregate-signed", "Monthly signed graph from daily sentiment records");
  s_agg->add_option("input", agg.input, "Records: day source target vcoop vconf mcoop mconf")->required();
  s_agg->add_option("--month", agg.month)->check(CLI::PositiveNumber)->capture_default_str();
  s_agg->add_option("--countries", agg.countries, "Whitelist FILE of country tokens");
  s_agg->callback([&] { action = [&] { cmd_aggregate(agg); }; });

  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--error-json") run.error_json = true;
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (!run.error_json) return app.exit(e);
    report_error("usage", e.what(), std::nullopt);
    return e.get_exit_code();
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    run.workers = env_workers(run.workers);
    action();
    const std::string data = run.out.str();
    if (run.output == "-") std::cout << data << std::flush;
    else write_file(run.output, data);
    std::string manifest_path = run.manifest;
    if (manifest_path.empty() && run.output != "-") manifest_path = run.output + ".manifest.json";
    if (!manifest_path.empty()) write_file(manifest_path, manifest(app, sub).dump(2) + "\n");
    return run.exit_code;
  } catch (const ParseError& e) {
    return report_error(e.kind(), e.what(), e.line());
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), std::nullopt);
  } catch (const std::exception& e) {
    return report_error("error", e.what(), std::nullopt);
  }
}
