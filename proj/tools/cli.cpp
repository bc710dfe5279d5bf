#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "walkrank/absorbing.hpp"
#include "walkrank/bipartite.hpp"
#include "walkrank/centrality.hpp"
#include "walkrank/graph.hpp"
#include "walkrank/io.hpp"
#include "walkrank/parallel.hpp"
#include "walkrank/recommender.hpp"
#include "walkrank/similarity.hpp"
#include "walkrank/spectral.hpp"

namespace walkrank::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "walkrank/v1";

struct Output {
  std::string format;
  std::ostream& out;

  bool is_json() const { return format == "json"; }
};

struct GraphOptions {
  std::string path;
  bool undirected = false;
  std::string dangling = "uniform";

  DirectedGraph load(std::ostream& err) const {
    ParseOptions options;
    options.undirected = undirected;
    options.warnings = [&err](const std::string& m) { err << "warning: " << m << '\n'; };
    return read_directed_graph(path, options);
  }
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
  cmd->add_option("graph", g.path, "Edge list: source<TAB>target[<TAB>weight]")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_flag("--undirected", g.undirected, "Mirror every edge line");
  cmd->add_option("--dangling", g.dangling, "Dangling-node policy")
      ->check(CLI::IsMember({"uniform", "self-loop", "error"}));
}

/// Label-keyed values from `label<TAB>value` lines; a missing value reads as 1.
std::map<NodeId, double> read_label_values(const std::string& path, const LabelIndex& labels) {
  std::map<NodeId, double> values;
  for (const auto& line : detail::split_tab_lines(read_text_file(path))) {
    if (line.fields.size() > 2) throw ParseError(line.number, "expected label[<TAB>value]");
    const auto id = labels.find(line.fields[0]);
    if (!id) {
      throw DomainError(path + " line " + std::to_string(line.number) + ": unknown node '" +
                        std::string(line.fields[0]) + "'");
    }
    values[*id] = line.fields.size() == 2 ? detail::parse_real(line.fields[1], line.number, "value")
                                          : 1.0;
  }
  return values;
}

std::set<NodeId> read_label_set(const std::string& path, const LabelIndex& labels) {
  std::set<NodeId> ids;
  for (const auto& [id, value] : read_label_values(path, labels)) ids.insert(id);
  return ids;
}

std::set<NodeId> parse_label_list(const std::vector<std::string>& names, const LabelIndex& labels) {
  std::set<NodeId> ids;
  for (const auto& name : names) ids.insert(labels.at(name));
  return ids;
}

void emit_scores(const Output& o, std::string_view kind, const LabelIndex& labels,
                 std::span<const double> scores, json meta = json::object()) {
  const auto order = ranking(scores);
  if (o.is_json()) {
    json doc = {{"schema", kSchema}, {"kind", kind}};
    doc.update(meta);
    json results = json::array();
    for (std::size_t r = 0; r < order.size(); ++r) {
      results.push_back({{"label", labels.label(order[r])}, {"score", scores[order[r]]},
                         {"rank", r + 1}});
    }
    doc["results"] = std::move(results);
    o.out << doc.dump(2) << '\n';
    return;
  }
  for (NodeId v : order) o.out << labels.label(v) << '\t' << format_double(scores[v]) << '\n';
}

// ---------------------------------------------------------------- rank

struct RankOptions {
  GraphOptions graph;
  std::string algo = "pagerank";
  double alpha = 0.85;
  double tolerance = kDefaultTolerance;
  std::size_t max_iterations = kDefaultMaxIterations;
  std::string teleport;
  std::string ages;
  double tau = 1.0;
  std::string trusted;
  std::size_t length = 10;
  std::size_t quadrature = 32;
  std::string hits_vector = "authority";
};

void run_rank(const RankOptions& r, const Output& o, std::ostream& err) {
  const auto g = r.graph.load(err);
  const auto& labels = g.labels();
  const auto policy = parse_dangling_policy(r.graph.dangling);
  PageRankParams params;
  params.alpha = r.alpha;
  params.tolerance = r.tolerance;
  params.max_iterations = r.max_iterations;
  if (!r.teleport.empty()) {
    std::vector<double> v(g.node_count(), 0.0);
    for (const auto& [id, weight] : read_label_values(r.teleport, labels)) v[id] = weight;
    params.teleport = ScoreVector::normalized(std::move(v), Normalization::sum_one);
  }
  json meta = {{"algorithm", r.algo}};

  if (r.algo == "pagerank" || r.algo == "pagerank-direct") {
    meta["alpha"] = r.alpha;
    const auto p = build_transition(g, policy);
    const auto h = r.algo == "pagerank" ? pagerank(p, params) : pagerank_direct(p, params);
    emit_scores(o, "rank", labels, h.values(), meta);
  } else if (r.algo == "totalrank") {
    const auto h = totalrank(build_transition(g, policy), r.quadrature);
    emit_scores(o, "rank", labels, h.values(), meta);
  } else if (r.algo == "hits") {
    const auto result = hits(g, r.tolerance, r.max_iterations);
    meta["vector"] = r.hits_vector;
    meta["iterations"] = result.iterations;
    const auto& v = r.hits_vector == "hub" ? result.hub : result.authority;
    emit_scores(o, "rank", labels, v.values(), meta);
  } else if (r.algo == "eigenvector") {
    emit_scores(o, "rank", labels, eigenvector_centrality(g, r.tolerance).values(), meta);
  } else if (r.algo == "citerank") {
    if (r.ages.empty()) throw DomainError("citerank needs --ages");
    const auto given = read_label_values(r.ages, labels);
    if (given.size() != g.node_count()) throw DomainError("--ages must list every node");
    std::vector<double> ages(g.node_count());
    for (const auto& [id, age] : given) ages[id] = age;
    meta["alpha"] = r.alpha;
    meta["tau"] = r.tau;
    const auto h = citerank(build_transition(g, policy), ages, r.tau, r.alpha, r.tolerance,
                            r.max_iterations);
    emit_scores(o, "rank", labels, h.values(), meta);
  } else if (r.algo == "eigentrust") {
    if (r.trusted.empty()) throw DomainError("eigentrust needs --trusted");
    params.teleport = trusted_teleport(read_label_set(r.trusted, labels), g.node_count());
    meta["alpha"] = r.alpha;
    emit_scores(o, "rank", labels, pagerank(build_transition(g, policy), params).values(), meta);
  } else if (r.algo == "ground") {
    emit_scores(o, "rank", labels, ground_node_rank(g, r.tolerance).values(), meta);
  } else if (r.algo == "diverse") {
    const auto picked = diverse_ranking(build_transition(g, policy), params, r.length);
    if (o.is_json()) {
      json doc = {{"schema", kSchema}, {"kind", "rank"}};
      doc.update(meta);
      json results = json::array();
      for (std::size_t k = 0; k < picked.size(); ++k) {
        results.push_back({{"label", labels.label(picked[k])}, {"rank", k + 1}});
      }
      doc["results"] = std::move(results);
      o.out << doc.dump(2) << '\n';
    } else {
      for (std::size_t k = 0; k < picked.size(); ++k) {
        o.out << labels.label(picked[k]) << '\t' << k + 1 << '\n';
      }
    }
  } else if (r.algo == "dag-impact") {
    const auto influence = dag_influence(g);
    const auto order = ranking(influence.impact);
    if (o.is_json()) {
      json doc = {{"schema", kSchema}, {"kind", "rank"}};
      doc.update(meta);
      json results = json::array();
      for (std::size_t k = 0; k < order.size(); ++k) {
        results.push_back({{"label", labels.label(order[k])},
                           {"impact", influence.impact[order[k]]},
                           {"progeny", influence.progeny[order[k]]},
                           {"rank", k + 1}});
      }
      doc["results"] = std::move(results);
      o.out << doc.dump(2) << '\n';
    } else {
      o.out << "node\timpact\tprogeny\n";
      for (NodeId v : order) {
        o.out << labels.label(v) << '\t' << format_double(influence.impact[v]) << '\t'
              << influence.progeny[v] << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------- centrality

struct CentralityOptions {
  GraphOptions graph;
  std::vector<std::string> measures{"degree"};
  std::string normalize = "mean-one";
  std::optional<std::uint64_t> seed;
  std::uint64_t steps = 10'000'000;
  std::optional<std::uint64_t> burn_in;
  std::size_t min_returns = 50;
  std::string conversion = "inverse-deviation";
  bool exclude_endpoints = false;
  double alpha = 0.85;
};

void run_centrality(const CentralityOptions& c, const Output& o, std::ostream& err) {
  // Refuse stochastic runs without a seed before doing any work.
  const bool stochastic = std::find(c.measures.begin(), c.measures.end(), "second-order") !=
                          c.measures.end();
  if (stochastic && !c.seed) throw DomainError("second-order centrality needs --seed");

  const auto g = c.graph.load(err);
  const auto norm = parse_normalization(c.normalize);
  std::vector<ScoreVector> columns;
  for (const auto& m : c.measures) {
    ScoreVector s;
    if (m == "degree") {
      s = degree_centrality(g);
    } else if (m == "betweenness") {
      s = shortest_path_betweenness(g, !c.exclude_endpoints);
    } else if (m == "rw-betweenness") {
      s = random_walk_betweenness(g);
    } else if (m == "second-order") {
      SecondOrderParams p;
      p.rng_seed = c.seed;
      p.walk_steps = c.steps;
      p.burn_in = c.burn_in;
      p.min_returns = c.min_returns;
      p.conversion = parse_return_time_conversion(c.conversion);
      s = second_order_centrality(g, p);
    } else if (m == "eigenvector") {
      s = eigenvector_centrality(g);
    } else if (m == "pagerank") {
      PageRankParams p;
      p.alpha = c.alpha;
      s = pagerank(build_transition(g, parse_dangling_policy(c.graph.dangling)), p);
    }
    columns.push_back(s.renormalized(norm));
  }

  const auto& labels = g.labels();
  if (o.is_json()) {
    json doc = {{"schema", kSchema}, {"kind", "centrality"}, {"normalization", c.normalize}};
    json rows = json::array();
    for (NodeId v = 0; v < g.node_count(); ++v) {
      json row = {{"label", labels.label(v)}};
      for (std::size_t k = 0; k < columns.size(); ++k) row[c.measures[k]] = columns[k][v];
      rows.push_back(std::move(row));
    }
    doc["results"] = std::move(rows);
    o.out << doc.dump(2) << '\n';
    return;
  }
  o.out << "node";
  for (const auto& m : c.measures) o.out << '\t' << m;
  o.out << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    o.out << labels.label(v);
    for (const auto& col : columns) o.out << '\t' << format_double(col[v]);
    o.out << '\n';
  }
}

// ---------------------------------------------------------------- similar

struct SimilarOptions {
  std::string path;
  bool undirected = false;
  std::string kind = "commute";
  std::string node;
  std::size_t top = 10;
  std::size_t steps = 3;
  double alpha = 0.5;
  std::string side = "users";
};

void run_similar(const SimilarOptions& s, const Output& o, std::ostream& err) {
  const auto kind = parse_similarity_kind(s.kind);
  std::vector<double> row;
  const LabelIndex* labels = nullptr;
  std::optional<DirectedGraph> g;
  std::optional<BipartiteGraph> b;
  NodeId node = 0;
  if (kind == SimilarityKind::pearson || kind == SimilarityKind::cosine) {
    b = read_bipartite(s.path, [&err](const std::string& m) { err << "warning: " << m << '\n'; });
    const auto side = s.side == "items" ? BipartiteSide::items : BipartiteSide::users;
    labels = side == BipartiteSide::items ? &b->item_labels() : &b->user_labels();
    node = labels->at(s.node);
    const auto m = kind == SimilarityKind::pearson ? pearson_similarity(*b, side)
                                                   : cosine_similarity(*b, side);
    const auto r = m.values.row(static_cast<Eigen::Index>(node));
    row.assign(r.begin(), r.end());
  } else {
    GraphOptions go{s.path, s.undirected, "uniform"};
    g = go.load(err);
    labels = &g->labels();
    node = labels->at(s.node);
    switch (kind) {
      case SimilarityKind::lrw: row = lrw_row(*g, node, s.steps); break;
      case SimilarityKind::srw: row = srw_row(*g, node, s.steps); break;
      case SimilarityKind::regularized: {
        const auto m = regularized_similarity(build_transition(*g), s.alpha);
        const auto r = m.values.row(static_cast<Eigen::Index>(node));
        row.assign(r.begin(), r.end());
        break;
      }
      default: {
        auto m = commute_time(*g);
        if (kind == SimilarityKind::ectd) m = ectd(m);
        const auto r = m.values.row(static_cast<Eigen::Index>(node));
        row.assign(r.begin(), r.end());
        break;
      }
    }
  }
  const bool distance = kind == SimilarityKind::commute_time || kind == SimilarityKind::ectd;
  std::vector<double> key(row);
  if (distance) {  // smaller is closer
    for (double& k : key) k = -k;
  }
  std::vector<NodeId> order;
  for (NodeId v : ranking(key)) {
    if (v != node) order.push_back(v);
  }
  if (order.size() > s.top) order.resize(s.top);
  if (o.is_json()) {
    json doc = {{"schema", kSchema}, {"kind", "similar"}, {"measure", s.kind},
                {"node", s.node}, {"distance", distance}};
    json results = json::array();
    for (std::size_t k = 0; k < order.size(); ++k) {
      results.push_back({{"label", labels->label(order[k])}, {"score", row[order[k]]},
                         {"rank", k + 1}});
    }
    doc["results"] = std::move(results);
    o.out << doc.dump(2) << '\n';
    return;
  }
  for (NodeId v : order) o.out << labels->label(v) << '\t' << format_double(row[v]) << '\n';
}

// ---------------------------------------------------------------- recommend

struct RecommendOptions {
  std::string path;
  std::string method = "hybrid";
  double lambda = 0.5;
  double theta = 0.0;
  std::string user;
  std::size_t top = 10;
  std::string similarity = "pearson";
  std::vector<std::string> liked;
  std::vector<std::string> disliked;
  bool undirected = false;
};

void emit_list(const Output& o, const RecommendationList& list, const LabelIndex& items,
               json meta) {
  if (o.is_json()) {
    json doc = {{"schema", kSchema}, {"kind", "recommend"}};
    doc.update(meta);
    json results = json::array();
    for (std::size_t k = 0; k < list.items.size(); ++k) {
      results.push_back({{"label", items.label(list.items[k].first)},
                         {"score", list.items[k].second}, {"rank", k + 1}});
    }
    doc["results"] = std::move(results);
    json excluded = json::array();
    for (NodeId a : list.excluded) excluded.push_back(items.label(a));
    doc["excluded"] = std::move(excluded);
    o.out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [a, score] : list.items) o.out << items.label(a) << '\t' << format_double(score) << '\n';
}

void run_recommend(const RecommendOptions& r, const Output& o, std::ostream& err) {
  const auto warn = [&err](const std::string& m) { err << "warning: " << m << '\n'; };
  json meta = {{"method", r.method}};
  if (r.method == "temperature") {
    if (r.liked.empty()) throw DomainError("temperature recommendation needs --liked");
    ParseOptions options{r.undirected, warn};
    const auto g = read_directed_graph(r.path, options);
    const auto list = temperature_recommend(g, parse_label_list(r.liked, g.labels()),
                                            parse_label_list(r.disliked, g.labels()));
    RecommendationList shown = list;
    if (shown.items.size() > r.top) shown.items.resize(r.top);
    emit_list(o, shown, g.labels(), meta);
    return;
  }
  if (r.user.empty()) throw DomainError("--user is required for method " + r.method);
  const auto b = read_bipartite(r.path, warn);
  const NodeId user = b.user_labels().at(r.user);
  meta["user"] = r.user;
  const auto collected = b.items_of(user);
  const std::set<NodeId> exclude(collected.begin(), collected.end());

  ScoreVector scores;
  if (r.method == "probs") {
    meta["theta"] = r.theta;
    scores = probs_scores(b, user, r.theta);
  } else if (r.method == "heats") {
    scores = heats_scores(b, user);
  } else if (r.method == "hybrid") {
    meta["lambda"] = r.lambda;
    meta["theta"] = r.theta;
    scores = hybrid_scores(b, user, {r.lambda, r.theta});
  } else {  // cf
    meta["similarity"] = r.similarity;
    const auto s = r.similarity == "cosine" ? cosine_similarity(b) : pearson_similarity(b);
    const auto mu = b.mean_rating(user);
    if (!mu) throw ColdStartError(user);
    std::vector<double> predicted(b.item_count(), 0.0);
    std::set<NodeId> skip = exclude;
    for (NodeId a = 0; a < b.item_count(); ++a) {
      if (exclude.count(a)) continue;
      const auto p = predict_rating(b, s, user, a);
      if (p) {
        predicted[a] = *p;
      } else {
        skip.insert(a);
      }
    }
    auto list = top_n(ScoreVector(std::move(predicted), Normalization::raw), skip, r.top, user);
    list.excluded = exclude;
    emit_list(o, list, b.item_labels(), meta);
    return;
  }
  emit_list(o, top_n(scores, exclude, r.top, user), b.item_labels(), meta);
}

// ---------------------------------------------------------------- absorb

struct AbsorbOptions {
  GraphOptions graph;
  std::string sinks;
  std::string boundary;
  std::string semantics = "sink";
  std::string output = "probabilities";
};

void write_matrix(const Output& o, std::string_view kind, const Eigen::MatrixXd& m,
                  const std::vector<NodeId>& rows, const std::vector<NodeId>& cols,
                  const LabelIndex& labels) {
  if (o.is_json()) {
    json doc = {{"schema", kSchema}, {"kind", kind}};
    json row_labels = json::array(), col_labels = json::array(), values = json::array();
    for (NodeId r : rows) row_labels.push_back(labels.label(r));
    for (NodeId c : cols) col_labels.push_back(labels.label(c));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      values.push_back(std::move(row));
    }
    doc["rows"] = std::move(row_labels);
    doc["columns"] = std::move(col_labels);
    doc["values"] = std::move(values);
    o.out << doc.dump(2) << '\n';
    return;
  }
  o.out << "node";
  for (NodeId c : cols) o.out << '\t' << labels.label(c);
  o.out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    o.out << labels.label(rows[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < m.cols(); ++j) o.out << '\t' << format_double(m(i, j));
    o.out << '\n';
  }
}

void run_absorb(const AbsorbOptions& a, const Output& o, std::ostream& err) {
  const auto g = a.graph.load(err);
  const auto& labels = g.labels();
  if (a.sinks.empty() == a.boundary.empty()) {
    throw DomainError("give exactly one of --sinks and --boundary");
  }
  if (!a.boundary.empty()) {
    const auto boundary = read_label_values(a.boundary, labels);
    const auto t = heat_equilibrium(g, boundary);
    if (o.is_json()) {
      json doc = {{"schema", kSchema}, {"kind", "temperature"}};
      json results = json::array();
      for (NodeId v = 0; v < g.node_count(); ++v) {
        results.push_back({{"label", labels.label(v)}, {"temperature", t[v]},
                           {"fixed", boundary.count(v) > 0}});
      }
      doc["results"] = std::move(results);
      o.out << doc.dump(2) << '\n';
    } else {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        o.out << labels.label(v) << '\t' << format_double(t[v]) << '\n';
      }
    }
    return;
  }
  const auto semantics =
      a.semantics == "source" ? BoundarySemantics::source : BoundarySemantics::sink;
  const auto p = partition(build_transition(g, parse_dangling_policy(a.graph.dangling)),
                           read_label_set(a.sinks, labels), semantics);
  if (a.output == "visits-from-sources") {
    write_matrix(o, "visits-from-sources", expected_visits_from_sources(p), p.absorbing,
                 p.transient, labels);
  } else if (a.output == "visits") {
    write_matrix(o, "visits", fundamental_matrix(p).visits, p.transient, p.transient, labels);
  } else if (a.output == "times") {
    const auto times = absorption_times(p);
    const Eigen::MatrixXd column =
        Eigen::Map<const Eigen::VectorXd>(times.data(), static_cast<Eigen::Index>(times.size()));
    if (o.is_json()) {
      write_matrix(o, "absorption-time", column, p.transient, {}, labels);
    } else {
      o.out << "node\tabsorption_time\n";
      for (std::size_t i = 0; i < times.size(); ++i) {
        o.out << labels.label(p.transient[i]) << '\t' << format_double(times[i]) << '\n';
      }
    }
  } else {
    write_matrix(o, "absorption-probabilities", absorption_probabilities(p), p.transient,
                 p.absorbing, labels);
  }
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string path;
  std::string method = "hybrid";
  double lambda = 0.5;
  double theta = 0.0;
  double probe = 0.1;
  std::optional<std::uint64_t> seed;
  std::size_t top = 20;
};

void run_evaluate(const EvaluateOptions& e, const Output& o, std::ostream& err) {
  if (!e.seed) throw DomainError("evaluate needs --seed");
  const auto b = read_bipartite(e.path, [&err](const std::string& m) { err << "warning: " << m << '\n'; });
  Scorer scorer;
  if (e.method == "probs") {
    scorer = [theta = e.theta](const BipartiteGraph& train, NodeId u) {
      const auto s = probs_scores(train, u, theta);
      return std::vector<double>(s.begin(), s.end());
    };
  } else if (e.method == "heats") {
    scorer = [](const BipartiteGraph& train, NodeId u) {
      const auto s = heats_scores(train, u);
      return std::vector<double>(s.begin(), s.end());
    };
  } else {
    const HybridParams params{e.lambda, e.theta};
    params.validate();
    scorer = [params](const BipartiteGraph& train, NodeId u) {
      const auto s = hybrid_scores(train, u, params);
      return std::vector<double>(s.begin(), s.end());
    };
  }
  EvaluationConfig config;
  config.probe_fraction = e.probe;
  config.seed = e.seed;
  config.list_length = e.top;
  const auto m = evaluate(b, scorer, config);
  json doc = {{"schema", kSchema},
              {"kind", "evaluation"},
              {"method", e.method},
              {"probe_fraction", e.probe},
              {"seed", *e.seed},
              {"list_length", e.top},
              {"metrics",
               {{"recovery", m.recovery},
                {"precision", m.precision},
                {"diversity", m.diversity},
                {"mean_recommended_degree", m.mean_recommended_degree}}},
              {"evaluated_users", m.evaluated_users},
              {"skipped_users", m.skipped_users},
              {"probe_links", m.probe_links}};
  if (e.method == "hybrid") {
    doc["lambda"] = e.lambda;
    doc["theta"] = e.theta;
  }
  if (e.method == "probs") doc["theta"] = e.theta;
  if (o.is_json()) {
    o.out << doc.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : doc["metrics"].items()) {
      o.out << key << '\t' << format_double(value.get<double>()) << '\n';
    }
    o.out << "evaluated_users\t" << m.evaluated_users << '\n'
          << "skipped_users\t" << m.skipped_users << '\n'
          << "probe_links\t" << m.probe_links << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-walk ranking, centrality, similarity and recommendation on graphs",
               "walkrank"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t threads = 0;
  std::string format;
  app.add_option("--threads", threads, "Worker threads (default 1)")
      ->envname("WALKRANK_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "json"}));

  RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "Score nodes");
  add_graph_options(rank_cmd, rank.graph);
  rank_cmd->add_option("--algo", rank.algo)
      ->check(CLI::IsMember({"pagerank", "pagerank-direct", "totalrank", "hits", "eigenvector",
                             "citerank", "eigentrust", "ground", "diverse", "dag-impact"}));
  rank_cmd->add_option("--alpha", rank.alpha, "Damping factor")->check(CLI::Range(0.0, 1.0));
  rank_cmd->add_option("--tolerance", rank.tolerance)->check(CLI::PositiveNumber);
  rank_cmd->add_option("--max-iter", rank.max_iterations)->check(CLI::PositiveNumber);
  rank_cmd->add_option("--teleport", rank.teleport, "label<TAB>weight teleport file")
      ->check(CLI::ExistingFile);
  rank_cmd->add_option("--ages", rank.ages, "label<TAB>age file (citerank)")
      ->check(CLI::ExistingFile);
  rank_cmd->add_option("--tau", rank.tau, "Age decay time (citerank)");
  rank_cmd->add_option("--trusted", rank.trusted, "Trusted labels, one per line (eigentrust)")
      ->check(CLI::ExistingFile);
  rank_cmd->add_option("--length", rank.length, "List length (diverse)");
  rank_cmd->add_option("--quadrature", rank.quadrature, "Quadrature points (totalrank)");
  rank_cmd->add_option("--vector", rank.hits_vector, "HITS vector to print")
      ->check(CLI::IsMember({"authority", "hub"}));

  CentralityOptions centrality;
  auto* centrality_cmd = app.add_subcommand("centrality", "Table of centrality measures");
  add_graph_options(centrality_cmd, centrality.graph);
  centrality_cmd->add_option("--measure", centrality.measures, "One or more measures")
      ->check(CLI::IsMember({"degree", "betweenness", "rw-betweenness", "second-order",
                             "eigenvector", "pagerank"}))
      ->delimiter(',');
  centrality_cmd->add_option("--normalize", centrality.normalize)
      ->check(CLI::IsMember({"mean-one", "sum-one", "max-one", "raw"}));
  centrality_cmd->add_option("--seed", centrality.seed, "Seed for second-order walks");
  centrality_cmd->add_option("--steps", centrality.steps, "Second-order walk length");
  centrality_cmd->add_option("--burn-in", centrality.burn_in, "Second-order burn-in (default 10 N)");
  centrality_cmd->add_option("--min-returns", centrality.min_returns);
  centrality_cmd->add_option("--conversion", centrality.conversion,
                             "Return-time spread to centrality")
      ->check(CLI::IsMember({"inverse-deviation", "inverse-variance"}));
  centrality_cmd->add_flag("--exclude-endpoints", centrality.exclude_endpoints,
                           "Conventional betweenness without path ends");
  centrality_cmd->add_option("--alpha", centrality.alpha)->check(CLI::Range(0.0, 1.0));

  SimilarOptions similar;
  auto* similar_cmd = app.add_subcommand("similar", "Most similar nodes to one node");
  similar_cmd->add_option("input", similar.path, "Edge list, or ratings for pearson/cosine")
      ->required()
      ->check(CLI::ExistingFile);
  similar_cmd->add_flag("--undirected", similar.undirected);
  similar_cmd->add_option("--kind", similar.kind)
      ->check(CLI::IsMember({"commute", "ectd", "lrw", "srw", "regularized", "pearson", "cosine"}));
  similar_cmd->add_option("--node", similar.node)->required();
  similar_cmd->add_option("--top", similar.top)->check(CLI::PositiveNumber);
  similar_cmd->add_option("--steps", similar.steps, "Walk length (lrw, srw)")
      ->check(CLI::PositiveNumber);
  similar_cmd->add_option("--alpha", similar.alpha, "Regularization in [0, 1)");
  similar_cmd->add_option("--side", similar.side)->check(CLI::IsMember({"users", "items"}));

  RecommendOptions recommend;
  auto* recommend_cmd = app.add_subcommand("recommend", "Recommend items to a user");
  recommend_cmd->add_option("input", recommend.path, "Ratings, or item graph for temperature")
      ->required()
      ->check(CLI::ExistingFile);
  recommend_cmd->add_option("--method", recommend.method)
      ->check(CLI::IsMember({"probs", "heats", "hybrid", "cf", "temperature"}));
  recommend_cmd->add_option("--lambda", recommend.lambda)->check(CLI::Range(0.0, 1.0));
  recommend_cmd->add_option("--theta", recommend.theta);
  recommend_cmd->add_option("--user", recommend.user);
  recommend_cmd->add_option("--top", recommend.top)->check(CLI::PositiveNumber);
  recommend_cmd->add_option("--similarity", recommend.similarity)
      ->check(CLI::IsMember({"pearson", "cosine"}));
  recommend_cmd->add_option("--liked", recommend.liked)->delimiter(',');
  recommend_cmd->add_option("--disliked", recommend.disliked)->delimiter(',');
  recommend_cmd->add_flag("--undirected", recommend.undirected);

  AbsorbOptions absorb;
  auto* absorb_cmd = app.add_subcommand("absorb", "Absorbing walks and heat equilibrium");
  add_graph_options(absorb_cmd, absorb.graph);
  absorb_cmd->add_option("--sinks", absorb.sinks, "Absorbing labels, one per line")
      ->check(CLI::ExistingFile);
  absorb_cmd->add_option("--boundary", absorb.boundary, "label<TAB>temperature file")
      ->check(CLI::ExistingFile);
  absorb_cmd->add_option("--semantics", absorb.semantics)
      ->check(CLI::IsMember({"sink", "source"}));
  absorb_cmd->add_option("--output", absorb.output)
      ->check(CLI::IsMember({"probabilities", "visits", "times", "visits-from-sources"}));

  EvaluateOptions evaluation;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Leave-probe-out recommender metrics");
  evaluate_cmd->add_option("input", evaluation.path, "Ratings file")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--method", evaluation.method)
      ->check(CLI::IsMember({"probs", "heats", "hybrid"}));
  evaluate_cmd->add_option("--lambda", evaluation.lambda)->check(CLI::Range(0.0, 1.0));
  evaluate_cmd->add_option("--theta", evaluation.theta);
  evaluate_cmd->add_option("--probe", evaluation.probe)->check(CLI::Range(0.0, 1.0));
  evaluate_cmd->add_option("--seed", evaluation.seed);
  evaluate_cmd->add_option("--top", evaluation.top)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "walkrank: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  if (threads > 0) set_thread_count(threads);
  const bool json_default = recommend_cmd->parsed() || evaluate_cmd->parsed();
  const Output o{format.empty() ? (json_default ? "json" : "tsv") : format, out};
  // Buffer stdout so a failing run prints nothing but diagnostics.
  std::ostringstream buffer;
  const Output buffered{o.format, buffer};
  try {
    if (rank_cmd->parsed()) run_rank(rank, buffered, err);
    if (centrality_cmd->parsed()) run_centrality(centrality, buffered, err);
    if (similar_cmd->parsed()) run_similar(similar, buffered, err);
    if (recommend_cmd->parsed()) run_recommend(recommend, buffered, err);
    if (absorb_cmd->parsed()) run_absorb(absorb, buffered, err);
    if (evaluate_cmd->parsed()) run_evaluate(evaluation, buffered, err);
  } catch (const ParseError& e) {
    err << "walkrank: parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "walkrank: " << e.what() << '\n';
    return e.kind() == Error::Kind::numerical ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "walkrank: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  out << buffer.str();
  return kExitOk;
}

}  // namespace walkrank::cli
