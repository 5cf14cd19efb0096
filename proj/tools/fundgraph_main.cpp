#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fundgraph/analytics.hpp"
#include "fundgraph/centrality.hpp"
#include "fundgraph/communities.hpp"
#include "fundgraph/email.hpp"
#include "fundgraph/errors.hpp"
#include "fundgraph/files.hpp"
#include "fundgraph/graph.hpp"
#include "fundgraph/intro_paths.hpp"
#include "fundgraph/investor_search.hpp"
#include "fundgraph/rank_eval.hpp"
#include "fundgraph/ranking.hpp"
#include "fundgraph/synth.hpp"
#include "fundgraph/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fundgraph;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string config_dir() {
  const char* dir = std::getenv("FUNDGRAPH_CONFIG_DIR");
  return dir ? dir : "";
}

std::string manifest_log_path() {
  const char* explicit_log = std::getenv("FUNDGRAPH_RUN_LOG");
  if (explicit_log) return explicit_log;
  const std::string dir = config_dir();
  if (!dir.empty()) return (fs::path(dir) / "runs.log").string();
  return "fundgraph_runs.log";
}

struct ManifestScope {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ~ManifestScope() {
    try {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      json j;
      j["subcommand"] = subcommand;
      j["inputs"] = inputs;
      char hash[32];
      std::snprintf(hash, sizeof(hash), "%016llx",
                    static_cast<unsigned long long>(config_hash));
      j["config_hash"] = hash;
      j["seed"] = seed;
      j["version"] = kVersion;
      j["duration_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
      append_line(manifest_log_path(), j.dump());
    } catch (...) {
      // manifest logging must never break a run
    }
  }
};

// --- ingest configuration ---------------------------------------------------

json bulk_config_to_json(const BulkRuleConfig& c) {
  json j;
  j["max_recipients"] = c.max_recipients;
  // order-insensitive lists are sorted so the config hash is stable under
  // semantically-identical configs
  std::vector<std::string> phrases = c.bulk_phrases;
  std::sort(phrases.begin(), phrases.end());
  j["bulk_phrases"] = phrases;
  j["listserv_headers"] = c.listserv_headers;
  j["bulk_return_path_domains"] = c.bulk_return_path_domains;
  j["automated_local_parts"] = c.automated_local_parts;
  std::vector<std::string> aliases = c.sender_name_aliases;
  std::sort(aliases.begin(), aliases.end());
  j["sender_name_aliases"] = aliases;
  j["transactional_domains"] = c.transactional_domains;
  return j;
}

json stage_config_to_json(const StageRuleConfig& c) {
  json rules = json::array();
  for (const StageRule& r : c.rules) {
    rules.push_back({{"direction", r.direction == Direction::Incoming ? "incoming" : "outgoing"},
                     {"phrase", r.phrase},
                     {"stage", to_string(r.stage)}});
  }
  return rules;
}

IngestConfig load_ingest_config(const std::string& path) {
  IngestConfig config;
  if (path.empty()) return config;
  const json j = json::parse(read_file(path));
  if (j.contains("bulk")) {
    const json& b = j.at("bulk");
    BulkRuleConfig& c = config.bulk;
    if (b.contains("max_recipients")) c.max_recipients = b.at("max_recipients").get<std::size_t>();
    if (b.contains("bulk_phrases")) c.bulk_phrases = b.at("bulk_phrases").get<std::vector<std::string>>();
    if (b.contains("listserv_headers")) c.listserv_headers = b.at("listserv_headers").get<std::set<std::string>>();
    if (b.contains("bulk_return_path_domains")) c.bulk_return_path_domains = b.at("bulk_return_path_domains").get<std::set<std::string>>();
    if (b.contains("automated_local_parts")) c.automated_local_parts = b.at("automated_local_parts").get<std::set<std::string>>();
    if (b.contains("sender_name_aliases")) c.sender_name_aliases = b.at("sender_name_aliases").get<std::vector<std::string>>();
    if (b.contains("transactional_domains")) c.transactional_domains = b.at("transactional_domains").get<std::set<std::string>>();
  }
  if (j.contains("stage_rules")) {
    config.stages.rules.clear();
    for (const json& r : j.at("stage_rules")) {
      StageRule rule;
      rule.direction = r.at("direction").get<std::string>() == "incoming" ? Direction::Incoming
                                                                          : Direction::Outgoing;
      rule.phrase = r.at("phrase").get<std::string>();
      const auto stage = parse_stage(r.at("stage").get<std::string>());
      if (!stage) throw InvalidInput("config: unknown stage " + r.at("stage").get<std::string>());
      rule.stage = *stage;
      config.stages.rules.push_back(std::move(rule));
    }
  }
  return config;
}

std::uint64_t ingest_config_hash(const IngestConfig& config) {
  json j;
  j["bulk"] = bulk_config_to_json(config.bulk);
  j["stage_rules"] = stage_config_to_json(config.stages);
  j["targets"] = config.target_investors;
  return fnv1a64(j.dump());
}

// --- ingest state directory --------------------------------------------------

IngestState load_state(const std::string& dir) {
  IngestState state;
  if (dir.empty() || !fs::exists(dir)) return state;
  const fs::path base(dir);
  if (fs::exists(base / "seen.txt")) {
    for (const std::string& line : split(read_file((base / "seen.txt").string()), '\n')) {
      if (!trim(line).empty()) state.seen_message_ids.insert(trim(line));
    }
  }
  if (fs::exists(base / "cursor.txt")) {
    state.history_cursor = trim(read_file((base / "cursor.txt").string()));
  }
  if (fs::exists(base / "stages.tsv")) {
    for (const std::string& line : split(read_file((base / "stages.tsv").string()), '\n')) {
      if (trim(line).empty()) continue;
      const std::vector<std::string> cols = split(line, '\t');
      if (cols.size() != 2) throw InvalidInput("state stages.tsv: bad line");
      const auto stage = parse_stage(cols[1]);
      if (!stage) throw InvalidInput("state stages.tsv: unknown stage " + cols[1]);
      state.conversation_stages[cols[0]] = *stage;
    }
  }
  return state;
}

void save_state(const std::string& dir, const IngestState& state) {
  const fs::path base(dir);
  fs::create_directories(base);
  std::ostringstream seen;
  for (const std::string& id : state.seen_message_ids) seen << id << '\n';
  atomic_write_file((base / "seen.txt").string(), seen.str());
  atomic_write_file((base / "cursor.txt").string(), state.history_cursor + "\n");
  std::ostringstream stages;
  for (const auto& [addr, stage] : state.conversation_stages) {
    stages << addr << '\t' << to_string(stage) << '\n';
  }
  atomic_write_file((base / "stages.tsv").string(), stages.str());
}

// --- helpers ------------------------------------------------------------------

CommGraph load_graph(const std::string& path) {
  return load_snapshot(read_file(path));
}

std::map<NodeId, MetricVector> scaled_metric_map(const std::vector<NodeMetrics>& metrics) {
  std::map<NodeId, MetricVector> out;
  for (const NodeMetrics& m : metrics) out[m.node_id] = m.scaled();
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (const std::string& part : split(csv, ',')) {
    if (trim(part).empty()) continue;
    out.push_back(std::stoi(trim(part)));
  }
  return out;
}

[[noreturn]] void fail_domain(const DomainError& e) {
  std::cerr << "error: " << e.kind() << ": " << e.what() << std::endl;
  std::exit(1);
}

}  // namespace

// --- subcommands ----------------------------------------------------------------

namespace {

int cmd_ingest(const std::string& events_path, const std::string& founder,
               const std::string& state_dir, const std::string& out_path,
               const std::string& targets_path, const std::string& config_path,
               const std::string& updates_path, std::int64_t since, std::int64_t until,
               ManifestScope& manifest) {
  IngestConfig config = load_ingest_config(config_path);
  if (!targets_path.empty()) {
    for (const std::string& line : split(read_file(targets_path), '\n')) {
      if (!trim(line).empty()) config.target_investors.insert(normalize_address(line));
    }
  }
  manifest.config_hash = ingest_config_hash(config);

  std::vector<std::pair<std::size_t, std::string>> parse_errors;
  std::vector<EmailEvent> events = parse_events_jsonl(read_file(events_path), &parse_errors);
  // ingest-window filter, e.g. restricting the graph to the last five years
  std::erase_if(events, [&](const EmailEvent& e) {
    return e.timestamp < since || e.timestamp > until;
  });
  std::stable_sort(events.begin(), events.end(),
                   [](const EmailEvent& a, const EmailEvent& b) {
                     return a.timestamp < b.timestamp;
                   });

  IngestState state = load_state(state_dir);
  IngestResult result = ingest_events(events, normalize_address(founder), state, config);
  result.stats.malformed += parse_errors.size();
  for (const auto& [line, reason] : parse_errors) {
    result.stats.malformed_reports.emplace_back(line, "parse: " + reason);
  }

  if (!state_dir.empty()) save_state(state_dir, state);
  atomic_write_file(out_path, save_delta(result.delta));
  if (!updates_path.empty()) {
    std::ostringstream updates;
    updates << "investor\tstage\tmessage_id\ttimestamp\n";
    for (const ConversationUpdate& u : result.updates) {
      updates << u.investor_addr << '\t' << to_string(u.stage) << '\t' << u.message_id
              << '\t' << u.timestamp << '\n';
    }
    atomic_write_file(updates_path, updates.str());
  }

  json stats;
  stats["ingested"] = result.stats.ingested;
  stats["skipped_bulk"] = result.stats.skipped_bulk;
  stats["skipped_dup"] = result.stats.skipped_dup;
  stats["malformed"] = result.stats.malformed;
  std::cout << stats.dump() << std::endl;
  for (const auto& [index, reason] : result.stats.malformed_reports) {
    std::cerr << "malformed record " << index << ": " << reason << std::endl;
  }
  return 0;
}

int cmd_build(const std::vector<std::string>& delta_paths, const std::string& base_path,
              const std::string& labels_path, const std::string& investments_path,
              const std::string& cofoundings_path, const std::string& coinvestings_path,
              const std::string& identity_path, bool keep_orphans, double degree_cutoff,
              const std::string& out_path) {
  CommGraph graph;
  if (!base_path.empty()) graph = load_graph(base_path);
  if (!delta_paths.empty()) {
    GraphDelta combined;
    for (const std::string& path : delta_paths) combined.merge(load_delta(read_file(path)));
    graph = apply_delta(graph, combined);
  }

  if (!investments_path.empty() || !cofoundings_path.empty() || !coinvestings_path.empty()) {
    const std::vector<Investment> investments =
        investments_path.empty() ? std::vector<Investment>{}
                                 : files::read_investments_csv(read_file(investments_path));
    const std::vector<CoFounding> cofoundings =
        cofoundings_path.empty() ? std::vector<CoFounding>{}
                                 : files::read_cofoundings_csv(read_file(cofoundings_path));
    const std::vector<CoInvesting> coinvestings =
        coinvestings_path.empty() ? std::vector<CoInvesting>{}
                                  : files::read_coinvestings_csv(read_file(coinvestings_path));
    const CommGraph funding = build_funding_graph(investments, cofoundings, coinvestings);
    const std::map<NodeId, NodeId> identity =
        identity_path.empty() ? std::map<NodeId, NodeId>{}
                              : files::read_identity_csv(read_file(identity_path));
    if (graph.node_count() == 0 && identity.empty()) {
      graph = funding;
    } else {
      graph = overlay(graph, funding, identity);
    }
  }

  if (!labels_path.empty()) {
    for (const auto& [node, flags] : files::read_labels_csv(read_file(labels_path))) {
      graph.add_node(node, flags);
    }
  }
  if (degree_cutoff > 0) graph = remove_degree_outliers(graph, degree_cutoff);
  if (!keep_orphans) graph = remove_orphans(graph);

  atomic_write_file(out_path, save_snapshot(graph));
  std::cout << "nodes " << graph.node_count() << " edges " << graph.edge_count()
            << " total_weight " << graph.total_weight() << std::endl;
  return 0;
}

int cmd_metrics(const std::string& graph_path, const std::string& out_path,
                double damping, double tol, int max_iter) {
  const CommGraph graph = load_graph(graph_path);
  PageRankOptions opts;
  opts.damping = damping;
  opts.tolerance = tol;
  opts.max_iterations = max_iter;
  const std::vector<NodeMetrics> metrics = compute_metrics(graph, opts);
  atomic_write_file(out_path, files::write_metrics(metrics));
  std::cout << "metrics for " << metrics.size() << " nodes" << std::endl;
  return 0;
}

int cmd_communities(const std::string& graph_path, std::uint64_t seed,
                    const std::string& method, int max_iter, std::size_t top_k,
                    const std::string& out_path) {
  const CommGraph graph = load_graph(graph_path);
  Partition partition;
  if (method == "lpa") {
    partition = label_propagation(graph, seed, max_iter);
  } else if (method == "louvain") {
    partition = louvain(graph, seed);
  } else {
    throw CLI::ValidationError("--method must be lpa or louvain");
  }
  atomic_write_file(out_path, files::write_partition(partition));

  const CommunityStats stats = community_stats(partition, graph, top_k);
  std::cout << "communities " << stats.community_count << '\n';
  std::cout << "mean_founders " << format_double(stats.mean_founders_per_community) << '\n';
  for (const auto& [community, founders] : stats.top_by_founders) {
    std::cout << "top " << community << " founders " << founders << '\n';
  }
  return 0;
}

BaselineWeights read_weights_file(const std::string& path) {
  BaselineWeights weights;
  for (const std::string& line : split(read_file(path), '\n')) {
    if (trim(line).empty() || trim(line).starts_with("#")) continue;
    const std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2) throw InvalidInput("weights file: expected 'metric<TAB>weight'");
    try {
      weights.entries.emplace_back(trim(cols[0]), std::stod(cols[1]));
    } catch (const std::exception&) {
      throw InvalidInput("weights file: bad weight '" + cols[1] + "'");
    }
  }
  if (weights.entries.empty()) throw InvalidInput("weights file: no entries");
  return weights;
}

int cmd_rank(const std::string& method, const std::string& graph_path,
             const std::string& profiles_path, const std::string& metrics_path,
             const std::string& weights_path, std::uint64_t seed,
             const std::string& out_path) {
  Ranking ranking;

  const auto need = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidInput("rank: " + what);
  };
  const auto founder_metric_rows = [&](const std::vector<NodeId>& founders) {
    std::vector<NodeMetrics> metrics;
    if (!metrics_path.empty()) {
      metrics = files::read_metrics(read_file(metrics_path));
    } else {
      need(!graph_path.empty(), "nfr/wfr need --metrics or --graph");
      metrics = compute_metrics(load_graph(graph_path));
    }
    const std::map<NodeId, MetricVector> scaled = scaled_metric_map(metrics);
    std::vector<MetricVector> rows;
    for (const NodeId& f : founders) {
      auto it = scaled.find(f);
      if (it == scaled.end()) throw UnknownNode("no metrics for founder " + f);
      rows.push_back(it->second);
    }
    return rows;
  };

  if (method == "baseline" || method == "fri-baseline") {
    need(!profiles_path.empty(), method + " needs --profiles");
    const std::vector<FounderProfile> profiles =
        files::read_profiles_jsonl(read_file(profiles_path));
    const BaselineWeights weights =
        !weights_path.empty() ? read_weights_file(weights_path)
        : method == "baseline" ? BaselineWeights::email_defaults()
                               : BaselineWeights::fri_defaults();
    ranking = baseline_rank(profiles, weights).ranking;
  } else if (method == "random") {
    std::vector<NodeId> founders;
    if (!profiles_path.empty()) {
      for (const FounderProfile& p : files::read_profiles_jsonl(read_file(profiles_path))) {
        founders.push_back(p.founder_id);
      }
    } else {
      need(!graph_path.empty(), "random needs --profiles or --graph");
      founders = load_graph(graph_path).nodes_with_label(NodeLabel::Founder);
    }
    ranking = random_rank(founders, seed);
  } else if (method == "nfr") {
    need(!graph_path.empty(), "nfr needs --graph for founder labels");
    const std::vector<NodeId> founders = load_graph(graph_path).nodes_with_label(NodeLabel::Founder);
    ranking = nfr_rank(founder_metric_rows(founders));
  } else if (method == "wfr") {
    need(!profiles_path.empty() && !graph_path.empty(), "wfr needs --profiles and --graph");
    const std::vector<FounderProfile> profiles =
        files::read_profiles_jsonl(read_file(profiles_path));
    std::vector<NodeId> founders;
    for (const FounderProfile& p : profiles) founders.push_back(p.founder_id);

    const std::vector<MetricVector> rows = founder_metric_rows(founders);
    std::vector<std::vector<double>> features;
    for (const MetricVector& m : rows) {
      features.push_back({m.pagerank, m.betweenness, m.closeness});
    }
    const BaselineRanking baseline = email_baseline(profiles);
    std::vector<double> target;
    for (const NodeId& f : founders) target.push_back(baseline.ranking.score.at(f));

    const RegressionFit fit =
        wfr_fit(features, target, {"pagerank", "betweenness", "closeness"});
    std::cout << "r_squared " << format_double(fit.r_squared) << std::endl;
    ranking = wfr_rank(fit, features, founders);
  } else {
    throw CLI::ValidationError("--method must be one of baseline|fri-baseline|random|nfr|wfr");
  }

  atomic_write_file(out_path, files::write_ranking(ranking));
  std::cout << "ranked " << ranking.size() << " founders" << std::endl;
  return 0;
}

int cmd_eval(const std::string& candidate_path, const std::string& baseline_path,
             const std::string& p_at, int trials, std::uint64_t seed, bool linear_gain,
             const std::string& out_path) {
  const Ranking candidate = files::read_ranking(read_file(candidate_path));
  const Ranking baseline = files::read_ranking(read_file(baseline_path));
  EvalOptions opts;
  if (!p_at.empty()) opts.precision_cutoffs = parse_int_list(p_at);
  opts.trials = trials;
  opts.seed = seed;
  opts.linear_gain = linear_gain;
  const EvalReport report = evaluate(candidate, baseline, opts);
  const std::string text = files::write_eval_report(report);
  if (!out_path.empty()) atomic_write_file(out_path, text);
  std::cout << text;
  return 0;
}

int cmd_path(const std::string& graph_path, const std::string& from,
             const std::vector<std::string>& to, int max_hops, int k,
             const std::string& out_path) {
  const CommGraph graph = load_graph(graph_path);
  std::vector<NodeId> targets;
  for (const std::string& t : to) {
    for (const std::string& part : split(t, ',')) {
      if (!trim(part).empty()) targets.push_back(normalize_address(part));
    }
  }
  if (targets.empty()) throw InvalidInput("path: no targets given");
  const NodeId founder = normalize_address(from);
  const std::vector<IntroPath> paths =
      targets.size() == 1 ? top_intro_paths(graph, founder, targets[0], max_hops, k)
                          : firm_intro_paths(graph, founder, targets, max_hops, k);

  std::ostringstream out;
  out << "strength\thops\tpath\n";
  for (const IntroPath& p : paths) {
    out << p.total_strength << '\t' << p.hops() << '\t';
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      if (i) out << " -> ";
      out << p.nodes[i];
    }
    out << '\n';
  }
  if (!out_path.empty()) atomic_write_file(out_path, out.str());
  std::cout << out.str();
  if (paths.empty()) std::cout << "(no path within " << max_hops << " hops)" << std::endl;
  return 0;
}

FilterQuery query_from_json(const json& j) {
  FilterQuery q;
  if (j.contains("stages")) {
    for (const auto& s : j.at("stages")) {
      const auto stage = parse_funding_stage(s.get<std::string>());
      if (!stage) throw InvalidInput("query: unknown stage " + s.get<std::string>());
      q.stages.insert(*stage);
    }
  }
  if (j.contains("industries")) q.industries = j.at("industries").get<std::set<std::string>>();
  if (j.contains("industries_and")) q.industries_and = j.at("industries_and").get<bool>();
  if (j.contains("cities")) q.cities = j.at("cities").get<std::set<std::string>>();
  if (j.contains("cities_invested_in")) q.cities_invested_in = j.at("cities_invested_in").get<bool>();
  if (j.contains("related_companies")) q.related_companies = j.at("related_companies").get<std::set<std::string>>();
  if (j.contains("related_similar")) q.related_similar = j.at("related_similar").get<bool>();
  if (j.contains("topics")) q.topics = j.at("topics").get<std::set<std::string>>();
  if (j.contains("us_only")) q.us_only = j.at("us_only").get<bool>();
  if (j.contains("search")) q.search = j.at("search").get<std::string>();
  return q;
}

int cmd_filter(const std::string& catalog_dir, const std::string& query_path,
               const std::string& profile_path, const FilterQuery& flag_query,
               const std::string& sort_column, const std::string& out_path) {
  const Catalog catalog = files::load_catalog(catalog_dir);
  FilterQuery query = flag_query;
  if (!query_path.empty()) query = query_from_json(json::parse(read_file(query_path)));

  FounderContext founder;
  const FounderContext* founder_ptr = nullptr;
  if (!profile_path.empty()) {
    const json j = json::parse(read_file(profile_path));
    if (j.contains("industries")) founder.industries = j.at("industries").get<std::set<std::string>>();
    if (j.contains("city")) founder.city = j.at("city").get<std::string>();
    founder_ptr = &founder;
  }

  std::vector<const FirmRecord*> firms = filter_and_search(catalog, founder_ptr, query);
  if (!sort_column.empty()) {
    const auto column = parse_sort_column(sort_column);
    if (!column) throw InvalidInput("unknown sort column: " + sort_column);
    sort_by_column(firms, *column);
  }
  const bool partner_column = !trim(query.search).empty() || !query.topics.empty();

  std::ostringstream out;
  out << "firm_id\tname\tstages\thq_city\tpace\tindustries";
  if (partner_column) out << "\tpartner";
  out << '\n';
  for (const FirmRecord* f : firms) {
    out << f->firm_id << '\t' << f->name << '\t';
    bool first = true;
    for (FundingStage s : f->stages) {
      if (!first) out << ';';
      first = false;
      out << to_string(s);
    }
    out << '\t' << f->hq_city << '\t' << f->investments_last_year << '\t';
    std::size_t shown = 0;
    for (const std::string& tag : f->industries) {
      if (shown == 3) break;
      if (shown) out << ';';
      out << tag;
      ++shown;
    }
    if (partner_column) {
      const InvestorRecord* partner = best_partner_match(*f, query);
      out << '\t' << (partner ? partner->first_name + " " + partner->last_name : "-");
    }
    out << '\n';
  }
  if (!out_path.empty()) atomic_write_file(out_path, out.str());
  std::cout << out.str();
  return 0;
}

int cmd_import(const std::string& csv_path) {
  const std::vector<std::vector<std::string>> rows = files::parse_csv(read_file(csv_path));
  if (rows.empty()) throw InvalidInput("import: empty csv");
  static const std::vector<std::string> canonical = {
      "investor name", "firm", "email", "stage", "city", "notes", "last contact"};
  const std::map<std::size_t, std::string> mapping =
      guess_column_mapping(rows[0], canonical);
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    auto it = mapping.find(i);
    std::cout << "column " << i << " '" << rows[0][i] << "' -> "
              << (it == mapping.end() ? "(unmapped)" : it->second) << '\n';
  }
  return 0;
}

int cmd_analyze(const std::string& timelines_path, const std::string& out_path) {
  const std::vector<RaiseTimeline> timelines =
      files::read_timelines_jsonl(read_file(timelines_path));

  std::ostringstream out;
  out << "# fundraising periods\nfounder_id\tdays\n";
  std::map<long, std::size_t> weeks_histogram;
  double total_days = 0;
  for (const RaiseTimeline& t : timelines) {
    const long days = fundraising_period_days(t);
    total_days += static_cast<double>(days);
    ++weeks_histogram[days / 7];
    out << t.founder_id << '\t' << days << '\n';
  }
  if (!timelines.empty()) {
    out << "mean_days\t"
        << format_double(total_days / static_cast<double>(timelines.size())) << '\n';
  }
  out << "\n# weeks histogram\nweeks\tcount\n";
  for (const auto& [weeks, count] : weeks_histogram) out << weeks << '\t' << count << '\n';

  out << "\n# email volume vs committed fraction (cubic fit)\n";
  const std::vector<std::pair<double, double>> points = volume_points(timelines);
  out << "points\t" << points.size() << '\n';
  if (points.size() >= 5) {
    const CubicFit fit = volume_curve_fit(points);
    out << "c0\t" << format_double(fit.coefficients[0]) << '\n';
    out << "c1\t" << format_double(fit.coefficients[1]) << '\n';
    out << "c2\t" << format_double(fit.coefficients[2]) << '\n';
    out << "c3\t" << format_double(fit.coefficients[3]) << '\n';
    out << "residual_norm\t" << format_double(fit.residual_norm) << '\n';
  } else {
    out << "cubic fit skipped: fewer than 5 points\n";
  }
  if (!out_path.empty()) atomic_write_file(out_path, out.str());
  std::cout << out.str();
  return 0;
}

int cmd_synth(const std::string& spec_path, std::uint64_t seed, bool seed_given,
              const std::string& out_dir, ManifestScope& manifest) {
  SynthSpec spec;
  if (!spec_path.empty()) spec = parse_synth_spec(read_file(spec_path));
  if (seed_given) spec.seed = seed;
  manifest.seed = spec.seed;
  manifest.config_hash = fnv1a64(synth_spec_to_json(spec));

  const SynthWorld world = generate(spec);
  fs::create_directories(out_dir);
  const fs::path base(out_dir);
  atomic_write_file((base / "spec.json").string(), synth_spec_to_json(spec) + "\n");
  atomic_write_file((base / "graph.snapshot").string(), save_snapshot(world.graph));
  atomic_write_file((base / "events.jsonl").string(), files::write_events_jsonl(world.events));
  atomic_write_file((base / "labels.csv").string(), files::write_labels_csv(world.graph));
  atomic_write_file((base / "profiles.jsonl").string(),
                    files::write_profiles_jsonl(world.profiles));
  atomic_write_file((base / "timelines.jsonl").string(),
                    files::write_timelines_jsonl(world.timelines));
  atomic_write_file((base / "baseline_ranking.tsv").string(),
                    files::write_ranking(world.planted_ranking));
  atomic_write_file((base / "ground_truth.json").string(),
                    files::write_ground_truth(world.truth));
  files::save_catalog((base / "catalog").string(), world.catalog);
  std::cout << "synthetic world in " << out_dir << ": " << world.graph.node_count()
            << " nodes, " << world.graph.edge_count() << " edges, "
            << world.events.size() << " events" << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fundraising communication-graph toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ManifestScope manifest;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse an email-metadata log into a graph delta");
  std::string in_events, in_founder, in_state, in_out, in_targets, in_config, in_updates;
  ingest->add_option("--events", in_events, "events.jsonl path")->required();
  ingest->add_option("--founder", in_founder, "founder mailbox address")->required();
  ingest->add_option("--state", in_state, "state directory (created if missing)");
  ingest->add_option("--out", in_out, "output delta path")->required();
  ingest->add_option("--targets", in_targets, "file of target investor addresses");
  ingest->add_option("--config", in_config, "ingest config json");
  ingest->add_option("--updates", in_updates, "conversation updates output path");
  std::int64_t in_since = std::numeric_limits<std::int64_t>::min();
  std::int64_t in_until = std::numeric_limits<std::int64_t>::max();
  ingest->add_option("--since", in_since, "drop events before this UTC second");
  ingest->add_option("--until", in_until, "drop events after this UTC second");

  // build
  auto* build = app.add_subcommand("build", "assemble a graph snapshot");
  std::vector<std::string> b_deltas;
  std::string b_base, b_labels, b_investments, b_cofoundings, b_coinvestings, b_identity, b_out;
  bool b_keep_orphans = false;
  double b_degree_cutoff = 0;
  build->add_option("--deltas", b_deltas, "delta files");
  build->add_option("--base", b_base, "existing snapshot to start from");
  build->add_option("--labels", b_labels, "labels csv");
  build->add_option("--investments", b_investments, "investments csv (founder_id,investor_id)");
  build->add_option("--cofoundings", b_cofoundings, "cofoundings csv");
  build->add_option("--coinvestings", b_coinvestings, "coinvestings csv");
  build->add_option("--identity", b_identity, "identity csv (person_id,address) for overlay");
  build->add_flag("--keep-orphans", b_keep_orphans, "keep zero-degree nodes");
  build->add_option("--degree-percentile-cutoff", b_degree_cutoff,
                    "drop nodes above this degree percentile (disabled by default)");
  build->add_option("--out", b_out, "output snapshot path")->required();

  // metrics
  auto* metrics = app.add_subcommand("metrics", "compute centrality metrics");
  std::string m_graph, m_out;
  double m_damping = 0.85, m_tol = 1e-10;
  int m_max_iter = 1000;
  metrics->add_option("--graph", m_graph, "graph snapshot")->required();
  metrics->add_option("--out", m_out, "metrics output path")->required();
  metrics->add_option("--damping", m_damping, "pagerank damping factor");
  metrics->add_option("--tol", m_tol, "pagerank L1 tolerance");
  metrics->add_option("--max-iter", m_max_iter, "pagerank iteration cap");

  // communities
  auto* communities = app.add_subcommand("communities", "partition the graph");
  std::string c_graph, c_method = "lpa", c_out;
  std::uint64_t c_seed = 0;
  int c_max_iter = 100;
  std::size_t c_top_k = 3;
  communities->add_option("--graph", c_graph, "graph snapshot")->required();
  communities->add_option("--seed", c_seed, "rng seed");
  communities->add_option("--method", c_method, "lpa or louvain");
  communities->add_option("--max-iter", c_max_iter, "iteration cap");
  communities->add_option("--top-k", c_top_k, "communities to list by founder count");
  communities->add_option("--out", c_out, "partition output path")->required();

  // rank
  auto* rank = app.add_subcommand("rank", "produce a founder ranking");
  std::string r_method, r_graph, r_profiles, r_metrics, r_out;
  std::uint64_t r_seed = 0;
  rank->add_option("--method", r_method, "baseline|fri-baseline|random|nfr|wfr")->required();
  rank->add_option("--graph", r_graph, "graph snapshot");
  rank->add_option("--profiles", r_profiles, "founder profiles jsonl");
  rank->add_option("--metrics", r_metrics, "metrics file (computed from graph if omitted)");
  rank->add_option("--seed", r_seed, "rng seed (random method)");
  std::string r_weights;
  rank->add_option("--weights", r_weights,
                   "weights file for the baseline methods (metric<TAB>weight lines)");
  rank->add_option("--out", r_out, "ranking output path")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "compare a candidate ranking against a baseline");
  std::string e_candidate, e_baseline, e_p_at = "5,10,20", e_out;
  int e_trials = 10000;
  std::uint64_t e_seed = 0;
  bool e_linear_gain = false;
  eval->add_option("--candidate", e_candidate, "candidate ranking file")->required();
  eval->add_option("--baseline", e_baseline, "baseline ranking file")->required();
  eval->add_option("--p-at", e_p_at, "precision cutoffs, comma separated");
  eval->add_option("--trials", e_trials, "permutation trials");
  eval->add_option("--seed", e_seed, "rng seed");
  eval->add_flag("--linear-gain", e_linear_gain,
                 "use linear relevance gain (flagged non-standard in output)");
  eval->add_option("--out", e_out, "report output path");

  // path
  auto* path = app.add_subcommand("path", "find intro paths");
  std::string p_graph, p_from, p_out;
  std::vector<std::string> p_to;
  int p_max_hops = 4, p_k = 3;
  path->add_option("--graph", p_graph, "graph snapshot")->required();
  path->add_option("--from", p_from, "founder address")->required();
  path->add_option("--to", p_to, "target address (repeat or comma-separate for a firm)")
      ->required();
  path->add_option("--max-hops", p_max_hops, "maximum path length");
  path->add_option("--k", p_k, "paths to return");
  path->add_option("--out", p_out, "output path");

  // filter
  auto* filter = app.add_subcommand("filter", "filter, search, and sort the investor catalog");
  std::string f_catalog, f_query, f_profile, f_out, f_search, f_stages, f_industries;
  std::string f_cities, f_companies, f_topics;
  bool f_and_industries = false, f_invested_in = false, f_similar = false, f_us_only = false;
  filter->add_option("--catalog", f_catalog, "catalog directory")->required();
  filter->add_option("--query", f_query, "query json file (overrides flags)");
  filter->add_option("--profile", f_profile, "founder profile json for personalization");
  filter->add_option("--search", f_search, "name search string");
  filter->add_option("--stages", f_stages, "comma-separated stages (OR)");
  filter->add_option("--industries", f_industries, "comma-separated industries");
  filter->add_flag("--and-industries", f_and_industries, "require all industries");
  filter->add_option("--cities", f_cities, "comma-separated cities");
  filter->add_flag("--invested-in", f_invested_in, "match invested-startup cities");
  filter->add_option("--companies", f_companies, "comma-separated related company ids");
  filter->add_flag("--similar", f_similar, "match industry-similar companies");
  filter->add_option("--topics", f_topics, "comma-separated topics (OR)");
  filter->add_flag("--us-only", f_us_only, "US-only firms");
  std::string f_sort;
  filter->add_option("--sort-by", f_sort,
                     "override the rank with a column order: firm|location|pace|stage");
  filter->add_option("--out", f_out, "results output path");

  // import
  auto* import_cmd = app.add_subcommand("import", "preview a conversation csv column mapping");
  std::string i_csv;
  bool i_preview = false;
  import_cmd->add_option("--csv", i_csv, "csv file")->required();
  import_cmd->add_flag("--mapping-preview", i_preview, "print the guessed column mapping");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "fundraising period and email-volume analyses");
  std::string a_timelines, a_out;
  analyze->add_option("--timelines", a_timelines, "timelines jsonl")->required();
  analyze->add_option("--out", a_out, "report output path");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic world");
  std::string s_spec, s_out;
  std::uint64_t s_seed = 0;
  synth->add_option("--spec", s_spec, "synth spec json");
  auto* seed_opt = synth->add_option("--seed", s_seed, "seed override");
  synth->add_option("--out", s_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ingest->parsed()) {
      manifest.subcommand = "ingest";
      manifest.inputs = {in_events, in_targets, in_config};
      return cmd_ingest(in_events, in_founder, in_state, in_out, in_targets, in_config,
                        in_updates, in_since, in_until, manifest);
    }
    if (build->parsed()) {
      manifest.subcommand = "build";
      manifest.inputs = b_deltas;
      for (const std::string& p : {b_base, b_labels, b_investments, b_cofoundings,
                                   b_coinvestings, b_identity}) {
        if (!p.empty()) manifest.inputs.push_back(p);
      }
      return cmd_build(b_deltas, b_base, b_labels, b_investments, b_cofoundings,
                       b_coinvestings, b_identity, b_keep_orphans, b_degree_cutoff, b_out);
    }
    if (metrics->parsed()) {
      manifest.subcommand = "metrics";
      manifest.inputs = {m_graph};
      manifest.config_hash = fnv1a64(format_double(m_damping) + "|" + format_double(m_tol) +
                                     "|" + std::to_string(m_max_iter));
      return cmd_metrics(m_graph, m_out, m_damping, m_tol, m_max_iter);
    }
    if (communities->parsed()) {
      manifest.subcommand = "communities";
      manifest.inputs = {c_graph};
      manifest.seed = c_seed;
      manifest.config_hash = fnv1a64(c_method);
      return cmd_communities(c_graph, c_seed, c_method, c_max_iter, c_top_k, c_out);
    }
    if (rank->parsed()) {
      manifest.subcommand = "rank";
      manifest.inputs = {r_graph, r_profiles, r_metrics};
      manifest.seed = r_seed;
      manifest.config_hash = fnv1a64(r_method);
      return cmd_rank(r_method, r_graph, r_profiles, r_metrics, r_weights, r_seed, r_out);
    }
    if (eval->parsed()) {
      manifest.subcommand = "eval";
      manifest.inputs = {e_candidate, e_baseline};
      manifest.seed = e_seed;
      manifest.config_hash = fnv1a64(e_p_at + "|" + std::to_string(e_trials) +
                                     (e_linear_gain ? "|linear" : ""));
      return cmd_eval(e_candidate, e_baseline, e_p_at, e_trials, e_seed, e_linear_gain, e_out);
    }
    if (path->parsed()) {
      manifest.subcommand = "path";
      manifest.inputs = {p_graph};
      return cmd_path(p_graph, p_from, p_to, p_max_hops, p_k, p_out);
    }
    if (filter->parsed()) {
      manifest.subcommand = "filter";
      manifest.inputs = {f_catalog, f_query, f_profile};
      FilterQuery q;
      q.search = f_search;
      for (const std::string& s : split(f_stages, ',')) {
        if (trim(s).empty()) continue;
        const auto stage = parse_funding_stage(s);
        if (!stage) throw InvalidInput("unknown stage: " + s);
        q.stages.insert(*stage);
      }
      for (const std::string& s : split(f_industries, ','))
        if (!trim(s).empty()) q.industries.insert(trim(s));
      for (const std::string& s : split(f_cities, ','))
        if (!trim(s).empty()) q.cities.insert(trim(s));
      for (const std::string& s : split(f_companies, ','))
        if (!trim(s).empty()) q.related_companies.insert(trim(s));
      for (const std::string& s : split(f_topics, ','))
        if (!trim(s).empty()) q.topics.insert(trim(s));
      q.industries_and = f_and_industries;
      q.cities_invested_in = f_invested_in;
      q.related_similar = f_similar;
      q.us_only = f_us_only;
      return cmd_filter(f_catalog, f_query, f_profile, q, f_sort, f_out);
    }
    if (import_cmd->parsed()) {
      manifest.subcommand = "import";
      manifest.inputs = {i_csv};
      return cmd_import(i_csv);
    }
    if (analyze->parsed()) {
      manifest.subcommand = "analyze";
      manifest.inputs = {a_timelines};
      return cmd_analyze(a_timelines, a_out);
    }
    if (synth->parsed()) {
      manifest.subcommand = "synth";
      manifest.inputs = {s_spec};
      return cmd_synth(s_spec, s_seed, seed_opt->count() > 0, s_out, manifest);
    }
  } catch (const DomainError& e) {
    fail_domain(e);
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
