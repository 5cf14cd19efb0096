#pragma once

#include <map>
#include <string>
#include <vector>

#include "fundgraph/analytics.hpp"
#include "fundgraph/centrality.hpp"
#include "fundgraph/communities.hpp"
#include "fundgraph/email.hpp"
#include "fundgraph/graph.hpp"
#include "fundgraph/investor_search.hpp"
#include "fundgraph/rank_eval.hpp"
#include "fundgraph/ranking.hpp"
#include "fundgraph/synth.hpp"

// Text formats wired between the CLI subcommands. All writers emit sorted,
// byte-stable output.
namespace fundgraph::files {

std::string write_metrics(const std::vector<NodeMetrics>& metrics);
std::vector<NodeMetrics> read_metrics(const std::string& text);

std::string write_ranking(const Ranking& r);
Ranking read_ranking(const std::string& text);

std::string write_partition(const Partition& p);
Partition read_partition(const std::string& text);

std::string write_eval_report(const EvalReport& report);

// node_id,label,employed_by_fund with label in {person, founder, investor}
std::string write_labels_csv(const CommGraph& g);
std::map<NodeId, LabelFlags> read_labels_csv(const std::string& text);

std::string write_profiles_jsonl(const std::vector<FounderProfile>& profiles);
std::vector<FounderProfile> read_profiles_jsonl(const std::string& text);

std::string write_timelines_jsonl(const std::vector<RaiseTimeline>& timelines);
std::vector<RaiseTimeline> read_timelines_jsonl(const std::string& text);

std::string write_events_jsonl(const std::vector<EmailEvent>& events);

// catalog directory: firms.csv, investors.csv, companies.csv
void save_catalog(const std::string& dir, const Catalog& catalog);
Catalog load_catalog(const std::string& dir);

std::string write_ground_truth(const GroundTruth& truth);

// (founder_id, investor_id) CSV rows and friends for the funding graph
std::vector<Investment> read_investments_csv(const std::string& text);
std::vector<CoFounding> read_cofoundings_csv(const std::string& text);
std::vector<CoInvesting> read_coinvestings_csv(const std::string& text);
std::map<NodeId, NodeId> read_identity_csv(const std::string& text);

// minimal CSV with quoting
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::string csv_escape(const std::string& field);

}  // namespace fundgraph::files
