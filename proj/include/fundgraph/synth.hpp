#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fundgraph/analytics.hpp"
#include "fundgraph/email.hpp"
#include "fundgraph/graph.hpp"
#include "fundgraph/investor_search.hpp"
#include "fundgraph/ranking.hpp"

namespace fundgraph {

enum class EdgeModel { PreferentialAttachment, ErdosRenyi };

struct SynthSpec {
  int founders = 40;
  int investors = 25;
  int persons = 85;
  EdgeModel edge_model = EdgeModel::PreferentialAttachment;
  int pa_out_edges = 3;       // attachments per arriving node
  double er_edge_prob = 0.02;
  int max_edge_weight = 9;    // weights drawn uniformly from 1..max
  std::uint64_t seed = 0;
  int planted_communities = 1;  // disconnected, internally connected blocks
  // coefficients over the unit-scaled metrics {pagerank, betweenness, closeness}
  std::vector<std::pair<std::string, double>> planted_baseline = {{"closeness", 0.7},
                                                                  {"pagerank", 0.3}};
  double planted_intercept = 0;
  int catalog_firms = 40;
  int catalog_companies = 60;
  int timeline_founders = 20;
  int bulk_noise = 0;  // extra bulk messages interleaved into the mailbox
};

SynthSpec parse_synth_spec(const std::string& json_text);
std::string synth_spec_to_json(const SynthSpec& spec);

struct GroundTruth {
  std::map<NodeId, int> planted_community;
  std::vector<std::pair<std::string, double>> planted_coefficients;
  double planted_intercept = 0;
  std::map<NodeId, double> planted_scores;  // per founder node
};

struct SynthWorld {
  CommGraph graph;  // the planted communication graph (labels included)
  std::vector<EmailEvent> events;  // mailbox whose ingestion reproduces graph
  std::vector<FounderProfile> profiles;
  Catalog catalog;
  std::vector<RaiseTimeline> timelines;
  GroundTruth truth;
  Ranking planted_ranking;  // founders ordered by planted score
};

// Deterministic given spec.seed.
SynthWorld generate(const SynthSpec& spec);

}  // namespace fundgraph
