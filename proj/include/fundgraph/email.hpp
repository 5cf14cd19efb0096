#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fundgraph/graph.hpp"

namespace fundgraph {

// Conversation pipeline states, in pipeline order. Stage inference never
// moves a conversation to an earlier state.
enum class ConversationStage {
  Wishlist,
  AskedForIntro,
  InTalks,
  NeedToRespond,
  Pitching,
  Committed,
  Passed,
  NotInterested,
};

std::string to_string(ConversationStage s);
std::optional<ConversationStage> parse_stage(const std::string& name);

enum class Direction { Incoming, Outgoing };

struct EmailEvent {
  std::string message_id;
  std::string thread_id;
  std::int64_t timestamp = 0;  // UTC seconds
  std::string from_addr;       // normalized
  std::string from_name;
  // Union of TO/CC/BCC: normalized, deduplicated, order preserved, sender
  // removed (so edge increments never form self-loops).
  std::vector<std::string> recipients;
  std::set<std::string> headers;  // lowercased header names present
  std::string return_path_domain;
  std::optional<std::string> body_text;  // consumed by bulk heuristics only
  std::optional<double> sentiment;       // precomputed upstream, in [-1, 1]
};

// lowercase, trim, strip "+tag" from the local part
std::string normalize_address(std::string_view raw);
bool is_valid_address(std::string_view addr);
std::string address_domain(std::string_view addr);  // "" when malformed
std::string address_local_part(std::string_view addr);

struct BulkRuleConfig {
  std::size_t max_recipients = 5;  // strictly more than this is bulk
  std::vector<std::string> bulk_phrases = {
      "unsubscribe", "terms of use", "view in your browser"};
  std::set<std::string> listserv_headers = {"list-unsubscribe", "list-id"};
  std::set<std::string> bulk_return_path_domains = {
      "mailchimp.com", "sendgrid.net", "constantcontact.com", "mailgun.org"};
  std::set<std::string> automated_local_parts = {"noreply", "info"};
  std::vector<std::string> sender_name_aliases = {"support", "payroll"};
  std::set<std::string> transactional_domains = {
      "docusign.net", "calendly.com", "intercom.io"};
};

// True iff any bulk heuristic fires. Missing body just skips the body rules.
bool is_bulk(const EmailEvent& msg, const BulkRuleConfig& config = {});

struct StageRule {
  Direction direction;
  std::string phrase;  // case-insensitive substring of the body
  ConversationStage stage;
};

struct StageRuleConfig {
  std::vector<StageRule> rules;
  static StageRuleConfig defaults();
};

std::optional<ConversationStage> guess_stage(const EmailEvent& msg, Direction direction,
                                             const StageRuleConfig& config);

struct IngestState {
  std::set<std::string> seen_message_ids;
  std::string history_cursor;
  std::map<std::string, ConversationStage> conversation_stages;
};

struct ConversationUpdate {
  std::string investor_addr;
  ConversationStage stage = ConversationStage::Wishlist;
  std::string message_id;
  std::int64_t timestamp = 0;
};

struct IngestStats {
  std::size_t ingested = 0;
  std::size_t skipped_bulk = 0;
  std::size_t skipped_dup = 0;
  std::size_t malformed = 0;
  std::vector<std::pair<std::size_t, std::string>> malformed_reports;  // (index, reason)
};

struct IngestConfig {
  BulkRuleConfig bulk;
  StageRuleConfig stages = StageRuleConfig::defaults();
  std::set<std::string> target_investors;  // normalized addresses
};

struct IngestResult {
  GraphDelta delta;
  std::vector<ConversationUpdate> updates;
  IngestStats stats;
};

// Sequential over one mailbox; events must be ordered by ascending timestamp.
// Malformed records are skipped and reported, never fatal. Replaying the same
// events against the resulting state yields an empty delta.
IngestResult ingest_events(const std::vector<EmailEvent>& events,
                           const std::string& founder_addr, IngestState& state,
                           const IngestConfig& config = {});

// One JSON record per line. Unparseable lines are reported, not fatal.
std::vector<EmailEvent> parse_events_jsonl(
    const std::string& text, std::vector<std::pair<std::size_t, std::string>>* errors);

std::string event_to_json(const EmailEvent& e);

}  // namespace fundgraph
