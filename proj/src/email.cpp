#include "fundgraph/email.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include <json.hpp>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

using nlohmann::json;

std::string to_string(ConversationStage s) {
  switch (s) {
    case ConversationStage::Wishlist: return "my_wishlist";
    case ConversationStage::AskedForIntro: return "asked_for_intro";
    case ConversationStage::InTalks: return "in_talks";
    case ConversationStage::NeedToRespond: return "need_to_respond";
    case ConversationStage::Pitching: return "pitching";
    case ConversationStage::Committed: return "committed";
    case ConversationStage::Passed: return "passed";
    case ConversationStage::NotInterested: return "not_interested";
  }
  return "my_wishlist";
}

std::optional<ConversationStage> parse_stage(const std::string& name) {
  static const std::vector<std::pair<std::string, ConversationStage>> table = {
      {"my_wishlist", ConversationStage::Wishlist},
      {"asked_for_intro", ConversationStage::AskedForIntro},
      {"in_talks", ConversationStage::InTalks},
      {"need_to_respond", ConversationStage::NeedToRespond},
      {"pitching", ConversationStage::Pitching},
      {"committed", ConversationStage::Committed},
      {"passed", ConversationStage::Passed},
      {"not_interested", ConversationStage::NotInterested},
  };
  const std::string key = to_lower(trim(name));
  for (const auto& [n, s] : table) {
    if (n == key) return s;
  }
  return std::nullopt;
}

std::string normalize_address(std::string_view raw) {
  std::string addr = to_lower(trim(raw));
  const std::size_t at = addr.find('@');
  if (at != std::string::npos) {
    const std::size_t plus = addr.find('+');
    if (plus != std::string::npos && plus < at) {
      addr = addr.substr(0, plus) + addr.substr(at);
    }
  }
  return addr;
}

bool is_valid_address(std::string_view addr) {
  const std::size_t at = addr.find('@');
  if (at == std::string::npos || at == 0) return false;
  if (addr.find('@', at + 1) != std::string::npos) return false;
  const std::string_view domain = addr.substr(at + 1);
  if (domain.empty() || domain.front() == '.' || domain.back() == '.') return false;
  if (domain.find('.') == std::string_view::npos) return false;
  for (char c : addr) {
    if (std::isspace(static_cast<unsigned char>(c)) || std::iscntrl(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

std::string address_domain(std::string_view addr) {
  const std::size_t at = addr.find('@');
  return at == std::string_view::npos ? "" : std::string(addr.substr(at + 1));
}

std::string address_local_part(std::string_view addr) {
  const std::size_t at = addr.find('@');
  return at == std::string_view::npos ? std::string(addr) : std::string(addr.substr(0, at));
}

bool is_bulk(const EmailEvent& msg, const BulkRuleConfig& config) {
  if (msg.recipients.size() > config.max_recipients) return true;

  if (msg.body_text) {
    for (const std::string& phrase : config.bulk_phrases) {
      if (contains_ci(*msg.body_text, phrase)) return true;
    }
  }

  for (const std::string& header : msg.headers) {
    if (config.listserv_headers.count(to_lower(header))) return true;
  }

  if (config.bulk_return_path_domains.count(to_lower(msg.return_path_domain))) return true;

  if (config.automated_local_parts.count(address_local_part(msg.from_addr))) return true;

  for (const std::string& alias : config.sender_name_aliases) {
    if (!msg.from_name.empty() && contains_ci(msg.from_name, alias)) return true;
  }

  if (config.transactional_domains.count(address_domain(msg.from_addr))) return true;
  for (const std::string& rcpt : msg.recipients) {
    if (config.transactional_domains.count(address_domain(rcpt))) return true;
  }
  return false;
}

StageRuleConfig StageRuleConfig::defaults() {
  using D = Direction;
  using S = ConversationStage;
  StageRuleConfig c;
  c.rules = {
      {D::Outgoing, "could you introduce", S::AskedForIntro},
      {D::Outgoing, "would love an intro", S::AskedForIntro},
      {D::Outgoing, "asking for an intro", S::AskedForIntro},
      {D::Outgoing, "pitch deck", S::Pitching},
      {D::Outgoing, "our deck", S::Pitching},
      {D::Incoming, "term sheet", S::Committed},
      {D::Incoming, "we'd like to invest", S::Committed},
      {D::Incoming, "we would like to invest", S::Committed},
      {D::Incoming, "ready to wire", S::Committed},
      {D::Incoming, "not interested", S::NotInterested},
      {D::Incoming, "not a fit", S::Passed},
      {D::Incoming, "going to pass", S::Passed},
      {D::Incoming, "pass on this", S::Passed},
      {D::Incoming, "schedule a call", S::InTalks},
      {D::Incoming, "set up some time", S::InTalks},
      {D::Incoming, "find a time", S::InTalks},
      {D::Incoming, "any update", S::NeedToRespond},
      {D::Incoming, "checking in", S::NeedToRespond},
  };
  return c;
}

std::optional<ConversationStage> guess_stage(const EmailEvent& msg, Direction direction,
                                             const StageRuleConfig& config) {
  if (!msg.body_text) return std::nullopt;
  for (const StageRule& rule : config.rules) {
    if (rule.direction != direction) continue;
    if (contains_ci(*msg.body_text, rule.phrase)) return rule.stage;
  }
  return std::nullopt;
}

namespace {

// Invariant check; returns a reason string when the event is malformed.
std::string validate_event(const EmailEvent& e) {
  if (e.message_id.empty()) return "empty message_id";
  if (!is_valid_address(e.from_addr)) return "invalid from_addr: " + e.from_addr;
  for (const std::string& r : e.recipients) {
    if (!is_valid_address(r)) return "invalid recipient: " + r;
  }
  if (e.sentiment && (*e.sentiment < -1.0 || *e.sentiment > 1.0)) {
    return "sentiment out of [-1, 1]";
  }
  return "";
}

}  // namespace

IngestResult ingest_events(const std::vector<EmailEvent>& events,
                           const std::string& founder_addr, IngestState& state,
                           const IngestConfig& config) {
  if (!is_valid_address(founder_addr) || founder_addr != normalize_address(founder_addr)) {
    throw InvalidInput("founder address must be normalized and valid: " + founder_addr);
  }
  IngestResult result;
  std::int64_t prev_ts = std::numeric_limits<std::int64_t>::min();
  bool founder_touched = false;
  std::set<std::string> investors_touched;

  for (std::size_t index = 0; index < events.size(); ++index) {
    const EmailEvent& e = events[index];
    const std::string reason = validate_event(e);
    if (!reason.empty()) {
      ++result.stats.malformed;
      result.stats.malformed_reports.emplace_back(index, reason);
      continue;
    }
    if (e.timestamp < prev_ts) {
      throw InvalidInput("events not ordered by timestamp at index " + std::to_string(index));
    }
    prev_ts = e.timestamp;

    if (state.seen_message_ids.count(e.message_id)) {
      ++result.stats.skipped_dup;
      continue;
    }
    state.seen_message_ids.insert(e.message_id);
    state.history_cursor = e.message_id;

    if (is_bulk(e, config.bulk)) {
      ++result.stats.skipped_bulk;
      continue;
    }
    ++result.stats.ingested;

    for (const std::string& rcpt : e.recipients) {
      result.delta.add_edge(e.from_addr, rcpt, 1);
      if (e.from_addr == founder_addr || rcpt == founder_addr) founder_touched = true;
    }

    const Direction direction =
        e.from_addr == founder_addr ? Direction::Outgoing : Direction::Incoming;
    std::vector<std::string> targets;
    if (direction == Direction::Outgoing) {
      for (const std::string& rcpt : e.recipients) {
        if (config.target_investors.count(rcpt)) targets.push_back(rcpt);
      }
    } else if (config.target_investors.count(e.from_addr)) {
      targets.push_back(e.from_addr);
    }
    if (targets.empty()) continue;

    for (const std::string& investor : targets) investors_touched.insert(investor);
    const std::optional<ConversationStage> stage = guess_stage(e, direction, config.stages);
    if (!stage) continue;
    for (const std::string& investor : targets) {
      auto it = state.conversation_stages.find(investor);
      // never move a conversation backward in the pipeline
      if (it != state.conversation_stages.end() && *stage <= it->second) continue;
      state.conversation_stages[investor] = *stage;
      result.updates.push_back({investor, *stage, e.message_id, e.timestamp});
    }
  }

  if (founder_touched) {
    LabelFlags f;
    f.founder = true;
    result.delta.add_label(founder_addr, f);
  }
  for (const std::string& investor : investors_touched) {
    LabelFlags f;
    f.investor = true;
    result.delta.add_label(investor, f);
  }
  return result;
}

namespace {

EmailEvent event_from_json(const json& j) {
  EmailEvent e;
  e.message_id = j.at("message_id").get<std::string>();
  if (j.contains("thread_id")) e.thread_id = j.at("thread_id").get<std::string>();
  e.timestamp = j.at("timestamp").get<std::int64_t>();
  e.from_addr = normalize_address(j.at("from_addr").get<std::string>());
  if (j.contains("from_name")) e.from_name = j.at("from_name").get<std::string>();

  std::vector<std::string> raw;
  if (j.contains("recipients")) {
    raw = j.at("recipients").get<std::vector<std::string>>();
  }
  for (const char* field : {"to", "cc", "bcc"}) {
    if (j.contains(field)) {
      for (const auto& r : j.at(field)) raw.push_back(r.get<std::string>());
    }
  }
  std::set<std::string> seen;
  for (const std::string& r : raw) {
    const std::string addr = normalize_address(r);
    if (addr == e.from_addr) continue;
    if (seen.insert(addr).second) e.recipients.push_back(addr);
  }

  if (j.contains("headers")) {
    for (const auto& h : j.at("headers")) e.headers.insert(to_lower(h.get<std::string>()));
  }
  if (j.contains("return_path_domain")) {
    e.return_path_domain = to_lower(j.at("return_path_domain").get<std::string>());
  }
  if (j.contains("body_text") && !j.at("body_text").is_null()) {
    e.body_text = j.at("body_text").get<std::string>();
  }
  if (j.contains("sentiment") && !j.at("sentiment").is_null()) {
    e.sentiment = j.at("sentiment").get<double>();
  }
  return e;
}

}  // namespace

std::vector<EmailEvent> parse_events_jsonl(
    const std::string& text, std::vector<std::pair<std::size_t, std::string>>* errors) {
  std::vector<EmailEvent> events;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    try {
      events.push_back(event_from_json(json::parse(line)));
    } catch (const json::exception& ex) {
      if (errors) errors->emplace_back(line_no, ex.what());
    }
    if (end == text.size()) break;
  }
  return events;
}

std::string event_to_json(const EmailEvent& e) {
  json j;
  j["message_id"] = e.message_id;
  if (!e.thread_id.empty()) j["thread_id"] = e.thread_id;
  j["timestamp"] = e.timestamp;
  j["from_addr"] = e.from_addr;
  if (!e.from_name.empty()) j["from_name"] = e.from_name;
  j["recipients"] = e.recipients;
  if (!e.headers.empty()) j["headers"] = e.headers;
  if (!e.return_path_domain.empty()) j["return_path_domain"] = e.return_path_domain;
  if (e.body_text) j["body_text"] = *e.body_text;
  if (e.sentiment) j["sentiment"] = *e.sentiment;
  return j.dump();
}

}  // namespace fundgraph
