#include "fundgraph/files.hpp"

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph::files {

using nlohmann::json;

namespace {

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  for (std::string& line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_double(const std::string& s, const char* context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(std::string(context) + ": bad number '" + s + "'");
  }
}

std::vector<std::string> expect_columns(const std::string& line, std::size_t n,
                                        const char* context) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() != n) {
    throw InvalidInput(std::string(context) + ": expected " + std::to_string(n) +
                       " columns, got " + std::to_string(cols.size()));
  }
  return cols;
}

}  // namespace

std::string write_metrics(const std::vector<NodeMetrics>& metrics) {
  std::ostringstream out;
  out << "node_id\tpagerank_raw\tpagerank\tbetweenness_raw\tbetweenness\t"
         "closeness_raw\tcloseness\n";
  for (const NodeMetrics& m : metrics) {
    out << m.node_id << '\t' << format_double(m.pagerank_raw) << '\t'
        << format_double(m.pagerank) << '\t' << format_double(m.betweenness_raw) << '\t'
        << format_double(m.betweenness) << '\t' << format_double(m.closeness_raw) << '\t'
        << format_double(m.closeness) << '\n';
  }
  return out.str();
}

std::vector<NodeMetrics> read_metrics(const std::string& text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.empty() || !lines[0].starts_with("node_id\t")) {
    throw InvalidInput("metrics file: missing header");
  }
  std::vector<NodeMetrics> metrics;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cols = expect_columns(lines[i], 7, "metrics file");
    NodeMetrics m;
    m.node_id = cols[0];
    m.pagerank_raw = parse_double(cols[1], "metrics file");
    m.pagerank = parse_double(cols[2], "metrics file");
    m.betweenness_raw = parse_double(cols[3], "metrics file");
    m.betweenness = parse_double(cols[4], "metrics file");
    m.closeness_raw = parse_double(cols[5], "metrics file");
    m.closeness = parse_double(cols[6], "metrics file");
    metrics.push_back(std::move(m));
  }
  return metrics;
}

std::string write_ranking(const Ranking& r) {
  std::ostringstream out;
  out << "rank\tfounder_id\tscore\n";
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    out << i << '\t' << r.order[i] << '\t' << format_double(r.score.at(r.order[i])) << '\n';
  }
  return out.str();
}

Ranking read_ranking(const std::string& text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.empty() || !lines[0].starts_with("rank\t")) {
    throw InvalidInput("ranking file: missing header");
  }
  Ranking r;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cols = expect_columns(lines[i], 3, "ranking file");
    if (cols[0] != std::to_string(i - 1)) {
      throw InvalidInput("ranking file: ranks must be 0..N-1 in order");
    }
    if (r.score.count(cols[1])) {
      throw InvalidInput("ranking file: duplicate founder " + cols[1]);
    }
    r.order.push_back(cols[1]);
    r.score[cols[1]] = parse_double(cols[2], "ranking file");
  }
  return r;
}

std::string write_partition(const Partition& p) {
  std::ostringstream out;
  out << "node_id\tcommunity_id\n";
  for (const auto& [node, community] : p.assignment) {
    out << node << '\t' << community << '\n';
  }
  return out.str();
}

Partition read_partition(const std::string& text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.empty() || !lines[0].starts_with("node_id\t")) {
    throw InvalidInput("partition file: missing header");
  }
  std::map<NodeId, NodeId> raw;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cols = expect_columns(lines[i], 2, "partition file");
    raw[cols[0]] = cols[1];
  }
  return Partition::canonicalize(raw);
}

std::string write_eval_report(const EvalReport& report) {
  std::ostringstream out;
  out << "ndcg\t" << format_double(report.ndcg) << '\n';
  for (const auto& [n, p] : report.precision_at) {
    out << "p@" << n << '\t' << format_double(p) << '\n';
  }
  out << "tau\t" << format_double(report.kendall_tau) << '\n';
  out << "rho\t" << format_double(report.spearman_rho) << '\n';
  out << "rmse\t" << format_double(report.rmse) << '\n';
  out << "mae\t" << format_double(report.mae) << '\n';
  out << "p_tau\t" << format_double(report.p_tau) << '\n';
  out << "p_rho\t" << format_double(report.p_rho) << '\n';
  out << "gain\t" << (report.linear_gain ? "linear (non-standard)" : "exponential") << '\n';
  return out.str();
}

std::string write_labels_csv(const CommGraph& g) {
  std::ostringstream out;
  out << "node_id,label,employed_by_fund\n";
  for (const auto& [id, flags] : g.nodes()) {
    out << csv_escape(id) << ',' << to_string(g.label(id)) << ','
        << (flags.employed_by_fund ? "true" : "false") << '\n';
  }
  return out.str();
}

std::map<NodeId, LabelFlags> read_labels_csv(const std::string& text) {
  const std::vector<std::vector<std::string>> rows = parse_csv(text);
  if (rows.empty() || rows[0].empty() || rows[0][0] != "node_id") {
    throw InvalidInput("labels csv: missing header");
  }
  std::map<NodeId, LabelFlags> labels;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw InvalidInput("labels csv: expected 3 columns");
    LabelFlags f;
    const std::string label = to_lower(trim(rows[i][1]));
    if (label == "founder") {
      f.founder = true;
    } else if (label == "investor") {
      f.investor = true;
    } else if (label != "person") {
      throw InvalidInput("labels csv: unknown label '" + rows[i][1] + "'");
    }
    f.employed_by_fund = to_lower(trim(rows[i][2])) == "true";
    labels[rows[i][0]].merge(f);
  }
  return labels;
}

namespace {

json profile_to_json(const FounderProfile& p) {
  json j;
  j["founder_id"] = p.founder_id;
  j["current_round_raised"] = p.current_round_raised;
  j["previous_rounds_raised"] = p.previous_rounds_raised;
  j["industry_avg_round"] = p.industry_avg_round;
  j["interested_investor_count"] = p.interested_investor_count;
  j["waitlist_responded_count"] = p.waitlist_responded_count;
  j["avg_incoming_sentiment"] = p.avg_incoming_sentiment;
  j["exits"] = {{"job_ipo", p.exits[0]},   {"job_acq", p.exits[1]},
                {"exec_ipo", p.exits[2]},  {"exec_acq", p.exits[3]},
                {"adv_ipo", p.exits[4]},   {"adv_acq", p.exits[5]}};
  return j;
}

FounderProfile profile_from_json(const json& j) {
  FounderProfile p;
  p.founder_id = j.at("founder_id").get<std::string>();
  p.current_round_raised = j.value("current_round_raised", 0.0);
  p.previous_rounds_raised = j.value("previous_rounds_raised", 0.0);
  p.industry_avg_round = j.at("industry_avg_round").get<double>();
  if (p.industry_avg_round <= 0) {
    throw InvalidInput("profile " + p.founder_id + ": industry_avg_round must be positive");
  }
  p.interested_investor_count = j.value("interested_investor_count", 0);
  p.waitlist_responded_count = j.value("waitlist_responded_count", 0);
  p.avg_incoming_sentiment = j.value("avg_incoming_sentiment", 0.0);
  if (p.current_round_raised < 0 || p.previous_rounds_raised < 0 ||
      p.interested_investor_count < 0 || p.waitlist_responded_count < 0) {
    throw InvalidInput("profile " + p.founder_id + ": counts must be non-negative");
  }
  if (p.avg_incoming_sentiment < -1.0 || p.avg_incoming_sentiment > 1.0) {
    throw InvalidInput("profile " + p.founder_id + ": sentiment out of [-1, 1]");
  }
  if (j.contains("exits")) {
    const json& e = j.at("exits");
    p.exits = {e.value("job_ipo", 0),  e.value("job_acq", 0), e.value("exec_ipo", 0),
               e.value("exec_acq", 0), e.value("adv_ipo", 0), e.value("adv_acq", 0)};
    for (int x : p.exits) {
      if (x < 0) throw InvalidInput("profile " + p.founder_id + ": negative exit count");
    }
  }
  return p;
}

}  // namespace

std::string write_profiles_jsonl(const std::vector<FounderProfile>& profiles) {
  std::ostringstream out;
  for (const FounderProfile& p : profiles) out << profile_to_json(p).dump() << '\n';
  return out.str();
}

std::vector<FounderProfile> read_profiles_jsonl(const std::string& text) {
  std::vector<FounderProfile> profiles;
  std::size_t line_no = 0;
  for (const std::string& line : data_lines(text)) {
    ++line_no;
    try {
      profiles.push_back(profile_from_json(json::parse(line)));
    } catch (const json::exception& ex) {
      throw InvalidInput("profiles line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return profiles;
}

std::string write_timelines_jsonl(const std::vector<RaiseTimeline>& timelines) {
  std::ostringstream out;
  for (const RaiseTimeline& t : timelines) {
    json j;
    j["founder_id"] = t.founder_id;
    j["wishlist_first_add"] = t.wishlist_first_add;
    j["last_status_update"] = t.last_status_update;
    json shares = json::array();
    for (const auto& [week, share] : t.weekly_email_share) {
      shares.push_back({{"week", week}, {"share", share}});
    }
    j["weekly_email_share"] = shares;
    json committed = json::array();
    for (const auto& [week, fraction] : t.committed_by_week) {
      committed.push_back({{"week", week}, {"fraction", fraction}});
    }
    j["committed_by_week"] = committed;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<RaiseTimeline> read_timelines_jsonl(const std::string& text) {
  std::vector<RaiseTimeline> timelines;
  std::size_t line_no = 0;
  for (const std::string& line : data_lines(text)) {
    ++line_no;
    try {
      const json j = json::parse(line);
      RaiseTimeline t;
      t.founder_id = j.at("founder_id").get<std::string>();
      t.wishlist_first_add = j.at("wishlist_first_add").get<std::int64_t>();
      t.last_status_update = j.at("last_status_update").get<std::int64_t>();
      if (j.contains("weekly_email_share")) {
        for (const json& e : j.at("weekly_email_share")) {
          t.weekly_email_share.emplace_back(e.at("week").get<int>(),
                                            e.at("share").get<double>());
        }
      }
      if (j.contains("committed_by_week")) {
        for (const json& e : j.at("committed_by_week")) {
          t.committed_by_week.emplace_back(e.at("week").get<int>(),
                                           e.at("fraction").get<double>());
        }
      }
      validate_timeline(t);
      timelines.push_back(std::move(t));
    } catch (const json::exception& ex) {
      throw InvalidInput("timelines line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return timelines;
}

std::string write_events_jsonl(const std::vector<EmailEvent>& events) {
  std::ostringstream out;
  for (const EmailEvent& e : events) out << event_to_json(e) << '\n';
  return out.str();
}

namespace {

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    out += items[i];
  }
  return out;
}

template <typename Set>
std::string join_set(const Set& items) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ';';
    first = false;
    if constexpr (std::is_same_v<std::decay_t<decltype(item)>, FundingStage>) {
      out += to_string(item);
    } else {
      out += item;
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& joined) {
  std::vector<std::string> items;
  for (const std::string& part : split(joined, ';')) {
    if (!trim(part).empty()) items.push_back(trim(part));
  }
  return items;
}

void write_file_in(const std::string& dir, const std::string& name,
                   const std::string& content) {
  atomic_write_file((std::filesystem::path(dir) / name).string(), content);
}

}  // namespace

void save_catalog(const std::string& dir, const Catalog& catalog) {
  std::filesystem::create_directories(dir);

  std::ostringstream firms;
  firms << "firm_id,name,hq_city,office_cities,stages,industries,investments,"
           "investments_last_year,conversation_count,us_only_eligible\n";
  for (const FirmRecord& f : catalog.firms) {
    firms << csv_escape(f.firm_id) << ',' << csv_escape(f.name) << ','
          << csv_escape(f.hq_city) << ',' << csv_escape(join_list(f.office_cities)) << ','
          << csv_escape(join_set(f.stages)) << ',' << csv_escape(join_set(f.industries))
          << ',' << csv_escape(join_list(f.investments)) << ',' << f.investments_last_year
          << ',' << f.conversation_count << ',' << (f.us_only_eligible ? "true" : "false")
          << '\n';
  }
  write_file_in(dir, "firms.csv", firms.str());

  std::ostringstream investors;
  investors << "investor_id,first_name,last_name,firm_id,featured,verified,topics,"
               "industries\n";
  for (const FirmRecord& f : catalog.firms) {
    for (const InvestorRecord& inv : f.investors) {
      investors << csv_escape(inv.investor_id) << ',' << csv_escape(inv.first_name) << ','
                << csv_escape(inv.last_name) << ',' << csv_escape(inv.firm_id) << ','
                << (inv.featured ? "true" : "false") << ','
                << (inv.verified ? "true" : "false") << ','
                << csv_escape(join_set(inv.topics)) << ','
                << csv_escape(join_set(inv.industries)) << '\n';
    }
  }
  write_file_in(dir, "investors.csv", investors.str());

  std::ostringstream companies;
  companies << "company_id,name,industries,city\n";
  for (const auto& [id, c] : catalog.companies) {
    companies << csv_escape(c.company_id) << ',' << csv_escape(c.name) << ','
              << csv_escape(join_set(c.industries)) << ',' << csv_escape(c.city) << '\n';
  }
  write_file_in(dir, "companies.csv", companies.str());
}

Catalog load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  Catalog catalog;

  const auto require_industries = [](const std::vector<std::string>& tags,
                                     const std::string& owner) {
    std::set<std::string> out;
    for (const std::string& tag : tags) {
      if (!is_known_industry(tag)) {
        throw UnknownIndustry("unknown industry '" + tag + "' on " + owner);
      }
      out.insert(tag);
    }
    return out;
  };

  const std::vector<std::vector<std::string>> company_rows =
      parse_csv(read_file((fs::path(dir) / "companies.csv").string()));
  for (std::size_t i = 1; i < company_rows.size(); ++i) {
    const auto& row = company_rows[i];
    if (row.size() != 4) throw InvalidInput("companies.csv: expected 4 columns");
    CompanyRecord c;
    c.company_id = row[0];
    c.name = row[1];
    c.industries = require_industries(split_list(row[2]), "company " + c.company_id);
    c.city = row[3];
    catalog.companies[c.company_id] = std::move(c);
  }

  std::map<std::string, std::size_t> firm_index;
  const std::vector<std::vector<std::string>> firm_rows =
      parse_csv(read_file((fs::path(dir) / "firms.csv").string()));
  for (std::size_t i = 1; i < firm_rows.size(); ++i) {
    const auto& row = firm_rows[i];
    if (row.size() != 10) throw InvalidInput("firms.csv: expected 10 columns");
    FirmRecord f;
    f.firm_id = row[0];
    f.name = row[1];
    f.hq_city = row[2];
    f.office_cities = split_list(row[3]);
    for (const std::string& s : split_list(row[4])) {
      const auto stage = parse_funding_stage(s);
      if (!stage) throw InvalidInput("firms.csv: unknown stage '" + s + "'");
      f.stages.insert(*stage);
    }
    f.industries = require_industries(split_list(row[5]), "firm " + f.firm_id);
    f.investments = split_list(row[6]);
    for (const std::string& company_id : f.investments) {
      if (!catalog.companies.count(company_id)) {
        throw UnknownCompanyId("firms.csv: firm " + f.firm_id +
                               " invests in unknown company " + company_id);
      }
      catalog.companies[company_id].investor_firm_ids.push_back(f.firm_id);
    }
    f.investments_last_year = static_cast<int>(parse_double(row[7], "firms.csv"));
    f.conversation_count = static_cast<int>(parse_double(row[8], "firms.csv"));
    f.us_only_eligible = to_lower(row[9]) == "true";
    firm_index[f.firm_id] = catalog.firms.size();
    catalog.firms.push_back(std::move(f));
  }

  const std::vector<std::vector<std::string>> investor_rows =
      parse_csv(read_file((fs::path(dir) / "investors.csv").string()));
  for (std::size_t i = 1; i < investor_rows.size(); ++i) {
    const auto& row = investor_rows[i];
    if (row.size() != 8) throw InvalidInput("investors.csv: expected 8 columns");
    InvestorRecord inv;
    inv.investor_id = row[0];
    inv.first_name = row[1];
    inv.last_name = row[2];
    inv.firm_id = row[3];
    inv.featured = to_lower(row[4]) == "true";
    inv.verified = to_lower(row[5]) == "true";
    for (const std::string& t : split_list(row[6])) inv.topics.insert(t);
    inv.industries = require_industries(split_list(row[7]), "investor " + inv.investor_id);
    auto it = firm_index.find(inv.firm_id);
    if (it == firm_index.end()) {
      throw InvalidInput("investors.csv: investor " + inv.investor_id +
                         " belongs to unknown firm " + inv.firm_id);
    }
    FirmRecord& firm = catalog.firms[it->second];
    if (inv.featured) ++firm.featured_investor_count;
    if (inv.verified) ++firm.verified_investor_count;
    catalog.topic_universe.insert(inv.topics.begin(), inv.topics.end());
    firm.investors.push_back(std::move(inv));
  }
  return catalog;
}

std::string write_ground_truth(const GroundTruth& truth) {
  json j;
  json communities = json::object();
  for (const auto& [node, block] : truth.planted_community) communities[node] = block;
  j["planted_community"] = communities;
  json coefs = json::object();
  for (const auto& [metric, coef] : truth.planted_coefficients) coefs[metric] = coef;
  j["planted_coefficients"] = coefs;
  j["planted_intercept"] = truth.planted_intercept;
  json scores = json::object();
  for (const auto& [node, score] : truth.planted_scores) scores[node] = score;
  j["planted_scores"] = scores;
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::vector<std::string>> rows_with_columns(const std::string& text,
                                                        std::size_t n,
                                                        const char* context) {
  std::vector<std::vector<std::string>> rows = parse_csv(text);
  if (rows.empty()) throw InvalidInput(std::string(context) + ": empty file");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw InvalidInput(std::string(context) + ": expected " + std::to_string(n) +
                         " columns");
    }
    out.push_back(rows[i]);
  }
  return out;
}

}  // namespace

std::vector<Investment> read_investments_csv(const std::string& text) {
  std::vector<Investment> out;
  for (const auto& row : rows_with_columns(text, 2, "investments csv")) {
    out.push_back({row[0], row[1]});
  }
  return out;
}

std::vector<CoFounding> read_cofoundings_csv(const std::string& text) {
  std::vector<CoFounding> out;
  for (const auto& row : rows_with_columns(text, 2, "cofoundings csv")) {
    out.push_back({row[0], row[1]});
  }
  return out;
}

std::vector<CoInvesting> read_coinvestings_csv(const std::string& text) {
  std::vector<CoInvesting> out;
  for (const auto& row : rows_with_columns(text, 2, "coinvestings csv")) {
    out.push_back({row[0], row[1]});
  }
  return out;
}

std::map<NodeId, NodeId> read_identity_csv(const std::string& text) {
  std::map<NodeId, NodeId> out;
  for (const auto& row : rows_with_columns(text, 2, "identity csv")) {
    if (!out.emplace(row[0], normalize_address(row[1])).second) {
      throw InvalidInput("identity csv: duplicate person id " + row[0]);
    }
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_started = false;

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        row_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || !field.empty()) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
        }
        row_started = false;
        break;
      default:
        field += c;
        row_started = true;
        break;
    }
  }
  if (row_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace fundgraph::files
