#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fundgraph {

// Stage a fund first invests at, in platform order (used for column sorting).
enum class FundingStage { Accelerator, Angel, PreSeed, Seed, SeriesA, SeriesB, Venture };

std::string to_string(FundingStage s);
std::optional<FundingStage> parse_funding_stage(const std::string& name);

// The fixed industry tag universe; catalog loads reject anything else.
const std::vector<std::string>& industry_universe();
bool is_known_industry(const std::string& tag);

struct InvestorRecord {
  std::string investor_id;
  std::string first_name;
  std::string last_name;
  std::string firm_id;
  bool featured = false;   // hand-picked high-quality investor
  bool verified = false;   // completed their own profile
  std::set<std::string> topics;
  std::set<std::string> industries;
};

struct FirmRecord {
  std::string firm_id;
  std::string name;
  std::string hq_city;
  std::vector<std::string> office_cities;
  std::set<FundingStage> stages;
  std::set<std::string> industries;
  std::vector<std::string> investments;  // company ids
  int investments_last_year = 0;         // "pace"
  int featured_investor_count = 0;
  int verified_investor_count = 0;
  int conversation_count = 0;
  bool us_only_eligible = false;
  std::vector<InvestorRecord> investors;

  std::vector<std::string> all_cities() const;  // hq + offices, deduplicated
};

struct CompanyRecord {
  std::string company_id;
  std::string name;
  std::set<std::string> industries;
  std::string city;  // a startup is affiliated with a single city
  std::vector<std::string> investor_firm_ids;
};

struct FounderContext {
  std::set<std::string> industries;
  std::string city;
};

struct FilterQuery {
  std::set<FundingStage> stages;            // OR
  std::set<std::string> industries;
  bool industries_and = false;              // OR unless toggled
  std::set<std::string> cities;
  bool cities_invested_in = false;          // match invested-startup cities instead
  std::set<std::string> related_companies;  // company ids
  bool related_similar = false;             // match industry-similar companies instead
  std::set<std::string> topics;             // OR
  bool us_only = false;
  std::string search;

  bool empty() const;
};

struct Catalog {
  std::vector<FirmRecord> firms;
  std::map<std::string, CompanyRecord> companies;
  std::set<std::string> topic_universe;  // topics observed on any investor
};

// Greedy cover: repeatedly pick the globally most frequent industry (ties by
// name) until every company intersects the selection. Returns pick order.
std::vector<std::string> covering_industries(const std::vector<CompanyRecord>& companies);

// Stages that appear in at least half of the fund's past rounds.
std::set<FundingStage> infer_stages(const std::vector<FundingStage>& round_stages);

// Topics mentioned at least 5% of the time.
std::set<std::string> associate_topics(const std::map<std::string, double>& mention_fractions);

// Cities with at least `threshold` venture firm offices, counting each firm's
// offices once per city.
std::set<std::string> hub_cities(const std::vector<FirmRecord>& firms, int threshold = 50);

// Name search first (firm name plus investor first/last names), then each
// present filter narrows the set, then rank_firms orders the survivors.
std::vector<const FirmRecord*> filter_and_search(const Catalog& catalog,
                                                 const FounderContext* founder,
                                                 const FilterQuery& query);

// Six tie-break metrics, lexicographic descending; a metric whose filter is
// absent and has no profile fallback is skipped. Final tie: firm name.
void rank_firms(std::vector<const FirmRecord*>& firms, const FounderContext* founder,
                const FilterQuery& query);

// Best-matching investor at a firm for a name search or topic filter.
const InvestorRecord* best_partner_match(const FirmRecord& firm, const FilterQuery& query);

// Column-sort override: replaces the custom rank with a column's natural
// order (firm and location lexicographic, pace numeric descending, stage by
// the platform stage order of the firm's earliest stage).
enum class SortColumn { Firm, Location, Pace, Stage };
std::optional<SortColumn> parse_sort_column(const std::string& name);
void sort_by_column(std::vector<const FirmRecord*>& firms, SortColumn column);

// Strict-majority point partner; nullopt on tie, empty, or all-zero counts.
std::optional<std::string> infer_point_partner(const std::map<std::string, int>& mention_counts);

std::size_t levenshtein(std::string_view a, std::string_view b);

// Case-insensitive nearest canonical field per header (distance <= 3),
// one-to-one, assigned greedily by ascending distance.
std::map<std::size_t, std::string> guess_column_mapping(
    const std::vector<std::string>& headers, const std::vector<std::string>& canonical);

}  // namespace fundgraph
