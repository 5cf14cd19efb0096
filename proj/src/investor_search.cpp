#include "fundgraph/investor_search.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

std::string to_string(FundingStage s) {
  switch (s) {
    case FundingStage::Accelerator: return "Accelerator";
    case FundingStage::Angel: return "Angel";
    case FundingStage::PreSeed: return "Pre-Seed";
    case FundingStage::Seed: return "Seed";
    case FundingStage::SeriesA: return "Series A";
    case FundingStage::SeriesB: return "Series B";
    case FundingStage::Venture: return "Venture";
  }
  return "Seed";
}

std::optional<FundingStage> parse_funding_stage(const std::string& name) {
  static const std::vector<std::pair<std::string, FundingStage>> table = {
      {"accelerator", FundingStage::Accelerator},
      {"angel", FundingStage::Angel},
      {"pre-seed", FundingStage::PreSeed},
      {"preseed", FundingStage::PreSeed},
      {"seed", FundingStage::Seed},
      {"series a", FundingStage::SeriesA},
      {"series b", FundingStage::SeriesB},
      {"venture", FundingStage::Venture},
  };
  const std::string key = to_lower(trim(name));
  for (const auto& [n, s] : table) {
    if (n == key) return s;
  }
  return std::nullopt;
}

const std::vector<std::string>& industry_universe() {
  static const std::vector<std::string> tags = {
      "AR/VR",      "Blockchain",   "Consumer",     "Enterprise", "E-Commerce",
      "Delivery",   "SaaS",         "AI/ML",        "Robotics",   "Food & Drink",
      "Mobile",     "Healthcare",   "Media",        "Finance",    "Education",
      "Life Sci.",  "Retail",       "Real Estate",  "Travel",     "Automotive",
      "Sports",     "Clean Tech",   "IoT",          "Social",     "Energy",
      "Hardware",   "Gaming",       "Space",        "Big Data",   "Transportation",
      "Marketplace", "Security",    "Government",   "Legal",
  };
  return tags;
}

bool is_known_industry(const std::string& tag) {
  const auto& u = industry_universe();
  return std::find(u.begin(), u.end(), tag) != u.end();
}

std::vector<std::string> FirmRecord::all_cities() const {
  std::vector<std::string> cities;
  std::set<std::string> seen;
  if (!hq_city.empty() && seen.insert(hq_city).second) cities.push_back(hq_city);
  for (const std::string& c : office_cities) {
    if (!c.empty() && seen.insert(c).second) cities.push_back(c);
  }
  return cities;
}

bool FilterQuery::empty() const {
  return stages.empty() && industries.empty() && cities.empty() &&
         related_companies.empty() && topics.empty() && !us_only && search.empty();
}

std::vector<std::string> covering_industries(const std::vector<CompanyRecord>& companies) {
  if (companies.empty()) return {};
  std::map<std::string, std::size_t> frequency;
  for (const CompanyRecord& c : companies) {
    if (c.industries.empty()) {
      throw InvalidInput("company without industries: " + c.company_id);
    }
    for (const std::string& tag : c.industries) ++frequency[tag];
  }
  // frequency desc, name asc
  std::vector<std::string> options;
  for (const auto& [tag, count] : frequency) options.push_back(tag);
  std::sort(options.begin(), options.end(), [&](const std::string& a, const std::string& b) {
    if (frequency.at(a) != frequency.at(b)) return frequency.at(a) > frequency.at(b);
    return a < b;
  });

  std::vector<std::string> selected;
  std::set<std::string> selected_set;
  std::size_t covered = 0;
  std::vector<bool> done(companies.size(), false);
  for (const std::string& tag : options) {
    if (covered == companies.size()) break;
    selected.push_back(tag);
    selected_set.insert(tag);
    for (std::size_t i = 0; i < companies.size(); ++i) {
      if (!done[i] && companies[i].industries.count(tag)) {
        done[i] = true;
        ++covered;
      }
    }
  }
  return selected;
}

std::set<FundingStage> infer_stages(const std::vector<FundingStage>& round_stages) {
  std::set<FundingStage> result;
  if (round_stages.empty()) return result;
  std::map<FundingStage, std::size_t> counts;
  for (FundingStage s : round_stages) ++counts[s];
  for (const auto& [stage, count] : counts) {
    if (2 * count >= round_stages.size()) result.insert(stage);
  }
  return result;
}

std::set<std::string> associate_topics(const std::map<std::string, double>& mention_fractions) {
  std::set<std::string> result;
  for (const auto& [topic, fraction] : mention_fractions) {
    if (fraction < 0.0 || fraction > 1.0) {
      throw InvalidInput("mention fraction out of [0, 1] for topic " + topic);
    }
    if (fraction >= 0.05) result.insert(topic);
  }
  return result;
}

std::set<std::string> hub_cities(const std::vector<FirmRecord>& firms, int threshold) {
  std::map<std::string, int> offices;
  for (const FirmRecord& f : firms) {
    for (const std::string& city : f.all_cities()) ++offices[city];
  }
  std::set<std::string> hubs;
  for (const auto& [city, count] : offices) {
    if (count >= threshold) hubs.insert(city);
  }
  return hubs;
}

namespace {

bool set_intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const std::string& x : small) {
    if (large.count(x)) return true;
  }
  return false;
}

std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (const std::string& x : small) n += large.count(x);
  return n;
}

// Minimum token length for the investor-name branch; single letters over-match.
constexpr std::size_t kMinNameToken = 2;

struct NameQuery {
  std::string full;
  std::string first;
  std::string last;
};

NameQuery parse_search(const std::string& search) {
  NameQuery q;
  q.full = trim(search);
  const std::vector<std::string> tokens = split(q.full, ' ');
  std::vector<std::string> words;
  for (const std::string& t : tokens) {
    if (!trim(t).empty()) words.push_back(trim(t));
  }
  if (words.size() >= 2) {
    q.first = words.front();
    q.last = words.back();
  } else if (words.size() == 1) {
    // one token searches both name fields
    q.first = words[0];
    q.last = words[0];
  }
  return q;
}

bool investor_matches_name(const InvestorRecord& inv, const NameQuery& q) {
  const bool first_ok =
      q.first.size() >= kMinNameToken && contains_ci(inv.first_name, q.first);
  const bool last_ok =
      q.last.size() >= kMinNameToken && contains_ci(inv.last_name, q.last);
  return first_ok || last_ok;
}

bool company_city_match(const Catalog& catalog, const FirmRecord& firm,
                        const std::set<std::string>& cities) {
  for (const std::string& company_id : firm.investments) {
    auto it = catalog.companies.find(company_id);
    if (it != catalog.companies.end() && cities.count(it->second.city)) return true;
  }
  return false;
}

bool related_companies_match(const Catalog& catalog, const FirmRecord& firm,
                             const FilterQuery& query) {
  if (!query.related_similar) {
    for (const std::string& company_id : firm.investments) {
      if (query.related_companies.count(company_id)) return true;
    }
    return false;
  }
  // similar = nonempty industry intersection with any company in the set
  std::set<std::string> wanted;
  for (const std::string& company_id : query.related_companies) {
    const CompanyRecord& c = catalog.companies.at(company_id);
    wanted.insert(c.industries.begin(), c.industries.end());
  }
  for (const std::string& company_id : firm.investments) {
    auto it = catalog.companies.find(company_id);
    if (it != catalog.companies.end() && set_intersects(it->second.industries, wanted)) {
      return true;
    }
  }
  return false;
}

bool firm_passes_filters(const Catalog& catalog, const FirmRecord& firm,
                         const FilterQuery& query) {
  if (!query.stages.empty()) {
    bool any = false;
    for (FundingStage s : query.stages) any = any || firm.stages.count(s);
    if (!any) return false;
  }
  if (!query.industries.empty()) {
    if (query.industries_and) {
      if (intersection_size(firm.industries, query.industries) != query.industries.size()) {
        return false;
      }
    } else if (!set_intersects(firm.industries, query.industries)) {
      return false;
    }
  }
  if (!query.cities.empty()) {
    if (query.cities_invested_in) {
      if (!company_city_match(catalog, firm, query.cities)) return false;
    } else {
      bool any = false;
      for (const std::string& city : firm.all_cities()) any = any || query.cities.count(city);
      if (!any) return false;
    }
  }
  if (!query.related_companies.empty() && !related_companies_match(catalog, firm, query)) {
    return false;
  }
  if (!query.topics.empty()) {
    bool any = false;
    for (const InvestorRecord& inv : firm.investors) {
      if (set_intersects(inv.topics, query.topics)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  if (query.us_only && !firm.us_only_eligible) return false;
  return true;
}

void validate_query(const Catalog& catalog, const FilterQuery& query) {
  for (const std::string& company_id : query.related_companies) {
    if (!catalog.companies.count(company_id)) {
      throw UnknownCompanyId("unknown company in query: " + company_id);
    }
  }
  for (const std::string& topic : query.topics) {
    if (!catalog.topic_universe.count(topic)) {
      throw UnknownTopicId("unknown topic in query: " + topic);
    }
  }
}

}  // namespace

std::vector<const FirmRecord*> filter_and_search(const Catalog& catalog,
                                                 const FounderContext* founder,
                                                 const FilterQuery& query) {
  validate_query(catalog, query);

  std::vector<const FirmRecord*> firms;
  firms.reserve(catalog.firms.size());
  for (const FirmRecord& f : catalog.firms) firms.push_back(&f);

  if (!trim(query.search).empty()) {
    const NameQuery name = parse_search(query.search);
    std::vector<const FirmRecord*> matched;
    for (const FirmRecord* f : firms) {
      bool ok = contains_ci(f->name, name.full);
      for (std::size_t i = 0; !ok && i < f->investors.size(); ++i) {
        ok = investor_matches_name(f->investors[i], name);
      }
      if (ok) matched.push_back(f);
    }
    firms = std::move(matched);
  }

  std::vector<const FirmRecord*> result;
  for (const FirmRecord* f : firms) {
    if (firm_passes_filters(catalog, *f, query)) result.push_back(f);
  }
  rank_firms(result, founder, query);
  return result;
}

void rank_firms(std::vector<const FirmRecord*>& firms, const FounderContext* founder,
                const FilterQuery& query) {
  const bool use_topics = !query.topics.empty();
  const std::set<std::string>* industry_ref = nullptr;
  if (!query.industries.empty()) {
    industry_ref = &query.industries;
  } else if (founder && !founder->industries.empty()) {
    industry_ref = &founder->industries;
  }
  std::set<std::string> city_ref;
  if (!query.cities.empty()) {
    city_ref = query.cities;
  } else if (founder && !founder->city.empty()) {
    city_ref.insert(founder->city);
  }

  const auto key = [&](const FirmRecord* f) {
    std::array<long long, 6> k{};
    if (use_topics) {
      long long matching = 0;
      for (const InvestorRecord& inv : f->investors) {
        if (set_intersects(inv.topics, query.topics)) ++matching;
      }
      k[0] = matching;
    }
    k[1] = f->featured_investor_count;
    if (industry_ref) {
      k[2] = static_cast<long long>(intersection_size(f->industries, *industry_ref));
    }
    if (!city_ref.empty()) {
      long long overlap = 0;
      for (const std::string& city : f->all_cities()) overlap += city_ref.count(city);
      k[3] = overlap;
    }
    k[4] = f->conversation_count;
    k[5] = f->verified_investor_count;
    return k;
  };

  std::map<const FirmRecord*, std::array<long long, 6>> keys;
  for (const FirmRecord* f : firms) keys[f] = key(f);
  std::stable_sort(firms.begin(), firms.end(),
                   [&](const FirmRecord* a, const FirmRecord* b) {
                     const auto& ka = keys.at(a);
                     const auto& kb = keys.at(b);
                     if (ka != kb) return ka > kb;
                     return a->name < b->name;
                   });
}

const InvestorRecord* best_partner_match(const FirmRecord& firm, const FilterQuery& query) {
  const bool has_search = !trim(query.search).empty();
  const bool has_topics = !query.topics.empty();
  if (!has_search && !has_topics) return nullptr;

  const NameQuery name = has_search ? parse_search(query.search) : NameQuery{};
  const InvestorRecord* best = nullptr;
  // (name exactness: 2 exact, 1 substring, 0 none; then topic overlap)
  std::pair<int, std::size_t> best_key{0, 0};
  const auto sort_name = [](const InvestorRecord& inv) {
    return to_lower(inv.last_name) + " " + to_lower(inv.first_name);
  };
  for (const InvestorRecord& inv : firm.investors) {
    int exactness = 0;
    if (has_search && investor_matches_name(inv, name)) {
      const bool exact = to_lower(inv.first_name) == to_lower(name.first) ||
                         to_lower(inv.last_name) == to_lower(name.last);
      exactness = exact ? 2 : 1;
    }
    const std::size_t overlap =
        has_topics ? intersection_size(inv.topics, query.topics) : 0;
    if (exactness == 0 && overlap == 0) continue;
    const std::pair<int, std::size_t> key{exactness, overlap};
    if (!best || key > best_key || (key == best_key && sort_name(inv) < sort_name(*best))) {
      best = &inv;
      best_key = key;
    }
  }
  return best;
}

std::optional<SortColumn> parse_sort_column(const std::string& name) {
  const std::string key = to_lower(trim(name));
  if (key == "firm") return SortColumn::Firm;
  if (key == "location") return SortColumn::Location;
  if (key == "pace") return SortColumn::Pace;
  if (key == "stage") return SortColumn::Stage;
  return std::nullopt;
}

void sort_by_column(std::vector<const FirmRecord*>& firms, SortColumn column) {
  const auto earliest_stage = [](const FirmRecord* f) {
    return f->stages.empty() ? static_cast<int>(FundingStage::Venture) + 1
                             : static_cast<int>(*f->stages.begin());
  };
  std::stable_sort(firms.begin(), firms.end(),
                   [&](const FirmRecord* a, const FirmRecord* b) {
                     switch (column) {
                       case SortColumn::Firm:
                         return a->name < b->name;
                       case SortColumn::Location:
                         if (a->hq_city != b->hq_city) return a->hq_city < b->hq_city;
                         return a->name < b->name;
                       case SortColumn::Pace:
                         if (a->investments_last_year != b->investments_last_year) {
                           return a->investments_last_year > b->investments_last_year;
                         }
                         return a->name < b->name;
                       case SortColumn::Stage:
                         if (earliest_stage(a) != earliest_stage(b)) {
                           return earliest_stage(a) < earliest_stage(b);
                         }
                         return a->name < b->name;
                     }
                     return a->name < b->name;
                   });
}

std::optional<std::string> infer_point_partner(const std::map<std::string, int>& mention_counts) {
  std::optional<std::string> best;
  int best_count = 0;
  bool tie = false;
  for (const auto& [investor, count] : mention_counts) {
    if (count < 0) throw InvalidInput("negative mention count for " + investor);
    if (count > best_count) {
      best = investor;
      best_count = count;
      tie = false;
    } else if (count == best_count && count > 0) {
      tie = true;
    }
  }
  if (tie || best_count == 0) return std::nullopt;
  return best;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;
  if (n == 0) return m;
  std::vector<std::size_t> costs(n + 1);
  std::iota(costs.begin(), costs.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    costs[0] = i + 1;
    std::size_t corner = i;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t upper = costs[j + 1];
      if (a[i] == b[j]) {
        costs[j + 1] = corner;
      } else {
        costs[j + 1] = std::min({costs[j], upper, corner}) + 1;
      }
      corner = upper;
    }
  }
  return costs[n];
}

std::map<std::size_t, std::string> guess_column_mapping(
    const std::vector<std::string>& headers, const std::vector<std::string>& canonical) {
  if (headers.empty()) throw InvalidInput("no headers to map");
  constexpr std::size_t kMaxDistance = 3;

  struct Pairing {
    std::size_t distance;
    std::size_t header_index;
    std::size_t canonical_index;
  };
  std::vector<Pairing> pairings;
  for (std::size_t h = 0; h < headers.size(); ++h) {
    const std::string header = to_lower(trim(headers[h]));
    for (std::size_t c = 0; c < canonical.size(); ++c) {
      const std::size_t d = levenshtein(header, to_lower(canonical[c]));
      if (d <= kMaxDistance) pairings.push_back({d, h, c});
    }
  }
  std::sort(pairings.begin(), pairings.end(), [](const Pairing& a, const Pairing& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.header_index != b.header_index) return a.header_index < b.header_index;
    return a.canonical_index < b.canonical_index;
  });

  std::map<std::size_t, std::string> mapping;
  std::set<std::size_t> used_canonical;
  for (const Pairing& p : pairings) {
    if (mapping.count(p.header_index) || used_canonical.count(p.canonical_index)) continue;
    mapping[p.header_index] = canonical[p.canonical_index];
    used_canonical.insert(p.canonical_index);
  }
  return mapping;
}

}  // namespace fundgraph
