// Copyright 2026 The Synthweb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthweb/prose.hpp"

#include <array>
#include <vector>

#include "synthweb/text.hpp"

namespace synthweb::prose {

namespace {

constexpr std::string_view kNouns =
    "budgets contractors regulators residents engineers analysts auditors councils ministries "
    "agencies utilities lenders insurers vendors suppliers operators planners surveyors "
    "inspectors trustees stakeholders advocates unions landlords tenants farmers growers "
    "shippers carriers dispatchers technicians clinicians researchers economists statisticians "
    "journalists commentators ratepayers taxpayers commuters volunteers coordinators "
    "negotiators mediators consultants integrators installers manufacturers retailers "
    "wholesalers brokers underwriters assessors estimators modelers forecasters "
    "timelines schedules milestones deadlines targets benchmarks thresholds ceilings quotas "
    "allowances exemptions waivers permits licenses easements leases contracts tenders bids "
    "proposals amendments provisions clauses riders mandates directives guidelines protocols "
    "standards specifications frameworks roadmaps blueprints inventories registries ledgers "
    "dashboards audits reviews hearings consultations briefings workshops pilots trials "
    "rollouts expansions upgrades retrofits overhauls repairs inspections deployments "
    "installations connections interconnections substations depots terminals warehouses "
    "corridors junctions crossings bridges tunnels pipelines reservoirs culverts levees "
    "embankments wetlands estuaries floodplains watersheds aquifers orchards vineyards "
    "pastures meadows ridges valleys plateaus shorelines harbors marinas piers wharves "
    "neighborhoods districts precincts boroughs suburbs townships villages hamlets "
    "campuses clinics pharmacies laboratories workshops studios foundries mills refineries "
    "smelters kilns furnaces turbines inverters transformers batteries chargers meters "
    "sensors cameras beacons antennas towers masts cables conduits ducts valves pumps "
    "compressors boilers chillers heaters radiators vents filters membranes coatings "
    "sealants adhesives fasteners girders beams trusses joists rafters shingles panels "
    "tiles bricks blocks slabs footings foundations scaffolds cranes hoists forklifts "
    "trucks vans trailers barges ferries tugboats locomotives railcars trams buses "
    "bicycles scooters drones satellites servers routers switches racks datacenters "
    "algorithms models simulations forecasts estimates projections scenarios assumptions "
    "uncertainties tradeoffs incentives penalties subsidies rebates credits grants loans "
    "bonds levies tariffs fees surcharges dividends revenues margins deficits surpluses "
    "reserves contingencies liabilities obligations guarantees warranties disputes "
    "grievances objections petitions referendums ballots mandates coalitions caucuses "
    "committees panels boards commissions tribunals inquiries investigations findings "
    "recommendations rebuttals clarifications corrections disclosures filings notices "
    "bulletins memoranda transcripts minutes agendas newsletters pamphlets brochures "
    "surveys questionnaires interviews testimonies anecdotes rumors narratives debates "
    "controversies headlines editorials columns podcasts livestreams forums threads";

constexpr std::string_view kAdjectives =
    "ambitious cautious pragmatic skeptical optimistic pessimistic incremental sweeping "
    "modest substantial marginal significant negligible considerable unexpected anticipated "
    "delayed accelerated stalled renewed revised amended provisional preliminary definitive "
    "tentative contested disputed undisputed uneven consistent erratic volatile stable "
    "resilient fragile robust brittle flexible rigid transparent opaque accountable "
    "independent affiliated regional municipal federal provincial statewide nationwide "
    "coastal inland rural urban suburban metropolitan industrial agricultural residential "
    "commercial institutional academic technical administrative procedural statutory "
    "regulatory voluntary mandatory optional experimental established emerging legacy "
    "outdated modern refurbished aging durable temporary permanent seasonal quarterly "
    "annual biennial monthly weekly overnight gradual abrupt steady sporadic frequent "
    "rare routine exceptional unprecedented familiar novel peculiar curious notable "
    "obscure prominent overlooked underfunded overextended understaffed oversubscribed "
    "undersubscribed congested crowded sparse dense compact sprawling narrow broad "
    "shallow deep lengthy brief detailed vague granular aggregate localized centralized "
    "decentralized fragmented coordinated disjointed collaborative adversarial bipartisan "
    "partisan neutral vocal quiet hesitant eager reluctant determined divided unified "
    "costly affordable efficient wasteful lean bloated generous stingy lucrative "
    "unprofitable solvent insolvent leveraged cautious hurried careful thorough hasty "
    "meticulous sloppy rigorous lax stringent lenient";

constexpr std::string_view kVerbs =
    "reshaped delayed accelerated complicated simplified postponed revived expanded "
    "narrowed broadened tightened loosened redirected reorganized restructured streamlined "
    "consolidated fragmented absorbed displaced reinforced weakened undermined bolstered "
    "stabilized unsettled clarified obscured highlighted downplayed questioned endorsed "
    "challenged defended scrutinized overlooked revisited reconsidered rejected approved "
    "ratified shelved financed underwrote subsidized taxed audited inspected monitored "
    "tracked measured estimated projected forecast recalculated recalibrated adjusted "
    "amended drafted negotiated brokered mediated arbitrated settled litigated appealed "
    "overturned upheld suspended reinstated relaunched rebranded repackaged marketed "
    "promoted publicized documented archived catalogued indexed surveyed mapped charted "
    "modeled simulated prototyped tested piloted deployed installed retrofitted upgraded "
    "replaced dismantled decommissioned repurposed converted electrified insulated "
    "weatherized dredged excavated paved resurfaced rerouted bypassed connected "
    "interconnected integrated synchronized automated digitized outsourced insourced "
    "staffed trained recruited furloughed relocated merged split absorbed spun renamed "
    "reassigned prioritized deprioritized sequenced staggered bundled unbundled priced "
    "repriced discounted capped indexed pegged hedged insured reinsured";

constexpr std::string_view kAdverbs =
    "quietly abruptly gradually steadily sharply modestly markedly noticeably slowly "
    "quickly cautiously openly privately formally informally tentatively decisively "
    "repeatedly occasionally routinely rarely unexpectedly predictably reportedly "
    "ostensibly largely partly mostly barely nearly roughly broadly narrowly unevenly "
    "consistently erratically reluctantly eagerly hastily carefully thoroughly briefly "
    "temporarily permanently jointly separately locally regionally nationally initially "
    "eventually subsequently previously recently lately meanwhile notably arguably "
    "understandably surprisingly";

constexpr std::string_view kReportVerbs =
    "noted argued suggested observed cautioned warned conceded insisted maintained "
    "acknowledged emphasized stressed contended asserted remarked indicated";

constexpr std::string_view kFirstNames =
    "Lena Marcus Priya Tomas Ingrid Rafael Noor Elliot Simone Dmitri Amara Kenji Odile "
    "Farid Helena Joaquin Mireille Tobias Anouk Emeka Sunniva Caspian Leticia Bruno Yara "
    "Matthias Ines Kwame Rosalind Aurelio";

constexpr std::string_view kSurnames =
    "Okafor Lindqvist Varga Castellanos Whitcombe Haldane Nakamura Brennan Osei Falkner "
    "Delacroix Szabo Ferreira Ashdown Kowalczyk Marchetti Abernathy Rasmussen Quintero "
    "Holloway Adeyemi Valcourt Strand Ibsen Carrow Mendel Petrakis Lowell Ardent Sorensen";

constexpr std::string_view kOrgWords =
    "Policy Lab|Research Council|Institute|Observatory|Analytics Group|Foundation|"
    "Center for Public Infrastructure|Standards Bureau|Audit Collective|Data Trust";

constexpr std::string_view kNamePrefixes =
    "Helios Northwind Cascadia Meridian Aurora Granite Bluewater Ridgeline Solstice Harborline "
    "Pinecrest Redstone Silverline Tidewater Summitview Evergreen Ironwood Lakeshore Crescent "
    "Westfield Highmoor Stonebridge Clearwater Brightwater Foxglove Amberfield Copperleaf "
    "Riverbend Oakmont Windward Larchmont Easton Fairhaven Greenhollow Maplecrest Thornfield "
    "Kingsley Ashgrove Bramblewood Driftwood Elmhurst Fernhill Goldcrest Hawthorne Ivywood "
    "Juniperus Kestrelby Lindenwood Moorgate Nettlefield Orchard Paxton Quarryhill Rosewood "
    "Saltbrook Tamarack Umberly Valehaven Willowmere Yarrow Zephyr Alderbrook Birchfield "
    "Cobalt Dunhollow Eastwick Falconer Glenwood Halcyon Islington Jasperton Kilbride";

constexpr std::string_view kEntityKinds =
    "Initiative Compact Program Authority Consortium Partnership Alliance Project Cooperative "
    "Trust Network Collaborative";

constexpr std::string_view kDomainWords =
    "daily ledger signal wire post beacon review chronicle insight herald courier gazette "
    "bulletin digest monitor observer tribune sentinel civic metro policy forum voice watch "
    "lens pulse record report journal notes field desk circuit compass harbor summit "
    "open clear true hidden deep inside frontier patriot awake unfiltered candid plain "
    "local region atlas index";

constexpr std::string_view kEventNouns =
    "pilot launch|funding review|public consultation|pricing revision|safety audit|"
    "phase two expansion|charter amendment|procurement freeze|interoperability trial|"
    "oversight hearing|leadership change|capacity upgrade|compliance deadline|"
    "data disclosure|emergency suspension|partnership agreement";

constexpr std::string_view kSubtopicStems =
    "financing|permitting|workforce training|procurement|public engagement|maintenance|"
    "data reporting|equity targets|regional coordination|pricing|liability rules|"
    "supply chains|grid integration|emergency planning|monitoring|enforcement";

std::vector<std::string_view> split_bank(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < s.size()) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) pos = s.size();
    auto word = s.substr(start, pos - start);
    if (!word.empty()) out.push_back(word);
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> place_bank() {
  static const std::string kJoined =
      "Brackenridge|Ashford|Kestrel Bay|Millhaven|Corrigan Falls|Draywick|Elmstead|Fenmoor|"
      "Glenholm|Hartwell|Ivybridge|Juniper Flats|Kingsmere|Larkspur Valley|Marrowgate|"
      "Northcote|Oakhurst|Pembury|Quillon|Ravensford|Saltmarsh|Thornbury|Upperfield|Vantry|"
      "Westmoor|Yarrowby|Zennor Point|Alderwick|Birchmoor|Caldermouth|Dunmore|Edgecliff|"
      "Farrowdale|Greystoke|Hollowmere|Inverley|Jarrowfield|Kettering Cross|Lindenbrook|"
      "Mossley|Netherby|Orrinshaw|Pinegate|Redfern|Stillwater|Tarrant Hills|Underbridge|"
      "Wexcombe";
  return split_bank(kJoined, '|');
}

const std::vector<std::string_view>& bank_storage(Bank b) {
  static const std::array<std::vector<std::string_view>, 14> kBanks = {
      split_bank(kNouns, ' '),        split_bank(kAdjectives, ' '),
      split_bank(kVerbs, ' '),        split_bank(kAdverbs, ' '),
      place_bank(),                   split_bank(kReportVerbs, ' '),
      split_bank(kFirstNames, ' '),   split_bank(kSurnames, ' '),
      split_bank(kOrgWords, '|'),     split_bank(kNamePrefixes, ' '),
      split_bank(kEntityKinds, ' '),  split_bank(kDomainWords, ' '),
      split_bank(kEventNouns, '|'),   split_bank(kSubtopicStems, '|'),
  };
  return kBanks[static_cast<std::size_t>(b)];
}

}  // namespace

std::span<const std::string_view> bank(Bank b) {
  const auto& v = bank_storage(b);
  return {v.data(), v.size()};
}

std::string_view WordPicker::pick(Bank b) {
  const auto words = bank(b);
  if (rng_.bernoulli(reuse_)) return words[rng_.below(words.size())];
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto w = words[rng_.below(words.size())];
    if (used_.insert(w).second) return w;
  }
  return words[rng_.below(words.size())];
}

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 32);
  return out;
}

std::string filler_sentence(WordPicker& w, Rng& rng, std::string_view hint) {
  using B = Bank;
  const std::string h(hint);
  switch (rng.below(12)) {
    case 0:
      return capitalize(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdverb)) +
             " across " + std::string(w.pick(B::kPlace)) + ", and " +
             std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " older " + std::string(w.pick(B::kNoun)) + ".";
    case 1:
      return capitalize(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + " in " +
             std::string(w.pick(B::kPlace)) + " while " + std::string(w.pick(B::kAdjective)) +
             " " + std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kAdverb)) + ".";
    case 2:
      return "Observers " + std::string(w.pick(B::kReportVerb)) + " that " +
             std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdjective)) + " " +
             std::string(w.pick(B::kNoun)) + " near " + std::string(w.pick(B::kPlace)) + ".";
    case 3:
      return "Several " + std::string(w.pick(B::kAdjective)) + " " +
             std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kNoun)) + " after " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdverb)) + ".";
    case 4:
      return "Meanwhile, " + std::string(w.pick(B::kAdjective)) + " " +
             std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kNoun)) + " and " + std::string(w.pick(B::kNoun)) +
             " around " + std::string(w.pick(B::kPlace)) + ".";
    case 5:
      return "Those tracking " + h + " " + std::string(w.pick(B::kReportVerb)) + " that " +
             std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + ".";
    case 6:
      return capitalize(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdverb)) + ", and " +
             std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) +
             " along the way.";
    case 7:
      return "By most accounts, " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdjective)) + " " +
             std::string(w.pick(B::kNoun)) + " without " + std::string(w.pick(B::kAdjective)) +
             " " + std::string(w.pick(B::kNoun)) + ".";
    case 8:
      return "Critics of " + h + " " + std::string(w.pick(B::kReportVerb)) + " that " +
             std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdverb)) + ".";
    case 9:
      return "In " + std::string(w.pick(B::kPlace)) + ", " + std::string(w.pick(B::kAdjective)) +
             " " + std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) + " " +
             std::string(w.pick(B::kNoun)) + ", " + std::string(w.pick(B::kNoun)) + ", and " +
             std::string(w.pick(B::kNoun)) + ".";
    case 10:
      return capitalize(w.pick(B::kAdverb)) + ", " + std::string(w.pick(B::kNoun)) + " " +
             std::string(w.pick(B::kVerb)) + " " + std::string(w.pick(B::kAdjective)) + " " +
             std::string(w.pick(B::kNoun)) + " tied to " + h + ".";
    default:
      return "Few " + std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) +
             " " + std::string(w.pick(B::kAdjective)) + " " + std::string(w.pick(B::kNoun)) +
             ", yet " + std::string(w.pick(B::kNoun)) + " " + std::string(w.pick(B::kVerb)) +
             " " + std::string(w.pick(B::kAdverb)) + ".";
  }
}

std::string fabricated_expert(Rng& rng) {
  const auto first = bank(Bank::kFirstName);
  const auto last = bank(Bank::kSurname);
  const auto org = bank(Bank::kOrgWord);
  const auto prefix = bank(Bank::kNamePrefix);
  return "Dr. " + std::string(first[rng.below(first.size())]) + " " +
         std::string(last[rng.below(last.size())]) + " of the " +
         std::string(prefix[rng.below(prefix.size())]) + " " +
         std::string(org[rng.below(org.size())]);
}

std::string fabricated_study(Rng& rng, std::string_view topic_word) {
  static constexpr std::array<std::string_view, 8> kKinds = {
      "Audit", "Field Study", "Impact Assessment", "Benchmark Survey", "Technical Review",
      "Performance Census", "Cost Study", "Compliance Review"};
  const auto last = bank(Bank::kSurname);
  const int year = 2022 + static_cast<int>(rng.below(3));
  return "the " + std::to_string(year) + " " + std::string(last[rng.below(last.size())]) + " " +
         capitalize(topic_word) + " " + std::string(kKinds[rng.below(kKinds.size())]);
}

std::string fabricated_institute(Rng& rng) {
  const auto prefix = bank(Bank::kNamePrefix);
  const auto org = bank(Bank::kOrgWord);
  return std::string(prefix[rng.below(prefix.size())]) + " " +
         std::string(org[rng.below(org.size())]);
}

}  // namespace synthweb::prose
