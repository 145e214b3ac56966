#pragma once

// Classifier ingestion: occupation/skill triples, the SOC -> ISCO crosswalk
// and the automation-probability table, plus their canonical CSV forms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "skillgraph/csv.hpp"
#include "skillgraph/error.hpp"
#include "skillgraph/format.hpp"
#include "skillgraph/ids.hpp"
#include "skillgraph/ntriples.hpp"

namespace skillgraph {

struct OccupationInfo {
  std::string label;
  Isco4Code isco;

  friend bool operator==(const OccupationInfo&, const OccupationInfo&) = default;
};

/// Occupations, skills and the essential-skill relation. Ordered containers
/// keep every traversal deterministic. Occupations without essential skills
/// have no entry in `essential`.
struct ClassifierStore {
  std::map<OccupationId, OccupationInfo> occupations;
  std::map<SkillId, std::string> skills;
  std::map<OccupationId, std::set<SkillId>> essential;

  const std::set<SkillId>& skills_of(const OccupationId& occupation) const {
    static const std::set<SkillId> kNone;
    auto it = essential.find(occupation);
    return it == essential.end() ? kNone : it->second;
  }

  std::size_t relation_count() const {
    std::size_t n = 0;
    for (const auto& [occ, set] : essential) n += set.size();
    return n;
  }

  /// Throws ConsistencyViolation when a relation references an unknown id.
  void check_invariants() const {
    for (const auto& [occ, set] : essential) {
      if (!occupations.contains(occ))
        throw Error(ErrorKind::ConsistencyViolation,
                    "essential relation for unknown occupation " + occ.str());
      if (set.empty())
        throw Error(ErrorKind::ConsistencyViolation,
                    "empty essential set for " + occ.str());
      for (const auto& skill : set)
        if (!skills.contains(skill))
          throw Error(ErrorKind::ConsistencyViolation,
                      "essential relation to unknown skill " + skill.str());
    }
  }

  friend bool operator==(const ClassifierStore&, const ClassifierStore&) = default;
};

/// Predicate and class IRIs recognized in the triple dump. Defaults follow the
/// ESCO model vocabulary.
struct TripleVocabulary {
  std::string type_predicate = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
  std::string occupation_class = "http://data.europa.eu/esco/model#Occupation";
  std::string skill_class = "http://data.europa.eu/esco/model#Skill";
  std::string pref_label = "http://www.w3.org/2004/02/skos/core#prefLabel";
  std::string essential_skill = "http://data.europa.eu/esco/model#hasEssentialSkill";
  std::string isco_group = "http://data.europa.eu/esco/model#memberOfISCOGroup";
  /// Labels tagged with another language are ignored; untagged labels are
  /// always accepted. Empty accepts every language.
  std::string label_language = "en";

  // Used only when writing canonical triples.
  std::string occupation_base = "http://data.europa.eu/esco/occupation/";
  std::string skill_base = "http://data.europa.eu/esco/skill/";
  std::string isco_base = "http://data.europa.eu/esco/isco/C";
};

enum class DanglingPolicy { WarnAndDrop, Fail };

struct TripleParseOptions {
  TripleVocabulary vocabulary;
  DanglingPolicy dangling = DanglingPolicy::WarnAndDrop;
};

struct TripleParseReport {
  std::size_t lines = 0;
  std::size_t triples = 0;
  std::size_t unrecognized_predicates = 0;
  std::size_t dangling_dropped = 0;
  std::size_t relations_of_dropped_occupations = 0;
  std::size_t invalid_isco_objects = 0;
  std::vector<OccupationId> missing_isco;  // dropped occupations
  std::vector<std::string> warnings;

  void warn(std::string message) {
    constexpr std::size_t kMaxWarnings = 1000;
    if (warnings.size() < kMaxWarnings) warnings.push_back(std::move(message));
  }
};

namespace detail {

/// Last path segment of an IRI, i.e. the part after the final '/' or '#'.
inline std::string local_name(std::string_view iri) {
  auto cut = iri.find_last_of("/#");
  if (cut == std::string_view::npos) return std::string(iri);
  return std::string(iri.substr(cut + 1));
}

inline std::string term_id(const ntriples::Term& t) {
  if (t.kind == ntriples::TermKind::Iri) return local_name(t.value);
  return t.value;
}

}  // namespace detail

/// Streams N-Triples lines into a store. Declarations, labels and ISCO
/// memberships may appear in any order relative to the relations; references
/// are resolved once the whole input has been read.
inline ClassifierStore parse_esco_triples(std::istream& in,
                                          const TripleParseOptions& options = {},
                                          TripleParseReport* report_out = nullptr) {
  const TripleVocabulary& vocab = options.vocabulary;
  TripleParseReport report;

  std::set<std::string> occupation_decls;
  std::set<std::string> skill_decls;
  std::unordered_map<std::string, std::string> labels;
  std::unordered_map<std::string, std::string> isco_of;

  struct Relation {
    std::string occupation;
    std::string skill;
    std::size_t line;
  };
  std::vector<Relation> relations;

  auto keep_label = [&](const std::string& id, std::string label) {
    auto [it, inserted] = labels.try_emplace(id, label);
    if (!inserted && label < it->second) it->second = std::move(label);
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto parsed = ntriples::parse_line(line, lineno);
    if (!parsed) continue;
    ++report.triples;
    const auto& [subject, predicate, object] = *parsed;
    const std::string& pred = predicate.value;

    if (pred == vocab.type_predicate) {
      if (object.kind != ntriples::TermKind::Iri) {
        ++report.unrecognized_predicates;
        continue;
      }
      if (object.value == vocab.occupation_class)
        occupation_decls.insert(detail::term_id(subject));
      else if (object.value == vocab.skill_class)
        skill_decls.insert(detail::term_id(subject));
      else
        ++report.unrecognized_predicates;
    } else if (pred == vocab.pref_label) {
      if (object.kind != ntriples::TermKind::Literal) {
        report.warn("line " + std::to_string(lineno) + ": label is not a literal");
        continue;
      }
      if (!vocab.label_language.empty() && !object.language.empty() &&
          object.language != vocab.label_language)
        continue;
      keep_label(detail::term_id(subject), object.value);
    } else if (pred == vocab.essential_skill) {
      if (object.kind == ntriples::TermKind::Literal)
        throw Error(ErrorKind::MalformedTriple,
                    "essential-skill object must be an IRI", lineno);
      relations.push_back({detail::term_id(subject), detail::term_id(object), lineno});
    } else if (pred == vocab.isco_group) {
      std::string token = object.kind == ntriples::TermKind::Literal
                              ? object.value
                              : detail::local_name(object.value);
      auto digits = token.find_first_of("0123456789");
      auto code = digits == std::string::npos ? std::nullopt
                                              : parse_isco4(std::string_view(token).substr(digits));
      if (!code) {
        ++report.invalid_isco_objects;
        report.warn("line " + std::to_string(lineno) + ": ISCO group '" + token +
                    "' is not a 4-digit code");
        continue;
      }
      auto subject_id = detail::term_id(subject);
      auto [it, inserted] = isco_of.try_emplace(subject_id, code->str());
      if (!inserted && it->second != code->str()) {
        report.warn("occupation " + subject_id + " has several ISCO groups; keeping " +
                    std::min(it->second, code->str()));
        it->second = std::min(it->second, code->str());
      }
    } else {
      ++report.unrecognized_predicates;
    }
  }
  report.lines = lineno;

  ClassifierStore store;
  std::set<std::string> dropped;
  for (const auto& id : occupation_decls) {
    auto isco = isco_of.find(id);
    if (isco == isco_of.end()) {
      dropped.insert(id);
      report.missing_isco.emplace_back(id);
      report.warn(std::string(to_string(ErrorKind::MissingIscoMapping)) + ": occupation " +
                  id + " dropped");
      continue;
    }
    auto label = labels.find(id);
    store.occupations.emplace(
        OccupationId(id),
        OccupationInfo{label == labels.end() ? std::string() : label->second,
                       Isco4Code(isco->second)});
  }
  for (const auto& id : skill_decls) {
    auto label = labels.find(id);
    store.skills.emplace(SkillId(id), label == labels.end() ? std::string() : label->second);
  }

  for (auto& rel : relations) {
    if (dropped.contains(rel.occupation)) {
      ++report.relations_of_dropped_occupations;
      continue;
    }
    bool occ_ok = occupation_decls.contains(rel.occupation);
    bool skill_ok = skill_decls.contains(rel.skill);
    if (!occ_ok || !skill_ok) {
      std::string what = !occ_ok ? "undeclared occupation " + rel.occupation
                                 : "undeclared skill " + rel.skill;
      if (options.dangling == DanglingPolicy::Fail)
        throw Error(ErrorKind::DanglingReference, what, rel.line);
      ++report.dangling_dropped;
      report.warn(std::string(to_string(ErrorKind::DanglingReference)) + " at line " +
                  std::to_string(rel.line) + ": " + what);
      continue;
    }
    store.essential[OccupationId(std::move(rel.occupation))].insert(
        SkillId(std::move(rel.skill)));
  }

  if (report_out) *report_out = std::move(report);
  return store;
}

/// Sorted N-Triples rendering of a store; parsing it back yields the store.
inline void write_canonical_triples(const ClassifierStore& store, std::ostream& out,
                                    const TripleVocabulary& vocab = {}) {
  auto iri = [](std::string_view s) { return "<" + std::string(s) + ">"; };
  auto label = [](std::string_view s) {
    return "\"" + ntriples::escape_literal(s) + "\"";
  };
  for (const auto& [id, info] : store.occupations) {
    std::string subject = iri(vocab.occupation_base + id.str());
    out << subject << ' ' << iri(vocab.type_predicate) << ' ' << iri(vocab.occupation_class)
        << " .\n";
    if (!info.label.empty())
      out << subject << ' ' << iri(vocab.pref_label) << ' ' << label(info.label) << " .\n";
    out << subject << ' ' << iri(vocab.isco_group) << ' '
        << iri(vocab.isco_base + info.isco.str()) << " .\n";
  }
  for (const auto& [id, name] : store.skills) {
    std::string subject = iri(vocab.skill_base + id.str());
    out << subject << ' ' << iri(vocab.type_predicate) << ' ' << iri(vocab.skill_class)
        << " .\n";
    if (!name.empty())
      out << subject << ' ' << iri(vocab.pref_label) << ' ' << label(name) << " .\n";
  }
  for (const auto& [occ, set] : store.essential)
    for (const auto& skill : set)
      out << iri(vocab.occupation_base + occ.str()) << ' ' << iri(vocab.essential_skill) << ' '
          << iri(vocab.skill_base + skill.str()) << " .\n";
}

// ---------------------------------------------------------------------------
// Crosswalk and automation tables

struct CrosswalkRow {
  SocCode soc;
  Isco4Code isco;

  friend auto operator<=>(const CrosswalkRow&, const CrosswalkRow&) = default;
};

/// Sorted by (soc, isco), no duplicates.
struct CrosswalkTable {
  std::vector<CrosswalkRow> rows;

  friend bool operator==(const CrosswalkTable&, const CrosswalkTable&) = default;
};

struct AutomationTable {
  std::map<SocCode, double> probs;

  friend bool operator==(const AutomationTable&, const AutomationTable&) = default;
};

namespace detail {

inline const std::string& field(const csv::Row& row, std::size_t idx, std::size_t line,
                                ErrorKind kind) {
  if (idx >= row.size())
    throw Error(kind, "record has " + std::to_string(row.size()) + " fields", line);
  return row[idx];
}

}  // namespace detail

/// Expects a header with `soc_code` and `isco_code`; other columns are ignored.
inline CrosswalkTable parse_crosswalk(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(row)) throw Error(ErrorKind::EmptyTable, "crosswalk has no header");
  csv::Header header(row);
  const auto soc_col = header.require("soc_code");
  const auto isco_col = header.require("isco_code");

  CrosswalkTable table;
  while (reader.next(row)) {
    const auto line = reader.line();
    const auto& soc_text = detail::field(row, soc_col, line, ErrorKind::BadCode);
    const auto& isco_text = detail::field(row, isco_col, line, ErrorKind::BadCode);
    auto soc = parse_soc(soc_text);
    if (!soc) throw Error(ErrorKind::BadCode, "malformed SOC code '" + soc_text + "'", line);
    auto isco = parse_isco4(isco_text);
    if (!isco) throw Error(ErrorKind::BadCode, "malformed ISCO code '" + isco_text + "'", line);
    table.rows.push_back({std::move(*soc), std::move(*isco)});
  }
  if (table.rows.empty()) throw Error(ErrorKind::EmptyTable, "crosswalk has no rows");
  std::sort(table.rows.begin(), table.rows.end());
  table.rows.erase(std::unique(table.rows.begin(), table.rows.end()), table.rows.end());
  return table;
}

/// Expects a header with `soc_code` and `probability`.
inline AutomationTable parse_automation(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  AutomationTable table;
  if (!reader.next(row)) return table;
  csv::Header header(row);
  const auto soc_col = header.require("soc_code");
  const auto prob_col = header.require("probability");

  while (reader.next(row)) {
    const auto line = reader.line();
    const auto& soc_text = detail::field(row, soc_col, line, ErrorKind::BadCode);
    const auto& prob_text = detail::field(row, prob_col, line, ErrorKind::ParseFailure);
    auto soc = parse_soc(soc_text);
    if (!soc) throw Error(ErrorKind::BadCode, "malformed SOC code '" + soc_text + "'", line);
    auto p = parse_double(::skillgraph::detail::trim(prob_text));
    if (!p) throw Error(ErrorKind::ParseFailure, "probability '" + prob_text + "'", line);
    if (!(*p >= 0.0 && *p <= 1.0))
      throw Error(ErrorKind::OutOfRange, "probability " + prob_text + " for " + soc->str(),
                  line);
    auto [it, inserted] = table.probs.emplace(*soc, *p);
    if (!inserted && it->second != *p)
      throw Error(ErrorKind::DuplicateSoc,
                  soc->str() + " listed with " + format_shortest(it->second) + " and " +
                      prob_text,
                  line);
  }
  return table;
}

inline void write_crosswalk(const CrosswalkTable& table, std::ostream& out) {
  csv::write_row(out, {"soc_code", "isco_code"});
  for (const auto& r : table.rows) csv::write_row(out, {r.soc.str(), r.isco.str()});
}

inline void write_automation(const AutomationTable& table, std::ostream& out) {
  csv::write_row(out, {"soc_code", "probability"});
  for (const auto& [soc, p] : table.probs)
    csv::write_row(out, {soc.str(), format_shortest(p)});
}

// ---------------------------------------------------------------------------
// Canonical store CSVs, used as the intermediate form between pipeline stages.

inline void write_occupations_csv(const ClassifierStore& store, std::ostream& out) {
  csv::write_row(out, {"esco_id", "label", "isco4"});
  for (const auto& [id, info] : store.occupations)
    csv::write_row(out, {id.str(), info.label, info.isco.str()});
}

inline void write_skills_csv(const ClassifierStore& store, std::ostream& out) {
  csv::write_row(out, {"skill_id", "label"});
  for (const auto& [id, label] : store.skills) csv::write_row(out, {id.str(), label});
}

inline void write_essential_csv(const ClassifierStore& store, std::ostream& out) {
  csv::write_row(out, {"esco_id", "skill_id"});
  for (const auto& [occ, set] : store.essential)
    for (const auto& skill : set) csv::write_row(out, {occ.str(), skill.str()});
}

/// Inverse of the three writers above. Validates the store invariants.
inline ClassifierStore read_store_csv(std::istream& occupations, std::istream& skills,
                                      std::istream& essential) {
  ClassifierStore store;
  csv::Row row;
  {
    csv::Reader r(occupations);
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "occupations: empty file");
    csv::Header h(row);
    auto id_col = h.require("esco_id"), label_col = h.require("label"),
         isco_col = h.require("isco4");
    while (r.next(row)) {
      const auto& id = detail::field(row, id_col, r.line(), ErrorKind::ParseFailure);
      auto isco = parse_isco4(detail::field(row, isco_col, r.line(), ErrorKind::ParseFailure));
      if (id.empty() || !isco)
        throw Error(ErrorKind::ParseFailure, "occupations: bad record", r.line());
      auto [it, inserted] = store.occupations.emplace(
          OccupationId(id),
          OccupationInfo{detail::field(row, label_col, r.line(), ErrorKind::ParseFailure),
                         *isco});
      if (!inserted)
        throw Error(ErrorKind::ParseFailure, "occupations: duplicate id " + id, r.line());
    }
  }
  {
    csv::Reader r(skills);
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "skills: empty file");
    csv::Header h(row);
    auto id_col = h.require("skill_id"), label_col = h.require("label");
    while (r.next(row)) {
      const auto& id = detail::field(row, id_col, r.line(), ErrorKind::ParseFailure);
      if (id.empty()) throw Error(ErrorKind::ParseFailure, "skills: empty id", r.line());
      if (!store.skills
               .emplace(SkillId(id),
                        detail::field(row, label_col, r.line(), ErrorKind::ParseFailure))
               .second)
        throw Error(ErrorKind::ParseFailure, "skills: duplicate id " + id, r.line());
    }
  }
  {
    csv::Reader r(essential);
    if (!r.next(row)) throw Error(ErrorKind::ParseFailure, "essential: empty file");
    csv::Header h(row);
    auto occ_col = h.require("esco_id"), skill_col = h.require("skill_id");
    while (r.next(row)) {
      store.essential[OccupationId(detail::field(row, occ_col, r.line(), ErrorKind::ParseFailure))]
          .insert(SkillId(detail::field(row, skill_col, r.line(), ErrorKind::ParseFailure)));
    }
  }
  store.check_invariants();
  return store;
}

// ---------------------------------------------------------------------------

struct StoreStats {
  std::size_t n_occupations = 0;
  std::size_t n_skills = 0;
  std::size_t n_relations = 0;
  std::size_t n_distinct_isco = 0;

  friend bool operator==(const StoreStats&, const StoreStats&) = default;
};

inline StoreStats store_stats(const ClassifierStore& store) {
  std::set<Isco4Code> isco;
  for (const auto& [id, info] : store.occupations) isco.insert(info.isco);
  return {store.occupations.size(), store.skills.size(), store.relation_count(), isco.size()};
}

}  // namespace skillgraph
