// SPDX-License-Identifier: MIT
#include "bregman/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace bregman {

namespace {

using Json = nlohmann::ordered_json;

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json tri(const std::optional<bool>& b) {
  if (!b) return nullptr;
  return *b;
}

Json report_json(const VerifyReport& r) {
  Json j;
  j["instance"] = r.instance;
  j["theorem"] = r.theorem;
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json w = Json::array();
    for (double v : c.witness) w.push_back(num(v));
    conds.push_back({{"label", c.label},
                     {"description", c.description},
                     {"holds", tri(c.holds)},
                     {"worst_violation", num(c.worst_violation)},
                     {"witness", w},
                     {"note", c.note}});
  }
  j["conditions"] = conds;
  Json imps = Json::array();
  for (const auto& i : r.implications)
    imps.push_back({{"premises", i.premises},
                    {"conclusion", i.conclusion},
                    {"status", to_string(i.status)},
                    {"reason", i.reason}});
  j["implications"] = imps;
  Json hyp = Json::array();
  for (const auto& h : r.hypotheses) hyp.push_back({{"label", h.label}, {"holds", tri(h.holds)}, {"note", h.note}});
  j["hypotheses"] = hyp;
  j["seed"] = r.seed;
  Json tol = Json::object();
  for (const auto& [k, v] : r.tolerances) tol[k] = num(v);
  j["tolerances"] = tol;
  j["notes"] = r.notes;
  j["skipped"] = r.skipped;
  return j;
}

}  // namespace

std::string to_string(ImplicationStatus s) {
  switch (s) {
    case ImplicationStatus::Holds: return "holds";
    case ImplicationStatus::Violated: return "violated";
    case ImplicationStatus::Vacuous: return "vacuous";
    case ImplicationStatus::Skipped: return "skipped";
  }
  return "unknown";
}

const Condition* VerifyReport::find(const std::string& label) const {
  for (const auto& c : conditions)
    if (c.label == label) return &c;
  return nullptr;
}

Condition& VerifyReport::add(Condition c) {
  conditions.push_back(std::move(c));
  return conditions.back();
}

void VerifyReport::hypothesis(std::string label, std::optional<bool> holds, std::string note) {
  hypotheses.push_back({std::move(label), holds, std::move(note)});
}

const Implication& VerifyReport::implies(std::vector<std::string> premises, std::string conclusion,
                                         std::string skip_reason) {
  Implication imp{std::move(premises), std::move(conclusion), ImplicationStatus::Skipped, std::move(skip_reason)};
  if (imp.reason.empty()) {
    bool all_true = true;
    for (const auto& p : imp.premises) {
      const Condition* c = find(p);
      if (c == nullptr || !c->holds) {
        all_true = false;
        imp.status = ImplicationStatus::Skipped;
        imp.reason = "premise " + p + " not evaluated";
        break;
      }
      if (!*c->holds) {
        all_true = false;
        imp.status = ImplicationStatus::Vacuous;
        imp.reason = "premise " + p + " is false";
        break;
      }
    }
    if (all_true) {
      const Condition* c = find(imp.conclusion);
      if (c == nullptr || !c->holds) {
        imp.status = ImplicationStatus::Skipped;
        imp.reason = "conclusion not evaluated";
      } else if (*c->holds) {
        imp.status = ImplicationStatus::Holds;
      } else {
        imp.status = ImplicationStatus::Violated;
        imp.reason = "conclusion " + imp.conclusion + " fails";
        if (!c->witness.empty()) {
          imp.reason += " at witness (";
          for (std::size_t k = 0; k < c->witness.size(); ++k) {
            if (k) imp.reason += ", ";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", c->witness[k]);
            imp.reason += buf;
          }
          imp.reason += ")";
        }
      }
    }
  }
  implications.push_back(std::move(imp));
  return implications.back();
}

void VerifyReport::equivalent(const std::string& a, const std::string& b, const std::string& skip_reason) {
  implies({a}, b, skip_reason);
  implies({b}, a, skip_reason);
}

std::size_t VerifyReport::violations() const {
  std::size_t n = 0;
  for (const auto& i : implications) n += i.status == ImplicationStatus::Violated;
  return n;
}

std::string to_json(const VerifyReport& r, int indent) { return report_json(r).dump(indent); }

std::string to_json(const std::vector<VerifyReport>& rs, int indent) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a.dump(indent);
}

}  // namespace bregman
