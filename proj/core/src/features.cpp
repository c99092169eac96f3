#include "ddp/features.hpp"

#include <array>
#include <cstdlib>
#include <vector>

#include "ddp/text.hpp"

namespace ddp {

void FeatureVector::add(std::string_view name, double value) {
  if (value == 0.0) return;
  auto it = values_.find(name);
  if (it == values_.end()) {
    values_.emplace(std::string(name), value);
    return;
  }
  it->second += value;
  if (it->second == 0.0) values_.erase(it);
}

void FeatureVector::merge(const FeatureVector& other, double scale) {
  for (const auto& [k, v] : other.values_) add(k, v * scale);
}

double FeatureVector::get(std::string_view name) const {
  auto it = values_.find(name);
  return it == values_.end() ? 0.0 : it->second;
}

double dot(const WeightTable& weights, const FeatureVector& fv) {
  double s = 0.0;
  for (const auto& [k, v] : fv) {
    auto it = weights.find(k);
    if (it != weights.end()) s += it->second * v;
  }
  return s;
}

std::string distance_bucket(int distance) {
  distance = std::abs(distance);
  if (distance <= 4) return std::to_string(distance);
  if (distance <= 7) return "5-7";
  if (distance <= 12) return "8-12";
  return "13+";
}

std::string length_bucket(int chars) {
  if (chars <= 5) return "S";
  if (chars <= 12) return "M";
  if (chars <= 25) return "L";
  return "XL";
}

std::string position_bucket(int index, int n) {
  if (index == 1) return "first";
  if (index == n) return "last";
  return "mid";
}

bool starts_sentence(const DepDocument& doc, int index) {
  if (index <= 1) return true;
  static const std::array<std::string_view, 8> finals = {"。", "！", "？", ".", "!", "?", "；", ";"};
  const std::string last = text::last_char(doc.edu(index - 1).text);
  for (auto f : finals) {
    if (last == f) return true;
  }
  return false;
}

FeatureVector extract_arc_features(const DepDocument& doc, int head, int dependent) {
  FeatureVector fv;
  const int n = doc.size();
  const Edu& dep = doc.edu(dependent);
  const std::string df = text::first_char(dep.text);
  const std::string dl = text::last_char(dep.text);
  const std::string dlen = length_bucket(dep.char_len);
  const std::string dpos = position_bucket(dependent, n);
  const std::string dsent = starts_sentence(doc, dependent) ? "start" : "inner";

  if (head == kRoot) {
    const std::vector<std::pair<std::string, std::string>> atoms = {
        {"df", df}, {"dl", dl}, {"dlen", dlen}, {"dpos", dpos}, {"dsent", dsent}};
    fv.add("head=ROOT");
    for (const auto& [k, v] : atoms) fv.add("ROOT&" + k + "=" + v);
    fv.add("ROOT&dpos=" + dpos + "&dsent=" + dsent);
    fv.add("ROOT&dist=" + distance_bucket(dependent));
    return fv;
  }

  const Edu& hd = doc.edu(head);
  const std::string hf = text::first_char(hd.text);
  const std::string hl = text::last_char(hd.text);
  const std::string hlen = length_bucket(hd.char_len);
  const std::string hpos = position_bucket(head, n);
  const std::string hsent = starts_sentence(doc, head) ? "start" : "inner";
  const std::string dir = dependent > head ? "right" : "left";
  const std::string dist = distance_bucket(dependent - head);

  // Same sentence iff no sentence start lies in (min, max].
  bool same_sentence = true;
  for (int i = std::min(head, dependent) + 1; i <= std::max(head, dependent); ++i) {
    if (starts_sentence(doc, i)) {
      same_sentence = false;
      break;
    }
  }
  const std::string sent = same_sentence ? "same" : "cross";

  const std::vector<std::pair<std::string, std::string>> structural = {
      {"dir", dir},     {"dist", dist},   {"hlen", hlen},   {"dlen", dlen},   {"hpos", hpos},
      {"dpos", dpos},   {"hsent", hsent}, {"dsent", dsent}, {"sent", sent}};
  const std::vector<std::pair<std::string, std::string>> lexical = {
      {"hf", hf}, {"hl", hl}, {"df", df}, {"dl", dl}};

  for (const auto& [k, v] : structural) fv.add(k + "=" + v);
  for (const auto& [k, v] : lexical) fv.add(k + "=" + v);

  for (std::size_t i = 0; i < structural.size(); ++i) {
    for (std::size_t j = i + 1; j < structural.size(); ++j) {
      fv.add(structural[i].first + "=" + structural[i].second + "&" + structural[j].first + "=" +
             structural[j].second);
    }
  }
  const std::string dd = "dir=" + dir + "&dist=" + dist;
  for (const auto& [k, v] : lexical) fv.add(dd + "&" + k + "=" + v);
  fv.add("hl=" + hl + "&df=" + df);
  fv.add("hl=" + hl + "&dl=" + dl);
  fv.add("hf=" + hf + "&df=" + df);
  fv.add(dd + "&hl=" + hl + "&df=" + df);
  return fv;
}

FeatureVector extract_tree_features(const DepDocument& doc, int dependent) {
  const TreeFeatures t = tree_features(doc, dependent);
  FeatureVector fv;
  const std::string depth = t.depth >= 5 ? "5+" : std::to_string(t.depth);
  const std::string sib = t.sibling_count >= 3 ? "3+" : std::to_string(t.sibling_count);
  const std::string child = t.child_count >= 3 ? "3+" : std::to_string(t.child_count);
  const std::string hd = (t.head_distance < 0 ? "-" : "+") + distance_bucket(t.head_distance);
  fv.add("depth=" + depth);
  fv.add("sib=" + sib);
  fv.add("child=" + child);
  fv.add("hdist=" + hd);
  fv.add("depth=" + depth + "&child=" + child);
  fv.add("depth=" + depth + "&hdist=" + hd);
  fv.add("sib=" + sib + "&hdist=" + hd);
  return fv;
}

}  // namespace ddp
