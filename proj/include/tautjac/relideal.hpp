#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "liegen.hpp"
#include "poly.hpp"
#include "weylop.hpp"

namespace tautjac {

// A subspace of the weight-w piece of Q[p, q], kept as a reduced row echelon
// basis over the monomials of weight w listed largest first. Column 0 is the
// largest monomial, so the pivot of each row is its leading monomial.
class GradedSpace {
 public:
  using Row = std::vector<Rational>;

  GradedSpace() = default;
  GradedSpace(int weight, bool full)
      : weight_(weight), full_(full), columns_(enumerate_monomials(weight)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) index_.emplace(columns_[i], i);
    pivot_row_.assign(columns_.size(), -1);
  }

  int weight() const { return weight_; }
  bool full() const { return full_; }
  const std::vector<Monomial>& columns() const { return columns_; }
  std::size_t ambient_dimension() const { return columns_.size(); }
  std::size_t rank() const { return full_ ? columns_.size() : rows_.size(); }
  std::size_t quotient_dimension() const { return ambient_dimension() - rank(); }

  // Rows ordered by pivot column. A full space reports its identity basis.
  std::vector<Row> rows() const {
    if (!full_) return rows_;
    std::vector<Row> id(columns_.size(), Row(columns_.size(), 0));
    for (std::size_t i = 0; i < id.size(); ++i) id[i][i] = 1;
    return id;
  }
  const std::vector<int>& pivot_rows() const { return pivot_row_; }

  bool is_pivot(std::size_t col) const { return full_ || pivot_row_[col] >= 0; }

  Row to_row(const Poly& f) const {
    Row v(columns_.size(), 0);
    for (const auto& [m, c] : f.terms()) {
      auto it = index_.find(m);
      if (it == index_.end())
        throw std::invalid_argument("monomial " + m.to_string() + " is not of weight " +
                                    std::to_string(weight_));
      v[it->second] = c;
    }
    return v;
  }

  Poly to_poly(const Row& v) const {
    Poly f;
    for (std::size_t i = 0; i < v.size(); ++i) f.add_term(columns_[i], v[i]);
    return f;
  }

  // Removes every pivot coordinate; the result is the unique normal form.
  Row reduce(Row v) const {
    if (full_) return Row(columns_.size(), 0);
    for (const auto& row : rows_) {
      std::size_t pc = pivot_col(row);
      if (v[pc] == 0) continue;
      Rational c = v[pc];
      for (std::size_t j = pc; j < v.size(); ++j)
        if (row[j] != 0) v[j] -= c * row[j];
    }
    return v;
  }

  // Adds v to the span. Returns the new basis vector (reduced against the
  // previous basis, leading coefficient 1) or an empty row when v was already
  // contained.
  Row insert(const Row& v) {
    if (full_) return {};
    Row r = reduce(v);
    std::size_t pc = 0;
    while (pc < r.size() && r[pc] == 0) ++pc;
    if (pc == r.size()) return {};
    Rational lead = r[pc];
    for (auto& x : r) x /= lead;
    for (auto& row : rows_) {
      if (row[pc] == 0) continue;
      Rational c = row[pc];
      for (std::size_t j = pc; j < row.size(); ++j)
        if (r[j] != 0) row[j] -= c * r[j];
    }
    auto pos = rows_.begin();
    while (pos != rows_.end() && pivot_col(*pos) < pc) ++pos;
    rows_.insert(pos, r);
    reindex();
    return r;
  }

  bool contains(const Row& v) const {
    for (const auto& x : reduce(v))
      if (x != 0) return false;
    return true;
  }

 private:
  static std::size_t pivot_col(const Row& row) {
    std::size_t i = 0;
    while (row[i] == 0) ++i;
    return i;
  }
  void reindex() {
    pivot_row_.assign(columns_.size(), -1);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      pivot_row_[pivot_col(rows_[i])] = static_cast<int>(i);
  }

  int weight_ = 0;
  bool full_ = false;
  std::vector<Monomial> columns_;
  std::map<Monomial, std::size_t> index_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;
};

// Derived relations among the p_i, q_i at a fixed genus: the smallest
// subspace containing every monomial of weight > g that is closed under D and
// under multiplication by the generators. It is a sub-ideal of the true
// relation ideal; non-membership proves nothing about vanishing.
class RelationIdeal {
 public:
  static constexpr const char* kMonomialOrder = "plex-interleaved-v1";
  static constexpr int kFormatVersion = 1;

  static RelationIdeal build(int genus, int source_cap) {
    validate(genus, source_cap);
    RelationIdeal ideal(genus, source_cap);
    ideal.close();
    return ideal;
  }

  // Default source cap g + 3.
  static RelationIdeal build(int genus) { return build(genus, genus + 3); }

  int genus() const { return genus_; }
  int source_cap() const { return source_cap_; }
  const GradedSpace& space(int w) const {
    check_cap(w);
    return spaces_[static_cast<std::size_t>(w)];
  }

  std::size_t quotient_dimension(int w) const {
    if (w < 0) throw std::invalid_argument("weight must be >= 0");
    return space(w).quotient_dimension();
  }

  // Relation basis of weight w as polynomials (RREF rows).
  std::vector<Poly> relations(int w) const {
    const GradedSpace& s = space(w);
    std::vector<Poly> out;
    for (const auto& row : s.rows()) out.push_back(s.to_poly(row));
    return out;
  }

  // Monomials of weight w that are not leading terms of a relation.
  std::vector<Monomial> quotient_basis(int w) const {
    const GradedSpace& s = space(w);
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < s.columns().size(); ++i)
      if (!s.is_pivot(i)) out.push_back(s.columns()[i]);
    return out;
  }

  bool contains(const Poly& f) const {
    for (const auto& [w, part] : by_weight(f)) {
      const GradedSpace& s = space(w);
      if (!s.contains(s.to_row(part))) return false;
    }
    return true;
  }

  Poly normal_form(const Poly& f) const {
    for (const auto& [w, part] : by_weight(f)) check_cap(w);
    return reduce(f);
  }

  // Projection onto the quotient without the source-cap precondition:
  // components of weight > g vanish in every case.
  Poly reduce(const Poly& f) const {
    Poly out;
    for (const auto& [w, part] : by_weight(f)) {
      if (w > genus_) continue;
      const GradedSpace& s = spaces_[static_cast<std::size_t>(w)];
      out += s.to_poly(s.reduce(s.to_row(part)));
    }
    return out;
  }

  // Re-checks D-stability and multiplicative stability of every stored
  // relation up to the source cap. Returns a description of the first
  // violation, or an empty string.
  std::string stability_violation() const {
    Operator d = make_d(LieContext(genus_, source_cap_));
    for (int w = 0; w <= source_cap_; ++w) {
      for (const Poly& r : relations(w)) {
        if (w >= 1) {
          Poly image = apply(d, r);
          if (!contains(image))
            return "D(" + r.to_string() + ") not in weight " + std::to_string(w - 1);
        }
        for (int i = 1; w + i <= source_cap_; ++i)
          for (const Poly& v : {p(i), q(i)})
            if (!contains(v * r))
              return v.to_string() + "*(" + r.to_string() + ") not in weight " +
                     std::to_string(w + i);
      }
    }
    return {};
  }

  nlohmann::ordered_json to_json(std::optional<int> only_weight = std::nullopt) const {
    nlohmann::ordered_json j;
    j["format-version"] = kFormatVersion;
    j["genus"] = genus_;
    j["source_cap"] = source_cap_;
    j["monomial_order"] = kMonomialOrder;
    auto weights = nlohmann::ordered_json::array();
    for (int w = 0; w <= source_cap_; ++w) {
      if (only_weight && *only_weight != w) continue;
      nlohmann::ordered_json wj;
      wj["w"] = w;
      wj["quotient_dim"] = quotient_dimension(w);
      auto rels = nlohmann::ordered_json::array();
      for (const Poly& r : relations(w)) {
        auto terms = nlohmann::ordered_json::array();
        for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it)
          terms.push_back({{"monomial", it->first.to_string()},
                           {"coeff", tautjac::to_string(it->second)}});
        rels.push_back(std::move(terms));
      }
      wj["relations"] = std::move(rels);
      weights.push_back(std::move(wj));
    }
    j["weights"] = std::move(weights);
    return j;
  }

  // Inverse of to_json() for a complete export. `parse_monomial` turns the
  // text form of a monomial back into a Monomial. Throws std::runtime_error
  // on any inconsistency.
  template <class MonomialParser>
  static RelationIdeal from_json(const nlohmann::ordered_json& j,
                                 MonomialParser&& parse_monomial) {
    if (j.at("format-version").get<int>() != kFormatVersion ||
        j.at("monomial_order").get<std::string>() != kMonomialOrder)
      throw std::runtime_error("unsupported relation ideal format");
    int g = j.at("genus").get<int>();
    int cap = j.at("source_cap").get<int>();
    validate(g, cap);
    RelationIdeal ideal(g, cap);
    const auto& weights = j.at("weights");
    if (weights.size() != static_cast<std::size_t>(cap + 1))
      throw std::runtime_error("relation ideal export is incomplete");
    for (const auto& wj : weights) {
      int w = wj.at("w").get<int>();
      if (w < 0 || w > cap) throw std::runtime_error("weight out of range");
      GradedSpace& s = ideal.spaces_[static_cast<std::size_t>(w)];
      if (!s.full()) {
        for (const auto& rel : wj.at("relations")) {
          Poly f;
          for (const auto& t : rel)
            f.add_term(parse_monomial(t.at("monomial").get<std::string>()),
                       parse_rational(t.at("coeff").get<std::string>()));
          s.insert(s.to_row(f));
        }
      }
      if (s.quotient_dimension() != wj.at("quotient_dim").get<std::size_t>())
        throw std::runtime_error("quotient dimension mismatch at weight " +
                                 std::to_string(w));
    }
    return ideal;
  }

 private:
  RelationIdeal(int genus, int source_cap) : genus_(genus), source_cap_(source_cap) {
    for (int w = 0; w <= source_cap; ++w) spaces_.emplace_back(w, w > genus);
  }

  static void validate(int genus, int source_cap) {
    if (genus < 2) throw invalid_genus("genus must be >= 2, got " + std::to_string(genus));
    if (source_cap <= genus)
      throw cap_too_small("source cap " + std::to_string(source_cap) +
                          " must exceed the genus " + std::to_string(genus));
  }

  void check_cap(int w) const {
    if (w > source_cap_)
      throw cap_exceeded("weight " + std::to_string(w) + " exceeds source cap " +
                         std::to_string(source_cap_));
  }

  // Worklist fixed point. Every new basis vector of a weight-w space is pushed
  // through D (into weight w-1) and through multiplication by each generator
  // (into weights w+i); spaces above the genus are already full, so only
  // images landing in weights <= g can grow anything.
  void close() {
    Operator d = make_d(LieContext(genus_, source_cap_));
    std::deque<std::pair<int, Poly>> work;
    auto push_images = [&](int w, const Poly& r) {
      if (w >= 1 && w - 1 <= genus_) work.emplace_back(w - 1, apply(d, r));
      for (int i = 1; w + i <= genus_; ++i) {
        work.emplace_back(w + i, p(i) * r);
        work.emplace_back(w + i, q(i) * r);
      }
    };
    for (int w = genus_ + 1; w <= source_cap_; ++w)
      for (const Monomial& m : spaces_[static_cast<std::size_t>(w)].columns())
        push_images(w, Poly(m));
    while (!work.empty()) {
      auto [w, f] = std::move(work.front());
      work.pop_front();
      if (f.is_zero()) continue;
      GradedSpace& s = spaces_[static_cast<std::size_t>(w)];
      auto added = s.insert(s.to_row(f));
      if (!added.empty()) push_images(w, s.to_poly(added));
    }
  }

  int genus_;
  int source_cap_;
  std::vector<GradedSpace> spaces_;
};

}  // namespace tautjac
