#include "pidf/datasets.hpp"

#include <cmath>
#include <functional>

#include "pidf/rng.hpp"

namespace pidf {

const char* to_string(DatasetId id) {
  switch (id) {
    case DatasetId::rvq:
      return "rvq";
    case DatasetId::svq:
      return "svq";
    case DatasetId::msq:
      return "msq";
    case DatasetId::wt:
      return "wt";
    case DatasetId::terc1:
      return "terc1";
    case DatasetId::terc2:
      return "terc2";
    case DatasetId::ubr:
      return "ubr";
    case DatasetId::sg:
      return "sg";
  }
  return "unknown";
}

DatasetId parse_dataset_id(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != '-' && c != '_') t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (DatasetId id : all_dataset_ids()) {
    if (t == to_string(id)) return id;
  }
  throw ConfigError("unknown dataset '" + text + "' (expected rvq, svq, msq, wt, terc1, terc2, ubr or sg)");
}

std::vector<DatasetId> all_dataset_ids() {
  return {DatasetId::rvq, DatasetId::svq, DatasetId::msq, DatasetId::wt,
          DatasetId::terc1, DatasetId::terc2, DatasetId::ubr, DatasetId::sg};
}

namespace {

using Values = std::vector<double>;

class Streams {
 public:
  Streams(std::uint64_t seed, std::size_t n) : seed_(seed), n_(n) {}

  Values draw(const std::string& name, const std::function<double(Rng&)>& f) const {
    Rng rng(derive_seed(seed_, hash_name(name)));
    Values v(n_);
    for (auto& x : v) x = f(rng);
    return v;
  }
  Values bernoulli(const std::string& name, double p) const {
    return draw(name, [p](Rng& r) { return static_cast<double>(r.bernoulli(p)); });
  }
  Values normal(const std::string& name) const {
    return draw(name, [](Rng& r) { return r.normal(); });
  }
  std::size_t n() const { return n_; }

 private:
  std::uint64_t seed_;
  std::size_t n_;
};

Values combine(const Values& a, const Values& b, const std::function<double(double, double)>& f) {
  Values out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = f(a[r], b[r]);
  return out;
}

Column discrete(std::string name, Values v, int cardinality) {
  return {std::move(name), std::move(v), ColumnKind::discrete(cardinality)};
}
Column continuous(std::string name, Values v) { return {std::move(name), std::move(v), ColumnKind::continuous()}; }

Dataset make(std::vector<Column> features, Column target) {
  for (std::size_t i = 0; i < features.size(); ++i) features[i].name = "f" + std::to_string(i);
  target.name = "target";
  return Dataset(std::move(features), std::move(target));
}

Dataset terc(const Streams& s, bool copies_of_first, TercCondition condition) {
  const Values f0 = s.bernoulli("F0", 0.5);
  const Values f1 = s.bernoulli("F1", 0.5);
  const Values f2 = s.bernoulli("F2", 0.5);
  Values y(s.n());
  for (std::size_t r = 0; r < s.n(); ++r) {
    const bool agree = condition == TercCondition::all_equal ? (f0[r] == f1[r] && f1[r] == f2[r]) : f1[r] == f2[r];
    y[r] = agree ? 0.0 : 1.0;
  }
  std::vector<Column> cols{discrete("", f0, 2), discrete("", f1, 2), discrete("", f2, 2)};
  if (copies_of_first) {
    for (int c = 0; c < 3; ++c) cols.push_back(discrete("", f0, 2));
  } else {
    cols.push_back(discrete("", f0, 2));
    cols.push_back(discrete("", f1, 2));
    cols.push_back(discrete("", f2, 2));
  }
  return make(std::move(cols), discrete("", y, 2));
}

}  // namespace

Dataset generate(const GeneratorSpec& spec) {
  if (spec.n_samples < 1) throw ConfigError("n_samples must be >= 1");
  const Streams s(spec.seed, spec.n_samples);
  switch (spec.id) {
    case DatasetId::rvq: {
      const Values f0 = s.bernoulli("F0", 0.5);
      const Values f1 = s.bernoulli("F1", 0.5);
      const Values y = combine(f0, f1, [](double a, double b) { return a + 2.0 * b; });
      return make({discrete("", f0, 2), discrete("", f1, 2), discrete("", f1, 2)}, discrete("", y, 4));
    }
    case DatasetId::svq: {
      const Values f0 = s.bernoulli("F0", 0.5);
      const Values f1 = s.bernoulli("F1", 0.5);
      const Values y = combine(f0, f1, [](double a, double b) { return a != b ? 1.0 : 0.0; });
      return make({discrete("", f0, 2), discrete("", f1, 2)}, discrete("", y, 2));
    }
    case DatasetId::msq: {
      const Values f1 = s.bernoulli("F1", 0.5);
      const Values f2 = s.bernoulli("F2", 0.5);
      const Values sum = combine(f1, f2, std::plus<>{});
      return make({discrete("", sum, 3), discrete("", f1, 2), discrete("", f2, 2)}, discrete("", sum, 3));
    }
    case DatasetId::wt: {
      const Values e1 = s.normal("eps1");
      const Values e2 = s.normal("eps2");
      const Values e3 = s.normal("eps3");
      const Values f2 = s.normal("F2");
      Values f0(s.n()), f1(s.n()), y(s.n());
      for (std::size_t r = 0; r < s.n(); ++r) {
        f0[r] = e1[r] + 0.1 * f2[r];
        f1[r] = 0.8 * e1[r] + 0.2 * e2[r] + 0.01 * f2[r];
        y[r] = std::sin(e1[r]) + 0.1 * e3[r];
      }
      return make({continuous("", f0), continuous("", f1), continuous("", f2)}, continuous("", y));
    }
    case DatasetId::terc1:
      return terc(s, true, spec.terc);
    case DatasetId::terc2:
      return terc(s, false, spec.terc);
    case DatasetId::ubr: {
      const Values e1 = s.draw("eps1", [](Rng& r) { return r.uniform(-1.0, 1.0); });
      const Values e2 = s.draw("eps2", [](Rng& r) { return r.uniform(-0.5, 0.5); });
      const Values e3 = s.draw("eps3", [](Rng& r) { return r.exponential(1.0); });
      const Values e4 = s.normal("eps4");
      const Values f0 = s.normal("F0");
      Values f1(s.n()), f2(s.n()), f3(s.n()), y(s.n());
      for (std::size_t r = 0; r < s.n(); ++r) {
        f1[r] = 3.0 * f0[r] + e1[r];
        f2[r] = e4[r] + f0[r];
        y[r] = e4[r] + e2[r];
        f3[r] = y[r] + e3[r];
      }
      return make({continuous("", f0), continuous("", f1), continuous("", f2), continuous("", f3)},
                  continuous("", y));
    }
    case DatasetId::sg: {
      const Values y = s.bernoulli("Y", 0.5);
      const Values u = s.draw("F01", [](Rng& r) { return r.uniform(); });
      const Values v = s.draw("F2", [](Rng& r) { return r.uniform(); });
      Values f0(s.n()), f1(s.n()), f2(s.n());
      for (std::size_t r = 0; r < s.n(); ++r) {
        // Joint state 11 has probability 0.95 (healthy) or 0.05 (cancer);
        // 00, 01 and 10 share the rest equally.
        const double p11 = y[r] == 0.0 ? 0.95 : 0.05;
        const double rest = (1.0 - p11) / 3.0;
        int state = 3;
        if (u[r] >= p11) state = std::min(2, static_cast<int>((u[r] - p11) / rest));
        f0[r] = static_cast<double>(state >> 1 & 1);
        f1[r] = static_cast<double>(state & 1);
        f2[r] = v[r] < (y[r] == 0.0 ? 0.2 : 0.8) ? 1.0 : 0.0;
      }
      return make({discrete("", f0, 2), discrete("", f1, 2), discrete("", f2, 2)}, discrete("", y, 2));
    }
  }
  throw ConfigError("unknown dataset id");
}

Dataset appendix_a_dataset(std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  const Streams s(seed, n_samples);
  const Values f0 = s.bernoulli("F0", 0.5);
  const Values f1 = s.bernoulli("F1", 0.5);
  const Values y = combine(f0, f1, std::plus<>{});
  return make({discrete("", f0, 2), discrete("", f1, 2), discrete("", f0, 2), discrete("", f1, 2)},
              discrete("", y, 3));
}

std::vector<FeatureSubset> acceptable_selections(DatasetId id) {
  switch (id) {
    case DatasetId::rvq:
      return {{0, 1}, {0, 2}};
    case DatasetId::svq:
      return {{0, 1}};
    case DatasetId::msq:
      return {{0}};
    case DatasetId::wt:
      return {{0, 2}};
    case DatasetId::terc1:
      return {{0, 1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 5}};
    case DatasetId::terc2: {
      std::vector<FeatureSubset> out;
      for (std::size_t a : {0, 3}) {
        for (std::size_t b : {1, 4}) {
          for (std::size_t c : {2, 5}) out.push_back(FeatureSubset{a, b, c});
        }
      }
      return out;
    }
    case DatasetId::ubr:
      return {{3}};
    case DatasetId::sg:
      return {{0, 1, 2}};
  }
  return {};
}

ConfusionCounts score_selection(DatasetId id, const FeatureSubset& selected, std::size_t n_features) {
  ConfusionCounts best;
  int best_score = -1;
  for (const auto& truth : acceptable_selections(id)) {
    const auto c = confusion_counts(selected, truth, n_features);
    if (c.tp + c.tn > best_score) {
      best_score = c.tp + c.tn;
      best = c;
    }
  }
  return best;
}

ConfusionCounts reference_counts(DatasetId id) {
  switch (id) {
    case DatasetId::rvq:
      return {2, 0, 1, 0};
    case DatasetId::svq:
      return {2, 0, 0, 0};
    case DatasetId::msq:
      return {1, 0, 2, 0};
    case DatasetId::wt:
      return {2, 0, 1, 0};
    case DatasetId::terc1:
      return {3, 0, 3, 0};
    case DatasetId::terc2:
      return {3, 0, 3, 0};
    case DatasetId::ubr:
      return {1, 0, 3, 0};
    case DatasetId::sg:
      return {3, 0, 0, 0};
  }
  return {};
}

}  // namespace pidf
