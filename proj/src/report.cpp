#include "pidf/report.hpp"

namespace pidf {

namespace {

using Json = nlohmann::ordered_json;

Json names_of(const FeatureSubset& s, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t j : s) out.push_back(names.at(j));
  return out;
}

Json ensemble_json(const EstimateEnsemble& e, double scale) {
  Json estimates = Json::array();
  for (double v : e.estimates()) estimates.push_back(v * scale);
  Json seeds = Json::array();
  for (auto s : e.seeds()) seeds.push_back(s);
  return Json{{"mean", e.mean() * scale}, {"std", e.stddev() * scale}, {"estimates", estimates}, {"seeds", seeds}};
}

}  // namespace

Json report_json(const PidfReport& report, const SelectionResult& selection, const Json& run_config) {
  const auto& names = report.dataset.feature_names;
  // Ensembles are always held in nats.
  const double scale = InfoValue::nats(1.0).to(report.unit).value;

  Json config = run_config;
  Json estimator{{"kind", report.estimator}};
  for (const auto& [k, v] : report.estimator_config) {
    if (k != "kind") estimator[k] = v;
  }

  Json features = Json::array();
  for (const auto& f : report.features) {
    Json contributions = Json::array();
    for (const auto& [j, v] : f.fwr_contributions) {
      contributions.push_back(Json{{"feature", j}, {"name", names.at(j)}, {"value", v.value}});
    }
    const auto& decision = selection.decisions.at(f.feature);
    features.push_back(Json{
        {"index", f.feature},
        {"name", names.at(f.feature)},
        {"mi", f.mi.value},
        {"fws", f.fws.value},
        {"fwr_total", f.fwr_total.value},
        {"fwr_contributions", contributions},
        {"mci", f.mci.value},
        {"oci", f.oci.value},
        {"max_synergy_set", names_of(f.max_synergy_set, names)},
        {"redundant_set", names_of(f.redundant_set, names)},
        {"selected", selection.selected.contains(f.feature)},
        {"rationale", to_string(decision.rationale)},
        {"blocking", names_of(decision.blocking, names)},
        {"fws_within_noise", f.fws_within_noise},
        {"ensembles",
         Json{{"mi", ensemble_json(f.mi_ensemble, scale)},
              {"fws", ensemble_json(f.fws_ensemble, scale)},
              {"fwr", ensemble_json(f.fwr_ensemble, scale)},
              {"mci_minus_fwr", ensemble_json(f.mci_minus_fwr(), scale)}}},
    });
  }

  return Json{
      {"schema_version", kReportSchemaVersion},
      {"config", config},
      {"dataset",
       Json{{"n_samples", report.dataset.n_samples},
            {"n_features", names.size()},
            {"feature_names", names},
            {"target", report.dataset.target_name},
            {"seed", report.dataset.seed}}},
      {"estimator", estimator},
      {"repetitions", report.repetitions},
      {"alpha", report.alpha},
      {"eps_zero", report.eps_zero},
      {"units", to_string(report.unit)},
      {"features", features},
      {"selected", names_of(selection.selected, names)},
  };
}

std::string render_report(const PidfReport& report, const SelectionResult& selection, const Json& run_config) {
  return report_json(report, selection, run_config).dump(2) + "\n";
}

}  // namespace pidf
