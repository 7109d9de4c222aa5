#include <rbridge/report.hpp>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>

namespace rbridge {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string provenance(std::uint64_t seed) {
  return fmt::format("# rbridge schema_version={} seed={}\n", kSchemaVersion, seed);
}

std::string cell(double v) { return std::isnan(v) ? "NA" : format_double(v); }

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json vector_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string fit_result_json(const FitResult& fit, std::uint64_t seed) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["family"] = fit.penalty.family_name();
  j["lambda"] = number(fit.penalty.lambda());
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, BridgeFamily>) {
          j["q"] = f.q;
        } else if constexpr (std::is_same_v<F, ElasticNetFamily>) {
          j["alpha"] = f.alpha;
        } else {
          j["a"] = f.a;
        }
      },
      fit.penalty.family());
  j["beta"] = vector_json(fit.beta);
  ordered_json active = ordered_json::array();
  for (Index k : fit.active) active.push_back(k + 1);
  j["active"] = active;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  ordered_json trace = ordered_json::array();
  for (double v : fit.objective_trace) trace.push_back(number(v));
  j["objective_trace"] = trace;
  return j.dump(2) + "\n";
}

std::string cv_result_json(const CvResult& cv) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = cv.seed;
  j["K"] = cv.K;
  j["n"] = cv.n;
  j["normalization"] = cv.normalization == CvNormalization::full_n ? "full_n" : "fold_n";
  j["tie_break"] = "larger lambda, then larger q";
  j["lambdas"] = vector_json(cv.lambdas);
  j["qs"] = cv.qs;
  ordered_json table = ordered_json::array();
  for (Index li = 0; li < cv.cve.rows(); ++li) table.push_back(vector_json(cv.cve.row(li).transpose()));
  j["cve"] = table;
  j["best"] = {{"lambda", cv.best_lambda()},
               {"q", cv.best_q()},
               {"cve", number(cv.best_cve())},
               {"lambda_index", cv.best_lambda_index},
               {"q_index", cv.best_q_index}};
  j["failed_points"] = cv.failed_points;
  j["fold_assignments"] = cv.fold_assignments;
  return j.dump(2) + "\n";
}

std::string cve_surface_csv(const std::vector<CveRow>& rows, std::uint64_t seed) {
  std::string out = provenance(seed) + "q,log_lambda,cve\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{}\n", format_double(r.q), format_double(r.log_lambda),
                       format_double(r.cve));
  return out;
}

std::string summary_csv(const ReplicationReport& report) {
  std::string out = provenance(report.seed) + "label,MME,C,IC,U-fit,C-fit,O-fit,nreps,failures\n";
  for (const auto& s : report.summaries)
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", s.label, cell(s.mme), cell(s.c), cell(s.ic),
                       cell(s.u_fit), cell(s.c_fit), cell(s.o_fit), s.nreps, s.failures);
  return out;
}

std::string raw_me_csv(const ReplicationReport& report, const std::vector<std::string>& labels) {
  std::string out = provenance(report.seed) + "replication";
  for (const auto& l : labels) out += "," + l;
  out += "\n";
  for (int r = 0; r < report.nreps; ++r) {
    out += std::to_string(r);
    for (const auto& arm : report.raw_me) out += "," + cell(arm[static_cast<std::size_t>(r)]);
    out += "\n";
  }
  return out;
}

std::string split_eval_csv(const SplitEvalReport& report) {
  std::string out = provenance(report.seed) + "label,MSE_y,RMSE_y";
  for (const auto& p : report.prior_labels) out += fmt::format(",MSE_{0},RMSE_{0}", p);
  out += ",n_vars\n";
  for (const auto& row : report.rows) {
    out += fmt::format("{},{},{}", row.label, cell(row.mse_y), cell(row.rmse_y));
    for (std::size_t t = 0; t < row.mse_beta0.size(); ++t)
      out += fmt::format(",{},{}", cell(row.mse_beta0[t]), cell(row.rmse_beta0[t]));
    out += fmt::format(",{}\n", cell(row.n_vars));
  }
  return out;
}

}  // namespace rbridge
