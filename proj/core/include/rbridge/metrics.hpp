#pragma once

#include <rbridge/types.hpp>

#include <string>
#include <vector>

namespace rbridge {

/// (beta_hat - beta)' Sigma (beta_hat - beta)
double model_error(const Vector& beta_hat, const Vector& beta_true, const Matrix& Sigma);

enum class FitClass { under, correct, over };

std::string to_string(FitClass c);

struct SelectionOutcome {
  Index correct_zeros = 0;    // C
  Index incorrect_zeros = 0;  // IC
  FitClass fit = FitClass::over;
};

/// C, IC and the under/correct/over classification against the true support.
SelectionOutcome selection_metrics(const Vector& beta_hat, const IndexList& true_support);

/// Aggregates over replications for one estimator.
struct MetricsSummary {
  std::string label;
  double mme = 0.0;  // median model error
  double c = 0.0;
  double ic = 0.0;
  double u_fit = 0.0;
  double c_fit = 0.0;
  double o_fit = 0.0;
  int nreps = 0;
  int failures = 0;
};

/// Builds the summary from per-replication values (failed replications
/// already excluded). u_fit + c_fit + o_fit == 1 exactly when nreps > 0.
MetricsSummary summarize(const std::string& label, const std::vector<double>& model_errors,
                         const std::vector<SelectionOutcome>& outcomes, int failures);

double median(std::vector<double> values);

}  // namespace rbridge
