#include <rbridge/errors.hpp>
#include <rbridge/metrics.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rbridge {

double model_error(const Vector& beta_hat, const Vector& beta_true, const Matrix& Sigma) {
  if (beta_hat.size() != beta_true.size() || Sigma.rows() != beta_hat.size() ||
      Sigma.cols() != beta_hat.size())
    throw InvalidArgument("model_error: dimension mismatch");
  const Vector d = beta_hat - beta_true;
  return d.dot(Sigma * d);
}

std::string to_string(FitClass c) {
  switch (c) {
    case FitClass::under: return "U";
    case FitClass::correct: return "C";
    case FitClass::over: return "O";
  }
  return "?";
}

SelectionOutcome selection_metrics(const Vector& beta_hat, const IndexList& true_support) {
  if (true_support.empty()) throw InvalidArgument("true support must be nonempty");
  std::vector<bool> in_support(static_cast<std::size_t>(beta_hat.size()), false);
  for (Index j : true_support) {
    if (j < 0 || j >= beta_hat.size())
      throw InvalidArgument(fmt::format("support index {} out of range", j));
    in_support[static_cast<std::size_t>(j)] = true;
  }
  SelectionOutcome out;
  bool extra = false;
  for (Index j = 0; j < beta_hat.size(); ++j) {
    const bool zero = beta_hat(j) == 0.0;
    if (in_support[static_cast<std::size_t>(j)]) {
      if (zero) ++out.incorrect_zeros;
    } else if (zero) {
      ++out.correct_zeros;
    } else {
      extra = true;
    }
  }
  if (out.incorrect_zeros > 0) {
    out.fit = FitClass::under;
  } else {
    out.fit = extra ? FitClass::over : FitClass::correct;
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

MetricsSummary summarize(const std::string& label, const std::vector<double>& model_errors,
                         const std::vector<SelectionOutcome>& outcomes, int failures) {
  if (model_errors.size() != outcomes.size())
    throw InvalidArgument("summarize: model errors and outcomes differ in length");
  MetricsSummary s;
  s.label = label;
  s.nreps = static_cast<int>(outcomes.size());
  s.failures = failures;
  s.mme = median(model_errors);
  if (outcomes.empty()) {
    s.c = s.ic = s.u_fit = s.c_fit = s.o_fit = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  long u = 0, c = 0;
  double zeros = 0.0, wrong = 0.0;
  for (const auto& o : outcomes) {
    zeros += static_cast<double>(o.correct_zeros);
    wrong += static_cast<double>(o.incorrect_zeros);
    if (o.fit == FitClass::under) ++u;
    if (o.fit == FitClass::correct) ++c;
  }
  const auto n = static_cast<double>(outcomes.size());
  s.c = zeros / n;
  s.ic = wrong / n;
  s.u_fit = static_cast<double>(u) / n;
  s.c_fit = static_cast<double>(c) / n;
  s.o_fit = 1.0 - (s.u_fit + s.c_fit);
  return s;
}

}  // namespace rbridge
