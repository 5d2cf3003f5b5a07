#include "wdro/model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wdro {

ReturnSample::ReturnSample(Eigen::MatrixXd returns,
                           std::vector<std::string> asset_labels,
                           std::vector<std::string> period_labels)
    : returns_(std::move(returns)),
      asset_labels_(std::move(asset_labels)),
      period_labels_(std::move(period_labels)) {
  if (returns_.rows() < 1 || returns_.cols() < 1)
    throw ValidationError(ValidationError::Code::EmptySample,
                          "return sample needs at least one period and one asset");
  if (!returns_.allFinite())
    throw ValidationError(ValidationError::Code::NonFiniteValue,
                          "return sample contains a non-finite entry");
  if (!asset_labels_.empty() &&
      asset_labels_.size() != static_cast<std::size_t>(returns_.cols()))
    throw ValidationError(ValidationError::Code::LabelSizeMismatch,
                          "asset label count does not match column count");
  if (!period_labels_.empty() &&
      period_labels_.size() != static_cast<std::size_t>(returns_.rows()))
    throw ValidationError(ValidationError::Code::LabelSizeMismatch,
                          "period label count does not match row count");
}

ReturnSample ReturnSample::rows(Eigen::Index first, Eigen::Index count) const {
  if (first < 0 || count < 1 || first + count > periods())
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "row range out of bounds");
  std::vector<std::string> period;
  if (!period_labels_.empty())
    period.assign(period_labels_.begin() + first,
                  period_labels_.begin() + first + count);
  return ReturnSample(returns_.middleRows(first, count), asset_labels_,
                      std::move(period));
}

Portfolio validate_portfolio(const Eigen::VectorXd& weights) {
  if (weights.size() < 1)
    throw ValidationError(ValidationError::Code::DimensionMismatch,
                          "portfolio needs at least one weight");
  if (!weights.allFinite())
    throw ValidationError(ValidationError::Code::NonFiniteValue,
                          "portfolio contains a non-finite weight");
  if (std::abs(weights.sum() - 1.0) > kPortfolioSumTol)
    throw ValidationError(ValidationError::Code::SumNotOne,
                          "portfolio weights do not sum to one");
  if (weights.minCoeff() < kPortfolioWeightFloor)
    throw ValidationError(ValidationError::Code::NegativeWeight,
                          "portfolio has a negative weight");
  return Portfolio(weights);
}

void DroConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ValidationError(ValidationError::Code::BadConfig, "epsilon must be >= 0");
  if (p < 1)
    throw ValidationError(ValidationError::Code::BadConfig, "p must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError(ValidationError::Code::BadConfig, "alpha must lie in (0,1)");
  if (!std::isfinite(mu))
    throw ValidationError(ValidationError::Code::BadConfig, "mu must be finite");
}

SampleMoments compute_moments(const ReturnSample& sample) {
  const auto& r = sample.returns();
  const double n = static_cast<double>(r.rows());
  Eigen::VectorXd mean = r.colwise().sum() / n;
  Eigen::MatrixXd centered = r.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / n;
  return SampleMoments{std::move(mean), std::move(cov)};
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::NumericalLimit: return "NumericalLimit";
  }
  return "?";
}

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, Eigen::Index row, Eigen::Index col) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ValidationError(ValidationError::Code::CsvFormat,
                          "bad numeric cell at row " + std::to_string(row) +
                              ", column " + std::to_string(col));
  return value;
}

}  // namespace

ReturnSample read_returns_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError(ValidationError::Code::CsvFormat, "empty CSV");
  auto header = split_csv_line(line);
  if (header.size() < 2)
    throw ValidationError(ValidationError::Code::CsvFormat,
                          "header must be date,<label1>,...");
  const std::size_t m = header.size() - 1;
  std::vector<std::string> assets(header.begin() + 1, header.end());

  std::vector<std::string> dates;
  std::vector<double> values;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != m + 1)
      throw ValidationError(ValidationError::Code::CsvFormat,
                            "row " + std::to_string(row + 1) + " has " +
                                std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(m + 1));
    if (cells[0].empty())
      throw ValidationError(ValidationError::Code::CsvFormat,
                            "missing date in row " + std::to_string(row + 1));
    dates.push_back(cells[0]);
    for (std::size_t j = 1; j <= m; ++j)
      values.push_back(parse_cell(cells[j], row + 1, static_cast<Eigen::Index>(j)));
    ++row;
  }
  if (row == 0)
    throw ValidationError(ValidationError::Code::CsvFormat, "CSV has no data rows");

  Eigen::MatrixXd returns(row, static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < row; ++i)
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j)
      returns(i, j) = values[static_cast<std::size_t>(i) * m + j];
  return ReturnSample(std::move(returns), std::move(assets), std::move(dates));
}

ReturnSample read_returns_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(ValidationError::Code::CsvFormat,
                          "cannot open file: " + path);
  return read_returns_csv(in);
}

namespace {

// Synthetic ISO dates for unlabeled samples: 2000-01-01 plus the row index.
std::string synthetic_date(Eigen::Index day_index) {
  // days -> civil date, proleptic Gregorian (Hinnant's algorithm)
  long days = 10957 + day_index;  // 2000-01-01 is day 10957 from 1970-01-01
  days += 719468;
  const long era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned mo = mp < 10 ? mp + 3 : mp - 9;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04ld-%02u-%02u", y + (mo <= 2), mo, d);
  return buf;
}

}  // namespace

void write_returns_csv(const ReturnSample& sample, std::ostream& out) {
  const Eigen::Index n = sample.periods();
  const Eigen::Index m = sample.assets();
  out << "date";
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!sample.asset_labels().empty())
      out << ',' << sample.asset_labels()[static_cast<std::size_t>(j)];
    else
      out << ",a" << (j + 1);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!sample.period_labels().empty())
      out << sample.period_labels()[static_cast<std::size_t>(i)];
    else
      out << synthetic_date(i);
    for (Eigen::Index j = 0; j < m; ++j)
      out << ',' << format_csv_double(sample.returns()(i, j));
    out << '\n';
  }
}

void write_returns_csv_file(const ReturnSample& sample, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw ValidationError(ValidationError::Code::CsvFormat,
                          "cannot write file: " + path);
  write_returns_csv(sample, out);
}

}  // namespace wdro
