#include "fairlin/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fairlin/errors.hpp"
#include "fairlin/hashing.hpp"
#include "fairlin/rng.hpp"

namespace fairlin {

namespace {

std::optional<double> parse_double(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(static_cast<size_t>(i)).get<double>();
  return v;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Eigen::MatrixXd(0, 0);
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    m.row(i) = vector_from_json(j.at(static_cast<size_t>(i))).transpose();
  return m;
}

void append_stat(json& row, const std::string& name, const MetricStat& st) {
  row[name + "_mean"] = st.mean;
  row[name + "_std"] = st.std;
}

std::string csv_cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("io_error", "cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("io_error", "short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

LoadedCsv load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("io_error", "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("io_error", "'" + path + "' is empty");
  const std::vector<std::string> header = split_line(line);

  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw MissingColumn(name);
    return static_cast<size_t>(it - header.begin());
  };

  const size_t sensitive_col = column_of(schema.sensitive);
  const size_t target_col = column_of(schema.target);

  std::vector<std::string> feature_names = schema.features;
  if (feature_names.empty()) {
    for (size_t c = 0; c < header.size(); ++c)
      if (c != sensitive_col && c != target_col) feature_names.push_back(header[c]);
  }
  std::vector<size_t> feature_cols;
  for (const auto& name : feature_names) feature_cols.push_back(column_of(name));

  std::vector<std::vector<double>> x_rows;
  std::vector<double> y_vals;
  std::vector<std::string> raw_labels;
  long dropped = 0;
  long row_number = 1;  // header was row 1

  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw DataError("ragged_row", "row " + std::to_string(row_number) + " has " +
                                        std::to_string(cells.size()) + " cells, header has " +
                                        std::to_string(header.size()));
    std::vector<double> xs(feature_cols.size());
    bool bad = false;
    for (size_t k = 0; k < feature_cols.size() && !bad; ++k) {
      if (auto v = parse_double(cells[feature_cols[k]])) xs[k] = *v;
      else if (schema.drop_bad_rows) bad = true;
      else throw NonNumericCell(row_number, feature_names[k], cells[feature_cols[k]]);
    }
    double y = 0.0;
    if (!bad) {
      if (auto v = parse_double(cells[target_col])) y = *v;
      else if (schema.drop_bad_rows) bad = true;
      else throw NonNumericCell(row_number, schema.target, cells[target_col]);
    }
    if (bad) {
      ++dropped;
      continue;
    }
    x_rows.push_back(std::move(xs));
    y_vals.push_back(y);
    raw_labels.push_back(cells[sensitive_col]);
  }
  if (x_rows.empty()) throw DataError("io_error", "'" + path + "' has no data rows");

  // Distinct labels sorted ascending (numeric-aware) define the 1..M mapping.
  std::vector<std::string> distinct;
  for (const auto& label : raw_labels)
    if (std::find(distinct.begin(), distinct.end(), label) == distinct.end())
      distinct.push_back(label);
  if (distinct.size() < 2) throw TooFewGroups(static_cast<long>(distinct.size()));
  bool all_numeric = true;
  for (const auto& label : distinct)
    if (!parse_double(label)) all_numeric = false;
  std::sort(distinct.begin(), distinct.end(), [&](const std::string& a, const std::string& b) {
    if (all_numeric) return *parse_double(a) < *parse_double(b);
    return a < b;
  });
  std::map<std::string, int> label_index;
  for (size_t k = 0; k < distinct.size(); ++k) label_index[distinct[k]] = static_cast<int>(k) + 1;

  const auto n = static_cast<Eigen::Index>(x_rows.size());
  const auto d = static_cast<Eigen::Index>(feature_names.size());
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  std::vector<int> s(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = x_rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    y(i) = y_vals[static_cast<size_t>(i)];
    s[static_cast<size_t>(i)] = label_index[raw_labels[static_cast<size_t>(i)]];
  }

  LoadedCsv out{Dataset::create(std::move(x), std::move(s), std::move(y), distinct),
                std::move(feature_names), dropped};
  return out;
}

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& feature_names) {
  std::ostringstream os;
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    if (j < static_cast<Eigen::Index>(feature_names.size()))
      os << feature_names[static_cast<size_t>(j)];
    else
      os << "x" << (j + 1);
    os << ',';
  }
  os << "s,y\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) os << format_double(data.x(i, j)) << ',';
    os << data.group_labels[static_cast<size_t>(data.s[static_cast<size_t>(i)] - 1)] << ','
       << format_double(data.y(i)) << '\n';
  }
  atomic_write(path, os.str());
}

// ---- model ------------------------------------------------------------------

json model_to_json(const BaseLinearModel& model, const std::vector<std::string>& feature_names) {
  json j;
  j["tool_version"] = kToolVersion;
  j["beta"] = vector_to_json(model.beta);
  j["gamma"] = model.gamma;
  j["beta0"] = model.beta0;
  j["aware"] = model.aware;
  j["feature_names"] = feature_names;
  return j;
}

BaseLinearModel model_from_json(const json& j) {
  BaseLinearModel m;
  m.beta = vector_from_json(j.at("beta"));
  m.gamma = j.at("gamma").get<double>();
  m.beta0 = j.at("beta0").get<double>();
  m.aware = j.at("aware").get<bool>();
  return m;
}

std::vector<std::string> feature_names_from_json(const json& j) {
  std::vector<std::string> names;
  if (j.contains("feature_names"))
    for (const auto& n : j.at("feature_names")) names.push_back(n.get<std::string>());
  return names;
}

// ---- group stats --------------------------------------------------------------

json stats_to_json(const GroupStats& stats) {
  json j;
  j["prior"] = vector_to_json(stats.prior);
  j["count"] = stats.count;
  j["labels"] = stats.labels;
  j["mean"] = json::array();
  j["covariance"] = json::array();
  for (int g = 0; g < stats.group_count(); ++g) {
    j["mean"].push_back(vector_to_json(stats.mean[static_cast<size_t>(g)]));
    j["covariance"].push_back(matrix_to_json(stats.covariance[static_cast<size_t>(g)]));
  }
  return j;
}

GroupStats stats_from_json(const json& j) {
  GroupStats stats;
  stats.prior = vector_from_json(j.at("prior"));
  stats.count = j.at("count").get<std::vector<std::int64_t>>();
  stats.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& m : j.at("mean")) stats.mean.push_back(vector_from_json(m));
  for (const auto& c : j.at("covariance")) stats.covariance.push_back(matrix_from_json(c));
  return stats;
}

// ---- fair model ---------------------------------------------------------------

json fair_model_to_json(const FairPredictor& fp, const std::vector<std::string>& feature_names) {
  json j;
  j["tool_version"] = kToolVersion;
  j["epsilon"] = fp.epsilon;
  j["base"] = model_to_json(fp.base, feature_names);
  j["stats"] = stats_to_json(fp.stats);
  j["moments"] = {{"group_mean", vector_to_json(fp.moments.group_mean)},
                  {"group_std", vector_to_json(fp.moments.group_std)},
                  {"mean_bar", fp.moments.mean_bar},
                  {"std_bar", fp.moments.std_bar}};
  j["mu_eps"] = vector_to_json(fp.mu_eps);
  j["sigma_eps"] = vector_to_json(fp.sigma_eps);
  j["scale"] = vector_to_json(fp.scale);
  j["all_degenerate"] = fp.all_degenerate;
  const GroupCoefficients gc = group_coefficients(fp);
  json coeffs = json::array();
  for (int g = 0; g < fp.group_count(); ++g)
    coeffs.push_back({{"group", g + 1},
                      {"beta", vector_to_json(gc.beta_eps[static_cast<size_t>(g)])},
                      {"intercept", gc.intercept_eps(g)}});
  j["group_coefficients"] = coeffs;
  return j;
}

FairPredictor fair_model_from_json(const json& j) {
  FairPredictor fp;
  fp.epsilon = j.at("epsilon").get<double>();
  fp.base = model_from_json(j.at("base"));
  fp.stats = stats_from_json(j.at("stats"));
  fp.moments.group_mean = vector_from_json(j.at("moments").at("group_mean"));
  fp.moments.group_std = vector_from_json(j.at("moments").at("group_std"));
  fp.moments.mean_bar = j.at("moments").at("mean_bar").get<double>();
  fp.moments.std_bar = j.at("moments").at("std_bar").get<double>();
  fp.mu_eps = vector_from_json(j.at("mu_eps"));
  fp.sigma_eps = vector_from_json(j.at("sigma_eps"));
  fp.scale = vector_from_json(j.at("scale"));
  fp.all_degenerate = j.at("all_degenerate").get<bool>();
  return fp;
}

// ---- reports -------------------------------------------------------------------

json unfairness_to_json(const UnfairnessReport& r) {
  return {{"total", r.total},
          {"fmd", r.fmd},
          {"smd", r.smd},
          {"direct_mean", r.direct_mean},
          {"indirect_mean", r.indirect_mean},
          {"interaction", r.interaction},
          {"indirect_structural", r.indirect_structural}};
}

json fit_report_to_json(const FitReport& r) {
  return {{"mse", r.mse},
          {"r2_global", r.r2_global},
          {"r2_per_group", vector_to_json(r.r2_per_group)},
          {"gwr2", r.gwr2},
          {"gap", r.gap},
          {"gap_components", {{"w_y", r.w_y}, {"w_r", r.w_r}, {"b_y", r.b_y}, {"b_r", r.b_r}}},
          {"var_y_per_group", vector_to_json(r.var_y_per_group)},
          {"var_r_per_group", vector_to_json(r.var_r_per_group)},
          {"prior", vector_to_json(r.prior)}};
}

json feature_contribution_to_json(const FeatureContribution& fc,
                                  const std::vector<std::string>& feature_names) {
  json rows = json::array();
  for (Eigen::Index j = 0; j < fc.mean_term.size(); ++j) {
    const std::string name = j < static_cast<Eigen::Index>(feature_names.size())
                                 ? feature_names[static_cast<size_t>(j)]
                                 : "x" + std::to_string(j + 1);
    rows.push_back({{"feature", name},
                    {"mean_term", fc.mean_term(j)},
                    {"structural_term", fc.structural_term(j)},
                    {"interaction_term", fc.interaction_term(j)},
                    {"approx_total",
                     fc.mean_term(j) + fc.structural_term(j) + fc.interaction_term(j)}});
  }
  json j;
  j["rows"] = rows;
  j["cross_mean"] = fc.cross_mean;
  j["cross_structural"] = fc.cross_structural;
  j["diagonal_sigma"] = fc.diagonal_sigma;
  j["v_bar"] = fc.v_bar;
  j["approx_sum"] = fc.approx_sum;
  j["exact_indirect"] = fc.exact_indirect;
  j["fmd_minus_direct"] = fc.fmd_minus_direct;
  j["smd_exact"] = fc.smd_exact;
  j["smd_taylor"] = fc.smd_taylor;
  j["structural_remainder"] = fc.structural_remainder;
  j["taylor_rel_error"] = fc.taylor_rel_error;
  if (!fc.diagonal_sigma)
    j["note"] = "general-case: structural attribution approximate, covariance disparity unattributed";
  return j;
}

json equality_to_json(const EqualityConditions& ec) {
  return {{"unaware_model", ec.unaware_model},
          {"no_residual_association", ec.no_residual_association},
          {"feature_independence", ec.feature_independence},
          {"gamma_abs", ec.gamma_abs},
          {"association_ratio", ec.association_ratio},
          {"max_discrepancy", ec.max_discrepancy}};
}

// ---- synth -----------------------------------------------------------------------

json synth_config_to_json(const SynthConfig& cfg) {
  return {{"d", cfg.d},       {"n", cfg.n},           {"tau", cfg.tau},
          {"t_y", cfg.t_y},   {"t_mean", cfg.t_mean}, {"t_std", cfg.t_std},
          {"t_corr", cfg.t_corr}, {"noise_std", cfg.noise_std}, {"seed", cfg.seed}};
}

SynthConfig synth_config_from_json(const json& j) {
  SynthConfig cfg;
  cfg.d = j.value("d", cfg.d);
  cfg.n = j.value("n", cfg.n);
  cfg.tau = j.value("tau", cfg.tau);
  cfg.t_y = j.value("t_y", cfg.t_y);
  cfg.t_mean = j.value("t_mean", cfg.t_mean);
  cfg.t_std = j.value("t_std", cfg.t_std);
  cfg.t_corr = j.value("t_corr", cfg.t_corr);
  cfg.noise_std = j.value("noise_std", cfg.noise_std);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

json ground_truth_to_json(const SynthGroundTruth& gt, const SynthConfig& cfg) {
  json j;
  j["tool_version"] = kToolVersion;
  j["rng_version"] = kRngVersion;
  j["config"] = synth_config_to_json(cfg);
  j["config_hash"] = hash_hex(synth_config_to_json(cfg).dump());
  j["q"] = gt.q;
  j["mu"] = {vector_to_json(gt.mu[0]), vector_to_json(gt.mu[1])};
  j["sigma"] = {matrix_to_json(gt.sigma[0]), matrix_to_json(gt.sigma[1])};
  j["beta_true"] = vector_to_json(gt.beta_true);
  j["gamma_true"] = gt.gamma_true;
  j["beta0_true"] = gt.beta0_true;
  return j;
}

// ---- sweep ------------------------------------------------------------------------

json sweep_to_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    json row;
    row["config_hash"] = r.config_hash;
    row["seed"] = r.seed;
    row["method"] = r.method;
    if (std::isnan(r.epsilon)) row["epsilon"] = nullptr;
    else row["epsilon"] = r.epsilon;
    row["knob"] = r.knob;
    if (std::isnan(r.knob_value)) row["knob_value"] = nullptr;
    else row["knob_value"] = r.knob_value;
    row["runs"] = r.runs;
    row["split_sizes"] = {r.split_sizes[0], r.split_sizes[1], r.split_sizes[2]};
    append_stat(row, "mse", r.mse);
    append_stat(row, "rmse", r.rmse);
    append_stat(row, "gwr2", r.gwr2);
    append_stat(row, "ks", r.ks);
    append_stat(row, "ugauss", r.ugauss);
    append_stat(row, "fmd", r.fmd);
    append_stat(row, "smd", r.smd);
    append_stat(row, "udirect", r.udirect);
    append_stat(row, "uindirect_mean", r.uindirect_mean);
    append_stat(row, "uinteraction", r.uinteraction);
    append_stat(row, "uindirect_structural", r.uindirect_structural);
    rows.push_back(std::move(row));
  }
  json j;
  j["tool_version"] = kToolVersion;
  j["rng_version"] = kRngVersion;
  j["config_hash"] = result.config_hash;
  j["seed"] = result.seed;
  j["rows"] = rows;
  return j;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "config_hash,seed,method,epsilon,knob,knob_value,runs,n_train,n_test,n_unlabeled";
  const char* stats[] = {"mse",    "rmse", "gwr2",           "ks",
                         "ugauss", "fmd",  "smd",            "udirect",
                         "uindirect_mean", "uinteraction",   "uindirect_structural"};
  for (const char* s : stats) os << ',' << s << "_mean," << s << "_std";
  os << '\n';
  for (const auto& r : result.rows) {
    os << r.config_hash << ',' << r.seed << ',' << r.method << ',' << csv_cell(r.epsilon) << ','
       << r.knob << ',' << csv_cell(r.knob_value) << ',' << r.runs << ',' << r.split_sizes[0]
       << ',' << r.split_sizes[1] << ',' << r.split_sizes[2];
    for (const MetricStat* st : {&r.mse, &r.rmse, &r.gwr2, &r.ks, &r.ugauss, &r.fmd, &r.smd,
                                 &r.udirect, &r.uindirect_mean, &r.uinteraction,
                                 &r.uindirect_structural})
      os << ',' << csv_cell(st->mean) << ',' << csv_cell(st->std);
    os << '\n';
  }
  return os.str();
}

std::string comparison_table_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "method,epsilon,gwr2_mean,gwr2_std,rmse_mean,rmse_std,unfairness_mean,unfairness_std\n";
  for (const auto& r : result.rows) {
    os << r.method << ',' << csv_cell(r.epsilon) << ',' << csv_cell(r.gwr2.mean) << ','
       << csv_cell(r.gwr2.std) << ',' << csv_cell(r.rmse.mean) << ',' << csv_cell(r.rmse.std)
       << ',' << csv_cell(r.ks.mean) << ',' << csv_cell(r.ks.std) << '\n';
  }
  return os.str();
}

std::string coefficient_shift_csv(const std::vector<CoefficientShiftRow>& rows) {
  std::ostringstream os;
  os << "name,group,base_value,fair_value,delta\n";
  for (const auto& r : rows)
    os << r.name << ',' << r.group << ',' << format_double(r.base_value) << ','
       << format_double(r.fair_value) << ',' << format_double(r.delta) << '\n';
  return os.str();
}

// ---- audit -------------------------------------------------------------------------

json audit_to_json(const AuditDocument& doc) {
  json j;
  j["tool_version"] = doc.tool_version;
  j["config_hash"] = doc.config_hash;
  j["model"] = model_to_json(doc.model, doc.feature_names);
  j["group_stats"] = stats_to_json(doc.stats);
  j["fit"] = fit_report_to_json(doc.fit);
  j["unfairness"] = unfairness_to_json(doc.unfairness);
  j["features"] = feature_contribution_to_json(doc.features, doc.feature_names);
  j["equality_conditions"] = equality_to_json(doc.equality);
  return j;
}

AuditDocument audit_from_json(const json& j) {
  AuditDocument doc;
  doc.tool_version = j.at("tool_version").get<std::string>();
  doc.config_hash = j.at("config_hash").get<std::string>();
  doc.model = model_from_json(j.at("model"));
  doc.feature_names = feature_names_from_json(j.at("model"));
  doc.stats = stats_from_json(j.at("group_stats"));

  const json& f = j.at("fit");
  doc.fit.mse = f.at("mse").get<double>();
  doc.fit.r2_global = f.at("r2_global").get<double>();
  doc.fit.r2_per_group = vector_from_json(f.at("r2_per_group"));
  doc.fit.gwr2 = f.at("gwr2").get<double>();
  doc.fit.gap = f.at("gap").get<double>();
  doc.fit.w_y = f.at("gap_components").at("w_y").get<double>();
  doc.fit.w_r = f.at("gap_components").at("w_r").get<double>();
  doc.fit.b_y = f.at("gap_components").at("b_y").get<double>();
  doc.fit.b_r = f.at("gap_components").at("b_r").get<double>();
  doc.fit.var_y_per_group = vector_from_json(f.at("var_y_per_group"));
  doc.fit.var_r_per_group = vector_from_json(f.at("var_r_per_group"));
  doc.fit.prior = vector_from_json(f.at("prior"));

  const json& u = j.at("unfairness");
  doc.unfairness.total = u.at("total").get<double>();
  doc.unfairness.fmd = u.at("fmd").get<double>();
  doc.unfairness.smd = u.at("smd").get<double>();
  doc.unfairness.direct_mean = u.at("direct_mean").get<double>();
  doc.unfairness.indirect_mean = u.at("indirect_mean").get<double>();
  doc.unfairness.interaction = u.at("interaction").get<double>();
  doc.unfairness.indirect_structural = u.at("indirect_structural").get<double>();

  const json& fc = j.at("features");
  const auto n_features = static_cast<Eigen::Index>(fc.at("rows").size());
  doc.features.mean_term.resize(n_features);
  doc.features.structural_term.resize(n_features);
  doc.features.interaction_term.resize(n_features);
  for (Eigen::Index k = 0; k < n_features; ++k) {
    const json& row = fc.at("rows").at(static_cast<size_t>(k));
    doc.features.mean_term(k) = row.at("mean_term").get<double>();
    doc.features.structural_term(k) = row.at("structural_term").get<double>();
    doc.features.interaction_term(k) = row.at("interaction_term").get<double>();
  }
  doc.features.cross_mean = fc.at("cross_mean").get<double>();
  doc.features.cross_structural = fc.at("cross_structural").get<double>();
  doc.features.diagonal_sigma = fc.at("diagonal_sigma").get<bool>();
  doc.features.v_bar = fc.at("v_bar").get<double>();
  doc.features.approx_sum = fc.at("approx_sum").get<double>();
  doc.features.exact_indirect = fc.at("exact_indirect").get<double>();
  doc.features.fmd_minus_direct = fc.at("fmd_minus_direct").get<double>();
  doc.features.smd_exact = fc.at("smd_exact").get<double>();
  doc.features.smd_taylor = fc.at("smd_taylor").get<double>();
  doc.features.structural_remainder = fc.at("structural_remainder").get<double>();
  doc.features.taylor_rel_error = fc.at("taylor_rel_error").get<double>();

  const json& ec = j.at("equality_conditions");
  doc.equality.unaware_model = ec.at("unaware_model").get<bool>();
  doc.equality.no_residual_association = ec.at("no_residual_association").get<bool>();
  doc.equality.feature_independence = ec.at("feature_independence").get<bool>();
  doc.equality.gamma_abs = ec.at("gamma_abs").get<double>();
  doc.equality.association_ratio = ec.at("association_ratio").get<double>();
  doc.equality.max_discrepancy = ec.at("max_discrepancy").get<double>();
  return doc;
}

// ---- schema validation ----------------------------------------------------------------

bool schema_validate(const json& document, const json& schema, const json& root,
                     std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };

  if (schema.contains("$ref")) {
    const std::string ref = schema.at("$ref").get<std::string>();
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) return fail("unsupported $ref '" + ref + "'");
    const std::string name = ref.substr(prefix.size());
    if (!root.contains("$defs") || !root.at("$defs").contains(name))
      return fail("unresolved $ref '" + ref + "'");
    return schema_validate(document, root.at("$defs").at(name), root, error);
  }

  if (schema.contains("type")) {
    auto matches = [&](const std::string& type) {
      if (type == "object") return document.is_object();
      if (type == "array") return document.is_array();
      if (type == "string") return document.is_string();
      if (type == "number") return document.is_number() || document.is_null();  // NaN -> null
      if (type == "integer") return document.is_number_integer() || document.is_number_unsigned();
      if (type == "boolean") return document.is_boolean();
      if (type == "null") return document.is_null();
      return false;
    };
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_array()) {
      for (const auto& option : t) ok = ok || matches(option.get<std::string>());
    } else {
      ok = matches(t.get<std::string>());
    }
    if (!ok) return fail("type mismatch: expected " + t.dump() + ", got " + document.dump().substr(0, 80));
  }

  if (schema.contains("required")) {
    for (const auto& key : schema.at("required"))
      if (!document.contains(key.get<std::string>()))
        return fail("missing required key '" + key.get<std::string>() + "'");
  }
  if (schema.contains("properties") && document.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items())
      if (document.contains(key) && !schema_validate(document.at(key), sub, root, error))
        return false;
  }
  if (schema.contains("items") && document.is_array()) {
    for (const auto& element : document)
      if (!schema_validate(element, schema.at("items"), root, error)) return false;
  }
  return true;
}

}  // namespace fairlin
