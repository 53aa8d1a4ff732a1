#include "glcs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "glcs/errorprop.hpp"
#include "glcs/rng.hpp"

namespace glcs {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad number in " + key + ": " + item);
    }
  }
  if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
  return out;
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  }
}

}  // namespace

void ExperimentConfig::finalize() {
  if (n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (b == 0) b = 3 * k;
  const unsigned L = nbits();
  if (c0 == 0) {
    if (!(code_rate > 0.0 && code_rate <= 1.0))
      throw std::invalid_argument("config: code.rate must be in (0, 1]");
    c0 = static_cast<std::uint32_t>(std::ceil(L / code_rate));
  }
  if (c1 == 0) c1 = L;
  if (c2 == 0) c2 = 2 * L;
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (snr_db.empty()) throw std::invalid_argument("config: snr_db must be nonempty");
  if (alphabet_mode == AlphabetMode::Discrete && amplitude_kind == AmplitudeKind::UniformRange)
    throw std::invalid_argument(
        "config: discrete alphabet mode requires alphabet.values, not amplitude.lo/hi");
  if (amplitude_kind == AmplitudeKind::FixedAlphabet) {
    if (alphabet_values.empty()) throw std::invalid_argument("config: empty alphabet.values");
    for (double v : alphabet_values)
      if (!(v > 0.0))
        throw std::invalid_argument("config: alphabet.values must be positive magnitudes");
  } else {
    if (!(amplitude_lo > 0.0 && amplitude_hi >= amplitude_lo))
      throw std::invalid_argument("config: need 0 < amplitude.lo <= amplitude.hi");
    if (amplitude_lo < min_amplitude)
      throw std::invalid_argument("config: amplitude.lo below min_amplitude");
  }

  // Validate the scheme dimensions with a representative parameter set.
  scheme_params_for(*this, 1.0, TrialSeeds{}).validate();
}

std::vector<double> ExperimentConfig::decoder_alphabet() const {
  std::vector<double> alpha;
  alpha.reserve(alphabet_values.size() * 2);
  for (double v : alphabet_values) {
    alpha.push_back(v);
    alpha.push_back(-v);
  }
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  return alpha;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::stringstream ss{std::string(text)};
  std::string line;
  std::unordered_set<std::string> seen;
  while (std::getline(ss, line)) {
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got: " + trimmed);
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: empty key or value in: " + trimmed);
    if (!seen.insert(key).second)
      throw std::invalid_argument("config: duplicate key: " + key);

    if (key == "n") cfg.n = parse_u64(value, key);
    else if (key == "k") cfg.k = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "b") cfg.b = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "d") cfg.d = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "c0") cfg.c0 = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "c1") cfg.c1 = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "c2") cfg.c2 = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "tau") cfg.tau = parse_double(value, key);
    else if (key == "snr_db") cfg.snr_db = parse_double_list(value, key);
    else if (key == "trials") cfg.trials = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "alphabet.mode") {
      if (value == "discrete") cfg.alphabet_mode = AlphabetMode::Discrete;
      else if (value == "arbitrary") cfg.alphabet_mode = AlphabetMode::Arbitrary;
      else throw std::invalid_argument("config: alphabet.mode must be discrete|arbitrary");
    } else if (key == "alphabet.values") {
      cfg.alphabet_values = parse_double_list(value, key);
      cfg.amplitude_kind = AmplitudeKind::FixedAlphabet;
    } else if (key == "amplitude.lo") {
      cfg.amplitude_lo = parse_double(value, key);
      cfg.amplitude_kind = AmplitudeKind::UniformRange;
    } else if (key == "amplitude.hi") {
      cfg.amplitude_hi = parse_double(value, key);
      cfg.amplitude_kind = AmplitudeKind::UniformRange;
    } else if (key == "min_amplitude") cfg.min_amplitude = parse_double(value, key);
    else if (key == "code.kind") {
      if (value == "repetition") cfg.code_kind = CodecKind::Repetition;
      else if (value == "regular_ldpc" || value == "ldpc") cfg.code_kind = CodecKind::RegularLdpc;
      else throw std::invalid_argument("config: code.kind must be repetition|regular_ldpc");
    } else if (key == "code.rate") cfg.code_rate = parse_double(value, key);
    else if (key == "code.max_iters")
      cfg.code_max_iters = static_cast<std::uint32_t>(parse_u64(value, key));
    else if (key == "seeds.master") cfg.master_seed = parse_u64(value, key);
    else if (key == "out") cfg.out = value;
    else throw std::invalid_argument("config: unknown key: " + key);
  }
  cfg.finalize();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

TrialSeeds derive_trial_seeds(const ExperimentConfig& cfg, std::uint32_t snr_index,
                              std::uint32_t trial) {
  TrialSeeds s;
  s.graph = rng::hash(cfg.master_seed, rng::kTrialStream, cfg.k, trial, rng::kGraphStream);
  s.column = rng::hash(cfg.master_seed, rng::kTrialStream, cfg.k, trial, rng::kColumnStream);
  s.noise = rng::hash(cfg.master_seed, rng::kTrialStream, cfg.k,
                      (static_cast<std::uint64_t>(snr_index) << 32) | trial, rng::kNoiseStream);
  return s;
}

std::uint64_t derive_code_seed(const ExperimentConfig& cfg) {
  return rng::hash(cfg.master_seed, rng::kTrialStream, cfg.k, rng::kCodeStream);
}

SchemeParams scheme_params_for(const ExperimentConfig& cfg, double sigma2,
                               const TrialSeeds& seeds) {
  SchemeParams p;
  p.n = cfg.n;
  p.k = cfg.k;
  p.b = cfg.b;
  p.d = cfg.d;
  p.c0 = cfg.c0;
  p.c1 = cfg.c1;
  p.c2 = cfg.c2;
  p.sigma2 = sigma2;
  p.tau = cfg.tau;
  p.alphabet_mode = cfg.alphabet_mode;
  if (cfg.alphabet_mode == AlphabetMode::Discrete) p.alphabet = cfg.decoder_alphabet();
  p.min_amplitude = cfg.min_amplitude;
  p.code_kind = cfg.code_kind;
  p.code_max_iters = cfg.code_max_iters;
  p.graph_seed = seeds.graph;
  p.column_seed = seeds.column;
  p.noise_seed = seeds.noise;
  p.code_seed = derive_code_seed(cfg);
  return p;
}

IndexCodec make_codec(const ExperimentConfig& cfg) {
  return IndexCodec(cfg.code_kind, cfg.n, cfg.c0, derive_code_seed(cfg), cfg.code_max_iters);
}

SparseSignal sample_signal(const ExperimentConfig& cfg, std::uint32_t trial) {
  SparseSignal x(cfg.n);
  if (cfg.k == 0) return x;

  // Values are fixed per sparsity level; supports are per trial.
  const auto value_seed = rng::hash(cfg.master_seed, rng::kValueStream, cfg.k);
  std::vector<double> values(cfg.k);
  for (std::uint32_t slot = 0; slot < cfg.k; ++slot) {
    double mag;
    if (cfg.amplitude_kind == AmplitudeKind::FixedAlphabet) {
      const auto pick = rng::bounded(rng::hash(value_seed, 2ull * slot), cfg.alphabet_values.size());
      mag = cfg.alphabet_values[pick];
    } else {
      const double u = rng::unit(rng::hash(value_seed, 2ull * slot));
      mag = cfg.amplitude_lo + (cfg.amplitude_hi - cfg.amplitude_lo) * u;
    }
    const bool neg = rng::hash(value_seed, 2ull * slot + 1) & 1u;
    values[slot] = neg ? -mag : mag;
  }

  const auto support_seed =
      rng::hash(cfg.master_seed, rng::kSupportStream, cfg.k, trial);
  std::set<Index> support;
  std::uint64_t ctr = 0;
  while (support.size() < cfg.k)
    support.insert(rng::bounded(rng::hash(support_seed, ctr++), cfg.n));

  std::uint32_t slot = 0;
  for (Index i : support) x.set(i, values[slot++]);
  return x;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const IndexCodec& codec,
                      std::uint32_t snr_index, std::uint32_t trial) {
  const double snr_db = cfg.snr_db[snr_index];
  const double sigma2 = std::pow(10.0, -snr_db / 10.0);
  const auto seeds = derive_trial_seeds(cfg, snr_index, trial);
  const auto params = scheme_params_for(cfg, sigma2, seeds);

  const auto x = sample_signal(cfg, trial);
  const BinHasher hasher(params.b, params.d, params.graph_seed);
  const ColumnGenerator gen(codec, params.c1, params.c2, params.column_seed);
  auto meas = measure(x, hasher, gen, params.noise_seed, sigma2, Execution::Serial);

  const auto t0 = std::chrono::steady_clock::now();
  const auto dec =
      peel_decode(std::move(meas), params, codec, gen, hasher, Execution::Serial);
  const auto t1 = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.trial = trial;
  rec.snr_db = snr_db;
  rec.iterations = dec.iterations;
  rec.singleton_tests = dec.singleton_tests;
  rec.decode_seconds = std::chrono::duration<double>(t1 - t0).count();

  rec.support_ok = dec.estimate.entries.size() == x.entries.size() &&
                   std::equal(dec.estimate.entries.begin(), dec.estimate.entries.end(),
                              x.entries.begin(),
                              [](const auto& a, const auto& b) { return a.first == b.first; });
  if (rec.support_ok) {
    double err = 0.0;
    for (const auto& [i, v] : x.entries) {
      const double diff = v - dec.estimate.entries.at(i);
      err += diff * diff;
    }
    const double ref = x.norm2();
    rec.relative_mse = ref > 0.0 ? err / ref : 0.0;
  }
  return rec;
}

SweepResult sweep(const ExperimentConfig& cfg, Execution exec) {
  const auto codec = make_codec(cfg);
  const std::size_t S = cfg.snr_db.size();
  const std::size_t T = cfg.trials;

  SweepResult out;
  out.n = cfg.n;
  out.k = cfg.k;
  out.records.resize(S * T);
  const auto total = static_cast<std::int64_t>(S * T);
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const auto s = static_cast<std::uint32_t>(idx / static_cast<std::int64_t>(T));
      const auto t = static_cast<std::uint32_t>(idx % static_cast<std::int64_t>(T));
      out.records[idx] = run_trial(cfg, codec, s, t);
    }
  } else {
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const auto s = static_cast<std::uint32_t>(idx / static_cast<std::int64_t>(T));
      const auto t = static_cast<std::uint32_t>(idx % static_cast<std::int64_t>(T));
      out.records[idx] = run_trial(cfg, codec, s, t);
    }
  }

  out.summaries.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    auto& sum = out.summaries[s];
    sum.snr_db = cfg.snr_db[s];
    sum.trials = cfg.trials;
    double mse_total = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const auto& rec = out.records[s * T + t];
      if (!rec.support_ok) {
        sum.support_failures += 1;
      } else if (rec.relative_mse) {
        sum.mse_count += 1;
        mse_total += *rec.relative_mse;
      }
    }
    sum.support_error_rate = static_cast<double>(sum.support_failures) / sum.trials;
    if (sum.mse_count > 0) sum.mean_relative_mse = mse_total / sum.mse_count;
  }
  return out;
}

void write_records_csv(std::ostream& os, const SweepResult& result) {
  os << "trial,snr_db,n,k,support_ok,relative_mse,iterations,singleton_tests,decode_seconds\n";
  for (const auto& rec : result.records) {
    os << rec.trial << ',' << fmt_double(rec.snr_db) << ',' << result.n << ',' << result.k << ','
       << (rec.support_ok ? 1 : 0) << ','
       << (rec.relative_mse ? fmt_double(*rec.relative_mse) : std::string()) << ','
       << rec.iterations << ',' << rec.singleton_tests << ',' << fmt_double(rec.decode_seconds)
       << '\n';
  }
}

std::string records_csv(const SweepResult& result) {
  std::ostringstream os;
  write_records_csv(os, result);
  return os.str();
}

void write_summary(std::ostream& os, const SweepResult& result) {
  os << "snr_db  trials  support_error_rate  mean_relative_mse  n_support_ok\n";
  for (const auto& s : result.summaries) {
    os << fmt_double(s.snr_db) << "  " << s.trials << "  " << fmt_double(s.support_error_rate)
       << "  " << (s.mean_relative_mse ? fmt_double(*s.mean_relative_mse) : std::string("-"))
       << "  " << (s.trials - s.support_failures) << '\n';
  }
}

std::string analyze_graph_csv(std::uint32_t k, std::uint32_t b, std::uint32_t d,
                              std::uint32_t n_seeds, std::uint64_t master_seed) {
  std::ostringstream os;
  os << "seed,k,b,d,n_components,n_tree,n_unicyclic,n_complex,largest_signals\n";
  for (std::uint32_t s = 0; s < n_seeds; ++s) {
    const std::uint64_t seed = master_seed + s;
    const BinHasher hasher(b, d, seed);
    std::vector<Index> support(k);
    for (std::uint32_t i = 0; i < k; ++i) support[i] = i;
    const auto census = component_census(build_support_graph(support, hasher));
    os << seed << ',' << k << ',' << b << ',' << d << ',' << census.components.size() << ','
       << census.n_tree << ',' << census.n_unicyclic << ',' << census.n_complex << ','
       << census.largest_signals << '\n';
  }
  return os.str();
}

ErrorAnalysis analyze_errors(const ExperimentConfig& cfg) {
  ErrorAnalysis out;
  std::ostringstream os;
  os << "trial,node,iteration,e_i,p_i_mp,p_i_actual,var_bound\n";

  const auto codec = make_codec(cfg);
  const double sigma2 = std::pow(10.0, -cfg.snr_db[0] / 10.0);
  for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
    const auto seeds = derive_trial_seeds(cfg, 0, trial);
    const auto params = scheme_params_for(cfg, sigma2, seeds);
    const auto x = sample_signal(cfg, trial);
    const BinHasher hasher(params.b, params.d, params.graph_seed);
    const ColumnGenerator gen(codec, params.c1, params.c2, params.column_seed);
    auto meas = measure(x, hasher, gen, params.noise_seed, sigma2, Execution::Serial);
    const auto dec =
        peel_decode(std::move(meas), params, codec, gen, hasher, Execution::Serial);

    const bool support_ok =
        dec.estimate.entries.size() == x.entries.size() &&
        std::equal(dec.estimate.entries.begin(), dec.estimate.entries.end(), x.entries.begin(),
                   [](const auto& a, const auto& b) { return a.first == b.first; });
    if (!support_ok) {
      // The analysis conditions on correct detection; misclassified decodes
      // are counted, not analyzed.
      out.trials_excluded += 1;
      continue;
    }
    out.trials_used += 1;

    const auto graph = build_error_graph(dec, hasher, gen);
    const auto e = point_errors(graph, params.noise_seed, sigma2);
    const auto prop = propagate(graph, e);
    for (std::uint32_t u = 0; u < graph.nodes.size(); ++u) {
      const auto& node = graph.nodes[u];
      const double actual = x.entries.at(node.index) - dec.estimate.entries.at(node.index);
      os << trial << ',' << node.index << ',' << node.iteration << ',' << fmt_double(e[u]) << ','
         << fmt_double(prop.p[u]) << ',' << fmt_double(actual) << ',';
      if (node.component != ComponentClass::Complex)
        os << fmt_double(variance_bound(graph, u, sigma2));
      os << '\n';
    }
  }
  out.csv = os.str();
  return out;
}

}  // namespace glcs
