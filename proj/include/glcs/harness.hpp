#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "glcs/decoder.hpp"
#include "glcs/parallel.hpp"
#include "glcs/scheme.hpp"
#include "glcs/subcode.hpp"

namespace glcs {

enum class AmplitudeKind { FixedAlphabet, UniformRange };

/// Experiment description. Defaults mirror the standard setup: b = 3k, d = 3,
/// rate-1/2 regular LDPC subcode, c0 = 2L, c1 = L, c2 = 2L with L = ceil(log2 n).
struct ExperimentConfig {
  Index n = 0;
  std::uint32_t k = 0;
  std::uint32_t b = 0;   // 0 -> 3k
  std::uint32_t d = 3;
  std::uint32_t c0 = 0;  // 0 -> derived from n and code.rate
  std::uint32_t c1 = 0;  // 0 -> ceil(log2 n)
  std::uint32_t c2 = 0;  // 0 -> 2 ceil(log2 n)
  double tau = 0.5;
  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
  std::uint32_t trials = 100;
  AlphabetMode alphabet_mode = AlphabetMode::Discrete;
  AmplitudeKind amplitude_kind = AmplitudeKind::FixedAlphabet;
  std::vector<double> alphabet_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};  // magnitudes
  double amplitude_lo = 1.0;
  double amplitude_hi = 10.0;
  double min_amplitude = 1.0;
  CodecKind code_kind = CodecKind::RegularLdpc;
  double code_rate = 0.5;
  std::uint32_t code_max_iters = 50;
  std::uint64_t master_seed = 0;
  std::string out;

  void finalize();        // fills derived fields, validates; throws on errors
  unsigned nbits() const { return bits_for(n); }

  /// Decoder alphabet: the symmetric closure {+/-v} of the magnitude list.
  std::vector<double> decoder_alphabet() const;
};

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

struct TrialRecord {
  std::uint32_t trial = 0;
  double snr_db = 0.0;
  bool support_ok = false;
  std::optional<double> relative_mse;  // present iff support_ok
  std::uint32_t iterations = 0;
  std::uint64_t singleton_tests = 0;
  double decode_seconds = 0.0;
};

struct SnrSummary {
  double snr_db = 0.0;
  std::uint32_t trials = 0;
  std::uint32_t support_failures = 0;
  double support_error_rate = 0.0;
  std::uint32_t mse_count = 0;
  std::optional<double> mean_relative_mse;
};

struct SweepResult {
  Index n = 0;
  std::uint32_t k = 0;
  std::vector<TrialRecord> records;  // sorted by (snr index, trial)
  std::vector<SnrSummary> summaries;
};

/// Per-trial seeds. The code and the nonzero values are fixed per sparsity
/// level; support, graph and columns are fixed per (level, trial) so a trial
/// sees the same measurement system at every SNR; only the noise varies
/// with the SNR point.
struct TrialSeeds {
  std::uint64_t graph = 0;
  std::uint64_t column = 0;
  std::uint64_t noise = 0;
};
TrialSeeds derive_trial_seeds(const ExperimentConfig& cfg, std::uint32_t snr_index,
                              std::uint32_t trial);
std::uint64_t derive_code_seed(const ExperimentConfig& cfg);

SchemeParams scheme_params_for(const ExperimentConfig& cfg, double sigma2,
                               const TrialSeeds& seeds);

IndexCodec make_codec(const ExperimentConfig& cfg);

/// k distinct uniform indices; values fixed per sparsity level and assigned
/// to the sorted indices in draw order.
SparseSignal sample_signal(const ExperimentConfig& cfg, std::uint32_t trial);

TrialRecord run_trial(const ExperimentConfig& cfg, const IndexCodec& codec,
                      std::uint32_t snr_index, std::uint32_t trial);

SweepResult sweep(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

void write_records_csv(std::ostream& os, const SweepResult& result);
std::string records_csv(const SweepResult& result);
void write_summary(std::ostream& os, const SweepResult& result);

/// Component census over the left-d-regular ensemble; one CSV row per seed:
/// seed,k,b,d,n_components,n_tree,n_unicyclic,n_complex,largest_signals.
std::string analyze_graph_csv(std::uint32_t k, std::uint32_t b, std::uint32_t d,
                              std::uint32_t n_seeds, std::uint64_t master_seed);

struct ErrorAnalysis {
  std::string csv;  // trial,node,iteration,e_i,p_i_mp,p_i_actual,var_bound
  std::uint32_t trials_used = 0;
  std::uint32_t trials_excluded = 0;  // misclassified decodes (support mismatch)
};

/// Runs config trials at the first SNR point, builds the error graph of every
/// correctly classified decode and compares message-passing errors with the
/// decoder's actual errors.
ErrorAnalysis analyze_errors(const ExperimentConfig& cfg);

}  // namespace glcs
