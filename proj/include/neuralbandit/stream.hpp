#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "neuralbandit/binarization.hpp"
#include "neuralbandit/dataset.hpp"
#include "neuralbandit/rng.hpp"

namespace neuralbandit::data {

// Circular class swap (1 -> 2, ..., K -> 1) applied every `period` rounds.
struct DriftSchedule {
  std::size_t period = 0;
  std::size_t step = 1;

  // Effective 0-based class at `round` for an original 0-based class.
  std::size_t apply(std::size_t round, std::size_t label, std::size_t class_count) const;
};

// One round of a stream. The context is what a policy sees before playing;
// rewards are held by the evaluator and only reward(played_arm) is passed on.
class StreamEvent {
 public:
  StreamEvent() = default;
  StreamEvent(std::size_t round, std::span<const double> context, std::size_t rewarded_arm,
              std::size_t arm_count);

  std::size_t round() const { return round_; }
  std::span<const double> context() const { return context_; }
  double reward(std::size_t arm) const { return arm == rewarded_arm_ ? 1.0 : 0.0; }
  std::size_t rewarded_arm() const { return rewarded_arm_; }
  std::size_t arm_count() const { return arm_count_; }
  std::vector<double> full_rewards() const;

 private:
  std::size_t round_ = 0;
  std::span<const double> context_;
  std::size_t rewarded_arm_ = 0;
  std::size_t arm_count_ = 0;
};

// Unbounded source of events. The event returned by next() stays valid until
// the following call.
class EventSource {
 public:
  virtual ~EventSource() = default;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t arm_count() const = 0;
  virtual const StreamEvent& next() = 0;
};

// Binarized contexts and 0-based labels of a whole dataset.
struct EncodedDataset {
  std::size_t width = 0;
  std::size_t class_count = 0;
  std::vector<double> contexts;
  std::vector<std::size_t> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const double> context(std::size_t r) const { return {contexts.data() + r * width, width}; }
};

EncodedDataset encode_dataset(const RawDataset& data, const BinarizationScheme& scheme);

// Replays a dataset in a loop from `start_offset`, optionally relabelled by a
// drift schedule. Round t shows row (start_offset + t) mod n.
class ReplayStream final : public EventSource {
 public:
  ReplayStream(std::shared_ptr<const EncodedDataset> data, std::size_t start_offset,
               std::optional<DriftSchedule> drift = std::nullopt);

  std::size_t input_dim() const override { return data_->width; }
  std::size_t arm_count() const override { return data_->class_count; }
  const StreamEvent& next() override;

 private:
  std::shared_ptr<const EncodedDataset> data_;
  std::size_t start_offset_;
  std::optional<DriftSchedule> drift_;
  std::size_t round_ = 0;
  StreamEvent current_;
};

// Two-arm XOR stream. Context = (x1, x2, 1, noise bits...) with x1, x2 and the
// noise bits uniform in {0, 1}; the constant third input lets biasless models
// express offsets. Arm 0 pays iff x1 XOR x2, arm 1 otherwise.
class XorStream final : public EventSource {
 public:
  explicit XorStream(std::uint64_t seed, std::size_t noise_bits = 0,
                     std::optional<DriftSchedule> drift = std::nullopt);

  std::size_t input_dim() const override { return 3 + noise_bits_; }
  std::size_t arm_count() const override { return 2; }
  const StreamEvent& next() override;

  static std::size_t rewarded_arm(double x1, double x2) { return (x1 != x2) ? 0 : 1; }

 private:
  Rng rng_;
  std::size_t noise_bits_;
  std::optional<DriftSchedule> drift_;
  std::size_t round_ = 0;
  std::vector<double> context_;
  StreamEvent current_;
};

}  // namespace neuralbandit::data
