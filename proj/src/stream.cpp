#include "neuralbandit/stream.hpp"

#include <stdexcept>

namespace neuralbandit::data {

std::size_t DriftSchedule::apply(std::size_t round, std::size_t label, std::size_t class_count) const {
  if (period == 0) return label;
  const std::size_t drifts = round / period;
  return (label + (drifts % class_count) * (step % class_count)) % class_count;
}

StreamEvent::StreamEvent(std::size_t round, std::span<const double> context, std::size_t rewarded_arm,
                         std::size_t arm_count)
    : round_(round), context_(context), rewarded_arm_(rewarded_arm), arm_count_(arm_count) {
  if (rewarded_arm >= arm_count) throw std::invalid_argument("rewarded arm out of range");
}

std::vector<double> StreamEvent::full_rewards() const {
  std::vector<double> r(arm_count_, 0.0);
  r[rewarded_arm_] = 1.0;
  return r;
}

EncodedDataset encode_dataset(const RawDataset& data, const BinarizationScheme& scheme) {
  data.check();
  EncodedDataset out;
  out.width = scheme.output_width();
  out.class_count = data.class_count;
  out.contexts.resize(data.size() * out.width);
  out.labels.resize(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    encode_into(scheme, data.row(r), {out.contexts.data() + r * out.width, out.width});
    out.labels[r] = static_cast<std::size_t>(data.labels[r] - 1);
  }
  return out;
}

ReplayStream::ReplayStream(std::shared_ptr<const EncodedDataset> data, std::size_t start_offset,
                           std::optional<DriftSchedule> drift)
    : data_(std::move(data)), start_offset_(0), drift_(drift) {
  if (!data_ || data_->size() == 0) throw std::invalid_argument("cannot stream an empty dataset");
  if (drift_ && drift_->period == 0) drift_.reset();
  start_offset_ = start_offset % data_->size();
}

const StreamEvent& ReplayStream::next() {
  const std::size_t row = (start_offset_ + round_ % data_->size()) % data_->size();
  std::size_t label = data_->labels[row];
  if (drift_) label = drift_->apply(round_, label, data_->class_count);
  current_ = StreamEvent(round_, data_->context(row), label, data_->class_count);
  ++round_;
  return current_;
}

XorStream::XorStream(std::uint64_t seed, std::size_t noise_bits, std::optional<DriftSchedule> drift)
    : rng_(seed), noise_bits_(noise_bits), drift_(drift), context_(3 + noise_bits, 0.0) {
  if (drift_ && drift_->period == 0) drift_.reset();
}

const StreamEvent& XorStream::next() {
  context_[0] = static_cast<double>(rng_.below(2));
  context_[1] = static_cast<double>(rng_.below(2));
  context_[2] = 1.0;
  for (std::size_t i = 0; i < noise_bits_; ++i) context_[3 + i] = static_cast<double>(rng_.below(2));
  std::size_t arm = rewarded_arm(context_[0], context_[1]);
  if (drift_) arm = drift_->apply(round_, arm, 2);
  current_ = StreamEvent(round_, context_, arm, 2);
  ++round_;
  return current_;
}

}  // namespace neuralbandit::data
