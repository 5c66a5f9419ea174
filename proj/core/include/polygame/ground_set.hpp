#ifndef POLYGAME_GROUND_SET_HPP
#define POLYGAME_GROUND_SET_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace polygame {

// Finite ground set E = {0, .., m-1} with optional element labels.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(int size) : size_(size) {
    if (size <= 0) throw std::invalid_argument("ground set must be nonempty");
    labels_.reserve(size);
    for (int e = 0; e < size; ++e) labels_.push_back("e" + std::to_string(e));
  }

  GroundSet(int size, std::vector<std::string> labels) : size_(size), labels_(std::move(labels)) {
    if (size <= 0) throw std::invalid_argument("ground set must be nonempty");
    if (static_cast<int>(labels_.size()) != size)
      throw std::invalid_argument("label count does not match ground set size");
  }

  int size() const { return size_; }
  const std::string& label(int e) const { return labels_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int size_ = 0;
  std::vector<std::string> labels_;
};

}  // namespace polygame

#endif  // POLYGAME_GROUND_SET_HPP
