#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zipshift/point.hpp"
#include "zipshift/space.hpp"

namespace zipshift {

// Sliding block code psi from source to target with anticipation window w:
//   y_i    = psi_plus(x_i .. x_{i+w-1})                 for i >= 0
//   y_{-k} = psi_minus(x_{-k}; z_{-k+1} .. z_{-k+w})    for k >= 1
// where z is an A' history of x (z_j = x_j for j >= 0).
struct BlockCodeSpec {
  ZipShiftSpace source;
  ZipShiftSpace target;
  std::size_t window = 1;
  std::map<Word, Symbol> psi_plus;
  std::map<std::pair<Symbol, Word>, Symbol> psi_minus;
};

struct CodeValidation {
  bool valid = false;
  std::string failure;
};

// Totality, local commutation and independence of the chosen history,
// all checked exhaustively over admissible blocks.
CodeValidation validate_code(const BlockCodeSpec& spec);

class BlockCode {
 public:
  explicit BlockCode(BlockCodeSpec spec);
  const BlockCodeSpec& spec() const { return spec_; }
  const CodeValidation& validation() const { return validation_; }
  bool valid() const { return validation_.valid; }

 private:
  BlockCodeSpec spec_;
  CodeValidation validation_;
};

// Throws InvalidCode when the code failed validation.
EpPoint apply_code(const BlockCode& code, const EpPoint& x);
// No validation; used to exhibit failures of broken tables.
EpPoint apply_code_unchecked(const BlockCodeSpec& spec, const EpPoint& x);

struct CommutationReport {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<EpPoint> counterexample;
  std::string reason;
};

// samples random source points plus every periodic point of period <= 4.
CommutationReport check_commutation(const BlockCodeSpec& spec, std::size_t samples,
                                    std::uint64_t seed = 0);

struct InverseSearch {
  std::optional<BlockCodeSpec> inverse;
  std::size_t max_window = 0;
  std::string reason;  // why nothing was found
};

InverseSearch invert_code(const BlockCodeSpec& spec, std::size_t max_window,
                          std::uint64_t seed = 0);

// Identity code on a space.
BlockCodeSpec identity_code(const ZipShiftSpace& space);

// Overlapping N-block recoding. A' letters become N-blocks of the history and
// A letters become phi images of those blocks, so the recoded space is again a
// zip shift space and the map commutes with the shifts.
class HigherBlock {
 public:
  HigherBlock(const ZipShiftSpace& source, std::size_t N);

  const ZipShiftSpace& source() const { return source_; }
  const ZipShiftSpace& target() const { return target_; }
  std::size_t N() const { return N_; }
  // A' block symbol -> spelled A' word; A block symbol -> A word.
  const Word& aprime_block(Symbol s) const { return aprime_blocks_[s]; }
  const Word& a_block(Symbol s) const { return a_blocks_[s]; }

  EpPoint forward(const EpPoint& x) const;
  EpPoint inverse(const EpPoint& y) const;
  // The same map as a block code with window N.
  BlockCodeSpec code() const;

 private:
  ZipShiftSpace source_;
  ZipShiftSpace target_;
  std::size_t N_;
  std::vector<Word> aprime_blocks_;
  std::vector<Word> a_blocks_;
};

// Non-overlapping N-block recoding; the target shift corresponds to sigma^N.
class HigherPower {
 public:
  HigherPower(const ZipShiftSpace& source, std::size_t N);

  const ZipShiftSpace& source() const { return source_; }
  const ZipShiftSpace& target() const { return target_; }
  std::size_t N() const { return N_; }

  EpPoint forward(const EpPoint& x) const;
  EpPoint inverse(const EpPoint& y) const;

 private:
  ZipShiftSpace source_;
  ZipShiftSpace target_;
  std::size_t N_;
  std::vector<Word> aprime_blocks_;
  std::vector<Word> a_blocks_;
};

}  // namespace zipshift
