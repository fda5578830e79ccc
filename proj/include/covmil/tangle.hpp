#ifndef COVMIL_TANGLE_HPP
#define COVMIL_TANGLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace covmil {

/// One Morse event acting on the running strand list, 1-based positions.
/// Cross swaps strands pos/pos+1 (positive: the strand entering from pos
/// passes over); Cup inserts two strands at pos; Cap joins strands pos/pos+1.
struct MorseEvent {
  enum class Kind { Cross, Cup, Cap } kind;
  int pos;
  int sign;  // crossings only, +1 / -1

  static MorseEvent cross(int pos, int sign) { return {Kind::Cross, pos, sign}; }
  static MorseEvent cup(int pos) { return {Kind::Cup, pos, 0}; }
  static MorseEvent cap(int pos) { return {Kind::Cap, pos, 0}; }
  bool operator==(const MorseEvent& o) const {
    return kind == o.kind && pos == o.pos && sign == o.sign;
  }
};

/// Morse-position word for a tangle in the cylinder; its annular closure
/// (top position j joined to bottom position j around one side) presents a
/// link in the solid torus. Labels map traced closure components (discovery
/// order) to link component indices 1..n. The optional orient flag (-1)
/// reverses a component against the default reading, which flows upward out
/// of its lowest cut position; rewrites set it to keep orientations attached
/// to the curves rather than to strand positions.
struct TangleWord {
  int width = 0;
  std::vector<MorseEvent> events;
  std::map<int, int> labels;
  std::map<int, int> orient;  // trace id -> +1 / -1, +1 when absent
  std::string name;

  /// Strand count after each event prefix; parse error on any violation.
  void validate_structure() const;
  /// Structure plus: labels form a bijection onto {1..n} over the traced
  /// closure components.
  void validate() const;

  int component_count() const;  // traced closure components
};

enum class RewriteKind { CyclicRotation, InsertR2, RemoveR2 };

struct RewriteMove {
  RewriteKind kind;
  int pos = 1;  // strand position for the R2 moves
};

TangleWord parse_tangle(const std::string& text);
std::string to_text(const TangleWord& w);

/// Isotopy generators on words: cyclic rotation moves the first event past
/// the closure; insert-R2 appends a cancelling crossing pair at pos;
/// remove-R2 deletes such a trailing pair. Labels are carried across.
TangleWord word_rewrite(const TangleWord& w, const RewriteMove& move);

}  // namespace covmil

#endif
