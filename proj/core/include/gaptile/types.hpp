#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaptile {

using Int = std::int64_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorKind {
    InvalidInput,
    GrowthViolation,
    MultiplicityViolation,
    CardinalityViolation,
    RangeError,
    SearchExhausted,
    PreconditionError,
    WidthMismatch,
    OffsetError,
    PeriodError,
    HeightMismatch,
    OffsetCollision,
    NoRepresentation,
    EmptyResult,
    VerificationFailed,
    Io,
};

const char* to_string(ErrorKind kind);

class TilingError : public std::runtime_error {
public:
    TilingError(ErrorKind kind, const std::string& message);
    TilingError(ErrorKind kind, const std::string& message, Int required, Int actual);

    ErrorKind kind() const noexcept { return kind_; }
    const std::optional<Int>& required() const noexcept { return required_; }
    const std::optional<Int>& actual() const noexcept { return actual_; }

    // Stage label of the pipeline stage that raised the error, if any.
    const std::string& stage() const noexcept { return stage_; }
    void set_stage(std::string stage) { stage_ = std::move(stage); }

    // True for errors that mean the input does not meet a construction
    // hypothesis (growth, multiplicity, cardinality).
    bool is_hypothesis_violation() const noexcept;

private:
    ErrorKind kind_;
    std::optional<Int> required_;
    std::optional<Int> actual_;
    std::string stage_;
};

// ---------------------------------------------------------------------------
// Gap multisets
// ---------------------------------------------------------------------------

struct GapEntry {
    Int distance = 0;
    Int multiplicity = 0;
    auto operator<=>(const GapEntry&) const = default;
};

/// Multiset of positive gap lengths, kept sorted by distance with merged
/// multiplicities.
class GapSet {
public:
    GapSet() = default;
    explicit GapSet(std::vector<GapEntry> entries);

    static GapSet from_gaps(std::span<const Int> gaps);

    const std::vector<GapEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t distinct() const noexcept { return entries_.size(); }

    /// Total number of gaps (sum of multiplicities).
    Int size() const noexcept { return size_; }
    Int points_per_tile() const noexcept { return size_ + 1; }

    Int multiplicity_of(Int distance) const noexcept;

    /// All gaps with repetition, ascending.
    std::vector<Int> expanded() const;

    /// Multiset union with `multiplicity` copies of `distance`.
    GapSet with(Int distance, Int multiplicity) const;

    std::string to_string() const;

    bool operator==(const GapSet&) const = default;

private:
    std::vector<GapEntry> entries_;
    Int size_ = 0;
};

/// Index split of the distinct distances d_1 < ... < d_{s+p}: the first s go
/// through the boundary-prefix stages, the last p through the homogeneous
/// stages.
struct SplitSpec {
    int s = 2;
    int p = 0;
    bool operator==(const SplitSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Tiles and interval tilings
// ---------------------------------------------------------------------------

/// Strictly increasing integer sequence. Also used for homogeneous
/// sequences, which share the same representation.
class Tile {
public:
    explicit Tile(std::vector<Int> points);

    const std::vector<Int>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    Int front() const noexcept { return points_.front(); }
    Int back() const noexcept { return points_.back(); }
    Int operator[](std::size_t i) const noexcept { return points_[i]; }

    std::vector<Int> gaps() const;

    bool operator==(const Tile&) const = default;

private:
    std::vector<Int> points_;
};

GapSet gap_multiset(const Tile& tile);

struct IntervalAnnotations {
    std::optional<Int> boundary_prefix_count;
    std::optional<GapSet> homogeneous_for;
    bool operator==(const IntervalAnnotations&) const = default;
};

/// Partition certificate for {0, ..., length-1}. Tiles are kept as explicit
/// point lists so that verification never depends on construction metadata.
struct IntervalTiling {
    Int length = 0;
    std::optional<GapSet> gap_set;
    std::vector<Tile> tiles;
    IntervalAnnotations annotations;

    bool operator==(const IntervalTiling&) const = default;
};

// ---------------------------------------------------------------------------
// Lattice paths and rectangle tilings
// ---------------------------------------------------------------------------

struct Vec2 {
    Int x = 0;
    Int y = 0;
    auto operator<=>(const Vec2&) const = default;
    Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
};

inline constexpr Vec2 kE1{1, 0};
inline constexpr Vec2 kE2{0, 1};

class LatticePath {
public:
    LatticePath() = default;
    explicit LatticePath(std::vector<Vec2> points);

    const std::vector<Vec2>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t steps() const noexcept { return points_.empty() ? 0 : points_.size() - 1; }
    const Vec2& front() const noexcept { return points_.front(); }
    const Vec2& back() const noexcept { return points_.back(); }

    std::vector<Vec2> step_vectors() const;

    bool operator==(const LatticePath&) const = default;

private:
    std::vector<Vec2> points_;
};

struct StepEntry {
    Vec2 step;
    Int multiplicity = 0;
    auto operator<=>(const StepEntry&) const = default;
};

/// Multiset of step vectors, normalized like GapSet.
class StepType {
public:
    StepType() = default;
    explicit StepType(std::vector<StepEntry> entries);

    static StepType from_steps(std::span<const Vec2> steps);
    /// {e1^(horizontal), e2^(vertical)}
    static StepType unit(Int horizontal, Int vertical);
    /// Horizontal steps (g, 0) for every gap of `gaps`, plus `vertical` unit e2 steps.
    static StepType lifted(const GapSet& gaps, Int vertical);

    const std::vector<StepEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    Int size() const noexcept { return size_; }

    bool operator==(const StepType&) const = default;

private:
    std::vector<StepEntry> entries_;
    Int size_ = 0;
};

/// Tiling of [0,width-1] x [0,height-1] by lattice paths.
///
/// With window == 0 every path must have exactly `step_type` as its step
/// multiset. With window > 0 every run of `window` consecutive steps of every
/// path must have that multiset, and paths need at least `window` steps.
/// An empty step_type means only the partition is checked.
struct RectangleTiling {
    Int width = 0;
    Int height = 0;
    std::vector<LatticePath> paths;
    StepType step_type;
    Int window = 0;

    bool operator==(const RectangleTiling&) const = default;
};

/// Path tiling of support x [0,height-1] where support is a strictly
/// increasing list of x coordinates (a "ragged rectangle").
struct LiftedTiling {
    std::vector<Int> support;
    Int height = 0;
    std::vector<LatticePath> paths;
    StepType step_type;
    Int window = 0;

    bool operator==(const LiftedTiling&) const = default;
};

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

enum class ViolationKind {
    Overlap,
    Hole,
    OutOfRange,
    GapMismatch,
    BoundaryPrefixViolation,
    WindowMismatch,
    ShortSequence,
    TypeMismatch,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::vector<Int> location;
    std::string detail;
    bool operator==(const Violation&) const = default;
};

class VerificationReport {
public:
    static constexpr std::size_t kDefaultCap = 32;

    explicit VerificationReport(std::size_t cap = kDefaultCap) : cap_(cap) {}

    bool ok() const noexcept { return total_ == 0; }
    /// Stored violations, at most `cap()` of them.
    const std::vector<Violation>& violations() const noexcept { return violations_; }
    std::size_t total() const noexcept { return total_; }
    std::size_t cap() const noexcept { return cap_; }

    void add(ViolationKind kind, std::vector<Int> location, std::string detail = {});
    void merge(const VerificationReport& other);
    /// Orders stored violations by (location, kind).
    void sort();

    std::string summary() const;

    bool operator==(const VerificationReport&) const = default;

private:
    std::vector<Violation> violations_;
    std::size_t total_ = 0;
    std::size_t cap_;
};

// ---------------------------------------------------------------------------
// Small arithmetic helpers
// ---------------------------------------------------------------------------

Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);
Int lcm_checked(Int a, Int b);

}  // namespace gaptile
