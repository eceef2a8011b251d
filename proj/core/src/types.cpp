#include "gaptile/types.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace gaptile {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::GrowthViolation: return "GrowthViolation";
        case ErrorKind::MultiplicityViolation: return "MultiplicityViolation";
        case ErrorKind::CardinalityViolation: return "CardinalityViolation";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::PreconditionError: return "PreconditionError";
        case ErrorKind::WidthMismatch: return "WidthMismatch";
        case ErrorKind::OffsetError: return "OffsetError";
        case ErrorKind::PeriodError: return "PeriodError";
        case ErrorKind::HeightMismatch: return "HeightMismatch";
        case ErrorKind::OffsetCollision: return "OffsetCollision";
        case ErrorKind::NoRepresentation: return "NoRepresentation";
        case ErrorKind::EmptyResult: return "EmptyResult";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

TilingError::TilingError(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

TilingError::TilingError(ErrorKind kind, const std::string& message, Int required, Int actual)
    : std::runtime_error(message), kind_(kind), required_(required), actual_(actual) {}

bool TilingError::is_hypothesis_violation() const noexcept {
    return kind_ == ErrorKind::GrowthViolation || kind_ == ErrorKind::MultiplicityViolation ||
           kind_ == ErrorKind::CardinalityViolation;
}

// ---------------------------------------------------------------------------

GapSet::GapSet(std::vector<GapEntry> entries) {
    for (const auto& e : entries) {
        if (e.distance < 1 || e.multiplicity < 1) {
            throw TilingError(ErrorKind::InvalidInput,
                              "gap set entries need distance >= 1 and multiplicity >= 1");
        }
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& e : entries) {
        if (!entries_.empty() && entries_.back().distance == e.distance) {
            entries_.back().multiplicity += e.multiplicity;
        } else {
            entries_.push_back(e);
        }
        size_ += e.multiplicity;
    }
}

GapSet GapSet::from_gaps(std::span<const Int> gaps) {
    std::vector<GapEntry> entries;
    entries.reserve(gaps.size());
    for (Int g : gaps) entries.push_back({g, 1});
    return GapSet(std::move(entries));
}

Int GapSet::multiplicity_of(Int distance) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), distance,
                               [](const GapEntry& e, Int d) { return e.distance < d; });
    return (it != entries_.end() && it->distance == distance) ? it->multiplicity : 0;
}

std::vector<Int> GapSet::expanded() const {
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (const auto& e : entries_) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.distance);
    return out;
}

GapSet GapSet::with(Int distance, Int multiplicity) const {
    auto entries = entries_;
    entries.push_back({distance, multiplicity});
    return GapSet(std::move(entries));
}

std::string GapSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ", ";
        os << entries_[i].distance << '^' << entries_[i].multiplicity;
    }
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------------------

Tile::Tile(std::vector<Int> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw TilingError(ErrorKind::InvalidInput, "a tile needs at least two points");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i] <= points_[i - 1]) {
            throw TilingError(ErrorKind::InvalidInput, "tile points must be strictly increasing");
        }
    }
}

std::vector<Int> Tile::gaps() const {
    std::vector<Int> g(points_.size() - 1);
    for (std::size_t i = 1; i < points_.size(); ++i) g[i - 1] = points_[i] - points_[i - 1];
    return g;
}

GapSet gap_multiset(const Tile& tile) {
    auto g = tile.gaps();
    return GapSet::from_gaps(g);
}

// ---------------------------------------------------------------------------

LatticePath::LatticePath(std::vector<Vec2> points) : points_(std::move(points)) {
    if (points_.empty()) throw TilingError(ErrorKind::InvalidInput, "a path needs at least one point");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const Vec2 d = points_[i] - points_[i - 1];
        if (d.x < 0 || d.y < 0 || (d.x == 0 && d.y == 0)) {
            throw TilingError(ErrorKind::InvalidInput,
                              "path steps must be coordinatewise nondecreasing and nonzero");
        }
    }
}

std::vector<Vec2> LatticePath::step_vectors() const {
    std::vector<Vec2> out;
    if (points_.size() < 2) return out;
    out.reserve(points_.size() - 1);
    for (std::size_t i = 1; i < points_.size(); ++i) out.push_back(points_[i] - points_[i - 1]);
    return out;
}

StepType::StepType(std::vector<StepEntry> entries) {
    for (const auto& e : entries) {
        if (e.multiplicity < 1 || e.step.x < 0 || e.step.y < 0 || (e.step.x == 0 && e.step.y == 0)) {
            throw TilingError(ErrorKind::InvalidInput,
                              "step type entries need nonnegative nonzero vectors and multiplicity >= 1");
        }
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& e : entries) {
        if (!entries_.empty() && entries_.back().step == e.step) {
            entries_.back().multiplicity += e.multiplicity;
        } else {
            entries_.push_back(e);
        }
        size_ += e.multiplicity;
    }
}

StepType StepType::from_steps(std::span<const Vec2> steps) {
    std::vector<StepEntry> entries;
    entries.reserve(steps.size());
    for (const auto& s : steps) entries.push_back({s, 1});
    return StepType(std::move(entries));
}

StepType StepType::unit(Int horizontal, Int vertical) {
    std::vector<StepEntry> entries;
    if (horizontal > 0) entries.push_back({kE1, horizontal});
    if (vertical > 0) entries.push_back({kE2, vertical});
    return StepType(std::move(entries));
}

StepType StepType::lifted(const GapSet& gaps, Int vertical) {
    std::vector<StepEntry> entries;
    for (const auto& e : gaps.entries()) entries.push_back({{e.distance, 0}, e.multiplicity});
    if (vertical > 0) entries.push_back({kE2, vertical});
    return StepType(std::move(entries));
}

// ---------------------------------------------------------------------------

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Overlap: return "Overlap";
        case ViolationKind::Hole: return "Hole";
        case ViolationKind::OutOfRange: return "OutOfRange";
        case ViolationKind::GapMismatch: return "GapMismatch";
        case ViolationKind::BoundaryPrefixViolation: return "BoundaryPrefixViolation";
        case ViolationKind::WindowMismatch: return "WindowMismatch";
        case ViolationKind::ShortSequence: return "ShortSequence";
        case ViolationKind::TypeMismatch: return "TypeMismatch";
    }
    return "Unknown";
}

void VerificationReport::add(ViolationKind kind, std::vector<Int> location, std::string detail) {
    ++total_;
    if (violations_.size() < cap_) violations_.push_back({kind, std::move(location), std::move(detail)});
}

void VerificationReport::merge(const VerificationReport& other) {
    total_ += other.total_;
    for (const auto& v : other.violations_) {
        if (violations_.size() >= cap_) break;
        violations_.push_back(v);
    }
}

void VerificationReport::sort() {
    std::stable_sort(violations_.begin(), violations_.end(), [](const Violation& a, const Violation& b) {
        if (a.location != b.location) return a.location < b.location;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    if (ok()) {
        os << "ok";
        return os.str();
    }
    os << total_ << " violation(s)";
    if (!violations_.empty()) {
        const auto& v = violations_.front();
        os << ", first: " << to_string(v.kind) << '(';
        for (std::size_t i = 0; i < v.location.size(); ++i) os << (i ? "," : "") << v.location[i];
        os << ')';
        if (!v.detail.empty()) os << ' ' << v.detail;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Int checked_mul(Int a, Int b) {
    Int out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw TilingError(ErrorKind::RangeError, "integer overflow");
    return out;
}

Int checked_add(Int a, Int b) {
    Int out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw TilingError(ErrorKind::RangeError, "integer overflow");
    return out;
}

Int lcm_checked(Int a, Int b) {
    if (a <= 0 || b <= 0) throw TilingError(ErrorKind::InvalidInput, "lcm of nonpositive values");
    return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace gaptile
