#pragma once

// Value types for distributions, estimates and counts, and the basic
// functionals on them (entropy in nats, l1 distance, approximate-simplex
// membership).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "l1mm/error.hpp"
#include "l1mm/numeric.hpp"

namespace l1mm {

namespace detail {

inline constexpr double kSumTolerance = 1e-12;       // accepted as-is
inline constexpr double kNormalizeTolerance = 1e-9;  // rescaled, beyond: rejected

inline void check_entry(double v, std::size_t i) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "entry " << i << " must be finite and nonnegative, got " << v;
        throw DomainError(os.str());
    }
}

}  // namespace detail

/// A point of the probability simplex M_S. Zeros are allowed; S is the
/// number of stored entries. Inputs whose sum is off by at most 1e-9 are
/// rescaled, larger deviations are rejected.
class ProbabilityVector {
  public:
    explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw DomainError("probability vector must have at least one entry");
        numeric::CompensatedSum total;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            detail::check_entry(probs_[i], i);
            total.add(probs_[i]);
        }
        const double s = total.value();
        const double dev = std::fabs(s - 1.0);
        if (dev > detail::kNormalizeTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "probabilities sum to " << s << ", not 1";
            throw DomainError(os.str());
        }
        if (dev > detail::kSumTolerance) {
            for (double& p : probs_) p /= s;
        }
    }

    static ProbabilityVector uniform(std::size_t support) {
        if (support == 0) throw DomainError("uniform distribution needs support >= 1");
        return ProbabilityVector(std::vector<double>(support, 1.0 / static_cast<double>(support)));
    }

    [[nodiscard]] std::size_t support_size() const noexcept { return probs_.size(); }
    [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
    [[nodiscard]] double operator[](std::size_t i) const { return probs_.at(i); }

  private:
    std::vector<double> probs_;
};

/// An estimator output: nonnegative, no sum constraint.
class EstimateVector {
  public:
    EstimateVector() = default;
    explicit EstimateVector(std::vector<double> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) detail::check_entry(values_[i], i);
    }
    EstimateVector(const ProbabilityVector& p)  // NOLINT: a distribution is a valid estimate
        : values_(p.probs().begin(), p.probs().end()) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_.at(i); }
    [[nodiscard]] double sum() const {
        numeric::CompensatedSum s;
        for (double v : values_) s.add(v);
        return s.value();
    }

  private:
    std::vector<double> values_;
};

/// Per-symbol counts of a Multinomial(n; P) observation.
class CountHistogram {
  public:
    explicit CountHistogram(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i] < 0) throw DomainError("counts must be nonnegative");
            n_ += counts_[i];
        }
        if (n_ <= 0) throw DomainError("sample size must be positive");
    }
    CountHistogram(std::vector<std::int64_t> counts, std::int64_t n) : CountHistogram(std::move(counts)) {
        if (n != n_) throw DomainError("counts do not sum to the stated sample size");
    }

    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
    [[nodiscard]] std::span<const std::int64_t> counts() const noexcept { return counts_; }
    [[nodiscard]] std::int64_t operator[](std::size_t i) const { return counts_.at(i); }

  private:
    std::vector<std::int64_t> counts_;
    std::int64_t n_ = 0;
};

/// One repeated probability value.
///
/// The multiplicity is an integer stored in a double: the entropy-ball
/// families reach active-set sizes around 1e23, beyond any 64-bit integer.
struct Atom {
    double value = 0.0;
    double multiplicity = 1.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// A distribution stored as (value, multiplicity) pairs. Atom order is
/// preserved as given; risk computations iterate in value order.
class CompressedFamily {
  public:
    explicit CompressedFamily(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.empty()) throw DomainError("compressed family needs at least one atom");
        numeric::CompensatedSum total;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            const Atom& a = atoms_[i];
            detail::check_entry(a.value, i);
            if (!std::isfinite(a.multiplicity) || a.multiplicity < 1.0 ||
                std::floor(a.multiplicity) != a.multiplicity) {
                std::ostringstream os;
                os << "atom " << i << " multiplicity must be an integer >= 1, got " << a.multiplicity;
                throw DomainError(os.str());
            }
            total.add(a.value * a.multiplicity);
        }
        const double s = total.value();
        const double dev = std::fabs(s - 1.0);
        if (dev > detail::kNormalizeTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "atom masses sum to " << s << ", not 1";
            throw DomainError(os.str());
        }
        if (dev > detail::kSumTolerance) {
            for (Atom& a : atoms_) a.value /= s;
        }
    }

    /// Groups equal entries of a dense vector, in ascending value order.
    static CompressedFamily from_dense(const ProbabilityVector& p) {
        std::vector<double> v(p.probs().begin(), p.probs().end());
        std::sort(v.begin(), v.end());
        std::vector<Atom> atoms;
        for (double x : v) {
            if (!atoms.empty() && atoms.back().value == x) {
                atoms.back().multiplicity += 1.0;
            } else {
                atoms.push_back({x, 1.0});
            }
        }
        return CompressedFamily(std::move(atoms));
    }

    static CompressedFamily uniform(double support) {
        if (!(support >= 1.0) || std::floor(support) != support) {
            throw DomainError("uniform support must be an integer >= 1");
        }
        return CompressedFamily({{1.0 / support, support}});
    }

    [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }

    /// Total number of coordinates (sum of multiplicities).
    [[nodiscard]] double support_size() const {
        numeric::CompensatedSum s;
        for (const Atom& a : atoms_) s.add(a.multiplicity);
        return s.value();
    }

    /// Dense expansion, in atom order. Only meant for cross-checking.
    [[nodiscard]] ProbabilityVector expand(double max_support = 1e7) const {
        const double s = support_size();
        if (s > max_support) throw DomainError("family too large to expand");
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(s));
        for (const Atom& a : atoms_) out.insert(out.end(), static_cast<std::size_t>(a.multiplicity), a.value);
        return ProbabilityVector(std::move(out));
    }

  private:
    std::vector<Atom> atoms_;
};

/// Tolerance epsilon of the approximate simplex M_S(epsilon).
class ApproxSimplexTolerance {
  public:
    explicit ApproxSimplexTolerance(double epsilon) : epsilon_(epsilon) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
    }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

  private:
    double epsilon_;
};

namespace detail {

inline double entropy_from_terms(std::vector<double>& terms) {
    // Largest terms first: families with ~1e5 equal tiny terms otherwise
    // lose digits against the heavy coordinate.
    std::sort(terms.begin(), terms.end(), std::greater<>());
    numeric::CompensatedSum s;
    for (double t : terms) s.add(t);
    return std::max(0.0, s.value());
}

inline double plogp(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

}  // namespace detail

/// Shannon entropy in nats, 0 ln 0 = 0.
inline double entropy(const ProbabilityVector& p) {
    std::vector<double> terms;
    terms.reserve(p.support_size());
    for (double x : p.probs()) terms.push_back(detail::plogp(x));
    return detail::entropy_from_terms(terms);
}

inline double entropy(const CompressedFamily& f) {
    std::vector<double> terms;
    terms.reserve(f.atoms().size());
    for (const Atom& a : f.atoms()) terms.push_back(a.multiplicity * detail::plogp(a.value));
    return detail::entropy_from_terms(terms);
}

/// Sum of absolute coordinate differences. Lengths must match.
inline double l1_distance(const EstimateVector& a, const EstimateVector& b) {
    if (a.size() != b.size()) {
        std::ostringstream os;
        os << "l1_distance: length " << a.size() << " vs " << b.size();
        throw DimensionError(os.str());
    }
    numeric::CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(std::fabs(a[i] - b[i]));
    return s.value();
}

/// Membership in M_S(epsilon): nonnegative with |sum - 1| < epsilon.
inline bool in_approx_simplex(const EstimateVector& v, const ApproxSimplexTolerance& tol) {
    return std::fabs(v.sum() - 1.0) < tol.epsilon();
}

}  // namespace l1mm
