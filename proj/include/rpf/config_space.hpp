/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Finite point configurations on C, cutoff sequences and the windows built
// from them. Every other module consumes these.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rpf {

using Point = std::complex<double>;

/// Annulus index standing for s = infinity (the complement window).
inline constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();

/// A finite multiset of points, kept sorted by (real, imag).
///
/// One-dimensional ensembles store their points with zero imaginary part so
/// the complex-plane machinery in `interactions` has a single code path.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Point> points);
    Configuration(std::initializer_list<double> reals);

    static Configuration from_reals(std::span<const double> reals);

    [[nodiscard]] std::span<const Point> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] auto begin() const noexcept { return points_.begin(); }
    [[nodiscard]] auto end() const noexcept { return points_.end(); }

    /// Real parts, in stored order.
    [[nodiscard]] std::vector<double> reals() const;
    /// True when every imaginary part is exactly zero.
    [[nodiscard]] bool is_real() const noexcept;

    /// Multiset union.
    [[nodiscard]] Configuration merged(const Configuration& other) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<Point> points_;
};

/// Strictly increasing cutoffs b_1 < b_2 < ... with b_1 >= 1.
///
/// Index 0 maps to radius 0 (so S_{0r} is the ball S_r) and `kInfinity`
/// maps to +inf (so S_{r,inf} is the complement of S_r).
class AnnulusSequence {
public:
    explicit AnnulusSequence(std::vector<double> cutoffs);

    /// b_r = r for r = 1..count.
    static AnnulusSequence linear(std::size_t count);

    [[nodiscard]] double cutoff(std::size_t r) const;
    [[nodiscard]] std::size_t size() const noexcept { return cutoffs_.size(); }
    [[nodiscard]] std::span<const double> cutoffs() const noexcept { return cutoffs_; }

private:
    std::vector<double> cutoffs_;
};

/// A ball S_r, an annulus S_{rs} = S_s \ S_r, or a complement S_{r,inf}.
///
/// Half-open in the radius: lo <= |z| < hi. A point exactly on b_r lies in
/// the annulus starting at r, never in the ball S_r.
class Window {
public:
    enum class Kind { ball, annulus, complement };

    static Window ball(const AnnulusSequence& seq, std::size_t r);
    static Window annulus(const AnnulusSequence& seq, std::size_t r, std::size_t s);
    static Window complement(const AnnulusSequence& seq, std::size_t r);
    /// S_{rs} for 0 <= r < s <= inf; r = 0 gives a ball, s = inf a complement.
    static Window shell(const AnnulusSequence& seq, std::size_t r, std::size_t s);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t inner_index() const noexcept { return r_; }
    [[nodiscard]] std::size_t outer_index() const noexcept { return s_; }
    [[nodiscard]] double inner_radius() const noexcept { return lo_; }
    [[nodiscard]] double outer_radius() const noexcept { return hi_; }

    [[nodiscard]] bool contains(const Point& z) const noexcept {
        const double a = std::abs(z);
        return a >= lo_ && a < hi_;
    }

private:
    Window(Kind kind, std::size_t r, std::size_t s, double lo, double hi)
        : kind_(kind), r_(r), s_(s), lo_(lo), hi_(hi) {}

    Kind kind_;
    std::size_t r_;
    std::size_t s_;
    double lo_;
    double hi_;
};

/// pi_W(config): the points lying in the window, multiplicity preserved.
Configuration restrict(const Configuration& config, const Window& w);

/// config(W).
std::size_t count(const Configuration& config, const Window& w);

// Serialization: CSV rows "re,im" (header line "re,im") and JSON [[re,im],...].
std::string to_csv(const Configuration& config);
Configuration configuration_from_csv(const std::string& text);
std::string to_json(const Configuration& config);
Configuration configuration_from_json(const std::string& text);

}  // namespace rpf
