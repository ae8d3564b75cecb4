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

#include "rpf/config_space.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "rpf/error.hpp"
#include "rpf/io.hpp"

namespace rpf {

namespace {

bool point_less(const Point& a, const Point& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

Configuration::Configuration(std::vector<Point> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end(), point_less);
}

Configuration::Configuration(std::initializer_list<double> reals) {
    points_.reserve(reals.size());
    for (double x : reals) points_.emplace_back(x, 0.0);
    std::sort(points_.begin(), points_.end(), point_less);
}

Configuration Configuration::from_reals(std::span<const double> reals) {
    std::vector<Point> pts;
    pts.reserve(reals.size());
    for (double x : reals) pts.emplace_back(x, 0.0);
    return Configuration(std::move(pts));
}

std::vector<double> Configuration::reals() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.real());
    return out;
}

bool Configuration::is_real() const noexcept {
    return std::all_of(points_.begin(), points_.end(),
                       [](const Point& p) { return p.imag() == 0.0; });
}

Configuration Configuration::merged(const Configuration& other) const {
    std::vector<Point> out;
    out.reserve(points_.size() + other.points_.size());
    std::merge(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
               std::back_inserter(out), point_less);
    Configuration c;
    c.points_ = std::move(out);
    return c;
}

AnnulusSequence::AnnulusSequence(std::vector<double> cutoffs) : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty()) throw ArgumentError("annulus sequence needs at least one cutoff");
    if (!(cutoffs_.front() >= 1.0))
        throw ArgumentError("annulus sequence requires b_1 >= 1");
    for (std::size_t i = 1; i < cutoffs_.size(); ++i) {
        if (!(cutoffs_[i] > cutoffs_[i - 1]))
            throw ArgumentError("annulus cutoffs must be strictly increasing");
    }
    if (!std::isfinite(cutoffs_.back())) throw ArgumentError("annulus cutoffs must be finite");
}

AnnulusSequence AnnulusSequence::linear(std::size_t count) {
    std::vector<double> b(count);
    for (std::size_t r = 1; r <= count; ++r) b[r - 1] = static_cast<double>(r);
    return AnnulusSequence(std::move(b));
}

double AnnulusSequence::cutoff(std::size_t r) const {
    if (r == 0) return 0.0;
    if (r == kInfinity) return std::numeric_limits<double>::infinity();
    if (r > cutoffs_.size())
        throw RangeError("annulus index " + std::to_string(r) + " beyond configured cutoffs (" +
                         std::to_string(cutoffs_.size()) + ")");
    return cutoffs_[r - 1];
}

Window Window::ball(const AnnulusSequence& seq, std::size_t r) {
    if (r == 0 || r == kInfinity) throw ArgumentError("ball index must be finite and >= 1");
    return Window(Kind::ball, 0, r, 0.0, seq.cutoff(r));
}

Window Window::annulus(const AnnulusSequence& seq, std::size_t r, std::size_t s) {
    if (r == 0 || !(r < s)) throw ArgumentError("annulus(r,s) requires 1 <= r < s");
    if (s == kInfinity) return complement(seq, r);
    return Window(Kind::annulus, r, s, seq.cutoff(r), seq.cutoff(s));
}

Window Window::complement(const AnnulusSequence& seq, std::size_t r) {
    if (r == 0 || r == kInfinity) throw ArgumentError("complement index must be finite and >= 1");
    return Window(Kind::complement, r, kInfinity, seq.cutoff(r),
                  std::numeric_limits<double>::infinity());
}

Window Window::shell(const AnnulusSequence& seq, std::size_t r, std::size_t s) {
    if (!(r < s)) throw ArgumentError("shell(r,s) requires r < s");
    if (r == 0) {
        if (s == kInfinity)
            return Window(Kind::complement, 0, kInfinity, 0.0,
                          std::numeric_limits<double>::infinity());
        return ball(seq, s);
    }
    if (s == kInfinity) return complement(seq, r);
    return annulus(seq, r, s);
}

Configuration restrict(const Configuration& config, const Window& w) {
    std::vector<Point> out;
    for (const auto& p : config)
        if (w.contains(p)) out.push_back(p);
    // Filtering a sorted list keeps it sorted.
    return Configuration(std::move(out));
}

std::size_t count(const Configuration& config, const Window& w) {
    return static_cast<std::size_t>(
        std::count_if(config.begin(), config.end(), [&](const Point& p) { return w.contains(p); }));
}

std::string to_csv(const Configuration& config) {
    std::string out = "re,im\n";
    for (const auto& p : config) {
        out += format_double(p.real());
        out += ',';
        out += format_double(p.imag());
        out += '\n';
    }
    return out;
}

Configuration configuration_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Point> pts;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("re", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ArgumentError("malformed CSV row: " + line);
        auto field = [&](const std::string& text) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(text, &used);
            } catch (const std::logic_error&) {
                throw ArgumentError("malformed CSV row: " + line);
            }
            if (used != text.size()) throw ArgumentError("malformed CSV row: " + line);
            return v;
        };
        pts.emplace_back(field(line.substr(0, comma)), field(line.substr(comma + 1)));
    }
    return Configuration(std::move(pts));
}

std::string to_json(const Configuration& config) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : config) j.push_back({p.real(), p.imag()});
    return j.dump();
}

Configuration configuration_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("malformed configuration JSON: ") + e.what());
    }
    if (!j.is_array()) throw ArgumentError("configuration JSON must be an array");
    std::vector<Point> pts;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
            throw ArgumentError("configuration JSON rows must be [re, im]");
        pts.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return Configuration(std::move(pts));
}

}  // namespace rpf
